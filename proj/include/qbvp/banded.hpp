#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qbvp/error.hpp"

namespace qbvp {

/// Zero pivot column during factorization; pivot() is the 0-based column.
class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(std::size_t pivot);
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// Square band matrix in LAPACK general-band layout: column-major, with
/// `lower` extra superdiagonals reserved for the fill that row pivoting creates.
/// Entry (i, j) lives at row (lower + upper + i - j) of column j.
class BandedMatrix {
 public:
  BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper);

  std::size_t size() const noexcept { return n_; }
  std::size_t lower() const noexcept { return lower_; }
  std::size_t upper() const noexcept { return upper_; }
  /// Rows per stored column: 2*lower + upper + 1.
  std::size_t leading_dim() const noexcept { return ld_; }
  std::size_t storage_size() const noexcept { return data_.size(); }

  bool in_band(std::size_t i, std::size_t j) const noexcept {
    return j <= i + upper_ && i <= j + lower_;
  }

  /// Zero outside the declared band.
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return in_band(i, j) ? data_[index(i, j)] : 0.0;
  }
  /// Throws InvalidInput outside the band.
  void set(std::size_t i, std::size_t j, double v);
  void add(std::size_t i, std::size_t j, double v);

  /// Row-major n*n copy.
  std::vector<double> to_dense() const;
  std::vector<double> multiply(std::span<const double> x) const;
  double norm_inf() const;

 private:
  friend class BandedLU;
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * ld_ + (lower_ + upper_ + i - j); }

  std::size_t n_, lower_, upper_, ld_;
  std::vector<double> data_;
};

/// Partially pivoted LU of a BandedMatrix, computed in its own band storage
/// (the upper triangle grows to lower + upper diagonals). Read-only after
/// construction, so concurrent solves are safe.
class BandedLU {
 public:
  /// Factorizes a copy. Throws SingularMatrixError on an exactly zero pivot column.
  explicit BandedLU(BandedMatrix m);

  std::size_t size() const noexcept { return lu_.size(); }

  std::vector<double> solve(std::span<const double> rhs) const;

  /// Row interchange at each elimination step: row j was swapped with pivots()[j].
  std::span<const std::size_t> pivots() const noexcept { return pivots_; }
  /// Row map of P: row i of P*M is row permutation()[i] of M.
  std::vector<std::size_t> permutation() const;

  /// Dense P, L, U (row-major) with P*M = L*U. O(n^2); meant for verification.
  struct DenseFactors {
    std::vector<double> p, l, u;
  };
  DenseFactors dense_factors() const;

 private:
  BandedMatrix lu_;
  std::vector<std::size_t> pivots_;
};

inline BandedLU lu_factor(BandedMatrix m) { return BandedLU(std::move(m)); }
inline std::vector<double> solve(const BandedLU& lu, std::span<const double> rhs) { return lu.solve(rhs); }

}  // namespace qbvp
