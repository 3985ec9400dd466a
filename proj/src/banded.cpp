#include "qbvp/banded.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace qbvp {

SingularMatrixError::SingularMatrixError(std::size_t pivot)
    : Error("singular matrix: zero pivot column " + std::to_string(pivot)), pivot_(pivot) {}

BandedMatrix::BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper)
    : n_(n), lower_(lower), upper_(upper), ld_(2 * lower + upper + 1), data_(ld_ * n, 0.0) {
  if (n == 0) throw InvalidInput("banded matrix dimension must be at least 1");
}

void BandedMatrix::set(std::size_t i, std::size_t j, double v) {
  if (i >= n_ || j >= n_ || !in_band(i, j))
    throw InvalidInput("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is outside the band");
  data_[index(i, j)] = v;
}

void BandedMatrix::add(std::size_t i, std::size_t j, double v) {
  if (i >= n_ || j >= n_ || !in_band(i, j))
    throw InvalidInput("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is outside the band");
  data_[index(i, j)] += v;
}

std::vector<double> BandedMatrix::to_dense() const {
  std::vector<double> dense(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > lower_ ? i - lower_ : 0;
    const std::size_t hi = std::min(n_ - 1, i + upper_);
    for (std::size_t j = lo; j <= hi; ++j) dense[i * n_ + j] = (*this)(i, j);
  }
  return dense;
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw InvalidInput("vector length does not match matrix dimension");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > lower_ ? i - lower_ : 0;
    const std::size_t hi = std::min(n_ - 1, i + upper_);
    double s = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double BandedMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > lower_ ? i - lower_ : 0;
    const std::size_t hi = std::min(n_ - 1, i + upper_);
    double s = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

BandedLU::BandedLU(BandedMatrix m) : lu_(std::move(m)), pivots_(lu_.size()) {
  const std::size_t n = lu_.n_;
  const std::size_t kl = lu_.lower_;
  const std::size_t kv = lu_.lower_ + lu_.upper_;
  auto at = [&](std::size_t i, std::size_t j) -> double& { return lu_.data_[j * lu_.ld_ + (kv + i - j)]; };

  std::size_t ju = 0;  // last column touched by any pivot row so far
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t km = std::min(kl, n - 1 - j);
    std::size_t p = j;
    for (std::size_t r = j + 1; r <= j + km; ++r)
      if (std::abs(at(r, j)) > std::abs(at(p, j))) p = r;
    pivots_[j] = p;
    if (at(p, j) == 0.0) throw SingularMatrixError(j);

    ju = std::max(ju, std::min(p + lu_.upper_, n - 1));
    if (p != j)
      for (std::size_t c = j; c <= ju; ++c) std::swap(at(j, c), at(p, c));

    const double pivot = at(j, j);
    for (std::size_t r = j + 1; r <= j + km; ++r) at(r, j) /= pivot;
    for (std::size_t c = j + 1; c <= ju; ++c) {
      const double ujc = at(j, c);
      if (ujc == 0.0) continue;
      for (std::size_t r = j + 1; r <= j + km; ++r) at(r, c) -= at(r, j) * ujc;
    }
  }
}

std::vector<double> BandedLU::solve(std::span<const double> rhs) const {
  const std::size_t n = lu_.n_;
  if (rhs.size() != n)
    throw InvalidInput("right-hand side has length " + std::to_string(rhs.size()) + ", expected " +
                       std::to_string(n));
  const std::size_t kl = lu_.lower_;
  const std::size_t kv = lu_.lower_ + lu_.upper_;
  auto at = [&](std::size_t i, std::size_t j) { return lu_.data_[j * lu_.ld_ + (kv + i - j)]; };

  std::vector<double> x(rhs.begin(), rhs.end());
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const std::size_t km = std::min(kl, n - 1 - j);
    if (pivots_[j] != j) std::swap(x[j], x[pivots_[j]]);
    for (std::size_t r = j + 1; r <= j + km; ++r) x[r] -= at(r, j) * x[j];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    const std::size_t hi = std::min(n - 1, i + kv);
    for (std::size_t c = i + 1; c <= hi; ++c) s -= at(i, c) * x[c];
    x[i] = s / at(i, i);
  }
  return x;
}

std::vector<std::size_t> BandedLU::permutation() const {
  std::vector<std::size_t> perm(size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t j = 0; j < size(); ++j) std::swap(perm[j], perm[pivots_[j]]);
  return perm;
}

BandedLU::DenseFactors BandedLU::dense_factors() const {
  const std::size_t n = lu_.n_;
  const std::size_t kl = lu_.lower_;
  const std::size_t kv = lu_.lower_ + lu_.upper_;
  auto at = [&](std::size_t i, std::size_t j) { return lu_.data_[j * lu_.ld_ + (kv + i - j)]; };

  DenseFactors f;
  f.p.assign(n * n, 0.0);
  f.l.assign(n * n, 0.0);
  f.u.assign(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    // Later interchanges also permute the multipliers already stored in earlier columns.
    const std::size_t p = pivots_[j];
    if (p != j)
      for (std::size_t c = 0; c < j; ++c) std::swap(f.l[j * n + c], f.l[p * n + c]);
    const std::size_t km = std::min(kl, n - 1 - j);
    for (std::size_t r = j + 1; r <= j + km; ++r) f.l[r * n + j] = at(r, j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    f.l[i * n + i] = 1.0;
    const std::size_t hi = std::min(n - 1, i + kv);
    for (std::size_t c = i; c <= hi; ++c) f.u[i * n + c] = at(i, c);
  }
  const auto perm = permutation();
  for (std::size_t i = 0; i < n; ++i) f.p[i * n + perm[i]] = 1.0;
  return f;
}

}  // namespace qbvp
