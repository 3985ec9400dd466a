#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qbvp/execution.hpp"
#include "qbvp/problem.hpp"

namespace qbvp {

inline constexpr int kMaxDerivativeOrder = 5;

/// Knot quantities of the piecewise quintic: values y and derivatives
/// m = y', M = y'', n = y''', N = y''''. All sequences have k + 1 entries.
/// Immutable once built; evaluation is reentrant.
struct SplineSolution {
  Mesh mesh;
  std::vector<double> y, m, M, n, N;

  /// Spline derivative of `order` (0..5) at x in [a, b]. A knot belongs to the
  /// interval on its left; x = a belongs to the first interval.
  double eval(double x, int order = 0) const;
  std::vector<double> eval_many(std::span<const double> xs, int order = 0,
                                Execution policy = Execution::serial) const;

  /// Limit of derivative `order` at knot i from interval i (left) or i + 1 (right).
  enum class Side { left, right };
  double limit(std::size_t i, int order, Side side) const;
};

/// N_i = g(x_i) - f(x_i) y_i.
std::vector<double> recover_N(std::span<const double> y, const Bvp& problem, const Mesh& mesh);

/// Interior M_i from the three-point relation with the N_{i-1} + 8N_i + N_{i+1}
/// weights; the ends come from the three-point fourth/second-derivative
/// identity at i = 1 and i = k - 1, which keeps the spline C^4.
std::vector<double> recover_M(std::span<const double> y, std::span<const double> N, const Mesh& mesh);

/// m_0 = beta0 and the backward slope relation for i = 1..k.
std::vector<double> recover_m(std::span<const double> y, std::span<const double> M, std::span<const double> N,
                              const Mesh& mesh, double beta0);

/// Third derivative: mean of the two one-sided limits at interior knots.
std::vector<double> recover_n(std::span<const double> y, std::span<const double> M, std::span<const double> N,
                              const Mesh& mesh);

/// Full reconstruction from knot values that already carry the boundary data.
SplineSolution reconstruct(const Mesh& mesh, std::vector<double> y, const Bvp& problem);

/// Free-function form of SplineSolution::eval.
inline double eval(const SplineSolution& s, double x, int order = 0) { return s.eval(x, order); }

/// Normalized residuals of the knot identities of quintic splines: for each
/// identity, max |lhs - rhs| over its index range divided by the largest sum of
/// absolute term magnitudes over the same range.
struct ConsistencyResiduals {
  struct Entry {
    std::string_view name;
    double residual = 0.0;  // normalized
    double scale = 0.0;
  };
  static constexpr std::size_t kCount = 13;
  std::array<Entry, kCount> entries;
  /// The relation the linear system imposes.
  static constexpr std::string_view kEnforced = "fourth_five_point";

  const Entry& operator[](std::string_view name) const;
};

ConsistencyResiduals consistency_residuals(const SplineSolution& s);

struct SplineDiagnostics {
  double slope_mismatch_a = 0.0;  // |Q'(a) - beta0|
  double slope_mismatch_b = 0.0;  // |m_k - beta1|
  std::array<double, kMaxDerivativeOrder + 1> max_jump{};  // largest interior one-sided jump per order
};

SplineDiagnostics diagnostics(const SplineSolution& s, double beta0, double beta1);

}  // namespace qbvp
