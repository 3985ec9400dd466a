#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qbvp/error.hpp"

namespace qbvp {

using RealFunction = std::function<double(double)>;

/// Fewest subintervals for which the two border rows and one pure interior
/// row of the linear system coexist without overlap.
inline constexpr std::size_t kMinSubintervals = 8;

/// Uniform knot grid x_i = a + i*h, h = (b - a)/k.
class Mesh {
 public:
  Mesh(double a, double b, std::size_t k);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double h() const noexcept { return h_; }
  /// Number of subintervals; there are k + 1 knots.
  std::size_t k() const noexcept { return k_; }
  std::span<const double> knots() const noexcept { return knots_; }
  double knot(std::size_t i) const { return knots_.at(i); }

 private:
  double a_, b_, h_;
  std::size_t k_;
  std::vector<double> knots_;
};

/// Throws InvalidInput when b <= a or k < kMinSubintervals.
Mesh build_mesh(double a, double b, std::size_t k);

/// Exact y, y', y'', y''', y'''' of a problem with a known solution.
struct AnalyticReference {
  std::array<RealFunction, 5> derivs;
};

/// y'''' + f(x) y = g(x) on [a, b], y(a) = alpha0, y(b) = alpha1,
/// y'(a) = beta0, y'(b) = beta1. Coefficient functions must be pure.
struct Bvp {
  std::string name;
  RealFunction f;
  RealFunction g;
  double a = 0.0;
  double b = 1.0;
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double beta0 = 0.0;
  double beta1 = 0.0;
  std::optional<AnalyticReference> reference;
};

/// Textual form of a problem: the problem-file schema. Boundary values are
/// stored as expression text so that constants like "-e" survive exactly.
struct ProblemSource {
  std::string name;
  double a = 0.0;
  double b = 1.0;
  std::string alpha0, alpha1, beta0, beta1;
  std::string f, g;
  std::optional<std::array<std::string, 5>> reference;
};

inline constexpr std::array<int, 3> kExampleIds{1, 2, 3};

/// Built-in problems 1-3 with native (compiled) coefficient functions.
Bvp example_problem(int id);

/// The same problems written in the expression grammar.
ProblemSource example_source(int id);

/// Compiles the expression fields; throws ExprSyntaxError / InvalidInput.
Bvp make_problem(const ProblemSource& source);

/// Parses a problem-file JSON document. Numeric keys accept a JSON number or
/// an expression string. Throws InvalidInput with the offending key.
ProblemSource parse_problem_json(std::string_view text);
ProblemSource load_problem_file(const std::filesystem::path& path);
std::string problem_to_json(const ProblemSource& source);

/// Evaluates fn at knot `index`, converting failures and non-finite values
/// into EvaluationError.
double sample_at_knot(const RealFunction& fn, std::string_view which, std::size_t index, double x);

struct ReferenceCheck {
  double boundary_mismatch = 0.0;  // max relative mismatch of the four clamped values
  double residual = 0.0;           // max |y'''' + f y - g| / scale over the samples
  double scale = 0.0;
};

/// Self-consistency of a registered reference at `samples` uniform points.
ReferenceCheck check_reference(const Bvp& problem, std::size_t samples = 100);

}  // namespace qbvp
