#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qbvp/banded.hpp"
#include "qbvp/execution.hpp"
#include "qbvp/problem.hpp"

namespace qbvp {

/// Exact coefficient kept as an integer fraction; converted to double once.
struct Ratio {
  std::int64_t num;
  std::int64_t den;
  constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Which leading B-weight the first/last rows use.
///
/// `corrected` is 31686/50400, the value obtained by expanding the end
/// condition and consistent with the tabulated right-hand side. `misprinted`
/// is the tenfold 31686/5040 entry of the tabulated B matrix; it is kept so
/// the reference error tables can be regenerated.
enum class EndRowVariant { corrected, misprinted };

/// Integer templates of the linear system (A + h^4 B F) Y = C.
namespace templates {

// Interior rows: fourth difference and the 1-26-66-26-1 weights over 120.
inline constexpr std::array<Ratio, 5> kInteriorA{{{1, 1}, {-4, 1}, {6, 1}, {-4, 1}, {1, 1}}};
inline constexpr std::array<Ratio, 5> kInteriorB{{{1, 120}, {26, 120}, {66, 120}, {26, 120}, {1, 120}}};

// First row, over unknowns y_1..y_4 (the last row is its mirror image).
inline constexpr std::array<Ratio, 4> kEndA{{{9, 1}, {-9, 2}, {1, 1}, {0, 1}}};
inline constexpr std::array<Ratio, 4> kEndB{{{31686, 50400}, {669, 8400}, {528, 7200}, {5307, 100800}}};
inline constexpr Ratio kEndBMisprinted{31686, 5040};

// First row right-hand side:
//   c_1 = (11/2) y_0 + 3 h y'_0
//       + (h^4/280) (w_0 g_0 - w_0 f_0 y_0 + w_1 g_1 + w_2 g_2 + w_3 g_3 + w_4 g_4).
inline constexpr Ratio kEndRhsValue{11, 2};
inline constexpr Ratio kEndRhsSlope{3, 1};
inline constexpr Ratio kEndRhsScale{1, 280};
inline constexpr std::array<Ratio, 5> kEndRhsG{{{-3, 360}, {31686, 180}, {669, 30}, {3696, 180}, {5307, 360}}};

}  // namespace templates

/// Knot samples and boundary data shared by the row builders.
struct AssemblyContext {
  std::size_t k = 0;
  double h = 0.0;
  std::vector<double> f_at_knots;  // f_0 .. f_k
  std::vector<double> g_at_knots;  // g_0 .. g_k
  double alpha0 = 0.0, alpha1 = 0.0, beta0 = 0.0, beta1 = 0.0;
  EndRowVariant variant = EndRowVariant::corrected;
};

/// Samples f and g at every knot. Throws EvaluationError naming the knot.
AssemblyContext make_context(const Bvp& problem, const Mesh& mesh,
                             EndRowVariant variant = EndRowVariant::corrected,
                             Execution policy = Execution::serial);

/// One equation of the system. Columns are knot indices of unknowns (1..k-1);
/// known boundary values are already folded into rhs.
struct SystemRow {
  std::size_t knot = 0;
  std::size_t first_knot = 0;
  std::size_t width = 0;
  std::array<double, 5> coeff{};
  double rhs = 0.0;

  double coefficient(std::size_t knot_col) const {
    return knot_col >= first_knot && knot_col < first_knot + width ? coeff[knot_col - first_knot] : 0.0;
  }
};

/// Row for knot i in 2..k-2 from the five-point fourth-derivative relation with
/// N_j = g_j - f_j y_j substituted.
SystemRow interior_row(std::size_t i, const AssemblyContext& ctx);
/// Row for knot 1 from the left end condition, scaled by 3h^4/40.
SystemRow end_row_left(const AssemblyContext& ctx);
/// Mirror image of end_row_left for knot k-1; the slope term changes sign.
SystemRow end_row_right(const AssemblyContext& ctx);

struct AssembledSystem {
  BandedMatrix matrix;             // (k-1) x (k-1); row/column r is knot r+1
  std::vector<double> rhs;         // c_1 .. c_{k-1}
  double h = 0.0;
  std::vector<double> f_at_knots;  // f_0 .. f_k
  std::vector<double> g_at_knots;  // g_0 .. g_k
};

inline constexpr std::size_t kSystemBandwidth = 3;

/// Builds the bordered-pentadiagonal system. Rows are independent, so the
/// parallel policy fills them concurrently.
AssembledSystem assemble(const Bvp& problem, const Mesh& mesh,
                         EndRowVariant variant = EndRowVariant::corrected,
                         Execution policy = Execution::serial);

}  // namespace qbvp
