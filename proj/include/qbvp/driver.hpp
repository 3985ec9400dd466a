#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qbvp/assembly.hpp"
#include "qbvp/execution.hpp"
#include "qbvp/problem.hpp"
#include "qbvp/spline.hpp"

namespace qbvp {

struct SolveOptions {
  EndRowVariant variant = EndRowVariant::corrected;
  Execution policy = Execution::serial;
};

/// Assemble, factor, solve and reconstruct on k uniform subintervals.
SplineSolution solve_bvp(const Bvp& problem, std::size_t k, const SolveOptions& options = {});

/// Knot unknowns y_1..y_{k-1} of an assembled system via the banded LU.
std::vector<double> solve_system(const AssembledSystem& system);

inline constexpr std::size_t kErrorOrders = 5;

/// Max absolute knot error for y, m, M, n, N against the reference.
struct ErrorTable {
  std::size_t k = 0;
  double h = 0.0;
  std::array<double, kErrorOrders> max_error{};
  std::array<double, kErrorOrders> reference_scale{};  // max |y^(d)(x_i)| over knots
};

/// Throws InvalidInput without a reference.
ErrorTable error_table(const SplineSolution& s, const Bvp& problem);

struct ConvergenceReport {
  std::vector<ErrorTable> rungs;
  /// at_floor[r][d]: error below 1e3 * eps * max |y^(d)| on rung r.
  std::vector<std::array<bool, kErrorOrders>> at_floor;
  /// orders[r][d] between rungs r and r + 1; empty if either rung is at the floor.
  std::vector<std::array<std::optional<double>, kErrorOrders>> orders;
};

inline constexpr double kFloorFactor = 1e3;

/// Default mesh ladder 8, 16, ..., 1024.
std::vector<std::size_t> default_ladder();

/// Throws InvalidInput for a missing reference or a ladder that is not
/// strictly increasing with every k >= 8. Rungs run concurrently under the
/// parallel policy; results are kept in ladder order.
ConvergenceReport convergence_study(const Bvp& problem, std::span<const std::size_t> ks,
                                    const SolveOptions& options = {});

/// Ladder validation shared with the command line.
void validate_ladder(std::span<const std::size_t> ks);

}  // namespace qbvp
