#pragma once

#include <string>

#include "qbvp/assembly.hpp"
#include "qbvp/driver.hpp"
#include "qbvp/problem.hpp"
#include "qbvp/spline.hpp"

namespace qbvp::report {

/// 17 significant digits, scientific; exact round trip through strtod.
std::string sci17(double v);
/// 4 significant digits, scientific.
std::string sci4(double v);

/// Columns x, y, m, M, n, N; with a reference also exact_* and err_* per quantity.
std::string knot_table_csv(const SplineSolution& s, const Bvp& problem);
std::string knot_table_markdown(const SplineSolution& s, const Bvp& problem);

/// Optional pieces folded into JSON output.
struct SolveExtras {
  const SplineDiagnostics* diagnostics = nullptr;
  const ConsistencyResiduals* residuals = nullptr;
  const AssembledSystem* system = nullptr;
};
std::string solution_json(const SplineSolution& s, const Bvp& problem, const SolveExtras& extras = {});

std::string convergence_csv(const ConvergenceReport& r);
/// Error table (h, then orders 0..4) followed by the observed-order table.
std::string convergence_markdown(const ConvergenceReport& r, const std::string& title);
std::string convergence_json(const ConvergenceReport& r, const std::string& name);

/// Dense matrix rows followed by the right-hand side in the last column.
std::string system_csv(const AssembledSystem& system);
/// name,value lines: slope mismatches, jumps per order, identity residuals.
std::string diagnostics_csv(const SplineDiagnostics& d, const ConsistencyResiduals& r);

/// Built-in problems as id, name, interval, f, g.
std::string examples_listing(const std::string& format);

}  // namespace qbvp::report
