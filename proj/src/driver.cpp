#include "qbvp/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qbvp/banded.hpp"

namespace qbvp {

std::vector<double> solve_system(const AssembledSystem& system) {
  return BandedLU(system.matrix).solve(system.rhs);
}

SplineSolution solve_bvp(const Bvp& problem, std::size_t k, const SolveOptions& options) {
  const Mesh mesh = build_mesh(problem.a, problem.b, k);
  const AssembledSystem system = assemble(problem, mesh, options.variant, options.policy);
  const std::vector<double> interior = solve_system(system);

  std::vector<double> y;
  y.reserve(k + 1);
  y.push_back(problem.alpha0);
  y.insert(y.end(), interior.begin(), interior.end());
  y.push_back(problem.alpha1);
  return reconstruct(mesh, std::move(y), problem);
}

ErrorTable error_table(const SplineSolution& s, const Bvp& problem) {
  if (!problem.reference) throw InvalidInput("problem '" + problem.name + "' has no analytic reference");
  const auto& ref = problem.reference->derivs;
  const std::array<const std::vector<double>*, kErrorOrders> computed{&s.y, &s.m, &s.M, &s.n, &s.N};
  const auto x = s.mesh.knots();

  ErrorTable t;
  t.k = s.mesh.k();
  t.h = s.mesh.h();
  for (std::size_t d = 0; d < kErrorOrders; ++d) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double want = sample_at_knot(ref[d], "reference", i, x[i]);
      t.max_error[d] = std::max(t.max_error[d], std::abs((*computed[d])[i] - want));
      t.reference_scale[d] = std::max(t.reference_scale[d], std::abs(want));
    }
  }
  return t;
}

std::vector<std::size_t> default_ladder() {
  std::vector<std::size_t> ks;
  for (std::size_t k = 8; k <= 1024; k *= 2) ks.push_back(k);
  return ks;
}

void validate_ladder(std::span<const std::size_t> ks) {
  if (ks.empty()) throw InvalidInput("mesh ladder is empty");
  for (std::size_t r = 0; r < ks.size(); ++r) {
    if (ks[r] < kMinSubintervals)
      throw InvalidInput("k too small in ladder: " + std::to_string(ks[r]) + " < " + std::to_string(kMinSubintervals));
    if (r > 0 && ks[r] <= ks[r - 1]) throw InvalidInput("mesh ladder must be strictly increasing");
  }
}

ConvergenceReport convergence_study(const Bvp& problem, std::span<const std::size_t> ks,
                                    const SolveOptions& options) {
  if (!problem.reference) throw InvalidInput("problem '" + problem.name + "' has no analytic reference");
  validate_ladder(ks);

  ConvergenceReport report;
  report.rungs.resize(ks.size());
  const SolveOptions inner{options.variant, Execution::serial};
  for_each_index(options.policy, ks.size(), [&](std::size_t r) {
    report.rungs[r] = error_table(solve_bvp(problem, ks[r], inner), problem);
  });

  const double eps = std::numeric_limits<double>::epsilon();
  report.at_floor.resize(ks.size());
  for (std::size_t r = 0; r < ks.size(); ++r)
    for (std::size_t d = 0; d < kErrorOrders; ++d) {
      const auto& t = report.rungs[r];
      report.at_floor[r][d] = t.max_error[d] <= kFloorFactor * eps * t.reference_scale[d];
    }

  report.orders.resize(ks.size() > 0 ? ks.size() - 1 : 0);
  for (std::size_t r = 0; r + 1 < ks.size(); ++r) {
    const auto& coarse = report.rungs[r];
    const auto& fine = report.rungs[r + 1];
    for (std::size_t d = 0; d < kErrorOrders; ++d) {
      if (report.at_floor[r][d] || report.at_floor[r + 1][d]) continue;
      report.orders[r][d] = std::log(coarse.max_error[d] / fine.max_error[d]) / std::log(coarse.h / fine.h);
    }
  }
  return report;
}

}  // namespace qbvp
