#include "qbvp/assembly.hpp"

#include <string>

namespace qbvp {

AssemblyContext make_context(const Bvp& problem, const Mesh& mesh, EndRowVariant variant, Execution policy) {
  if (mesh.a() != problem.a || mesh.b() != problem.b)
    throw InvalidInput("mesh does not cover the problem interval");
  if (mesh.k() < kMinSubintervals) throw InvalidInput("k too small");

  AssemblyContext ctx;
  ctx.k = mesh.k();
  ctx.h = mesh.h();
  ctx.alpha0 = problem.alpha0;
  ctx.alpha1 = problem.alpha1;
  ctx.beta0 = problem.beta0;
  ctx.beta1 = problem.beta1;
  ctx.variant = variant;
  ctx.f_at_knots.resize(ctx.k + 1);
  ctx.g_at_knots.resize(ctx.k + 1);
  const auto knots = mesh.knots();
  for_each_index(policy, ctx.k + 1, [&](std::size_t i) {
    ctx.f_at_knots[i] = sample_at_knot(problem.f, "f", i, knots[i]);
    ctx.g_at_knots[i] = sample_at_knot(problem.g, "g", i, knots[i]);
  });
  return ctx;
}

SystemRow interior_row(std::size_t i, const AssemblyContext& ctx) {
  if (i < 2 || i + 2 > ctx.k)
    throw InvalidInput("interior row index " + std::to_string(i) + " outside 2.." + std::to_string(ctx.k - 2));
  const double h4 = ctx.h * ctx.h * ctx.h * ctx.h;

  double weighted_g = 0.0;
  for (std::size_t q = 0; q < 5; ++q) weighted_g += templates::kInteriorB[q].value() * 120.0 * ctx.g_at_knots[i - 2 + q];

  SystemRow row;
  row.knot = i;
  row.rhs = h4 / 120.0 * weighted_g;
  row.first_knot = i == 2 ? 1 : i - 2;
  for (std::size_t q = 0; q < 5; ++q) {
    const std::size_t j = i - 2 + q;
    const double c = templates::kInteriorA[q].value() + h4 * (templates::kInteriorB[q].value() * ctx.f_at_knots[j]);
    if (j == 0) {
      row.rhs -= c * ctx.alpha0;
    } else if (j == ctx.k) {
      row.rhs -= c * ctx.alpha1;
    } else {
      row.coeff[j - row.first_knot] = c;
      row.width = j - row.first_knot + 1;
    }
  }
  return row;
}

namespace {

double end_b(std::size_t slot, EndRowVariant variant) {
  if (slot == 0 && variant == EndRowVariant::misprinted) return templates::kEndBMisprinted.value();
  return templates::kEndB[slot].value();
}

// Shared by both ends: `at(j)` maps distance j from the boundary to a knot index.
template <class KnotAt>
SystemRow end_row(const AssemblyContext& ctx, double y_end, double slope_term, KnotAt at) {
  using namespace templates;
  const double h4 = ctx.h * ctx.h * ctx.h * ctx.h;
  const auto& f = ctx.f_at_knots;
  const auto& g = ctx.g_at_knots;

  double weighted = kEndRhsG[0].value() * g[at(0)] - kEndRhsG[0].value() * f[at(0)] * y_end;
  for (std::size_t j = 1; j < 5; ++j) weighted += kEndRhsG[j].value() * g[at(j)];

  SystemRow row;
  row.rhs = kEndRhsValue.value() * y_end + slope_term + h4 * kEndRhsScale.value() * weighted;
  row.width = 4;
  std::array<double, 4> by_distance{};
  for (std::size_t j = 1; j <= 4; ++j)
    by_distance[j - 1] = kEndA[j - 1].value() + h4 * (end_b(j - 1, ctx.variant) * f[at(j)]);
  return {row.knot, row.first_knot, row.width,
          {by_distance[0], by_distance[1], by_distance[2], by_distance[3], 0.0}, row.rhs};
}

}  // namespace

SystemRow end_row_left(const AssemblyContext& ctx) {
  const double slope = templates::kEndRhsSlope.value() * ctx.h * ctx.beta0;
  SystemRow row = end_row(ctx, ctx.alpha0, slope, [](std::size_t j) { return j; });
  row.knot = 1;
  row.first_knot = 1;
  return row;
}

SystemRow end_row_right(const AssemblyContext& ctx) {
  const std::size_t k = ctx.k;
  const double slope = -templates::kEndRhsSlope.value() * ctx.h * ctx.beta1;
  SystemRow mirrored = end_row(ctx, ctx.alpha1, slope, [k](std::size_t j) { return k - j; });
  SystemRow row = mirrored;
  row.knot = k - 1;
  row.first_knot = k - 4;
  for (std::size_t q = 0; q < 4; ++q) row.coeff[q] = mirrored.coeff[3 - q];
  return row;
}

AssembledSystem assemble(const Bvp& problem, const Mesh& mesh, EndRowVariant variant, Execution policy) {
  AssemblyContext ctx = make_context(problem, mesh, variant, policy);
  const std::size_t k = ctx.k;
  AssembledSystem sys{BandedMatrix(k - 1, kSystemBandwidth, kSystemBandwidth), std::vector<double>(k - 1), ctx.h,
                      {}, {}};

  for_each_index(policy, k - 1, [&](std::size_t r) {
    const std::size_t knot = r + 1;
    const SystemRow row = knot == 1 ? end_row_left(ctx) : knot == k - 1 ? end_row_right(ctx) : interior_row(knot, ctx);
    for (std::size_t q = 0; q < row.width; ++q) sys.matrix.set(r, row.first_knot + q - 1, row.coeff[q]);
    sys.rhs[r] = row.rhs;
  });

  sys.f_at_knots = std::move(ctx.f_at_knots);
  sys.g_at_knots = std::move(ctx.g_at_knots);
  return sys;
}

}  // namespace qbvp
