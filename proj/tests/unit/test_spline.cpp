#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "qbvp/driver.hpp"
#include "qbvp/spline.hpp"

using namespace qbvp;

namespace {

std::vector<double> sample(const Mesh& m, const std::function<double(double)>& fn) {
  std::vector<double> v;
  for (double x : m.knots()) v.push_back(fn(x));
  return v;
}

// Knot data of the global polynomial y = x^5, itself a quintic spline.
SplineSolution quintic(double a, double b, std::size_t k) {
  const Mesh m = build_mesh(a, b, k);
  return {m,
          sample(m, [](double x) { return std::pow(x, 5); }),
          sample(m, [](double x) { return 5 * std::pow(x, 4); }),
          sample(m, [](double x) { return 20 * std::pow(x, 3); }),
          sample(m, [](double x) { return 60 * x * x; }),
          sample(m, [](double x) { return 120 * x; })};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double w = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]));
  return w;
}

Bvp zero_f(RealFunction g) {
  Bvp p;
  p.f = [](double) { return 0.0; };
  p.g = std::move(g);
  return p;
}

}  // namespace

TEST_CASE("recover_N on constant and zero data") {
  const Mesh m = build_mesh(0, 1, 8);
  const std::vector<double> y(9, 3.0);
  CHECK(recover_N(y, zero_f([](double) { return 1.0; }), m) == std::vector<double>(9, 1.0));
  CHECK(recover_N(y, zero_f([](double) { return 0.0; }), m) == std::vector<double>(9, 0.0));
}

TEST_CASE("recover_N reproduces y'''' from exact data") {
  const Bvp p = example_problem(1);
  const Mesh m = build_mesh(p.a, p.b, 16);
  const auto N = recover_N(sample(m, p.reference->derivs[0]), p, m);
  CHECK(max_abs_diff(N, sample(m, p.reference->derivs[4])) <= 1e-15);
}

TEST_CASE("recover_M on a line and a parabola") {
  const Mesh m = build_mesh(0, 1, 8);
  const std::vector<double> zeros(9, 0.0);
  const auto M_line = recover_M(sample(m, [](double x) { return 2 - 3 * x; }), zeros, m);
  for (double v : M_line) CHECK(std::abs(v) <= 1e-12);
  const auto M_par = recover_M(sample(m, [](double x) { return x * x; }), zeros, m);
  for (double v : M_par) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("recover_m on a line") {
  const Mesh m = build_mesh(-1, 1, 10);
  const std::vector<double> zeros(11, 0.0);
  const auto mm = recover_m(sample(m, [](double x) { return 0.5 * x + 1; }), zeros, zeros, m, 0.5);
  for (double v : mm) CHECK(v == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("recover_n on a cubic") {
  const Mesh m = build_mesh(0, 2, 12);
  const auto y = sample(m, [](double x) { return x * x * x; });
  const auto M = sample(m, [](double x) { return 6 * x; });
  const auto n = recover_n(y, M, std::vector<double>(13, 0.0), m);
  for (double v : n) CHECK(v == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("exact quintic knot data reproduces itself through every recovery") {
  const SplineSolution s = quintic(0.0, 1.0, 16);
  const auto M = recover_M(s.y, s.N, s.mesh);
  const auto m = recover_m(s.y, M, s.N, s.mesh, s.m[0]);
  const auto n = recover_n(s.y, M, s.N, s.mesh);
  CHECK(max_abs_diff(M, s.M) <= 1e-10);
  CHECK(max_abs_diff(m, s.m) <= 1e-11);
  CHECK(max_abs_diff(n, s.n) <= 1e-8);
}

TEST_CASE("identities hold on exact quintic data") {
  const SplineSolution s = quintic(-0.5, 1.5, 16);
  const ConsistencyResiduals r = consistency_residuals(s);
  for (const auto& e : r.entries) {
    CAPTURE(e.name);
    CHECK(std::isfinite(e.residual));
    CHECK(e.residual <= 1e-9);
    CHECK(e.scale > 0.0);
  }
  CHECK(r.entries.size() == 13);
  CHECK_THROWS_AS(r["nonexistent"], InvalidInput);
}

TEST_CASE("evaluation reproduces knot values and curvatures") {
  const Bvp p = example_problem(2);
  const SplineSolution s = solve_bvp(p, 16);
  const auto x = s.mesh.knots();
  double scale0 = 0.0, scale2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    scale0 = std::max(scale0, std::abs(s.y[i]));
    scale2 = std::max(scale2, std::abs(s.M[i]));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(s.eval(x[i], 0) - s.y[i]) <= 1e-11 * scale0);
    CHECK(std::abs(s.eval(x[i], 2) - s.M[i]) <= 1e-11 * scale2);
    CHECK(std::abs(eval(s, x[i], 4) - s.N[i]) <= 1e-11 * scale2);
    if (i > 0 && i < x.size() - 1)
      for (int order : {0, 2, 4}) {
        const double l = s.limit(i, order, SplineSolution::Side::left);
        const double r = s.limit(i, order, SplineSolution::Side::right);
        CHECK(std::abs(l - r) <= 1e-11 * (order == 0 ? scale0 : scale2));
      }
  }
}

TEST_CASE("single interval with N = 0 matches the direct cubic") {
  const Mesh m = build_mesh(0, 8, 8);  // h = 1
  std::vector<double> y(9, 0.0), M(9, 0.0), zeros(9, 0.0);
  y[1] = 1.0;
  M[0] = 0.6;
  M[1] = -1.8;
  const SplineSolution s{m, y, zeros, M, zeros, zeros};
  // q(t) = c0 + c1 t + c2 t^2 + c3 t^3 from q(0), q(h), q''(0), q''(h).
  const double h = 1.0;
  const double c0 = 0.0, c2 = M[0] / 2, c3 = (M[1] - M[0]) / (6 * h);
  const double c1 = (y[1] - c0 - c2 * h * h - c3 * h * h * h) / h;
  for (double t : {0.25, 0.5, 0.8}) {
    CHECK(s.eval(t, 0) == doctest::Approx(c0 + c1 * t + c2 * t * t + c3 * t * t * t).epsilon(1e-14));
    CHECK(s.eval(t, 1) == doctest::Approx(c1 + 2 * c2 * t + 3 * c3 * t * t).epsilon(1e-14));
    CHECK(s.eval(t, 3) == doctest::Approx(6 * c3).epsilon(1e-14));
  }
  CHECK(s.eval(0.5, 0) == doctest::Approx(0.5 - (M[0] + M[1]) / 16));
}

TEST_CASE("off-knot evaluation of a quintic spline equals the polynomial") {
  const SplineSolution s = quintic(-1.0, 1.0, 10);
  const std::array<std::function<double(double)>, 6> d{
      [](double x) { return std::pow(x, 5); },     [](double x) { return 5 * std::pow(x, 4); },
      [](double x) { return 20 * std::pow(x, 3); }, [](double x) { return 60 * x * x; },
      [](double x) { return 120 * x; },             [](double) { return 120.0; }};
  for (double x : {-0.97, -0.5, -0.13, 0.0, 0.21, 0.6, 0.999, 1.0})
    for (int order = 0; order <= 5; ++order) {
      CAPTURE(x);
      CAPTURE(order);
      CHECK(s.eval(x, order) == doctest::Approx(d[order](x)).epsilon(1e-11).scale(120));
    }
}

TEST_CASE("order 5 is the slope of N on each interval") {
  const SplineSolution s = solve_bvp(example_problem(3), 12);
  const double h = s.mesh.h();
  for (std::size_t i = 1; i <= 12; ++i) {
    const double mid = s.mesh.knot(i - 1) + 0.37 * h;
    CHECK(s.eval(mid, 5) == (s.N[i] - s.N[i - 1]) / h);
    CHECK(s.eval(s.mesh.knot(i - 1) + 0.9 * h, 5) == (s.N[i] - s.N[i - 1]) / h);
  }
}

TEST_CASE("knots belong to the interval on their left; a belongs to the first") {
  const SplineSolution s = solve_bvp(example_problem(3), 8);
  using Side = SplineSolution::Side;
  for (std::size_t i = 1; i <= 8; ++i) CHECK(s.eval(s.mesh.knot(i), 5) == s.limit(i, 5, Side::left));
  CHECK(s.eval(s.mesh.a(), 5) == s.limit(0, 5, Side::right));
}

TEST_CASE("evaluation preconditions") {
  const SplineSolution s = solve_bvp(example_problem(2), 8);
  CHECK_THROWS_AS(s.eval(-1e-9), InvalidInput);
  CHECK_THROWS_AS(s.eval(1.0 + 1e-9), InvalidInput);
  CHECK_THROWS_AS(s.eval(std::nan("")), InvalidInput);
  CHECK_THROWS_AS(s.eval(0.5, 6), InvalidInput);
  CHECK_THROWS_AS(s.eval(0.5, -1), InvalidInput);
  CHECK_NOTHROW(s.eval(0.0));
  CHECK_NOTHROW(s.eval(1.0));
  CHECK_THROWS_AS(s.limit(0, 1, SplineSolution::Side::left), InvalidInput);
  CHECK_THROWS_AS(s.limit(8, 1, SplineSolution::Side::right), InvalidInput);
}

TEST_CASE("boundary data are embedded and m_k is reported against beta1") {
  for (int id : kExampleIds) {
    const Bvp p = example_problem(id);
    const SplineSolution s = solve_bvp(p, 32);
    CHECK(s.y.front() == p.alpha0);
    CHECK(s.y.back() == p.alpha1);
    CHECK(s.m.front() == p.beta0);
    const SplineDiagnostics d = diagnostics(s, p.beta0, p.beta1);
    CHECK(d.slope_mismatch_b == std::abs(s.m.back() - p.beta1));
    // Both ends are off by the scheme's truncation, not by O(1).
    CHECK(d.slope_mismatch_a <= 1e-3);
    CHECK(d.slope_mismatch_b <= 1e-3);
  }
}

TEST_CASE("the enforced identity holds on solver output") {
  const SplineSolution s = solve_bvp(example_problem(1), 16);
  CHECK(consistency_residuals(s)[ConsistencyResiduals::kEnforced].residual <= 1e-10);
}

TEST_CASE("forward and backward slope relations agree within 10 h^3 max|N|") {
  for (int id : kExampleIds) {
    for (std::size_t k : {8, 16, 32}) {
      const SplineSolution s = solve_bvp(example_problem(id), k);
      const double h = s.mesh.h();
      double nmax = 0.0;
      for (double v : s.N) nmax = std::max(nmax, std::abs(v));
      // m_i from the forward relation against the stored backward-relation values.
      double worst = 0.0;
      for (std::size_t i = 1; i < k; ++i) {
        const double fwd = -h / 6 * (2 * s.M[i] + s.M[i + 1]) + h * h * h / 360 * (8 * s.N[i] + 7 * s.N[i + 1]) +
                           (s.y[i + 1] - s.y[i]) / h;
        worst = std::max(worst, std::abs(fwd - s.m[i]));
      }
      CAPTURE(id);
      CAPTURE(k);
      CHECK(worst <= 10 * h * h * h * nmax);
    }
  }
}

TEST_CASE("identity residuals on example 1 are finite and do not grow from k = 8 to 16") {
  const auto r8 = consistency_residuals(solve_bvp(example_problem(1), 8));
  const auto r16 = consistency_residuals(solve_bvp(example_problem(1), 16));
  for (std::size_t j = 0; j < ConsistencyResiduals::kCount; ++j) {
    CAPTURE(r8.entries[j].name);
    CHECK(std::isfinite(r16.entries[j].residual));
    // Roundoff-level entries may jitter; compare above 1e-13.
    CHECK(r16.entries[j].residual <= std::max(r8.entries[j].residual, 1e-13));
  }
}

TEST_CASE("the three-point fourth-derivative residual shrinks like h^3 over k = 8, 16, 32") {
  // Checked with the slope/third-derivative identity that uses m and n.
  std::vector<double> r;
  for (std::size_t k : {8, 16, 32})
    r.push_back(consistency_residuals(solve_bvp(example_problem(2), k))["slope_third_three_point"].residual);
  CHECK(r[1] <= r[0] / 4);
  CHECK(r[2] <= r[1] / 4);
}

TEST_CASE("one-sided limits of orders 0..4 agree to roundoff on every built-in problem") {
  for (int id : kExampleIds) {
    std::vector<std::array<double, 6>> jumps;
    for (std::size_t k : {8, 16, 32}) {
      const Bvp p = example_problem(id);
      jumps.push_back(diagnostics(solve_bvp(p, k), p.beta0, p.beta1).max_jump);
    }
    for (std::size_t r = 0; r < 3; ++r)
      for (int order : {0, 1, 2, 3, 4}) {
        CAPTURE(id);
        CAPTURE(order);
        CHECK(jumps[r][order] <= 1e-10);
      }
  }
}

TEST_CASE("fourth derivative converges at order >= 2 on coarse meshes") {
  for (int id : kExampleIds) {
    const Bvp p = example_problem(id);
    const auto rep = convergence_study(p, std::vector<std::size_t>{8, 16, 32, 64});
    CAPTURE(id);
    CHECK(rep.rungs.back().max_error[4] < rep.rungs.front().max_error[4] / 16);
  }
}

TEST_CASE("eval_many matches pointwise evaluation under both policies") {
  const SplineSolution s = solve_bvp(example_problem(1), 64);
  std::vector<double> xs;
  for (int j = 0; j <= 1000; ++j) xs.push_back(-1.0 + 2.0 * j / 1000.0);
  for (int order = 0; order <= 5; ++order) {
    const auto serial = s.eval_many(xs, order, Execution::serial);
    const auto parallel = s.eval_many(xs, order, Execution::parallel);
    CHECK(serial == parallel);
    for (std::size_t j = 0; j < xs.size(); j += 97) CHECK(serial[j] == s.eval(xs[j], order));
  }
  CHECK_THROWS_AS(s.eval_many(std::vector<double>{0.0, 2.0}), InvalidInput);
}
