#include <doctest.h>

#include <cmath>
#include <vector>

#include "../oracle/manufactured.hpp"
#include "qbvp/assembly.hpp"
#include "qbvp/driver.hpp"

using namespace qbvp;

namespace {

Bvp homogeneous(double a, double b, RealFunction f, RealFunction g) {
  Bvp p;
  p.name = "test";
  p.a = a;
  p.b = b;
  p.f = std::move(f);
  p.g = std::move(g);
  return p;
}

AssemblyContext context(const Bvp& p, std::size_t k) { return make_context(p, build_mesh(p.a, p.b, k)); }

}  // namespace

TEST_CASE("interior rows with f = 0 are the plain fourth difference") {
  const Bvp p = homogeneous(0, 1, [](double) { return 0.0; }, [](double x) { return 1.0 + x * x; });
  const auto ctx = context(p, 12);
  const double h = ctx.h, h4 = h * h * h * h;
  for (std::size_t i = 3; i <= 9; ++i) {
    const SystemRow r = interior_row(i, ctx);
    CHECK(r.first_knot == i - 2);
    CHECK(r.width == 5);
    const double w[] = {1, -4, 6, -4, 1};
    for (std::size_t q = 0; q < 5; ++q) CHECK(r.coeff[q] == w[q]);
    const auto& g = ctx.g_at_knots;
    const double want = h4 / 120.0 * (g[i - 2] + 26 * g[i - 1] + 66 * g[i] + 26 * g[i + 1] + g[i + 2]);
    CHECK(r.rhs == doctest::Approx(want).epsilon(1e-15));
  }
}

TEST_CASE("example 1 interior diagonal") {
  const auto ctx = context(example_problem(1), 16);
  const double h4 = std::pow(ctx.h, 4);
  const SystemRow r = interior_row(8, ctx);
  CHECK(r.coefficient(8) == doctest::Approx(6.0 + h4 * (66.0 / 120.0) * 4.0).epsilon(1e-15));
  CHECK(r.coefficient(7) == doctest::Approx(-4.0 + h4 * (26.0 / 120.0) * 4.0).epsilon(1e-15));
  CHECK(r.coefficient(6) == doctest::Approx(1.0 + h4 * (1.0 / 120.0) * 4.0).epsilon(1e-15));
}

TEST_CASE("row 2 folds in y_0 and row k-2 folds in y_k") {
  Bvp p = homogeneous(0, 1, [](double x) { return 2.0 + x; }, [](double x) { return std::exp(x); });
  p.alpha0 = 0.7;
  p.alpha1 = -1.3;
  const auto ctx = context(p, 10);
  const double h4 = std::pow(ctx.h, 4);
  const auto& f = ctx.f_at_knots;
  const auto& g = ctx.g_at_knots;

  const SystemRow r2 = interior_row(2, ctx);
  CHECK(r2.first_knot == 1);
  CHECK(r2.width == 4);
  const double c2 = h4 / 120.0 * (g[0] - f[0] * p.alpha0 + 26 * g[1] + 66 * g[2] + 26 * g[3] + g[4]) - p.alpha0;
  CHECK(r2.rhs == doctest::Approx(c2).epsilon(1e-14));

  const SystemRow r8 = interior_row(8, ctx);
  CHECK(r8.first_knot == 6);
  CHECK(r8.width == 3 + 1);
  const double c8 = h4 / 120.0 * (g[6] + 26 * g[7] + 66 * g[8] + 26 * g[9] + g[10] - f[10] * p.alpha1) - p.alpha1;
  CHECK(r8.rhs == doctest::Approx(c8).epsilon(1e-14));
}

TEST_CASE("row 2 with y_0 = 0 has no boundary correction") {
  const Bvp p = homogeneous(0, 1, [](double) { return 5.0; }, [](double x) { return x; });
  const auto ctx = context(p, 8);
  const auto& g = ctx.g_at_knots;
  const double h4 = std::pow(ctx.h, 4);
  CHECK(interior_row(2, ctx).rhs == doctest::Approx(h4 / 120.0 * (g[0] + 26 * g[1] + 66 * g[2] + 26 * g[3] + g[4])));
}

TEST_CASE("interior row index range") {
  const auto ctx = context(example_problem(2), 8);
  CHECK_THROWS_AS(interior_row(1, ctx), InvalidInput);
  CHECK_THROWS_AS(interior_row(7, ctx), InvalidInput);
  CHECK_NOTHROW(interior_row(6, ctx));
}

TEST_CASE("homogeneous end rows") {
  const Bvp p = homogeneous(0, 1, [](double) { return 0.0; }, [](double) { return 0.0; });
  const auto ctx = context(p, 8);
  const SystemRow l = end_row_left(ctx);
  CHECK(l.first_knot == 1);
  CHECK(l.width == 4);
  CHECK(l.coeff[0] == 9.0);
  CHECK(l.coeff[1] == -4.5);
  CHECK(l.coeff[2] == 1.0);
  CHECK(l.coeff[3] == 0.0);
  CHECK(l.rhs == 0.0);
  const SystemRow r = end_row_right(ctx);
  CHECK(r.first_knot == 4);
  CHECK(r.coeff[0] == 0.0);
  CHECK(r.coeff[1] == 1.0);
  CHECK(r.coeff[2] == -4.5);
  CHECK(r.coeff[3] == 9.0);
  CHECK(r.rhs == 0.0);
}

TEST_CASE("left end row with g = 1 on h = 1/8") {
  const Bvp p = homogeneous(0, 1, [](double) { return 0.0; }, [](double) { return 1.0; });
  const auto ctx = context(p, 8);
  const double h4 = std::pow(0.125, 4);
  const double want = h4 / 280.0 * (-3.0 / 360 + 31686.0 / 180 + 669.0 / 30 + 3696.0 / 180 + 5307.0 / 360);
  CHECK(end_row_left(ctx).rhs == doctest::Approx(want).epsilon(1e-15));
}

TEST_CASE("right end row picks up 11/2 y_k") {
  Bvp p = homogeneous(0, 1, [](double) { return 0.0; }, [](double) { return 0.0; });
  p.alpha1 = 1.0;
  CHECK(end_row_right(context(p, 8)).rhs == 5.5);
  p.alpha1 = 0.0;
  p.beta1 = 2.0;
  CHECK(end_row_right(context(p, 8)).rhs == doctest::Approx(-3.0 * 0.125 * 2.0));
  p.beta1 = 0.0;
  p.beta0 = 2.0;
  CHECK(end_row_left(context(p, 8)).rhs == doctest::Approx(3.0 * 0.125 * 2.0));
}

TEST_CASE("end-row B coefficient b_1") {
  CHECK(templates::kEndB[0].value() == doctest::Approx(0.628690).epsilon(1e-6));
  const Bvp p = homogeneous(0, 1, [](double) { return 1.0; }, [](double) { return 0.0; });
  const auto ctx = context(p, 8);
  const double h4 = std::pow(ctx.h, 4);
  CHECK(end_row_left(ctx).coeff[0] == doctest::Approx(9.0 + h4 * 31686.0 / 50400.0).epsilon(1e-15));
  AssemblyContext mis = ctx;
  mis.variant = EndRowVariant::misprinted;
  CHECK(end_row_left(mis).coeff[0] == doctest::Approx(9.0 + h4 * 31686.0 / 5040.0).epsilon(1e-15));
  CHECK(end_row_left(mis).rhs == end_row_left(ctx).rhs);
}

TEST_CASE("f = 0 gives the printed A matrix exactly") {
  const Bvp p = homogeneous(0, 1, [](double) { return 0.0; }, [](double x) { return std::sin(x); });
  const AssembledSystem sys = assemble(p, build_mesh(0, 1, 8));
  const double A[7][7] = {
      {9, -4.5, 1, 0, 0, 0, 0},  {-4, 6, -4, 1, 0, 0, 0}, {1, -4, 6, -4, 1, 0, 0}, {0, 1, -4, 6, -4, 1, 0},
      {0, 0, 1, -4, 6, -4, 1},   {0, 0, 0, 1, -4, 6, -4}, {0, 0, 0, 0, 1, -4.5, 9},
  };
  REQUIRE(sys.matrix.size() == 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) CHECK(sys.matrix(i, j) == A[i][j]);
}

TEST_CASE("row sparsity pattern") {
  const Bvp p = example_problem(2);
  for (std::size_t k : {8, 9, 16, 33}) {
    const AssembledSystem sys = assemble(p, build_mesh(p.a, p.b, k));
    const std::size_t n = k - 1;
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t row = r + 1;
      std::size_t lo = row == 1 ? 1 : row == k - 1 ? k - 4 : (row > 2 ? row - 2 : 1);
      std::size_t hi = row == 1 ? 4 : row == k - 1 ? k - 1 : std::min(row + 2, k - 1);
      for (std::size_t c = 1; c <= n; ++c)
        if (c < lo || c > hi) CHECK(sys.matrix(r, c - 1) == 0.0);
    }
    CHECK(sys.rhs.size() == n);
    CHECK(sys.f_at_knots.size() == k + 1);
    CHECK(sys.g_at_knots.size() == k + 1);
    CHECK(sys.h == doctest::Approx(1.0 / double(k)));
  }
}

TEST_CASE("constant f contributes 4 B everywhere") {
  const Bvp p = example_problem(1);
  const AssembledSystem with_f = assemble(p, build_mesh(p.a, p.b, 16));
  Bvp zero = p;
  zero.f = [](double) { return 0.0; };
  const AssembledSystem without = assemble(zero, build_mesh(p.a, p.b, 16));
  const double h4 = std::pow(0.125, 4);
  const double b_end[] = {31686.0 / 50400, 669.0 / 8400, 528.0 / 7200, 5307.0 / 100800};
  const double b_in[] = {1.0 / 120, 26.0 / 120, 66.0 / 120, 26.0 / 120, 1.0 / 120};
  const std::size_t n = 15;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double b = 0.0;
      if (i == 0 && j < 4) b = b_end[j];
      else if (i == n - 1 && j + 4 >= n) b = b_end[n - 1 - j];
      else if (i > 0 && i < n - 1 && std::max(i, j) - std::min(i, j) <= 2) b = b_in[j + 2 - i];
      CHECK(with_f.matrix(i, j) - without.matrix(i, j) == doctest::Approx(4.0 * h4 * b).epsilon(1e-9));
    }
}

TEST_CASE("example 1 system is persymmetric") {
  const Bvp p = example_problem(1);
  const AssembledSystem sys = assemble(p, build_mesh(p.a, p.b, 16));
  const std::size_t n = sys.matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) CHECK(sys.matrix(i, j) == sys.matrix(n - 1 - i, n - 1 - j));
    CHECK(sys.rhs[i] == doctest::Approx(sys.rhs[n - 1 - i]).epsilon(1e-14));
  }
}

TEST_CASE("cubic solutions are reproduced exactly at the knots") {
  for (std::size_t k : {8, 16, 32}) {
    const Bvp p = oracle::cubic_problem(0, 1, 0.5, -1.0, 2.0, 1.5, [](double x) { return 1.0 + std::cos(x); });
    const AssembledSystem sys = assemble(p, build_mesh(p.a, p.b, k));
    const auto y = solve_system(sys);
    for (std::size_t i = 0; i < y.size(); ++i)
      CHECK(std::abs(y[i] - p.reference->derivs[0](double(i + 1) / double(k))) <= 1e-10);
  }
}

TEST_CASE("evaluation failures name the function and the knot") {
  Bvp p = homogeneous(0, 1, [](double) { return 0.0; }, [](double x) { return x > 0.65 ? std::log(-x) : 1.0; });
  try {
    assemble(p, build_mesh(0, 1, 10));
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    CHECK(e.function() == "g");
    CHECK(e.knot() == 7);
  }
}

TEST_CASE("mesh must cover the problem interval") {
  const Bvp p = example_problem(2);
  CHECK_THROWS_AS(assemble(p, build_mesh(0.0, 2.0, 8)), InvalidInput);
}
