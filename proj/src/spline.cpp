#include "qbvp/spline.hpp"

#include <algorithm>
#include <cmath>
#include <vector>
#include <string>

namespace qbvp {

namespace {

void require_length(std::span<const double> v, const Mesh& mesh, const char* what) {
  if (v.size() != mesh.k() + 1)
    throw InvalidInput(std::string(what) + " has " + std::to_string(v.size()) + " entries, expected " +
                       std::to_string(mesh.k() + 1));
}

// Interval i = [x_{i-1}, x_i] in local coordinates t = x - x_{i-1}, s = x_i - x.
// The quintic part carries N; the cubic completion interpolates the reduced
// values yt = y - N h^4/120 and curvatures Mt = M - N h^2/6.
struct Piece {
  double h;
  double yl, yr, Ml, Mr, Nl, Nr;

  Piece(const SplineSolution& s, std::size_t i) : h(s.mesh.h()) {
    const double h2 = h * h;
    const double h4 = h2 * h2;
    Nl = s.N[i - 1];
    Nr = s.N[i];
    Ml = s.M[i - 1] - Nl * h2 / 6.0;
    Mr = s.M[i] - Nr * h2 / 6.0;
    yl = s.y[i - 1] - Nl * h4 / 120.0;
    yr = s.y[i] - Nr * h4 / 120.0;
  }

  double at(double t, double s, int order) const {
    const double cl = yl / h - Ml * h / 6.0;
    const double cr = yr / h - Mr * h / 6.0;
    switch (order) {
      case 0: {
        const double s2 = s * s, t2 = t * t;
        return (Nl * s2 * s2 * s + Nr * t2 * t2 * t) / (120.0 * h) + (Ml * s2 * s + Mr * t2 * t) / (6.0 * h) +
               cl * s + cr * t;
      }
      case 1: {
        const double s2 = s * s, t2 = t * t;
        return (Nr * t2 * t2 - Nl * s2 * s2) / (24.0 * h) + (Mr * t2 - Ml * s2) / (2.0 * h) + cr - cl;
      }
      case 2:
        return (Nl * s * s * s + Nr * t * t * t) / (6.0 * h) + (Ml * s + Mr * t) / h;
      case 3:
        return (Nr * t * t - Nl * s * s) / (2.0 * h) + (Mr - Ml) / h;
      case 4:
        return (Nl * s + Nr * t) / h;
      default:
        return (Nr - Nl) / h;
    }
  }
};

void check_order(int order) {
  if (order < 0 || order > kMaxDerivativeOrder)
    throw InvalidInput("derivative order " + std::to_string(order) + " is outside 0..5");
}

}  // namespace

double SplineSolution::eval(double x, int order) const {
  check_order(order);
  const auto knots = mesh.knots();
  const std::size_t k = mesh.k();
  if (!(x >= knots.front() && x <= knots.back()))
    throw InvalidInput("x = " + std::to_string(x) + " is outside [a, b]");

  auto i = static_cast<std::size_t>(std::clamp(std::ceil((x - mesh.a()) / mesh.h()), 1.0, static_cast<double>(k)));
  while (i > 1 && x <= knots[i - 1]) --i;
  while (i < k && x > knots[i]) ++i;
  return Piece(*this, i).at(x - knots[i - 1], knots[i] - x, order);
}

std::vector<double> SplineSolution::eval_many(std::span<const double> xs, int order, Execution policy) const {
  check_order(order);
  std::vector<double> out(xs.size());
  for_each_index(policy, xs.size(), [&](std::size_t j) { out[j] = eval(xs[j], order); });
  return out;
}

double SplineSolution::limit(std::size_t i, int order, Side side) const {
  check_order(order);
  const double h = mesh.h();
  if (side == Side::left) {
    if (i == 0 || i > mesh.k()) throw InvalidInput("no interval to the left of knot " + std::to_string(i));
    return Piece(*this, i).at(h, 0.0, order);
  }
  if (i >= mesh.k()) throw InvalidInput("no interval to the right of knot " + std::to_string(i));
  return Piece(*this, i + 1).at(0.0, h, order);
}

std::vector<double> recover_N(std::span<const double> y, const Bvp& problem, const Mesh& mesh) {
  require_length(y, mesh, "y");
  const auto x = mesh.knots();
  std::vector<double> N(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    N[i] = sample_at_knot(problem.g, "g", i, x[i]) - sample_at_knot(problem.f, "f", i, x[i]) * y[i];
  return N;
}

std::vector<double> recover_M(std::span<const double> y, std::span<const double> N, const Mesh& mesh) {
  require_length(y, mesh, "y");
  require_length(N, mesh, "N");
  const std::size_t k = mesh.k();
  const double h = mesh.h();
  const double h2 = h * h;
  std::vector<double> M(k + 1);
  for (std::size_t i = 1; i < k; ++i)
    M[i] = -(h2 / 120.0) * (N[i - 1] + 8.0 * N[i] + N[i + 1]) + (y[i - 1] - 2.0 * y[i] + y[i + 1]) / h2;
  M[0] = 2.0 * M[1] - M[2] + (h2 / 6.0) * (N[0] + 4.0 * N[1] + N[2]);
  M[k] = 2.0 * M[k - 1] - M[k - 2] + (h2 / 6.0) * (N[k] + 4.0 * N[k - 1] + N[k - 2]);
  return M;
}

std::vector<double> recover_m(std::span<const double> y, std::span<const double> M, std::span<const double> N,
                              const Mesh& mesh, double beta0) {
  require_length(y, mesh, "y");
  require_length(M, mesh, "M");
  require_length(N, mesh, "N");
  const double h = mesh.h();
  const double h3 = h * h * h;
  std::vector<double> m(y.size());
  m[0] = beta0;
  for (std::size_t i = 1; i < y.size(); ++i)
    m[i] = (h / 6.0) * (2.0 * M[i] + M[i - 1]) - (h3 / 360.0) * (8.0 * N[i] + 7.0 * N[i - 1]) + (y[i] - y[i - 1]) / h;
  return m;
}

std::vector<double> recover_n(std::span<const double> y, std::span<const double> M, std::span<const double> N,
                              const Mesh& mesh) {
  require_length(y, mesh, "y");
  require_length(M, mesh, "M");
  require_length(N, mesh, "N");
  const std::size_t k = mesh.k();
  const double h = mesh.h();
  const double h2 = h * h;
  auto reduced = [&](std::size_t i) { return M[i] - N[i] * h2 / 6.0; };

  std::vector<double> from_left(k + 1), from_right(k + 1);
  for (std::size_t i = 1; i <= k; ++i) {
    const double slope = (reduced(i) - reduced(i - 1)) / h;
    from_left[i] = N[i] * h / 2.0 + slope;
    from_right[i - 1] = -N[i - 1] * h / 2.0 + slope;
  }
  std::vector<double> n(k + 1);
  n[0] = from_right[0];
  n[k] = from_left[k];
  for (std::size_t i = 1; i < k; ++i) n[i] = 0.5 * (from_left[i] + from_right[i]);
  return n;
}

SplineSolution reconstruct(const Mesh& mesh, std::vector<double> y, const Bvp& problem) {
  require_length(y, mesh, "y");
  SplineSolution s{mesh, std::move(y), {}, {}, {}, {}};
  s.N = recover_N(s.y, problem, mesh);
  s.M = recover_M(s.y, s.N, mesh);
  s.m = recover_m(s.y, s.M, s.N, mesh, problem.beta0);
  s.n = recover_n(s.y, s.M, s.N, mesh);
  return s;
}

const ConsistencyResiduals::Entry& ConsistencyResiduals::operator[](std::string_view name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw InvalidInput("unknown identity '" + std::string(name) + "'");
}

ConsistencyResiduals consistency_residuals(const SplineSolution& s) {
  const std::size_t k = s.mesh.k();
  const double h = s.mesh.h();
  const double h2 = h * h, h3 = h2 * h, h4 = h2 * h2;
  const auto& y = s.y;
  const auto& m = s.m;
  const auto& M = s.M;
  const auto& n = s.n;
  const auto& N = s.N;

  using Terms = std::vector<double>;
  ConsistencyResiduals out;
  std::size_t slot = 0;
  // Every term, including each y sample, is listed separately so that the
  // scale reflects the cancellation the identity involves.
  auto record = [&](std::string_view name, std::size_t first, std::size_t last, auto terms) {
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
      const Terms t = terms(i);
      double sum = 0.0, mag = 0.0;
      for (double v : t) {
        sum += v;
        mag += std::abs(v);
      }
      worst = std::max(worst, std::abs(sum));
      scale = std::max(scale, mag);
    }
    out.entries[slot++] = {name, scale > 0.0 ? worst / scale : 0.0, scale};
  };

  record("slope_five_point", 2, k - 2, [&](std::size_t i) {
    return Terms{m[i - 2], 26 * m[i - 1], 66 * m[i], 26 * m[i + 1], m[i + 2],
                 5 / h * y[i - 2], 50 / h * y[i - 1], -50 / h * y[i + 1], -5 / h * y[i + 2]};
  });
  record("curvature_five_point", 2, k - 2, [&](std::size_t i) {
    const double c = 20 / h2;
    return Terms{M[i - 2], 26 * M[i - 1], 66 * M[i], 26 * M[i + 1], M[i + 2],
                 -c * y[i - 2], -2 * c * y[i - 1], 6 * c * y[i], -2 * c * y[i + 1],
                 -c * y[i + 2]};
  });
  record("third_five_point", 2, k - 2, [&](std::size_t i) {
    const double c = 60 / h3;
    return Terms{n[i - 2], 26 * n[i - 1], 66 * n[i], 26 * n[i + 1], n[i + 2],
                 c * y[i - 2], -2 * c * y[i - 1], 2 * c * y[i + 1], -c * y[i + 2]};
  });
  record("fourth_five_point", 2, k - 2, [&](std::size_t i) {
    const double c = 120 / h4;
    return Terms{N[i - 2], 26 * N[i - 1], 66 * N[i], 26 * N[i + 1], N[i + 2],
                 -c * y[i - 2], 4 * c * y[i - 1], -6 * c * y[i], 4 * c * y[i + 1],
                 -c * y[i + 2]};
  });
  record("fourth_curvature_three_point", 1, k - 1, [&](std::size_t i) {
    const double c = 6 / h2;
    return Terms{N[i - 1], 4 * N[i], N[i + 1], -c * M[i - 1], 2 * c * M[i], -c * M[i + 1]};
  });
  record("slope_third_three_point", 1, k - 1, [&](std::size_t i) {
    return Terms{60 * h * m[i - 1], 120 * h * m[i], 60 * h * m[i + 1],
                 -3 * h3 * n[i - 1], -14 * h3 * n[i], -3 * h3 * n[i + 1],
                 120 * y[i - 1], -120 * y[i + 1]};
  });
  record("slope_curvature_three_point", 1, k - 1, [&](std::size_t i) {
    return Terms{8 * h * m[i + 1], -8 * h * m[i - 1], -h2 * M[i - 1], 6 * h2 * M[i],
                 -h2 * M[i + 1], -20 * y[i - 1], 40 * y[i], -20 * y[i + 1]};
  });
  record("slope_backward", 1, k, [&](std::size_t i) {
    return Terms{-m[i], h / 3 * M[i], h / 6 * M[i - 1], -8 * h3 / 360 * N[i],
                 -7 * h3 / 360 * N[i - 1], y[i] / h, -y[i - 1] / h};
  });
  record("slope_forward", 0, k - 1, [&](std::size_t i) {
    return Terms{-m[i], -h / 3 * M[i], -h / 6 * M[i + 1], 8 * h3 / 360 * N[i],
                 7 * h3 / 360 * N[i + 1], y[i + 1] / h, -y[i] / h};
  });
  record("slope_third_central", 1, k - 1, [&](std::size_t i) {
    const double c = h2 / 120;
    return Terms{-m[i], -c * n[i - 1], -18 * c * n[i], -c * n[i + 1], y[i + 1] / (2 * h),
                 -y[i - 1] / (2 * h)};
  });
  record("curvature_fourth_central", 1, k - 1, [&](std::size_t i) {
    const double c = h2 / 120;
    return Terms{-M[i], -c * N[i - 1], -8 * c * N[i], -c * N[i + 1], y[i - 1] / h2,
                 -2 * y[i] / h2, y[i + 1] / h2};
  });
  record("curvature_slope_five_point", 2, k - 2, [&](std::size_t i) {
    const double c = 5 / (32 * h2);
    return Terms{-M[i], m[i - 2] / (32 * h), m[i - 1] / h, -m[i + 1] / h,
                 -m[i + 2] / (32 * h), c * y[i - 2], 16 * c * y[i - 1], -34 * c * y[i],
                 16 * c * y[i + 1], c * y[i + 2]};
  });
  record("fourth_curvature_central", 1, k - 1, [&](std::size_t i) {
    const double c = 3 / (2 * h2), d = 30 / h4;
    return Terms{-N[i], -c * M[i - 1], -18 * c * M[i], -c * M[i + 1], d * y[i - 1],
                 -2 * d * y[i], d * y[i + 1]};
  });
  return out;
}

SplineDiagnostics diagnostics(const SplineSolution& s, double beta0, double beta1) {
  using Side = SplineSolution::Side;
  SplineDiagnostics d;
  d.slope_mismatch_a = std::abs(s.limit(0, 1, Side::right) - beta0);
  d.slope_mismatch_b = std::abs(s.m.back() - beta1);
  for (int order = 0; order <= kMaxDerivativeOrder; ++order)
    for (std::size_t i = 1; i < s.mesh.k(); ++i)
      d.max_jump[order] =
          std::max(d.max_jump[order], std::abs(s.limit(i, order, Side::left) - s.limit(i, order, Side::right)));
  return d;
}

}  // namespace qbvp
