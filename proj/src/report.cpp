#include "qbvp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace qbvp::report {

namespace {

constexpr std::array<const char*, kErrorOrders> kQuantity{"y", "m", "M", "n", "N"};
constexpr std::array<const char*, kErrorOrders> kDerivLabel{"y", "y'", "y''", "y'''", "y''''"};

std::array<const std::vector<double>*, kErrorOrders> quantities(const SplineSolution& s) {
  return {&s.y, &s.m, &s.M, &s.n, &s.N};
}

std::string printf_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

// Reference samples per quantity; empty without a reference.
std::vector<std::array<double, kErrorOrders>> exact_at_knots(const SplineSolution& s, const Bvp& p) {
  std::vector<std::array<double, kErrorOrders>> out;
  if (!p.reference) return out;
  const auto x = s.mesh.knots();
  out.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t d = 0; d < kErrorOrders; ++d)
      out[i][d] = sample_at_knot(p.reference->derivs[d], "reference", i, x[i]);
  return out;
}

nlohmann::json ordered_orders(const ConvergenceReport& r, std::size_t rung) {
  nlohmann::json o = nlohmann::json::object();
  for (std::size_t d = 0; d < kErrorOrders; ++d) {
    const auto& v = r.orders[rung][d];
    o[kQuantity[d]] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  }
  return o;
}

}  // namespace

std::string sci17(double v) { return printf_double("%.16e", v); }
std::string sci4(double v) { return printf_double("%.3e", v); }

std::string knot_table_csv(const SplineSolution& s, const Bvp& problem) {
  const auto exact = exact_at_knots(s, problem);
  const auto q = quantities(s);
  std::ostringstream out;
  out << "i,x";
  for (auto name : kQuantity) out << ',' << name;
  if (!exact.empty()) {
    for (auto name : kQuantity) out << ",exact_" << name;
    for (auto name : kQuantity) out << ",err_" << name;
  }
  out << '\n';
  const auto x = s.mesh.knots();
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << i << ',' << sci17(x[i]);
    for (std::size_t d = 0; d < kErrorOrders; ++d) out << ',' << sci17((*q[d])[i]);
    if (!exact.empty()) {
      for (std::size_t d = 0; d < kErrorOrders; ++d) out << ',' << sci17(exact[i][d]);
      for (std::size_t d = 0; d < kErrorOrders; ++d) out << ',' << sci17(std::abs((*q[d])[i] - exact[i][d]));
    }
    out << '\n';
  }
  return out.str();
}

std::string knot_table_markdown(const SplineSolution& s, const Bvp& problem) {
  const auto exact = exact_at_knots(s, problem);
  const auto q = quantities(s);
  std::ostringstream out;
  out << "| i | x |";
  for (auto label : kDerivLabel) out << ' ' << label << " |";
  if (!exact.empty())
    for (auto label : kDerivLabel) out << " err " << label << " |";
  out << "\n|---|---|";
  for (std::size_t c = 0; c < (exact.empty() ? 1u : 2u) * kErrorOrders; ++c) out << "---|";
  out << '\n';
  const auto x = s.mesh.knots();
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << "| " << i << " | " << sci4(x[i]) << " |";
    for (std::size_t d = 0; d < kErrorOrders; ++d) out << ' ' << sci4((*q[d])[i]) << " |";
    if (!exact.empty())
      for (std::size_t d = 0; d < kErrorOrders; ++d) out << ' ' << sci4(std::abs((*q[d])[i] - exact[i][d])) << " |";
    out << '\n';
  }
  return out.str();
}

std::string solution_json(const SplineSolution& s, const Bvp& problem, const SolveExtras& extras) {
  nlohmann::json doc;
  doc["problem"] = problem.name;
  doc["a"] = s.mesh.a();
  doc["b"] = s.mesh.b();
  doc["k"] = s.mesh.k();
  doc["h"] = s.mesh.h();
  doc["x"] = std::vector<double>(s.mesh.knots().begin(), s.mesh.knots().end());
  const auto q = quantities(s);
  for (std::size_t d = 0; d < kErrorOrders; ++d) doc[kQuantity[d]] = *q[d];

  const auto exact = exact_at_knots(s, problem);
  if (!exact.empty()) {
    nlohmann::json ex, err, max_err;
    for (std::size_t d = 0; d < kErrorOrders; ++d) {
      std::vector<double> e(exact.size()), de(exact.size());
      double worst = 0.0;
      for (std::size_t i = 0; i < exact.size(); ++i) {
        e[i] = exact[i][d];
        de[i] = std::abs((*q[d])[i] - exact[i][d]);
        worst = std::max(worst, de[i]);
      }
      ex[kQuantity[d]] = e;
      err[kQuantity[d]] = de;
      max_err[kQuantity[d]] = worst;
    }
    doc["exact"] = ex;
    doc["error"] = err;
    doc["max_error"] = max_err;
  }
  if (extras.diagnostics) {
    const auto& d = *extras.diagnostics;
    nlohmann::json j;
    j["slope_mismatch_a"] = d.slope_mismatch_a;
    j["slope_mismatch_b"] = d.slope_mismatch_b;
    j["max_jump"] = d.max_jump;
    if (extras.residuals)
      for (const auto& e : extras.residuals->entries)
        j["residuals"][std::string(e.name)] = {{"residual", e.residual}, {"scale", e.scale}};
    doc["diagnostics"] = j;
  }
  if (extras.system) {
    const auto& m = extras.system->matrix;
    const auto dense = m.to_dense();
    const std::size_t n = m.size();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i)
      rows.push_back(std::vector<double>(dense.begin() + static_cast<std::ptrdiff_t>(i * n),
                                         dense.begin() + static_cast<std::ptrdiff_t>((i + 1) * n)));
    doc["system"] = {{"matrix", rows}, {"rhs", extras.system->rhs}};
  }
  return doc.dump(2) + "\n";
}

std::string convergence_csv(const ConvergenceReport& r) {
  std::ostringstream out;
  out << "k,h";
  for (auto name : kQuantity) out << ",err_" << name;
  for (auto name : kQuantity) out << ",order_" << name;
  for (auto name : kQuantity) out << ",floor_" << name;
  out << '\n';
  for (std::size_t i = 0; i < r.rungs.size(); ++i) {
    const auto& t = r.rungs[i];
    out << t.k << ',' << sci17(t.h);
    for (double e : t.max_error) out << ',' << sci17(e);
    for (std::size_t d = 0; d < kErrorOrders; ++d) {
      out << ',';
      if (i > 0 && r.orders[i - 1][d]) out << sci17(*r.orders[i - 1][d]);
    }
    for (std::size_t d = 0; d < kErrorOrders; ++d) out << ',' << (r.at_floor[i][d] ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

std::string convergence_markdown(const ConvergenceReport& r, const std::string& title) {
  std::ostringstream out;
  out << "### Maximum absolute errors: " << title << "\n\n| h | k |";
  for (auto label : kDerivLabel) out << ' ' << label << " |";
  out << "\n|---|---|---|---|---|---|---|\n";
  for (std::size_t i = 0; i < r.rungs.size(); ++i) {
    const auto& t = r.rungs[i];
    out << "| " << sci4(t.h) << " | " << t.k << " |";
    for (std::size_t d = 0; d < kErrorOrders; ++d)
      out << ' ' << sci4(t.max_error[d]) << (r.at_floor[i][d] ? "*" : "") << " |";
    out << '\n';
  }
  out << "\n### Observed orders\n\n| rungs |";
  for (auto label : kDerivLabel) out << ' ' << label << " |";
  out << "\n|---|---|---|---|---|---|\n";
  for (std::size_t i = 0; i + 1 < r.rungs.size(); ++i) {
    out << "| " << r.rungs[i].k << " -> " << r.rungs[i + 1].k << " |";
    for (std::size_t d = 0; d < kErrorOrders; ++d) {
      const auto& v = r.orders[i][d];
      out << ' ' << (v ? printf_double("%.2f", *v) : std::string("-")) << " |";
    }
    out << '\n';
  }
  out << "\n`*` marks errors at the roundoff floor; orders touching them are not computed.\n";
  return out.str();
}

std::string convergence_json(const ConvergenceReport& r, const std::string& name) {
  nlohmann::json doc;
  doc["problem"] = name;
  doc["rungs"] = nlohmann::json::array();
  for (std::size_t i = 0; i < r.rungs.size(); ++i) {
    const auto& t = r.rungs[i];
    nlohmann::json rung;
    rung["k"] = t.k;
    rung["h"] = t.h;
    for (std::size_t d = 0; d < kErrorOrders; ++d) {
      rung["max_error"][kQuantity[d]] = t.max_error[d];
      rung["at_floor"][kQuantity[d]] = static_cast<bool>(r.at_floor[i][d]);
    }
    doc["rungs"].push_back(rung);
  }
  doc["orders"] = nlohmann::json::array();
  for (std::size_t i = 0; i < r.orders.size(); ++i) doc["orders"].push_back(ordered_orders(r, i));
  return doc.dump(2) + "\n";
}

std::string system_csv(const AssembledSystem& system) {
  const auto& m = system.matrix;
  const std::size_t n = m.size();
  std::ostringstream out;
  for (std::size_t j = 0; j < n; ++j) out << "c" << j + 1 << ',';
  out << "rhs\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << sci17(m(i, j)) << ',';
    out << sci17(system.rhs[i]) << '\n';
  }
  return out.str();
}

std::string diagnostics_csv(const SplineDiagnostics& d, const ConsistencyResiduals& r) {
  std::ostringstream out;
  out << "name,value\n";
  out << "slope_mismatch_a," << sci17(d.slope_mismatch_a) << '\n';
  out << "slope_mismatch_b," << sci17(d.slope_mismatch_b) << '\n';
  for (std::size_t order = 0; order < d.max_jump.size(); ++order)
    out << "max_jump_order_" << order << ',' << sci17(d.max_jump[order]) << '\n';
  for (const auto& e : r.entries) out << "residual_" << e.name << ',' << sci17(e.residual) << '\n';
  return out.str();
}

std::string examples_listing(const std::string& format) {
  if (format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    for (int id : kExampleIds) {
      const ProblemSource s = example_source(id);
      doc.push_back(nlohmann::json::parse(problem_to_json(s)));
      doc.back()["id"] = id;
    }
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  const bool md = format == "markdown";
  out << (md ? "| id | name | a | b | f | g |\n|---|---|---|---|---|---|\n" : "id,name,a,b,f,g\n");
  for (int id : kExampleIds) {
    const ProblemSource s = example_source(id);
    if (md)
      out << "| " << id << " | " << s.name << " | " << s.a << " | " << s.b << " | `" << s.f << "` | `" << s.g
          << "` |\n";
    else
      out << id << ',' << s.name << ',' << sci17(s.a) << ',' << sci17(s.b) << ",\"" << s.f << "\",\"" << s.g
          << "\"\n";
  }
  return out.str();
}

}  // namespace qbvp::report
