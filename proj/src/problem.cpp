#include "qbvp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qbvp/expr.hpp"

namespace qbvp {

EvaluationError::EvaluationError(const std::string& function, std::size_t knot, double x,
                                 const std::string& detail)
    : Error(function + " failed at knot " + std::to_string(knot) + " (x = " + std::to_string(x) +
            "): " + detail),
      function_(function),
      knot_(knot) {}

Mesh::Mesh(double a, double b, std::size_t k) : a_(a), b_(b), h_((b - a) / static_cast<double>(k)), k_(k) {
  knots_.resize(k + 1);
  for (std::size_t i = 0; i <= k; ++i) knots_[i] = a + static_cast<double>(i) * h_;
}

Mesh build_mesh(double a, double b, std::size_t k) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
    throw InvalidInput("mesh interval must satisfy a < b");
  if (k < kMinSubintervals)
    throw InvalidInput("k too small: need k >= " + std::to_string(kMinSubintervals) + ", got " +
                       std::to_string(k));
  return Mesh(a, b, k);
}

double sample_at_knot(const RealFunction& fn, std::string_view which, std::size_t index, double x) {
  double v = 0.0;
  try {
    v = fn(x);
  } catch (const std::exception& e) {
    throw EvaluationError(std::string(which), index, x, e.what());
  }
  if (!std::isfinite(v)) throw EvaluationError(std::string(which), index, x, "non-finite value");
  return v;
}

namespace {

// Example 1: y'''' + 4y = 1 on [-1, 1].
Bvp example_one() {
  const double s1sh1 = std::sin(1.0) * std::sinh(1.0);
  const double c1ch1 = std::cos(1.0) * std::cosh(1.0);
  const double d = std::cos(2.0) + std::cosh(2.0);
  const double slope = (std::sinh(2.0) - std::sin(2.0)) / (4.0 * (std::cosh(2.0) + std::cos(2.0)));

  Bvp p;
  p.name = "example-1";
  p.f = [](double) { return 4.0; };
  p.g = [](double) { return 1.0; };
  p.a = -1.0;
  p.b = 1.0;
  p.beta0 = slope;
  p.beta1 = -slope;
  AnalyticReference ref;
  ref.derivs[0] = [=](double x) {
    return 0.25 * (1.0 - 2.0 * (s1sh1 * std::sin(x) * std::sinh(x) + c1ch1 * std::cos(x) * std::cosh(x)) / d);
  };
  ref.derivs[1] = [=](double x) {
    return -0.5 *
           (s1sh1 * (std::cos(x) * std::sinh(x) + std::sin(x) * std::cosh(x)) +
            c1ch1 * (std::cos(x) * std::sinh(x) - std::sin(x) * std::cosh(x))) /
           d;
  };
  ref.derivs[2] = [=](double x) {
    return -(s1sh1 * std::cos(x) * std::cosh(x) - c1ch1 * std::sin(x) * std::sinh(x)) / d;
  };
  ref.derivs[3] = [=](double x) {
    return -(s1sh1 * (std::cos(x) * std::sinh(x) - std::sin(x) * std::cosh(x)) -
             c1ch1 * (std::cos(x) * std::sinh(x) + std::sin(x) * std::cosh(x))) /
           d;
  };
  ref.derivs[4] = [=](double x) {
    return 2.0 * (s1sh1 * std::sin(x) * std::sinh(x) + c1ch1 * std::cos(x) * std::cosh(x)) / d;
  };
  p.reference = std::move(ref);
  return p;
}

// Example 2: y'''' + x y = -(8 + 7x + x^3) e^x on [0, 1].
Bvp example_two() {
  Bvp p;
  p.name = "example-2";
  p.f = [](double x) { return x; };
  p.g = [](double x) { return -(8.0 + 7.0 * x + std::pow(x, 3.0)) * std::exp(x); };
  p.a = 0.0;
  p.b = 1.0;
  p.beta0 = 1.0;
  p.beta1 = -std::numbers::e;
  AnalyticReference ref;
  ref.derivs[0] = [](double x) { return x * (1.0 - x) * std::exp(x); };
  ref.derivs[1] = [](double x) { return (1.0 - x - std::pow(x, 2.0)) * std::exp(x); };
  ref.derivs[2] = [](double x) { return -(3.0 * x + std::pow(x, 2.0)) * std::exp(x); };
  ref.derivs[3] = [](double x) { return -(3.0 + 5.0 * x + std::pow(x, 2.0)) * std::exp(x); };
  ref.derivs[4] = [](double x) { return -(8.0 + 7.0 * x + std::pow(x, 2.0)) * std::exp(x); };
  p.reference = std::move(ref);
  return p;
}

// Example 3: y'''' - y = -4(2x cos x + 3 sin x) on [-1, 1].
Bvp example_three() {
  Bvp p;
  p.name = "example-3";
  p.f = [](double) { return -1.0; };
  p.g = [](double x) { return -4.0 * (2.0 * x * std::cos(x) + 3.0 * std::sin(x)); };
  p.a = -1.0;
  p.b = 1.0;
  p.beta0 = 2.0 * std::sin(1.0);
  p.beta1 = 2.0 * std::sin(1.0);
  AnalyticReference ref;
  ref.derivs[0] = [](double x) { return (std::pow(x, 2.0) - 1.0) * std::sin(x); };
  ref.derivs[1] = [](double x) { return 2.0 * x * std::sin(x) + (std::pow(x, 2.0) - 1.0) * std::cos(x); };
  ref.derivs[2] = [](double x) { return (3.0 - std::pow(x, 2.0)) * std::sin(x) + 4.0 * x * std::cos(x); };
  ref.derivs[3] = [](double x) { return (7.0 - std::pow(x, 2.0)) * std::cos(x) - 6.0 * x * std::sin(x); };
  ref.derivs[4] = [](double x) { return (std::pow(x, 2.0) - 13.0) * std::sin(x) - 8.0 * x * std::cos(x); };
  p.reference = std::move(ref);
  return p;
}

void check_example_id(int id) {
  if (std::find(kExampleIds.begin(), kExampleIds.end(), id) == kExampleIds.end())
    throw InvalidInput("unknown example id " + std::to_string(id) + " (expected 1, 2 or 3)");
}

double parse_value(const std::string& text, const char* key) {
  try {
    return Expr::parse(text).eval(0.0);
  } catch (const Error& e) {
    throw InvalidInput(std::string("problem field '") + key + "': " + e.what());
  }
}

RealFunction compile(const std::string& text, const char* key) {
  try {
    return [e = Expr::parse(text)](double x) { return e.eval(x); };
  } catch (const ExprSyntaxError& e) {
    throw InvalidInput(std::string("problem field '") + key + "': " + e.what());
  }
}

}  // namespace

Bvp example_problem(int id) {
  check_example_id(id);
  switch (id) {
    case 1: return example_one();
    case 2: return example_two();
    default: return example_three();
  }
}

ProblemSource example_source(int id) {
  check_example_id(id);
  ProblemSource s;
  s.name = "example-" + std::to_string(id);
  s.alpha0 = "0";
  s.alpha1 = "0";
  switch (id) {
    case 1:
      s.a = -1.0;
      s.b = 1.0;
      s.f = "4";
      s.g = "1";
      s.beta0 = "(sinh(2) - sin(2))/(4*(cosh(2) + cos(2)))";
      s.beta1 = "-(sinh(2) - sin(2))/(4*(cosh(2) + cos(2)))";
      s.reference = std::array<std::string, 5>{
          "0.25*(1 - 2*(sin(1)*sinh(1)*sin(x)*sinh(x) + cos(1)*cosh(1)*cos(x)*cosh(x))/(cos(2) + cosh(2)))",
          "-0.5*(sin(1)*sinh(1)*(cos(x)*sinh(x) + sin(x)*cosh(x)) + cos(1)*cosh(1)*(cos(x)*sinh(x) - "
          "sin(x)*cosh(x)))/(cos(2) + cosh(2))",
          "-(sin(1)*sinh(1)*cos(x)*cosh(x) - cos(1)*cosh(1)*sin(x)*sinh(x))/(cos(2) + cosh(2))",
          "-(sin(1)*sinh(1)*(cos(x)*sinh(x) - sin(x)*cosh(x)) - cos(1)*cosh(1)*(cos(x)*sinh(x) + "
          "sin(x)*cosh(x)))/(cos(2) + cosh(2))",
          "2*(sin(1)*sinh(1)*sin(x)*sinh(x) + cos(1)*cosh(1)*cos(x)*cosh(x))/(cos(2) + cosh(2))",
      };
      break;
    case 2:
      s.a = 0.0;
      s.b = 1.0;
      s.f = "x";
      s.g = "-(8 + 7*x + x^3)*exp(x)";
      s.beta0 = "1";
      s.beta1 = "-e";
      s.reference = std::array<std::string, 5>{
          "x*(1 - x)*exp(x)",
          "(1 - x - x^2)*exp(x)",
          "-(3*x + x^2)*exp(x)",
          "-(3 + 5*x + x^2)*exp(x)",
          "-(8 + 7*x + x^2)*exp(x)",
      };
      break;
    default:
      s.a = -1.0;
      s.b = 1.0;
      s.f = "-1";
      s.g = "-4*(2*x*cos(x) + 3*sin(x))";
      s.beta0 = "2*sin(1)";
      s.beta1 = "2*sin(1)";
      s.reference = std::array<std::string, 5>{
          "(x^2 - 1)*sin(x)",
          "2*x*sin(x) + (x^2 - 1)*cos(x)",
          "(3 - x^2)*sin(x) + 4*x*cos(x)",
          "(7 - x^2)*cos(x) - 6*x*sin(x)",
          "(x^2 - 13)*sin(x) - 8*x*cos(x)",
      };
      break;
  }
  return s;
}

Bvp make_problem(const ProblemSource& source) {
  if (!std::isfinite(source.a) || !std::isfinite(source.b) || !(source.b > source.a))
    throw InvalidInput("problem interval must satisfy a < b");
  Bvp p;
  p.name = source.name;
  p.a = source.a;
  p.b = source.b;
  p.alpha0 = parse_value(source.alpha0, "alpha0");
  p.alpha1 = parse_value(source.alpha1, "alpha1");
  p.beta0 = parse_value(source.beta0, "beta0");
  p.beta1 = parse_value(source.beta1, "beta1");
  p.f = compile(source.f, "f");
  p.g = compile(source.g, "g");
  if (source.reference) {
    AnalyticReference ref;
    for (std::size_t j = 0; j < 5; ++j) ref.derivs[j] = compile((*source.reference)[j], "reference");
    p.reference = std::move(ref);
  }
  return p;
}

ProblemSource parse_problem_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed problem file: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("malformed problem file: top level must be an object");

  auto number = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_number())
      throw InvalidInput(std::string("malformed problem file: '") + key + "' must be a number");
    return doc[key].get<double>();
  };
  // Boundary values: a number, or an expression string such as "-e".
  auto value_text = [&](const char* key) -> std::string {
    if (!doc.contains(key)) throw InvalidInput(std::string("malformed problem file: missing '") + key + "'");
    const auto& v = doc[key];
    if (v.is_number()) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
      return buf;
    }
    if (v.is_string()) return v.get<std::string>();
    throw InvalidInput(std::string("malformed problem file: '") + key + "' must be a number or string");
  };
  auto text_field = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_string())
      throw InvalidInput(std::string("malformed problem file: '") + key + "' must be an expression string");
    return doc[key].get<std::string>();
  };

  ProblemSource s;
  s.name = doc.value("name", std::string("problem"));
  s.a = number("a");
  s.b = number("b");
  s.alpha0 = value_text("alpha0");
  s.alpha1 = value_text("alpha1");
  s.beta0 = value_text("beta0");
  s.beta1 = value_text("beta1");
  s.f = text_field("f");
  s.g = text_field("g");
  if (doc.contains("reference")) {
    const auto& r = doc["reference"];
    if (!r.is_array() || r.size() != 5)
      throw InvalidInput("malformed problem file: 'reference' must be an array of 5 expression strings");
    std::array<std::string, 5> refs;
    for (std::size_t j = 0; j < 5; ++j) {
      if (!r[j].is_string())
        throw InvalidInput("malformed problem file: 'reference' must be an array of 5 expression strings");
      refs[j] = r[j].get<std::string>();
    }
    s.reference = refs;
  }
  return s;
}

ProblemSource load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read problem file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_json(buf.str());
}

std::string problem_to_json(const ProblemSource& s) {
  nlohmann::json doc;
  doc["name"] = s.name;
  doc["a"] = s.a;
  doc["b"] = s.b;
  doc["alpha0"] = s.alpha0;
  doc["alpha1"] = s.alpha1;
  doc["beta0"] = s.beta0;
  doc["beta1"] = s.beta1;
  doc["f"] = s.f;
  doc["g"] = s.g;
  if (s.reference) doc["reference"] = *s.reference;
  return doc.dump(2);
}

ReferenceCheck check_reference(const Bvp& p, std::size_t samples) {
  if (!p.reference) throw InvalidInput("problem '" + p.name + "' has no analytic reference");
  const auto& d = p.reference->derivs;
  auto rel = [](double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); };

  ReferenceCheck out;
  out.boundary_mismatch = std::max({rel(d[0](p.a), p.alpha0), rel(d[0](p.b), p.alpha1),
                                    rel(d[1](p.a), p.beta0), rel(d[1](p.b), p.beta1)});
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = p.a + (p.b - p.a) * static_cast<double>(s) / static_cast<double>(samples - 1);
    const double y4 = d[4](x), fy = p.f(x) * d[0](x), g = p.g(x);
    worst = std::max(worst, std::abs(y4 + fy - g));
    out.scale = std::max(out.scale, std::abs(y4) + std::abs(fy) + std::abs(g));
  }
  out.residual = out.scale > 0.0 ? worst / out.scale : worst;
  return out;
}

}  // namespace qbvp
