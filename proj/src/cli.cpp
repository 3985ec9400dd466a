#include "qbvp/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <utility>

#include <CLI11.hpp>

#include "qbvp/banded.hpp"
#include "qbvp/driver.hpp"
#include "qbvp/expr.hpp"
#include "qbvp/report.hpp"

namespace qbvp::cli {

namespace {

struct RunConfig {
  std::optional<int> example;
  std::optional<std::string> problem_path;
  std::size_t k = 32;
  std::vector<std::size_t> ks = default_ladder();
  std::string format = "csv";
  std::optional<std::string> out_path;
  bool dump_system = false;
  bool diagnostics = false;
  std::string end_rows = "corrected";
  std::string execution = "parallel";
};

// Raised for argument combinations CLI11 cannot express; mapped to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Artifact {
  std::optional<std::filesystem::path> path;  // nullopt: primary stream
  bool to_err = false;
  std::string text;
};

void add_problem_options(CLI::App* cmd, RunConfig& cfg) {
  auto* ex = cmd->add_option("--example", cfg.example, "built-in problem id")->check(CLI::Range(1, 3));
  auto* pr = cmd->add_option("--problem", cfg.problem_path, "problem file (JSON)");
  ex->excludes(pr);
}

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "markdown", "json"}));
  cmd->add_option("--out", cfg.out_path, "output file (default: standard output)");
}

void add_solver_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--end-rows", cfg.end_rows, "leading end-row B weight: corrected or misprinted")
      ->check(CLI::IsMember({"corrected", "misprinted"}));
  cmd->add_option("--execution", cfg.execution, "serial or parallel kernels")
      ->check(CLI::IsMember({"serial", "parallel"}));
}

Bvp load_problem(const RunConfig& cfg) {
  if (cfg.example) return example_problem(*cfg.example);
  if (cfg.problem_path) return make_problem(load_problem_file(*cfg.problem_path));
  throw UsageError("one of --example or --problem is required");
}

SolveOptions solve_options(const RunConfig& cfg) {
  return {cfg.end_rows == "misprinted" ? EndRowVariant::misprinted : EndRowVariant::corrected,
          cfg.execution == "serial" ? Execution::serial : Execution::parallel};
}

std::filesystem::path sibling(const std::string& out, const std::string& suffix) {
  std::filesystem::path p(out);
  p.replace_filename(p.stem().string() + suffix);
  return p;
}

std::vector<Artifact> do_solve(const RunConfig& cfg) {
  const Bvp problem = load_problem(cfg);
  const SolveOptions opts = solve_options(cfg);
  const SplineSolution s = solve_bvp(problem, cfg.k, opts);

  std::optional<AssembledSystem> system;
  if (cfg.dump_system) system = assemble(problem, s.mesh, opts.variant, opts.policy);
  std::optional<SplineDiagnostics> diag;
  std::optional<ConsistencyResiduals> resid;
  if (cfg.diagnostics) {
    diag = diagnostics(s, problem.beta0, problem.beta1);
    resid = consistency_residuals(s);
  }

  std::vector<Artifact> out;
  if (cfg.format == "json") {
    report::SolveExtras extras{diag ? &*diag : nullptr, resid ? &*resid : nullptr, system ? &*system : nullptr};
    out.push_back({cfg.out_path, false, report::solution_json(s, problem, extras)});
    return out;
  }
  out.push_back({cfg.out_path, false,
                 cfg.format == "markdown" ? report::knot_table_markdown(s, problem)
                                          : report::knot_table_csv(s, problem)});
  // Side outputs: sibling files next to --out, otherwise the error stream.
  auto side = [&](const std::string& suffix, std::string text) {
    if (cfg.out_path)
      out.push_back({sibling(*cfg.out_path, suffix), false, std::move(text)});
    else
      out.push_back({std::nullopt, true, std::move(text)});
  };
  if (system) side(".system.csv", report::system_csv(*system));
  if (diag) side(".diagnostics.csv", report::diagnostics_csv(*diag, *resid));
  return out;
}

std::vector<Artifact> do_convergence(const RunConfig& cfg) {
  try {
    validate_ladder(cfg.ks);
  } catch (const InvalidInput& e) {
    throw UsageError(std::string("bad --ks: ") + e.what());
  }
  const Bvp problem = load_problem(cfg);
  const ConvergenceReport r = convergence_study(problem, cfg.ks, solve_options(cfg));
  std::string text = cfg.format == "json"       ? report::convergence_json(r, problem.name)
                     : cfg.format == "markdown" ? report::convergence_markdown(r, problem.name)
                                                : report::convergence_csv(r);
  return {{cfg.out_path, false, std::move(text)}};
}

void emit(const std::vector<Artifact>& artifacts, std::ostream& out, std::ostream& err) {
  for (const auto& a : artifacts) {
    if (!a.path) {
      (a.to_err ? err : out) << a.text;
      continue;
    }
    std::ofstream f(*a.path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << a.text)) throw UsageError("cannot write output file '" + a.path->string() + "'");
  }
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Quintic spline solver for y'''' + f(x) y = g(x) with clamped ends", "qbvp"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "solve one problem and print the knot table");
  add_problem_options(solve, cfg);
  solve->add_option("--k", cfg.k, "number of subintervals (>= 8)");
  add_common_options(solve, cfg);
  add_solver_options(solve, cfg);
  solve->add_flag("--dump-system", cfg.dump_system, "also emit the dense matrix and right-hand side");
  solve->add_flag("--diagnostics", cfg.diagnostics, "also emit continuity and identity diagnostics");

  auto* conv = app.add_subcommand("convergence", "run a mesh-refinement study against the reference");
  add_problem_options(conv, cfg);
  conv->add_option("--ks", cfg.ks, "comma-separated, strictly increasing ladder")->delimiter(',');
  add_common_options(conv, cfg);
  add_solver_options(conv, cfg);

  auto* examples = app.add_subcommand("examples", "list the built-in problems");
  examples->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "markdown", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    std::vector<Artifact> artifacts;
    if (solve->parsed())
      artifacts = do_solve(cfg);
    else if (conv->parsed())
      artifacts = do_convergence(cfg);
    else
      artifacts = {{std::nullopt, false, report::examples_listing(cfg.format)}};
    emit(artifacts, out, err);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const ExprSyntaxError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: numerical failure: " << one_line(e.what()) << '\n';
    return kExitNumerical;
  }
}

}  // namespace qbvp::cli
