#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>

#include "cqot/crystalline.hpp"
#include "cqot/diagnostics.hpp"
#include "cqot/example1.hpp"
#include "cqot/io.hpp"
#include "cqot/linf.hpp"
#include "cqot/oracle_1d.hpp"
#include "cqot/solver_entropic.hpp"
#include "cqot/solver_exact.hpp"

namespace cqot::cli {
namespace {

using io::Json;

struct Settings {
  double tol = kDefaultTol;
  std::string solver = "exact";
  std::uint64_t seed = 0;
  std::string input;
  std::string output;

  std::optional<double> epsilon;
  std::size_t max_iter = 10000;
  double marginal_tol = 1e-8;

  std::string interval;
  std::string vectors;
  std::string plan;
  std::size_t k_max = 3;
  std::size_t n = 0;
  double eps_radius = 0.05;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_input(const Settings& s) {
  if (s.input.empty() || s.input == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return io::parse(text, "<stdin>");
  }
  return io::read_file(s.input);
}

Json base_config(const std::string& command, const Settings& s) {
  Json c = {{"command", command}, {"tol", s.tol}, {"seed", s.seed}};
  c["input"] = s.input.empty() ? "-" : s.input;
  return c;
}

std::pair<double, double> parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--interval expects lo,hi");
  try {
    std::size_t used_lo = 0, used_hi = 0;
    const std::string lo_text = text.substr(0, comma), hi_text = text.substr(comma + 1);
    const double lo = std::stod(lo_text, &used_lo);
    const double hi = std::stod(hi_text, &used_hi);
    if (used_lo != lo_text.size() || used_hi != hi_text.size()) throw std::invalid_argument(text);
    if (lo > hi) throw UsageError("--interval requires lo <= hi");
    return {lo, hi};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("--interval expects two numbers lo,hi, got \"" + text + "\"");
  }
}

int status_exit(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return kOk;
    case SolveStatus::Infeasible:
      return kInfeasible;
    case SolveStatus::NotConverged:
      return kNotConverged;
  }
  return kUsage;
}

Json entry_json(const PlanEntry& e) { return Json::array({e.source, e.target, e.mass}); }

// Each command fills `report` and returns the exit code.
int cmd_solve(const Settings& s, Json& report) {
  const Problem problem = io::problem_from_json(read_input(s));
  Json config = base_config("solve", s);
  config["solver"] = s.solver;
  SolveReport r;
  if (s.solver == "exact") {
    r = solve_exact(problem, {.tol = s.tol});
  } else {
    EntropicOptions opts;
    opts.epsilon = s.epsilon ? *s.epsilon : default_epsilon(feasible_arcs(problem, s.tol));
    opts.max_iter = s.max_iter;
    opts.marginal_tol = s.marginal_tol;
    opts.tol = s.tol;
    config["epsilon"] = *opts.epsilon;
    config["max_iter"] = s.max_iter;
    config["marginal_tol"] = s.marginal_tol;
    r = solve_entropic(problem, opts);
  }
  report = io::to_json(r);
  report["config"] = config;
  return status_exit(r.status);
}

int cmd_feasible(const Settings& s, Json& report) {
  const Problem problem = io::problem_from_json(read_input(s));
  const FeasibilityCertificate cert = check_feasible(problem, s.tol);
  report = {{"feasible", cert.feasible},
            {"max_flow", cert.max_flow},
            {"deficit", cert.deficit},
            {"feasible_arcs", feasible_arcs(problem, s.tol).size()},
            {"config", base_config("feasible", s)}};
  return cert.feasible ? kOk : kInfeasible;
}

int cmd_diagnose(const Settings& s, Json& report) {
  const Json input = read_input(s);
  const Problem problem = io::problem_from_json(input);
  Json config = base_config("diagnose", s);
  config["k_max"] = s.k_max;

  TransportPlan plan;
  if (!s.plan.empty()) {
    plan = io::plan_from_json(io::read_file(s.plan));
    config["plan"] = s.plan;
  } else if (input.contains("plan")) {
    plan = io::plan_from_json(input["plan"]);
    config["plan"] = "<input>";
  } else {
    const SolveReport solved = solve_exact(problem, {.tol = s.tol});
    if (solved.status != SolveStatus::Optimal) {
      report = {{"status", to_string(solved.status)}, {"config", config}};
      return status_exit(solved.status);
    }
    plan = solved.plan;
    config["plan"] = "<solve_exact>";
  }
  for (const PlanEntry& e : plan.entries()) {
    if (e.source >= problem.f0.size() || e.target >= problem.f1.size()) {
      throw io::FormatError("plan: entry (" + std::to_string(e.source) + ", " + std::to_string(e.target) +
                            ") is out of range for the problem");
    }
  }

  Json pairwise = Json::array();
  for (const PairwiseViolation& v : check_pairwise_monotone(plan, problem, 1e-7)) {
    pairwise.push_back({{"first", entry_json(v.first)}, {"second", entry_json(v.second)}, {"inner_product", v.inner_product}});
  }
  Json cycles = Json::array();
  for (const ImprovingCycle& c : check_cyclical(plan, problem, s.k_max, s.tol)) {
    Json entries = Json::array();
    for (const PlanEntry& e : c.entries) entries.push_back(entry_json(e));
    cycles.push_back({{"entries", entries}, {"original_cost", c.original_cost}, {"permuted_cost", c.permuted_cost}});
  }
  Json flat = Json::array();
  for (const FlatPartViolation& v : check_same_flat_part(plan, problem, s.tol)) {
    Json pairs = Json::array();
    for (const auto& [a, b] : v.target_pairs) pairs.push_back(Json::array({a, b}));
    flat.push_back({{"source", v.source}, {"target_pairs", pairs}});
  }
  const PlanCost cost = cost_of_plan(problem, plan, s.tol);
  report = {{"pairwise", pairwise},
            {"cycles", cycles},
            {"split_mass", split_mass(plan)},
            {"flat_parts", flat},
            {"cost", cost.finite ? Json(cost.value) : Json(nullptr)},
            {"marginal_error", marginal_error(plan, problem.f0, problem.f1)},
            {"config", config}};
  return kOk;
}

int cmd_rearrange1d(const Settings& s, Json& report) {
  const Problem problem = io::problem_from_json(read_input(s), true);
  if (problem.dimension() != 1) throw io::FormatError("dimension: rearrange1d needs 1D measures");
  Json config = base_config("rearrange1d", s);
  SolveReport r;
  if (!s.interval.empty()) {
    const auto [lo, hi] = parse_interval(s.interval);
    config["interval"] = Json::array({lo, hi});
    r = optimal_1d_constrained(problem.f0, problem.f1, lo, hi, s.tol);
  } else {
    config["interval"] = nullptr;
    r.plan = monotone_plan(problem.f0, problem.f1);
    r.objective = cost_of_plan(Problem(problem.f0, problem.f1, ConvexBody::unconstrained(1)), r.plan).value;
    r.status = SolveStatus::Optimal;
    r.solver_name = "monotone_1d";
    r.marginal_error = marginal_error(r.plan, problem.f0, problem.f1);
  }
  report = io::to_json(r);
  report["config"] = config;
  return status_exit(r.status);
}

int cmd_crystalline(const Settings& s, Json& report) {
  const Problem problem = io::problem_from_json(read_input(s), true);
  if (s.vectors.empty()) throw UsageError("crystalline requires --vectors");
  const std::size_t first = s.vectors.find_first_not_of(" \t\n");
  const Json vj = first != std::string::npos && s.vectors[first] == '[' ? io::parse(s.vectors, "--vectors")
                                                                          : io::read_file(s.vectors);
  std::vector<Point> vectors = io::vectors_from_json(vj);
  Json config = base_config("crystalline", s);
  config["vectors"] = vectors;
  const CrystallineNorm norm = [&] {
    try {
      return CrystallineNorm(std::move(vectors));
    } catch (const std::invalid_argument& e) {
      throw io::FormatError(std::string("vectors: ") + e.what());
    }
  }();
  if (norm.dimension() != problem.dimension()) throw io::FormatError("vectors: dimension does not match the measures");
  try {
    report = io::to_json(solve_crystalline(problem.f0, problem.f1, norm, s.tol));
  } catch (const FaceInfeasible& e) {
    report = {{"status", "Infeasible"}, {"face", e.face()}, {"message", e.what()}, {"config", config}};
    return kInfeasible;
  }
  report["config"] = config;
  return kOk;
}

int cmd_linf(const Settings& s, Json& report) {
  const Problem problem = io::problem_from_json(read_input(s));
  if (!origin_is_interior(problem.body)) throw io::FormatError("body: the origin must be interior for the gauge");
  const LinfResult r = solve_linf(problem.f0, problem.f1, problem.body, s.tol);
  report = io::to_json(r);
  report["config"] = base_config("linf", s);
  return status_exit(r.selection_report.status);
}

int cmd_gen_example1(const Settings& s, Json& report) {
  const Problem problem = [&] {
    try {
      return generate_example1(s.n, s.eps_radius, s.seed);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  report = io::to_json(problem);
  report["config"] = {{"command", "gen-example1"}, {"n", s.n}, {"eps_radius", s.eps_radius}, {"seed", s.seed}};
  return kOk;
}

void write_report(const Json& report, const Settings& s, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (s.output.empty() || s.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(s.output, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + s.output);
  file << text;
  if (!file) throw UsageError("failed writing " + s.output);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Discrete optimal transport with a constrained quadratic cost", "cqot"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--tol", s.tol, "Geometric membership tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--solver", s.solver, "Solver for `solve`")->check(CLI::IsMember({"exact", "entropic"}));
  app.add_option("--seed", s.seed, "Random seed");
  app.add_option("--input", s.input, "Problem JSON file (default: stdin)");
  app.add_option("--output", s.output, "Report destination (default: stdout)");

  CLI::App* solve = app.add_subcommand("solve", "Optimal coupling for the constrained quadratic cost");
  solve->add_option("--epsilon", s.epsilon, "Entropic regularization")->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", s.max_iter, "Entropic iteration cap");
  solve->add_option("--marginal-tol", s.marginal_tol, "Entropic marginal tolerance")->check(CLI::PositiveNumber);

  CLI::App* feasible = app.add_subcommand("feasible", "Decide whether a finite-cost coupling exists");

  CLI::App* diagnose = app.add_subcommand("diagnose", "Structural optimality checks on a plan");
  diagnose->add_option("--plan", s.plan, "Plan JSON or a solve report; default solves first");
  diagnose->add_option("--k-max", s.k_max, "Longest cycle to test")->check(CLI::Range(2, 8));

  CLI::App* rearrange = app.add_subcommand("rearrange1d", "Monotone coupling on the line");
  rearrange->add_option("--interval", s.interval, "Admissible displacements lo,hi");

  CLI::App* crystal = app.add_subcommand("crystalline", "Transport for the norm max_i z.v_i");
  crystal->add_option("--vectors", s.vectors, "Inline JSON array of vectors or a file path");

  CLI::App* linf = app.add_subcommand("linf", "Bottleneck transport for the body's gauge");

  CLI::App* gen = app.add_subcommand("gen-example1", "Emit the three-ball instance");
  gen->add_option("--n", s.n, "Atoms per ball (0 for single atoms)");
  gen->add_option("--eps-radius", s.eps_radius, "Sampling radius around each center");

  std::vector<const char*> argv{"cqot"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (!solve->parsed() && (s.epsilon || s.max_iter != 10000 || s.marginal_tol != 1e-8)) {
    err << "error: entropic flags only apply to `solve`\n";
    return kUsage;
  }

  Json report;
  int code = kUsage;
  try {
    if (solve->parsed()) {
      code = cmd_solve(s, report);
    } else if (feasible->parsed()) {
      code = cmd_feasible(s, report);
    } else if (diagnose->parsed()) {
      code = cmd_diagnose(s, report);
    } else if (rearrange->parsed()) {
      code = cmd_rearrange1d(s, report);
    } else if (crystal->parsed()) {
      code = cmd_crystalline(s, report);
    } else if (linf->parsed()) {
      code = cmd_linf(s, report);
    } else if (gen->parsed()) {
      code = cmd_gen_example1(s, report);
    }
    write_report(report, s, out);
  } catch (const std::exception& e) {
    // Format errors, bad flags, exceeded cycle budgets and invalid inputs.
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}

}  // namespace cqot::cli
