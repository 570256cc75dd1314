#include "ssnreg_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include <ssnreg/cd.hpp>
#include <ssnreg/error.hpp>
#include <ssnreg/gram_cache.hpp>
#include <ssnreg/path.hpp>
#include <ssnreg/ssn.hpp>
#include <ssnreg/version.hpp>

#include "ssnreg_cli/csv_io.hpp"
#include "ssnreg_cli/grid_file.hpp"

namespace ssnreg::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure {
  const char* kind;
  int code;
};

void report_error(const fs::path& out_dir, std::ostream& err, const Failure& f, const std::string& message) {
  const json record = {{"error", f.kind}, {"message", message}, {"exit_code", f.code}};
  err << record.dump() << '\n';
  std::error_code ec;
  if (!out_dir.empty() && fs::is_directory(out_dir, ec)) {
    std::ofstream out(out_dir / "error.json");
    if (out) out << record.dump(2) << '\n';
  }
}

// Maps exceptions to exit codes: I/O 4, validation 2, solver 3.
template <class Body>
int guarded(const fs::path& out_dir, std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    report_error(out_dir, err, {"io", kExitIo}, e.what());
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    report_error(out_dir, err, {"io", kExitIo}, e.what());
    return kExitIo;
  } catch (const InvalidArgument& e) {
    report_error(out_dir, err, {"validation", kExitValidation}, e.what());
    return kExitValidation;
  } catch (const DimensionMismatch& e) {
    report_error(out_dir, err, {"validation", kExitValidation}, e.what());
    return kExitValidation;
  } catch (const SingularReducedSystem& e) {
    report_error(out_dir, err, {"singular_reduced_system", kExitSolver}, e.what());
    return kExitSolver;
  } catch (const OversizedActiveSet& e) {
    report_error(out_dir, err, {"oversized_active_set", kExitSolver}, e.what());
    return kExitSolver;
  } catch (const EmptySignal& e) {
    report_error(out_dir, err, {"empty_signal", kExitSolver}, e.what());
    return kExitSolver;
  } catch (const NoNonzeroSolution& e) {
    report_error(out_dir, err, {"no_nonzero_solution", kExitSolver}, e.what());
    return kExitSolver;
  } catch (const Error& e) {
    report_error(out_dir, err, {"solver", kExitSolver}, e.what());
    return kExitSolver;
  }
}

void prepare_out_dir(const fs::path& dir) {
  if (dir.empty()) throw InvalidArgument("an output directory is required");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  const fs::path probe = dir / ".ssnreg_write_test";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

void write_json(const fs::path& path, const json& value) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << value.dump(2) << '\n';
}

void write_manifest(const fs::path& dir, const std::string& command, const json& options,
                    std::optional<std::uint64_t> seed, const std::vector<std::string>& argv,
                    double wall_seconds) {
  json manifest = {{"command", command},
                   {"options", options},
                   {"software", "ssnreg"},
                   {"version", kVersion},
                   {"argv", argv},
                   {"wall_time_seconds", wall_seconds}};
  manifest["master_seed"] = seed ? json(*seed) : json(nullptr);
  write_json(dir / "manifest.json", manifest);
}

json index_list(const IndexList& idx) {
  json out = json::array();
  for (Index i : idx) out.push_back(i);
  return out;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json data_options(const DataArgs& d) {
  return {{"x", d.x_path.string()}, {"y", d.y_path.string()}, {"no_normalize", d.no_normalize}};
}

constexpr double kContinuationAlpha = 1e-5;
constexpr int kContinuationGrid = 100;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

LoadedData load_dataset(const DataArgs& args) {
  Matrix x = read_matrix_csv(args.x_path);
  Vector y = read_vector_csv(args.y_path);
  if (x.rows() != y.size()) {
    throw DimensionMismatch("X has " + std::to_string(x.rows()) + " rows but y has " +
                            std::to_string(y.size()));
  }
  Vector scale = Vector::Ones(x.cols());
  if (!args.no_normalize) scale = normalize_columns(x);
  return LoadedData{Problem(std::move(x), std::move(y)), std::move(scale)};
}

unsigned resolve_threads(unsigned requested) {
  unsigned threads = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SSNREG_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) threads = std::min(threads, static_cast<unsigned>(cap));
  }
  return threads;
}

int cmd_gen(const GenArgs& args, const std::vector<std::string>& argv, std::ostream& err) {
  return guarded(args.out_dir, err, [&] {
    const auto start = Clock::now();
    args.sim.validate();
    prepare_out_dir(args.out_dir);
    const Dataset data = simulate(args.sim);
    write_matrix_csv(args.out_dir / "X.csv", data.raw_design(), "x");
    write_vector_csv(args.out_dir / "y.csv", data.y, "y");
    write_vector_csv(args.out_dir / "beta_true.csv", data.beta_true, "beta_true");
    const json options = {{"n", args.sim.n},         {"p", args.sim.p},
                          {"r", args.sim.r},         {"sigma", args.sim.sigma},
                          {"T", args.sim.sparsity},  {"seed", args.sim.seed},
                          {"out_dir", args.out_dir.string()}};
    write_manifest(args.out_dir, "gen", options, args.sim.seed, argv, seconds_since(start));
    return kExitOk;
  });
}

int cmd_fit(const FitArgs& args, const std::vector<std::string>& argv, std::ostream& err) {
  return guarded(args.out_dir, err, [&] {
    const auto start = Clock::now();
    const Penalty family = parse_penalty(args.penalty);
    const double gamma = args.gamma.value_or(PenaltySpec::default_gamma(family));
    const PenaltySpec spec(family, args.lambda, gamma);
    const SolverKind solver = parse_solver(args.solver);
    if (args.warm_dual && !args.warm_beta) throw InvalidArgument("--warm-dual requires --warm-beta");
    if (args.max_iter && *args.max_iter < 1) throw InvalidArgument("--max-iter must be >= 1");
    prepare_out_dir(args.out_dir);
    const LoadedData data = load_dataset(args.data);
    const Problem& problem = data.problem;

    SsnOptions ssn_opts;
    ssn_opts.ridge_lift = args.ridge_lift;
    ssn_opts.max_iter = args.max_iter.value_or(ssn_opts.cold_max_iter);
    CdOptions cd_opts;
    cd_opts.tol = args.cd_tol;
    if (args.max_iter) cd_opts.max_iter = *args.max_iter;
    GramColumnCache cache(problem);
    auto solve_at = [&](const PenaltySpec& at, const Vector& beta0, const Vector& d0, int ssn_iters) {
      if (solver == SolverKind::Cd) return cd_solve(problem, at, beta0, cd_opts);
      SsnOptions o = ssn_opts;
      o.max_iter = ssn_iters;
      return ssn_solve(cache, at, beta0, d0, o);
    };

    Vector beta;
    Vector d;
    int continuation_steps = 0;
    if (args.warm_beta) {
      beta = read_vector_csv(*args.warm_beta);
      problem.check_coefficients(beta, "warm-start beta");
      d = args.warm_dual ? read_vector_csv(*args.warm_dual) : dual_from_beta(problem, beta);
      problem.check_coefficients(d, "warm-start dual");
    } else {
      // Geometric continuation from lambda_max, one path step per grid point.
      const double shrink = std::exp(std::log(kContinuationAlpha) / kContinuationGrid);
      beta = Vector::Zero(problem.p());
      d = problem.y_tilde();
      for (double lam = problem.lambda_max(); lam > spec.lambda(); lam *= shrink) {
        Solution s = solve_at(spec.with_lambda(lam), beta, d, 1);
        beta = std::move(s.beta);
        d = std::move(s.d);
        ++continuation_steps;
      }
    }
    const Solution sol = solve_at(spec, beta, d, ssn_opts.max_iter);

    write_vector_csv(args.out_dir / "beta.csv", sol.beta, "beta");
    write_vector_csv(args.out_dir / "beta_raw.csv", sol.beta.cwiseQuotient(data.scale), "beta_raw");
    write_vector_csv(args.out_dir / "dual.csv", sol.d, "d");
    write_vector_csv(args.out_dir / "scale.csv", data.scale, "scale");
    const json report = {{"penalty", to_string(family)},
                         {"lambda", spec.lambda()},
                         {"gamma", spec.gamma()},
                         {"solver", to_string(solver)},
                         {"iters", sol.iters},
                         {"converged_by", to_string(sol.converged_by)},
                         {"kkt_inf", sol.kkt_inf},
                         {"lifted", sol.lifted},
                         {"continuation_steps", continuation_steps},
                         {"support_size", support_size(sol.beta)},
                         {"support", index_list(support(sol.beta))}};
    write_json(args.out_dir / "report.json", report);

    json options = {{"data", data_options(args.data)},
                    {"penalty", to_string(family)},
                    {"lambda", spec.lambda()},
                    {"gamma", gamma},
                    {"solver", to_string(solver)},
                    {"ridge_lift", args.ridge_lift},
                    {"cd_tol", args.cd_tol},
                    {"out_dir", args.out_dir.string()}};
    options["max_iter"] = args.max_iter ? json(*args.max_iter) : json(nullptr);
    options["warm_beta"] = args.warm_beta ? json(args.warm_beta->string()) : json(nullptr);
    options["warm_dual"] = args.warm_dual ? json(args.warm_dual->string()) : json(nullptr);
    write_manifest(args.out_dir, "fit", options, std::nullopt, argv, seconds_since(start));
    return kExitOk;
  });
}

int cmd_path(const PathArgs& args, const std::vector<std::string>& argv, std::ostream& err) {
  return guarded(args.out_dir, err, [&] {
    const auto start = Clock::now();
    const Penalty family = parse_penalty(args.penalty);
    const double gamma = args.gamma.value_or(PenaltySpec::default_gamma(family));
    PenaltySpec(family, 1.0, gamma);
    const SolverKind solver = parse_solver(args.solver);
    const Selector selector = parse_selector(args.select);
    PathOptions opts;
    opts.alpha = args.alpha;
    opts.grid_size = args.grid_size;
    opts.max_iter = args.max_iter;
    opts.ridge_lift = args.ridge_lift;
    opts.cd.tol = args.cd_tol;
    opts.cd.max_iter = args.cd_max_iter;
    if (!(opts.alpha > 0.0 && opts.alpha < 1.0)) throw InvalidArgument("--alpha must lie in (0, 1)");
    if (opts.grid_size < 1) throw InvalidArgument("--M must be >= 1");
    if (opts.max_iter < 1) throw InvalidArgument("--J must be >= 1");
    if (!(opts.cd.tol > 0.0) || opts.cd.max_iter < 1) throw InvalidArgument("invalid CD options");
    prepare_out_dir(args.out_dir);
    const LoadedData data = load_dataset(args.data);
    const Problem& problem = data.problem;

    const PathResult path = solve_path(problem, family, gamma, solver, opts);
    {
      std::ofstream out(args.out_dir / "path.jsonl");
      if (!out) throw IoError("cannot write path.jsonl");
      for (std::size_t t = 0; t < path.points.size(); ++t) {
        const PathPoint& pt = path.points[t];
        json rec = {{"index", t},           {"lambda", pt.lambda},     {"support_size", pt.support_size},
                    {"kkt_inf", pt.kkt_inf}, {"iters", pt.iters},       {"stop", to_string(pt.stop)},
                    {"lifted", pt.lifted}};
        if (args.store_solutions) {
          rec["beta"] = vector_json(pt.beta);
          rec["d"] = vector_json(pt.d);
        }
        out << rec.dump() << '\n';
      }
      if (!out) throw IoError("error writing path.jsonl");
    }
    json summary = {{"points", path.size()},
                    {"support_cap", path.support_cap},
                    {"terminated_early", path.terminated_early}};
    if (path.failure) {
      summary["failure"] = {{"index", path.failure->index},
                            {"lambda", path.failure->lambda},
                            {"message", path.failure->message}};
    }
    write_json(args.out_dir / "path_summary.json", summary);
    write_vector_csv(args.out_dir / "scale.csv", data.scale, "scale");

    json options = {{"data", data_options(args.data)},
                    {"penalty", to_string(family)},
                    {"gamma", gamma},
                    {"alpha", opts.alpha},
                    {"M", opts.grid_size},
                    {"J", opts.max_iter},
                    {"solver", to_string(solver)},
                    {"select", to_string(selector)},
                    {"ridge_lift", opts.ridge_lift},
                    {"cd_tol", opts.cd.tol},
                    {"cd_max_iter", opts.cd.max_iter},
                    {"store_solutions", args.store_solutions},
                    {"out_dir", args.out_dir.string()}};
    if (path.empty()) {
      write_manifest(args.out_dir, "path", options, std::nullopt, argv, seconds_since(start));
      throw SingularReducedSystem(path.failure ? path.failure->message : "empty path");
    }
    if (selector != Selector::None) {
      const SelectionResult chosen = select(path, problem, selector);
      write_vector_csv(args.out_dir / "selected.csv", chosen.beta, "beta");
      write_vector_csv(args.out_dir / "selected_raw.csv", chosen.beta.cwiseQuotient(data.scale), "beta_raw");
      write_json(args.out_dir / "selected.json", {{"selector", to_string(selector)},
                                                  {"index", chosen.index},
                                                  {"lambda", chosen.lambda},
                                                  {"score", chosen.score},
                                                  {"support_size", chosen.support_size},
                                                  {"support", index_list(support(chosen.beta))}});
    }
    write_manifest(args.out_dir, "path", options, std::nullopt, argv, seconds_since(start));
    return kExitOk;
  });
}

int cmd_bench(const BenchArgs& args, const std::vector<std::string>& argv, std::ostream& err) {
  return guarded(args.out_dir, err, [&] {
    const auto start = Clock::now();
    if (args.replications < 0) throw InvalidArgument("--replications must be >= 0");
    const std::vector<BenchCell> cells = load_grid_file(args.grid_file);
    prepare_out_dir(args.out_dir);
    BenchmarkOptions opts;
    opts.replications = args.replications;
    opts.master_seed = args.seed;
    opts.threads = resolve_threads(args.threads);
    const BenchmarkResult result = run_benchmark(cells, opts);

    {
      std::ofstream out(args.out_dir / "aggregate.csv");
      if (!out) throw IoError("cannot write aggregate.csv");
      write_aggregate_csv(out, result);
    }
    {
      std::ofstream out(args.out_dir / "timing.csv");
      if (!out) throw IoError("cannot write timing.csv");
      write_timing_csv(out, result);
    }
    {
      std::ofstream out(args.out_dir / "replications.jsonl");
      if (!out) throw IoError("cannot write replications.jsonl");
      for (const ReplicationRecord& rec : result.records) {
        const BenchCell& cell = result.cells[static_cast<std::size_t>(rec.cell)];
        json row = {{"record", "replication"}, {"cell", rec.cell},       {"label", cell.label},
                    {"replication", rec.replication}, {"seed", rec.seed}, {"failed", rec.failed}};
        if (rec.failed) {
          row["error"] = rec.error;
        } else {
          row.update({{"MS", rec.metrics.ms},
                      {"CM", rec.metrics.cm},
                      {"AE", rec.metrics.ae},
                      {"RE", rec.metrics.re},
                      {"RE_absolute", rec.metrics.re_absolute},
                      {"PE", rec.metrics.pe},
                      {"time", rec.metrics.time},
                      {"lambda_hat", rec.lambda_hat},
                      {"selected_index", rec.selected_index},
                      {"path_points", rec.path_points},
                      {"terminated_early", rec.terminated_early},
                      {"support", index_list(rec.support)}});
        }
        out << row.dump() << '\n';
      }
      for (const CellAggregate& agg : result.aggregates) {
        const BenchCell& cell = result.cells[static_cast<std::size_t>(agg.cell)];
        json row = {{"record", "aggregate"}, {"cell", agg.cell},   {"label", cell.label},
                    {"replications", agg.replications}, {"failures", agg.failures},
                    {"time", agg.time},      {"MS", agg.ms},       {"CM", agg.cm},
                    {"AE", agg.ae},          {"RE", agg.re},       {"PE", agg.pe}};
        out << row.dump() << '\n';
      }
      if (!out) throw IoError("error writing replications.jsonl");
    }
    const json options = {{"grid_file", args.grid_file.string()},
                          {"replications", args.replications},
                          {"seed", args.seed},
                          {"threads", opts.threads},
                          {"out_dir", args.out_dir.string()}};
    write_manifest(args.out_dir, "bench", options, args.seed, argv, seconds_since(start));
    return kExitOk;
  });
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<char*> raw;
  raw.reserve(args.size());
  for (const std::string& a : args) raw.push_back(const_cast<char*>(a.c_str()));
  return run_cli(static_cast<int>(raw.size()), raw.data());
}

int run_cli(int argc, char** argv) {
  const std::vector<std::string> invocation(argv, argv + argc);
  CLI::App app{"Semismooth Newton solver for MCP/SCAD penalized least squares"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  auto add_data = [](CLI::App* sub, DataArgs& data) {
    sub->add_option("--x", data.x_path, "Design matrix CSV (n rows, p columns)")->required();
    sub->add_option("--y", data.y_path, "Response CSV (n rows, 1 column)")->required();
    sub->add_flag("--no-normalize", data.no_normalize,
                  "Use X as given; columns must already have unit l2 norm");
  };

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen_cmd->add_option("--n", gen.sim.n, "Sample size")->required();
  gen_cmd->add_option("--p", gen.sim.p, "Number of features")->required();
  gen_cmd->add_option("--r", gen.sim.r, "AR(1) correlation in [0, 1)");
  gen_cmd->add_option("--sigma", gen.sim.sigma, "Noise level");
  gen_cmd->add_option("--T", gen.sim.sparsity, "Number of nonzero coefficients");
  gen_cmd->add_option("--seed", gen.sim.seed, "RNG seed");
  gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")->required();

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit at a single lambda");
  add_data(fit_cmd, fit.data);
  fit_cmd->add_option("--penalty", fit.penalty, "mcp or scad");
  fit_cmd->add_option("--lambda", fit.lambda, "Penalty level")->required();
  fit_cmd->add_option("--gamma", fit.gamma, "Concavity (default 2.7 MCP, 3.7 SCAD)");
  fit_cmd->add_option("--solver", fit.solver, "ssn or cd");
  fit_cmd->add_option("--max-iter", fit.max_iter, "Iteration (SSN) or sweep (CD) cap");
  fit_cmd->add_option("--ridge-lift", fit.ridge_lift, "Relative ridge for failed Cholesky factorizations");
  fit_cmd->add_option("--cd-tol", fit.cd_tol, "CD step tolerance");
  fit_cmd->add_option("--warm-beta", fit.warm_beta, "Initial beta (CSV column)");
  fit_cmd->add_option("--warm-dual", fit.warm_dual, "Initial dual d (CSV column); SSN only");
  fit_cmd->add_option("--out-dir", fit.out_dir, "Output directory")->required();

  PathArgs path;
  auto* path_cmd = app.add_subcommand("path", "Warm-started solution path with tuning selection");
  add_data(path_cmd, path.data);
  path_cmd->add_option("--penalty", path.penalty, "mcp or scad");
  path_cmd->add_option("--gamma", path.gamma, "Concavity (default 2.7 MCP, 3.7 SCAD)");
  path_cmd->add_option("--alpha", path.alpha, "lambda_min / lambda_max");
  path_cmd->add_option("--M", path.grid_size, "Number of grid intervals");
  path_cmd->add_option("--J", path.max_iter, "SSN iterations per lambda");
  path_cmd->add_option("--solver", path.solver, "ssn or cd");
  path_cmd->add_option("--select", path.select, "vsc, hbic or none");
  path_cmd->add_option("--ridge-lift", path.ridge_lift, "Relative ridge for failed Cholesky factorizations");
  path_cmd->add_option("--cd-tol", path.cd_tol, "CD step tolerance");
  path_cmd->add_option("--cd-max-iter", path.cd_max_iter, "CD sweep cap per lambda");
  path_cmd->add_flag("--store-solutions", path.store_solutions, "Include beta and d in every path record");
  path_cmd->add_option("--out-dir", path.out_dir, "Output directory")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid");
  bench_cmd->add_option("--grid-file", bench.grid_file, "Grid file (key=value per cell)")->required();
  bench_cmd->add_option("--replications,-N", bench.replications, "Replications per cell");
  bench_cmd->add_option("--seed", bench.seed, "Master seed");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (0 = all cores, capped by SSNREG_THREADS)");
  bench_cmd->add_option("--out-dir,--out", bench.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (gen_cmd->parsed()) return cmd_gen(gen, invocation, std::cerr);
  if (fit_cmd->parsed()) return cmd_fit(fit, invocation, std::cerr);
  if (path_cmd->parsed()) return cmd_path(path, invocation, std::cerr);
  return cmd_bench(bench, invocation, std::cerr);
}

}  // namespace ssnreg::cli
