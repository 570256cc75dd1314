#include "ssnreg/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <thread>

#include "ssnreg/error.hpp"

namespace ssnreg {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::uint64_t replication_seed(std::uint64_t master, Index rep) {
  return derive_seed(master, static_cast<std::uint64_t>(rep));
}

ReplicationRecord run_replication(const BenchCell& cell, std::uint64_t seed) {
  ReplicationRecord rec;
  rec.seed = seed;
  SimConfig config = cell.sim;
  config.seed = seed;
  const Dataset data = simulate(config);
  const Problem problem(data.x, data.y);

  using Clock = std::chrono::steady_clock;
  try {
    const auto start = Clock::now();
    const PathResult path = solve_path(problem, cell.family, cell.gamma, cell.solver, cell.path);
    const auto path_done = Clock::now();
    const SelectionResult chosen = select(path, problem, cell.selector);
    const auto done = Clock::now();

    rec.path_seconds = std::chrono::duration<double>(path_done - start).count();
    const double elapsed = std::chrono::duration<double>(done - start).count();
    rec.path_points = static_cast<Index>(path.size());
    rec.terminated_early = path.terminated_early;
    rec.lambda_hat = chosen.lambda;
    rec.selected_index = chosen.index;
    rec.support = support(chosen.beta);
    for (const PathPoint& pt : path.points) {
      rec.single_iteration_points += pt.iters == 1;
      if (pt.stop == StopReason::ActiveSetFixed) {
        ++rec.fixed_exits;
        rec.max_fixed_kkt = std::max(rec.max_fixed_kkt, pt.kkt_inf);
      }
    }
    rec.metrics = evaluate_metrics(data.to_raw(chosen.beta), data.beta_true, data.raw_design(),
                                   data.y, elapsed);
  } catch (const Error& e) {
    rec.failed = true;
    rec.error = e.what();
  }
  return rec;
}

BenchmarkResult run_benchmark(const std::vector<BenchCell>& cells, const BenchmarkOptions& opts) {
  if (opts.replications < 0) throw InvalidArgument("replication count must be >= 0");
  BenchmarkResult result;
  result.cells = cells;
  const auto reps = static_cast<std::size_t>(opts.replications);
  const std::size_t tasks = cells.size() * reps;
  result.records.resize(tasks);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      const std::size_t c = task / reps;
      const std::size_t m = task % reps;
      ReplicationRecord rec =
          run_replication(cells[c], replication_seed(opts.master_seed, static_cast<Index>(m)));
      rec.cell = static_cast<Index>(c);
      rec.replication = static_cast<Index>(m);
      result.records[task] = std::move(rec);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(std::max<std::size_t>(tasks, 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }

  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellAggregate agg;
    agg.cell = static_cast<Index>(c);
    for (std::size_t m = 0; m < reps; ++m) {
      const ReplicationRecord& rec = result.records[c * reps + m];
      if (rec.failed) {
        ++agg.failures;
        continue;
      }
      ++agg.replications;
      agg.time += rec.metrics.time;
      agg.ms += static_cast<double>(rec.metrics.ms);
      agg.cm += rec.metrics.cm ? 1.0 : 0.0;
      agg.ae += rec.metrics.ae;
      agg.re += rec.metrics.re;
      agg.pe += rec.metrics.pe;
    }
    if (agg.replications > 0) {
      const double k = static_cast<double>(agg.replications);
      agg.time /= k;
      agg.ms /= k;
      agg.cm /= k;
      agg.ae /= k;
      agg.re /= k;
      agg.pe /= k;
    }
    result.aggregates.push_back(agg);
  }
  return result;
}

void write_aggregate_csv(std::ostream& out, const BenchmarkResult& result) {
  out << "cell,label,n,p,r,sigma,T,penalty,gamma,solver,selector,replications,failures,MS,CM,AE,RE,PE\n";
  for (const CellAggregate& agg : result.aggregates) {
    const BenchCell& cell = result.cells[static_cast<std::size_t>(agg.cell)];
    out << agg.cell << ',' << csv_field(cell.label) << ',' << cell.sim.n << ',' << cell.sim.p << ','
        << format_double(cell.sim.r) << ',' << format_double(cell.sim.sigma) << ','
        << cell.sim.sparsity << ',' << to_string(cell.family) << ',' << format_double(cell.gamma)
        << ',' << to_string(cell.solver) << ',' << to_string(cell.selector) << ','
        << agg.replications << ',' << agg.failures << ',' << format_double(agg.ms) << ','
        << format_double(agg.cm) << ',' << format_double(agg.ae) << ',' << format_double(agg.re)
        << ',' << format_double(agg.pe) << '\n';
  }
}

void write_timing_csv(std::ostream& out, const BenchmarkResult& result) {
  out << "cell,label,solver,replications,time\n";
  for (const CellAggregate& agg : result.aggregates) {
    const BenchCell& cell = result.cells[static_cast<std::size_t>(agg.cell)];
    out << agg.cell << ',' << csv_field(cell.label) << ',' << to_string(cell.solver) << ','
        << agg.replications << ',' << format_double(agg.time) << '\n';
  }
}

}  // namespace ssnreg
