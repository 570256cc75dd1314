#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ssnreg/path.hpp"
#include "ssnreg/simgen.hpp"

namespace ssnreg {

/// One benchmark cell: a data shape, a penalty, a solver and its path settings.
struct BenchCell {
  std::string label;
  SimConfig sim;  // sim.seed is replaced per replication
  Penalty family = Penalty::Mcp;
  double gamma = 2.7;
  SolverKind solver = SolverKind::Ssn;
  Selector selector = Selector::Vsc;
  PathOptions path;
};

struct ReplicationRecord {
  Index cell = 0;
  Index replication = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  Metrics metrics;  // beta on the raw column scale
  double lambda_hat = 0.0;
  Index selected_index = 0;
  IndexList support;
  Index path_points = 0;
  bool terminated_early = false;
  double path_seconds = 0.0;
  /// SSN points that stopped with ActiveSetFixed, and the worst KKT residual among them.
  Index fixed_exits = 0;
  double max_fixed_kkt = 0.0;
  /// Path points solved in one iteration.
  Index single_iteration_points = 0;
};

struct CellAggregate {
  Index cell = 0;
  Index replications = 0;
  Index failures = 0;
  double time = 0.0;
  double ms = 0.0;
  double cm = 0.0;  // fraction in [0, 1]
  double ae = 0.0;
  double re = 0.0;
  double pe = 0.0;
};

struct BenchmarkOptions {
  Index replications = 1;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
};

struct BenchmarkResult {
  std::vector<BenchCell> cells;
  std::vector<ReplicationRecord> records;  // cell-major, replication-minor
  std::vector<CellAggregate> aggregates;
};

/// Seed of replication `rep`. Every cell uses the same seed for the same
/// replication, so cells that share a data shape see identical data.
std::uint64_t replication_seed(std::uint64_t master, Index rep);

/// Simulate, fit the path, select, and score one replication.
ReplicationRecord run_replication(const BenchCell& cell, std::uint64_t seed);

/// Runs cells x replications, in parallel over `threads`, merged by (cell, replication).
BenchmarkResult run_benchmark(const std::vector<BenchCell>& cells, const BenchmarkOptions& opts);

/// Per-cell averages of MS, CM, AE, RE, PE. Contains no wall times, so it is
/// reproducible bit-for-bit from the master seed.
void write_aggregate_csv(std::ostream& out, const BenchmarkResult& result);
/// Per-cell mean wall time in seconds.
void write_timing_csv(std::ostream& out, const BenchmarkResult& result);

}  // namespace ssnreg
