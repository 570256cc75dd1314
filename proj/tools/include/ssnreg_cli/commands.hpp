#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <ssnreg/harness.hpp>
#include <ssnreg/problem.hpp>

namespace ssnreg::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitSolver = 3,
  kExitIo = 4,
};

struct DataArgs {
  std::filesystem::path x_path;
  std::filesystem::path y_path;
  bool no_normalize = false;
};

/// Problem built from CSV files plus the column scale factors applied to X
/// (all ones with no_normalize).
struct LoadedData {
  Problem problem;
  Vector scale;
};
LoadedData load_dataset(const DataArgs& args);

struct GenArgs {
  SimConfig sim;
  std::filesystem::path out_dir;
};

struct FitArgs {
  DataArgs data;
  std::string penalty = "mcp";
  double lambda = 0.0;
  std::optional<double> gamma;
  std::string solver = "ssn";
  /// SSN: iteration cap at the target lambda (default 50). CD: sweep cap.
  /// Without a warm start, SSN first follows a geometric continuation from lambda_max.
  std::optional<int> max_iter;
  double ridge_lift = 1e-8;
  double cd_tol = 1e-3;
  std::optional<std::filesystem::path> warm_beta;
  std::optional<std::filesystem::path> warm_dual;
  std::filesystem::path out_dir;
};

struct PathArgs {
  DataArgs data;
  std::string penalty = "mcp";
  std::optional<double> gamma;
  double alpha = 1e-5;
  int grid_size = 100;
  int max_iter = 1;
  std::string solver = "ssn";
  std::string select = "vsc";
  double ridge_lift = 1e-8;
  double cd_tol = 1e-3;
  int cd_max_iter = 10000;
  bool store_solutions = false;
  std::filesystem::path out_dir;
};

struct BenchArgs {
  std::filesystem::path grid_file;
  Index replications = 1;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency, capped by SSNREG_THREADS
  std::filesystem::path out_dir;
};

/// Each command writes its outputs plus manifest.json into out_dir and
/// returns an ExitCode. Failures print a one-line JSON error record to `err`
/// and, when the output directory is usable, write it to error.json as well.
/// `argv` is recorded in the manifest.
int cmd_gen(const GenArgs& args, const std::vector<std::string>& argv, std::ostream& err);
int cmd_fit(const FitArgs& args, const std::vector<std::string>& argv, std::ostream& err);
int cmd_path(const PathArgs& args, const std::vector<std::string>& argv, std::ostream& err);
int cmd_bench(const BenchArgs& args, const std::vector<std::string>& argv, std::ostream& err);

/// Thread count after applying the SSNREG_THREADS cap.
unsigned resolve_threads(unsigned requested);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, char** argv);
int run_cli(const std::vector<std::string>& args);

}  // namespace ssnreg::cli
