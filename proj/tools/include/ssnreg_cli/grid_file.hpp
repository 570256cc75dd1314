#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include <ssnreg/harness.hpp>

namespace ssnreg::cli {

/// Malformed grid file; the message carries the source name and line number.
class GridParseError : public InvalidArgument {
 public:
  GridParseError(const std::string& source, std::size_t line, const std::string& what)
      : InvalidArgument(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/**
 * Benchmark grid: one cell per line, whitespace-separated key=value pairs.
 * '#' starts a comment; blank lines are skipped.
 *
 *   required: n p T penalty solver
 *   optional: label r sigma gamma select alpha M J cd_tol cd_max_iter
 */
std::vector<BenchCell> parse_grid(std::istream& in, const std::string& source = "<grid>");
std::vector<BenchCell> load_grid_file(const std::filesystem::path& path);

}  // namespace ssnreg::cli
