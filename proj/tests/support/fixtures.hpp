#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <unistd.h>

#include <ssnreg/ssnreg.hpp>

#include "oracles.hpp"

namespace fixtures {

inline oracle::Family to_oracle(ssnreg::Penalty f) {
  return f == ssnreg::Penalty::Mcp ? oracle::Family::Mcp : oracle::Family::Scad;
}

/// Problem on an n x n orthonormal design with response y = Q b + 0.
inline ssnreg::Problem orthonormal_problem(ssnreg::Index n, std::uint64_t seed, double scale = 3.0) {
  ssnreg::Matrix q = oracle::orthonormal_design(n, seed);
  std::mt19937_64 rng(seed ^ 0xABCDEFULL);
  std::normal_distribution<double> normal;
  ssnreg::Vector b(n);
  for (ssnreg::Index i = 0; i < n; ++i) b[i] = scale * normal(rng);
  ssnreg::Vector y = q * b;
  return ssnreg::Problem(std::move(q), std::move(y));
}

inline ssnreg::Problem simulated_problem(const ssnreg::SimConfig& cfg) {
  ssnreg::Dataset data = ssnreg::simulate(cfg);
  return ssnreg::Problem(std::move(data.x), std::move(data.y));
}

/// Fresh, empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("ssnreg_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace fixtures
