#include "ssnreg_cli/csv_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace ssnreg::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

std::string where(const std::filesystem::path& path, std::size_t line, std::size_t col) {
  return path.string() + ":" + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Matrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t c = 0; c < fields.size(); ++c) numeric = parse_number(fields[c], row[c]) && numeric;
    if (first_content) {
      first_content = false;
      cols = fields.size();
      if (!numeric) continue;  // header
    }
    if (fields.size() != cols) {
      throw CsvError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                     std::to_string(cols) + " fields, found " + std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double v = 0.0;
      if (!parse_number(fields[c], v)) {
        throw CsvError(where(path, line_no, c + 1) + ": not a number: '" + fields[c] + "'");
      }
      if (!std::isfinite(v)) throw CsvError(where(path, line_no, c + 1) + ": non-finite value");
      values.push_back(v);
    }
    ++rows;
  }
  if (in.bad()) throw IoError("error reading " + path.string());
  if (rows == 0) throw CsvError(path.string() + ": no numeric rows");

  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = values[r * cols + c];
    }
  }
  return m;
}

Vector read_vector_csv(const std::filesystem::path& path) {
  const Matrix m = read_matrix_csv(path);
  if (m.cols() != 1) {
    throw CsvError(path.string() + ": expected a single column, found " + std::to_string(m.cols()));
  }
  return m.col(0);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      const std::string& column_prefix) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (Index c = 0; c < m.cols(); ++c) {
    out << (c ? "," : "") << column_prefix << c + 1;
  }
  out << '\n';
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format_double(m(r, c));
    out << '\n';
  }
  if (!out) throw IoError("error writing " + path.string());
}

void write_vector_csv(const std::filesystem::path& path, const Vector& v, const std::string& header) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << header << '\n';
  for (Index i = 0; i < v.size(); ++i) out << format_double(v[i]) << '\n';
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace ssnreg::cli
