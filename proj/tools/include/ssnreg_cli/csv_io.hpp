#pragma once

#include <filesystem>
#include <string>

#include <ssnreg/error.hpp>
#include <ssnreg/types.hpp>

namespace ssnreg::cli {

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV content (ragged rows, non-numeric or non-finite values).
class CsvError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Comma-separated numeric matrix with '.' decimals. A first row containing
/// any non-numeric field is treated as a header and skipped. NaN and Inf are rejected.
Matrix read_matrix_csv(const std::filesystem::path& path);
/// Single-column CSV (optional header) as a vector.
Vector read_vector_csv(const std::filesystem::path& path);

/// %.17g formatting, so values read back bit-exactly.
std::string format_double(double v);

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      const std::string& column_prefix = "x");
void write_vector_csv(const std::filesystem::path& path, const Vector& v,
                      const std::string& header);

}  // namespace ssnreg::cli
