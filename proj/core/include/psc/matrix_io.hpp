#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "psc/matrix.hpp"

namespace psc {

/// Malformed matrix text. `line()` is 1-based, 0 when unknown.
class MatrixParseError : public std::runtime_error {
 public:
  MatrixParseError(const std::string& message, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Unknown or malformed generator string.
class GeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "1", "-2.5e-3", "3j", "1+2j", "1.5-0.25i".
Complex parse_complex(std::string_view token);

/// Generator strings:
///   jordan:n            nilpotent Jordan block
///   ginibre:n:seed      iid CN(0, 1/n) entries
///   diag:z1,z2,...      diagonal matrix
///   haar-unitary:n:seed
bool is_generator(std::string_view source);
CMatrix generate_matrix(std::string_view text);

/// {"nrows": r, "ncols": c, "entries": [[re, im], ...]} in row-major order.
CMatrix parse_matrix_json(std::string_view text);
std::string matrix_to_json(const CMatrix& m);

/// One row per line, comma-separated complex tokens. Blank lines and lines
/// starting with '#' are skipped.
CMatrix parse_matrix_csv(std::string_view text);
std::string matrix_to_csv(const CMatrix& m);

/// JSON if the first non-blank character is '{', CSV otherwise.
CMatrix read_matrix_file(const std::string& path);

/// Generator string or file path.
CMatrix load_matrix(const std::string& source);

}  // namespace psc
