// Plain-text matrix documents: 16 whitespace-separated integers, `#` comments.
// A comment of the form `# label: <text>` names the matrix.
#pragma once

#include "toral/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace toral {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct MatrixDocument {
  IntMatrix matrix;
  std::optional<std::string> label;
  std::string source;  // path, or empty for in-memory text
};

MatrixDocument parse_matrix(const std::string& text, const std::string& source = "");

/// Reads and parses a file; "-" reads standard input.
MatrixDocument read_matrix_file(const std::string& path);

/// Rows on separate lines, columns right-aligned.
std::string format_matrix(const IntMatrix& m);

}  // namespace toral
