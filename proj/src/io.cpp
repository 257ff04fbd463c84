#include "toral/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <vector>

namespace toral {

namespace {

bool is_integer_token(const std::string& t) {
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) return false;
  return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

MatrixDocument parse_matrix(const std::string& text, const std::string& source) {
  MatrixDocument doc;
  doc.source = source;
  const std::string where = source.empty() ? "" : source + ":";
  std::vector<Integer> values;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      const std::string comment = trim(line.substr(hash + 1));
      if (!doc.label && comment.rfind("label:", 0) == 0) doc.label = trim(comment.substr(6));
      line.resize(hash);
    }
    std::size_t pos = 0;
    while (pos < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[pos]))) {
        ++pos;
        continue;
      }
      const std::size_t start = pos;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      const std::string token = line.substr(start, pos - start);
      if (!is_integer_token(token))
        throw ParseError(where + std::to_string(line_no) + ":" + std::to_string(start + 1) +
                             ": expected an integer, found '" + token + "'",
                         line_no, start + 1);
      values.emplace_back(token[0] == '+' ? token.substr(1) : token);
    }
  }
  if (values.size() != 16)
    throw ParseError((source.empty() ? "" : source + ": ") + "expected 16 integers, found " + std::to_string(values.size()));
  doc.matrix = IntMatrix(4, 4);
  for (Eigen::Index i = 0; i < 16; ++i) doc.matrix(i / 4, i % 4) = values[static_cast<std::size_t>(i)];
  return doc;
}

MatrixDocument read_matrix_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return parse_matrix(text, path == "-" ? "<stdin>" : path);
}

std::string format_matrix(const IntMatrix& m) {
  std::size_t width = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) width = std::max(width, m(i, j).str().size());
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const std::string s = m(i, j).str();
      os << (j ? " " : "") << std::string(width - s.size(), ' ') << s;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace toral
