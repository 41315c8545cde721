#include "lsasim/csv.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

#include "lsasim/error.hpp"

namespace lsasim::csv {

std::string_view trim(std::string_view s) noexcept {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.emplace_back(trim(cur));
  return out;
}

Table Table::parse(std::istream& in, std::string source,
                   const std::vector<std::string_view>& required_columns) {
  Table t;
  t.source_ = std::move(source);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto fields = split_line(body);
    if (!have_header) {
      t.header_ = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header_.size()) {
      throw Error(ErrorCategory::Input,
                  fmt::format("{}:{}: expected {} fields, found {}", t.source_, line_no,
                              t.header_.size(), fields.size()));
    }
    t.rows_.push_back(Row{line_no, std::move(fields)});
  }
  if (!have_header) {
    throw Error(ErrorCategory::Input, fmt::format("{}: empty file, no header", t.source_));
  }
  for (auto name : required_columns) {
    if (std::find(t.header_.begin(), t.header_.end(), name) == t.header_.end()) {
      throw Error(ErrorCategory::Input,
                  fmt::format("{}: missing required column '{}'", t.source_, name));
    }
  }
  return t;
}

Table Table::read_file(const std::filesystem::path& path,
                       const std::vector<std::string_view>& required_columns) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCategory::Input, fmt::format("cannot open '{}'", path.string()));
  }
  return parse(in, path.string(), required_columns);
}

std::size_t Table::column(std::string_view name) const {
  const auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) {
    throw Error(ErrorCategory::Input, fmt::format("{}: no column '{}'", source_, name));
  }
  return static_cast<std::size_t>(it - header_.begin());
}

const std::string& Table::field(const Row& row, std::string_view col) const {
  return row.fields[column(col)];
}

void Table::fail(const Row& row, const std::string& message) const {
  throw Error(ErrorCategory::Input, fmt::format("{}:{}: {}", source_, row.line, message));
}

double Table::number(const Row& row, std::string_view col) const {
  const auto& text = field(row, col);
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    fail(row, fmt::format("column '{}': '{}' is not a number", col, text));
  }
  return v;
}

std::int64_t Table::integer(const Row& row, std::string_view col) const {
  const auto& text = field(row, col);
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    fail(row, fmt::format("column '{}': '{}' is not an integer", col, text));
  }
  return v;
}

std::string format_number(double v) { return fmt::format("{}", v); }

}  // namespace lsasim::csv
