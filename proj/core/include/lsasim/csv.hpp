#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lsasim::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the source
  std::vector<std::string> fields;
};

/// A header-addressed CSV table. Only the subset of RFC 4180 that the
/// simulator's inputs need: comma separator, optional double-quoted fields,
/// blank lines and lines starting with '#' skipped.
class Table {
 public:
  /// Parses `in`; throws Error(Input) naming the missing column or the first
  /// line whose field count disagrees with the header.
  static Table parse(std::istream& in, std::string source,
                     const std::vector<std::string_view>& required_columns);
  static Table read_file(const std::filesystem::path& path,
                         const std::vector<std::string_view>& required_columns);

  [[nodiscard]] std::size_t column(std::string_view name) const;
  [[nodiscard]] const std::vector<Row>& rows() const noexcept { return rows_; }
  [[nodiscard]] const std::string& source() const noexcept { return source_; }

  [[nodiscard]] const std::string& field(const Row& row, std::string_view column) const;
  [[nodiscard]] double number(const Row& row, std::string_view column) const;
  [[nodiscard]] std::int64_t integer(const Row& row, std::string_view column) const;

  /// Error(Input) prefixed with "<source>:<line>: ".
  [[noreturn]] void fail(const Row& row, const std::string& message) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

[[nodiscard]] std::vector<std::string> split_line(std::string_view line);
[[nodiscard]] std::string_view trim(std::string_view s) noexcept;

/// Shortest decimal text that parses back to exactly `v`.
[[nodiscard]] std::string format_number(double v);

}  // namespace lsasim::csv
