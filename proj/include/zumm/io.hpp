#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace zumm::io {

using Cell = std::variant<double, long long, std::string>;

/// A result table plus the metadata needed to regenerate it.
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;  ///< insertion order kept
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void meta(const std::string& key, const std::string& value);
  void meta(const std::string& key, double value);
  void meta(const std::string& key, long long value);
  const std::string* find_meta(const std::string& key) const;
};

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

/// 17 significant digits, '.' decimal point, nan/inf spelled out.
std::string format_double(double x);

/// '# key=value' lines, then a header row and comma-separated rows.
void write_csv(std::ostream& out, const Table& t);
/// {"metadata": {...}, "columns": [...], "rows": [[...], ...]}.
void write_json(std::ostream& out, const Table& t);
void write(std::ostream& out, const Table& t, Format f);

/// Readers for the two formats above; numbers come back as double unless
/// they parse as an integer without a decimal point or exponent.
Table read_csv(std::istream& in);
Table read_json(std::istream& in);

}  // namespace zumm::io
