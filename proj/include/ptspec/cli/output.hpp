#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ptspec::cli {

enum class Format { kCsv, kJson, kTable };

std::optional<Format> parse_format(std::string_view s);

/// Empty cells render as GAP in csv/table and null in json.
using Cell = std::variant<std::monostate, double, long, bool, std::string>;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// csv: header + rows, LF endings, doubles with 17 significant digits.
/// json: array of objects keyed by column.  table: aligned text.
std::string render(const ResultTable& table, Format format);

}  // namespace ptspec::cli
