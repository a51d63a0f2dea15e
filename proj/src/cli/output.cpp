#include "ptspec/cli/output.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace ptspec::cli {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c, const char* double_fmt) {
  struct Visitor {
    const char* fmt_str;
    std::string operator()(std::monostate) const { return "GAP"; }
    std::string operator()(double v) const {
      return fmt::format(fmt::runtime(fmt_str), v);
    }
    std::string operator()(long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "1" : "0"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{double_fmt}, c);
}

nlohmann::json cell_json(const Cell& c) {
  struct Visitor {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(double v) const { return v; }
    nlohmann::json operator()(long v) const { return v; }
    nlohmann::json operator()(bool v) const { return v; }
    nlohmann::json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

}  // namespace

std::optional<Format> parse_format(std::string_view s) {
  if (s == "csv") return Format::kCsv;
  if (s == "json") return Format::kJson;
  if (s == "table") return Format::kTable;
  return std::nullopt;
}

void ResultTable::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("ResultTable: row width does not match header");
  }
  rows.push_back(std::move(row));
}

std::string render(const ResultTable& table, Format format) {
  std::string out;
  switch (format) {
    case Format::kCsv: {
      for (std::size_t k = 0; k < table.columns.size(); ++k) {
        if (k > 0) out += ',';
        out += csv_escape(table.columns[k]);
      }
      out += '\n';
      for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
          if (k > 0) out += ',';
          out += csv_escape(cell_text(row[k], "{:.17g}"));
        }
        out += '\n';
      }
      break;
    }
    case Format::kJson: {
      auto arr = nlohmann::json::array();
      for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t k = 0; k < row.size(); ++k) {
          obj[table.columns[k]] = cell_json(row[k]);
        }
        arr.push_back(std::move(obj));
      }
      out = arr.dump(2);
      out += '\n';
      break;
    }
    case Format::kTable: {
      std::vector<std::vector<std::string>> text;
      std::vector<std::size_t> width(table.columns.size());
      for (std::size_t k = 0; k < width.size(); ++k) width[k] = table.columns[k].size();
      for (const auto& row : table.rows) {
        auto& line = text.emplace_back();
        for (std::size_t k = 0; k < row.size(); ++k) {
          line.push_back(cell_text(row[k], "{:.10g}"));
          width[k] = std::max(width[k], line.back().size());
        }
      }
      const auto emit = [&](const std::vector<std::string>& fields) {
        for (std::size_t k = 0; k < fields.size(); ++k) {
          if (k > 0) out += "  ";
          out += fmt::format("{:<{}}", fields[k], width[k]);
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
      };
      emit(table.columns);
      for (const auto& line : text) emit(line);
      break;
    }
  }
  return out;
}

}  // namespace ptspec::cli
