#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace exactdiff {

enum class OutputFormat { markdown, csv, json };

OutputFormat parse_output_format(const std::string& name);  // throws Error(parse_error)

/// A rendered table plus the full-precision JSON payload. The formatted cells
/// feed CSV/markdown; JSON consumers get raw doubles.
struct TableDoc {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> cells;
  nlohmann::ordered_json payload;
};

void render(const TableDoc& doc, OutputFormat format, std::ostream& os);

/// printf-style numeric formatting helpers (deterministic across runs).
std::string fmt_fixed(double v, int decimals);
std::string fmt_sig(double v, int significant);
std::string fmt_full(double v);

}  // namespace exactdiff
