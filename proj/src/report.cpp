#include "exactdiff/report.hpp"

#include <cstdio>

#include "exactdiff/error.hpp"

namespace exactdiff {

OutputFormat parse_output_format(const std::string& name) {
  if (name == "markdown" || name == "md") return OutputFormat::markdown;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw Error(Errc::parse_error, "unknown format '" + name + "' (markdown|csv|json)");
}

std::string fmt_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string fmt_sig(double v, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void render(const TableDoc& doc, OutputFormat format, std::ostream& os) {
  switch (format) {
    case OutputFormat::json:
      os << doc.payload.dump(2) << '\n';
      return;
    case OutputFormat::csv: {
      for (std::size_t i = 0; i < doc.columns.size(); ++i)
        os << (i ? "," : "") << doc.columns[i];
      os << '\n';
      for (const auto& row : doc.cells) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
      }
      return;
    }
    case OutputFormat::markdown: {
      if (!doc.title.empty()) os << "## " << doc.title << "\n\n";
      os << '|';
      for (const auto& c : doc.columns) os << ' ' << c << " |";
      os << "\n|";
      for (std::size_t i = 0; i < doc.columns.size(); ++i) os << " --- |";
      os << '\n';
      for (const auto& row : doc.cells) {
        os << '|';
        for (const auto& cell : row) os << ' ' << cell << " |";
        os << '\n';
      }
      return;
    }
  }
}

}  // namespace exactdiff
