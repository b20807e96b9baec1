#include "qstrat/io/price_csv.hpp"

#include <cmath>
#include <cstdlib>

namespace qstrat::io {

namespace {

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && (s[begin] == ' ' || s[begin] == '\t')) ++begin;
  while (end > begin && (s[end - 1] == ' ' || s[end - 1] == '\t' || s[end - 1] == '\r')) --end;
  return std::string(s.substr(begin, end - begin));
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool parse_number(const std::string& field, double* out) {
  if (field.empty()) return false;
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + field.size() || !std::isfinite(v)) return false;
  *out = v;
  return true;
}

struct Row {
  std::size_t line;  // 1-based position in the file
  std::vector<std::string> fields;
};

ParsedSeries parse_series(std::string_view text, bool positive_prices, const char* what) {
  std::vector<Row> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::string_view line =
        nl == std::string_view::npos ? text.substr(start) : text.substr(start, nl - start);
    ++line_no;
    if (!trim(line).empty()) rows.push_back({line_no, split_fields(line)});
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (rows.empty()) throw ParseError(std::string(what) + ": no data rows");

  // Header row: the value field (last column) is not a number.
  double probe = 0.0;
  if (!parse_number(rows.front().fields.back(), &probe)) rows.erase(rows.begin());
  if (rows.empty()) throw ParseError(std::string(what) + ": no data rows after the header");

  const std::size_t columns = rows.front().fields.size();
  if (columns > 2) {
    throw ParseError(std::string(what) + ": row " + std::to_string(rows.front().line) +
                     " has " + std::to_string(columns) + " columns, expected 1 or 2");
  }

  ParsedSeries out;
  for (const Row& row : rows) {
    if (row.fields.size() != columns) {
      throw ParseError(std::string(what) + ": row " + std::to_string(row.line) + " has " +
                       std::to_string(row.fields.size()) + " columns, expected " +
                       std::to_string(columns));
    }
    double value = 0.0;
    if (!parse_number(row.fields.back(), &value)) {
      throw ParseError(std::string(what) + ": row " + std::to_string(row.line) +
                       " has a non-numeric value '" + row.fields.back() + "'");
    }
    if (positive_prices && value <= 0.0) {
      throw ParseError(std::string(what) + ": row " + std::to_string(row.line) +
                       " has a non-positive price " + row.fields.back());
    }
    out.values.push_back(value);
    if (columns == 2) out.timestamps.push_back(row.fields.front());
  }
  return out;
}

}  // namespace

ParsedSeries parse_price_csv(std::string_view text) {
  ParsedSeries out = parse_series(text, true, "price csv");
  if (out.values.size() < 2) throw ParseError("price csv: need at least two prices");
  return out;
}

ParsedSeries parse_returns_csv(std::string_view text) {
  return parse_series(text, false, "returns csv");
}

}  // namespace qstrat::io
