#pragma once

// CSV inputs for the market commands.  Rows are either "value" or
// "timestamp,value"; a header row is auto-detected (non-numeric value
// field).  Parse errors name the offending 1-based line.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qstrat::io {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::string message) : std::runtime_error(std::move(message)) {}
};

struct ParsedSeries {
  std::vector<double> values;
  std::vector<std::string> timestamps;  // empty when the file has no timestamp column
};

// Prices: finite and strictly positive, at least two rows.
ParsedSeries parse_price_csv(std::string_view text);

// Precomputed log returns: finite, at least one row.
ParsedSeries parse_returns_csv(std::string_view text);

}  // namespace qstrat::io
