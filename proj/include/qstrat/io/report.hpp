#pragma once

// Report values with deterministic serialization: object fields keep
// insertion order and every double prints with 17 significant digits, so
// identical inputs always produce byte-identical output.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qstrat::io {

class Value {
 public:
  using Array = std::vector<Value>;
  using Object = std::vector<std::pair<std::string, Value>>;
  using Data = std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object>;

  Value() : data_(nullptr) {}
  Value(std::nullptr_t) : data_(nullptr) {}
  Value(bool b) : data_(b) {}
  Value(int i) : data_(static_cast<std::int64_t>(i)) {}
  Value(std::int64_t i) : data_(i) {}
  Value(double d) : data_(d) {}
  Value(const char* s) : data_(std::string(s)) {}
  Value(std::string s) : data_(std::move(s)) {}

  static Value array() {
    Value v;
    v.data_ = Array{};
    return v;
  }
  static Value object() {
    Value v;
    v.data_ = Object{};
    return v;
  }

  Value& push(Value v) {
    std::get<Array>(data_).push_back(std::move(v));
    return *this;
  }
  Value& set(std::string key, Value v) {
    std::get<Object>(data_).emplace_back(std::move(key), std::move(v));
    return *this;
  }

  const Data& data() const { return data_; }

 private:
  Data data_;
};

// Shortest of %.17g: round-trips every double exactly.
std::string format_double(double value);

std::string to_json(const Value& v);  // pretty-printed, two-space indent
std::string to_csv(const Value& v);   // "field,value" rows; nested fields use dots and [i]
std::string to_text(const Value& v);  // "field = value" lines with the same flattening

}  // namespace qstrat::io
