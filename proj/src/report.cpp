#include "qstrat/io/report.hpp"

#include <cstdio>

namespace qstrat::io {

namespace {

void append_json_string(const std::string& s, std::string& out) {
  out += '"';
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

std::string scalar_to_string(const Value& v) {
  switch (v.data().index()) {
    case 0: return "null";
    case 1: return std::get<bool>(v.data()) ? "true" : "false";
    case 2: return std::to_string(std::get<std::int64_t>(v.data()));
    case 3: return format_double(std::get<double>(v.data()));
    default: return std::get<std::string>(v.data());
  }
}

void write_json(const Value& v, int depth, std::string& out) {
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
  if (const auto* object = std::get_if<Value::Object>(&v.data())) {
    if (object->empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    for (std::size_t i = 0; i < object->size(); ++i) {
      out += inner;
      append_json_string((*object)[i].first, out);
      out += ": ";
      write_json((*object)[i].second, depth + 1, out);
      if (i + 1 < object->size()) out += ',';
      out += '\n';
    }
    out += indent;
    out += '}';
  } else if (const auto* array = std::get_if<Value::Array>(&v.data())) {
    if (array->empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < array->size(); ++i) {
      out += inner;
      write_json((*array)[i], depth + 1, out);
      if (i + 1 < array->size()) out += ',';
      out += '\n';
    }
    out += indent;
    out += ']';
  } else if (std::holds_alternative<std::string>(v.data())) {
    append_json_string(std::get<std::string>(v.data()), out);
  } else {
    out += scalar_to_string(v);
  }
}

std::string escape_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (const char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

template <typename Emit>
void flatten(const Value& v, const std::string& path, const Emit& emit) {
  if (const auto* object = std::get_if<Value::Object>(&v.data())) {
    for (const auto& [key, child] : *object) {
      flatten(child, path.empty() ? key : path + "." + key, emit);
    }
  } else if (const auto* array = std::get_if<Value::Array>(&v.data())) {
    for (std::size_t i = 0; i < array->size(); ++i) {
      flatten((*array)[i], path + "[" + std::to_string(i) + "]", emit);
    }
  } else {
    emit(path, scalar_to_string(v));
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string to_json(const Value& v) {
  std::string out;
  write_json(v, 0, out);
  out += '\n';
  return out;
}

std::string to_csv(const Value& v) {
  std::string out = "field,value\n";
  flatten(v, "", [&](const std::string& path, const std::string& value) {
    out += escape_csv(path);
    out += ',';
    out += escape_csv(value);
    out += '\n';
  });
  return out;
}

std::string to_text(const Value& v) {
  std::string out;
  flatten(v, "", [&](const std::string& path, const std::string& value) {
    out += path;
    out += " = ";
    out += value;
    out += '\n';
  });
  return out;
}

}  // namespace qstrat::io
