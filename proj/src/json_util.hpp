#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

namespace qda {

using OrderedJson = nlohmann::ordered_json;

// Serializer with fixed rules so equal documents always produce equal bytes:
// keys keep insertion order, every number is printed with %.17g (which
// round-trips doubles), and non-finite values become the strings
// "Infinity" / "-Infinity" / "NaN" since plain JSON cannot carry them.
inline void dump_number(double v, std::string& out) {
  if (std::isnan(v)) {
    out += "\"NaN\"";
    return;
  }
  if (std::isinf(v)) {
    out += v > 0 ? "\"Infinity\"" : "\"-Infinity\"";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

inline void dump_json(const OrderedJson& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += OrderedJson(it.key()).dump();
        out += ':';
        dump_json(it.value(), out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        dump_json(e, out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float:
      dump_number(j.get<double>(), out);
      break;
    default:
      out += j.dump();
      break;
  }
}

inline std::string dump_json(const OrderedJson& j) {
  std::string out;
  dump_json(j, out);
  return out;
}

}  // namespace qda
