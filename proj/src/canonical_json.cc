#include "text2anim/canonical_json.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace text2anim {

namespace {

std::string FormatDouble(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void Dump(const nlohmann::json& v, int depth, std::string& out) {
  const std::string pad(depth * 2, ' ');
  const std::string inner((depth + 1) * 2, ' ');
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      // nlohmann::json stores objects in a std::map, so iteration is sorted.
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        out += nlohmann::json(it.key()).dump();
        out += ": ";
        Dump(it.value(), depth + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : v)
        if (e.is_structured()) flat = false;
      if (flat) {
        out += "[";
        for (size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          Dump(v[i], depth + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        Dump(v[i], depth + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += FormatDouble(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string CanonicalDump(const nlohmann::json& value) {
  std::string out;
  Dump(value, 0, out);
  out += "\n";
  return out;
}

double RoundSignificant(double v) {
  return std::strtod(FormatDouble(v).c_str(), nullptr);
}

}  // namespace text2anim
