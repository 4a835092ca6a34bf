#include "json_writer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace interf::cli {

namespace {

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void write(std::ostream& os, const Json& v, int depth) {
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        indent(os, depth + 1);
        os << Json(it.key()).dump() << ": ";
        write(os, it.value(), depth + 1);
      }
      os << "\n";
      indent(os, depth);
      os << "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(v.begin(), v.end(), [](const Json& e) {
        return e.is_object() || e.is_array();
      });
      os << "[";
      bool first = true;
      for (const auto& e : v) {
        if (!first) os << (flat ? ", " : ",");
        first = false;
        if (!flat) {
          os << "\n";
          indent(os, depth + 1);
        }
        write(os, e, depth + 1);
      }
      if (!flat) {
        os << "\n";
        indent(os, depth);
      }
      os << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      std::string s(buf);
      // Keep floats recognizable as floats.
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      os << s;
      return;
    }
    default:
      os << v.dump();
      return;
  }
}

}  // namespace

void write_json(std::ostream& os, const Json& value) {
  write(os, value, 0);
  os << "\n";
}

}  // namespace interf::cli
