#pragma once

// Internal helpers shared by the document readers and writers.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

#include <json.hpp>

#include "compdof/types.hpp"

namespace compdof::detail {

using Json = nlohmann::ordered_json;

inline Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    int line = 1;
    const auto end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') ++line;
    }
    throw ParseError(e.what(), line);
  }
}

inline const Json& require(const Json& obj, const char* key, const std::string& path = {}) {
  const std::string field = path.empty() ? key : path + "." + key;
  if (!obj.is_object()) throw ParseError("expected an object", 0, path.empty() ? "<root>" : path);
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing field", 0, field);
  return *it;
}

inline long long require_int(const Json& obj, const char* key, const std::string& path = {}) {
  const Json& v = require(obj, key, path);
  if (!v.is_number_integer()) {
    throw ParseError("expected an integer", 0, path.empty() ? key : path + "." + key);
  }
  return v.get<long long>();
}

inline double require_number(const Json& obj, const char* key, const std::string& path = {}) {
  const Json& v = require(obj, key, path);
  if (!v.is_number()) throw ParseError("expected a number", 0, path.empty() ? key : path + "." + key);
  return v.get<double>();
}

inline IndexSet read_index_set(const Json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError("expected an array of indices", 0, field);
  IndexSet out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw ParseError("expected an integer index", 0, field);
    out.push_back(x.get<Index>());
  }
  return normalized(std::move(out));
}

inline Json write_index_set(const IndexSet& s) {
  Json arr = Json::array();
  for (Index x : s) arr.push_back(x);
  return arr;
}

// Rounds to 15 significant digits so that emitted reports are stable.
inline double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace compdof::detail
