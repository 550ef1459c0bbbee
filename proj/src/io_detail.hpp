#pragma once

#include "meyerkit/io.hpp"

namespace meyerkit::io {

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) { throw ConfigError(where, what); }

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

inline const json& array_at(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

inline std::int64_t int_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(j.get<std::string>(), &used);
      if (used == j.get<std::string>().size()) return v;
    } catch (const std::exception&) {
    }
  }
  fail(where, "expected an integer");
}

inline Rational rational_field(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "expected a rational as \"p/q\" or an integer");
}

inline std::string child(const std::string& where, const std::string& key) { return where + "/" + key; }
inline std::string child(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

}  // namespace detail

}  // namespace meyerkit::io
