#include <cmath>
#include <fstream>
#include <sstream>

#include "internal.hpp"

namespace toycascade::cli {

namespace {

using nlohmann::json;

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json* find(const json& j, const std::string& key) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

[[noreturn]] void missing(const std::string& key) {
  throw ConfigError("missing required field '" + key + "'");
}

}  // namespace

json parse_config(const std::string& text) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    // e.what() embeds a byte offset; report line and column instead.
    const std::string what = e.what();
    const auto colon = what.rfind(": ");
    throw ConfigError("malformed JSON at " + line_column(text, e.byte) + ": " +
                      (colon == std::string::npos ? what : what.substr(colon + 2)));
  }
}

json load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

double number_field(const json& j, const std::string& key, double fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number()) throw ConfigError("field '" + key + "' must be a number");
  return v->get<double>();
}

double number_field(const json& j, const std::string& key) {
  if (!find(j, key)) missing(key);
  return number_field(j, key, 0.0);
}

long integer_field(const json& j, const std::string& key, long fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (v->is_number_integer()) return v->get<long>();
  if (v->is_number_float()) {
    const double d = v->get<double>();
    if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long>(d);
  }
  throw ConfigError("field '" + key + "' must be an integer");
}

long integer_field(const json& j, const std::string& key) {
  if (!find(j, key)) missing(key);
  return integer_field(j, key, 0);
}

bool bool_field(const json& j, const std::string& key, bool fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw ConfigError("field '" + key + "' must be true or false");
  return v->get<bool>();
}

std::string string_field(const json& j, const std::string& key, const std::string& fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError("field '" + key + "' must be a string");
  return v->get<std::string>();
}

const json& object_field(const json& j, const std::string& key) {
  const json* v = find(j, key);
  if (!v) missing(key);
  if (!v->is_object()) throw ConfigError("field '" + key + "' must be an object");
  return *v;
}

}  // namespace toycascade::cli
