#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "toycascade/cli/app.hpp"

namespace toycascade::cli {

struct Context {
  nlohmann::json config;
  std::filesystem::path config_dir;
  std::uint64_t seed = 1;
  int threads = 1;
  OutputSet& outputs;
  std::ostream& out;
};

// Typed field access; a present field of the wrong type is a ConfigError.
double number_field(const nlohmann::json& j, const std::string& key, double fallback);
double number_field(const nlohmann::json& j, const std::string& key);
long integer_field(const nlohmann::json& j, const std::string& key, long fallback);
long integer_field(const nlohmann::json& j, const std::string& key);
bool bool_field(const nlohmann::json& j, const std::string& key, bool fallback);
std::string string_field(const nlohmann::json& j, const std::string& key, const std::string& fallback);
const nlohmann::json& object_field(const nlohmann::json& j, const std::string& key);

int cmd_simulate(Context& ctx);
int cmd_stationary(Context& ctx);
int cmd_minimize(Context& ctx);
int cmd_hessian(Context& ctx);
int cmd_sample(Context& ctx);
int cmd_report(Context& ctx);

}  // namespace toycascade::cli
