#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "toycascade/lattice.hpp"

namespace toycascade {

// Shortest representation that round-trips through strtod.
std::string format_double(double x);

// {"N": int, "re": [...], "im": [...]} ordered j = -N..N.
nlohmann::json to_json(const LatticeState& b);
// Throws InvalidArgument on missing keys or inconsistent lengths.
LatticeState lattice_from_json(const nlohmann::json& j);

}  // namespace toycascade
