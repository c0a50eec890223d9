#include "toycascade/io.hpp"

#include <array>
#include <charconv>

#include "toycascade/errors.hpp"

namespace toycascade {

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), res.ptr};
}

nlohmann::json to_json(const LatticeState& b) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (const Complex& z : b.amplitudes()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"N", b.half_width()}, {"re", re}, {"im", im}};
}

LatticeState lattice_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("N").get<int>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size())
      throw InvalidArgument("state JSON: 're' and 'im' lengths differ");
    std::vector<Complex> amps(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) amps[i] = {re[i], im[i]};
    return {n, std::move(amps)};
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("state JSON: ") + e.what());
  }
}

}  // namespace toycascade
