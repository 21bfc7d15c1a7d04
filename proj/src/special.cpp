#include "witten/special.hpp"

#include "witten/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace witten::special {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

std::complex<double> gamma(std::complex<double> z) {
  const double nearest = std::round(z.real());
  if (nearest <= 0.0 && std::abs(z - nearest) < 1e-12) {
    throw Error(ErrorCode::GammaPole, "special", "Gamma argument at a non-positive integer");
  }
  constexpr double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    return pi / (std::sin(pi * z) * gamma(1.0 - z));
  }
  z -= 1.0;
  std::complex<double> x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace witten::special
