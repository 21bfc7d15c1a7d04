#pragma once

#include <complex>

namespace witten::special {

/// Complex Gamma function (Lanczos, g = 7, nine terms; about 15 digits),
/// reflected for Re z < 1/2. Throws GammaPole within 1e-12 of a pole.
std::complex<double> gamma(std::complex<double> z);

}  // namespace witten::special
