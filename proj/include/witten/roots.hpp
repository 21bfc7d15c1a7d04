#pragma once

#include <complex>
#include <span>
#include <vector>

namespace witten::roots {

using cplx = std::complex<double>;

/// p(x) for coefficients ordered low to high.
cplx horner(std::span<const cplx> coeffs, cplx x);

/// All roots of sum coeffs[k] x^k. Companion-matrix eigenvalues seed an
/// Aberth-Ehrlich refinement (at most 200 sweeps, relative step 1e-13).
/// Trailing zero coefficients are trimmed; an all-zero input yields no roots.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs);

}  // namespace witten::roots
