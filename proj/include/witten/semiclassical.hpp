#pragma once

#include "witten/transseries.hpp"
#include "witten/trigpoly.hpp"

#include <vector>

namespace witten {

/// slope * E_r + constant
struct AffineForm {
  double slope = 0.0;
  double constant = 0.0;

  double operator()(double e_r) const { return slope * e_r + constant; }
  friend AffineForm operator+(AffineForm x, AffineForm y) { return {x.slope + y.slope, x.constant + y.constant}; }
};

/// Leading monodromy exponents around the double turning point q_j, with
/// E = h E_r substituted.
struct MonodromyExponents {
  AffineForm s_gamma;
  AffineForm s_gamma_prime;
  AffineForm s_delta;
  AffineForm s_delta_prime;
};

/// Leading-order tunnelling data for labels 1..2n (stored 0-based).
struct TunnelingData {
  std::vector<TransTerm> mu;
  std::vector<TransTerm> tau;
  std::vector<double> barrier_actions;  // 2 |f(q_{j+1}) - f(q_j)|, equal to -rate(tau_j)

  int n() const { return static_cast<int>(mu.size()) / 2; }
};

// All functions below take 1-based cyclic labels j (odd = minimum).

MonodromyExponents monodromy_exponents(const MorseData& md, int j);

/// i pi / |f''(q_j)| * E_r
TransTerm mu_leading(const MorseData& md, int j);

/// pi / sqrt(|f''(q_j) f''(q_{j+1})|) * E_r * exp(-2 |f(q_{j+1}) - f(q_j)| / h)
TransTerm tau_leading(const MorseData& md, int j);

TunnelingData tunneling_data(const MorseData& md);

/// A quarter of the circle gap from q_{j-1} to q_j.
double default_eps(const MorseData& md, int j);

/// Leading connection coefficient across q_j, in the basis normalised at q_j - eps:
/// c'_j (odd j, e_deg 0, h^{-1/2}) or c_j (even j, e_deg 1, h^{1/2}).
TransTerm connection_leading(const MorseData& md, int j, double eps);

/// Tunnelling-cycle monodromy rebuilt from connection coefficients and the
/// formal-amplitude ratio between q_j - eps_j and q_{j+1} - eps_next. The
/// transport factors cancel the eps dependence, leaving tau_leading(j).
TransTerm tau_from_connections(const MorseData& md, int j, double eps_j, double eps_next);

/// Full Gamma-factor connection coefficient at a minimum (odd j), with the
/// regular part of the sigma integral dropped:
///   -i sqrt(2 pi) h^{-s} / Gamma(s + 1/2) * exp[2 s Ln(-2 f'(q_j - eps) / sqrt(2 f''))]
///   * exp(2 [f(q_j) - f(q_j - eps)] / h),   s = (E_r + f'') / (2 f'').
cplx gamma_connection(const MorseData& md, int j, cplx e_r, double h, double eps);

struct SigmaIntegral {
  cplx value;
  int nodes = 0;
};

/// Contour quadrature of  -f''/(2 i sqrt(E - f'^2)) dq  along the loop that
/// starts at q_j - eps, passes under the cut through q_j^- and returns on the
/// other sheet. The start branch is the one with i p -> f' (sheet 1) for
/// minima and the opposite sheet for maxima.
SigmaIntegral sigma_log_integral(const MorseData& md, int j, double eps, double energy, int min_nodes = 2000);

/// Ln[-2 f'(q_j - eps)/sqrt(E)] for odd j, -Ln[2 f'(q_j - eps)/sqrt(E)] for even j.
cplx sigma_log_closed_form(const MorseData& md, int j, double eps, double energy);

}  // namespace witten
