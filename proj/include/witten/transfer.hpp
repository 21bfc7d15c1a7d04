#pragma once

#include "witten/polygon_solver.hpp"
#include "witten/semiclassical.hpp"
#include "witten/transseries.hpp"
#include "witten/trigpoly.hpp"

#include <string>
#include <vector>

namespace witten {

struct TransMatrix2 {
  TransSeries g11, g12, g21, g22;

  TransSeries trace() const { return g11 + g22; }
  TransSeries det() const { return g11 * g22 - g12 * g21; }

  friend TransMatrix2 operator*(const TransMatrix2& x, const TransMatrix2& y);
};

/// Factor k (1-based) of the period product:
///   diag(tau_2k, 1) [[t + 1, mu_{2k-1} t + 1], [mu_2k t + 1, mu_{2k-1} mu_2k t + 1]],  t = 1/tau_{2k-1}.
TransMatrix2 transfer_factor(const TunnelingData& td, int k);

/// G0 = factor(n) * ... * factor(1). The amplitude product A'_1 ... A'_2n = 1 + E_r k
/// is replaced by 1: it only moves terms by relative order E_r at rate 0.
TransMatrix2 assemble_G0(const TunnelingData& td);

/// tau_1^-1 tau_2 ... tau_{2n-1}^-1 tau_2n (1 - mu_1) ... (1 - mu_2n)
TransSeries det_closed_form(const TunnelingData& td);

/// 1 - Tr G0 + det G0 with its E_r^0 block removed. That block cancels
/// identically; a residual above 1e-10 of the smallest retained coefficient
/// raises ConstantTermSurvives.
TransSeries quantization_series(const TunnelingData& td);

/// quantization_series / E_r: the zero mode factored out.
TransSeries reduced_quantization_series(const TunnelingData& td);

struct EigenCorrection {
  double rate = 0.0;
  cplx coeff;
  double hpow = 1.0;
};

/// lambda ~ prefactor * h^hpow * exp(-rate / h) + sum of corrections, with
/// lambda = h E_r (hpow = 1 when E_r carries no power of h).
struct EigenAsym {
  double rate = 0.0;
  cplx prefactor;
  double hpow = 1.0;
  std::vector<EigenCorrection> corrections;
  bool is_zero_mode = false;
  bool exact_termination = false;
  bool caveat = false;  // corrections deeper than two levels
  std::vector<std::string> warnings;

  /// Leading term only.
  double leading(double h) const;
  /// Leading term plus all corrections.
  cplx evaluate(double h) const;
};

/// Zero mode followed by the Newton-polygon roots of the reduced
/// quantization series, ordered by decreasing rate (increasing eigenvalue).
std::vector<EigenAsym> low_lying(const MorseData& md, int depth = 2);

}  // namespace witten
