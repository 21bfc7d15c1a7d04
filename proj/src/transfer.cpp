#include "witten/transfer.hpp"

#include "witten/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace witten {

namespace {

constexpr double kCancelRelTol = 1e-10;

TransSeries one() { return TransSeries::constant(1.0); }

}  // namespace

TransMatrix2 operator*(const TransMatrix2& x, const TransMatrix2& y) {
  return TransMatrix2{x.g11 * y.g11 + x.g12 * y.g21, x.g11 * y.g12 + x.g12 * y.g22, x.g21 * y.g11 + x.g22 * y.g21,
                      x.g21 * y.g12 + x.g22 * y.g22};
}

TransMatrix2 transfer_factor(const TunnelingData& td, int k) {
  if (k < 1 || k > td.n()) throw Error(ErrorCode::InvalidInput, "transfer", "factor index out of range");
  const TransSeries t = TransSeries(inverse(td.tau[2 * k - 2]));
  const TransSeries mu_odd(td.mu[2 * k - 2]);
  const TransSeries mu_even(td.mu[2 * k - 1]);
  const TransSeries tau_even(td.tau[2 * k - 1]);
  return TransMatrix2{tau_even * (t + one()), tau_even * (mu_odd * t + one()), mu_even * t + one(),
                      mu_odd * mu_even * t + one()};
}

TransMatrix2 assemble_G0(const TunnelingData& td) {
  if (td.n() < 1) throw Error(ErrorCode::InvalidInput, "transfer", "need at least one well");
  TransMatrix2 g = transfer_factor(td, td.n());
  for (int k = td.n() - 1; k >= 1; --k) g = g * transfer_factor(td, k);
  return g;
}

TransSeries det_closed_form(const TunnelingData& td) {
  TransSeries d = one();
  for (int k = 1; k <= td.n(); ++k) {
    d *= TransSeries(inverse(td.tau[2 * k - 2]) * td.tau[2 * k - 1]);
  }
  for (const auto& mu : td.mu) d *= one() - TransSeries(mu);
  return d;
}

TransSeries quantization_series(const TunnelingData& td) {
  const TransMatrix2 g = assemble_G0(td);
  const TransSeries q = clear_denominators(one() - g.trace() + g.det()).series;
  const TransSeries constant = q.degree_block(0);
  const TransSeries rest = q.without_degree(0);
  if (rest.empty()) throw Error(ErrorCode::EmptySeries, "transfer", "quantization series vanishes identically");
  if (!constant.empty()) {
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& t : rest.terms()) smallest = std::min(smallest, std::abs(t.coeff));
    if (constant.max_abs_coeff() >= kCancelRelTol * smallest) {
      throw Error(ErrorCode::ConstantTermSurvives, "transfer",
                  "E_r^0 terms of 1 - Tr G0 + det G0 do not cancel (largest residual " +
                      std::to_string(constant.max_abs_coeff()) + ")");
    }
  }
  return rest;
}

TransSeries reduced_quantization_series(const TunnelingData& td) {
  return quantization_series(td) * TransSeries(TransTerm{1.0, -1, 0, 0.0});
}

double EigenAsym::leading(double h) const {
  if (is_zero_mode) return 0.0;
  return prefactor.real() * std::pow(h, hpow) * std::exp(-rate / h);
}

cplx EigenAsym::evaluate(double h) const {
  if (is_zero_mode) return 0.0;
  cplx s = prefactor * std::pow(h, hpow) * std::exp(-rate / h);
  for (const auto& c : corrections) s += c.coeff * std::pow(h, c.hpow) * std::exp(-c.rate / h);
  return s;
}

std::vector<EigenAsym> low_lying(const MorseData& md, int depth) {
  if (depth < 1) throw Error(ErrorCode::InvalidInput, "transfer", "depth must be at least 1");
  const TunnelingData td = tunneling_data(md);

  std::vector<EigenAsym> out;
  EigenAsym zero;
  zero.is_zero_mode = true;
  zero.prefactor = 0.0;
  zero.exact_termination = true;
  out.push_back(zero);

  const auto sols = solve(clear_denominators(reduced_quantization_series(td)).series, depth);
  std::vector<EigenAsym> modes;
  for (const auto& sol : sols) {
    EigenAsym e;
    const auto& lead = sol.levels.front();
    e.rate = lead.rate;
    e.prefactor = lead.coeff;
    e.hpow = 1.0 + 0.5 * lead.h2_pow;
    for (std::size_t i = 1; i < sol.levels.size(); ++i) {
      const auto& lv = sol.levels[i];
      e.corrections.push_back(EigenCorrection{lv.rate, lv.coeff, 1.0 + 0.5 * lv.h2_pow});
    }
    e.exact_termination = sol.exact_termination;
    e.caveat = depth > 2;
    e.warnings = sol.warnings;
    modes.push_back(std::move(e));
  }
  std::stable_sort(modes.begin(), modes.end(), [](const EigenAsym& a, const EigenAsym& b) { return a.rate > b.rate; });
  out.insert(out.end(), modes.begin(), modes.end());
  return out;
}

}  // namespace witten
