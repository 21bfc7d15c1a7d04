#include "witten/semiclassical.hpp"

#include "witten/errors.hpp"
#include "witten/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace witten {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI(0.0, 1.0);

// Maps a cyclic label onto 1..2n.
int check_label(const MorseData& md, int j) {
  if (md.n < 1) throw Error(ErrorCode::InvalidInput, "semiclassical", "empty Morse data");
  const int count = 2 * md.n;
  return ((j - 1) % count + count) % count + 1;
}

double slope_at(const MorseData& md, double q) { return differentiate(md.potential)(q); }

// f' at q_j - eps, rejecting values indistinguishable from zero.
double matching_slope(const MorseData& md, double q) {
  const TrigPoly d1 = differentiate(md.potential);
  const double slope = d1(q);
  if (std::abs(slope) <= 1e-13 * d1.coefficient_norm()) {
    throw Error(ErrorCode::ZeroSlope, "semiclassical", "f' vanishes at q_j - eps");
  }
  return slope;
}

// 8-point Gauss-Legendre on [-1, 1], ascending.
constexpr std::array<double, 8> kGaussX = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                           -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                           0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussW = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                           0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                           0.2223810344533745, 0.1012285362903763};

double point_segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / std::norm(ab), 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// Real root of f'(q) = target near a guess, by Newton iteration.
double solve_slope(const TrigPoly& d1, const TrigPoly& d2, double target, double guess) {
  double q = guess;
  for (int it = 0; it < 100; ++it) {
    const double step = (d1(q) - target) / d2(q);
    q -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return q;
}

}  // namespace

MonodromyExponents monodromy_exponents(const MorseData& md, int j) {
  j = check_label(md, j);
  const double c = 1.0 / (2.0 * md.point(j).curvature);
  MonodromyExponents m;
  m.s_gamma = {-c, -1.0};
  m.s_gamma_prime = {-m.s_gamma.slope, -1.0 - m.s_gamma.constant};
  m.s_delta = {-m.s_gamma.slope, -0.5 - m.s_gamma.constant};
  m.s_delta_prime = {m.s_gamma.slope, 0.5 + m.s_gamma.constant};
  return m;
}

TransTerm mu_leading(const MorseData& md, int j) {
  j = check_label(md, j);
  return TransTerm{kI * (kPi / std::abs(md.point(j).curvature)), 1, 0, 0.0};
}

TransTerm tau_leading(const MorseData& md, int j) {
  j = check_label(md, j);
  const auto& here = md.point(j);
  const auto& next = md.point(j + 1);
  const double rate = -2.0 * std::abs(next.value - here.value);
  if (!(rate < 0.0)) {
    throw Error(ErrorCode::NonPositiveBarrier, "semiclassical",
                "barrier between labels " + std::to_string(j) + " and " + std::to_string(j + 1) + " is not positive");
  }
  const double coeff = kPi / std::sqrt(std::abs(here.curvature * next.curvature));
  return TransTerm{coeff, 1, 0, rate};
}

TunnelingData tunneling_data(const MorseData& md) {
  TunnelingData td;
  for (int j = 1; j <= 2 * md.n; ++j) {
    td.mu.push_back(mu_leading(md, j));
    td.tau.push_back(tau_leading(md, j));
    td.barrier_actions.push_back(-td.tau.back().rate);
  }
  return td;
}

double default_eps(const MorseData& md, int j) {
  j = check_label(md, j);
  return 0.25 * md.gap_before(j);
}

TransTerm connection_leading(const MorseData& md, int j, double eps) {
  j = check_label(md, j);
  const auto& p = md.point(j);
  const double q_left = p.q - eps;
  const double slope = matching_slope(md, q_left);
  const double drop = 2.0 * (p.value - md.potential(q_left));
  const double sqrt_pi = std::sqrt(kPi);
  if (j % 2 == 1) {
    return TransTerm{2.0 * kI * sqrt_pi * slope / std::sqrt(p.curvature), 0, -1, drop};
  }
  return TransTerm{-kI * sqrt_pi / (2.0 * std::sqrt(std::abs(p.curvature)) * slope), 1, 1, -drop};
}

TransTerm tau_from_connections(const MorseData& md, int j, double eps_j, double eps_next) {
  j = check_label(md, j);
  const double qa = md.point(j).q - eps_j;
  const double qb = md.point(j + 1).q - eps_next;
  // Formal amplitude ratio A^{-1}A' between q_j - eps_j and q_{j+1} - eps_next.
  const TransTerm transport{slope_at(md, qb) / slope_at(md, qa), 0, 0,
                            -2.0 * (md.potential(qb) - md.potential(qa))};
  const TransTerm c_here = connection_leading(md, j, eps_j);
  const TransTerm c_next = connection_leading(md, j + 1, eps_next);
  if (j % 2 == 1) return c_here * c_next * transport;
  return c_here * c_next * inverse(transport);
}

cplx gamma_connection(const MorseData& md, int j, cplx e_r, double h, double eps) {
  j = check_label(md, j);
  if (j % 2 == 0) throw Error(ErrorCode::InvalidInput, "semiclassical", "gamma_connection is defined at minima (odd labels)");
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidInput, "semiclassical", "h must be positive");
  const auto& p = md.point(j);
  const double curv = p.curvature;
  const double q_left = p.q - eps;
  const double slope = matching_slope(md, q_left);
  const cplx s = (e_r + curv) / (2.0 * curv);
  const cplx h_factor = std::exp(-s * std::log(h));
  const cplx gamma = special::gamma(s + 0.5);
  const cplx log_arg = std::log(cplx(-2.0 * slope / std::sqrt(2.0 * curv)));
  const double drop = 2.0 * (p.value - md.potential(q_left));
  return -kI * std::sqrt(2.0 * kPi) * h_factor / gamma * std::exp(2.0 * s * log_arg) * std::exp(drop / h);
}

cplx sigma_log_closed_form(const MorseData& md, int j, double eps, double energy) {
  j = check_label(md, j);
  const double slope = slope_at(md, md.point(j).q - eps);
  const double root_e = std::sqrt(energy);
  if (j % 2 == 1) return std::log(cplx(-2.0 * slope / root_e));
  return -std::log(cplx(2.0 * slope / root_e));
}

SigmaIntegral sigma_log_integral(const MorseData& md, int j, double eps, double energy, int min_nodes) {
  j = check_label(md, j);
  if (!(energy > 0.0)) throw Error(ErrorCode::InvalidInput, "semiclassical", "sigma integral needs E > 0");
  const TrigPoly d1 = differentiate(md.potential);
  const TrigPoly d2 = differentiate(d1);
  const auto& p = md.point(j);
  const double sign = p.curvature > 0 ? 1.0 : -1.0;
  const double root_e = std::sqrt(energy);
  const double guess = root_e / std::abs(p.curvature);
  const double q_minus = solve_slope(d1, d2, -sign * root_e, p.q - guess);
  const double q_plus = solve_slope(d1, d2, sign * root_e, p.q + guess);
  const double delta = 0.5 * eps;
  const cplx start(p.q - eps, 0.0);
  const cplx lower(p.q, -delta);
  const cplx upper(p.q, delta);
  for (double tp : {q_minus, q_plus}) {
    const cplx t(tp, 0.0);
    const double dist = std::min({point_segment_distance(t, start, lower), point_segment_distance(t, lower, upper),
                                  point_segment_distance(t, upper, start)});
    if (dist < 1e-6) throw Error(ErrorCode::ContourTooClose, "semiclassical", "contour passes within 1e-6 of a turning point");
  }
  if (!(q_minus < p.q && p.q < q_plus) || p.q - q_minus >= eps) {
    throw Error(ErrorCode::InvalidInput, "semiclassical", "turning points are not real and within eps of q_j");
  }

  // Vertical crossing: panels graded geometrically toward the real axis.
  const double near = std::min(p.q - q_minus, q_plus - p.q);
  std::vector<double> ys{0.0};
  for (double y = 0.25 * near; y < delta; y *= 2.0) ys.push_back(y);
  ys.push_back(delta);
  const int bands = static_cast<int>(ys.size()) - 1;
  const int per_band = std::max(1, (min_nodes + 8 * (2 * bands + 8) - 1) / (8 * (2 * bands + 8)));
  const int slanted = 4 * per_band;

  // Path as a list of parameter panels [z0, z1] in traversal order.
  std::vector<std::pair<cplx, cplx>> panels;
  auto add_uniform = [&](cplx a, cplx b, int count) {
    for (int k = 0; k < count; ++k) {
      panels.emplace_back(a + (b - a) * (double(k) / count), a + (b - a) * (double(k + 1) / count));
    }
  };
  add_uniform(start, lower, slanted);
  for (int b = bands - 1; b >= 0; --b) add_uniform(cplx(p.q, -ys[b + 1]), cplx(p.q, -ys[b]), per_band);
  for (int b = 0; b < bands; ++b) add_uniform(cplx(p.q, ys[b]), cplx(p.q, ys[b + 1]), per_band);
  add_uniform(upper, start, slanted);

  auto slope_c = [&](cplx q) { return d1(q); };
  auto curv_c = [&](cplx q) { return d2(q); };

  const double s0 = d1(start.real());
  cplx momentum = kI * std::sqrt(s0 * s0 - energy);
  cplx total = 0.0;
  int nodes = 0;
  for (const auto& [a, b] : panels) {
    const cplx mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t k = 0; k < kGaussX.size(); ++k) {
      const cplx q = mid + half * kGaussX[k];
      const cplx fp = slope_c(q);
      cplx cand = std::sqrt(energy - fp * fp);
      if (std::abs(cand - momentum) > std::abs(-cand - momentum)) cand = -cand;
      momentum = cand;
      total += kGaussW[k] * half * (-curv_c(q) / (2.0 * kI * momentum));
      ++nodes;
    }
  }
  return {total, nodes};
}

}  // namespace witten
