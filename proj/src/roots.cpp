#include "witten/roots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace witten::roots {

namespace {

constexpr int kMaxAberthSweeps = 200;
constexpr double kAberthTol = 1e-13;

// p and p' together.
std::pair<cplx, cplx> horner_with_derivative(std::span<const cplx> c, cplx x) {
  cplx p = 0.0, dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * x + p;
    p = p * x + *it;
  }
  return {p, dp};
}

void aberth_refine(std::span<const cplx> c, std::vector<cplx>& z) {
  const std::size_t n = z.size();
  for (int sweep = 0; sweep < kMaxAberthSweeps; ++sweep) {
    double max_step = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      auto [p, dp] = horner_with_derivative(c, z[k]);
      if (p == cplx(0.0)) continue;
      if (dp == cplx(0.0)) continue;
      cplx w = p / dp;
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k && z[j] != z[k]) repulsion += 1.0 / (z[k] - z[j]);
      }
      cplx step = w / (1.0 - w * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    if (max_step < kAberthTol) break;
  }
}

}  // namespace

cplx horner(std::span<const cplx> coeffs, cplx x) {
  cplx p = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * x + *it;
  return p;
}

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs) {
  std::size_t len = coeffs.size();
  while (len > 0 && coeffs[len - 1] == cplx(0.0)) --len;
  if (len <= 1) return {};
  const auto c = coeffs.first(len);
  const int degree = static_cast<int>(len) - 1;

  std::vector<cplx> z;
  if (degree == 1) {
    z.push_back(-c[0] / c[1]);
    return z;
  }

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -c[i] / c[degree];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  const auto& ev = solver.eigenvalues();
  z.assign(ev.data(), ev.data() + degree);

  aberth_refine(c, z);
  return z;
}

}  // namespace witten::roots
