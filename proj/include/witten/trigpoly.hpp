#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace witten {

/// Real trigonometric polynomial of period one,
///   f(q) = a_0 + sum_{m=1}^{M} a_m cos(2 pi m q) + b_m sin(2 pi m q).
class TrigPoly {
 public:
  TrigPoly() : cos_(1, 0.0), sin_(1, 0.0) {}

  /// cos_coeffs = a_0..a_M, sin_coeffs = b_1..b_M. The shorter list is
  /// zero-padded. Throws InvalidInput on non-finite coefficients.
  TrigPoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  static TrigPoly constant(double c) { return TrigPoly({c}, {}); }

  int max_harmonic() const noexcept { return static_cast<int>(cos_.size()) - 1; }
  double a(int m) const { return m <= max_harmonic() ? cos_[m] : 0.0; }
  double b(int m) const { return (m >= 1 && m <= max_harmonic()) ? sin_[m] : 0.0; }

  /// a_0..a_M
  std::span<const double> cos_coeffs() const noexcept { return cos_; }
  /// b_1..b_M
  std::span<const double> sin_coeffs() const noexcept {
    return std::span<const double>(sin_).subspan(1);
  }

  std::complex<double> operator()(std::complex<double> q) const;
  double operator()(double q) const;

  /// Effective degree: largest m with a nonzero harmonic (0 for constants).
  int effective_harmonic() const noexcept;
  bool is_constant() const noexcept { return effective_harmonic() == 0; }

  /// f(q + c).
  TrigPoly shifted(double c) const;
  TrigPoly scaled(double s) const;
  TrigPoly plus_constant(double c) const;

  /// sum |a_m| + |b_m|, an upper bound for sup |f|.
  double coefficient_norm() const noexcept;

 private:
  std::vector<double> cos_;  // a_0..a_M
  std::vector<double> sin_;  // sin_[0] unused, b_1..b_M
};

std::complex<double> eval(const TrigPoly& f, std::complex<double> q);

/// Term-wise derivative: (a_m, b_m) -> (2 pi m b_m, -2 pi m a_m).
TrigPoly differentiate(const TrigPoly& f);

enum class CriticalKind { Minimum, Maximum };

struct CriticalPoint {
  double q = 0.0;  // in [0, 1)
  double value = 0.0;
  double curvature = 0.0;
  CriticalKind kind = CriticalKind::Minimum;
};

/// Cyclically ordered critical points of a Morse trigonometric polynomial,
/// rotated so that label 1 is a minimum. Labels are 1-based and cyclic:
/// odd labels are minima, even labels maxima, label 2n+1 is label 1.
struct MorseData {
  int n = 0;
  std::vector<CriticalPoint> points;
  int label_offset = 0;  // index in the ascending-q list that became label 1
  TrigPoly potential;

  const CriticalPoint& point(int label) const;
  /// Position of label j lifted so that q_1 <= q_j < q_1 + 1 (label 2n+1 gives q_1 + 1).
  double lifted_q(int label) const;
  /// Distance from q_{j-1} to q_j along the circle.
  double gap_before(int label) const;
};

/// Simple real zeros of f' in [0, 1), ascending. z = exp(2 pi i q) turns
/// z^M f'(q) into a degree-2M polynomial whose companion eigenvalues with
/// ||z| - 1| < tol are refined by Newton iteration on f'.
std::vector<double> critical_points(const TrigPoly& f, double tol = 1e-8);

MorseData morse_data(const TrigPoly& f);

/// {"a": [a_0, ..., a_M], "b": [b_1, ..., b_M]}
TrigPoly potential_from_json(std::string_view text);
std::string potential_to_json(const TrigPoly& f);

}  // namespace witten
