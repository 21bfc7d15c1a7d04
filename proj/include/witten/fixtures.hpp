#pragma once

#include "witten/transseries.hpp"
#include "witten/trigpoly.hpp"

#include <cmath>
#include <numbers>

namespace witten::fixtures {

/// (1/2pi) [sin 2pi(q + 1/8) + cos 4pi(q + 1/8)]: two wells, minima at 1/8 and 5/8.
inline TrigPoly two_well() {
  const double pi = std::numbers::pi;
  const double c = std::sqrt(2.0) / (4.0 * pi);
  return TrigPoly({0.0, c, 0.0}, {c, -1.0 / (2.0 * pi)});
}

/// sin(2 pi q) / (2 pi): one well, no tunnelling splitting.
inline TrigPoly single_well() { return TrigPoly({0.0, 0.0}, {1.0 / (2.0 * std::numbers::pi)}); }

/// 0.18 [cos 6pi q + 0.4 sin 2pi q + 0.1 cos 4pi q]: three wells of unequal depth.
inline TrigPoly three_well() { return TrigPoly({0.0, 0.0, 0.018, 0.18}, {0.072, 0.0, 0.0}); }

/// 3 + (2 + h) E e^{3/h} + h^2 E e^{4/h} + E^2 e^{5/h}
inline TransSeries quadratic_example() {
  return TransSeries({TransTerm{3.0, 0, 0, 0.0}, TransTerm{2.0, 1, 0, 3.0}, TransTerm{1.0, 1, 2, 3.0},
                      TransTerm{1.0, 1, 4, 4.0}, TransTerm{1.0, 2, 0, 5.0}});
}

}  // namespace witten::fixtures
