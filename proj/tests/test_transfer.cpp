#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "witten/errors.hpp"
#include "witten/fixtures.hpp"
#include "witten/spectral.hpp"
#include "witten/transfer.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

using namespace witten;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

using M2 = std::array<cplx, 4>;

M2 mul(const M2& x, const M2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

// The period product built from scalar values of mu and tau.
M2 numeric_G0(const TunnelingData& td, cplx E, double h) {
  M2 g{1.0, 0.0, 0.0, 1.0};
  for (int k = 1; k <= td.n(); ++k) {
    const cplx m1 = td.mu[2 * k - 2].evaluate(E, h), m2 = td.mu[2 * k - 1].evaluate(E, h);
    const cplx t = 1.0 / td.tau[2 * k - 2].evaluate(E, h), tau2 = td.tau[2 * k - 1].evaluate(E, h);
    const M2 f{tau2 * (t + 1.0), tau2 * (m1 * t + 1.0), m2 * t + 1.0, m1 * m2 * t + 1.0};
    g = mul(f, g);
  }
  return g;
}

double scale_of(const M2& g) {
  return std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2]), std::abs(g[3]), 1.0});
}

std::vector<MorseData> random_morse(int count, unsigned seed, int M = 3) {
  std::mt19937 rng(seed);
  std::vector<MorseData> out;
  while (static_cast<int>(out.size()) < count) {
    try {
      out.push_back(morse_data(oracle::random_trig(M, rng)));
    } catch (const Error&) {
    }
  }
  return out;
}

// Largest-rate term of a given E-degree.
TransTerm top_of_degree(const TransSeries& s, int deg) {
  TransTerm best{0.0, deg, 0, -1e300};
  for (const auto& t : s.terms()) {
    if (t.e_deg == deg && t.rate > best.rate) best = t;
  }
  return best;
}

}  // namespace

TEST_CASE("period product agrees with scalar matrix multiplication") {
  for (const auto& md : random_morse(8, 3)) {
    const TunnelingData td = tunneling_data(md);
    const TransMatrix2 G = assemble_G0(td);
    for (double h : {0.4, 0.25}) {
      for (cplx E : {cplx(0.3, 0.0), cplx(0.1, 0.2)}) {
        const M2 g = numeric_G0(td, E, h);
        const double s = scale_of(g);
        CHECK(std::abs(G.g11.evaluate(E, h) - g[0]) < 1e-10 * s);
        CHECK(std::abs(G.g12.evaluate(E, h) - g[1]) < 1e-10 * s);
        CHECK(std::abs(G.g21.evaluate(E, h) - g[2]) < 1e-10 * s);
        CHECK(std::abs(G.g22.evaluate(E, h) - g[3]) < 1e-10 * s);
      }
    }
  }
}

TEST_CASE("trace of a single factor") {
  const MorseData md = morse_data(fixtures::single_well());
  const TunnelingData one = tunneling_data(md);
  const cplx E(0.21, 0.05);
  const double h = 0.3;
  const cplx m1 = one.mu[0].evaluate(E, h), m2 = one.mu[1].evaluate(E, h);
  const cplx t1 = one.tau[0].evaluate(E, h), t2 = one.tau[1].evaluate(E, h);
  const cplx expected = t2 / t1 + t2 + m1 * m2 / t1 + 1.0;
  CHECK(std::abs(assemble_G0(one).trace().evaluate(E, h) - expected) < 1e-12 * std::abs(expected));
}

TEST_CASE("determinant closed form") {
  for (int M : {1, 2, 3}) {
    for (const auto& md : random_morse(4, 40 + M, M)) {
      const TunnelingData td = tunneling_data(md);
      const TransSeries det = assemble_G0(td).det();
      const TransSeries closed = det_closed_form(td);
      for (double h : {0.5, 0.3}) {
        const cplx E(0.2, 0.1);
        const double s = std::max(oracle::term_scale(det, E, h), oracle::term_scale(closed, E, h));
        CHECK(std::abs(det.evaluate(E, h) - closed.evaluate(E, h)) < 1e-10 * s);
      }
    }
  }
}

TEST_CASE("constant block of the quantization series cancels") {
  for (const auto& md : random_morse(10, 77)) {
    const TransSeries Q = quantization_series(tunneling_data(md));
    CHECK(Q.min_degree() >= 1);
    const TransSeries R = reduced_quantization_series(tunneling_data(md));
    CHECK(R.min_degree() == 0);
  }
}

TEST_CASE("reduced quantization series of sin(2 pi q)/(2 pi)") {
  const TransSeries R = reduced_quantization_series(tunneling_data(morse_data(fixtures::single_well())));
  const double a = 2.0 / pi;
  const TransSeries expected({TransTerm{0.5, 0, 0, a}, TransTerm{cplx(0, -1), 0, 0, 0.0}, TransTerm{-0.25, 1, 0, 0.0},
                              TransTerm{-0.5, 0, 0, -a}});
  REQUIRE(R.size() == expected.size());
  for (std::size_t i = 0; i < R.size(); ++i) {
    const auto &got = R.terms()[i], &want = expected.terms()[i];
    CHECK(got.e_deg == want.e_deg);
    CHECK(got.h2_pow == want.h2_pow);
    CHECK(got.rate == Approx(want.rate).epsilon(1e-13));
    CHECK(std::abs(got.coeff - want.coeff) < 1e-13);
  }
}

TEST_CASE("hull points of the two-well reduced series") {
  const TransSeries R = reduced_quantization_series(tunneling_data(morse_data(fixtures::two_well())));
  const TransTerm d0 = top_of_degree(R, 0), d1 = top_of_degree(R, 1);
  CHECK(d0.rate == Approx(25.0 / (8 * pi)).epsilon(1e-12));
  CHECK(std::abs(d0.coeff - cplx(2.0 / std::sqrt(75.0))) < 1e-12);
  CHECK(d1.rate == Approx(34.0 / (8 * pi)).epsilon(1e-12));
  CHECK(std::abs(d1.coeff - cplx(-1.0 / std::sqrt(3375.0))) < 1e-13);
  // Higher degrees sit at rate zero, below the edge joining these two.
  for (int d = 2; d <= R.max_degree(); ++d) CHECK(top_of_degree(R, d).rate == Approx(0.0));
  CHECK(std::abs(-d0.coeff / d1.coeff - 6.0 * std::sqrt(5.0)) < 1e-11);
}

TEST_CASE("two-well asymptotics") {
  const auto asym = low_lying(morse_data(fixtures::two_well()));
  REQUIRE(asym.size() == 2);
  CHECK(asym[0].is_zero_mode);
  CHECK(asym[0].exact_termination);
  CHECK(asym[0].leading(0.1) == 0.0);
  CHECK_FALSE(asym[1].is_zero_mode);
  CHECK(std::abs(asym[1].rate - 9.0 / (8 * pi)) < 1e-10);
  CHECK(std::abs(asym[1].prefactor - cplx(6.0 * std::sqrt(5.0))) < 1e-10);
  CHECK(asym[1].hpow == 1.0);
  CHECK(asym[1].leading(0.1) == Approx(6.0 * std::sqrt(5.0) * 0.1 * std::exp(-9.0 / (0.8 * pi))).epsilon(1e-12));
}

TEST_CASE("single well has only the zero mode") {
  const auto asym = low_lying(morse_data(fixtures::single_well()));
  REQUIRE(asym.size() == 1);
  CHECK(asym[0].is_zero_mode);
}

TEST_CASE("three-well asymptotics against numerics") {
  const TrigPoly f = fixtures::three_well();
  const auto asym = low_lying(morse_data(f));
  REQUIRE(asym.size() == 3);
  CHECK(asym[1].rate > asym[2].rate);
  const double h = 0.05;
  const auto ev = smallest_eigs(build_operator(f, h, 256), 3);
  for (int k = 1; k <= 2; ++k) {
    CHECK(asym[k].prefactor.real() > 0.0);
    CHECK(std::abs(asym[k].prefactor.imag()) < 1e-10 * std::abs(asym[k].prefactor));
    CHECK(ev[k] / asym[k].leading(h) == Approx(1.0).epsilon(0.3));
  }
}

TEST_CASE("asymptotics are invariant under rotation and real") {
  const TrigPoly f = fixtures::three_well();
  const auto base = low_lying(morse_data(f));
  for (double c : {0.2, 0.55}) {
    const auto rot = low_lying(morse_data(f.shifted(c)));
    REQUIRE(rot.size() == base.size());
    for (std::size_t k = 1; k < base.size(); ++k) {
      CHECK(rot[k].rate == Approx(base[k].rate).epsilon(1e-9));
      CHECK(std::abs(rot[k].prefactor - base[k].prefactor) < 1e-8 * std::abs(base[k].prefactor));
    }
  }
  for (const auto& md : random_morse(6, 11)) {
    for (const auto& a : low_lying(md)) {
      if (a.is_zero_mode) continue;
      CHECK(a.rate > 0.0);
      CHECK(std::abs(a.prefactor.imag()) < 1e-8 * std::abs(a.prefactor));
    }
  }
}

TEST_CASE("depth beyond two sets the caveat") {
  const auto deep = low_lying(morse_data(fixtures::two_well()), 3);
  CHECK(deep[1].caveat);
  CHECK_FALSE(low_lying(morse_data(fixtures::two_well()), 2)[1].caveat);
}
