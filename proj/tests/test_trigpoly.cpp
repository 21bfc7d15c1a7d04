#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "witten/errors.hpp"
#include "witten/fixtures.hpp"
#include "witten/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace witten;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected witten::Error");
  return ErrorCode::InvalidInput;
}
}  // namespace

TEST_CASE("evaluation of the two-well potential") {
  const TrigPoly f = fixtures::two_well();
  CHECK(std::abs(f(1.0 / 8.0)) < 1e-15);
  CHECK(f(5.0 / 8.0) == Approx(-1.0 / pi).epsilon(1e-14));
  const auto z = f(std::complex<double>(0.3, 0.0));
  CHECK(std::abs(z.imag()) < 1e-14);
  CHECK(z.real() == Approx(f(0.3)).epsilon(1e-14));
  CHECK(TrigPoly::constant(2.5)(std::complex<double>(0.7, 0.2)) == std::complex<double>(2.5));
}

TEST_CASE("periodicity of evaluation") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const TrigPoly f = oracle::random_trig(4, rng);
    const double q = u(rng);
    CHECK(std::abs(f(q) - f(q + 1.0)) < 1e-13 * (1.0 + f.coefficient_norm()));
  }
}

TEST_CASE("term-wise differentiation") {
  CHECK(differentiate(TrigPoly::constant(4.0)).is_constant());
  CHECK(differentiate(TrigPoly::constant(4.0))(0.3) == 0.0);

  const TrigPoly d = differentiate(fixtures::single_well());
  for (double q : {0.0, 0.1, 0.37, 0.9}) CHECK(d(q) == Approx(std::cos(2 * pi * q)).epsilon(1e-14));

  const TrigPoly d2 = differentiate(differentiate(fixtures::two_well()));
  CHECK(d2(1.0 / 8.0) == Approx(6 * pi).epsilon(1e-13));
}

TEST_CASE("derivative matches central differences") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const TrigPoly f = oracle::random_trig(3, rng);
  const TrigPoly d = differentiate(f);
  const double step = 1e-5;
  for (int i = 0; i < 20; ++i) {
    const double q = u(rng);
    const double fd = (f(q + step) - f(q - step)) / (2 * step);
    CHECK(std::abs(fd - d(q)) <= 1e-6 * std::max(1.0, std::abs(d(q))));
  }
}

TEST_CASE("critical points of the two-well potential") {
  const auto qs = critical_points(fixtures::two_well());
  const double s = std::asin(0.25) / (2 * pi);
  std::vector<double> expected{1.0 / 8.0, 3.0 / 8.0 - s, 5.0 / 8.0, 7.0 / 8.0 + s};
  REQUIRE(qs.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(qs[i] == Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("critical points of sin(2 pi q)/(2 pi)") {
  const auto qs = critical_points(fixtures::single_well());
  REQUIRE(qs.size() == 2);
  CHECK(qs[0] == Approx(0.25).epsilon(1e-13));
  CHECK(qs[1] == Approx(0.75).epsilon(1e-13));
}

TEST_CASE("root completeness against a dense sign-change scan") {
  std::mt19937 rng(2024);
  int tested = 0;
  for (int trial = 0; trial < 40 && tested < 15; ++trial) {
    const TrigPoly f = oracle::random_trig(3, rng);
    std::vector<double> qs;
    try {
      qs = critical_points(f);
    } catch (const Error&) {
      continue;
    }
    ++tested;
    const TrigPoly d = differentiate(f);
    double sup = 0.0;
    for (int i = 0; i < 4096; ++i) sup = std::max(sup, std::abs(d(i / 4096.0)));
    CHECK(qs.size() % 2 == 0);
    CHECK(static_cast<int>(qs.size()) <= 2 * f.max_harmonic());
    for (double q : qs) {
      CHECK(std::abs(d(q)) < 1e-10 * sup);
      CHECK(q >= 0.0);
      CHECK(q < 1.0);
    }
    const auto changes = oracle::sign_changes(d, 100000);
    CHECK(changes.size() == qs.size());
    for (double c : changes) {
      double best = 1.0;
      for (double q : qs) best = std::min(best, oracle::circle_distance(c, q));
      CHECK(best < 1e-5);
    }
  }
  CHECK(tested >= 10);
}

TEST_CASE("morse data of the two-well potential") {
  const MorseData md = morse_data(fixtures::two_well());
  CHECK(md.n == 2);
  CHECK(md.label_offset == 0);
  const double curv[] = {6 * pi, -7.5 * pi, 10 * pi, -7.5 * pi};
  for (int j = 1; j <= 4; ++j) {
    CHECK(md.point(j).curvature == Approx(curv[j - 1]).epsilon(1e-12));
    CHECK((md.point(j).kind == CriticalKind::Minimum) == (j % 2 == 1));
  }
  CHECK(md.point(1).value == Approx(0.0).epsilon(1e-14));
  CHECK(md.point(3).value == Approx(-1.0 / pi).epsilon(1e-13));
  CHECK(md.point(5).q == md.point(1).q);
  CHECK(md.lifted_q(5) == Approx(md.point(1).q + 1.0));
  CHECK(md.gap_before(1) == Approx(md.point(1).q + 1.0 - md.point(4).q));
}

TEST_CASE("morse data of sin(2 pi q)/(2 pi) starts at the minimum") {
  const MorseData md = morse_data(fixtures::single_well());
  CHECK(md.n == 1);
  CHECK(md.label_offset == 1);
  CHECK(md.point(1).q == Approx(0.75));
  CHECK(md.point(1).curvature == Approx(2 * pi));
  CHECK(md.point(2).q == Approx(0.25));
  CHECK(md.point(2).curvature == Approx(-2 * pi));
  CHECK(md.gap_before(2) == Approx(0.5));
}

TEST_CASE("minima and maxima come in equal numbers") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    try {
      const MorseData md = morse_data(oracle::random_trig(3, rng));
      int minima = 0, maxima = 0;
      for (const auto& p : md.points) (p.kind == CriticalKind::Minimum ? minima : maxima)++;
      CHECK(minima == maxima);
      CHECK(minima == md.n);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateCritical);
    }
  }
}

TEST_CASE("rotation invariance of the critical values") {
  const TrigPoly f = fixtures::three_well();
  const MorseData base = morse_data(f);
  for (double c : {0.13, 0.5, 0.71}) {
    const MorseData shifted = morse_data(f.shifted(c));
    REQUIRE(shifted.n == base.n);
    auto sorted = [](const MorseData& md) {
      std::vector<std::pair<double, double>> v;
      for (const auto& p : md.points) v.emplace_back(p.value, p.curvature);
      std::sort(v.begin(), v.end());
      return v;
    };
    const auto a = sorted(base), b = sorted(shifted);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].first == Approx(b[i].first).epsilon(1e-11));
      CHECK(a[i].second == Approx(b[i].second).epsilon(1e-10));
    }
  }
}

TEST_CASE("degenerate and constant potentials are rejected") {
  // f' = -2 pi sin(2 pi q) (1 - cos 2 pi q) has a triple zero at q = 0.
  const TrigPoly cubic({0.0, 1.0, -0.25}, {0.0, 0.0});
  CHECK(code_of([&] { critical_points(cubic); }) == ErrorCode::DegenerateCritical);
  CHECK(code_of([&] { critical_points(TrigPoly::constant(1.0)); }) == ErrorCode::NoCriticalPoints);
}

TEST_CASE("potential JSON") {
  const TrigPoly f = potential_from_json(R"({"a": [1, 2], "b": [3]})");
  CHECK(f.a(0) == 1.0);
  CHECK(f.a(1) == 2.0);
  CHECK(f.b(1) == 3.0);
  const TrigPoly g = potential_from_json(potential_to_json(fixtures::two_well()));
  for (int m = 0; m <= 2; ++m) {
    CHECK(g.a(m) == fixtures::two_well().a(m));
    CHECK(g.b(m) == fixtures::two_well().b(m));
  }
  const TrigPoly padded = potential_from_json(R"({"a": [0], "b": [0, 1]})");
  CHECK(padded.max_harmonic() == 2);

  CHECK(code_of([] { potential_from_json(R"({"a": [NaN]})"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { potential_from_json(R"({"a": ["x"]})"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { potential_from_json(R"({"b": [1]})"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { potential_from_json("[1, 2]"); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { potential_from_json(R"({"a": [1e999]})"); }) == ErrorCode::InvalidInput);
}
