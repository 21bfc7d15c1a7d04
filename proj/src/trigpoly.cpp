#include "witten/trigpoly.hpp"

#include "witten/errors.hpp"
#include "witten/roots.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace witten {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMorseRelThreshold = 1e-6;
constexpr double kDedupDistance = 1e-10;
constexpr int kCurvatureSamples = 4096;

double wrap_unit(double q) {
  double w = q - std::floor(q);
  return w >= 1.0 ? 0.0 : w;
}

double sampled_sup(const TrigPoly& g) {
  double best = 0.0;
  for (int i = 0; i < kCurvatureSamples; ++i) {
    best = std::max(best, std::abs(g(static_cast<double>(i) / kCurvatureSamples)));
  }
  return best;
}

}  // namespace

TrigPoly::TrigPoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
  const std::size_t m = std::max(cos_coeffs.empty() ? 0 : cos_coeffs.size() - 1, sin_coeffs.size());
  cos_.assign(m + 1, 0.0);
  sin_.assign(m + 1, 0.0);
  std::copy(cos_coeffs.begin(), cos_coeffs.end(), cos_.begin());
  std::copy(sin_coeffs.begin(), sin_coeffs.end(), sin_.begin() + 1);
  for (double v : cos_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "trigpoly", "non-finite cosine coefficient");
  }
  for (double v : sin_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "trigpoly", "non-finite sine coefficient");
  }
}

std::complex<double> TrigPoly::operator()(std::complex<double> q) const {
  std::complex<double> s = cos_[0];
  for (int m = 1; m <= max_harmonic(); ++m) {
    const std::complex<double> x = kTwoPi * m * q;
    s += cos_[m] * std::cos(x) + sin_[m] * std::sin(x);
  }
  return s;
}

double TrigPoly::operator()(double q) const {
  double s = cos_[0];
  for (int m = 1; m <= max_harmonic(); ++m) {
    const double x = kTwoPi * m * q;
    s += cos_[m] * std::cos(x) + sin_[m] * std::sin(x);
  }
  return s;
}

int TrigPoly::effective_harmonic() const noexcept {
  for (int m = max_harmonic(); m >= 1; --m) {
    if (cos_[m] != 0.0 || sin_[m] != 0.0) return m;
  }
  return 0;
}

TrigPoly TrigPoly::shifted(double c) const {
  // cos(w(q+c)) = cos wq cos wc - sin wq sin wc, sin(w(q+c)) = sin wq cos wc + cos wq sin wc
  std::vector<double> a(cos_.size()), b(max_harmonic());
  a[0] = cos_[0];
  for (int m = 1; m <= max_harmonic(); ++m) {
    const double cw = std::cos(kTwoPi * m * c), sw = std::sin(kTwoPi * m * c);
    a[m] = cos_[m] * cw + sin_[m] * sw;
    b[m - 1] = sin_[m] * cw - cos_[m] * sw;
  }
  return TrigPoly(std::move(a), std::move(b));
}

TrigPoly TrigPoly::scaled(double s) const {
  std::vector<double> a(cos_), b(sin_.begin() + 1, sin_.end());
  for (double& v : a) v *= s;
  for (double& v : b) v *= s;
  return TrigPoly(std::move(a), std::move(b));
}

TrigPoly TrigPoly::plus_constant(double c) const {
  std::vector<double> a(cos_), b(sin_.begin() + 1, sin_.end());
  a[0] += c;
  return TrigPoly(std::move(a), std::move(b));
}

double TrigPoly::coefficient_norm() const noexcept {
  double s = std::abs(cos_[0]);
  for (int m = 1; m <= max_harmonic(); ++m) s += std::abs(cos_[m]) + std::abs(sin_[m]);
  return s;
}

std::complex<double> eval(const TrigPoly& f, std::complex<double> q) { return f(q); }

TrigPoly differentiate(const TrigPoly& f) {
  const int M = f.max_harmonic();
  std::vector<double> a(M + 1, 0.0), b(M, 0.0);
  for (int m = 1; m <= M; ++m) {
    a[m] = kTwoPi * m * f.b(m);
    b[m - 1] = -kTwoPi * m * f.a(m);
  }
  return TrigPoly(std::move(a), std::move(b));
}

std::vector<double> critical_points(const TrigPoly& f, double tol) {
  const TrigPoly d1 = differentiate(f);
  const TrigPoly d2 = differentiate(d1);
  const int M = d1.effective_harmonic();
  if (M == 0) throw Error(ErrorCode::NoCriticalPoints, "trigpoly", "constant potential has no isolated critical points");

  // z^M f'(q): coefficient of z^(M+m) is (A_m - i B_m)/2, of z^(M-m) is (A_m + i B_m)/2.
  std::vector<roots::cplx> poly(2 * M + 1, 0.0);
  for (int m = 1; m <= M; ++m) {
    const double A = d1.a(m), B = d1.b(m);
    poly[M + m] = roots::cplx(A, -B) * 0.5;
    poly[M - m] = roots::cplx(A, B) * 0.5;
  }
  const auto zs = roots::polynomial_roots(poly);

  const double curvature_scale = sampled_sup(d2);
  const double slope_scale = std::max(sampled_sup(d1), d1.coefficient_norm() * 1e-3);

  auto newton = [&](double q) {
    for (int it = 0; it < 50; ++it) {
      const double g = d1(q), dg = d2(q);
      if (dg == 0.0) break;
      const double step = g / dg;
      q -= step;
      if (std::abs(step) < 1e-16) break;
    }
    return wrap_unit(q);
  };

  std::vector<double> found;
  for (const auto& z : zs) {
    const double radius_defect = std::abs(std::abs(z) - 1.0);
    const double q0 = wrap_unit(std::arg(z) / kTwoPi);
    if (radius_defect < tol) {
      found.push_back(newton(q0));
    } else if (radius_defect < 1e-4) {
      // A real double zero of f' splits off the unit circle by ~sqrt(eps).
      if (std::abs(d1(q0)) < 1e-6 * slope_scale && std::abs(d2(q0)) < kMorseRelThreshold * curvature_scale * 10.0) {
        throw Error(ErrorCode::DegenerateCritical, "trigpoly",
                    "near-double zero of f' at q=" + std::to_string(q0));
      }
    }
  }
  if (found.empty()) throw Error(ErrorCode::NoCriticalPoints, "trigpoly", "f' has no real zeros");

  std::sort(found.begin(), found.end());
  std::vector<double> unique;
  for (double q : found) {
    if (unique.empty() || q - unique.back() > kDedupDistance) unique.push_back(q);
  }
  if (unique.size() > 1 && unique.front() + 1.0 - unique.back() <= kDedupDistance) unique.pop_back();

  for (double q : unique) {
    if (std::abs(d2(q)) < kMorseRelThreshold * curvature_scale) {
      throw Error(ErrorCode::DegenerateCritical, "trigpoly",
                  "f'' vanishes at critical point q=" + std::to_string(q));
    }
  }
  return unique;
}

const CriticalPoint& MorseData::point(int label) const {
  const int count = static_cast<int>(points.size());
  const int idx = ((label - 1) % count + count) % count;
  return points[idx];
}

double MorseData::lifted_q(int label) const {
  const int count = static_cast<int>(points.size());
  const double q1 = points.front().q;
  const int k = label - 1;
  const int wraps = (k >= 0) ? k / count : -((-k + count - 1) / count);
  const double q = point(label).q;
  return q1 + (q - q1 - std::floor(q - q1)) + wraps;
}

double MorseData::gap_before(int label) const { return lifted_q(label) - lifted_q(label - 1); }

MorseData morse_data(const TrigPoly& f) {
  const auto qs = critical_points(f);
  const TrigPoly d2 = differentiate(differentiate(f));
  std::vector<CriticalPoint> pts;
  pts.reserve(qs.size());
  for (double q : qs) {
    CriticalPoint p;
    p.q = q;
    p.value = f(q);
    p.curvature = d2(q);
    p.kind = p.curvature > 0 ? CriticalKind::Minimum : CriticalKind::Maximum;
    pts.push_back(p);
  }
  const auto first_min = std::find_if(pts.begin(), pts.end(),
                                      [](const CriticalPoint& p) { return p.kind == CriticalKind::Minimum; });
  if (first_min == pts.end()) throw Error(ErrorCode::NotAlternating, "trigpoly", "no local minimum found");
  MorseData md;
  md.label_offset = static_cast<int>(first_min - pts.begin());
  std::rotate(pts.begin(), first_min, pts.end());

  const int count = static_cast<int>(pts.size());
  if (count % 2 != 0) throw Error(ErrorCode::NotAlternating, "trigpoly", "odd number of critical points");
  for (int i = 0; i < count; ++i) {
    const auto expected = (i % 2 == 0) ? CriticalKind::Minimum : CriticalKind::Maximum;
    if (pts[i].kind != expected) throw Error(ErrorCode::NotAlternating, "trigpoly", "critical points do not alternate");
    if (expected == CriticalKind::Maximum) {
      const auto& prev = pts[i - 1];
      const auto& next = pts[(i + 1) % count];
      if (!(pts[i].value > prev.value && pts[i].value > next.value)) {
        throw Error(ErrorCode::NotAlternating, "trigpoly", "maximum does not exceed its neighbours");
      }
    }
  }
  md.n = count / 2;
  md.points = std::move(pts);
  md.potential = f;
  return md;
}

TrigPoly potential_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, "potential", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("a") || !j["a"].is_array()) {
    throw Error(ErrorCode::InvalidInput, "potential", "expected object with array field \"a\"");
  }
  auto read = [](const nlohmann::json& arr, const char* name) {
    std::vector<double> out;
    for (const auto& v : arr) {
      if (!v.is_number()) throw Error(ErrorCode::InvalidInput, "potential", std::string("non-numeric entry in ") + name);
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw Error(ErrorCode::InvalidInput, "potential", std::string("non-finite entry in ") + name);
      out.push_back(x);
    }
    return out;
  };
  std::vector<double> a = read(j["a"], "a");
  if (a.empty()) throw Error(ErrorCode::InvalidInput, "potential", "\"a\" must contain at least a_0");
  std::vector<double> b;
  if (j.contains("b")) {
    if (!j["b"].is_array()) throw Error(ErrorCode::InvalidInput, "potential", "\"b\" must be an array");
    b = read(j["b"], "b");
  }
  if (b.size() + 1 > a.size()) a.resize(b.size() + 1, 0.0);
  if (b.size() + 1 < a.size()) b.resize(a.size() - 1, 0.0);
  return TrigPoly(std::move(a), std::move(b));
}

std::string potential_to_json(const TrigPoly& f) {
  nlohmann::ordered_json j;
  j["a"] = std::vector<double>(f.cos_coeffs().begin(), f.cos_coeffs().end());
  j["b"] = std::vector<double>(f.sin_coeffs().begin(), f.sin_coeffs().end());
  return j.dump();
}

}  // namespace witten
