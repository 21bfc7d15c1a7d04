#include "witten/transseries.hpp"

#include "witten/errors.hpp"
#include "witten/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace witten {

namespace {

constexpr double kRateRelTol = 1e-9;
constexpr double kDropRelTol = 1e-14;

cplx ipow(cplx x, int n) {
  if (n == 0) return 1.0;
  if (n < 0) return 1.0 / ipow(x, -n);
  cplx result = 1.0;
  while (n > 0) {
    if (n & 1) result *= x;
    x *= x;
    n >>= 1;
  }
  return result;
}

bool canonical_less(const TransTerm& x, const TransTerm& y) {
  if (x.e_deg != y.e_deg) return x.e_deg < y.e_deg;
  if (x.rate != y.rate) return x.rate > y.rate;
  return x.h2_pow < y.h2_pow;
}

std::vector<double> binomial_row(int d) {
  std::vector<double> row(d + 1, 1.0);
  for (int i = 1; i < d; ++i) row[i] = row[i - 1] * (d - i + 1) / i;
  return row;
}

}  // namespace

bool rates_equal(double r1, double r2) {
  return std::abs(r1 - r2) <= kRateRelTol * (1.0 + std::max(std::abs(r1), std::abs(r2)));
}

cplx TransTerm::evaluate(cplx E, double h) const {
  return coeff * ipow(E, e_deg) * std::pow(h, 0.5 * h2_pow) * std::exp(rate / h);
}

cplx TransTerm::evaluate_scaled(cplx E, double h, double reference_rate) const {
  return coeff * ipow(E, e_deg) * std::pow(h, 0.5 * h2_pow) * std::exp((rate - reference_rate) / h);
}

TransTerm operator*(const TransTerm& x, const TransTerm& y) {
  return TransTerm{x.coeff * y.coeff, x.e_deg + y.e_deg, x.h2_pow + y.h2_pow, x.rate + y.rate};
}

TransTerm inverse(const TransTerm& t) {
  if (t.coeff == cplx(0.0)) throw Error(ErrorCode::InvalidInput, "transseries", "inverse of a zero term");
  return TransTerm{1.0 / t.coeff, -t.e_deg, -t.h2_pow, -t.rate};
}

std::vector<TransTerm> canonicalize(std::vector<TransTerm> terms) {
  for (const auto& t : terms) {
    if (!std::isfinite(t.rate) || !std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
      throw Error(ErrorCode::InvalidInput, "transseries", "non-finite term");
    }
  }
  std::erase_if(terms, [](const TransTerm& t) { return t.coeff == cplx(0.0); });
  std::sort(terms.begin(), terms.end(), [](const TransTerm& x, const TransTerm& y) {
    if (x.e_deg != y.e_deg) return x.e_deg < y.e_deg;
    if (x.h2_pow != y.h2_pow) return x.h2_pow < y.h2_pow;
    return x.rate > y.rate;
  });

  std::vector<TransTerm> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (!merged.empty()) {
      auto& last = merged.back();
      if (last.e_deg == t.e_deg && last.h2_pow == t.h2_pow && rates_equal(last.rate, t.rate)) {
        last.coeff += t.coeff;
        continue;
      }
    }
    merged.push_back(t);
  }

  double max_abs = 0.0;
  for (const auto& t : merged) max_abs = std::max(max_abs, std::abs(t.coeff));
  const double floor = kDropRelTol * max_abs;
  std::erase_if(merged, [floor](const TransTerm& t) {
    return t.coeff == cplx(0.0) || std::abs(t.coeff) < floor;
  });
  std::sort(merged.begin(), merged.end(), canonical_less);
  return merged;
}

bool is_canonical(std::span<const TransTerm> terms) {
  double max_abs = 0.0;
  for (const auto& t : terms) max_abs = std::max(max_abs, std::abs(t.coeff));
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coeff == cplx(0.0) || std::abs(terms[i].coeff) < kDropRelTol * max_abs) return false;
    if (i > 0 && !canonical_less(terms[i - 1], terms[i])) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (terms[i].e_deg == terms[j].e_deg && terms[i].h2_pow == terms[j].h2_pow &&
          rates_equal(terms[i].rate, terms[j].rate)) {
        return false;
      }
    }
  }
  return true;
}

TransSeries::TransSeries(std::vector<TransTerm> terms) : terms_(canonicalize(std::move(terms))) {}

TransSeries::TransSeries(const TransTerm& term) : terms_(canonicalize({term})) {}

int TransSeries::min_degree() const {
  if (terms_.empty()) throw Error(ErrorCode::EmptySeries, "transseries", "min_degree of empty series");
  return terms_.front().e_deg;
}

int TransSeries::max_degree() const {
  if (terms_.empty()) throw Error(ErrorCode::EmptySeries, "transseries", "max_degree of empty series");
  return terms_.back().e_deg;
}

double TransSeries::max_rate() const {
  if (terms_.empty()) throw Error(ErrorCode::EmptySeries, "transseries", "max_rate of empty series");
  double r = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms_) r = std::max(r, t.rate);
  return r;
}

double TransSeries::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

TransSeries TransSeries::degree_block(int d) const {
  TransSeries out;
  for (const auto& t : terms_) {
    if (t.e_deg == d) out.terms_.push_back(t);
  }
  return out;
}

TransSeries TransSeries::without_degree(int d) const {
  TransSeries out;
  for (const auto& t : terms_) {
    if (t.e_deg != d) out.terms_.push_back(t);
  }
  return out;
}

cplx TransSeries::evaluate(cplx E, double h) const {
  cplx s = 0.0;
  for (const auto& t : terms_) s += t.evaluate(E, h);
  return s;
}

cplx TransSeries::evaluate_scaled(cplx E, double h, double reference_rate) const {
  cplx s = 0.0;
  for (const auto& t : terms_) s += t.evaluate_scaled(E, h, reference_rate);
  return s;
}

double TransSeries::max_term_scaled(cplx E, double h, double reference_rate) const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.evaluate_scaled(E, h, reference_rate)));
  return m;
}

TransSeries& TransSeries::operator+=(const TransSeries& other) {
  std::vector<TransTerm> all(terms_);
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  terms_ = canonicalize(std::move(all));
  return *this;
}

TransSeries& TransSeries::operator-=(const TransSeries& other) { return *this += -other; }

TransSeries& TransSeries::operator*=(const TransSeries& other) {
  std::vector<TransTerm> prod;
  prod.reserve(terms_.size() * other.terms_.size());
  for (const auto& x : terms_) {
    for (const auto& y : other.terms_) prod.push_back(x * y);
  }
  terms_ = canonicalize(std::move(prod));
  return *this;
}

TransSeries operator+(TransSeries a, const TransSeries& b) { return a += b; }
TransSeries operator-(TransSeries a, const TransSeries& b) { return a -= b; }
TransSeries operator*(const TransSeries& a, const TransSeries& b) {
  TransSeries out = a;
  out *= b;
  return out;
}

TransSeries operator-(const TransSeries& a) {
  std::vector<TransTerm> neg(a.terms().begin(), a.terms().end());
  for (auto& t : neg) t.coeff = -t.coeff;
  return TransSeries(std::move(neg));
}

TransSeries arithmetic(const TransSeries& a, const TransSeries& b, SeriesOp op) {
  return op == SeriesOp::Add ? a + b : a * b;
}

TransTerm leading_term(const TransSeries& ts) {
  if (ts.empty()) throw Error(ErrorCode::EmptySeries, "transseries", "leading term of empty series");
  const double top = ts.max_rate();
  const TransTerm* best = nullptr;
  for (const auto& t : ts.terms()) {
    if (!rates_equal(t.rate, top)) continue;
    if (best == nullptr || t.e_deg < best->e_deg || (t.e_deg == best->e_deg && t.h2_pow < best->h2_pow)) {
      best = &t;
    }
  }
  return *best;
}

ClearedSeries clear_denominators(const TransSeries& ts) {
  if (ts.empty() || ts.min_degree() >= 0) return {ts, TransTerm{}};
  const int m = ts.min_degree();
  double r = -std::numeric_limits<double>::infinity();
  for (const auto& t : ts.terms()) {
    if (t.e_deg == m) r = std::max(r, t.rate);
  }
  const TransTerm shift{1.0, -m, 0, -r};
  return {ts * TransSeries(shift), shift};
}

TransSeries shear_substitute(const TransSeries& ts, double k, int h2_shift) {
  std::vector<TransTerm> out(ts.terms().begin(), ts.terms().end());
  for (auto& t : out) {
    t.rate -= k * t.e_deg;
    t.h2_pow += h2_shift * t.e_deg;
  }
  return TransSeries(std::move(out));
}

TransSeries shift_substitute(const TransSeries& ts, cplx r) {
  std::vector<TransTerm> out;
  for (const auto& t : ts.terms()) {
    if (t.e_deg < 0) {
      throw Error(ErrorCode::NegativeDegree, "transseries", "shift_substitute needs nonnegative degrees");
    }
    if (r == cplx(0.0)) {
      out.push_back(t);
      continue;
    }
    const auto binom = binomial_row(t.e_deg);
    cplx rpow = 1.0;  // r^(d-i), built from i = d downwards
    for (int i = t.e_deg; i >= 0; --i) {
      out.push_back(TransTerm{t.coeff * binom[i] * rpow, i, t.h2_pow, t.rate});
      rpow *= r;
    }
  }
  return TransSeries(std::move(out));
}

std::string transseries_to_json(const TransSeries& ts) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& t : ts.terms()) {
    nlohmann::ordered_json j;
    j["re"] = t.coeff.real();
    j["im"] = t.coeff.imag();
    j["e"] = t.e_deg;
    j["h2"] = t.h2_pow;
    j["rate"] = t.rate;
    terms.push_back(std::move(j));
  }
  nlohmann::ordered_json root;
  root["terms"] = std::move(terms);
  return dump_json(root);
}

TransSeries transseries_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, "transseries", std::string("malformed JSON: ") + e.what());
  }
  const nlohmann::json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("terms")) throw Error(ErrorCode::InvalidInput, "transseries", "missing \"terms\"");
    arr = &j["terms"];
  }
  if (!arr->is_array()) throw Error(ErrorCode::InvalidInput, "transseries", "terms must be an array");
  std::vector<TransTerm> terms;
  for (const auto& item : *arr) {
    if (!item.is_object()) throw Error(ErrorCode::InvalidInput, "transseries", "term must be an object");
    auto num = [&](const char* key, double fallback) {
      if (!item.contains(key)) return fallback;
      if (!item[key].is_number()) throw Error(ErrorCode::InvalidInput, "transseries", std::string("field ") + key + " is not numeric");
      return item[key].get<double>();
    };
    auto integer = [&](const char* key) {
      if (!item.contains(key)) return 0;
      if (!item[key].is_number_integer()) throw Error(ErrorCode::InvalidInput, "transseries", std::string("field ") + key + " must be an integer");
      return item[key].get<int>();
    };
    TransTerm t;
    t.coeff = cplx(num("re", 0.0), num("im", 0.0));
    t.e_deg = integer("e");
    t.h2_pow = integer("h2");
    t.rate = num("rate", 0.0);
    terms.push_back(t);
  }
  return TransSeries(std::move(terms));
}

}  // namespace witten
