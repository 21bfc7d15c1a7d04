#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace witten {

using cplx = std::complex<double>;

/// coeff * E^e_deg * h^(h2_pow/2) * exp(rate/h). Exponentially small iff rate < 0.
struct TransTerm {
  cplx coeff = 1.0;
  int e_deg = 0;
  int h2_pow = 0;
  double rate = 0.0;

  cplx evaluate(cplx E, double h) const;
  /// evaluate(E, h) * exp(-reference_rate / h), without overflow in the exponential.
  cplx evaluate_scaled(cplx E, double h, double reference_rate) const;

  friend bool operator==(const TransTerm&, const TransTerm&) = default;
};

TransTerm operator*(const TransTerm& x, const TransTerm& y);
TransTerm inverse(const TransTerm& t);

/// Like-term rate tolerance: 1e-9 * (1 + |rate|).
bool rates_equal(double r1, double r2);

/// Finite sum of TransTerms in canonical form: sorted by (e_deg asc, rate desc,
/// h2_pow asc), like terms (same e_deg and h2_pow, equal rates) merged, and
/// coefficients below 1e-14 * max|coeff| dropped.
class TransSeries {
 public:
  TransSeries() = default;
  explicit TransSeries(std::vector<TransTerm> terms);
  TransSeries(const TransTerm& term);  // NOLINT: a term is a one-element series

  static TransSeries constant(cplx c) { return TransSeries(TransTerm{c, 0, 0, 0.0}); }

  std::span<const TransTerm> terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  int min_degree() const;
  int max_degree() const;
  double max_rate() const;
  double max_abs_coeff() const noexcept;

  /// Terms with e_deg == d (as a series).
  TransSeries degree_block(int d) const;
  /// *this with the e_deg == d block removed.
  TransSeries without_degree(int d) const;

  cplx evaluate(cplx E, double h) const;
  cplx evaluate_scaled(cplx E, double h, double reference_rate) const;
  /// max_k |term_k(E, h)| * exp(-reference_rate / h)
  double max_term_scaled(cplx E, double h, double reference_rate) const;

  TransSeries& operator+=(const TransSeries& other);
  TransSeries& operator-=(const TransSeries& other);
  TransSeries& operator*=(const TransSeries& other);

  friend bool operator==(const TransSeries&, const TransSeries&) = default;

 private:
  std::vector<TransTerm> terms_;
};

TransSeries operator+(TransSeries a, const TransSeries& b);
TransSeries operator-(TransSeries a, const TransSeries& b);
TransSeries operator*(const TransSeries& a, const TransSeries& b);
TransSeries operator-(const TransSeries& a);

enum class SeriesOp { Add, Mul };
TransSeries arithmetic(const TransSeries& a, const TransSeries& b, SeriesOp op);

/// Merge, drop and sort a raw term list into canonical form.
std::vector<TransTerm> canonicalize(std::vector<TransTerm> terms);
bool is_canonical(std::span<const TransTerm> terms);

/// Leftmost term of maximal rate (the right end of the rightmost
/// positive-slope polygon edge); ties broken by minimal h2_pow.
TransTerm leading_term(const TransSeries& ts);

struct ClearedSeries {
  TransSeries series;  // ts * shift, all e_deg >= 0
  TransTerm shift;
};

/// Multiplies by E^(-min e_deg) * exp(-r/h), r the largest rate in the
/// minimal-degree block, so that all degrees become nonnegative.
ClearedSeries clear_denominators(const TransSeries& ts);

/// E = h^(h2_shift/2) exp(-k/h) E0: rates drop by k*e_deg, h2_pow grows by h2_shift*e_deg.
TransSeries shear_substitute(const TransSeries& ts, double k, int h2_shift = 0);

/// E = r + E1, expanded binomially. Requires all e_deg >= 0.
TransSeries shift_substitute(const TransSeries& ts, cplx r);

/// Terms as {"re", "im", "e", "h2", "rate"}; the series as {"terms": [...]}.
std::string transseries_to_json(const TransSeries& ts);
/// Accepts {"terms": [...]} or a bare array of terms.
TransSeries transseries_from_json(std::string_view text);

}  // namespace witten
