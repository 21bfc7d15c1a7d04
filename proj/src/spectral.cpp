#include "witten/spectral.hpp"

#include "witten/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

namespace witten {

namespace {

constexpr double kPi = std::numbers::pi;

int worker_count(std::size_t jobs) {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WITTEN_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = static_cast<unsigned>(v);
  }
  return static_cast<int>(std::min<std::size_t>(cap, std::max<std::size_t>(jobs, 1)));
}

// Number of eigenvalues of the tridiagonal matrix strictly below x.
int sturm_count(const Tridiagonal& t, double x, double pivot_floor) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double coupling = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    q = t.diag[i] - x - (i == 0 ? 0.0 : coupling / q);
    if (std::abs(q) < pivot_floor) q = -pivot_floor;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

SymmetricMatrix spectral_d2(int N) {
  if (N < 2 || N % 2 != 0) throw Error(ErrorCode::InvalidInput, "spectral", "grid size must be even");
  SymmetricMatrix d(N);
  const double dx = 2.0 * kPi / N;
  const double period_scale = 4.0 * kPi * kPi;
  for (int i = 0; i < N; ++i) {
    d.at(i, i) = period_scale * (-kPi * kPi / (3.0 * dx * dx) - 1.0 / 6.0);
    for (int j = 0; j < i; ++j) {
      const int k = i - j;
      const double s = std::sin(0.5 * k * dx);
      d.at(i, j) = period_scale * (k % 2 == 0 ? -1.0 : 1.0) / (2.0 * s * s);
    }
  }
  return d;
}

double OperatorMatrix::scale() const { return potential_norm + h * h * kPi * kPi * N * N; }

int minimum_grid(const TrigPoly& f) { return 8 * (2 * f.max_harmonic() + 1); }

OperatorMatrix build_operator(const TrigPoly& f, double h, int N) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidInput, "spectral", "h must be positive");
  if (N % 2 != 0 || N < minimum_grid(f)) {
    throw Error(ErrorCode::GridTooCoarse, "spectral",
                "grid N=" + std::to_string(N) + " must be even and at least " + std::to_string(minimum_grid(f)));
  }
  const TrigPoly d1 = differentiate(f);
  const TrigPoly d2 = differentiate(d1);
  OperatorMatrix op;
  op.N = N;
  op.h = h;
  op.entries = spectral_d2(N);
  op.potential.resize(N);
  for (int i = 0; i < N; ++i) {
    const double q = static_cast<double>(i) / N;
    const double slope = d1(q);
    op.potential[i] = slope * slope - h * d2(q);
    op.potential_norm = std::max(op.potential_norm, std::abs(op.potential[i]));
  }
  const double h2 = h * h;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j <= i; ++j) op.entries.at(i, j) *= -h2;
    op.entries.at(i, i) += op.potential[i];
  }
  return op;
}

Tridiagonal householder_tridiagonalize(const SymmetricMatrix& m) {
  const int n = m.size();
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = m(i, j);
  }

  Tridiagonal t;
  t.diag.resize(n);
  t.off.resize(n > 0 ? n - 1 : 0);
  std::vector<double> v(n), p(n);
  for (int k = 0; k + 2 < n; ++k) {
    double norm2 = 0.0;
    for (int i = k + 1; i < n; ++i) norm2 += A(i, k) * A(i, k);
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) {
      t.off[k] = 0.0;
      continue;
    }
    const double x0 = A(k + 1, k);
    const double alpha = x0 > 0 ? -norm : norm;
    for (int i = k + 1; i < n; ++i) v[i] = A(i, k);
    v[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) {
      t.off[k] = alpha;
      continue;
    }
    const double inv = 1.0 / std::sqrt(vnorm2);
    for (int i = k + 1; i < n; ++i) v[i] *= inv;

    // A <- H A H on the trailing block, H = I - 2 v v^T.
    double kdot = 0.0;
    for (int i = k + 1; i < n; ++i) {
      double s = 0.0;
      for (int j = k + 1; j < n; ++j) s += A(i, j) * v[j];
      p[i] = s;
      kdot += v[i] * s;
    }
    for (int i = k + 1; i < n; ++i) p[i] -= kdot * v[i];
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) A(i, j) -= 2.0 * (v[i] * p[j] + p[i] * v[j]);
    }
    t.off[k] = alpha;
  }
  for (int i = 0; i < n; ++i) t.diag[i] = A(i, i);
  if (n >= 2) t.off[n - 2] = A(n - 1, n - 2);
  return t;
}

std::vector<double> smallest_eigs(const SymmetricMatrix& a, int m) {
  const int n = a.size();
  if (m < 1 || m > n) throw Error(ErrorCode::InvalidInput, "spectral", "requested eigenvalue count out of range");
  const Tridiagonal t = householder_tridiagonalize(a);

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double norm = std::max(std::abs(lo), std::abs(hi));
  const double pivot_floor = std::max(norm, 1.0) * std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  const double eps = std::numeric_limits<double>::epsilon();
  // Bisection halves the bracket each step; 10 N sweeps is already far more
  // than the ~110 needed for full precision once N is moderately large.
  const int cap = std::max(10 * n, 256);

  std::vector<double> out;
  out.reserve(m);
  for (int k = 0; k < m; ++k) {
    double a_lo = lo, b_hi = hi;
    int it = 0;
    while (true) {
      const double mid = 0.5 * (a_lo + b_hi);
      if (mid <= a_lo || mid >= b_hi || b_hi - a_lo <= 2.0 * eps * (std::abs(a_lo) + std::abs(b_hi)) + 1e-300) break;
      if (sturm_count(t, mid, pivot_floor) > k) {
        b_hi = mid;
      } else {
        a_lo = mid;
      }
      if (++it > cap) throw Error(ErrorCode::ConvergenceFailure, "spectral", "bisection did not converge");
    }
    out.push_back(0.5 * (a_lo + b_hi));
  }
  return out;
}

std::vector<double> smallest_eigs(const OperatorMatrix& a, int m) { return smallest_eigs(a.entries, m); }

DecayFit decay_fit(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 3) throw Error(ErrorCode::InvalidInput, "decay_fit", "need at least three samples");
  std::vector<std::pair<double, double>> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  std::vector<double> x, y;
  for (const auto& [h, lambda] : s) {
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidInput, "decay_fit", "h must be positive");
    if (!(lambda > 0.0)) {
      throw Error(ErrorCode::NonPositiveEigenvalue, "decay_fit", "eigenvalue " + std::to_string(lambda) + " is not positive");
    }
    x.push_back(1.0 / h);
    y.push_back(std::log(lambda) - std::log(h));
  }
  const double count = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InvalidInput, "decay_fit", "samples need distinct h");
  DecayFit fit;
  fit.rate = -sxy / sxx;
  fit.logA = my + fit.rate * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.residual = std::max(fit.residual, std::abs(y[i] - (fit.logA - fit.rate * x[i])));
  }
  return fit;
}

std::vector<SpectrumSample> spectrum_sweep(const TrigPoly& f, std::span<const double> h_list, int N, int m) {
  std::vector<SpectrumSample> out(h_list.size());
  std::vector<std::exception_ptr> errors(h_list.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < h_list.size(); i = next++) {
      try {
        const OperatorMatrix op = build_operator(f, h_list[i], N);
        out[i] = SpectrumSample{h_list[i], N, smallest_eigs(op, m), op.scale()};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = worker_count(h_list.size());
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

VerifyReport verify_asymptotics(const TrigPoly& f, std::span<const EigenAsym> asym, std::span<const double> h_list,
                                int N, bool strict) {
  if (asym.empty()) throw Error(ErrorCode::InvalidInput, "verify", "no asymptotic eigenvalues given");
  std::vector<double> hs(h_list.begin(), h_list.end());
  std::sort(hs.begin(), hs.end(), std::greater<>());
  VerifyReport report;
  report.n = static_cast<int>(asym.size());
  const auto samples = spectrum_sweep(f, hs, N, report.n + 2);

  report.counts_ok = true;
  report.zero_modes_ok = true;
  for (const auto& s : samples) {
    VerifyRow row;
    row.h = s.h;
    row.N = s.N;
    row.threshold = std::pow(s.h, 1.5);
    row.eigenvalues = s.eigenvalues;
    for (double lambda : s.eigenvalues) {
      if (lambda < row.threshold) ++row.count_below;
    }
    row.count_ok = row.count_below == report.n;
    row.zero_mode_ok = std::abs(s.eigenvalues.front()) < 1e-9 * s.scale;
    for (const auto& a : asym) {
      if (!a.is_zero_mode) row.asym.push_back(a.leading(s.h));
    }
    std::sort(row.asym.begin(), row.asym.end());
    for (std::size_t i = 0; i < row.asym.size(); ++i) row.ratios.push_back(row.eigenvalues[i + 1] / row.asym[i]);
    report.counts_ok = report.counts_ok && row.count_ok;
    report.zero_modes_ok = report.zero_modes_ok && row.zero_mode_ok;
    report.rows.push_back(std::move(row));
  }

  const std::size_t modes = report.rows.empty() ? 0 : report.rows.front().ratios.size();
  for (std::size_t m = 0; m < modes; ++m) {
    bool ok = true;
    for (std::size_t r = 1; r < report.rows.size(); ++r) {
      ok = ok && std::abs(report.rows[r].ratios[m] - 1.0) < std::abs(report.rows[r - 1].ratios[m] - 1.0);
    }
    report.trend_ok.push_back(ok);
  }

  if (strict && !report.counts_ok) {
    for (const auto& row : report.rows) {
      if (!row.count_ok) {
        throw Error(ErrorCode::CountMismatch, "verify",
                    "h=" + std::to_string(row.h) + ": " + std::to_string(row.count_below) + " eigenvalues below h^(3/2), expected " +
                        std::to_string(report.n));
      }
    }
  }
  return report;
}

}  // namespace witten
