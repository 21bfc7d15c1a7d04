#pragma once

#include "witten/transfer.hpp"
#include "witten/trigpoly.hpp"

#include <span>
#include <utility>
#include <vector>

namespace witten {

/// Dense real symmetric matrix, lower triangle stored once (packed rows).
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0) {}

  int size() const noexcept { return n_; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }
  double& at(int i, int j) { return data_[index(i, j)]; }

 private:
  std::size_t index(int i, int j) const {
    if (i < j) std::swap(i, j);
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  }

  int n_ = 0;
  std::vector<double> data_;
};

/// Spectral second-derivative matrix for 1-periodic functions on q_i = i/N (N even).
SymmetricMatrix spectral_d2(int N);

struct OperatorMatrix {
  int N = 0;
  double h = 0.0;
  double potential_norm = 0.0;  // max |V| on the grid
  std::vector<double> potential;
  SymmetricMatrix entries;

  /// Scale for roundoff-level statements about eigenvalues: |V|_inf + h^2 pi^2 N^2.
  double scale() const;
};

/// Grid factor: N must be even and at least 8 (2M + 1).
int minimum_grid(const TrigPoly& f);

/// -h^2 D2 + diag((f')^2 - h f'') on the uniform grid.
OperatorMatrix build_operator(const TrigPoly& f, double h, int N);

/// m smallest eigenvalues, ascending: Householder reduction to tridiagonal
/// form, then Sturm-count bisection for each eigenvalue.
std::vector<double> smallest_eigs(const SymmetricMatrix& a, int m);
std::vector<double> smallest_eigs(const OperatorMatrix& a, int m);

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i + 1
};
Tridiagonal householder_tridiagonalize(const SymmetricMatrix& a);

/// Fit of ln(lambda) - ln(h) = logA - rate / h.
struct DecayFit {
  double rate = 0.0;
  double logA = 0.0;
  double residual = 0.0;  // max |deviation| of the fit
};

/// samples are (h, lambda); at least three, all lambda > 0.
DecayFit decay_fit(std::span<const std::pair<double, double>> samples);

struct SpectrumSample {
  double h = 0.0;
  int N = 0;
  std::vector<double> eigenvalues;
  double scale = 0.0;
};

/// Smallest m eigenvalues for every h, computed in parallel (WITTEN_THREADS
/// caps the worker count). Output follows the order of h_list.
std::vector<SpectrumSample> spectrum_sweep(const TrigPoly& f, std::span<const double> h_list, int N, int m);

struct VerifyRow {
  double h = 0.0;
  int N = 0;
  double threshold = 0.0;           // h^(3/2)
  std::vector<double> eigenvalues;  // n + 2 smallest
  std::vector<double> asym;         // leading asymptotics of the n - 1 nonzero modes
  std::vector<double> ratios;       // numeric / asymptotic
  int count_below = 0;
  bool count_ok = false;
  bool zero_mode_ok = false;
};

struct VerifyReport {
  int n = 0;
  std::vector<VerifyRow> rows;      // in decreasing h
  std::vector<bool> trend_ok;       // per nonzero mode: |ratio - 1| decreases with h
  bool counts_ok = false;
  bool zero_modes_ok = false;
};

/// Numeric check of the asymptotic eigenvalues over an h-sweep. With strict,
/// a count failure at any h raises CountMismatch after the sweep.
VerifyReport verify_asymptotics(const TrigPoly& f, std::span<const EigenAsym> asym, std::span<const double> h_list,
                                int N, bool strict = true);

}  // namespace witten
