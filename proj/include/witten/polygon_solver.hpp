#pragma once

#include "witten/transseries.hpp"

#include <string>
#include <vector>

namespace witten {

/// Minimal-h-power representative of all terms sharing (e_deg, rate).
struct SupportPoint {
  int e_deg = 0;
  double rate = 0.0;
  cplx coeff;
  int h2_pow = 0;
  bool has_companions = false;  // higher h-powers at the same (e_deg, rate) were ignored
};

struct PolygonEdge {
  double slope = 0.0;
  int from = 0;  // indices into NewtonPolygon::points
  int to = 0;
};

/// Upper concave hull of the per-degree maximal support points. Its
/// positive-slope part is the boundary of the union of down-right quadrants;
/// edges beyond the maximal rate have slope <= 0 and carry no small roots.
struct NewtonPolygon {
  std::vector<SupportPoint> points;  // sorted by (e_deg asc, rate desc)
  std::vector<int> hull;             // vertex indices, left to right
  std::vector<PolygonEdge> edges;
  bool h_companions = false;

  std::vector<PolygonEdge> positive_edges() const;
  /// Height of the hull at degree j (linear interpolation; j inside the degree range).
  double hull_height(double j) const;
};

NewtonPolygon build_polygon(const TransSeries& ts);

/// Leading amplitude of a root family: E ~ root * h^(h2_pow/2) * exp(-slope/h).
struct EdgeRoot {
  double slope = 0.0;
  cplx root;
  int h2_pow = 0;
};

/// Roots of the edge polynomial A_0 + A_1 E0 + ... + A_m E0^m. The h-powers of
/// the endpoint coefficients fix the scaling E = h^(d/2) exp(-k/h) E0.
/// Throws DegenerateEdge on clustered roots or an unbalanced h structure.
std::vector<EdgeRoot> solve_edge(const NewtonPolygon& polygon, const PolygonEdge& edge);
std::vector<EdgeRoot> solve_edge(const TransSeries& ts, const PolygonEdge& edge);

/// One exponential level, cumulative: contributes coeff * h^(h2_pow/2) * exp(-rate/h).
struct SolutionLevel {
  double rate = 0.0;
  cplx coeff;
  int h2_pow = 0;
};

struct TransSolution {
  std::vector<SolutionLevel> levels;
  bool exact_termination = false;
  std::vector<std::string> warnings;

  /// Sum of the first `depth` levels (all when depth < 0).
  cplx evaluate(double h, int depth = -1) const;
};

/// All exponentially small nonzero roots of ts(E) = 0, each to `depth` levels.
/// Requires nonnegative degrees. Output sorted by (level-1 rate, Re, Im).
std::vector<TransSolution> solve(const TransSeries& ts, int depth = 2);

}  // namespace witten
