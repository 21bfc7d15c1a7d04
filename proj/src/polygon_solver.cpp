#include "witten/polygon_solver.hpp"

#include "witten/errors.hpp"
#include "witten/roots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace witten {

namespace {

constexpr double kClusterTol = 1e-7;
constexpr double kResidualDrop = 1e-12;
constexpr double kLatticeTol = 1e-6;

double line_tol(double rate) { return 1e-9 * (1.0 + std::abs(rate)); }

double edge_line(const NewtonPolygon& p, const PolygonEdge& e, double j) {
  const auto& a = p.points[e.from];
  return a.rate + e.slope * (j - a.e_deg);
}

std::string describe(const NewtonPolygon& p, const PolygonEdge& e) {
  std::ostringstream os;
  os << "edge (" << p.points[e.from].e_deg << ", " << p.points[e.from].rate << ") -> (" << p.points[e.to].e_deg << ", "
     << p.points[e.to].rate << "), slope " << e.slope;
  return os.str();
}

// Drops the degree-0 terms that the substitution cancels: roundoff residue and
// O(h) amplitude corrections at the balanced rate. Returns whether a nonzero
// higher-h-power term had to be dropped.
bool clean_constant_block(TransSeries& t, double top_rate) {
  const double scale = t.max_abs_coeff();
  bool dropped_correction = false;
  std::vector<TransTerm> kept;
  for (const auto& term : t.terms()) {
    if (term.e_deg == 0) {
      if (std::abs(term.coeff) < kResidualDrop * scale) continue;
      if (term.rate >= top_rate - line_tol(top_rate)) {
        if (std::abs(term.coeff) > 1e-9 * scale) dropped_correction = true;
        continue;
      }
    }
    kept.push_back(term);
  }
  t = TransSeries(std::move(kept));
  return dropped_correction;
}

// Nonnegative integer combination of generators within tolerance (bounded search).
bool on_lattice(double target, const std::vector<double>& gens) {
  long budget = 200000;
  bool exhausted = false;
  auto dfs = [&](auto&& self, double rest, std::size_t from) -> bool {
    if (std::abs(rest) <= kLatticeTol) return true;
    if (rest < 0) return false;
    if (--budget < 0) {
      exhausted = true;
      return false;
    }
    for (std::size_t i = from; i < gens.size(); ++i) {
      if (self(self, rest - gens[i], i)) return true;
      if (exhausted) return false;
    }
    return false;
  };
  const bool found = dfs(dfs, target, 0);
  return found || exhausted;
}

std::vector<double> lattice_generators(const TransSeries& ts) {
  std::vector<double> rates;
  for (const auto& t : ts.terms()) rates.push_back(t.rate);
  std::vector<double> gens;
  const int max_deg = ts.max_degree();
  for (double a : rates) {
    for (double b : rates) {
      if (a - b <= kLatticeTol) continue;
      for (int m = 1; m <= std::max(1, max_deg); ++m) gens.push_back((a - b) / m);
    }
  }
  std::sort(gens.begin(), gens.end(), std::greater<>());
  gens.erase(std::unique(gens.begin(), gens.end(), [](double x, double y) { return std::abs(x - y) <= kLatticeTol; }),
             gens.end());
  if (gens.size() > 24) gens.resize(24);
  return gens;
}

}  // namespace

std::vector<PolygonEdge> NewtonPolygon::positive_edges() const {
  std::vector<PolygonEdge> out;
  for (const auto& e : edges) {
    if (e.slope > 0.0) out.push_back(e);
  }
  return out;
}

double NewtonPolygon::hull_height(double j) const {
  if (edges.empty()) return points[hull.front()].rate;
  for (const auto& e : edges) {
    if (j <= points[e.to].e_deg) return edge_line(*this, e, j);
  }
  return edge_line(*this, edges.back(), j);
}

NewtonPolygon build_polygon(const TransSeries& ts) {
  if (ts.empty()) throw Error(ErrorCode::EmptySeries, "polygon", "cannot build a polygon of an empty series");
  if (ts.min_degree() < 0) throw Error(ErrorCode::NegativeDegree, "polygon", "clear denominators first");

  NewtonPolygon poly;
  // Canonical order is (e_deg asc, rate desc, h2 asc): the first term of each
  // (e_deg, rate) run has the minimal h-power.
  for (const auto& t : ts.terms()) {
    if (!poly.points.empty()) {
      auto& last = poly.points.back();
      if (last.e_deg == t.e_deg && rates_equal(last.rate, t.rate)) {
        last.has_companions = true;
        poly.h_companions = true;
        continue;
      }
    }
    poly.points.push_back(SupportPoint{t.e_deg, t.rate, t.coeff, t.h2_pow, false});
  }

  std::vector<int> top;  // per-degree maximal point
  for (int i = 0; i < static_cast<int>(poly.points.size()); ++i) {
    if (top.empty() || poly.points[top.back()].e_deg != poly.points[i].e_deg) top.push_back(i);
  }

  auto& hull = poly.hull;
  for (int idx : top) {
    while (hull.size() >= 2) {
      const auto& a = poly.points[hull[hull.size() - 2]];
      const auto& b = poly.points[hull.back()];
      const auto& c = poly.points[idx];
      const double interp = a.rate + (c.rate - a.rate) * (b.e_deg - a.e_deg) / double(c.e_deg - a.e_deg);
      if (b.rate <= interp + line_tol(interp)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(idx);
  }
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const auto& a = poly.points[hull[i - 1]];
    const auto& b = poly.points[hull[i]];
    poly.edges.push_back(PolygonEdge{(b.rate - a.rate) / (b.e_deg - a.e_deg), hull[i - 1], hull[i]});
  }
  return poly;
}

std::vector<EdgeRoot> solve_edge(const NewtonPolygon& polygon, const PolygonEdge& edge) {
  if (!(edge.slope > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "polygon", "solve_edge needs a positive-slope " + describe(polygon, edge));
  }
  const auto& from = polygon.points[edge.from];
  const auto& to = polygon.points[edge.to];
  const int length = to.e_deg - from.e_deg;
  const int h_step = to.h2_pow - from.h2_pow;
  if (h_step % length != 0) {
    throw Error(ErrorCode::DegenerateEdge, "polygon",
                "h-powers along " + describe(polygon, edge) + " need a fractional scaling of E");
  }
  const int d = -h_step / length;
  const int base = from.h2_pow + d * from.e_deg;

  std::vector<roots::cplx> a(length + 1, 0.0);
  for (const auto& p : polygon.points) {
    if (p.e_deg < from.e_deg || p.e_deg > to.e_deg) continue;
    const double line = edge_line(polygon, edge, p.e_deg);
    if (std::abs(p.rate - line) > line_tol(line)) continue;
    const int level = p.h2_pow + d * p.e_deg;
    if (level > base) continue;  // higher order in h on this edge
    if (level < base) {
      throw Error(ErrorCode::DegenerateEdge, "polygon", "unbalanced h-powers along " + describe(polygon, edge));
    }
    a[p.e_deg - from.e_deg] = p.coeff;
  }

  const auto rs = roots::polynomial_roots(a);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double scale = std::max({std::abs(rs[i]), std::abs(rs[j]), 1e-300});
      if (std::abs(rs[i] - rs[j]) <= kClusterTol * scale) {
        throw Error(ErrorCode::DegenerateEdge, "polygon", "repeated root on " + describe(polygon, edge));
      }
    }
  }
  std::vector<EdgeRoot> out;
  for (const auto& r : rs) out.push_back(EdgeRoot{edge.slope, r, d});
  return out;
}

std::vector<EdgeRoot> solve_edge(const TransSeries& ts, const PolygonEdge& edge) {
  return solve_edge(build_polygon(ts), edge);
}

cplx TransSolution::evaluate(double h, int depth) const {
  cplx s = 0.0;
  const int count = depth < 0 ? static_cast<int>(levels.size()) : std::min<int>(depth, static_cast<int>(levels.size()));
  for (int i = 0; i < count; ++i) {
    s += levels[i].coeff * std::pow(h, 0.5 * levels[i].h2_pow) * std::exp(-levels[i].rate / h);
  }
  return s;
}

std::vector<TransSolution> solve(const TransSeries& ts, int depth) {
  if (depth < 1) throw Error(ErrorCode::InvalidInput, "polygon", "depth must be at least 1");
  const NewtonPolygon polygon = build_polygon(ts);
  const auto gens = lattice_generators(ts);

  std::vector<TransSolution> out;
  for (const auto& edge : polygon.positive_edges()) {
    const double top = polygon.points[edge.from].rate - edge.slope * polygon.points[edge.from].e_deg;
    for (const auto& root : solve_edge(polygon, edge)) {
      TransSolution sol;
      if (polygon.h_companions) sol.warnings.push_back("higher h-power companions ignored at leading order");
      sol.levels.push_back(SolutionLevel{root.slope, root.root, root.h2_pow});

      TransSeries t = shift_substitute(shear_substitute(ts, root.slope, root.h2_pow), root.root);
      bool dropped = clean_constant_block(t, top);
      for (int level = 2; level <= depth && !t.degree_block(0).empty(); ++level) {
        const NewtonPolygon next = build_polygon(t);
        if (next.edges.empty() || !(next.edges.front().slope > 0.0) || next.points[next.edges.front().from].e_deg != 0 ||
            next.points[next.edges.front().to].e_deg != 1) {
          throw Error(ErrorCode::NoProgress, "polygon",
                      "no linear positive edge at correction level " + std::to_string(level));
        }
        const auto& e = next.edges.front();
        const EdgeRoot corr = solve_edge(next, e).front();
        const auto& prev = sol.levels.back();
        sol.levels.push_back(SolutionLevel{prev.rate + corr.slope, corr.root, prev.h2_pow + corr.h2_pow});
        const double next_top = next.points[e.to].rate - corr.slope;
        t = shift_substitute(shear_substitute(t, corr.slope, corr.h2_pow), corr.root);
        dropped = clean_constant_block(t, next_top) || dropped;
      }
      sol.exact_termination = t.degree_block(0).empty();
      if (dropped) sol.warnings.push_back("O(h) amplitude corrections dropped");
      for (const auto& lv : sol.levels) {
        if (!on_lattice(lv.rate, gens)) {
          std::ostringstream os;
          os << "rate " << lv.rate << " is off the lattice generated by the input rates";
          sol.warnings.push_back(os.str());
        }
      }
      out.push_back(std::move(sol));
    }
  }
  std::sort(out.begin(), out.end(), [](const TransSolution& x, const TransSolution& y) {
    const auto& a = x.levels.front();
    const auto& b = y.levels.front();
    if (!rates_equal(a.rate, b.rate)) return a.rate < b.rate;
    if (a.coeff.real() != b.coeff.real()) return a.coeff.real() < b.coeff.real();
    return a.coeff.imag() < b.coeff.imag();
  });
  return out;
}

}  // namespace witten
