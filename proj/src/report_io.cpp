#include "witten/json_io.hpp"
#include "witten/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace witten {

namespace {

void write_number(std::ostringstream& os, double x) {
  if (!std::isfinite(x)) {
    os << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  os << buf;
}

void write(std::ostringstream& os, const nlohmann::ordered_json& v, int indent, int level) {
  const auto newline = [&](int lvl) {
    if (indent <= 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * lvl), ' ');
  };
  switch (v.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) os << ',';
        first = false;
        newline(level + 1);
        os << nlohmann::ordered_json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write(os, it.value(), indent, level + 1);
      }
      newline(level);
      os << '}';
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) os << ',';
        first = false;
        newline(level + 1);
        write(os, item, indent, level + 1);
      }
      newline(level);
      os << ']';
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      write_number(os, v.get<double>());
      return;
    default:
      os << v.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& value, int indent) {
  std::ostringstream os;
  write(os, value, indent, 0);
  return os.str();
}

namespace {

std::string num(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* kind_name(CriticalKind k) { return k == CriticalKind::Minimum ? "minimum" : "maximum"; }

nlohmann::ordered_json affine_json(const AffineForm& a) {
  nlohmann::ordered_json j;
  j["slope"] = a.slope;
  j["constant"] = a.constant;
  return j;
}

}  // namespace

nlohmann::ordered_json to_json(const TrigPoly& f) {
  nlohmann::ordered_json j;
  j["a"] = std::vector<double>(f.cos_coeffs().begin(), f.cos_coeffs().end());
  j["b"] = std::vector<double>(f.sin_coeffs().begin(), f.sin_coeffs().end());
  return j;
}

nlohmann::ordered_json to_json(const TransTerm& t) {
  nlohmann::ordered_json j;
  j["re"] = t.coeff.real();
  j["im"] = t.coeff.imag();
  j["e"] = t.e_deg;
  j["h2"] = t.h2_pow;
  j["rate"] = t.rate;
  return j;
}

nlohmann::ordered_json to_json(const TransSeries& ts) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& t : ts.terms()) terms.push_back(to_json(t));
  nlohmann::ordered_json j;
  j["terms"] = std::move(terms);
  return j;
}

nlohmann::ordered_json morse_json(const MorseData& md) {
  nlohmann::ordered_json j;
  j["n"] = md.n;
  j["label_offset"] = md.label_offset;
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (int label = 1; label <= 2 * md.n; ++label) {
    const auto& p = md.point(label);
    nlohmann::ordered_json e;
    e["label"] = label;
    e["q"] = p.q;
    e["value"] = p.value;
    e["curvature"] = p.curvature;
    e["kind"] = kind_name(p.kind);
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  return j;
}

nlohmann::ordered_json tunneling_json(const MorseData& md) {
  const TunnelingData td = tunneling_data(md);
  nlohmann::ordered_json mu = nlohmann::ordered_json::array(), tau = nlohmann::ordered_json::array(),
                         mono = nlohmann::ordered_json::array();
  for (int j = 1; j <= 2 * md.n; ++j) {
    mu.push_back(to_json(td.mu[j - 1]));
    tau.push_back(to_json(td.tau[j - 1]));
    const auto m = monodromy_exponents(md, j);
    nlohmann::ordered_json e;
    e["label"] = j;
    e["s_gamma"] = affine_json(m.s_gamma);
    e["s_gamma_prime"] = affine_json(m.s_gamma_prime);
    e["s_delta"] = affine_json(m.s_delta);
    e["s_delta_prime"] = affine_json(m.s_delta_prime);
    mono.push_back(std::move(e));
  }
  nlohmann::ordered_json j;
  j["mu"] = std::move(mu);
  j["tau"] = std::move(tau);
  j["barrier_actions"] = td.barrier_actions;
  j["monodromy"] = std::move(mono);
  return j;
}

nlohmann::ordered_json to_json(const EigenAsym& e) {
  nlohmann::ordered_json j;
  j["zero_mode"] = e.is_zero_mode;
  j["rate"] = e.rate;
  j["prefactor_re"] = e.prefactor.real();
  j["prefactor_im"] = e.prefactor.imag();
  j["hpow"] = e.hpow;
  nlohmann::ordered_json corr = nlohmann::ordered_json::array();
  for (const auto& c : e.corrections) {
    nlohmann::ordered_json cj;
    cj["rate"] = c.rate;
    cj["re"] = c.coeff.real();
    cj["im"] = c.coeff.imag();
    cj["hpow"] = c.hpow;
    corr.push_back(std::move(cj));
  }
  j["corrections"] = std::move(corr);
  j["exact_termination"] = e.exact_termination;
  j["caveat"] = e.caveat;
  j["warnings"] = e.warnings;
  return j;
}

nlohmann::ordered_json to_json(const TransSolution& s) {
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  for (const auto& lv : s.levels) {
    nlohmann::ordered_json l;
    l["rate"] = lv.rate;
    l["re"] = lv.coeff.real();
    l["im"] = lv.coeff.imag();
    l["h2"] = lv.h2_pow;
    levels.push_back(std::move(l));
  }
  nlohmann::ordered_json j;
  j["levels"] = std::move(levels);
  j["exact_termination"] = s.exact_termination;
  j["warnings"] = s.warnings;
  return j;
}

nlohmann::ordered_json to_json(const SpectrumSample& s) {
  nlohmann::ordered_json j;
  j["h"] = s.h;
  j["N"] = s.N;
  j["eigenvalues"] = s.eigenvalues;
  return j;
}

nlohmann::ordered_json to_json(const VerifyReport& r) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json j;
    j["h"] = row.h;
    j["N"] = row.N;
    j["threshold"] = row.threshold;
    j["eigenvalues"] = row.eigenvalues;
    j["asym"] = row.asym;
    j["ratios"] = row.ratios;
    j["count_below"] = row.count_below;
    j["count_ok"] = row.count_ok;
    j["zero_mode_ok"] = row.zero_mode_ok;
    rows.push_back(std::move(j));
  }
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["rows"] = std::move(rows);
  j["trend_ok"] = r.trend_ok;
  j["counts_ok"] = r.counts_ok;
  j["zero_modes_ok"] = r.zero_modes_ok;
  return j;
}

std::string morse_csv(const MorseData& md) {
  const TunnelingData td = tunneling_data(md);
  std::string out = "label,q,value,curvature,kind,mu_im,tau_coeff,tau_rate\n";
  for (int j = 1; j <= 2 * md.n; ++j) {
    const auto& p = md.point(j);
    out += std::to_string(j) + "," + num(p.q) + "," + num(p.value) + "," + num(p.curvature) + "," + kind_name(p.kind) +
           "," + num(td.mu[j - 1].coeff.imag()) + "," + num(td.tau[j - 1].coeff.real()) + "," + num(td.tau[j - 1].rate) +
           "\n";
  }
  return out;
}

std::string eigen_csv(std::span<const EigenAsym> modes) {
  std::string out = "index,zero_mode,rate,prefactor_re,prefactor_im,hpow,corrections\n";
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& e = modes[i];
    out += std::to_string(i) + "," + (e.is_zero_mode ? "1" : "0") + "," + num(e.rate) + "," + num(e.prefactor.real()) +
           "," + num(e.prefactor.imag()) + "," + num(e.hpow) + "," + std::to_string(e.corrections.size()) + "\n";
  }
  return out;
}

std::string solutions_csv(std::span<const TransSolution> sols) {
  std::string out = "solution,level,rate,re,im,h2,exact_termination\n";
  for (std::size_t i = 0; i < sols.size(); ++i) {
    for (std::size_t l = 0; l < sols[i].levels.size(); ++l) {
      const auto& lv = sols[i].levels[l];
      out += std::to_string(i) + "," + std::to_string(l + 1) + "," + num(lv.rate) + "," + num(lv.coeff.real()) + "," +
             num(lv.coeff.imag()) + "," + std::to_string(lv.h2_pow) + "," + (sols[i].exact_termination ? "1" : "0") +
             "\n";
    }
  }
  return out;
}

std::string spectrum_csv(std::span<const SpectrumSample> samples) {
  const std::size_t m = samples.empty() ? 0 : samples.front().eigenvalues.size();
  std::string out = "h,N";
  for (std::size_t i = 0; i < m; ++i) out += ",lambda" + std::to_string(i);
  out += "\n";
  for (const auto& s : samples) {
    out += num(s.h) + "," + std::to_string(s.N);
    for (double v : s.eigenvalues) out += "," + num(v);
    out += "\n";
  }
  return out;
}

std::string verify_csv(const VerifyReport& r) {
  const std::size_t m = r.rows.empty() ? 0 : r.rows.front().eigenvalues.size();
  const std::size_t k = r.rows.empty() ? 0 : r.rows.front().asym.size();
  std::string out = "h,N";
  for (std::size_t i = 0; i < m; ++i) out += ",lambda" + std::to_string(i);
  for (std::size_t i = 0; i < k; ++i) out += ",asym_" + std::to_string(i + 1);
  for (std::size_t i = 0; i < k; ++i) out += ",ratio_" + std::to_string(i + 1);
  out += ",count_below,count_ok\n";
  for (const auto& row : r.rows) {
    out += num(row.h) + "," + std::to_string(row.N);
    for (double v : row.eigenvalues) out += "," + num(v);
    for (double v : row.asym) out += "," + num(v);
    for (double v : row.ratios) out += "," + num(v);
    out += "," + std::to_string(row.count_below) + "," + (row.count_ok ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace witten
