#include "witten/cli.hpp"

#include "witten/errors.hpp"
#include "witten/fixtures.hpp"
#include "witten/report_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace witten::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "io", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TrigPoly load_potential(const RunConfig& c) {
  if (c.potential_path.empty()) throw Error(ErrorCode::InvalidInput, "config", "--potential is required");
  return potential_from_json(read_file(c.potential_path));
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateCritical:
    case ErrorCode::NoCriticalPoints:
    case ErrorCode::NotAlternating:
    case ErrorCode::DegenerateEdge:
    case ErrorCode::NoProgress:
      return kDegenerate;
    case ErrorCode::CountMismatch:
    case ErrorCode::ConstantTermSurvives:
      return kVerificationFailure;
    default:
      return kConfigError;
  }
}

struct Output {
  std::string text;
  int code = kOk;
};

bool json_format(const RunConfig& c) { return c.format == "json"; }

std::string finish(const ojson& j) { return dump_json(j) + "\n"; }

ojson connections_json(const MorseData& md, const RunConfig& c) {
  ojson arr = ojson::array();
  for (int j = 1; j <= 2 * md.n; ++j) {
    const double eps = c.eps.value_or(default_eps(md, j));
    ojson e;
    e["label"] = j;
    e["eps"] = eps;
    e["term"] = to_json(connection_leading(md, j, eps));
    arr.push_back(std::move(e));
  }
  return arr;
}

Output analyze(const RunConfig& c) {
  const TrigPoly f = load_potential(c);
  const MorseData md = morse_data(f);
  if (!json_format(c)) return {morse_csv(md)};
  ojson j;
  j["potential"] = to_json(f);
  j["morse"] = morse_json(md);
  j["tunneling"] = tunneling_json(md);
  j["connections"] = connections_json(md, c);
  return {finish(j)};
}

constexpr const char* kNoSplitting = "no nonzero exponentially small eigenvalue";

ojson asymptotics_json(const MorseData& md, const std::vector<EigenAsym>& modes) {
  ojson arr = ojson::array();
  for (const auto& m : modes) arr.push_back(to_json(m));
  ojson j;
  j["n"] = md.n;
  j["eigenvalues"] = std::move(arr);
  if (modes.size() == 1) j["note"] = kNoSplitting;
  return j;
}

Output asymptotics(const RunConfig& c) {
  const MorseData md = morse_data(load_potential(c));
  const auto modes = low_lying(md, c.depth);
  if (!json_format(c)) {
    std::string text = eigen_csv(modes);
    if (modes.size() == 1) text += std::string("# ") + kNoSplitting + "\n";
    return {text};
  }
  return {finish(asymptotics_json(md, modes))};
}

Output numeric(const RunConfig& c) {
  const TrigPoly f = load_potential(c);
  const MorseData md = morse_data(f);
  const auto samples = spectrum_sweep(f, c.h_list, c.N, md.n + 2);
  if (!json_format(c)) return {spectrum_csv(samples)};
  ojson arr = ojson::array();
  for (const auto& s : samples) arr.push_back(to_json(s));
  ojson j;
  j["n"] = md.n;
  j["samples"] = std::move(arr);
  return {finish(j)};
}

void report_count_failures(const VerifyReport& r, std::ostream& err) {
  for (const auto& row : r.rows) {
    if (!row.count_ok) {
      err << "verify: CountMismatch: h=" << row.h << ": " << row.count_below << " eigenvalues below h^(3/2), expected "
          << r.n << "\n";
    }
  }
}

bool ratio_within(const VerifyReport& r, const RunConfig& c) {
  if (!c.ratio_tol || r.rows.empty()) return true;
  for (double ratio : r.rows.back().ratios) {
    if (!(std::abs(ratio - 1.0) <= *c.ratio_tol)) return false;
  }
  return true;
}

Output compare(const RunConfig& c, std::ostream& err) {
  const TrigPoly f = load_potential(c);
  const MorseData md = morse_data(f);
  const auto modes = low_lying(md, c.depth);
  const VerifyReport r = verify_asymptotics(f, modes, c.h_list, c.N, false);
  Output o{json_format(c) ? finish(to_json(r)) : verify_csv(r)};
  if (!r.counts_ok) {
    report_count_failures(r, err);
    o.code = kVerificationFailure;
  }
  if (!r.zero_modes_ok) {
    err << "verify: zero mode is not at roundoff level\n";
    o.code = kVerificationFailure;
  }
  if (!ratio_within(r, c)) {
    err << "verify: ratio outside tolerance at the smallest h\n";
    o.code = kVerificationFailure;
  }
  return o;
}

Output paper_example(const RunConfig& c, std::ostream& err) {
  const double pi = std::numbers::pi;
  const double expected_rate = 9.0 / (8.0 * pi);
  const double expected_prefactor = 2.0 * std::sqrt(45.0);

  const TrigPoly f = fixtures::two_well();
  const MorseData md = morse_data(f);
  const auto modes = low_lying(md, c.depth);
  const VerifyReport r = verify_asymptotics(f, modes, c.h_list, c.N, false);

  Output o;
  ojson golden;
  golden["modes"] = static_cast<int>(modes.size());
  if (modes.size() == 2) {
    const auto& m = modes[1];
    golden["rate"] = m.rate;
    golden["rate_expected"] = expected_rate;
    golden["rate_rel_err"] = std::abs(m.rate - expected_rate) / expected_rate;
    golden["prefactor"] = m.prefactor.real();
    golden["prefactor_expected"] = expected_prefactor;
    golden["prefactor_rel_err"] = std::abs(m.prefactor - expected_prefactor) / expected_prefactor;
    if (!(std::abs(m.rate - expected_rate) <= 1e-10 * expected_rate) ||
        !(std::abs(m.prefactor - expected_prefactor) <= 1e-10 * expected_prefactor)) {
      err << "paper-example: asymptotic eigenvalue differs from 2 sqrt(45) exp(-9/(8 pi h))\n";
      o.code = kVerificationFailure;
    }
  } else {
    err << "paper-example: expected two low-lying modes, got " << modes.size() << "\n";
    o.code = kVerificationFailure;
  }

  std::vector<std::pair<double, double>> samples;
  for (const auto& row : r.rows) {
    if (row.eigenvalues.size() > 1 && row.eigenvalues[1] > 0.0) samples.emplace_back(row.h, row.eigenvalues[1]);
  }
  ojson fit_json;
  if (samples.size() >= 3) {
    const DecayFit fit = decay_fit(samples);
    fit_json["rate"] = fit.rate;
    fit_json["logA"] = fit.logA;
    fit_json["residual"] = fit.residual;
    fit_json["rate_rel_err"] = std::abs(fit.rate - expected_rate) / expected_rate;
  }

  if (!r.counts_ok) {
    report_count_failures(r, err);
    o.code = kVerificationFailure;
  }

  if (json_format(c)) {
    ojson j;
    j["potential"] = to_json(f);
    j["asymptotics"] = asymptotics_json(md, modes);
    j["golden"] = std::move(golden);
    j["comparison"] = to_json(r);
    j["decay_fit"] = std::move(fit_json);
    o.text = finish(j);
  } else {
    std::ostringstream os;
    os.precision(17);
    if (modes.size() == 2) {
      os << "# rate " << modes[1].rate << " expected " << expected_rate << "\n";
      os << "# prefactor " << modes[1].prefactor.real() << " expected " << expected_prefactor << "\n";
    }
    o.text = os.str() + verify_csv(r);
  }
  return o;
}

Output newton_solve(const RunConfig& c) {
  if (c.series_path.empty()) throw Error(ErrorCode::InvalidInput, "config", "--series is required");
  const TransSeries ts = transseries_from_json(read_file(c.series_path));
  const auto sols = solve(clear_denominators(ts).series, c.depth);
  if (!json_format(c)) return {solutions_csv(sols)};
  ojson arr = ojson::array();
  for (const auto& s : sols) arr.push_back(to_json(s));
  ojson j;
  j["solutions"] = std::move(arr);
  return {finish(j)};
}

}  // namespace

void validate(RunConfig& c) {
  static const std::vector<std::string> commands{"analyze", "asymptotics", "numeric", "compare", "paper-example",
                                                 "newton-solve"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end()) {
    throw Error(ErrorCode::InvalidInput, "config", "unknown command '" + c.command + "'");
  }
  if (c.h_list.empty()) throw Error(ErrorCode::InvalidInput, "config", "h list is empty");
  for (double h : c.h_list) {
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidInput, "config", "h values must be positive");
  }
  std::sort(c.h_list.begin(), c.h_list.end(), std::greater<>());
  if (c.N < 2 || c.N % 2 != 0) throw Error(ErrorCode::InvalidInput, "config", "grid size must be even");
  if (c.depth < 1) throw Error(ErrorCode::InvalidInput, "config", "depth must be at least 1");
  if (c.eps && !(*c.eps > 0.0)) throw Error(ErrorCode::InvalidInput, "config", "eps must be positive");
  if (c.format != "json" && c.format != "csv") throw Error(ErrorCode::InvalidInput, "config", "format must be json or csv");
}

int run(RunConfig config, std::ostream& out, std::ostream& err) {
  Output o;
  try {
    validate(config);
    if (config.command == "analyze") {
      o = analyze(config);
    } else if (config.command == "asymptotics") {
      o = asymptotics(config);
    } else if (config.command == "numeric") {
      o = numeric(config);
    } else if (config.command == "compare") {
      o = compare(config, err);
    } else if (config.command == "paper-example") {
      o = paper_example(config, err);
    } else {
      o = newton_solve(config);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  if (config.out_path.empty()) {
    out << o.text;
  } else {
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file || !(file << o.text)) {
      err << "error: io: cannot write " << config.out_path << "\n";
      return kConfigError;
    }
  }
  return o.code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Low-lying spectrum of the periodic Witten Laplacian"};
  app.set_help_flag("--help", "show usage");
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig config;
  app.add_option("--potential", config.potential_path, "potential JSON {\"a\": [...], \"b\": [...]}");
  app.add_option("--h", config.h_list, "comma-separated h values")->delimiter(',');
  app.add_option("--grid", config.N, "collocation grid size (even)");
  app.add_option("--depth", config.depth, "exponential correction levels");
  app.add_option("--eps", config.eps, "connection offset override");
  app.add_option("--ratio-tol", config.ratio_tol, "compare: allowed |ratio - 1| at the smallest h");
  app.add_option("--format", config.format, "json or csv");
  app.add_option("--out", config.out_path, "output file");

  const std::vector<std::pair<const char*, const char*>> commands{
      {"analyze", "critical points and tunnelling data"},
      {"asymptotics", "asymptotic low-lying eigenvalues"},
      {"numeric", "eigenvalue sweep by collocation"},
      {"compare", "numeric versus asymptotic eigenvalues"},
      {"paper-example", "built-in two-well potential end to end"},
      {"newton-solve", "Newton-polygon solver on a transseries JSON"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    if (std::string(name) == "newton-solve") sub->add_option("--series", config.series_path, "transseries JSON");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  config.command = app.get_subcommands().front()->get_name();
  return run(std::move(config), out, err);
}

}  // namespace witten::cli
