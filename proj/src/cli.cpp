#include "ghzsteer/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "ghzsteer/covariance.hpp"
#include "ghzsteer/network.hpp"
#include "ghzsteer/steering.hpp"
#include "ghzsteer/tomography.hpp"

namespace ghz::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_sig12(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> parse_grid(const std::string& spec) {
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      throw std::invalid_argument("grid: cannot parse '" + s + "' in '" + spec + "'");
    }
    return v;
  };
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
  };

  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw std::invalid_argument("grid: expected start:stop:step, got '" + spec + "'");
    const double start = to_double(parts[0]);
    const double stop = to_double(parts[1]);
    const double step = to_double(parts[2]);
    if (!(step > 0.0)) throw std::invalid_argument("grid: step must be > 0");
    if (stop < start) throw std::invalid_argument("grid: stop < start");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) grid.push_back(std::min(stop, start + static_cast<double>(i) * step));
  } else {
    for (const auto& part : split(spec, ',')) grid.push_back(to_double(part));
  }
  if (grid.empty()) throw std::invalid_argument("grid: no values");
  for (double eta : grid) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw std::invalid_argument("grid: value " + format_sig12(eta) + " outside [0, 1]");
    }
  }
  return grid;
}

namespace {

struct RunConfig {
  std::optional<double> r;
  std::optional<double> squeezing_db;
  double t1 = 1.0 / 3.0;
  double t2 = 0.5;
  double eta = 1.0;
  double detector_efficiency = 1.0;
  std::string grid = "0:1:0.05";
  long samples = 100000;
  int trials = 3;
  std::uint64_t seed = 0;
  std::string format;
  std::string output;
  double tol_phys = kPhysicalityTolerance;
  double tol_mono = kMonogamyTolerance;
  std::optional<double> reject_tol;
  std::string direction = "A->BC";
  double threshold_tol = kThresholdTolerance;
  int check_points = 101;

  GhzConfig ghz() const {
    GhzConfig c;
    if (squeezing_db) {
      c = GhzConfig::with_squeezing_db(*squeezing_db, eta);
    } else {
      c = GhzConfig::with_squeezing(r.value_or(kDefaultSqueezing), eta);
    }
    c.t1 = t1;
    c.t2 = t2;
    c.extra_efficiency = {detector_efficiency, detector_efficiency, detector_efficiency};
    c.validate();
    return c;
  }
};

json config_json(const GhzConfig& c) {
  return {
      {"r", {c.r1, c.r2, c.r3}},
      {"squeezing_db", squeezing_db_from_r(c.r1)},
      {"t1", c.t1},
      {"t2", c.t2},
      {"eta", c.eta},
      {"extra_efficiency", c.extra_efficiency},
  };
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json steering_json(const std::array<double, kSplitCount>& g) {
  json out = json::object();
  const auto& splits = three_mode_splits();
  for (std::size_t i = 0; i < kSplitCount; ++i) out[std::string(splits[i].label)] = g[i];
  return out;
}

json monogamy_json(const MonogamyReport& m) {
  json out = json::object();
  for (std::size_t i = 0; i < m.residuals.size(); ++i) out[std::string(MonogamyReport::kLabels[i])] = m.residuals[i];
  return out;
}

std::string csv_header_sweep() {
  std::string h = "eta";
  for (const auto& s : three_mode_splits()) h += "," + split_column(s.label);
  for (auto label : MonogamyReport::kLabels) h += "," + std::string(label);
  return h;
}

const std::vector<std::string> kQuadratureLabels{"xA", "pA", "xB", "pB", "xC", "pC"};

// Writes to --output (atomically) or to `out`.
void emit(const RunConfig& rc, const std::string& text, std::ostream& out) {
  if (rc.output.empty() || rc.output == "-") {
    out << text;
    return;
  }
  fs::path path(rc.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) path = fs::path(dir) / path;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << text;
    if (!f.flush()) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, path);
}

std::vector<QuadCombo> headline_combos() {
  constexpr auto x = Quadrature::x;
  constexpr auto p = Quadrature::p;
  return {
      QuadCombo({{kModeA, x, 1}, {kModeB, x, -1}}),
      QuadCombo({{kModeA, x, 1}, {kModeC, x, -1}}),
      QuadCombo({{kModeB, x, 1}, {kModeC, x, -1}}),
      QuadCombo({{kModeA, p, 1}, {kModeB, p, 1}, {kModeC, p, 1}}),
  };
}

int cmd_build(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const GhzConfig cfg = rc.ghz();
  const CovarianceMatrix cm = prepare_state(cfg);
  const auto nu = symplectic_eigenvalues(cm);
  const bool physical = nu.front() >= 1.0 - rc.tol_phys;

  std::string text;
  if (rc.format == "csv") {
    std::string s = "row";
    for (const auto& l : kQuadratureLabels) s += "," + l;
    s += "\n";
    for (int i = 0; i < 6; ++i) {
      s += kQuadratureLabels[i];
      for (int j = 0; j < 6; ++j) s += "," + format_sig12(cm(i, j));
      s += "\n";
    }
    s += "\nquantity,value\npurity," + format_sig12(purity(cm)) + "\n";
    for (std::size_t k = 0; k < nu.size(); ++k) s += "nu" + std::to_string(k) + "," + format_sig12(nu[k]) + "\n";
    for (const auto& c : headline_combos()) s += "var(" + c.label() + ")," + format_sig12(correlation_variance(cm, c)) + "\n";
    text = s;
  } else {
    json variances = json::object();
    for (const auto& c : headline_combos()) variances[c.label()] = correlation_variance(cm, c);
    json doc = {
        {"schema_version", kSchemaVersion},
        {"command", "build"},
        {"config", config_json(cfg)},
        {"quadrature_order", kQuadratureLabels},
        {"units", "shot noise (vacuum variance 1)"},
        {"covariance_matrix", matrix_json(cm.entries())},
        {"purity", purity(cm)},
        {"symplectic_eigenvalues", nu},
        {"physical", physical},
        {"correlation_variances", variances},
    };
    text = doc.dump(2) + "\n";
  }
  emit(rc, text, out);
  if (!physical) {
    err << "error: unphysical state, min symplectic eigenvalue " << format_sig12(nu.front()) << "\n";
    return kUnphysical;
  }
  return kOk;
}

int cmd_sweep(const RunConfig& rc, std::ostream& out) {
  const GhzConfig cfg = rc.ghz();
  const auto rows = sweep_eta(cfg, parse_grid(rc.grid));
  std::string text;
  if (rc.format == "json") {
    json jrows = json::array();
    for (const auto& row : rows) {
      jrows.push_back({{"eta", row.eta}, {"G", steering_json(row.steering.g)}, {"residuals", monogamy_json(row.monogamy)}});
    }
    json doc = {{"schema_version", kSchemaVersion}, {"command", "sweep"}, {"config", config_json(cfg)}, {"rows", jrows}};
    text = doc.dump(2) + "\n";
  } else {
    text = csv_header_sweep() + "\n";
    for (const auto& row : rows) {
      text += format_sig12(row.eta);
      for (double g : row.steering.g) text += "," + format_sig12(g);
      for (double res : row.monogamy.residuals) text += "," + format_sig12(res);
      text += "\n";
    }
  }
  emit(rc, text, out);
  return kOk;
}

int cmd_tomo(const RunConfig& rc, std::ostream& out) {
  const GhzConfig cfg = rc.ghz();
  const CovarianceMatrix truth = prepare_state(cfg);
  TrialOptions opts;
  opts.n_samples = rc.samples;
  opts.n_trials = rc.trials;
  opts.seed = rc.seed;
  opts.rejection_tolerance = rc.reject_tol;
  opts.eta = cfg.eta;
  const TrialStatistics stats = reconstruct_trials(truth, opts);
  const SteeringReport analytic = steering_report(truth, cfg.eta);

  std::string text;
  if (rc.format == "csv") {
    text = "direction,analytic,mean,stddev\n";
    const auto& splits = three_mode_splits();
    for (std::size_t d = 0; d < kSplitCount; ++d) {
      text += split_column(splits[d].label) + "," + format_sig12(analytic.g[d]) + "," +
              format_sig12(stats.mean[d]) + "," + format_sig12(stats.stddev[d]) + "\n";
    }
  } else {
    json trials = json::array();
    for (const auto& t : stats.trials) {
      json jt = {
          {"index", t.index},
          {"seed", t.seed},
          {"accepted", t.accepted},
          {"min_symplectic_eigenvalue", t.min_symplectic_eigenvalue},
          {"covariance_matrix", matrix_json(t.cm.entries())},
          {"note", t.note},
      };
      jt["G"] = t.report ? steering_json(t.report->g) : json(nullptr);
      trials.push_back(std::move(jt));
    }
    json doc = {
        {"schema_version", kSchemaVersion},
        {"command", "tomo"},
        {"config", config_json(cfg)},
        {"n_samples", stats.n_samples},
        {"n_trials", rc.trials},
        {"seed", rc.seed},
        {"rejection",
         {{"rule", "reject trial if min symplectic eigenvalue < 1 - tolerance"},
          {"tolerance", stats.rejection_tolerance},
          {"accepted", stats.accepted_count()},
          {"log", stats.rejection_log()}}},
        {"analytic", steering_json(analytic.g)},
        {"mean", steering_json(stats.mean)},
        {"stddev", steering_json(stats.stddev)},
        {"trials", trials},
    };
    text = doc.dump(2) + "\n";
  }
  emit(rc, text, out);
  return kOk;
}

int cmd_samples(const RunConfig& rc, std::ostream& out) {
  const CovarianceMatrix truth = prepare_state(rc.ghz());
  std::ostringstream s;
  write_samples_csv(s, sample_quadratures(truth, rc.samples, rc.seed));
  emit(rc, s.str(), out);
  return kOk;
}

int cmd_threshold(const RunConfig& rc, std::ostream& out) {
  GhzConfig cfg = rc.ghz();
  std::string text;
  try {
    const double eta_star = find_threshold(cfg, rc.direction, rc.threshold_tol);
    text = "direction,eta_threshold\n" + rc.direction + "," + format_sig12(eta_star) + "\n";
  } catch (const NoThresholdError&) {
    text = "direction,eta_threshold\n" + rc.direction + ",none\n";
  }
  emit(rc, text, out);
  return kOk;
}

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<CheckResult> run_checks(const RunConfig& rc) {
  GhzConfig cfg = rc.ghz();
  std::vector<double> grid;
  const int n = std::max(2, rc.check_points);
  for (int i = 0; i < n; ++i) grid.push_back(static_cast<double>(i) / (n - 1));

  std::vector<CheckResult> results;

  {
    CheckResult c{"physicality", true, ""};
    for (double eta : grid) {
      cfg.eta = eta;
      const double nu = symplectic_eigenvalues(prepare_state(cfg)).front();
      if (nu < 1.0 - rc.tol_phys) {
        c = {"physicality", false,
             "min symplectic eigenvalue " + format_sig12(nu) + " < " + format_sig12(1.0 - rc.tol_phys) +
                 " at eta=" + format_sig12(eta)};
        break;
      }
    }
    results.push_back(c);
  }

  const auto rows = sweep_eta(cfg, grid);
  {
    CheckResult c{"monogamy", true, ""};
    for (const auto& row : rows) {
      if (row.monogamy.min() < -rc.tol_mono) {
        c = {"monogamy", false, "residual " + format_sig12(row.monogamy.min()) + " at eta=" + format_sig12(row.eta)};
        break;
      }
    }
    results.push_back(c);
  }
  {
    CheckResult c{"one_to_one_nullity", true, ""};
    for (const auto& row : rows) {
      for (std::size_t d = 0; d < 6; ++d) {
        if (row.steering.g[d] > kSteeringThreshold && c.pass) {
          c = {"one_to_one_nullity", false,
               std::string(three_mode_splits()[d].label) + " = " + format_sig12(row.steering.g[d]) +
                   " at eta=" + format_sig12(row.eta)};
        }
      }
    }
    results.push_back(c);
  }

  cfg.eta = 1.0;
  const CovarianceMatrix pure = prepare_state(cfg);
  {
    const SteeringReport r = steering_report(pure);
    CheckResult c{"pure_state_symmetry", true, ""};
    for (std::size_t d = 6; d < kSplitCount; d += 2) {
      const double gap = std::abs(r.g[d] - r.g[d + 1]);
      if (gap >= 1e-9) {
        c = {"pure_state_symmetry", false,
             std::string(three_mode_splits()[d].label) + " vs reverse differ by " + format_sig12(gap)};
        break;
      }
    }
    results.push_back(c);
  }
  {
    CheckResult c{"boundary_exactness", true, ""};
    for (std::size_t d = 0; d < 6; ++d) {
      const double det = schur_complement(pure, three_mode_splits()[d].partition).determinant();
      if (std::abs(det - 1.0) > 1e-9) {
        c = {"boundary_exactness", false,
             std::string(three_mode_splits()[d].label) + " conditional determinant " + format_sig12(det)};
        break;
      }
    }
    results.push_back(c);
  }
  return results;
}

int cmd_check(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const auto results = run_checks(rc);
  std::string text;
  const CheckResult* first_failure = nullptr;
  for (const auto& r : results) {
    text += (r.pass ? "PASS " : "FAIL ") + r.name + (r.detail.empty() ? "" : ": " + r.detail) + "\n";
    if (!r.pass && !first_failure) first_failure = &r;
  }
  emit(rc, text, out);
  if (first_failure) {
    err << "check failed: " << first_failure->name << "\n";
    return kCheckFailed;
  }
  return kOk;
}

void add_state_options(CLI::App* cmd, RunConfig& rc, bool with_eta) {
  auto* r = cmd->add_option("--r", rc.r, "squeezing parameter r of all three inputs (default 0.339)")
                ->check(CLI::NonNegativeNumber);
  auto* db = cmd->add_option("--squeezing-db", rc.squeezing_db, "squeezing in dB, -10 log10(e^{-2r})")
                 ->check(CLI::NonNegativeNumber);
  r->excludes(db);
  cmd->add_option("--t1", rc.t1, "first beam-splitter transmittance")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--t2", rc.t2, "second beam-splitter transmittance")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--detector-efficiency", rc.detector_efficiency, "extra efficiency on every mode (1 = off)")
      ->check(CLI::Range(0.0, 1.0));
  if (with_eta) {
    cmd->add_option("--eta", rc.eta, "channel transmission efficiency on mode A")->check(CLI::Range(0.0, 1.0));
  }
}

void add_output_options(CLI::App* cmd, RunConfig& rc, const std::string& default_format) {
  cmd->add_option("--format", rc.format, "output format (default " + default_format + ")")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output,-o", rc.output, "output file (default stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian EPR steering in the tripartite CV GHZ state", "ghzsteer"};
  app.require_subcommand(1);
  RunConfig rc;

  auto* build = app.add_subcommand("build", "covariance matrix of the lossy GHZ state");
  add_state_options(build, rc, true);
  add_output_options(build, rc, "json");
  build->add_option("--tol-phys", rc.tol_phys, "physicality tolerance on min symplectic eigenvalue");

  auto* sweep = app.add_subcommand("sweep", "steering and monogamy residuals across eta");
  add_state_options(sweep, rc, false);
  sweep->add_option("--grid", rc.grid, "start:stop:step or comma list of eta values");

  auto* tomo = app.add_subcommand("tomo", "simulated covariance reconstruction with error bars");
  add_state_options(tomo, rc, true);
  tomo->add_option("--samples", rc.samples, "samples per trial")->check(CLI::Range(2L, 1L << 40));
  tomo->add_option("--trials", rc.trials, "number of trials")->check(CLI::Range(2, 1 << 20));
  tomo->add_option("--seed", rc.seed, "base RNG seed");
  tomo->add_option("--reject-tol", rc.reject_tol, "trial rejection tolerance (default max(1e-3, 8/sqrt(samples)))");

  auto* samples = app.add_subcommand("samples", "export raw quadrature samples as CSV");
  add_state_options(samples, rc, true);
  samples->add_option("--samples", rc.samples, "number of samples")->check(CLI::Range(2L, 1L << 40));
  samples->add_option("--seed", rc.seed, "RNG seed");
  samples->add_option("--output,-o", rc.output, "output file (default stdout)");

  auto* threshold = app.add_subcommand("threshold", "eta at which a direction becomes steerable");
  add_state_options(threshold, rc, false);
  threshold->add_option("--direction", rc.direction, "partition label, e.g. A->BC");
  threshold->add_option("--tol", rc.threshold_tol, "bisection tolerance on eta")->check(CLI::PositiveNumber);
  threshold->add_option("--output,-o", rc.output, "output file (default stdout)");

  auto* check = app.add_subcommand("check", "run the invariant suite");
  add_state_options(check, rc, false);
  check->add_option("--tol-phys", rc.tol_phys, "physicality tolerance (nu >= 1 - tol)");
  check->add_option("--tol-mono", rc.tol_mono, "monogamy tolerance (residual >= -tol)");
  check->add_option("--points", rc.check_points, "eta grid points on [0, 1]")->check(CLI::Range(2, 100000));
  check->add_option("--output,-o", rc.output, "output file (default stdout)");

  add_output_options(sweep, rc, "csv");
  add_output_options(tomo, rc, "json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kArgumentError;
  }

  if (rc.format.empty()) rc.format = sweep->parsed() ? "csv" : "json";

  try {
    if (build->parsed()) return cmd_build(rc, out, err);
    if (sweep->parsed()) return cmd_sweep(rc, out);
    if (tomo->parsed()) return cmd_tomo(rc, out);
    if (samples->parsed()) return cmd_samples(rc, out);
    if (threshold->parsed()) return cmd_threshold(rc, out);
    if (check->parsed()) return cmd_check(rc, out, err);
  } catch (const StateError& e) {
    err << "error: " << e.what() << "\n";
    return kUnphysical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kArgumentError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kArgumentError;
}

}  // namespace ghz::cli
