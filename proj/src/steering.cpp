#include "ghzsteer/steering.hpp"

#include <algorithm>
#include <cmath>

namespace ghz {

double gaussian_steering(const CovarianceMatrix& cm, const Partition& partition) {
  const Matrix conditional = schur_complement(cm, partition);
  double g = 0.0;
  for (double nu : symplectic_eigenvalues(conditional)) {
    if (std::abs(nu - 1.0) <= kBoundaryClamp) continue;
    if (nu < 1.0) g -= std::log(nu);
  }
  return std::max(0.0, g);
}

const std::array<DirectedSplit, kSplitCount>& three_mode_splits() {
  static const std::array<DirectedSplit, kSplitCount> splits{{
      {"A->B", {{kModeA}, {kModeB}}},
      {"B->A", {{kModeB}, {kModeA}}},
      {"A->C", {{kModeA}, {kModeC}}},
      {"C->A", {{kModeC}, {kModeA}}},
      {"B->C", {{kModeB}, {kModeC}}},
      {"C->B", {{kModeC}, {kModeB}}},
      {"A->BC", {{kModeA}, {kModeB, kModeC}}},
      {"BC->A", {{kModeB, kModeC}, {kModeA}}},
      {"B->AC", {{kModeB}, {kModeA, kModeC}}},
      {"AC->B", {{kModeA, kModeC}, {kModeB}}},
      {"C->AB", {{kModeC}, {kModeA, kModeB}}},
      {"AB->C", {{kModeA, kModeB}, {kModeC}}},
  }};
  return splits;
}

std::size_t split_index(std::string_view label) {
  const auto& splits = three_mode_splits();
  for (std::size_t i = 0; i < splits.size(); ++i) {
    if (splits[i].label == label) return i;
  }
  throw std::invalid_argument("unknown partition label '" + std::string(label) + "'");
}

std::string split_column(std::string_view label) {
  std::string out = "G_";
  const auto arrow = label.find("->");
  out += label.substr(0, arrow);
  out += "to";
  out += label.substr(arrow + 2);
  return out;
}

double MonogamyReport::min() const { return *std::min_element(residuals.begin(), residuals.end()); }

SteeringReport steering_report(const CovarianceMatrix& cm, double eta) {
  if (cm.n_modes() != 3) {
    throw std::invalid_argument("steering_report: expected 3 modes, got " +
                                std::to_string(cm.n_modes()));
  }
  SteeringReport report;
  report.eta = eta;
  const auto& splits = three_mode_splits();
  for (std::size_t i = 0; i < splits.size(); ++i) {
    report.g[i] = gaussian_steering(cm, splits[i].partition);
  }
  return report;
}

MonogamyReport monogamy_residuals(const SteeringReport& r) {
  auto g = [&](std::string_view label) { return r.at(label); };
  MonogamyReport m;
  m.residuals = {
      g("A->BC") - g("A->B") - g("A->C"), g("BC->A") - g("B->A") - g("C->A"),
      g("B->AC") - g("B->A") - g("B->C"), g("AC->B") - g("A->B") - g("C->B"),
      g("C->AB") - g("C->A") - g("C->B"), g("AB->C") - g("A->C") - g("B->C"),
  };
  return m;
}

MonogamyReport monogamy_residuals(const CovarianceMatrix& cm) {
  return monogamy_residuals(steering_report(cm));
}

namespace {

void validate_grid(const std::vector<double>& grid) {
  for (double eta : grid) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw std::invalid_argument("eta grid value " + std::to_string(eta) + " outside [0, 1]");
    }
  }
}

SweepRow evaluate_row(GhzConfig config, double eta) {
  config.eta = eta;
  const auto report = steering_report(prepare_state(config), eta);
  return {eta, report, monogamy_residuals(report)};
}

}  // namespace

std::vector<SweepRow> sweep_eta(const GhzConfig& config, const std::vector<double>& grid) {
  config.validate();
  validate_grid(grid);
  std::vector<SweepRow> rows(grid.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  // Exceptions cannot leave the parallel region; on failure the serial pass
  // rethrows the original error.
  bool failed = false;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      rows[i] = evaluate_row(config, grid[i]);
    } catch (...) {
#pragma omp atomic write
      failed = true;
    }
  }
  if (failed) return sweep_eta_serial(config, grid);
  return rows;
}

std::vector<SweepRow> sweep_eta_serial(const GhzConfig& config, const std::vector<double>& grid) {
  config.validate();
  validate_grid(grid);
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double eta : grid) rows.push_back(evaluate_row(config, eta));
  return rows;
}

double find_threshold(const GhzConfig& config, std::string_view label, double tol) {
  config.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("find_threshold: tol must be > 0");
  const Partition& partition = three_mode_splits()[split_index(label)].partition;
  auto steerable = [&](double eta) {
    GhzConfig c = config;
    c.eta = eta;
    return gaussian_steering(prepare_state(c), partition) > kSteeringThreshold;
  };

  double lo = kThresholdBracketLow;
  double hi = 1.0;
  const bool lo_state = steerable(lo);
  if (lo_state == steerable(hi)) {
    throw NoThresholdError("no threshold in range for " + std::string(label) + ": " +
                           (lo_state ? "steerable" : "not steerable") + " across [" +
                           std::to_string(lo) + ", 1]");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (steerable(mid) == lo_state ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace ghz
