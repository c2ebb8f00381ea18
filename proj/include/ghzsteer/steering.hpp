#pragma once

// Gaussian EPR steering for directed bipartitions of a three-mode state, the
// CKW-type monogamy residuals built from it, and transmission-efficiency
// sweeps over the GHZ family.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ghzsteer/covariance.hpp"
#include "ghzsteer/network.hpp"

namespace ghz {

/// Conditional symplectic eigenvalues this close to 1 count as exactly 1.
inline constexpr double kBoundaryClamp = 1e-10;
/// G above this counts as steering.
inline constexpr double kSteeringThreshold = 1e-8;
inline constexpr double kMonogamyTolerance = 1e-10;

/// G = max{0, -sum_{nu_j < 1} ln nu_j} over the symplectic eigenvalues of the
/// Schur complement of the steering block.
double gaussian_steering(const CovarianceMatrix& cm, const Partition& partition);

/// A directed split with its canonical label, e.g. "BC->A" (A is the lossy
/// mode A').
struct DirectedSplit {
  std::string_view label;
  Partition partition;
};

inline constexpr std::size_t kSplitCount = 12;

/// Fixed order: A->B, B->A, A->C, C->A, B->C, C->B, A->BC, BC->A, B->AC,
/// AC->B, C->AB, AB->C.
const std::array<DirectedSplit, kSplitCount>& three_mode_splits();

/// Index of a canonical label in three_mode_splits(); throws
/// std::invalid_argument for unknown labels.
std::size_t split_index(std::string_view label);

/// CSV column name of a label: "BC->A" -> "G_BCtoA".
std::string split_column(std::string_view label);

struct SteeringReport {
  double eta = 1.0;
  std::array<double, kSplitCount> g{};

  double at(std::string_view label) const { return g[split_index(label)]; }
};

/// res_<k>_out = G^{k->ij} - G^{k->i} - G^{k->j};
/// res_<k>_in  = G^{ij->k} - G^{i->k} - G^{j->k}.
struct MonogamyReport {
  static constexpr std::array<std::string_view, 6> kLabels{
      "res_A_out", "res_A_in", "res_B_out", "res_B_in", "res_C_out", "res_C_in"};
  std::array<double, 6> residuals{};

  double min() const;
};

/// Throws std::invalid_argument unless cm has three modes.
SteeringReport steering_report(const CovarianceMatrix& cm, double eta = 1.0);
MonogamyReport monogamy_residuals(const SteeringReport& report);
MonogamyReport monogamy_residuals(const CovarianceMatrix& cm);

struct SweepRow {
  double eta;
  SteeringReport steering;
  MonogamyReport monogamy;
};

/// One row per grid value, in grid order. The eta field of `config` is
/// ignored. Rows are evaluated in parallel.
std::vector<SweepRow> sweep_eta(const GhzConfig& config, const std::vector<double>& grid);

/// Single-threaded reference for sweep_eta.
std::vector<SweepRow> sweep_eta_serial(const GhzConfig& config, const std::vector<double>& grid);

class NoThresholdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kThresholdBracketLow = 1e-6;
inline constexpr double kThresholdTolerance = 1e-4;

/// Bisection on eta in [1e-6, 1] for the point where G along `label` crosses
/// kSteeringThreshold. Returns the upper end of the final bracket. Throws
/// NoThresholdError when both ends of the bracket fall on the same side.
double find_threshold(const GhzConfig& config, std::string_view label,
                      double tol = kThresholdTolerance);

}  // namespace ghz
