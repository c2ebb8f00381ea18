#pragma once

// Simulated covariance-matrix reconstruction of the three-mode state from
// homodyne-style quadrature records: 18 variances (six single quadratures and
// twelve two-mode combinations), assembled into a covariance matrix with the
// polarization identities
//   Cov(a, b) = +1/2 [Var(a + b) - Var(a) - Var(b)]
//             = -1/2 [Var(a - b) - Var(a) - Var(b)],
// and repeated over independent trials for error bars.

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ghzsteer/covariance.hpp"
#include "ghzsteer/kernels.hpp"
#include "ghzsteer/network.hpp"
#include "ghzsteer/steering.hpp"

namespace ghz {

using kernels::SampleTable;

/// The 18 measured variances, in this order:
///   0-5   xA pA xB pB xC pC
///   6-11  xA-xB xA-xC xB-xC pA-pB pA-pC pB-pC
///   12-17 xA+pB xA+pC xB+pC pA+xB pA+xC pB+xC
struct MeasurementSet {
  static constexpr std::size_t kSize = 18;

  std::array<double, kSize> values{};

  static const std::array<QuadCombo, kSize>& combos();
  double operator[](std::size_t i) const { return values[i]; }
};

/// Mean-zero draws with covariance cm (one row per sample, interleaved
/// columns), via the symmetric square root of cm. Deterministic in seed and
/// independent of thread count. Throws StateError if cm is not positive
/// semidefinite.
SampleTable sample_quadratures(const CovarianceMatrix& cm, Eigen::Index n_samples,
                               std::uint64_t seed);
SampleTable sample_quadratures_serial(const CovarianceMatrix& cm, Eigen::Index n_samples,
                                      std::uint64_t seed);

/// Unbiased sample variances of the 18 combinations; needs >= 2 rows.
MeasurementSet measure_set(const SampleTable& samples);
MeasurementSet measure_set_serial(const SampleTable& samples);

/// Population variances straight from a covariance matrix.
MeasurementSet measure_set_exact(const CovarianceMatrix& cm);

/// Partial reconstruction. Within-mode x-p covariances are set to 0; every
/// other entry comes from exactly one measured combination. Throws
/// std::invalid_argument for missing (non-finite) or negative entries.
CovarianceMatrix covariance_from_measurements(const MeasurementSet& ms);

/// Header "xA,pA,xB,pB,xC,pC" (x0,p0,... beyond three modes), 17 significant
/// digits per value.
void write_samples_csv(std::ostream& out, const SampleTable& samples);

/// Trials whose minimum symplectic eigenvalue is below 1 - tolerance are
/// rejected. Sample covariances of states on the nu = 1 boundary scatter by
/// roughly 3 / sqrt(n) below it, so the default scales with n.
double default_rejection_tolerance(Eigen::Index n_samples);

struct TrialOptions {
  Eigen::Index n_samples = 100000;
  int n_trials = 3;
  std::uint64_t seed = 0;
  std::optional<double> rejection_tolerance;
  /// Copied into each trial's SteeringReport; sampling does not use it.
  double eta = 1.0;
};

struct Trial {
  int index;
  std::uint64_t seed;
  CovarianceMatrix cm;
  double min_symplectic_eigenvalue;
  bool accepted;
  std::optional<SteeringReport> report;
  std::string note;
};

struct TrialStatistics {
  Eigen::Index n_samples = 0;
  double rejection_tolerance = 0.0;
  std::vector<Trial> trials;
  std::array<double, kSplitCount> mean{};
  /// Sample standard deviation (n - 1) over accepted trials.
  std::array<double, kSplitCount> stddev{};

  int accepted_count() const;
  std::vector<std::string> rejection_log() const;
};

/// Sample, measure, reconstruct and quantify steering for each trial, seeding
/// trial t with derive_seed(seed, t), then aggregate over accepted trials.
/// Throws std::invalid_argument for n_trials < 2 and StateError when fewer
/// than two trials survive.
TrialStatistics reconstruct_trials(const CovarianceMatrix& truth, const TrialOptions& options);

}  // namespace ghz
