#include "ghzsteer/tomography.hpp"

#include <cmath>
#include <cstdio>

namespace ghz {

namespace {

constexpr auto x = Quadrature::x;
constexpr auto p = Quadrature::p;

QuadCombo single(int m, Quadrature q) { return QuadCombo({{m, q, 1}}); }

QuadCombo pair(int i, Quadrature qi, int j, Quadrature qj, int sign) {
  return QuadCombo({{i, qi, 1}, {j, qj, sign}});
}

Matrix combo_weights() {
  const auto& combos = MeasurementSet::combos();
  Matrix w(combos.size(), 6);
  for (std::size_t k = 0; k < combos.size(); ++k) w.row(k) = combos[k].coefficients(3).transpose();
  return w;
}

Matrix symmetric_sqrt(const CovarianceMatrix& cm) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cm.entries());
  const Vector& lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -1e-12 * std::max(1.0, lambda.maxCoeff())) {
    throw StateError("sample_quadratures: covariance matrix is not positive semidefinite");
  }
  return eig.eigenvectors() * lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal() *
         eig.eigenvectors().transpose();
}

MeasurementSet to_measurement_set(const Vector& v) {
  MeasurementSet ms;
  for (std::size_t k = 0; k < MeasurementSet::kSize; ++k) ms.values[k] = v(k);
  return ms;
}

void require_three_modes(const SampleTable& samples) {
  if (samples.cols() != 6) {
    throw std::invalid_argument("measure_set: expected 6 quadrature columns, got " +
                                std::to_string(samples.cols()));
  }
}

}  // namespace

const std::array<QuadCombo, MeasurementSet::kSize>& MeasurementSet::combos() {
  static const std::array<QuadCombo, kSize> list{
      single(kModeA, x),         single(kModeA, p),         single(kModeB, x),
      single(kModeB, p),         single(kModeC, x),         single(kModeC, p),
      pair(kModeA, x, kModeB, x, -1), pair(kModeA, x, kModeC, x, -1),
      pair(kModeB, x, kModeC, x, -1), pair(kModeA, p, kModeB, p, -1),
      pair(kModeA, p, kModeC, p, -1), pair(kModeB, p, kModeC, p, -1),
      pair(kModeA, x, kModeB, p, 1),  pair(kModeA, x, kModeC, p, 1),
      pair(kModeB, x, kModeC, p, 1),  pair(kModeA, p, kModeB, x, 1),
      pair(kModeA, p, kModeC, x, 1),  pair(kModeB, p, kModeC, x, 1),
  };
  return list;
}

SampleTable sample_quadratures(const CovarianceMatrix& cm, Eigen::Index n_samples,
                               std::uint64_t seed) {
  return kernels::gaussian_samples(symmetric_sqrt(cm), n_samples, seed);
}

SampleTable sample_quadratures_serial(const CovarianceMatrix& cm, Eigen::Index n_samples,
                                      std::uint64_t seed) {
  return kernels::serial::gaussian_samples(symmetric_sqrt(cm), n_samples, seed);
}

MeasurementSet measure_set(const SampleTable& samples) {
  require_three_modes(samples);
  static const Matrix weights = combo_weights();
  return to_measurement_set(kernels::combination_variances(samples, weights));
}

MeasurementSet measure_set_serial(const SampleTable& samples) {
  require_three_modes(samples);
  static const Matrix weights = combo_weights();
  return to_measurement_set(kernels::serial::combination_variances(samples, weights));
}

MeasurementSet measure_set_exact(const CovarianceMatrix& cm) {
  if (cm.n_modes() != 3) throw std::invalid_argument("measure_set_exact: expected 3 modes");
  MeasurementSet ms;
  const auto& combos = MeasurementSet::combos();
  for (std::size_t k = 0; k < combos.size(); ++k) ms.values[k] = correlation_variance(cm, combos[k]);
  return ms;
}

CovarianceMatrix covariance_from_measurements(const MeasurementSet& ms) {
  for (std::size_t k = 0; k < MeasurementSet::kSize; ++k) {
    if (!std::isfinite(ms[k]) || ms[k] < 0.0) {
      throw std::invalid_argument("covariance_from_measurements: entry " + std::to_string(k) + " (" +
                                  MeasurementSet::combos()[k].label() + ") missing or negative");
    }
  }
  Matrix sigma = Matrix::Zero(6, 6);
  for (int i = 0; i < 6; ++i) sigma(i, i) = ms[i];

  // Each pair combination maps to the quadrature slots of its two terms.
  const auto& combos = MeasurementSet::combos();
  for (std::size_t k = 6; k < MeasurementSet::kSize; ++k) {
    const auto& terms = combos[k].terms();
    const int i = 2 * terms[0].mode + (terms[0].quadrature == x ? 0 : 1);
    const int j = 2 * terms[1].mode + (terms[1].quadrature == x ? 0 : 1);
    const double var_sum = ms[k] - sigma(i, i) - sigma(j, j);
    const double cov = terms[1].sign > 0 ? 0.5 * var_sum : -0.5 * var_sum;
    sigma(i, j) = cov;
    sigma(j, i) = cov;
  }
  return CovarianceMatrix(std::move(sigma));
}

void write_samples_csv(std::ostream& out, const SampleTable& samples) {
  const Eigen::Index n_modes = samples.cols() / 2;
  for (Eigen::Index m = 0; m < n_modes; ++m) {
    const std::string name = n_modes == 3 ? std::string(1, static_cast<char>('A' + m))
                                          : std::to_string(m);
    out << (m ? "," : "") << 'x' << name << ",p" << name;
  }
  out << '\n';
  char buf[32];
  for (Eigen::Index r = 0; r < samples.rows(); ++r) {
    for (Eigen::Index c = 0; c < samples.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", samples(r, c));
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
}

double default_rejection_tolerance(Eigen::Index n_samples) {
  return std::max(1e-3, 8.0 / std::sqrt(static_cast<double>(n_samples)));
}

int TrialStatistics::accepted_count() const {
  int n = 0;
  for (const auto& t : trials) n += t.accepted ? 1 : 0;
  return n;
}

std::vector<std::string> TrialStatistics::rejection_log() const {
  std::vector<std::string> log;
  for (const auto& t : trials) {
    if (!t.accepted) log.push_back("trial " + std::to_string(t.index) + ": " + t.note);
  }
  return log;
}

TrialStatistics reconstruct_trials(const CovarianceMatrix& truth, const TrialOptions& options) {
  if (truth.n_modes() != 3) throw std::invalid_argument("reconstruct_trials: expected 3 modes");
  if (options.n_trials < 2) {
    throw std::invalid_argument("reconstruct_trials: need at least 2 trials for a standard deviation");
  }
  if (options.n_samples < 2) throw std::invalid_argument("reconstruct_trials: need n_samples >= 2");

  TrialStatistics stats;
  stats.n_samples = options.n_samples;
  stats.rejection_tolerance =
      options.rejection_tolerance.value_or(default_rejection_tolerance(options.n_samples));

  for (int t = 0; t < options.n_trials; ++t) {
    const std::uint64_t seed = kernels::derive_seed(options.seed, static_cast<std::uint64_t>(t));
    CovarianceMatrix cm =
        covariance_from_measurements(measure_set(sample_quadratures(truth, options.n_samples, seed)));
    Trial trial{t, seed, cm, std::nan(""), false, std::nullopt, {}};
    try {
      trial.min_symplectic_eigenvalue = symplectic_eigenvalues(cm).front();
      if (trial.min_symplectic_eigenvalue < 1.0 - stats.rejection_tolerance) {
        trial.note = "unphysical: min symplectic eigenvalue " +
                     std::to_string(trial.min_symplectic_eigenvalue) + " < 1 - " +
                     std::to_string(stats.rejection_tolerance);
      } else {
        trial.report = steering_report(cm, options.eta);
        trial.accepted = true;
      }
    } catch (const StateError& e) {
      trial.note = e.what();
    }
    stats.trials.push_back(std::move(trial));
  }

  const int accepted = stats.accepted_count();
  if (accepted < 2) {
    std::string msg = "reconstruct_trials: only " + std::to_string(accepted) + " of " +
                      std::to_string(options.n_trials) + " trials physical";
    for (const auto& line : stats.rejection_log()) msg += "; " + line;
    throw StateError(msg);
  }

  for (std::size_t d = 0; d < kSplitCount; ++d) {
    double sum = 0.0;
    for (const auto& t : stats.trials)
      if (t.accepted) sum += t.report->g[d];
    const double mean = sum / accepted;
    double ss = 0.0;
    for (const auto& t : stats.trials)
      if (t.accepted) ss += (t.report->g[d] - mean) * (t.report->g[d] - mean);
    stats.mean[d] = mean;
    stats.stddev[d] = std::sqrt(ss / (accepted - 1));
  }
  return stats;
}

}  // namespace ghz
