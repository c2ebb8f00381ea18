#pragma once

#include <random>
#include <stdexcept>
#include <string>

#include "ghzsteer/kernels.hpp"

namespace ghz::kernels::detail {

inline Eigen::Index block_count(Eigen::Index n_rows) {
  return (n_rows + kBlockRows - 1) / kBlockRows;
}

inline void check_sampling_args(const Eigen::MatrixXd& factor, Eigen::Index n_rows) {
  if (factor.rows() == 0 || factor.rows() != factor.cols()) {
    throw std::invalid_argument("gaussian_samples: factor must be square and non-empty");
  }
  if (n_rows < 2) throw std::invalid_argument("gaussian_samples: need at least 2 samples");
}

inline void check_variance_args(const SampleTable& samples, const Eigen::MatrixXd& weights) {
  if (samples.rows() < 2) {
    throw std::invalid_argument("combination_variances: need at least 2 samples, got " +
                                std::to_string(samples.rows()));
  }
  if (weights.cols() != samples.cols()) {
    throw std::invalid_argument("combination_variances: weight width does not match sample width");
  }
}

// Shared by both implementations so that block b is generated identically.
inline void fill_block(SampleTable& table, const Eigen::MatrixXd& factor, Eigen::Index block,
                       std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(block)));
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Index begin = block * kBlockRows;
  const Eigen::Index end = std::min(table.rows(), begin + kBlockRows);
  Eigen::VectorXd z(factor.cols());
  for (Eigen::Index r = begin; r < end; ++r) {
    for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = normal(rng);
    table.row(r) = (factor * z).transpose();
  }
}

}  // namespace ghz::kernels::detail
