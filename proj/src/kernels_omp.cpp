#include <omp.h>

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "ghzsteer/kernels.hpp"
#include "kernels_detail.hpp"

namespace ghz::kernels {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

SampleTable gaussian_samples(const Eigen::MatrixXd& factor, Eigen::Index n_rows,
                             std::uint64_t seed) {
  detail::check_sampling_args(factor, n_rows);
  SampleTable table(n_rows, factor.rows());
  const Eigen::Index n_blocks = detail::block_count(n_rows);
#pragma omp parallel for schedule(static)
  for (Eigen::Index b = 0; b < n_blocks; ++b) {
    detail::fill_block(table, factor, b, seed);
  }
  return table;
}

Eigen::VectorXd combination_variances(const SampleTable& samples, const Eigen::MatrixXd& weights) {
  detail::check_variance_args(samples, weights);
  const Eigen::Index n = samples.rows();
  const Eigen::Index n_blocks = detail::block_count(n);
  const Eigen::Index n_combos = weights.rows();
  const Eigen::MatrixXd wt = weights.transpose();

  // Pass 1: per-block sums of the combination values.
  std::vector<Eigen::VectorXd> partial(n_blocks, Eigen::VectorXd::Zero(n_combos));
#pragma omp parallel for schedule(static)
  for (Eigen::Index b = 0; b < n_blocks; ++b) {
    const Eigen::Index begin = b * kBlockRows;
    const Eigen::Index rows = std::min(kBlockRows, n - begin);
    partial[b] = (samples.middleRows(begin, rows) * wt).colwise().sum().transpose();
  }
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n_combos);
  for (const auto& p : partial) mean += p;
  mean /= static_cast<double>(n);

  // Pass 2: per-block centred sums of squares.
#pragma omp parallel for schedule(static)
  for (Eigen::Index b = 0; b < n_blocks; ++b) {
    const Eigen::Index begin = b * kBlockRows;
    const Eigen::Index rows = std::min(kBlockRows, n - begin);
    Eigen::MatrixXd values = samples.middleRows(begin, rows) * wt;
    values.rowwise() -= mean.transpose();
    partial[b] = values.colwise().squaredNorm().transpose();
  }
  Eigen::VectorXd ss = Eigen::VectorXd::Zero(n_combos);
  for (const auto& p : partial) ss += p;
  return ss / static_cast<double>(n - 1);
}

}  // namespace ghz::kernels
