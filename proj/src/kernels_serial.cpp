#include "ghzsteer/kernels.hpp"
#include "kernels_detail.hpp"

namespace ghz::kernels::serial {

SampleTable gaussian_samples(const Eigen::MatrixXd& factor, Eigen::Index n_rows,
                             std::uint64_t seed) {
  detail::check_sampling_args(factor, n_rows);
  SampleTable table(n_rows, factor.rows());
  for (Eigen::Index b = 0; b < detail::block_count(n_rows); ++b) {
    detail::fill_block(table, factor, b, seed);
  }
  return table;
}

Eigen::VectorXd combination_variances(const SampleTable& samples, const Eigen::MatrixXd& weights) {
  detail::check_variance_args(samples, weights);
  const Eigen::Index n = samples.rows();
  const Eigen::Index n_combos = weights.rows();
  Eigen::VectorXd out(n_combos);
  for (Eigen::Index k = 0; k < n_combos; ++k) {
    double sum = 0.0;
    for (Eigen::Index r = 0; r < n; ++r) sum += samples.row(r).dot(weights.row(k));
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (Eigen::Index r = 0; r < n; ++r) {
      const double d = samples.row(r).dot(weights.row(k)) - mean;
      ss += d * d;
    }
    out(k) = ss / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace ghz::kernels::serial
