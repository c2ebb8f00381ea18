#pragma once

// Data-parallel kernels behind the tomography simulation.
//
// Each kernel has an OpenMP implementation in ghz::kernels and a plain
// single-threaded reference in ghz::kernels::serial. Sampling is split into
// fixed-size row blocks with one RNG stream per block, so the parallel and
// serial generators produce bit-identical tables regardless of thread count.
// Reductions combine per-block partial sums in block order for the same
// reason.

#include <cstdint>

#include <Eigen/Dense>

namespace ghz::kernels {

using SampleTable = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr Eigen::Index kBlockRows = 4096;

/// Deterministic child seed for stream `index` of `seed` (std::seed_seq mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// n_rows draws of factor * z with z ~ N(0, I). Row r lives in block
/// r / kBlockRows, whose generator is seeded with derive_seed(seed, block).
SampleTable gaussian_samples(const Eigen::MatrixXd& factor, Eigen::Index n_rows,
                             std::uint64_t seed);

/// Unbiased (n - 1) sample variance of each linear combination
/// weights.row(k) . sample, computed two-pass.
Eigen::VectorXd combination_variances(const SampleTable& samples, const Eigen::MatrixXd& weights);

namespace serial {

SampleTable gaussian_samples(const Eigen::MatrixXd& factor, Eigen::Index n_rows,
                             std::uint64_t seed);

/// Straight two-pass loop over all rows, no blocking.
Eigen::VectorXd combination_variances(const SampleTable& samples, const Eigen::MatrixXd& weights);

}  // namespace serial

}  // namespace ghz::kernels
