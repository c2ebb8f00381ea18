#pragma once

// Covariance-matrix algebra for zero-mean Gaussian states.
//
// Conventions used throughout the library:
//   * shot-noise units: x = a + a^dagger, p = (a - a^dagger)/i, so the vacuum
//     has unit quadrature variance and the uncertainty relation reads nu >= 1;
//   * interleaved ordering (x_1, p_1, x_2, p_2, ...), which keeps the
//     symplectic form block diagonal and makes mode extraction local.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ghz {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when a matrix cannot represent (or be conditioned on) a quantum state.
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPhysicalityTolerance = 1e-9;
inline constexpr double kMaxConditionNumber = 1e12;

/// 2N x 2N real symmetric matrix of symmetrized second moments.
///
/// The constructor symmetrizes its input, so every instance satisfies
/// sigma == sigma^T exactly. Physicality is NOT enforced here: reconstructed
/// matrices may violate the uncertainty relation and callers test that with
/// is_physical().
class CovarianceMatrix {
 public:
  /// Throws std::invalid_argument for non-square, odd-sized, empty or
  /// non-finite input.
  explicit CovarianceMatrix(Matrix entries);

  static CovarianceMatrix vacuum(int n_modes);

  int n_modes() const { return static_cast<int>(entries_.rows() / 2); }
  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  bool operator==(const CovarianceMatrix& other) const {
    return entries_ == other.entries_;
  }

 private:
  Matrix entries_;
};

/// Ordered (steering party, steered party) split of a set of modes.
struct Partition {
  std::vector<int> steering;
  std::vector<int> steered;

  /// Throws std::invalid_argument unless both sides are non-empty, disjoint,
  /// free of duplicates and within [0, n_modes).
  void validate(int n_modes) const;
};

/// Real 2N x 2N matrix S with S Omega S^T = Omega.
class SymplecticMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit SymplecticMatrix(Matrix s);
  static SymplecticMatrix identity(int n_modes);

  int n_modes() const { return static_cast<int>(s_.rows() / 2); }
  const Matrix& matrix() const { return s_; }

  /// Composition; (a * b) applies b first.
  SymplecticMatrix operator*(const SymplecticMatrix& rhs) const;

 private:
  Matrix s_;
};

/// Canonical form: block diagonal of [[0, 1], [-1, 0]].
Matrix symplectic_form(int n_modes);

/// The N moduli of the +-i nu eigenvalue pairs of Omega sigma, ascending.
///
/// N = 1 uses sqrt(det sigma) and N = 2 the roots of
/// nu^4 - Delta nu^2 + det sigma with Delta = det A + det B + 2 det C, so that
/// states sitting exactly on the nu = 1 boundary come out exact. Larger N goes
/// through a general real eigen-solve. Throws StateError("not a state") if the
/// input is not positive definite.
std::vector<double> symplectic_eigenvalues(const Matrix& sigma);
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& cm);

/// min nu >= 1 - tol.
bool is_physical(const CovarianceMatrix& cm, double tol = kPhysicalityTolerance);

/// Submatrix of the given modes, in the order given.
CovarianceMatrix reduce(const CovarianceMatrix& cm, std::span<const int> modes);

/// B - C^T A^{-1} C, with A the steering block, B the steered block and C the
/// cross block. Throws StateError when A is singular or its condition number
/// exceeds kMaxConditionNumber.
Matrix schur_complement(const CovarianceMatrix& cm, const Partition& partition);

/// 1 / sqrt(det sigma).
double purity(const CovarianceMatrix& cm);

/// Global quadrature indices (2k, 2k+1) of each listed mode.
std::vector<int> quadrature_indices(std::span<const int> modes);

}  // namespace ghz
