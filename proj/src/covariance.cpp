#include "ghzsteer/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ghz {

namespace {

void require_even_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols() || m.rows() % 2 != 0) {
    throw std::invalid_argument(std::string(what) + ": expected a non-empty 2N x 2N matrix, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

Matrix submatrix(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(i, j) = m(rows[i], cols[j]);
    }
  }
  return out;
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_even_square(entries_, "CovarianceMatrix");
  if (!entries_.allFinite()) {
    throw std::invalid_argument("CovarianceMatrix: non-finite entry");
  }
  entries_ = symmetrized(entries_);
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("vacuum: n_modes must be >= 1");
  return CovarianceMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

void Partition::validate(int n_modes) const {
  if (steering.empty() || steered.empty()) {
    throw std::invalid_argument("Partition: both parties must be non-empty");
  }
  std::set<int> seen;
  for (const auto* side : {&steering, &steered}) {
    for (int m : *side) {
      if (m < 0 || m >= n_modes) {
        throw std::invalid_argument("Partition: mode index " + std::to_string(m) +
                                    " out of range for " + std::to_string(n_modes) + " modes");
      }
      if (!seen.insert(m).second) {
        throw std::invalid_argument("Partition: mode " + std::to_string(m) + " listed twice");
      }
    }
  }
}

Matrix symplectic_form(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("symplectic_form: n_modes must be >= 1");
  Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

SymplecticMatrix::SymplecticMatrix(Matrix s) : s_(std::move(s)) {
  require_even_square(s_, "SymplecticMatrix");
  const Matrix omega = symplectic_form(n_modes());
  const double defect = (s_ * omega * s_.transpose() - omega).cwiseAbs().maxCoeff();
  if (!(defect <= kTolerance)) {
    throw std::invalid_argument("SymplecticMatrix: S Omega S^T deviates from Omega by " +
                                std::to_string(defect));
  }
}

SymplecticMatrix SymplecticMatrix::identity(int n_modes) {
  return SymplecticMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& rhs) const {
  if (rhs.s_.rows() != s_.rows()) {
    throw std::invalid_argument("SymplecticMatrix: dimension mismatch in composition");
  }
  return SymplecticMatrix(s_ * rhs.s_);
}

std::vector<double> symplectic_eigenvalues(const Matrix& input) {
  require_even_square(input, "symplectic_eigenvalues");
  const Matrix sigma = symmetrized(input);
  if (!sigma.allFinite() || sigma.llt().info() != Eigen::Success) {
    throw StateError("not a state: covariance matrix is not positive definite");
  }

  const int n = static_cast<int>(sigma.rows() / 2);
  std::vector<double> nu;
  nu.reserve(n);

  if (n == 1) {
    nu.push_back(std::sqrt(sigma.determinant()));
  } else if (n == 2) {
    const double det_a = sigma.topLeftCorner<2, 2>().determinant();
    const double det_b = sigma.bottomRightCorner<2, 2>().determinant();
    const double det_c = sigma.topRightCorner<2, 2>().determinant();
    const double det_s = sigma.determinant();
    const double delta = det_a + det_b + 2.0 * det_c;
    const double disc = std::sqrt(std::max(0.0, delta * delta - 4.0 * det_s));
    // Smaller root via det_s / larger root avoids cancellation.
    const double big = 0.5 * (delta + disc);
    nu.push_back(std::sqrt(det_s / big));
    nu.push_back(std::sqrt(big));
  } else {
    const Matrix product = symplectic_form(n) * sigma;
    Eigen::EigenSolver<Matrix> solver(product, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
      throw StateError("symplectic_eigenvalues: eigen-solve did not converge");
    }
    std::vector<double> moduli;
    moduli.reserve(2 * n);
    for (int i = 0; i < 2 * n; ++i) moduli.push_back(std::abs(solver.eigenvalues()[i].imag()));
    std::sort(moduli.begin(), moduli.end());
    for (int k = 0; k < n; ++k) nu.push_back(0.5 * (moduli[2 * k] + moduli[2 * k + 1]));
  }
  std::sort(nu.begin(), nu.end());
  return nu;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& cm) {
  return symplectic_eigenvalues(cm.entries());
}

bool is_physical(const CovarianceMatrix& cm, double tol) {
  try {
    return symplectic_eigenvalues(cm).front() >= 1.0 - tol;
  } catch (const StateError&) {
    return false;
  }
}

std::vector<int> quadrature_indices(std::span<const int> modes) {
  std::vector<int> idx;
  idx.reserve(2 * modes.size());
  for (int m : modes) {
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  return idx;
}

CovarianceMatrix reduce(const CovarianceMatrix& cm, std::span<const int> modes) {
  if (modes.empty()) throw std::invalid_argument("reduce: no modes selected");
  for (int m : modes) {
    if (m < 0 || m >= cm.n_modes()) {
      throw std::invalid_argument("reduce: mode index " + std::to_string(m) + " out of range");
    }
  }
  const auto idx = quadrature_indices(modes);
  return CovarianceMatrix(submatrix(cm.entries(), idx, idx));
}

Matrix schur_complement(const CovarianceMatrix& cm, const Partition& partition) {
  partition.validate(cm.n_modes());
  const auto a_idx = quadrature_indices(partition.steering);
  const auto b_idx = quadrature_indices(partition.steered);
  const Matrix a = submatrix(cm.entries(), a_idx, a_idx);
  const Matrix b = submatrix(cm.entries(), b_idx, b_idx);
  const Matrix c = submatrix(cm.entries(), a_idx, b_idx);

  if (c.isZero(0.0)) return b;

  Eigen::SelfAdjointEigenSolver<Matrix> spectrum(a, Eigen::EigenvaluesOnly);
  const double lo = spectrum.eigenvalues().minCoeff();
  const double hi = spectrum.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxConditionNumber) {
    throw StateError("steering party block not invertible");
  }
  const Matrix conditioned = b - c.transpose() * a.ldlt().solve(c);
  return symmetrized(conditioned);
}

double purity(const CovarianceMatrix& cm) {
  return 1.0 / std::sqrt(cm.entries().determinant());
}

}  // namespace ghz
