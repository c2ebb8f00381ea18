#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

namespace {

Eigen::MatrixXd omega(int n) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    w(2 * k, 2 * k + 1) = 1;
    w(2 * k + 1, 2 * k) = -1;
  }
  return w;
}

Eigen::MatrixXd pick(const Eigen::MatrixXd& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Eigen::MatrixXd out(2 * rows.size(), 2 * cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out.block<2, 2>(2 * i, 2 * j) = m.block<2, 2>(2 * rows[i], 2 * cols[j]);
  return out;
}

}  // namespace

Eigen::MatrixXd ghz_covariance(double r, double eta) {
  const double a = std::sqrt(2.0 / 3.0), b = std::sqrt(1.0 / 3.0), c = std::sqrt(1.0 / 6.0),
               d = std::sqrt(0.5);
  const double coef[3][3] = {{a, b, 0}, {-c, b, d}, {-c, b, -d}};
  const double sq = std::exp(-2 * r), anti = std::exp(2 * r);
  // Input variances: a1 x-squeezed, a2 p-squeezed, a3 x-squeezed.
  const double var_x[3] = {sq, anti, sq};
  const double var_p[3] = {anti, sq, anti};
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double sx = 0, sp = 0;
      for (int k = 0; k < 3; ++k) {
        sx += coef[i][k] * coef[j][k] * var_x[k];
        sp += coef[i][k] * coef[j][k] * var_p[k];
      }
      s(2 * i, 2 * j) = sx;
      s(2 * i + 1, 2 * j + 1) = sp;
    }
  }
  for (int q = 0; q < 2; ++q) {
    for (int j = 0; j < 6; ++j) {
      if (j / 2 == 0) continue;
      s(q, j) *= std::sqrt(eta);
      s(j, q) *= std::sqrt(eta);
    }
  }
  s(0, 0) = eta * s(0, 0) + (1 - eta);
  s(1, 1) = eta * s(1, 1) + (1 - eta);
  return s;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& sigma) {
  const int n = static_cast<int>(sigma.rows() / 2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  const Eigen::MatrixXd root = es.operatorSqrt();
  const Eigen::MatrixXd w = omega(n);
  const Eigen::MatrixXd m = -(root * w * sigma * w * root);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(0.5 * (m + m.transpose()));
  std::vector<double> sq(es2.eigenvalues().data(), es2.eigenvalues().data() + 2 * n);
  std::sort(sq.begin(), sq.end());
  std::vector<double> nu;
  for (int k = 0; k < n; ++k) nu.push_back(std::sqrt(0.5 * (sq[2 * k] + sq[2 * k + 1])));
  return nu;
}

std::vector<double> symplectic_eigenvalues_eigensolve(const Eigen::MatrixXd& sigma) {
  const int n = static_cast<int>(sigma.rows() / 2);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es((omega(n) * sigma).cast<std::complex<double>>());
  std::vector<double> mod;
  for (int i = 0; i < 2 * n; ++i) mod.push_back(std::abs(es.eigenvalues()[i]));
  std::sort(mod.begin(), mod.end());
  std::vector<double> nu;
  for (int k = 0; k < n; ++k) nu.push_back(0.5 * (mod[2 * k] + mod[2 * k + 1]));
  return nu;
}

double steering(const Eigen::MatrixXd& sigma, const std::vector<int>& steering_modes,
                const std::vector<int>& steered_modes) {
  const Eigen::MatrixXd a = pick(sigma, steering_modes, steering_modes);
  const Eigen::MatrixXd b = pick(sigma, steered_modes, steered_modes);
  const Eigen::MatrixXd c = pick(sigma, steering_modes, steered_modes);
  Eigen::MatrixXd cond = b - c.transpose() * a.inverse() * c;
  cond = 0.5 * (cond + cond.transpose());
  double g = 0;
  for (double nu : symplectic_eigenvalues(cond))
    if (nu < 1) g -= std::log(nu);
  return std::max(0.0, g);
}

double one_vs_two_closed_form(double r) {
  const double e = std::exp(-2 * r), f = std::exp(2 * r);
  return 0.5 * std::log((2 * e + f) * (e + 2 * f) / 9.0);
}

Eigen::MatrixXd two_mode_squeezed(double r) {
  const double ch = std::cosh(2 * r), sh = std::sinh(2 * r);
  Eigen::MatrixXd s(4, 4);
  s << ch, 0, sh, 0,
       0, ch, 0, -sh,
       sh, 0, ch, 0,
       0, -sh, 0, ch;
  return s;
}

}  // namespace oracle
