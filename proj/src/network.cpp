#include "ghzsteer/network.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace ghz {

namespace {

void require_mode(int n_modes, int k, const char* what) {
  if (k < 0 || k >= n_modes) {
    throw std::invalid_argument(std::string(what) + ": mode index " + std::to_string(k) +
                                " out of range for " + std::to_string(n_modes) + " modes");
  }
}

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

}  // namespace

double squeezing_db_from_r(double r) { return 20.0 * r / std::numbers::ln10; }

double r_from_squeezing_db(double db) { return db * std::numbers::ln10 / 20.0; }

GhzConfig GhzConfig::with_squeezing(double r, double eta) {
  GhzConfig c;
  c.r1 = c.r2 = c.r3 = r;
  c.eta = eta;
  return c;
}

GhzConfig GhzConfig::with_squeezing_db(double db, double eta) {
  return with_squeezing(r_from_squeezing_db(db), eta);
}

void GhzConfig::validate() const {
  for (double r : {r1, r2, r3}) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("squeezing parameter must be finite and >= 0, got " +
                                  std::to_string(r));
    }
  }
  require_unit_interval(t1, "t1");
  require_unit_interval(t2, "t2");
  require_unit_interval(eta, "eta");
  for (double e : extra_efficiency) require_unit_interval(e, "extra efficiency");
}

QuadCombo::QuadCombo(std::vector<QuadTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("QuadCombo: no terms");
  std::set<std::pair<int, Quadrature>> seen;
  for (const auto& t : terms_) {
    if (t.sign != 1 && t.sign != -1) throw std::invalid_argument("QuadCombo: sign must be +-1");
    if (t.mode < 0) throw std::invalid_argument("QuadCombo: negative mode index");
    if (!seen.insert({t.mode, t.quadrature}).second) {
      throw std::invalid_argument("QuadCombo: repeated (mode, quadrature) term");
    }
  }
}

Vector QuadCombo::coefficients(int n_modes) const {
  Vector v = Vector::Zero(2 * n_modes);
  for (const auto& t : terms_) {
    require_mode(n_modes, t.mode, "QuadCombo");
    v(2 * t.mode + (t.quadrature == Quadrature::x ? 0 : 1)) = t.sign;
  }
  return v;
}

std::string QuadCombo::label() const {
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (i > 0 || t.sign < 0) out += t.sign > 0 ? "+" : "-";
    out += t.quadrature == Quadrature::x ? 'x' : 'p';
    out += t.mode < 3 ? std::string(1, static_cast<char>('A' + t.mode)) : std::to_string(t.mode);
  }
  return out;
}

CovarianceMatrix squeezed_vacuum_cm(double r, Quadrature squeezed) {
  if (!(r >= 0.0)) throw std::invalid_argument("squeezed_vacuum_cm: r must be >= 0");
  const double lo = std::exp(-2.0 * r);
  const double hi = std::exp(2.0 * r);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = squeezed == Quadrature::x ? lo : hi;
  m(1, 1) = squeezed == Quadrature::x ? hi : lo;
  return CovarianceMatrix(std::move(m));
}

SymplecticMatrix beam_splitter_symplectic(int n_modes, int k, int l, double t) {
  require_mode(n_modes, k, "beam_splitter_symplectic");
  require_mode(n_modes, l, "beam_splitter_symplectic");
  if (k == l) throw std::invalid_argument("beam_splitter_symplectic: k == l");
  require_unit_interval(t, "beam splitter transmittance");

  const double refl = std::sqrt(1.0 - t);
  const double trans = std::sqrt(t);
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  for (int q = 0; q < 2; ++q) {
    const int ik = 2 * k + q;
    const int il = 2 * l + q;
    s(ik, ik) = refl;
    s(ik, il) = trans;
    s(il, ik) = trans;
    s(il, il) = -refl;
  }
  return SymplecticMatrix(std::move(s));
}

SymplecticMatrix phase_flip_symplectic(int n_modes, int k) {
  require_mode(n_modes, k, "phase_flip_symplectic");
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  s(2 * k, 2 * k) = -1.0;
  s(2 * k + 1, 2 * k + 1) = -1.0;
  return SymplecticMatrix(std::move(s));
}

CovarianceMatrix apply_symplectic(const CovarianceMatrix& cm, const SymplecticMatrix& s) {
  if (s.matrix().rows() != cm.dim()) {
    throw std::invalid_argument("apply_symplectic: dimension mismatch");
  }
  return CovarianceMatrix(s.matrix() * cm.entries() * s.matrix().transpose());
}

SymplecticMatrix ghz_network(double t1, double t2) {
  return beam_splitter_symplectic(3, kModeB, kModeC, t2) * phase_flip_symplectic(3, kModeB) *
         beam_splitter_symplectic(3, kModeA, kModeB, t1);
}

Matrix ghz_mode_matrix(double t1, double t2) {
  const Matrix s = ghz_network(t1, t2).matrix();
  Matrix u(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) u(i, j) = s(2 * i, 2 * j);
  return u;
}

CovarianceMatrix build_ghz(const GhzConfig& config) {
  config.validate();
  const std::array inputs{
      squeezed_vacuum_cm(config.r1, Quadrature::x),
      squeezed_vacuum_cm(config.r2, Quadrature::p),
      squeezed_vacuum_cm(config.r3, Quadrature::x),
  };
  Matrix sigma = Matrix::Zero(6, 6);
  for (int k = 0; k < 3; ++k) sigma.block<2, 2>(2 * k, 2 * k) = inputs[k].entries();
  return apply_symplectic(CovarianceMatrix(std::move(sigma)), ghz_network(config.t1, config.t2));
}

CovarianceMatrix lossy_channel(const CovarianceMatrix& cm, int mode, double eta) {
  require_mode(cm.n_modes(), mode, "lossy_channel");
  require_unit_interval(eta, "eta");
  Matrix sigma = cm.entries();
  const double scale = std::sqrt(eta);
  const int i = 2 * mode;
  sigma.middleRows(i, 2) *= scale;
  sigma.middleCols(i, 2) *= scale;
  sigma.block<2, 2>(i, i) += (1.0 - eta) * Eigen::Matrix2d::Identity();
  return CovarianceMatrix(std::move(sigma));
}

CovarianceMatrix prepare_state(const GhzConfig& config) {
  CovarianceMatrix cm = lossy_channel(build_ghz(config), kModeA, config.eta);
  for (int k = 0; k < 3; ++k) {
    if (config.extra_efficiency[k] != 1.0) cm = lossy_channel(cm, k, config.extra_efficiency[k]);
  }
  return cm;
}

double correlation_variance(const CovarianceMatrix& cm, const QuadCombo& combo) {
  const Vector v = combo.coefficients(cm.n_modes());
  return v.dot(cm.entries() * v);
}

}  // namespace ghz
