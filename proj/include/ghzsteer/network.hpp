#pragma once

// Tripartite GHZ state preparation: three single-mode squeezed beams mixed on
// a two-beam-splitter network, followed by a pure-loss channel on mode A.
//
// Mode indices: 0 = A, 1 = B, 2 = C.

#include <array>
#include <vector>

#include "ghzsteer/covariance.hpp"

namespace ghz {

enum class Quadrature { x, p };

inline constexpr int kModeA = 0;
inline constexpr int kModeB = 1;
inline constexpr int kModeC = 2;

inline constexpr double kDefaultSqueezing = 0.339;

/// Squeezing in dB, -10 log10(e^{-2r}).
double squeezing_db_from_r(double r);
double r_from_squeezing_db(double db);

struct GhzConfig {
  double r1 = kDefaultSqueezing;
  double r2 = kDefaultSqueezing;
  double r3 = kDefaultSqueezing;
  double t1 = 1.0 / 3.0;
  double t2 = 0.5;
  /// Channel transmission efficiency applied to mode A.
  double eta = 1.0;
  /// Optional extra efficiency per output mode (e.g. detection); 1 = off.
  std::array<double, 3> extra_efficiency{1.0, 1.0, 1.0};

  static GhzConfig with_squeezing(double r, double eta = 1.0);
  static GhzConfig with_squeezing_db(double db, double eta = 1.0);

  /// Throws std::invalid_argument on any out-of-range field.
  void validate() const;
};

struct QuadTerm {
  int mode;
  Quadrature quadrature;
  int sign;  // +1 or -1
};

/// Signed sum of quadratures, e.g. x_A - x_B.
class QuadCombo {
 public:
  /// Throws std::invalid_argument if empty, if a sign is not +-1, or if a
  /// (mode, quadrature) pair repeats.
  explicit QuadCombo(std::vector<QuadTerm> terms);

  const std::vector<QuadTerm>& terms() const { return terms_; }
  /// Coefficient vector v over 2 * n_modes interleaved quadratures.
  Vector coefficients(int n_modes) const;
  /// Readable form with A/B/C mode names for 3-mode states, e.g. "xA-xB".
  std::string label() const;

 private:
  std::vector<QuadTerm> terms_;
};

CovarianceMatrix squeezed_vacuum_cm(double r, Quadrature squeezed);

/// Beam splitter between modes k and l with transmittance t. The same real
/// 2x2 mixing [[sqrt(1-t), sqrt(t)], [sqrt(t), -sqrt(1-t)]] acts on the x and
/// p quadratures of the pair.
SymplecticMatrix beam_splitter_symplectic(int n_modes, int k, int l, double t);

/// 180 degree phase-space rotation of mode k.
SymplecticMatrix phase_flip_symplectic(int n_modes, int k);

/// S sigma S^T.
CovarianceMatrix apply_symplectic(const CovarianceMatrix& cm, const SymplecticMatrix& s);

/// The passive network B_23(t2) I_2(-1) B_12(t1) as a symplectic map.
SymplecticMatrix ghz_network(double t1, double t2);

/// The 3x3 mode-mixing matrix U of the network (x-sector block of ghz_network).
Matrix ghz_mode_matrix(double t1, double t2);

/// Network output before any loss: inputs are x-squeezed (r1), p-squeezed (r2)
/// and x-squeezed (r3).
CovarianceMatrix build_ghz(const GhzConfig& config);

/// sigma -> X sigma X^T + Y with X = sqrt(eta) and Y = (1 - eta) I on the
/// chosen mode.
CovarianceMatrix lossy_channel(const CovarianceMatrix& cm, int mode, double eta);

/// build_ghz, then loss eta on mode A, then any extra per-mode efficiencies.
CovarianceMatrix prepare_state(const GhzConfig& config);

/// v^T sigma v.
double correlation_variance(const CovarianceMatrix& cm, const QuadCombo& combo);

}  // namespace ghz
