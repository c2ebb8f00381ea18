#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ghzsteer/steering.hpp"
#include "oracles.hpp"
#include "random_states.hpp"

using namespace ghz;

namespace {

constexpr double kR = 0.339;

std::vector<double> grid(int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(static_cast<double>(i) / (n - 1));
  return g;
}

CovarianceMatrix ghz_at(double r, double eta) { return prepare_state(GhzConfig::with_squeezing(r, eta)); }

}  // namespace

TEST(GaussianSteering, TwoModeSqueezedClosedForm) {
  const CovarianceMatrix tmss(oracle::two_mode_squeezed(kR));
  const double expected = std::log(std::cosh(2 * kR));
  EXPECT_NEAR(gaussian_steering(tmss, {{0}, {1}}), expected, 1e-12);
  EXPECT_NEAR(gaussian_steering(tmss, {{1}, {0}}), expected, 1e-12);
  EXPECT_NEAR(expected, 0.21410, 5e-5);
}

TEST(GaussianSteering, GhzOneToOneIsZero) {
  EXPECT_EQ(gaussian_steering(ghz_at(kR, 1.0), {{kModeA}, {kModeB}}), 0.0);
}

TEST(GaussianSteering, GhzOneVsTwoClosedFormAndOracle) {
  const auto cm = ghz_at(kR, 1.0);
  const double closed = oracle::one_vs_two_closed_form(kR);
  const double eig_oracle = oracle::steering(cm.entries(), {kModeA}, {kModeB, kModeC});
  EXPECT_NEAR(closed, eig_oracle, 1e-10);
  EXPECT_NEAR(closed, 0.1943914492026937, 1e-12);  // numpy reference
  EXPECT_NEAR(gaussian_steering(cm, {{kModeA}, {kModeB, kModeC}}), eig_oracle, 1e-10);
  EXPECT_NEAR(gaussian_steering(cm, {{kModeB, kModeC}, {kModeA}}), eig_oracle, 1e-10);
}

TEST(GaussianSteering, ProductStatesAreNotSteerable) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const auto a = testing_support::random_state(1, rng);
    const auto b = testing_support::random_state(2, rng);
    Matrix m = Matrix::Zero(6, 6);
    m.block(0, 0, 2, 2) = a.entries();
    m.block(2, 2, 4, 4) = b.entries();
    const CovarianceMatrix cm(m);
    // Only splits that keep A on its own side; B and C may be entangled.
    for (const char* label : {"A->B", "B->A", "A->C", "C->A", "A->BC", "BC->A"}) {
      EXPECT_EQ(gaussian_steering(cm, three_mode_splits()[split_index(label)].partition), 0.0) << label;
    }
  }
}

TEST(GaussianSteering, AgreesWithOracleOnRandomStates) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    const auto cm = testing_support::random_state(3, rng, 0.5);
    for (const auto& split : three_mode_splits()) {
      const double g = gaussian_steering(cm, split.partition);
      const double ref = oracle::steering(cm.entries(), split.partition.steering, split.partition.steered);
      EXPECT_NEAR(g, ref, 1e-8) << split.label;
      EXPECT_GE(g, 0.0);
    }
  }
}

TEST(Splits, LabelsAndColumns) {
  const auto& s = three_mode_splits();
  EXPECT_EQ(s.size(), 12u);
  EXPECT_EQ(s[0].label, "A->B");
  EXPECT_EQ(s[7].label, "BC->A");
  EXPECT_EQ(split_index("AB->C"), 11u);
  EXPECT_THROW(split_index("A->A"), std::invalid_argument);
  EXPECT_EQ(split_column("BC->A"), "G_BCtoA");
  EXPECT_EQ(split_column("A->B"), "G_AtoB");
  for (const auto& split : s) EXPECT_NO_THROW(split.partition.validate(3));
}

TEST(SteeringReport, PureGhz) {
  const auto rep = steering_report(ghz_at(kR, 1.0), 1.0);
  const double v = oracle::one_vs_two_closed_form(kR);
  for (std::size_t d = 0; d < 6; ++d) EXPECT_EQ(rep.g[d], 0.0) << three_mode_splits()[d].label;
  for (std::size_t d = 6; d < 12; ++d) EXPECT_NEAR(rep.g[d], v, 1e-9) << three_mode_splits()[d].label;
}

TEST(SteeringReport, OneWayAtEta03) {
  const auto rep = steering_report(ghz_at(kR, 0.3), 0.3);
  EXPECT_EQ(rep.at("A->BC"), 0.0);
  EXPECT_GT(rep.at("BC->A"), kSteeringThreshold);
  // numpy references
  EXPECT_NEAR(rep.at("BC->A"), 0.0506270560791662, 1e-10);
  EXPECT_NEAR(rep.at("B->AC"), 0.0951760550796998, 1e-10);
  EXPECT_NEAR(rep.at("AC->B"), 0.0588054826516922, 1e-10);
  EXPECT_NEAR(rep.at("C->AB"), rep.at("B->AC"), 1e-12);
}

TEST(SteeringReport, VacuumAndWrongModeCount) {
  const auto rep = steering_report(CovarianceMatrix::vacuum(3));
  for (double g : rep.g) EXPECT_EQ(g, 0.0);
  EXPECT_THROW(steering_report(CovarianceMatrix::vacuum(2)), std::invalid_argument);
}

TEST(SteeringReport, PermutationSymmetryAtUnitEta) {
  const auto cm = ghz_at(0.6, 1.0);
  const auto base = steering_report(cm);
  // Relabel modes (A,B,C) -> (B,C,A) and compare multisets.
  const auto perm = reduce(cm, std::vector{1, 2, 0});
  const auto rot = steering_report(perm);
  auto sorted = [](std::array<double, 12> g, std::size_t from, std::size_t to) {
    std::vector<double> v(g.begin() + from, g.begin() + to);
    std::sort(v.begin(), v.end());
    return v;
  };
  for (auto [lo, hi] : {std::pair{0, 6}, std::pair{6, 12}}) {
    const auto a = sorted(base.g, lo, hi), b = sorted(rot.g, lo, hi);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
  }
}

TEST(Monogamy, PureGhzResidual) {
  const auto m = monogamy_residuals(ghz_at(kR, 1.0));
  const double v = oracle::one_vs_two_closed_form(kR);
  for (double res : m.residuals) EXPECT_NEAR(res, v, 1e-9);
}

TEST(Monogamy, VacuumZeroAndLossyNonNegative) {
  for (double res : monogamy_residuals(CovarianceMatrix::vacuum(3)).residuals) EXPECT_EQ(res, 0.0);
  for (double res : monogamy_residuals(ghz_at(kR, 0.5)).residuals) EXPECT_GE(res, 0.0);
}

TEST(Monogamy, HoldsOnGridAcrossSqueezing) {
  for (double r : {0.1, kR, 0.8}) {
    for (const auto& row : sweep_eta(GhzConfig::with_squeezing(r), grid(101))) {
      EXPECT_GE(row.monogamy.min(), -kMonogamyTolerance) << "r=" << r << " eta=" << row.eta;
    }
  }
}

TEST(Monogamy, HoldsForRandomStates) {
  // The one-vs-two form bounds the sum of the (1+1) parts for any state.
  std::mt19937_64 rng(29);
  for (int i = 0; i < 40; ++i) {
    EXPECT_GE(monogamy_residuals(testing_support::random_state(3, rng, 0.3)).min(), -kMonogamyTolerance);
  }
}

TEST(Invariants, NoOneToOneSteeringAnywhere) {
  for (double r : {0.1, kR, 0.8}) {
    for (const auto& row : sweep_eta(GhzConfig::with_squeezing(r), grid(101))) {
      for (std::size_t d = 0; d < 6; ++d) EXPECT_LE(row.steering.g[d], kSteeringThreshold);
    }
  }
}

TEST(Invariants, PureStateDirectionalSymmetry) {
  for (double r : {0.1, kR, 0.8, 1.4}) {
    const auto rep = steering_report(ghz_at(r, 1.0));
    for (std::size_t d = 6; d < 12; d += 2) EXPECT_NEAR(rep.g[d], rep.g[d + 1], 1e-9);
  }
}

TEST(Invariants, BoundaryExactnessAtUnitEta) {
  for (double r : {0.1, kR, 0.8}) {
    const auto cm = ghz_at(r, 1.0);
    for (std::size_t d = 0; d < 6; ++d) {
      EXPECT_NEAR(schur_complement(cm, three_mode_splits()[d].partition).determinant(), 1.0, 1e-9);
    }
  }
}

TEST(Sweep, ParallelMatchesSerialBitForBit) {
  const auto cfg = GhzConfig::with_squeezing(kR);
  const auto g = grid(41);
  const auto par = sweep_eta(cfg, g);
  const auto ser = sweep_eta_serial(cfg, g);
  ASSERT_EQ(par.size(), ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    EXPECT_EQ(par[i].eta, g[i]);
    EXPECT_EQ(par[i].steering.g, ser[i].steering.g);
    EXPECT_EQ(par[i].monogamy.residuals, ser[i].monogamy.residuals);
  }
}

TEST(Sweep, UnitEtaReproducesDirectValues) {
  const auto rows = sweep_eta(GhzConfig::with_squeezing(kR), {1.0});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].steering.g, steering_report(ghz_at(kR, 1.0)).g);
}

TEST(Sweep, ZeroEtaDecouplesModeA) {
  const auto row = sweep_eta(GhzConfig::with_squeezing(kR), {0.0}).front();
  for (auto label : {"A->B", "B->A", "A->C", "C->A", "A->BC", "BC->A"}) EXPECT_EQ(row.steering.at(label), 0.0) << label;
}

TEST(Sweep, CollectiveSteeringOfAGrowsWithEta) {
  const auto rows = sweep_eta(GhzConfig::with_squeezing(kR), grid(101));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GE(rows[i].steering.at("BC->A"), rows[i - 1].steering.at("BC->A"));
  }
}

TEST(Sweep, RejectsOutOfRangeGrid) {
  EXPECT_THROW(sweep_eta(GhzConfig{}, {0.5, 1.2}), std::invalid_argument);
  EXPECT_THROW(sweep_eta_serial(GhzConfig{}, {-0.1}), std::invalid_argument);
}

TEST(Threshold, OneWayOnsetNearHalf) {
  const double eta = find_threshold(GhzConfig::with_squeezing(kR), "A->BC");
  EXPECT_NEAR(eta, 0.5, 0.01);
  EXPECT_NEAR(eta, 0.5, 2e-4);  // numpy bisection puts the onset at 0.50000003
}

TEST(Threshold, NoThresholdWhenAlwaysSteerable) {
  const auto cfg = GhzConfig::with_squeezing(kR);
  EXPECT_THROW(find_threshold(cfg, "BC->A"), NoThresholdError);
  EXPECT_THROW(find_threshold(cfg, "B->AC"), NoThresholdError);
  EXPECT_THROW(find_threshold(cfg, "A->B"), NoThresholdError);
  EXPECT_THROW(find_threshold(cfg, "nonsense"), std::invalid_argument);
}
