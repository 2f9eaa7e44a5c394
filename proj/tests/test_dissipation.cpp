#include <gtest/gtest.h>

#include <random>

#include "photon_lattice/dissipation.hpp"

using namespace photon_lattice;

namespace {

std::shared_ptr<const BasisSet> basis(int w, int h, Method m, Boundary b = Boundary::Open) {
  return std::make_shared<const BasisSet>(enumerate_basis(GridSpec(w, h), m, b));
}

// GKSL dissipator written out with explicit jump matrices.
Eigen::MatrixXcd dense_gksl(const Eigen::MatrixXcd& rho, const JumpChannelSet& ch) {
  const auto n = rho.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (const JumpChannel& c : ch.channels) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    a(static_cast<Eigen::Index>(c.target), static_cast<Eigen::Index>(c.source)) = 1.0;
    const Eigen::MatrixXcd ada = a.adjoint() * a;
    out += c.rate * (a * rho * a.adjoint() - 0.5 * (ada * rho + rho * ada));
  }
  return out;
}

Eigen::MatrixXcd random_density(Eigen::Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist;
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = Complex(dist(rng), dist(rng));
  }
  Eigen::MatrixXcd rho = g * g.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST(Channels, Counts) {
  const PhysicalParams p;
  const JumpChannelSet a = build_channels(basis(31, 31, Method::A), p);
  EXPECT_EQ(a.channels.size(), 120u);
  for (const auto& c : a.channels) EXPECT_EQ(c.target, 961u);
  const auto bb = basis(31, 31, Method::B);
  const JumpChannelSet b = build_channels(bb, p);
  EXPECT_EQ(b.channels.size(), 124u);
  std::vector<std::size_t> corner_targets;
  for (const auto& c : b.channels) {
    if (c.source == 0) corner_targets.push_back(c.target);
  }
  EXPECT_EQ(corner_targets, (std::vector<std::size_t>{*bb->escaped_ordinal({0, 0}, Direction::Left),
                                                       *bb->escaped_ordinal({0, 0}, Direction::Down)}));
  for (Method m : {Method::A, Method::B}) {
    EXPECT_TRUE(build_channels(basis(31, 31, m, Boundary::Closed), p).empty());
  }
}

TEST(Channels, DecayWeights) {
  const PhysicalParams p;
  const GridSpec g(31, 31);
  const JumpChannelSet b = build_channels(basis(31, 31, Method::B), p);
  const Eigen::VectorXd kb = decay_weight_diagonal(b);
  EXPECT_EQ(kb(static_cast<Eigen::Index>(g.ordinal({0, 0}))), 2 * p.gamma);
  EXPECT_EQ(kb(static_cast<Eigen::Index>(g.ordinal({0, 15}))), p.gamma);
  EXPECT_EQ(kb(static_cast<Eigen::Index>(g.ordinal({15, 15}))), 0.0);
  EXPECT_EQ(kb.tail(124).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(kb, b.decay_weights);
  const Eigen::VectorXd ka = decay_weight_diagonal(build_channels(basis(31, 31, Method::A), p));
  EXPECT_EQ(ka(0), p.gamma);
  EXPECT_EQ(ka.sum(), 120 * p.gamma);
  EXPECT_EQ(decay_weight_diagonal(build_channels(basis(4, 4, Method::B, Boundary::Closed), p)).sum(),
            0.0);
}

TEST(Lindblad, MatchesDenseOracle) {
  const PhysicalParams p;
  for (Method m : {Method::A, Method::B}) {
    for (auto [w, h] : {std::pair{1, 1}, std::pair{3, 2}, std::pair{4, 4}}) {
      const auto b = basis(w, h, m);
      const JumpChannelSet ch = build_channels(b, p);
      const DensityMatrix rho(b, random_density(static_cast<Eigen::Index>(b->dimension()), 7));
      const Eigen::MatrixXcd got = lindblad_apply(rho, ch);
      const Eigen::MatrixXcd want = dense_gksl(rho.matrix(), ch);
      EXPECT_LE((got - want).cwiseAbs().maxCoeff(), 1e-9 * p.gamma);
      EXPECT_LE(std::abs(got.trace()), 1e-12 * p.gamma);
      EXPECT_LE((got - got.adjoint()).cwiseAbs().maxCoeff(), 1e-12 * p.gamma);
    }
  }
}

TEST(Lindblad, SingleCavityFourJumps) {
  const PhysicalParams p;
  const auto b = basis(1, 1, Method::B);
  const Eigen::MatrixXcd inc =
      lindblad_apply(DensityMatrix::localized(b, {0, 0}), build_channels(b, p));
  EXPECT_DOUBLE_EQ(inc(0, 0).real(), -4 * p.gamma);
  for (Eigen::Index k = 1; k < 5; ++k) EXPECT_DOUBLE_EQ(inc(k, k).real(), p.gamma);
  EXPECT_EQ(inc.trace(), Complex(0.0));
}

TEST(Lindblad, ZeroCases) {
  const PhysicalParams p;
  const auto closed = basis(3, 3, Method::B, Boundary::Closed);
  const DensityMatrix any(closed, random_density(9, 3));
  EXPECT_EQ(lindblad_apply(any, build_channels(closed, p)).cwiseAbs().maxCoeff(), 0.0);

  const auto open = basis(3, 3, Method::B);
  const Eigen::MatrixXcd inc =
      lindblad_apply(DensityMatrix::localized(open, {1, 1}), build_channels(open, p));
  EXPECT_EQ(inc.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Lindblad, EscapedPopulationsOnlyGrow) {
  const PhysicalParams p;
  const auto b = basis(3, 3, Method::B);
  const DensityMatrix rho(b, random_density(static_cast<Eigen::Index>(b->dimension()), 11));
  const Eigen::MatrixXcd inc = lindblad_apply(rho, build_channels(b, p));
  for (Eigen::Index k = 9; k < inc.rows(); ++k) EXPECT_GE(inc(k, k).real(), 0.0);
}

TEST(Lindblad, MethodsAgreeAwayFromCorners) {
  const PhysicalParams p;
  const auto a = basis(5, 5, Method::A);
  const auto b = basis(5, 5, Method::B);
  const GridSpec g(5, 5);
  Eigen::MatrixXcd in_plane = Eigen::MatrixXcd::Zero(25, 25);
  const std::vector<Site> support = {{2, 0}, {0, 2}, {2, 2}, {4, 3}};
  for (Site s : support) {
    for (Site t : support) {
      in_plane(static_cast<Eigen::Index>(g.ordinal(s)), static_cast<Eigen::Index>(g.ordinal(t))) =
          Complex(0.25, s == t ? 0.0 : 0.1 * (g.ordinal(s) < g.ordinal(t) ? 1 : -1));
    }
  }
  Eigen::MatrixXcd ra = Eigen::MatrixXcd::Zero(26, 26);
  Eigen::MatrixXcd rb = Eigen::MatrixXcd::Zero(45, 45);
  ra.topLeftCorner(25, 25) = in_plane;
  rb.topLeftCorner(25, 25) = in_plane;
  const Eigen::MatrixXcd la = lindblad_apply(DensityMatrix(a, ra), build_channels(a, p));
  const Eigen::MatrixXcd lb = lindblad_apply(DensityMatrix(b, rb), build_channels(b, p));
  EXPECT_EQ(la.topLeftCorner(25, 25), lb.topLeftCorner(25, 25));
  EXPECT_DOUBLE_EQ(la(25, 25).real(), lb.diagonal().tail(20).real().sum());
}

TEST(Lindblad, BasisMismatch) {
  const PhysicalParams p;
  const auto a = basis(3, 3, Method::A);
  const auto b = basis(3, 3, Method::B);
  EXPECT_THROW(lindblad_apply(DensityMatrix::localized(a, {0, 0}), build_channels(b, p)),
               std::invalid_argument);
}

TEST(Channels, Json) {
  const auto j = to_json(build_channels(basis(2, 2, Method::B), PhysicalParams{}));
  ASSERT_EQ(j.size(), 8u);
  EXPECT_EQ(j[0]["rate"], 1e6);
}
