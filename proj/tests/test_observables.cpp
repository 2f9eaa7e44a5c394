#include <gtest/gtest.h>

#include "photon_lattice/evolution.hpp"

using namespace photon_lattice;

namespace {

std::shared_ptr<const BasisSet> basis(int w, int h, Method m = Method::A,
                                      Boundary b = Boundary::Closed) {
  return std::make_shared<const BasisSet>(enumerate_basis(GridSpec(w, h), m, b));
}

}  // namespace

TEST(Observables, InitialState) {
  const auto b = basis(31, 31, Method::B, Boundary::Open);
  const DensityMatrix rho = DensityMatrix::localized(b, {15, 15});
  const SiteProbabilityField f = site_probabilities(rho);
  EXPECT_EQ(f.at({15, 15}), 1.0);
  EXPECT_EQ(f.total(), 1.0);
  EXPECT_EQ(symmetry_error(f), 0.0);
  EXPECT_EQ(dissipative_probability(rho), 0.0);
  const auto m = column_marginal(f);
  for (std::size_t l = 0; l < 31; ++l) EXPECT_EQ(m[l], l == 15 ? 1.0 : 0.0);
  EXPECT_EQ(dissipative_probability(PureState::localized(basis(3, 3), {1, 1})), 0.0);
}

TEST(Observables, UniformField) {
  SiteProbabilityField f{GridSpec(31, 31), std::vector<double>(961, 1.0 / 961)};
  for (double v : column_marginal(f)) EXPECT_NEAR(v, 31.0 / 961, 1e-15);
  EXPECT_EQ(symmetry_error(f), 0.0);
}

TEST(Observables, SymmetryErrorDetectsOffCenterStart) {
  SimulationConfig c;
  c.grid = GridSpec(31, 31);
  c.representation = Representation::PureState;
  c.total_steps = 10;
  c.snapshot_steps = {10};
  c.initial_site = Site{10, 15};
  EXPECT_GT(evolve(c).snapshots[0].symmetry_error, 0.1);

  c.initial_site.reset();
  c.total_steps = 1000;
  c.snapshot_steps = {1000};
  const Snapshot s = evolve(c).snapshots[0];
  EXPECT_LE(s.symmetry_error, 1e-10);
  for (std::size_t l = 0; l < 31; ++l) {
    EXPECT_NEAR(s.column_marginal[l], s.column_marginal[30 - l], 1e-10);
  }
}

TEST(Observables, RectangularSymmetryIgnoresTranspose) {
  SiteProbabilityField f{GridSpec(3, 1), {0.25, 0.5, 0.25}};
  EXPECT_EQ(symmetry_error(f), 0.0);
  f.values = {0.5, 0.5, 0.0};
  EXPECT_EQ(symmetry_error(f), 0.5);
}

TEST(Observables, BlockDiagonalMatchesSiteBlock) {
  const PhysicalParams p;
  const auto b = basis(4, 3, Method::A, Boundary::Open);
  const UnitaryPropagator u = compute_propagator(assemble_hamiltonian(b, p), p);
  BlockDensity rho = BlockDensity::localized(b, u.spectrum, {1, 1});
  for (int k = 0; k < 30; ++k) {
    unitary_step(rho, u);
    dissipative_step(rho, build_channels(b, p), p);
  }
  const Eigen::VectorXd diag = rho.site_block().diagonal().real();
  const SiteProbabilityField f = site_probabilities(rho);
  for (std::size_t k = 0; k < 12; ++k) {
    EXPECT_NEAR(f.values[k], diag(static_cast<Eigen::Index>(k)), 1e-14);
  }
  EXPECT_NEAR(f.total() + dissipative_probability(rho), 1.0, 1e-14);
}

TEST(GlobalMax, Rules) {
  auto snap = [](std::size_t step, double max) {
    Snapshot s{step, 0.0, SiteProbabilityField{GridSpec(1, 1), {max}}, {}, {}};
    s.max_site_probability = max;
    return s;
  };
  const Snapshot s0 = snap(0, 1.0);
  const Snapshot s1 = snap(300, 0.2);
  const Snapshot s2 = snap(500, 0.3);
  const std::vector<Snapshot> all = {s0, s1, s2};
  EXPECT_EQ(global_max_probability(all), 0.3);
  EXPECT_EQ(global_max_probability(std::vector<Snapshot>{s1}), 0.2);
  EXPECT_THROW(global_max_probability(std::vector<Snapshot>{s0}), std::invalid_argument);
}

TEST(GlobalMax, SingleCavityStaysPut) {
  SimulationConfig c;
  c.grid = GridSpec(1, 1);
  c.representation = Representation::PureState;
  c.total_steps = 50;
  c.snapshot_steps = {1, 25, 50};
  const Trajectory t = evolve(c);
  for (const auto& s : t.snapshots) EXPECT_NEAR(s.max_site_probability, 1.0, 1e-13);
  EXPECT_NEAR(global_max_probability(t.snapshots), 1.0, 1e-13);
}
