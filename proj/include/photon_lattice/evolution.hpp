#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "photon_lattice/dissipation.hpp"
#include "photon_lattice/hamiltonian.hpp"
#include "photon_lattice/observables.hpp"
#include "photon_lattice/state.hpp"

namespace photon_lattice {

struct PropagatorOptions {
  /// Drop the uniform hbar*omega on-site energy, a global phase inside the
  /// single-photon sector.
  bool remove_uniform_phase = false;
  /// Orthonormal columns (in-plane ordinals) spanning an H-invariant
  /// subspace. When set, only that subspace is diagonalised and `matrix`
  /// is left empty, so the propagator serves block densities only.
  std::shared_ptr<const Eigen::MatrixXd> sector;
};

/// U = exp(-i H dt / hbar) for a Hamiltonian with real entries, built from
/// the eigendecomposition of its in-plane block. Escaped/vacuum rows carry
/// no energy, so U is the identity there.
struct UnitaryPropagator {
  std::shared_ptr<const BasisSet> basis;
  std::shared_ptr<const InPlaneSpectrum> spectrum;
  Eigen::VectorXcd phases;  // exp(-i energies dt / hbar)
  Eigen::MatrixXcd matrix;  // over the whole basis; empty for a sector

  auto in_plane() const {
    const auto n = static_cast<Eigen::Index>(basis->in_plane_dimension());
    return matrix.topLeftCorner(n, n);
  }
};

/// Throws NumericalError if the eigensolver fails and std::invalid_argument
/// if `h` has imaginary entries or energy outside the in-plane block.
UnitaryPropagator compute_propagator(const HermitianOperator& h, const PhysicalParams& params,
                                     PropagatorOptions options = {});

/// Orbit basis of the grid symmetries that fix `start` and leave both the
/// in-plane Hamiltonian and the decay weights unchanged: one normalised
/// column per orbit of sites. Any in-plane block started at `start` stays
/// inside the span of these columns.
Eigen::MatrixXd symmetric_sector(const HermitianOperator& h, const JumpChannelSet& channels,
                                 Site start);

/// max |U^dag U - I| over entries.
double unitarity_error(const UnitaryPropagator& u);

void unitary_step(DensityMatrix& rho, const UnitaryPropagator& u);
void unitary_step(BlockDensity& rho, const UnitaryPropagator& u);
void unitary_step(PureState& psi, const UnitaryPropagator& u);

/// rho <- rho + (dt / hbar) L(rho).
void dissipative_step(DensityMatrix& rho, const JumpChannelSet& channels,
                      const PhysicalParams& params);
/// Same update on the block form: the in-plane block loses
/// (dt/hbar)/2 {K, B} and each channel moves (dt/hbar) rate <s|B|s> into its
/// target population.
void dissipative_step(BlockDensity& rho, const JumpChannelSet& channels,
                      const PhysicalParams& params);

enum class Representation { FullDensity, BlockDensity, PureState };

std::string_view to_string(Representation r);

/// Snapshot steps plotted for the marginal comparisons.
std::vector<std::size_t> default_snapshot_steps();

struct SimulationConfig {
  GridSpec grid{31, 31};
  Method method = Method::A;
  Boundary boundary = Boundary::Closed;
  PhysicalParams params{};
  std::size_t total_steps = 10000;
  std::vector<std::size_t> snapshot_steps = default_snapshot_steps();
  Representation representation = Representation::BlockDensity;
  bool remove_uniform_phase = false;
  /// Evolve block densities inside symmetric_sector(); exact, and much
  /// cheaper when the start is a fixed point of the grid symmetries.
  bool reduce_by_symmetry = true;
  /// Starting cavity; the lattice center when unset.
  std::optional<Site> initial_site;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct SeriesSample {
  std::size_t step = 0;
  double trace = 0.0;
  double in_plane_total = 0.0;
  double dissipative_probability = 0.0;
  // Filled only when EvolutionHooks::sample_field_statistics is set.
  double max_site_probability = 0.0;
  double symmetry_error = 0.0;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<SeriesSample> series;
};

struct EvolutionHooks {
  /// Record a SeriesSample every `sample_stride` steps (and at the last
  /// step); 0 disables sampling.
  std::size_t sample_stride = 0;
  /// Site-resolved statistics cost O(n^3) per sample for density states.
  bool sample_field_statistics = true;
  std::function<void(const Snapshot&)> on_snapshot;
  std::function<void(const SeriesSample&)> on_sample;
  /// Progress line every 1000 steps.
  std::ostream* progress = nullptr;
};

/// Runs `total_steps` iterations of one unitary step followed, for open
/// boundaries, by one dissipative step.
Trajectory evolve(const SimulationConfig& config, const EvolutionHooks& hooks = {});

struct EquivalenceReport {
  std::size_t steps = 0;
  double max_site_deviation = 0.0;
  double max_escaped_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Steps the block and full density representations side by side and
/// compares site probabilities and escaped populations after every step.
/// Limited to grids up to 9x9 and 2000 steps.
EquivalenceReport equivalence_check_block_vs_full(const SimulationConfig& config,
                                                  std::size_t steps, double tolerance);

}  // namespace photon_lattice
