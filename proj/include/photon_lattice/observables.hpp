#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "photon_lattice/lattice.hpp"
#include "photon_lattice/state.hpp"

namespace photon_lattice {

/// Photon-detection probability per cavity, stored in grid ordinal order
/// (row h = 0 first).
struct SiteProbabilityField {
  GridSpec grid;
  std::vector<double> values;

  double at(Site s) const { return values[grid.ordinal(s)]; }
  double total() const;
  double max() const;
};

SiteProbabilityField site_probabilities(const DensityMatrix& rho);
SiteProbabilityField site_probabilities(const BlockDensity& rho);
SiteProbabilityField site_probabilities(const PureState& psi);

/// Probability summed over h for each column l.
std::vector<double> column_marginal(const SiteProbabilityField& field);

/// Total population outside the lattice (vacuum or escaped states).
/// Zero for closed bases and pure states.
double dissipative_probability(const DensityMatrix& rho);
double dissipative_probability(const BlockDensity& rho);
double dissipative_probability(const PureState& psi);

/// Populations of the non-in-plane ordinals, in basis order.
Eigen::VectorXd escaped_populations(const DensityMatrix& rho);

/// Largest deviation from the mirror symmetries l -> L-1-l, h -> H-1-h and,
/// on square grids, the diagonal reflection l <-> h.
double symmetry_error(const SiteProbabilityField& field);

struct Snapshot {
  std::size_t step = 0;
  double time = 0.0;
  SiteProbabilityField field;
  std::vector<double> column_marginal;
  Eigen::VectorXd escaped_populations;
  double dissipative_probability = 0.0;
  double in_plane_total = 0.0;
  double trace = 0.0;
  double purity = 0.0;
  double max_site_probability = 0.0;
  double symmetry_error = 0.0;
};

/// Largest site probability over snapshots taken after step 0. Throws
/// std::invalid_argument if no such snapshot exists.
double global_max_probability(std::span<const Snapshot> snapshots);

}  // namespace photon_lattice
