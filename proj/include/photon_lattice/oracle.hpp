#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "photon_lattice/hamiltonian.hpp"

namespace photon_lattice::oracle {

/// exp(a) by scaling and squaring of a truncated Taylor series. Independent
/// of any eigendecomposition; meant for cross-checks on small matrices.
Eigen::MatrixXcd expm_series(const Eigen::MatrixXcd& a);

/// Site probabilities of a single photon evolved in the full occupation
/// space from the pattern with the photon at `start`, recorded after each
/// of `steps` applications of exp(-i H dt / hbar). Entry [step][ordinal].
std::vector<std::vector<double>> full_space_trajectory(const GridSpec& grid,
                                                       const PhysicalParams& params, Site start,
                                                       std::size_t steps);

}  // namespace photon_lattice::oracle
