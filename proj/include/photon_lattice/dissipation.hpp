#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "photon_lattice/hamiltonian.hpp"
#include "photon_lattice/state.hpp"

namespace photon_lattice {

/// Rank-1 jump |target><source| at `rate`: a boundary cavity losing its
/// photon to the vacuum (Method A) or to a direction-tagged escaped state
/// (Method B).
struct JumpChannel {
  std::size_t source = 0;
  std::size_t target = 0;
  double rate = 0.0;
};

struct JumpChannelSet {
  std::shared_ptr<const BasisSet> basis;
  std::vector<JumpChannel> channels;
  /// Sum of rates of the channels leaving each ordinal, i.e. the diagonal
  /// of sum_k A_k^dag A_k.
  Eigen::VectorXd decay_weights;

  bool empty() const { return channels.empty(); }
};

/// Boundary escape channels at rate gamma. Method A: one channel per
/// boundary cavity into the shared vacuum. Method B: one channel per escape
/// direction, so corners carry two. Closed bases get none.
JumpChannelSet build_channels(std::shared_ptr<const BasisSet> basis, const PhysicalParams& params);

/// K[i] = sum of rates of channels whose source is ordinal i.
Eigen::VectorXd decay_weight_diagonal(const JumpChannelSet& channels);

/// GKSL dissipator with one independent jump per channel:
///   L(rho) = sum_k rate_k (A_k rho A_k^dag - 1/2 {A_k^dag A_k, rho}).
/// Throws std::invalid_argument when rho lives on a different basis.
Eigen::MatrixXcd lindblad_apply(const DensityMatrix& rho, const JumpChannelSet& channels);

nlohmann::json to_json(const JumpChannelSet& channels);

}  // namespace photon_lattice
