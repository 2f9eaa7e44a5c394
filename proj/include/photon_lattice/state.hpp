#pragma once

#include <complex>
#include <memory>

#include <Eigen/Dense>

#include "photon_lattice/lattice.hpp"

namespace photon_lattice {

using Complex = std::complex<double>;

/// Eigendecomposition of the in-plane Hamiltonian block, or of its
/// restriction to an invariant subspace: H_in V = V diag(energies) with
/// orthonormal columns V (n x m, m <= n).
struct InPlaneSpectrum {
  Eigen::VectorXd energies;
  Eigen::MatrixXd eigenvectors;  // columns, in site ordinals
};

/// Density matrix over the whole reduced basis.
class DensityMatrix {
 public:
  DensityMatrix(std::shared_ptr<const BasisSet> basis, Eigen::MatrixXcd rho);

  /// |s><s| for the in-plane state at `s`.
  static DensityMatrix localized(std::shared_ptr<const BasisSet> basis, Site s);

  const std::shared_ptr<const BasisSet>& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Eigen::MatrixXcd& matrix() { return rho_; }

  double trace() const { return rho_.trace().real(); }
  double purity() const;

 private:
  std::shared_ptr<const BasisSet> basis_;
  Eigen::MatrixXcd rho_;
};

/// Density matrix with no coherence between in-plane and escaped states:
/// the in-plane block plus a population per escaped/vacuum ordinal. The
/// block is held in the eigenbasis of the in-plane Hamiltonian, where one
/// propagator step is a phase per entry. With a sector spectrum the block
/// must lie inside the sector; components outside it are dropped.
class BlockDensity {
 public:
  BlockDensity(std::shared_ptr<const BasisSet> basis,
               std::shared_ptr<const InPlaneSpectrum> spectrum,
               const Eigen::MatrixXcd& site_block, Eigen::VectorXd escaped);

  static BlockDensity localized(std::shared_ptr<const BasisSet> basis,
                                std::shared_ptr<const InPlaneSpectrum> spectrum, Site s);

  const std::shared_ptr<const BasisSet>& basis() const { return basis_; }
  const std::shared_ptr<const InPlaneSpectrum>& spectrum() const { return spectrum_; }

  /// In-plane block in the eigenbasis frame.
  const Eigen::MatrixXcd& frame_block() const { return block_; }
  Eigen::MatrixXcd& frame_block() { return block_; }
  const Eigen::VectorXd& escaped() const { return escaped_; }
  Eigen::VectorXd& escaped() { return escaped_; }

  /// In-plane block in site ordinals (O(n^3)).
  Eigen::MatrixXcd site_block() const;
  /// Real diagonal of site_block() without forming it.
  Eigen::VectorXd site_diagonal() const;

  double in_plane_trace() const { return block_.trace().real(); }
  double trace() const { return in_plane_trace() + escaped_.sum(); }
  double purity() const;

 private:
  std::shared_ptr<const BasisSet> basis_;
  std::shared_ptr<const InPlaneSpectrum> spectrum_;
  Eigen::MatrixXcd block_;
  Eigen::VectorXd escaped_;
};

/// Closed-system wavefunction over in-plane ordinals.
class PureState {
 public:
  PureState(std::shared_ptr<const BasisSet> basis, Eigen::VectorXcd amplitudes);

  static PureState localized(std::shared_ptr<const BasisSet> basis, Site s);

  const std::shared_ptr<const BasisSet>& basis() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return psi_; }
  Eigen::VectorXcd& amplitudes() { return psi_; }

  double norm() const { return psi_.norm(); }

 private:
  std::shared_ptr<const BasisSet> basis_;
  Eigen::VectorXcd psi_;
};

}  // namespace photon_lattice
