#include "photon_lattice/state.hpp"

#include <stdexcept>

namespace photon_lattice {

namespace {

void require_basis(const std::shared_ptr<const BasisSet>& basis) {
  if (!basis) throw std::invalid_argument("state requires a basis");
}

}  // namespace

DensityMatrix::DensityMatrix(std::shared_ptr<const BasisSet> basis, Eigen::MatrixXcd rho)
    : basis_(std::move(basis)), rho_(std::move(rho)) {
  require_basis(basis_);
  const auto n = static_cast<Eigen::Index>(basis_->dimension());
  if (rho_.rows() != n || rho_.cols() != n) {
    throw std::invalid_argument("density matrix shape does not match basis dimension");
  }
}

DensityMatrix DensityMatrix::localized(std::shared_ptr<const BasisSet> basis, Site s) {
  require_basis(basis);
  const auto n = static_cast<Eigen::Index>(basis->dimension());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  const auto k = static_cast<Eigen::Index>(basis->ordinal_of(s));
  rho(k, k) = 1.0;
  return DensityMatrix(std::move(basis), std::move(rho));
}

double DensityMatrix::purity() const { return rho_.cwiseAbs2().sum(); }

BlockDensity::BlockDensity(std::shared_ptr<const BasisSet> basis,
                           std::shared_ptr<const InPlaneSpectrum> spectrum,
                           const Eigen::MatrixXcd& site_block, Eigen::VectorXd escaped)
    : basis_(std::move(basis)), spectrum_(std::move(spectrum)), escaped_(std::move(escaped)) {
  require_basis(basis_);
  if (!spectrum_) throw std::invalid_argument("block density requires a spectrum");
  const auto n = static_cast<Eigen::Index>(basis_->in_plane_dimension());
  const Eigen::MatrixXd& v = spectrum_->eigenvectors;
  if (v.rows() != n || v.cols() < 1 || v.cols() > n || site_block.rows() != n ||
      site_block.cols() != n) {
    throw std::invalid_argument("block density shape does not match basis");
  }
  if (escaped_.size() != static_cast<Eigen::Index>(basis_->escaped_dimension())) {
    throw std::invalid_argument("escaped population vector does not match basis");
  }
  const Eigen::MatrixXcd vc = v.cast<Complex>();
  block_ = vc.transpose() * site_block * vc;
}

BlockDensity BlockDensity::localized(std::shared_ptr<const BasisSet> basis,
                                     std::shared_ptr<const InPlaneSpectrum> spectrum, Site s) {
  require_basis(basis);
  const auto n = static_cast<Eigen::Index>(basis->in_plane_dimension());
  Eigen::MatrixXcd site_block = Eigen::MatrixXcd::Zero(n, n);
  const auto k = static_cast<Eigen::Index>(basis->ordinal_of(s));
  site_block(k, k) = 1.0;
  Eigen::VectorXd escaped = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(basis->escaped_dimension()));
  return BlockDensity(std::move(basis), std::move(spectrum), site_block, std::move(escaped));
}

Eigen::MatrixXcd BlockDensity::site_block() const {
  const Eigen::MatrixXcd vc = spectrum_->eigenvectors.cast<Complex>();
  return vc * block_ * vc.transpose();
}

Eigen::VectorXd BlockDensity::site_diagonal() const {
  // V is real, so diag(V B V^T) only sees the real part of B.
  const Eigen::MatrixXd& v = spectrum_->eigenvectors;
  const Eigen::MatrixXd left = v * block_.real();
  return left.cwiseProduct(v).rowwise().sum();
}

double BlockDensity::purity() const {
  return block_.cwiseAbs2().sum() + escaped_.squaredNorm();
}

PureState::PureState(std::shared_ptr<const BasisSet> basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), psi_(std::move(amplitudes)) {
  require_basis(basis_);
  if (psi_.size() != static_cast<Eigen::Index>(basis_->in_plane_dimension())) {
    throw std::invalid_argument("amplitude vector does not match in-plane dimension");
  }
}

PureState PureState::localized(std::shared_ptr<const BasisSet> basis, Site s) {
  require_basis(basis);
  Eigen::VectorXcd psi =
      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->in_plane_dimension()));
  psi(static_cast<Eigen::Index>(basis->ordinal_of(s))) = 1.0;
  return PureState(std::move(basis), std::move(psi));
}

}  // namespace photon_lattice
