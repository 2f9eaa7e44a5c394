#include "photon_lattice/oracle.hpp"

#include <cmath>

namespace photon_lattice::oracle {

Eigen::MatrixXcd expm_series(const Eigen::MatrixXcd& a) {
  const auto n = a.rows();
  // Scale until the 1-norm is below 1/2; 30 Taylor terms are then far past
  // double precision.
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXcd scaled = a / std::ldexp(1.0, squarings);

  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

std::vector<std::vector<double>> full_space_trajectory(const GridSpec& grid,
                                                       const PhysicalParams& params, Site start,
                                                       std::size_t steps) {
  const FullBasis full = enumerate_full_space(grid);
  const FullSpaceOperator h = assemble_full_space_hamiltonian(full, params);
  const Eigen::MatrixXcd dense = Eigen::MatrixXcd(h.matrix);
  const Eigen::MatrixXcd u = expm_series(dense * Complex(0.0, -params.dt / params.hbar));

  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dense.rows());
  psi(full.single_excitation[grid.ordinal(start)]) = 1.0;

  std::vector<std::vector<double>> out;
  out.reserve(steps);
  for (std::size_t step = 0; step < steps; ++step) {
    psi = u * psi;
    std::vector<double> probs(grid.site_count());
    for (std::size_t k = 0; k < probs.size(); ++k) {
      probs[k] = std::norm(psi(full.single_excitation[k]));
    }
    out.push_back(std::move(probs));
  }
  return out;
}

}  // namespace photon_lattice::oracle
