#pragma once

#include <complex>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "photon_lattice/lattice.hpp"
#include "photon_lattice/state.hpp"

namespace photon_lattice {

/// Model constants; zeta * dt / hbar = 0.01 per step by default.
struct PhysicalParams {
  double hbar = 1.0;
  double omega = 1e8;
  double zeta = 1e6;
  double gamma = 1e6;
  double dt = 1e-8;

  /// Throws std::invalid_argument naming the first non-positive field.
  void validate() const;
  /// Non-fatal diagnostics (rotating-wave validity, coarse steps).
  std::vector<std::string> warnings() const;
};

/// Dense operator over a reduced basis.
struct HermitianOperator {
  std::shared_ptr<const BasisSet> basis;
  Eigen::MatrixXcd matrix;

  /// Bitwise check of matrix(i, j) == conj(matrix(j, i)).
  bool is_exactly_hermitian() const;
};

/// Single-excitation Hamiltonian: hbar*omega on every cavity, zeta between
/// nearest neighbours, zero on rows belonging to escaped/vacuum states.
HermitianOperator assemble_hamiltonian(std::shared_ptr<const BasisSet> basis,
                                       const PhysicalParams& params);

/// Hamiltonian on the whole occupation-number space, over FullBasis
/// patterns. Stored sparse: the space has 2^(L*H) states.
struct FullSpaceOperator {
  FullBasis basis;
  Eigen::SparseMatrix<Complex> matrix;
};

FullSpaceOperator assemble_full_space_hamiltonian(const FullBasis& full,
                                                  const PhysicalParams& params);

/// The single-excitation block of a full-space operator, ordered like the
/// closed Method-A basis.
HermitianOperator restrict_to_single_excitation(const FullSpaceOperator& op);

/// Debug dump of real and imaginary parts as square CSV files. Limited to
/// small operators.
void write_matrix_csv(const HermitianOperator& op, const std::filesystem::path& real_path,
                      const std::filesystem::path& imag_path);

inline constexpr std::size_t kMaxDumpDimension = 64;

}  // namespace photon_lattice
