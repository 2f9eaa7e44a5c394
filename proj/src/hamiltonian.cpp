#include "photon_lattice/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "mutation.hpp"

namespace photon_lattice {

void PhysicalParams::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"hbar", hbar}, {"omega", omega}, {"zeta", zeta}, {"gamma", gamma}, {"dt", dt}};
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw std::invalid_argument(std::string(name) + " must be strictly positive");
    }
  }
}

std::vector<std::string> PhysicalParams::warnings() const {
  std::vector<std::string> out;
  if (zeta / (hbar * omega) > 0.1) {
    out.emplace_back("zeta/(hbar*omega) > 0.1: rotating-wave approximation is questionable");
  }
  if (gamma * dt > 0.1) {
    out.emplace_back("gamma*dt > 0.1: explicit dissipator step is coarse");
  }
  return out;
}

bool HermitianOperator::is_exactly_hermitian() const {
  if (matrix.rows() != matrix.cols()) return false;
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      if (matrix(i, j) != std::conj(matrix(j, i))) return false;
    }
  }
  return true;
}

HermitianOperator assemble_hamiltonian(std::shared_ptr<const BasisSet> basis,
                                       const PhysicalParams& params) {
  if (!basis) throw std::invalid_argument("assemble_hamiltonian: null basis");
  params.validate();
  const auto n = static_cast<Eigen::Index>(basis->dimension());
  const GridSpec& grid = basis->grid();
  HermitianOperator op{basis, Eigen::MatrixXcd::Zero(n, n)};

  const Complex onsite = params.hbar * params.omega;
  bool first_bond = true;
  for (std::size_t k = 0; k < grid.site_count(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    op.matrix(i, i) = onsite;
    for (Site nb : neighbors(grid, grid.site(k))) {
      const auto j = static_cast<Eigen::Index>(grid.ordinal(nb));
      if (j <= i) continue;
      Complex hop = params.zeta;
      if constexpr (detail::kMutation == 1) {
        if (first_bond) hop = -hop;
      }
      first_bond = false;
      op.matrix(i, j) = hop;
      op.matrix(j, i) = std::conj(hop);
    }
  }
  return op;
}

FullSpaceOperator assemble_full_space_hamiltonian(const FullBasis& full,
                                                  const PhysicalParams& params) {
  params.validate();
  const GridSpec& grid = full.grid;
  const std::size_t sites = grid.site_count();
  if (sites > kMaxFullSpaceSites || full.pattern_count != (std::size_t{1} << sites)) {
    throw std::invalid_argument("full-space Hamiltonian limited to oracle-scale grids");
  }

  // Bonds found by coordinate comparison over all site pairs.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> bonds;
  for (std::size_t a = 0; a < sites; ++a) {
    for (std::size_t b = a + 1; b < sites; ++b) {
      const Site sa = grid.site(a);
      const Site sb = grid.site(b);
      if (std::abs(sa.l - sb.l) + std::abs(sa.h - sb.h) == 1) {
        bonds.emplace_back(std::uint32_t{1} << a, std::uint32_t{1} << b);
      }
    }
  }

  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(full.pattern_count * (1 + bonds.size()));
  for (std::uint32_t p = 0; p < full.pattern_count; ++p) {
    const int photons = std::popcount(p);
    if (photons > 0) {
      entries.emplace_back(p, p, params.hbar * params.omega * photons);
    }
    for (const auto& [ma, mb] : bonds) {
      // a_a^dag a_b + a_b^dag a_a on hard-core occupations: one excitation
      // hops across the bond when exactly one end is occupied.
      const bool occ_a = (p & ma) != 0;
      const bool occ_b = (p & mb) != 0;
      if (occ_a != occ_b) entries.emplace_back(p ^ ma ^ mb, p, params.zeta);
    }
  }
  const auto dim = static_cast<Eigen::Index>(full.pattern_count);
  FullSpaceOperator op{full, Eigen::SparseMatrix<Complex>(dim, dim)};
  op.matrix.setFromTriplets(entries.begin(), entries.end());
  op.matrix.makeCompressed();
  return op;
}

HermitianOperator restrict_to_single_excitation(const FullSpaceOperator& op) {
  const FullBasis& full = op.basis;
  auto basis = std::make_shared<const BasisSet>(
      enumerate_basis(full.grid, Method::A, Boundary::Closed));
  const auto n = static_cast<Eigen::Index>(full.single_excitation.size());
  HermitianOperator out{basis, Eigen::MatrixXcd::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.matrix(i, j) = op.matrix.coeff(full.single_excitation[static_cast<std::size_t>(i)],
                                         full.single_excitation[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

namespace {

void write_square_csv(const Eigen::MatrixXd& m, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      os << (j ? "," : "") << buf;
    }
    os << '\n';
  }
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void write_matrix_csv(const HermitianOperator& op, const std::filesystem::path& real_path,
                      const std::filesystem::path& imag_path) {
  if (static_cast<std::size_t>(op.matrix.rows()) > kMaxDumpDimension) {
    throw std::invalid_argument("matrix dump limited to dimension " +
                                std::to_string(kMaxDumpDimension));
  }
  write_square_csv(op.matrix.real(), real_path);
  write_square_csv(op.matrix.imag(), imag_path);
}

}  // namespace photon_lattice
