#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "photon_lattice/hamiltonian.hpp"

using namespace photon_lattice;

namespace {

std::shared_ptr<const BasisSet> basis(int w, int h, Method m = Method::A,
                                      Boundary b = Boundary::Closed) {
  return std::make_shared<const BasisSet>(enumerate_basis(GridSpec(w, h), m, b));
}

}  // namespace

TEST(Hamiltonian, SingleCavity) {
  const HermitianOperator op = assemble_hamiltonian(basis(1, 1), PhysicalParams{});
  ASSERT_EQ(op.matrix.rows(), 1);
  EXPECT_EQ(op.matrix(0, 0), Complex(1e8));
}

TEST(Hamiltonian, Dimer) {
  const PhysicalParams p;
  const HermitianOperator op = assemble_hamiltonian(basis(2, 1), p);
  EXPECT_EQ(op.matrix(0, 0), Complex(1e8));
  EXPECT_EQ(op.matrix(0, 1), Complex(1e6));
  EXPECT_EQ(op.matrix(1, 0), Complex(1e6));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.matrix.real());
  EXPECT_DOUBLE_EQ(es.eigenvalues()(0), 1e8 - 1e6);
  EXPECT_DOUBLE_EQ(es.eigenvalues()(1), 1e8 + 1e6);
}

TEST(Hamiltonian, LargeGridEntryCounts) {
  const HermitianOperator op = assemble_hamiltonian(basis(31, 31), PhysicalParams{});
  int diag = 0;
  int hop = 0;
  int other = 0;
  for (Eigen::Index j = 0; j < op.matrix.cols(); ++j) {
    for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
      const Complex v = op.matrix(i, j);
      if (i == j) diag += v == Complex(1e8);
      else if (v == Complex(1e6)) ++hop;
      else other += v != Complex(0.0);
    }
  }
  EXPECT_EQ(diag, 961);
  EXPECT_EQ(hop, 3720);
  EXPECT_EQ(other, 0);
  EXPECT_TRUE(op.is_exactly_hermitian());
}

TEST(Hamiltonian, EscapedRowsCarryNoEnergy) {
  for (Method m : {Method::A, Method::B}) {
    const auto b = basis(4, 3, m, Boundary::Open);
    const HermitianOperator op = assemble_hamiltonian(b, PhysicalParams{});
    const auto n = static_cast<Eigen::Index>(b->in_plane_dimension());
    const auto e = op.matrix.rows() - n;
    EXPECT_EQ(op.matrix.bottomRows(e).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(op.matrix.rightCols(e).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Hamiltonian, MethodsAgreeInPlane) {
  const PhysicalParams p;
  const auto a = assemble_hamiltonian(basis(5, 4, Method::A, Boundary::Open), p);
  const auto b = assemble_hamiltonian(basis(5, 4, Method::B, Boundary::Open), p);
  EXPECT_EQ(a.matrix.topLeftCorner(20, 20), b.matrix.topLeftCorner(20, 20));
}

TEST(FullSpaceHamiltonian, DimerExpansion) {
  const PhysicalParams p;
  const FullSpaceOperator full = assemble_full_space_hamiltonian(enumerate_full_space(GridSpec(2, 1)), p);
  const Eigen::MatrixXcd dense(full.matrix);
  ASSERT_EQ(dense.rows(), 4);
  EXPECT_EQ(dense(0, 0), Complex(0.0));
  EXPECT_EQ(dense(3, 3), Complex(2e8));  // both cavities occupied
  const HermitianOperator restricted = restrict_to_single_excitation(full);
  EXPECT_EQ(restricted.matrix, assemble_hamiltonian(basis(2, 1), p).matrix);
}

TEST(FullSpaceHamiltonian, RestrictionMatchesReducedAssembly) {
  const PhysicalParams p;
  for (auto [w, h] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{3, 3}, std::pair{4, 2}}) {
    const GridSpec g(w, h);
    const FullSpaceOperator full = assemble_full_space_hamiltonian(enumerate_full_space(g), p);
    EXPECT_EQ(full.matrix.rows(), 1 << (w * h));
    EXPECT_EQ(full.matrix.coeff(0, 0), Complex(0.0));
    EXPECT_EQ(restrict_to_single_excitation(full).matrix, assemble_hamiltonian(basis(w, h), p).matrix)
        << w << "x" << h;
  }
  const HermitianOperator r22 = restrict_to_single_excitation(
      assemble_full_space_hamiltonian(enumerate_full_space(GridSpec(2, 2)), p));
  EXPECT_EQ((r22.matrix.array() == Complex(1e6)).count(), 8);
}

TEST(Params, Validation) {
  PhysicalParams p;
  EXPECT_NO_THROW(p.validate());
  EXPECT_TRUE(p.warnings().empty());
  p.dt = 0.0;
  try {
    p.validate();
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("dt"), std::string::npos);
  }
  p = {};
  p.gamma = std::nan("");
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.zeta = 2e7;
  p.gamma = 1e8;
  EXPECT_EQ(p.warnings().size(), 2u);
}

TEST(Hamiltonian, CsvDump) {
  const auto dir = std::filesystem::temp_directory_path() / "photon_lattice_csv_dump";
  std::filesystem::create_directories(dir);
  write_matrix_csv(assemble_hamiltonian(basis(2, 1), PhysicalParams{}), dir / "re.csv",
                   dir / "im.csv");
  std::ifstream re(dir / "re.csv");
  std::string line;
  std::getline(re, line);
  EXPECT_EQ(line, "100000000,1000000");
  EXPECT_THROW(write_matrix_csv(assemble_hamiltonian(basis(9, 9), PhysicalParams{}),
                                dir / "a.csv", dir / "b.csv"),
               std::invalid_argument);
  std::filesystem::remove_all(dir);
}
