#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qmd/algebra.hpp"
#include "qmd/channel.hpp"
#include "qmd/random.hpp"
#include "qmd/representation.hpp"
#include "support.hpp"

using namespace qmd;

namespace {

ComplexMatrix pauli(int which) {
  ComplexMatrix m(2, 2);
  switch (which) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

std::vector<AlgebraBlock> sorted_blocks(std::vector<AlgebraBlock> b) {
  std::sort(b.begin(), b.end(), [](const AlgebraBlock& x, const AlgebraBlock& y) {
    return std::pair(x.dim_a, x.dim_b) < std::pair(y.dim_a, y.dim_b);
  });
  return b;
}

}  // namespace

TEST_CASE("generate: I (x) {X, Z} closes to I (x) M_2") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  OperatorAlgebra alg =
      generate_algebra(4, {kron(i2, pauli(1)), kron(i2, pauli(0))});
  CHECK(alg.dim() == 4);
  REQUIRE(alg.blocks().size() == 1);
  CHECK(alg.blocks()[0] == AlgebraBlock{2, 2});
  CHECK(alg.kernel_dim() == 0);
}

TEST_CASE("generate: the identity alone gives scalars") {
  OperatorAlgebra alg = generate_algebra(2, {ComplexMatrix::Identity(2, 2)});
  CHECK(alg.dim() == 1);
  REQUIRE(alg.blocks().size() == 1);
  CHECK(alg.blocks()[0] == AlgebraBlock{2, 1});
  CHECK(alg.kernel_dim() == 0);
}

TEST_CASE("generate: top-left matrix units of M_4 give an annihilated summand") {
  std::vector<ComplexMatrix> gens;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(4, 4);
      e(i, j) = 1.0;
      gens.push_back(std::move(e));
    }
  OperatorAlgebra alg = generate_algebra(4, gens);
  CHECK(alg.dim() == 4);
  REQUIRE(alg.blocks().size() == 1);
  CHECK(alg.blocks()[0] == AlgebraBlock{1, 2});
  CHECK(alg.kernel_dim() == 2);
}

TEST_CASE("decompose: canonical I_2 (x) L(C^2)") {
  OperatorAlgebra built =
      algebra_from_blocks({{2, 2}}, 0, ComplexMatrix::Identity(4, 4));
  OperatorAlgebra rec = decompose(built.basis());
  REQUIRE(rec.blocks().size() == 1);
  CHECK(rec.blocks()[0] == AlgebraBlock{2, 2});
  CHECK(rec.kernel_dim() == 0);
  CHECK(subspace_equal(rec.basis(), built.basis(), 1e-10).equal);
}

TEST_CASE("decompose: randomly embedded I_2 (x) L(C^2) (+) 0_1 in M_5") {
  Rng rng(42);
  ComplexMatrix w = random_unitary(5, rng);
  OperatorAlgebra built = algebra_from_blocks({{2, 2}}, 1, w);
  OperatorAlgebra rec = decompose(built.basis(), 1e-9, 1);
  REQUIRE(rec.blocks().size() == 1);
  CHECK(rec.blocks()[0] == AlgebraBlock{2, 2});
  CHECK(rec.kernel_dim() == 1);

  // Round trip through the recovered embedding.
  OperatorAlgebra rebuilt =
      algebra_from_blocks(rec.blocks(), rec.kernel_dim(), rec.embedding());
  SubspaceComparison cmp = subspace_equal(rebuilt.basis(), built.basis(), 1e-8);
  CHECK(cmp.equal);
  CHECK(cmp.max_angle < 1e-8);
}

TEST_CASE("decompose: L(C_0) for the bit-flip code") {
  OperatorAlgebra alg = fixtures::bit_flip_code_algebra();
  OperatorAlgebra rec = decompose(alg.basis());
  REQUIRE(rec.blocks().size() == 1);
  CHECK(rec.blocks()[0] == AlgebraBlock{1, 2});
  CHECK(rec.kernel_dim() == 6);
}

TEST_CASE("decompose round trips over random block structures") {
  Rng rng(100);
  for (int trial = 0; trial < 12; ++trial) {
    OperatorAlgebra built = test::random_block_algebra(10, rng);
    OperatorAlgebra rec = decompose(built.basis(), 1e-9, 7 + trial);
    CHECK(sorted_blocks(rec.blocks()) == sorted_blocks(built.blocks()));
    CHECK(rec.kernel_dim() == built.kernel_dim());
    SubspaceComparison cmp = subspace_equal(rec.basis(), built.basis(), 1e-8);
    CHECK(cmp.equal);

    // Canonical elements conjugated back land in the algebra.
    for (std::size_t k = 0; k < rec.blocks().size(); ++k) {
      ComplexMatrix x = random_gaussian(rec.blocks()[k].dim_b,
                                        rec.blocks()[k].dim_b, rng);
      CHECK(built.contains(rec.block_element(k, x), 1e-7));
    }
  }
}

TEST_CASE("decompose rejects non-closed bases") {
  // span{X} alone is not product-closed (X^2 = I is missing).
  OperatorSubspace s = orthonormalize(2, {pauli(1)});
  CHECK_THROWS_AS(decompose(s), std::invalid_argument);
}

TEST_CASE("decompose of the empty subspace") {
  OperatorSubspace s;
  s.ambient_dim = 3;
  OperatorAlgebra alg = decompose(s);
  CHECK(alg.dim() == 0);
  CHECK(alg.blocks().empty());
  CHECK(alg.kernel_dim() == 3);
  CHECK(alg.unit().norm() == 0.0);
}

TEST_CASE("commutant: Schur cases") {
  OperatorSubspace full_comm = commutant(matrix_unit_basis(3), 3);
  CHECK(full_comm.dim() == 1);
  CHECK(full_comm.contains(ComplexMatrix::Identity(3, 3) / std::sqrt(3.0)));

  OperatorSubspace of_identity = commutant({ComplexMatrix::Identity(3, 3)}, 3);
  CHECK(of_identity.dim() == 9);
}

TEST_CASE("commutant of I (x) M_2 is M_2 (x) I") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  std::vector<ComplexMatrix> gens;
  for (const auto& u : matrix_unit_basis(2)) gens.push_back(kron(i2, u));
  OperatorSubspace comm = commutant(gens, 4);
  CHECK(comm.dim() == 4);
  std::vector<ComplexMatrix> expected;
  for (const auto& u : matrix_unit_basis(2)) expected.push_back(kron(u, i2));
  OperatorSubspace hand = orthonormalize(4, expected);
  CHECK(subspace_equal(comm, hand, 1e-10).equal);
}

TEST_CASE("contains: unit, zero, and a non-member") {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  std::vector<ComplexMatrix> gens;
  for (const auto& u : matrix_unit_basis(2)) gens.push_back(kron(i2, u));
  OperatorAlgebra alg = generate_algebra(4, gens);
  CHECK(alg.contains(alg.unit()));
  CHECK(alg.contains(ComplexMatrix::Zero(4, 4)));
  CHECK_FALSE(alg.contains(kron(pauli(1), i2)));
}

TEST_CASE("random_positive_full_rank stays positive with the unit's rank") {
  // Scalar algebra: the only option is a positive multiple of the identity.
  OperatorAlgebra scalars = generate_algebra(3, {ComplexMatrix::Identity(3, 3)});
  ComplexMatrix a = random_positive_full_rank(scalars, 5);
  CHECK(scalars.contains(a));
  HermitianEig eig = hermitian_eig(a);
  CHECK(eig.eigenvalues(0) >= 0.4);
  CHECK((a - a(0, 0) * ComplexMatrix::Identity(3, 3)).norm() < 1e-12);

  Rng rng(55);
  for (int trial = 0; trial < 8; ++trial) {
    OperatorAlgebra alg = test::random_block_algebra(8, rng);
    if (alg.dim() == 0) continue;
    ComplexMatrix b = random_positive_full_rank(alg, 100 + trial);
    CHECK(alg.contains(b, 1e-9));
    CHECK(is_positive_full_rank_element(alg, b));
    HermitianEig be = hermitian_eig(b, 1e-8);
    for (Index i = 0; i < be.eigenvalues.size(); ++i) {
      const double v = be.eigenvalues(i);
      CHECK((v < 1e-9 || v >= 0.4));
    }
  }
}

TEST_CASE("the diagonal algebra of M_3 admits diag(1, 5/2, 3) as positive full rank") {
  std::vector<ComplexMatrix> gens;
  for (Index i = 0; i < 3; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(3, 3);
    e(i, i) = 1.0;
    gens.push_back(std::move(e));
  }
  OperatorAlgebra diag = generate_algebra(3, gens);
  CHECK(diag.dim() == 3);
  ComplexMatrix a = ComplexMatrix::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 2.5;
  a(2, 2) = 3.0;
  CHECK(is_positive_full_rank_element(diag, a));
}

TEST_CASE("a rank-1 projection is not full rank inside the embedded M_2") {
  OperatorAlgebra alg = fixtures::top_left_m2_in_m4();
  ComplexMatrix a = ComplexMatrix::Zero(4, 4);
  a(0, 0) = 1.0;  // rank 1 < rank(unit) = 2
  CHECK(alg.contains(a));
  CHECK_FALSE(is_positive_full_rank_element(alg, a));
}

TEST_CASE("unit is an idempotent two-sided identity") {
  Rng rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    OperatorAlgebra alg = test::random_block_algebra(9, rng);
    const ComplexMatrix& u = alg.unit();
    CHECK((u * u - u).norm() < 1e-10);
    CHECK((u - u.adjoint()).norm() < 1e-10);
    for (const auto& b : alg.basis().basis) {
      CHECK((u * b - b).norm() < 1e-10);
      CHECK((b * u - b).norm() < 1e-10);
    }
  }
}

TEST_CASE("bicommutant recovers unital algebras") {
  Rng rng(88);
  for (int trial = 0; trial < 6; ++trial) {
    OperatorAlgebra alg = test::random_block_algebra(8, rng);
    if (alg.kernel_dim() != 0) continue;  // bicommutant needs the full unit
    OperatorSubspace first = commutant(alg.basis().basis, alg.ambient_dim());
    OperatorSubspace second = commutant(first.basis, alg.ambient_dim());
    CHECK(subspace_equal(second, alg.basis(), 1e-8).equal);
  }
}
