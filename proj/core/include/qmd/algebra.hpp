#pragma once

#include <cstdint>
#include <vector>

#include "qmd/numerics.hpp"
#include "qmd/types.hpp"

namespace qmd {

struct AlgebraBlock {
  Index dim_a = 0;  // multiplicity
  Index dim_b = 0;  // matrix size of the full factor
  friend bool operator==(const AlgebraBlock&, const AlgebraBlock&) = default;
};

/// A concrete finite-dimensional C*-algebra of operators on C^n, i.e. a
/// *-closed, product-closed subspace. Structure: there is a unitary U (the
/// embedding) aligning the ambient space with (+)_k (A_k (x) B_k) (+) K so
/// that U^dag A U = (+)_k (I_{A_k} (x) L(B_k)) (+) 0_K. The algebra may
/// annihilate the summand K, so its unit (the support projection) need not
/// be the ambient identity.
class OperatorAlgebra {
 public:
  OperatorAlgebra() = default;
  OperatorAlgebra(Index ambient_dim, OperatorSubspace basis,
                  std::vector<AlgebraBlock> blocks, ComplexMatrix embedding,
                  ComplexMatrix unit, Index kernel_dim)
      : ambient_dim_(ambient_dim),
        basis_(std::move(basis)),
        blocks_(std::move(blocks)),
        embedding_(std::move(embedding)),
        unit_(std::move(unit)),
        kernel_dim_(kernel_dim) {}

  Index ambient_dim() const { return ambient_dim_; }
  const OperatorSubspace& basis() const { return basis_; }
  Index dim() const { return basis_.dim(); }
  const std::vector<AlgebraBlock>& blocks() const { return blocks_; }
  const ComplexMatrix& embedding() const { return embedding_; }
  const ComplexMatrix& unit() const { return unit_; }
  Index kernel_dim() const { return kernel_dim_; }

  /// Rank of the unit = sum over blocks of dim_a * dim_b.
  Index support_dim() const { return ambient_dim_ - kernel_dim_; }

  bool contains(const ComplexMatrix& x, double tol = kDefaultTol) const {
    return basis_.contains(x, tol);
  }
  ComplexVector coordinates(const ComplexMatrix& x) const {
    return basis_.coordinates(x);
  }
  ComplexMatrix project(const ComplexMatrix& x) const {
    return basis_.project(x);
  }

  /// The ambient operator whose canonical form is I_{A_k} (x) X placed in
  /// block `k` (X is dim_b x dim_b), zero elsewhere.
  ComplexMatrix block_element(std::size_t k, const ComplexMatrix& x) const;

  /// Offset of block k in canonical coordinates.
  Index block_offset(std::size_t k) const;

 private:
  Index ambient_dim_ = 0;
  OperatorSubspace basis_;
  std::vector<AlgebraBlock> blocks_;
  ComplexMatrix embedding_;
  ComplexMatrix unit_;
  Index kernel_dim_ = 0;
};

/// Build the algebra with the given block structure embedded by the unitary
/// `embedding` (pass an identity for the canonical layout). Blocks occupy
/// consecutive canonical coordinates in the order given, the kernel summand
/// the trailing ones.
OperatorAlgebra algebra_from_blocks(const std::vector<AlgebraBlock>& blocks,
                                    Index kernel_dim,
                                    const ComplexMatrix& embedding);

/// Smallest *-closed, product-closed subspace containing the generators,
/// with the structure fields recovered by decompose(). Iterates
/// span -> span + span*span + adjoints until the dimension stabilizes.
OperatorAlgebra generate_algebra(Index ambient_dim,
                                 const std::vector<ComplexMatrix>& generators,
                                 double tol = kDefaultTol, std::uint64_t seed = 0);

/// Recover the Wedderburn structure of a *-closed, product-closed basis:
/// unit, minimal central projections (via a seeded random central element),
/// block dimensions, and the embedding unitary built from a matrix-unit
/// system per block. Deterministic given the seed. Throws if the basis is
/// not closed within tol, or if the recovered dimensions are inconsistent
/// (which signals closure failure or a tolerance misfit).
OperatorAlgebra decompose(const OperatorSubspace& basis,
                          double tol = kDefaultTol, std::uint64_t seed = 0);

/// {X : X g = g X for all generators g}, via the joint kernel of the
/// stacked commutator maps.
OperatorSubspace commutant(const std::vector<ComplexMatrix>& generators,
                           Index ambient_dim, double tol = kDefaultTol);

/// A positive element of the algebra with the same rank as the unit:
/// unit + h with h a random Hermitian algebra element scaled so the result
/// is >= unit/2. Seeded and reproducible.
ComplexMatrix random_positive_full_rank(const OperatorAlgebra& alg,
                                        std::uint64_t seed);

/// Whether a is in the algebra, positive semidefinite, and of maximal rank
/// inside it (rank equal to the rank of the unit).
bool is_positive_full_rank_element(const OperatorAlgebra& alg,
                                   const ComplexMatrix& a,
                                   double tol = kDefaultTol);

}  // namespace qmd
