#pragma once

#include <vector>

#include "qmd/algebra.hpp"
#include "qmd/channel.hpp"
#include "qmd/types.hpp"

namespace qmd {

struct RepresentationReport {
  double multiplicativity_residual = 0.0;
  double adjoint_residual = 0.0;
  bool faithful = false;

  bool ok(double tol = kDefaultTol) const {
    return multiplicativity_residual < tol && adjoint_residual < tol && faithful;
  }
};

/// A *-homomorphism pi from an operator algebra into L(C^n), stored as the
/// images of the domain's orthonormal basis and extended by linearity.
class Representation {
 public:
  Representation(OperatorAlgebra domain, std::vector<ComplexMatrix> images);

  const OperatorAlgebra& domain() const { return domain_; }
  const std::vector<ComplexMatrix>& images() const { return images_; }

  /// pi(a) for a in the domain (a is projected onto the domain basis).
  ComplexMatrix apply(const ComplexMatrix& a) const;

  /// Multiplicativity / adjoint residuals over all basis pairs, and
  /// faithfulness via the rank of the stacked images.
  RepresentationReport verify(double tol = kDefaultTol) const;

 private:
  OperatorAlgebra domain_;
  std::vector<ComplexMatrix> images_;
};

/// pi(a) = sum_l K_l a K_l^dag restricted to the domain basis. This form is
/// a representation exactly when the K_l have orthogonal ranges aligned
/// with the domain; verify() reports whether it is.
Representation representation_from_kraus(const OperatorAlgebra& domain,
                                         const std::vector<ComplexMatrix>& kraus);

/// The identity representation a -> a.
Representation identity_representation(const OperatorAlgebra& alg);

/// The restriction of a channel to its multiplicative domain, which acts
/// there as a representation. `md_algebra` must be the channel's computed
/// multiplicative domain (see multdom.hpp).
Representation md_restriction(const QuantumChannel& ch,
                              const OperatorAlgebra& md_algebra);

/// Canonical form of a representation of a single-block algebra
/// I_A (x) L(B): a multiplicity m and a unitary U with
/// pi(I_A (x) X) = U (I_m (x) X (+) 0) U^dag for all X in L(B). The first
/// m*dim_b columns of U span the range of pi(unit); the remaining columns
/// are an arbitrary (deterministically chosen) completion. U's gauge is a
/// convention: compare reconstructed images, never U itself.
struct CanonicalForm {
  Index multiplicity = 0;
  ComplexMatrix unitary;

  /// U (I_m (x) x (+) 0) U^dag.
  ComplexMatrix reconstruct(const ComplexMatrix& x) const;
};

CanonicalForm canonical_form(const Representation& rep, double tol = kDefaultTol);

namespace fixtures {

/// The algebra of operators supported on the top-left 2x2 block of M_4
/// together with the doubling representation A -> A (+) A.
Representation doubled_block_rep();

/// The domain algebra of doubled_block_rep (M_2 embedded top-left in M_4).
OperatorAlgebra top_left_m2_in_m4();

/// L(C_0) for the three-qubit bit-flip code C_0 = span{|000>,|111>}.
OperatorAlgebra bit_flip_code_algebra();

/// The syndrome representation of L(C_0): conjugation by the Kraus family
/// {P_C0, P_C1 (XII), P_C2 (IXI), P_C3 (IIX)} (the dual of the bit-flip
/// recovery channel, restricted to L(C_0)).
Representation bit_flip_syndrome_rep();

}  // namespace fixtures

}  // namespace qmd
