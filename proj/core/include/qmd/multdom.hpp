#pragma once

#include <cstdint>
#include <string>

#include "qmd/algebra.hpp"
#include "qmd/channel.hpp"
#include "qmd/representation.hpp"
#include "qmd/types.hpp"

namespace qmd {

enum class MdMethod { DefinitionSystem, KrausSystem, UnitCharacterization };

std::string to_string(MdMethod method);

/// A computed (generalized) multiplicative domain: the solution subspace,
/// its algebra structure, the solver used, and the worst constraint
/// residual over the returned basis.
struct MultDomResult {
  OperatorSubspace subspace;
  OperatorAlgebra algebra;
  MdMethod method = MdMethod::DefinitionSystem;
  double worst_residual = 0.0;
};

/// Standard multiplicative domain: all a with phi(a b) = phi(a) phi(b) and
/// phi(b a) = phi(b) phi(a) for every b. Both sides are linear in a once b
/// is fixed, so ranging b over an HS basis of L(C^n) turns the quantifier
/// into a finite linear system solved by nullspace.
MultDomResult multiplicative_domain(const QuantumChannel& phi,
                                    double tol = kDefaultTol,
                                    std::uint64_t seed = 0);

/// Multiplicative domain of phi with respect to a representation pi of a
/// subalgebra A: all a in A with pi(a) phi(b) = phi(a b) and
/// phi(b) pi(a) = phi(b a) for every b in A. Linear in the algebra
/// coordinates of a; always a subalgebra of A.
MultDomResult generalized_multiplicative_domain(const QuantumChannel& phi,
                                                const Representation& pi,
                                                double tol = kDefaultTol,
                                                std::uint64_t seed = 0);

/// Kraus-level route to the same set for trace-preserving channels:
/// pi(a) E_i P - E_i a = P E_i^dag pi(a) - a E_i^dag = 0 for every Kraus
/// operator, with P the support projection (unit) of the domain algebra.
/// Refuses channels that are not trace-preserving.
MultDomResult multiplicative_domain_kraus(const QuantumChannel& channel,
                                          const Representation& pi,
                                          double tol = kDefaultTol,
                                          std::uint64_t seed = 0);

/// Equality case of the Schwarz inequality: phi(a)^dag phi(a) = phi(a^dag a)
/// and phi(a) phi(a)^dag = phi(a a^dag). For unital CP maps these equalities
/// characterize membership in the multiplicative domain; refuses non-unital
/// maps.
bool schwarz_equalities_hold(const QuantumChannel& phi, const ComplexMatrix& a,
                             double tol = kDefaultTol);

/// phi(a) pi(a) = phi(a^2) = pi(a) phi(a) for a in the domain algebra. For
/// unital trace-preserving channels, the span of the positive full-rank
/// solutions is the generalized multiplicative domain; the equalities alone
/// do not certify membership of rank-deficient elements. Refuses channels
/// that are not both unital and trace-preserving (either hypothesis alone
/// is insufficient; see the unital_not_tp_3d / tp_not_unital_3d fixtures).
bool square_equalities_hold(const QuantumChannel& channel,
                            const Representation& pi, const ComplexMatrix& a,
                            double tol = kDefaultTol);

/// Per-element form of the unit characterization:
/// phi(unit) pi(a) = phi(a) = pi(a) phi(unit). Same hypotheses and refusal
/// behavior as unit_characterization_set.
bool unit_equalities_hold(const QuantumChannel& channel,
                          const Representation& pi, const ComplexMatrix& a,
                          double tol = kDefaultTol);

/// Solve the unit characterization, which is linear in a:
/// { a in A : phi(unit) pi(a) = phi(a) = pi(a) phi(unit) }. For unital
/// trace-preserving channels this equals the generalized multiplicative
/// domain; both are computed and compared, and a mismatch beyond tolerance
/// is a hard error. Refuses channels that are not unital CPTP.
MultDomResult unit_characterization_set(const QuantumChannel& channel,
                                        const Representation& pi,
                                        double tol = kDefaultTol,
                                        std::uint64_t seed = 0);

/// Whether phi(a b) = a phi(b) and phi(b a) = phi(b) a for all a in the
/// algebra and all b in L(C^n).
bool is_bimodule(const QuantumChannel& phi, const OperatorAlgebra& alg,
                 double tol = kDefaultTol);

/// For algebras containing the ambient identity, the bimodule property is
/// equivalent to phi(I) a = phi(a) = a phi(I) over the algebra. Refuses
/// algebras without the ambient identity.
bool bimodule_characterization(const QuantumChannel& phi,
                               const OperatorAlgebra& alg,
                               double tol = kDefaultTol);

}  // namespace qmd
