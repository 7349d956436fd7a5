#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qmd/types.hpp"

namespace qmd {

/// A completely positive map on L(C^n) carried by a finite Kraus family
/// {E_i}: apply(x) = sum_i E_i x E_i^dag. Channels are square (domain and
/// codomain are the same L(C^n)). Immutable after construction; the
/// trace-preservation and unitality residuals are computed once.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<ComplexMatrix> kraus);

  Index dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;

  /// The dual map with respect to the trace pairing: Kraus family {E_i^dag},
  /// so Tr(apply(a) b) = Tr(a dual().apply(b)).
  QuantumChannel dual() const;

  /// ||sum E_i^dag E_i - I|| against tol.
  bool is_trace_preserving(double tol = kDefaultTol) const {
    return tp_residual_ < tol;
  }
  /// ||sum E_i E_i^dag - I|| against tol.
  bool is_unital(double tol = kDefaultTol) const {
    return unital_residual_ < tol;
  }

  double tp_residual() const { return tp_residual_; }
  double unital_residual() const { return unital_residual_; }

 private:
  Index dim_;
  std::vector<ComplexMatrix> kraus_;
  double tp_residual_;
  double unital_residual_;
};

/// Composition outer . inner, Kraus family {F_j E_i}.
QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner);

/// Choi matrix sum_i vec(E_i) vec(E_i)^dag (row-major vec). Equal Choi
/// matrices <=> equal maps; Kraus lists are never compared directly since
/// distinct families with equal linear spans define the same map.
ComplexMatrix choi(const QuantumChannel& ch);

/// Frobenius distance of the Choi matrices against tol.
bool channels_equal(const QuantumChannel& a, const QuantumChannel& b,
                    double tol = kDefaultTol);

Index choi_rank(const QuantumChannel& ch, double tol = kDefaultTol);

/// Kraus family recovered from a Choi matrix (eigendecomposition; requires
/// the matrix to be PSD within tol).
std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi_matrix,
                                           double tol = kDefaultTol);

/// Stinespring-style dilation: the (k n) x n matrix V with i-th block
/// E_i^dag, so V^dag (I_k (x) a) V = apply(a) for every a. V is an isometry
/// iff the channel is unital.
ComplexMatrix stinespring(const QuantumChannel& ch);

// ---------------------------------------------------------------------------
// Bundled example channels. Entries are exact binary doubles of
// {0, +-1/2, +-sqrt(2)/2, 1}.
// ---------------------------------------------------------------------------
namespace fixtures {

/// Three-qubit map with equal probability of no error or a bit flip on one
/// qubit: Kraus (1/2){III, XII, IXI, IIX}.
QuantumChannel bit_flip_3q();

/// A correction operation for bit_flip_3q on the span{|000>,|111>} code:
/// Kraus {P_C0, (XII)P_C1, (IXI)P_C2, (IIX)P_C3}.
QuantumChannel recovery_3q();

/// Unital trace-preserving map on M_4 whose generalized multiplicative
/// domain excludes a rank-deficient element that nevertheless passes the
/// quadratic membership equalities.
QuantumChannel counterexample_4d();

/// Unital but not trace-preserving map on M_3.
QuantumChannel unital_not_tp_3d();

/// Trace-preserving but not unital map on M_3.
QuantumChannel tp_not_unital_3d();

/// Lookup by the names above; throws std::invalid_argument on unknown names.
QuantumChannel by_name(std::string_view name);

std::vector<std::string> names();

/// Projections P_C0..P_C3 onto the four bit-flip code subspaces
/// span{|000>,|111>}, span{|100>,|011>}, span{|010>,|101>}, span{|001>,|110>}.
ComplexMatrix bit_flip_subspace_projector(int k);

/// The two basis vectors of the k-th bit-flip subspace, as columns.
ComplexMatrix bit_flip_subspace_basis(int k);

}  // namespace fixtures

}  // namespace qmd
