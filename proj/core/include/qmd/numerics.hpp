#pragma once

#include <utility>
#include <vector>

#include "qmd/types.hpp"

namespace qmd {

// ---------------------------------------------------------------------------
// Vectorization. Row-major throughout: vec(M)[i*n + j] = M(i, j). With this
// convention vec(A X B) = (A (x) B^T) vec(X), and vec is an isometry for the
// Hilbert-Schmidt inner product <X,Y> = Tr(X^dag Y).
// ---------------------------------------------------------------------------

ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Index n);

/// Hilbert-Schmidt inner product Tr(X^dag Y).
Complex hs_inner(const ComplexMatrix& x, const ComplexMatrix& y);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// The n^2 matrix units |i><j| of L(C^n), an HS-orthonormal basis,
/// ordered row-major to match vec().
std::vector<ComplexMatrix> matrix_unit_basis(Index n);

// ---------------------------------------------------------------------------
// Operator subspaces
// ---------------------------------------------------------------------------

/// A linear subspace of L(C^n) carried by an HS-orthonormal basis.
struct OperatorSubspace {
  Index ambient_dim = 0;
  std::vector<ComplexMatrix> basis;

  Index dim() const { return static_cast<Index>(basis.size()); }

  /// HS-orthogonal projection onto the subspace.
  ComplexMatrix project(const ComplexMatrix& x) const;

  /// Basis coordinates <b_j, x> of (the projection of) x.
  ComplexVector coordinates(const ComplexMatrix& x) const;

  /// ||x - project(x)|| < tol * max(1, ||x||).
  bool contains(const ComplexMatrix& x, double tol = kDefaultTol) const;

  /// n^2 x dim matrix whose columns are the vec'd basis elements.
  ComplexMatrix basis_matrix() const;
};

/// HS-orthonormal basis of the span of the given matrices (SVD rank cut at
/// tol relative to the largest singular value).
OperatorSubspace orthonormalize(Index ambient_dim,
                                const std::vector<ComplexMatrix>& spanning,
                                double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Joint kernels of linear constraint maps
// ---------------------------------------------------------------------------

struct KernelResult {
  /// cols x k matrix with orthonormal columns spanning the joint kernel.
  ComplexMatrix basis;
  /// Largest singular value counted as zero by the rank cut (0 if none);
  /// bounds ||C v|| over every returned kernel vector v.
  double cut_residual = 0.0;
};

/// Orthonormal basis of the joint kernel of the stacked constraint matrices.
/// Singular values below tol * (largest singular value) count as zero.
/// An empty constraint list yields the full space. Requires tol > 0.
KernelResult kernel_basis(const std::vector<ComplexMatrix>& constraints,
                          Index cols, double tol = kDefaultTol);

/// Joint kernel of constraint matrices acting on vec'd operators on C^n,
/// returned as an operator subspace.
OperatorSubspace nullspace(const std::vector<ComplexMatrix>& constraints,
                           Index ambient_dim, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Subspace comparison
// ---------------------------------------------------------------------------

struct SubspaceComparison {
  bool equal = false;
  /// Largest principal angle, radians. Computed from sin(theta) so that
  /// angles far below sqrt(machine eps) are resolved.
  double max_angle = 0.0;
};

/// Equal iff dimensions agree and the largest principal angle is < tol.
SubspaceComparison subspace_equal(const OperatorSubspace& s1,
                                  const OperatorSubspace& s2,
                                  double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Hermitian eigendecompositions
// ---------------------------------------------------------------------------

struct HermitianEig {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns, aligned with eigenvalues
};

/// Requires ||M - M^dag|| < tol * max(1, ||M||). Eigenvectors within a
/// degenerate cluster are an arbitrary orthonormal basis of the cluster
/// space; downstream code must only use cluster projectors.
HermitianEig hermitian_eig(const ComplexMatrix& m, double tol = kDefaultTol);

/// Group ascending eigenvalues into clusters separated by gaps > gap.
/// Returns (start index, count) per cluster.
std::vector<std::pair<Index, Index>> cluster_eigenvalues(const RealVector& vals,
                                                         double gap);

/// Orthogonal projection onto the range of a PSD matrix (eigenvalues above
/// tol * lambda_max).
ComplexMatrix support_projection(const ComplexMatrix& psd,
                                 double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Misc
// ---------------------------------------------------------------------------

enum class Factor { A, B };

/// Partial trace of an operator on C^{dim_a} (x) C^{dim_b} over the named
/// factor (indices row-major: row = a*dim_b + b). Tracing out A returns a
/// dim_b x dim_b matrix, tracing out B a dim_a x dim_a one.
ComplexMatrix partial_trace(const ComplexMatrix& m, Index dim_a, Index dim_b,
                            Factor traced_out);

/// Moore-Penrose pseudoinverse with relative rank cut.
ComplexMatrix pinv(const ComplexMatrix& m, double tol = kDefaultTol);

/// Multiply by a unit-modulus scalar so the largest-magnitude entry becomes
/// real nonnegative (ties: lowest index). Used to fix gauge freedom of
/// computed eigenvectors deterministically.
ComplexVector normalize_phase(const ComplexVector& v);

}  // namespace qmd
