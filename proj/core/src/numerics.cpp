#include "qmd/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qmd {

ComplexVector vec(const ComplexMatrix& m) {
  ComplexVector v(m.rows() * m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

ComplexMatrix unvec(const ComplexVector& v, Index n) {
  if (v.size() != n * n)
    throw std::invalid_argument("unvec: vector length " +
                                std::to_string(v.size()) +
                                " is not n*n for n = " + std::to_string(n));
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  return m;
}

Complex hs_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw std::invalid_argument("hs_inner: shape mismatch");
  return x.conjugate().cwiseProduct(y).sum();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::vector<ComplexMatrix> matrix_unit_basis(Index n) {
  std::vector<ComplexMatrix> units;
  units.reserve(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = 1.0;
      units.push_back(std::move(e));
    }
  return units;
}

ComplexMatrix OperatorSubspace::project(const ComplexMatrix& x) const {
  ComplexMatrix p = ComplexMatrix::Zero(ambient_dim, ambient_dim);
  for (const auto& b : basis) p += hs_inner(b, x) * b;
  return p;
}

ComplexVector OperatorSubspace::coordinates(const ComplexMatrix& x) const {
  ComplexVector c(dim());
  for (Index j = 0; j < dim(); ++j) c(j) = hs_inner(basis[j], x);
  return c;
}

bool OperatorSubspace::contains(const ComplexMatrix& x, double tol) const {
  return (x - project(x)).norm() < tol * std::max(1.0, x.norm());
}

ComplexMatrix OperatorSubspace::basis_matrix() const {
  ComplexMatrix b(ambient_dim * ambient_dim, dim());
  for (Index j = 0; j < dim(); ++j) b.col(j) = vec(basis[j]);
  return b;
}

OperatorSubspace orthonormalize(Index ambient_dim,
                                const std::vector<ComplexMatrix>& spanning,
                                double tol) {
  OperatorSubspace out;
  out.ambient_dim = ambient_dim;
  if (spanning.empty()) return out;

  ComplexMatrix a(ambient_dim * ambient_dim, static_cast<Index>(spanning.size()));
  for (std::size_t j = 0; j < spanning.size(); ++j) {
    if (spanning[j].rows() != ambient_dim || spanning[j].cols() != ambient_dim)
      throw std::invalid_argument("orthonormalize: element " +
                                  std::to_string(j) + " is not n x n");
    a.col(static_cast<Index>(j)) = vec(spanning[j]);
  }

  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return out;
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > tol * sv(0)) ++rank;
  for (Index j = 0; j < rank; ++j)
    out.basis.push_back(unvec(svd.matrixU().col(j), ambient_dim));
  return out;
}

KernelResult kernel_basis(const std::vector<ComplexMatrix>& constraints,
                          Index cols, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("kernel_basis: tol must be > 0");
  if (constraints.empty()) {
    // No constraints: the kernel is the full space.
    return {ComplexMatrix::Identity(cols, cols), 0.0};
  }

  Index rows = 0;
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    if (constraints[k].cols() != cols)
      throw std::invalid_argument(
          "kernel_basis: constraint " + std::to_string(k) + " has " +
          std::to_string(constraints[k].cols()) + " columns, expected " +
          std::to_string(cols));
    rows += constraints[k].rows();
  }

  ComplexMatrix stacked(rows, cols);
  Index at = 0;
  for (const auto& c : constraints) {
    stacked.middleRows(at, c.rows()) = c;
    at += c.rows();
  }

  // Divide-and-conquer SVD for tall stacks; Jacobi below that for its
  // better small-singular-value accuracy.
  RealVector sv;
  ComplexMatrix v;
  if (rows >= 512) {
    Eigen::BDCSVD<ComplexMatrix> svd(stacked, Eigen::ComputeFullV);
    sv = svd.singularValues();
    v = svd.matrixV();
  } else {
    Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeFullV);
    sv = svd.singularValues();
    v = svd.matrixV();
  }
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  // The floor at 1 keeps constraint stacks that are zero up to roundoff
  // (smax at machine noise) from masquerading as full rank; constraints in
  // this library are O(1)-scaled.
  const double cutoff = tol * std::max(smax, 1.0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  const double cut = rank < sv.size() ? sv(rank) : 0.0;
  return {v.rightCols(cols - rank), cut};
}

OperatorSubspace nullspace(const std::vector<ComplexMatrix>& constraints,
                           Index ambient_dim, double tol) {
  KernelResult k = kernel_basis(constraints, ambient_dim * ambient_dim, tol);
  OperatorSubspace out;
  out.ambient_dim = ambient_dim;
  out.basis.reserve(static_cast<std::size_t>(k.basis.cols()));
  for (Index j = 0; j < k.basis.cols(); ++j)
    out.basis.push_back(unvec(k.basis.col(j), ambient_dim));
  return out;
}

SubspaceComparison subspace_equal(const OperatorSubspace& s1,
                                  const OperatorSubspace& s2, double tol) {
  if (s1.ambient_dim != s2.ambient_dim)
    throw std::invalid_argument("subspace_equal: ambient dimension mismatch");
  if (s1.dim() != s2.dim()) return {false, M_PI / 2.0};
  if (s1.dim() == 0) return {true, 0.0};

  // sin of the largest principal angle: top singular value of (I - P1) B2.
  // Stable for tiny angles, unlike acos of B1^dag B2 singular values.
  ComplexMatrix b1 = s1.basis_matrix();
  ComplexMatrix b2 = s2.basis_matrix();
  ComplexMatrix resid = b2 - b1 * (b1.adjoint() * b2);
  Eigen::JacobiSVD<ComplexMatrix> svd(resid);
  const double s = std::min(1.0, svd.singularValues()(0));
  const double angle = std::asin(s);
  return {angle < tol, angle};
}

HermitianEig hermitian_eig(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermitian_eig: matrix not square");
  const double herm_resid = (m - m.adjoint()).norm();
  if (herm_resid > tol * std::max(1.0, m.norm()))
    throw std::invalid_argument("hermitian_eig: input not Hermitian (||M - M^dag|| = " +
                                std::to_string(herm_resid) + ")");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

std::vector<std::pair<Index, Index>> cluster_eigenvalues(const RealVector& vals,
                                                         double gap) {
  std::vector<std::pair<Index, Index>> clusters;
  Index start = 0;
  for (Index i = 1; i <= vals.size(); ++i) {
    if (i == vals.size() || vals(i) - vals(i - 1) > gap) {
      clusters.emplace_back(start, i - start);
      start = i;
    }
  }
  return clusters;
}

ComplexMatrix support_projection(const ComplexMatrix& psd, double tol) {
  HermitianEig eig = hermitian_eig(psd, std::max(tol, 1e-8));
  const double lmax = eig.eigenvalues.size() > 0
                          ? std::max(0.0, eig.eigenvalues(eig.eigenvalues.size() - 1))
                          : 0.0;
  ComplexMatrix p = ComplexMatrix::Zero(psd.rows(), psd.cols());
  if (lmax <= 0.0) return p;
  for (Index j = 0; j < eig.eigenvalues.size(); ++j) {
    if (eig.eigenvalues(j) > tol * lmax)
      p += eig.eigenvectors.col(j) * eig.eigenvectors.col(j).adjoint();
  }
  return p;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Index dim_a, Index dim_b,
                            Factor traced_out) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw std::invalid_argument("partial_trace: dimensions do not factor");
  if (traced_out == Factor::B) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
      for (Index k = 0; k < dim_a; ++k)
        for (Index b = 0; b < dim_b; ++b)
          out(i, k) += m(i * dim_b + b, k * dim_b + b);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (Index b = 0; b < dim_b; ++b)
    for (Index c = 0; c < dim_b; ++c)
      for (Index i = 0; i < dim_a; ++i) out(b, c) += m(i * dim_b + b, i * dim_b + c);
  return out;
}

ComplexMatrix pinv(const ComplexMatrix& m, double tol) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  ComplexVector inv = ComplexVector::Zero(sv.size());
  for (Index j = 0; j < sv.size(); ++j)
    if (smax > 0.0 && sv(j) > tol * smax) inv(j) = 1.0 / sv(j);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

ComplexVector normalize_phase(const ComplexVector& v) {
  Index at = 0;
  double best = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > best + 1e-15) {
      best = std::abs(v(i));
      at = i;
    }
  }
  if (best <= 0.0) return v;
  return v * (std::conj(v(at)) / std::abs(v(at)));
}

}  // namespace qmd
