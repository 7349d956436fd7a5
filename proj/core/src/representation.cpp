#include "qmd/representation.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace qmd {

Representation::Representation(OperatorAlgebra domain,
                               std::vector<ComplexMatrix> images)
    : domain_(std::move(domain)), images_(std::move(images)) {
  if (static_cast<Index>(images_.size()) != domain_.dim())
    throw std::invalid_argument(
        "Representation: image count " + std::to_string(images_.size()) +
        " does not match domain basis size " + std::to_string(domain_.dim()));
  for (const auto& im : images_) {
    if (im.rows() != im.cols())
      throw std::invalid_argument("Representation: images must be square");
  }
}

ComplexMatrix Representation::apply(const ComplexMatrix& a) const {
  ComplexVector c = domain_.coordinates(a);
  const Index m = images_.empty() ? domain_.ambient_dim() : images_[0].rows();
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (std::size_t j = 0; j < images_.size(); ++j)
    out += c(static_cast<Index>(j)) * images_[j];
  return out;
}

RepresentationReport Representation::verify(double tol) const {
  RepresentationReport report;
  const auto& basis = domain_.basis().basis;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const ComplexMatrix adj = basis[i].adjoint();
    report.adjoint_residual = std::max(
        report.adjoint_residual, (apply(adj) - images_[i].adjoint()).norm());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const ComplexMatrix prod = basis[i] * basis[j];
      report.multiplicativity_residual =
          std::max(report.multiplicativity_residual,
                   (apply(prod) - images_[i] * images_[j]).norm());
    }
  }
  if (!images_.empty()) {
    ComplexMatrix stacked(images_[0].rows() * images_[0].cols(),
                          static_cast<Index>(images_.size()));
    for (std::size_t j = 0; j < images_.size(); ++j)
      stacked.col(static_cast<Index>(j)) = vec(images_[j]);
    Eigen::JacobiSVD<ComplexMatrix> svd(stacked);
    const auto& sv = svd.singularValues();
    Index rank = 0;
    if (sv.size() > 0 && sv(0) > 0.0)
      while (rank < sv.size() && sv(rank) > std::max(tol, 1e-10) * sv(0)) ++rank;
    report.faithful = rank == domain_.dim();
  } else {
    report.faithful = true;
  }
  return report;
}

Representation representation_from_kraus(const OperatorAlgebra& domain,
                                         const std::vector<ComplexMatrix>& kraus) {
  std::vector<ComplexMatrix> images;
  images.reserve(static_cast<std::size_t>(domain.dim()));
  for (const auto& b : domain.basis().basis) {
    ComplexMatrix im = ComplexMatrix::Zero(domain.ambient_dim(), domain.ambient_dim());
    for (const auto& k : kraus) im += k * b * k.adjoint();
    images.push_back(std::move(im));
  }
  return Representation(domain, std::move(images));
}

Representation identity_representation(const OperatorAlgebra& alg) {
  return Representation(alg, alg.basis().basis);
}

Representation md_restriction(const QuantumChannel& ch,
                              const OperatorAlgebra& md_algebra) {
  if (md_algebra.ambient_dim() != ch.dim())
    throw std::invalid_argument("md_restriction: dimension mismatch");
  std::vector<ComplexMatrix> images;
  images.reserve(static_cast<std::size_t>(md_algebra.dim()));
  for (const auto& b : md_algebra.basis().basis) images.push_back(ch.apply(b));
  return Representation(md_algebra, std::move(images));
}

ComplexMatrix CanonicalForm::reconstruct(const ComplexMatrix& x) const {
  const Index n = unitary.rows();
  const Index dim_b = x.rows();
  ComplexMatrix padded = ComplexMatrix::Zero(n, n);
  for (Index a = 0; a < multiplicity; ++a)
    padded.block(a * dim_b, a * dim_b, dim_b, dim_b) = x;
  return unitary * padded * unitary.adjoint();
}

CanonicalForm canonical_form(const Representation& rep, double tol) {
  const OperatorAlgebra& dom = rep.domain();
  if (dom.blocks().size() != 1)
    throw std::invalid_argument(
        "canonical_form: defined for single-block domains; decompose first");
  RepresentationReport report = rep.verify(tol);
  if (!report.ok(std::max(tol, 1e-9) * 10.0))
    throw std::invalid_argument(
        "canonical_form: input does not verify as a representation "
        "(multiplicativity " +
        std::to_string(report.multiplicativity_residual) + ", adjoint " +
        std::to_string(report.adjoint_residual) + ")");

  const Index dim_b = dom.blocks()[0].dim_b;
  const Index n = dom.ambient_dim();

  // Images of the canonical matrix units of the block; they form a
  // matrix-unit system in the range algebra.
  std::vector<std::vector<ComplexMatrix>> f(
      static_cast<std::size_t>(dim_b),
      std::vector<ComplexMatrix>(static_cast<std::size_t>(dim_b)));
  for (Index i = 0; i < dim_b; ++i)
    for (Index j = 0; j < dim_b; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(dim_b, dim_b);
      e(i, j) = 1.0;
      f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          rep.apply(dom.block_element(0, e));
    }

  // rank(pi(unit)) = m * dim_b fixes the multiplicity.
  ComplexMatrix range_proj = rep.apply(dom.unit());
  HermitianEig peig = hermitian_eig(range_proj, 1e-8);
  Index rank = 0;
  for (Index i = 0; i < peig.eigenvalues.size(); ++i)
    if (peig.eigenvalues(i) > 0.5) ++rank;
  if (rank % dim_b != 0)
    throw std::invalid_argument(
        "canonical_form: rank of pi(unit) is not a multiple of dim B; the "
        "input is not a representation of this algebra");
  const Index m = rank / dim_b;

  // Orthonormal basis of range(pi(e_00)), gauge-fixed by phase.
  HermitianEig qeig = hermitian_eig(f[0][0], 1e-8);
  ComplexMatrix u(n, n);
  for (Index a = 0; a < m; ++a) {
    ComplexVector g = normalize_phase(qeig.eigenvectors.col(n - m + a));
    for (Index j = 0; j < dim_b; ++j)
      u.col(a * dim_b + j) = f[static_cast<std::size_t>(j)][0] * g;
  }
  // Deterministic completion on the orthocomplement of the range.
  for (Index c = 0; c < n - rank; ++c)
    u.col(rank + c) = normalize_phase(peig.eigenvectors.col(c));

  if ((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm() > 1e-8)
    throw std::runtime_error("canonical_form: assembled frame is not unitary");

  CanonicalForm out{m, std::move(u)};

  double resid = 0.0;
  for (Index i = 0; i < dim_b; ++i)
    for (Index j = 0; j < dim_b; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(dim_b, dim_b);
      e(i, j) = 1.0;
      resid = std::max(resid,
                       (out.reconstruct(e) -
                        f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                           .norm());
    }
  if (resid > std::max(1e-8, 100.0 * tol))
    throw std::runtime_error(
        "canonical_form: reconstruction residual " + std::to_string(resid));
  return out;
}

namespace fixtures {

OperatorAlgebra top_left_m2_in_m4() {
  return algebra_from_blocks({{1, 2}}, 2, ComplexMatrix::Identity(4, 4));
}

Representation doubled_block_rep() {
  OperatorAlgebra dom = top_left_m2_in_m4();
  std::vector<ComplexMatrix> images;
  for (const auto& b : dom.basis().basis) {
    ComplexMatrix im = ComplexMatrix::Zero(4, 4);
    im.block(0, 0, 2, 2) = b.block(0, 0, 2, 2);
    im.block(2, 2, 2, 2) = b.block(0, 0, 2, 2);
    images.push_back(std::move(im));
  }
  return Representation(std::move(dom), std::move(images));
}

OperatorAlgebra bit_flip_code_algebra() {
  ComplexMatrix w = qmd::fixtures::bit_flip_subspace_basis(0);
  ComplexMatrix u(8, 8);
  u.leftCols(2) = w;
  Index col = 2;
  for (Index i = 0; i < 8; ++i) {
    if (i == 0 || i == 7) continue;  // code basis vectors |000>, |111>
    u.col(col) = ComplexVector::Zero(8);
    u(i, col) = 1.0;
    ++col;
  }
  return algebra_from_blocks({{1, 2}}, 6, u);
}

Representation bit_flip_syndrome_rep() {
  std::vector<ComplexMatrix> kraus = qmd::fixtures::recovery_3q().dual().kraus();
  return representation_from_kraus(bit_flip_code_algebra(), kraus);
}

}  // namespace fixtures

}  // namespace qmd
