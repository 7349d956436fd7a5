#include "qmd/algebra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "qmd/random.hpp"

namespace qmd {

namespace {

// Spectral norm of a Hermitian matrix.
double herm_norm(const ComplexMatrix& h) {
  HermitianEig eig = hermitian_eig(h, 1e-6);
  double top = 0.0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i)
    top = std::max(top, std::abs(eig.eigenvalues(i)));
  return top;
}

// Hermitian spanning set of a complex *-closed subspace: real/imaginary
// parts of every basis element.
std::vector<ComplexMatrix> hermitian_parts(const std::vector<ComplexMatrix>& basis) {
  std::vector<ComplexMatrix> parts;
  parts.reserve(basis.size() * 2);
  const Complex half_i(0.0, -0.5);
  for (const auto& b : basis) {
    parts.push_back(0.5 * (b + b.adjoint()));
    parts.push_back(half_i * (b - b.adjoint()));
  }
  return parts;
}

// Random real combination of a Hermitian spanning set.
ComplexMatrix random_hermitian_combination(const std::vector<ComplexMatrix>& parts,
                                           Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (const auto& p : parts) h += normal(rng) * p;
  return 0.5 * (h + h.adjoint());
}

// Worst closure residual over adjoints and pairwise products.
double closure_residual(const OperatorSubspace& s) {
  const Index d = s.dim();
  if (d == 0) return 0.0;
  ComplexMatrix b = s.basis_matrix();
  ComplexMatrix probes(s.ambient_dim * s.ambient_dim, d + d * d);
  for (Index i = 0; i < d; ++i) probes.col(i) = vec(s.basis[i].adjoint().eval());
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      probes.col(d + i * d + j) = vec((s.basis[i] * s.basis[j]).eval());
  ComplexMatrix resid = probes - b * (b.adjoint() * probes);
  double worst = 0.0;
  for (Index c = 0; c < resid.cols(); ++c)
    worst = std::max(worst, resid.col(c).norm());
  return worst;
}

struct BlockData {
  Index dim_a = 0;
  Index dim_b = 0;
  ComplexMatrix projector;   // minimal central projection
  ComplexMatrix columns;     // n x (dim_a * dim_b) isometry columns
};

// Extract a matrix-unit aligned isometry for one central block: find a
// maximal abelian family of minimal projections q_0..q_{dB-1} from a random
// Hermitian block element, link them with partial isometries obtained by
// polar decomposition of q_j x q_0, and lay out columns so that in them the
// block acts as I_{dA} (x) L(C^{dB}).
BlockData extract_block(const OperatorSubspace& block_basis,
                        const ComplexMatrix& projector, Index dim_a, Index dim_b,
                        double tol, Rng& rng) {
  const Index n = block_basis.ambient_dim;
  std::vector<ComplexMatrix> parts = hermitian_parts(block_basis.basis);

  std::vector<ComplexMatrix> q;  // spectral projections, one per dB cluster
  bool ok = false;
  for (int attempt = 0; attempt < 5 && !ok; ++attempt) {
    ComplexMatrix h = random_hermitian_combination(parts, n, rng);
    const double hn = herm_norm(h);
    if (hn < 1e-12) continue;
    ComplexMatrix shifted = h + 2.0 * (hn + 1.0) * projector;
    HermitianEig eig = hermitian_eig(shifted, 1e-8);
    auto clusters = cluster_eigenvalues(eig.eigenvalues, 1e-6);
    q.clear();
    Index found = 0;
    bool sizes_ok = true;
    for (const auto& [start, count] : clusters) {
      if (eig.eigenvalues(start) < 0.5) continue;  // kernel of the projector
      if (count != dim_a) sizes_ok = false;
      ComplexMatrix p = ComplexMatrix::Zero(n, n);
      for (Index c = start; c < start + count; ++c)
        p += eig.eigenvectors.col(c) * eig.eigenvectors.col(c).adjoint();
      q.push_back(std::move(p));
      ++found;
    }
    ok = sizes_ok && found == dim_b;
  }
  if (!ok)
    throw std::runtime_error(
        "decompose: could not isolate minimal projections in a block "
        "(closure failure or tolerance misfit)");

  // Partial isometries v_j : range(q_0) -> range(q_j).
  std::vector<ComplexMatrix> v(static_cast<std::size_t>(dim_b));
  v[0] = q[0];
  for (Index j = 1; j < dim_b; ++j) {
    bool linked = false;
    for (int attempt = 0; attempt < 5 && !linked; ++attempt) {
      std::normal_distribution<double> normal(0.0, 1.0);
      ComplexMatrix x = ComplexMatrix::Zero(n, n);
      for (const auto& b : block_basis.basis)
        x += Complex(normal(rng), normal(rng)) * b;
      ComplexMatrix w = q[static_cast<std::size_t>(j)] * x * q[0];
      Eigen::JacobiSVD<ComplexMatrix> svd(w, Eigen::ComputeThinU |
                                                 Eigen::ComputeThinV);
      const auto& sv = svd.singularValues();
      Index rank = 0;
      while (rank < sv.size() && sv(rank) > std::max(tol, 1e-10) * sv(0)) ++rank;
      if (rank != dim_a) continue;
      v[static_cast<std::size_t>(j)] = svd.matrixU().leftCols(dim_a) *
                                       svd.matrixV().leftCols(dim_a).adjoint();
      linked = true;
    }
    if (!linked)
      throw std::runtime_error(
          "decompose: failed to link minimal projections with partial "
          "isometries");
  }

  // Multiplicity basis: orthonormal basis of range(q_0), gauge-fixed.
  HermitianEig q0eig = hermitian_eig(q[0], 1e-8);
  ComplexMatrix mult(n, dim_a);
  for (Index a = 0; a < dim_a; ++a) {
    // top dim_a eigenvalues of the projection are ~1, in the trailing columns
    ComplexVector col = q0eig.eigenvectors.col(n - dim_a + a);
    mult.col(a) = normalize_phase(col);
  }

  BlockData out;
  out.dim_a = dim_a;
  out.dim_b = dim_b;
  out.projector = projector;
  out.columns.resize(n, dim_a * dim_b);
  for (Index a = 0; a < dim_a; ++a)
    for (Index j = 0; j < dim_b; ++j)
      out.columns.col(a * dim_b + j) = v[static_cast<std::size_t>(j)] * mult.col(a);
  return out;
}

}  // namespace

Index OperatorAlgebra::block_offset(std::size_t k) const {
  Index off = 0;
  for (std::size_t i = 0; i < k; ++i)
    off += blocks_[i].dim_a * blocks_[i].dim_b;
  return off;
}

ComplexMatrix OperatorAlgebra::block_element(std::size_t k,
                                             const ComplexMatrix& x) const {
  const AlgebraBlock& blk = blocks_.at(k);
  if (x.rows() != blk.dim_b || x.cols() != blk.dim_b)
    throw std::invalid_argument("block_element: operand size mismatch");
  ComplexMatrix canonical = ComplexMatrix::Zero(ambient_dim_, ambient_dim_);
  const Index off = block_offset(k);
  for (Index a = 0; a < blk.dim_a; ++a)
    canonical.block(off + a * blk.dim_b, off + a * blk.dim_b, blk.dim_b,
                    blk.dim_b) = x;
  return embedding_ * canonical * embedding_.adjoint();
}

OperatorAlgebra algebra_from_blocks(const std::vector<AlgebraBlock>& blocks,
                                    Index kernel_dim,
                                    const ComplexMatrix& embedding) {
  Index support = 0;
  for (const auto& b : blocks) {
    if (b.dim_a < 1 || b.dim_b < 1)
      throw std::invalid_argument("algebra_from_blocks: block dims must be >= 1");
    support += b.dim_a * b.dim_b;
  }
  const Index n = support + kernel_dim;
  if (embedding.rows() != n || embedding.cols() != n)
    throw std::invalid_argument("algebra_from_blocks: embedding must be " +
                                std::to_string(n) + " x " + std::to_string(n));
  if ((embedding.adjoint() * embedding - ComplexMatrix::Identity(n, n)).norm() >
      1e-10)
    throw std::invalid_argument("algebra_from_blocks: embedding not unitary");

  OperatorSubspace basis;
  basis.ambient_dim = n;
  ComplexMatrix unit_canonical = ComplexMatrix::Zero(n, n);
  Index off = 0;
  for (const auto& blk : blocks) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(blk.dim_a));
    for (Index i = 0; i < blk.dim_b; ++i)
      for (Index j = 0; j < blk.dim_b; ++j) {
        ComplexMatrix canonical = ComplexMatrix::Zero(n, n);
        for (Index a = 0; a < blk.dim_a; ++a)
          canonical(off + a * blk.dim_b + i, off + a * blk.dim_b + j) = scale;
        basis.basis.push_back(embedding * canonical * embedding.adjoint());
      }
    for (Index c = off; c < off + blk.dim_a * blk.dim_b; ++c)
      unit_canonical(c, c) = 1.0;
    off += blk.dim_a * blk.dim_b;
  }
  ComplexMatrix unit = embedding * unit_canonical * embedding.adjoint();
  return OperatorAlgebra(n, std::move(basis), blocks, embedding, std::move(unit),
                         kernel_dim);
}

OperatorSubspace commutant(const std::vector<ComplexMatrix>& generators,
                           Index ambient_dim, double tol) {
  const ComplexMatrix id = ComplexMatrix::Identity(ambient_dim, ambient_dim);
  std::vector<ComplexMatrix> constraints;
  constraints.reserve(generators.size());
  for (const auto& g : generators) {
    if (g.rows() != ambient_dim || g.cols() != ambient_dim)
      throw std::invalid_argument("commutant: generator is not n x n");
    // vec(gX - Xg) = (g (x) I - I (x) g^T) vec(X)
    constraints.push_back(kron(g, id) - kron(id, g.transpose()));
  }
  return nullspace(constraints, ambient_dim, tol);
}

OperatorAlgebra generate_algebra(Index ambient_dim,
                                 const std::vector<ComplexMatrix>& generators,
                                 double tol, std::uint64_t seed) {
  std::vector<ComplexMatrix> seed_set;
  for (const auto& g : generators) {
    if (g.rows() != ambient_dim || g.cols() != ambient_dim)
      throw std::invalid_argument("generate_algebra: generator is not n x n");
    seed_set.push_back(g);
    seed_set.push_back(g.adjoint());
  }
  OperatorSubspace span = orthonormalize(ambient_dim, seed_set, tol);

  // Adjoin pairwise products until the dimension stabilizes. The seed span
  // is *-closed, and products of a *-closed span keep it so.
  for (int iter = 0; iter < 64; ++iter) {
    std::vector<ComplexMatrix> grown = span.basis;
    for (const auto& a : span.basis)
      for (const auto& b : span.basis) grown.push_back(a * b);
    OperatorSubspace next = orthonormalize(ambient_dim, grown, tol);
    if (next.dim() == span.dim()) break;
    span = std::move(next);
    if (span.dim() > ambient_dim * ambient_dim)
      throw std::runtime_error("generate_algebra: dimension overflow");
  }
  return decompose(span, tol, seed);
}

OperatorAlgebra decompose(const OperatorSubspace& input, double tol,
                          std::uint64_t seed) {
  const Index n = input.ambient_dim;
  OperatorSubspace basis = orthonormalize(n, input.basis, tol);
  const Index d = basis.dim();

  if (d == 0) {
    return OperatorAlgebra(n, basis, {}, ComplexMatrix::Identity(n, n),
                           ComplexMatrix::Zero(n, n), n);
  }

  const double closure = closure_residual(basis);
  if (closure > std::max(tol, 1e-10) * 10.0)
    throw std::invalid_argument(
        "decompose: basis is not a closed algebra (worst closure residual " +
        std::to_string(closure) + ")");

  // Unit = support projection of sum b b^dag (basis independent).
  ComplexMatrix gram_sum = ComplexMatrix::Zero(n, n);
  for (const auto& b : basis.basis) gram_sum += b * b.adjoint();
  ComplexMatrix unit = support_projection(gram_sum, std::max(tol, 1e-10));

  // Center = algebra intersect commutant.
  OperatorSubspace comm = commutant(basis.basis, n, tol);
  const ComplexMatrix id2 = ComplexMatrix::Identity(n * n, n * n);
  ComplexMatrix balg = basis.basis_matrix();
  ComplexMatrix bcom = comm.basis_matrix();
  OperatorSubspace center = nullspace(
      {id2 - balg * balg.adjoint(), id2 - bcom * bcom.adjoint()}, n, tol);
  const Index num_blocks = center.dim();
  if (num_blocks == 0)
    throw std::runtime_error("decompose: empty center for a nonzero algebra");

  // Minimal central projections from the eigenclusters of a random Hermitian
  // central element, shifted so the kernel summand sits isolated at zero.
  Rng rng(seed);
  std::vector<ComplexMatrix> center_parts = hermitian_parts(center.basis);
  std::vector<ComplexMatrix> central_proj;
  for (int attempt = 0; attempt < 5; ++attempt) {
    ComplexMatrix h = random_hermitian_combination(center_parts, n, rng);
    const double hn = herm_norm(h);
    if (hn < 1e-12) continue;
    ComplexMatrix shifted = h + 2.0 * (hn + 1.0) * unit;
    HermitianEig eig = hermitian_eig(shifted, 1e-8);
    auto clusters = cluster_eigenvalues(eig.eigenvalues, 1e-6);

    central_proj.clear();
    double prev_top = 0.5;  // gap is measured from the zero cluster upward
    double min_gap = 1e300;
    for (const auto& [start, count] : clusters) {
      if (eig.eigenvalues(start) < 0.5) {
        prev_top = std::max(prev_top, eig.eigenvalues(start + count - 1));
        continue;
      }
      min_gap = std::min(min_gap, eig.eigenvalues(start) - prev_top);
      prev_top = eig.eigenvalues(start + count - 1);
      ComplexMatrix p = ComplexMatrix::Zero(n, n);
      for (Index c = start; c < start + count; ++c)
        p += eig.eigenvectors.col(c) * eig.eigenvectors.col(c).adjoint();
      central_proj.push_back(std::move(p));
    }
    if (static_cast<Index>(central_proj.size()) == num_blocks && min_gap > 1e-4)
      break;
    central_proj.clear();
  }
  if (static_cast<Index>(central_proj.size()) != num_blocks)
    throw std::runtime_error(
        "decompose: could not separate central eigenvalue clusters");

  // Per-block structure and matrix-unit columns.
  std::vector<BlockData> blocks_data;
  Index support = 0;
  for (const auto& p : central_proj) {
    const double tr = p.trace().real();
    const Index rank = static_cast<Index>(std::llround(tr));
    if (std::abs(tr - static_cast<double>(rank)) > 0.01)
      throw std::runtime_error("decompose: non-integer central projector rank");

    std::vector<ComplexMatrix> compressed;
    compressed.reserve(static_cast<std::size_t>(d));
    for (const auto& b : basis.basis) compressed.push_back(p * b * p);
    OperatorSubspace block_basis = orthonormalize(n, compressed, std::max(tol, 1e-10));
    const Index bd = block_basis.dim();
    const Index dim_b = static_cast<Index>(std::llround(std::sqrt(
        static_cast<double>(bd))));
    if (dim_b * dim_b != bd)
      throw std::runtime_error(
          "decompose: block algebra dimension " + std::to_string(bd) +
          " is not a perfect square (closure failure or tolerance misfit)");
    if (rank % dim_b != 0)
      throw std::runtime_error(
          "decompose: block rank is not a multiple of the factor dimension");
    const Index dim_a = rank / dim_b;
    blocks_data.push_back(
        extract_block(block_basis, p, dim_a, dim_b, tol, rng));
    support += rank;
  }

  // Deterministic block order: (dim_b, dim_a) descending, then the trace of
  // the projector against a fixed reference diagonal.
  ComplexMatrix ref = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) ref(i, i) = static_cast<double>(i);
  std::stable_sort(blocks_data.begin(), blocks_data.end(),
                   [&ref](const BlockData& x, const BlockData& y) {
                     if (x.dim_b != y.dim_b) return x.dim_b > y.dim_b;
                     if (x.dim_a != y.dim_a) return x.dim_a > y.dim_a;
                     const double tx = (x.projector * ref).trace().real();
                     const double ty = (y.projector * ref).trace().real();
                     return tx < ty;
                   });

  const Index kernel_dim = n - support;
  ComplexMatrix u(n, n);
  Index col = 0;
  std::vector<AlgebraBlock> blocks;
  for (const auto& bd : blocks_data) {
    u.middleCols(col, bd.columns.cols()) = bd.columns;
    col += bd.columns.cols();
    blocks.push_back({bd.dim_a, bd.dim_b});
  }
  if (kernel_dim > 0) {
    HermitianEig ueig = hermitian_eig(unit, 1e-8);
    for (Index j = 0; j < kernel_dim; ++j)
      u.col(col + j) = normalize_phase(ueig.eigenvectors.col(j));
    col += kernel_dim;
  }

  if ((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm() > 1e-8)
    throw std::runtime_error("decompose: assembled embedding is not unitary");

  OperatorAlgebra out(n, basis, std::move(blocks), std::move(u), std::move(unit),
                      kernel_dim);

  // The conjugated canonical basis must coincide with the input span.
  OperatorSubspace canonical;
  canonical.ambient_dim = n;
  for (std::size_t k = 0; k < out.blocks().size(); ++k) {
    const Index dim_b = out.blocks()[k].dim_b;
    const double scale = 1.0 / std::sqrt(static_cast<double>(out.blocks()[k].dim_a));
    for (Index i = 0; i < dim_b; ++i)
      for (Index j = 0; j < dim_b; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(dim_b, dim_b);
        e(i, j) = scale;
        canonical.basis.push_back(out.block_element(k, e));
      }
  }
  SubspaceComparison cmp = subspace_equal(canonical, basis, 1.0);
  if (!(cmp.max_angle < std::max(1e-6, 100.0 * tol)))
    throw std::runtime_error(
        "decompose: canonical form does not match the input span (angle " +
        std::to_string(cmp.max_angle) + ")");

  return out;
}

ComplexMatrix random_positive_full_rank(const OperatorAlgebra& alg,
                                        std::uint64_t seed) {
  if (alg.dim() == 0) return ComplexMatrix::Zero(alg.ambient_dim(), alg.ambient_dim());
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix raw = ComplexMatrix::Zero(alg.ambient_dim(), alg.ambient_dim());
  for (const auto& b : alg.basis().basis)
    raw += Complex(normal(rng), normal(rng)) * b;
  ComplexMatrix h = 0.5 * (raw + raw.adjoint());
  const double hn = herm_norm(h);
  if (hn < 1e-14) return alg.unit();
  // unit + h/(2 ||h||) >= unit/2 on the support, so the result stays
  // positive with rank equal to rank(unit).
  return alg.unit() + (0.5 / hn) * h;
}

bool is_positive_full_rank_element(const OperatorAlgebra& alg,
                                   const ComplexMatrix& a, double tol) {
  if (!alg.contains(a, std::max(tol, 1e-10))) return false;
  if ((a - a.adjoint()).norm() > std::max(tol, 1e-10) * std::max(1.0, a.norm()))
    return false;
  HermitianEig eig = hermitian_eig(a, std::max(tol, 1e-10));
  const double lmax = eig.eigenvalues(eig.eigenvalues.size() - 1);
  if (lmax <= 0.0) return alg.support_dim() == 0;
  Index rank = 0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues(i) < -std::max(tol, 1e-10) * lmax) return false;
    if (eig.eigenvalues(i) > std::max(tol, 1e-10) * lmax) ++rank;
  }
  return rank == alg.support_dim();
}

}  // namespace qmd
