#include "qmd/channel.hpp"

#include <cmath>
#include <numbers>

#include "qmd/numerics.hpp"

namespace qmd {

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty())
    throw std::invalid_argument("QuantumChannel: empty Kraus family");
  dim_ = kraus_[0].rows();
  for (const auto& e : kraus_) {
    if (e.rows() != dim_ || e.cols() != dim_)
      throw std::invalid_argument(
          "QuantumChannel: Kraus operators must be square and equally sized");
  }
  ComplexMatrix tp = ComplexMatrix::Zero(dim_, dim_);
  ComplexMatrix un = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& e : kraus_) {
    tp += e.adjoint() * e;
    un += e * e.adjoint();
  }
  const ComplexMatrix id = ComplexMatrix::Identity(dim_, dim_);
  tp_residual_ = (tp - id).norm();
  unital_residual_ = (un - id).norm();
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_)
    throw std::invalid_argument("QuantumChannel::apply: operand is " +
                                std::to_string(x.rows()) + "x" +
                                std::to_string(x.cols()) + ", channel dim " +
                                std::to_string(dim_));
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& e : kraus_) out += e * x * e.adjoint();
  return out;
}

QuantumChannel QuantumChannel::dual() const {
  std::vector<ComplexMatrix> adj;
  adj.reserve(kraus_.size());
  for (const auto& e : kraus_) adj.push_back(e.adjoint());
  return QuantumChannel(std::move(adj));
}

QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner) {
  if (outer.dim() != inner.dim())
    throw std::invalid_argument("compose: dimension mismatch");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(outer.kraus().size() * inner.kraus().size());
  for (const auto& f : outer.kraus())
    for (const auto& e : inner.kraus()) kraus.push_back(f * e);
  return QuantumChannel(std::move(kraus));
}

ComplexMatrix choi(const QuantumChannel& ch) {
  const Index n2 = ch.dim() * ch.dim();
  ComplexMatrix j = ComplexMatrix::Zero(n2, n2);
  for (const auto& e : ch.kraus()) {
    ComplexVector v = vec(e);
    j += v * v.adjoint();
  }
  return j;
}

bool channels_equal(const QuantumChannel& a, const QuantumChannel& b,
                    double tol) {
  if (a.dim() != b.dim()) return false;
  return (choi(a) - choi(b)).norm() < tol;
}

Index choi_rank(const QuantumChannel& ch, double tol) {
  HermitianEig eig = hermitian_eig(choi(ch), 1e-8);
  const double lmax = eig.eigenvalues(eig.eigenvalues.size() - 1);
  if (lmax <= 0.0) return 0;
  Index rank = 0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > tol * lmax) ++rank;
  return rank;
}

std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi_matrix,
                                           double tol) {
  const Index n = static_cast<Index>(std::llround(std::sqrt(
      static_cast<double>(choi_matrix.rows()))));
  if (n * n != choi_matrix.rows() || choi_matrix.rows() != choi_matrix.cols())
    throw std::invalid_argument("kraus_from_choi: matrix is not n^2 x n^2");
  HermitianEig eig = hermitian_eig(choi_matrix, std::max(tol, 1e-8));
  const double lmax = std::max(0.0, eig.eigenvalues(eig.eigenvalues.size() - 1));
  if (eig.eigenvalues(0) < -tol * std::max(1.0, lmax))
    throw std::invalid_argument("kraus_from_choi: matrix is not PSD");
  std::vector<ComplexMatrix> kraus;
  for (Index j = 0; j < eig.eigenvalues.size(); ++j) {
    if (eig.eigenvalues(j) > tol * std::max(1.0, lmax))
      kraus.push_back(std::sqrt(eig.eigenvalues(j)) *
                      unvec(eig.eigenvectors.col(j), n));
  }
  if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(n, n));
  return kraus;
}

ComplexMatrix stinespring(const QuantumChannel& ch) {
  const Index n = ch.dim();
  const Index k = static_cast<Index>(ch.kraus().size());
  ComplexMatrix v(k * n, n);
  for (Index i = 0; i < k; ++i)
    v.middleRows(i * n, n) = ch.kraus()[static_cast<std::size_t>(i)].adjoint();
  return v;
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------
namespace fixtures {
namespace {

constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;

ComplexMatrix pauli_x() {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

// I (x) ... (x) X (x) ... (x) I with X at position `pos` of three qubits,
// pos = -1 for the identity.
ComplexMatrix three_qubit_flip(int pos) {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < 3; ++q) out = kron(out, q == pos ? pauli_x() : i2);
  return out;
}

}  // namespace

ComplexMatrix bit_flip_subspace_basis(int k) {
  // Subspace k is span{u_k, v_k} with u_0 = |000>, v_0 = |111> and
  // u_k, v_k obtained by flipping qubit k-1 (k = 1, 2, 3).
  if (k < 0 || k > 3)
    throw std::invalid_argument("bit_flip_subspace_basis: k out of range");
  int u = 0b000, v = 0b111;
  if (k > 0) {
    const int flip = 1 << (3 - k);  // qubit 1 is the leading bit
    u ^= flip;
    v ^= flip;
  }
  ComplexMatrix b = ComplexMatrix::Zero(8, 2);
  b(u, 0) = 1.0;
  b(v, 1) = 1.0;
  return b;
}

ComplexMatrix bit_flip_subspace_projector(int k) {
  ComplexMatrix b = bit_flip_subspace_basis(k);
  return b * b.adjoint();
}

QuantumChannel bit_flip_3q() {
  std::vector<ComplexMatrix> kraus;
  for (int pos = -1; pos < 3; ++pos) kraus.push_back(0.5 * three_qubit_flip(pos));
  return QuantumChannel(std::move(kraus));
}

QuantumChannel recovery_3q() {
  std::vector<ComplexMatrix> kraus;
  kraus.push_back(bit_flip_subspace_projector(0));
  for (int k = 1; k <= 3; ++k)
    kraus.push_back(three_qubit_flip(k - 1) * bit_flip_subspace_projector(k));
  return QuantumChannel(std::move(kraus));
}

QuantumChannel counterexample_4d() {
  ComplexMatrix e1(4, 4), e2(4, 4);
  e1 << 1, 0, 1, 0,
        0, 1, 1, 0,
        1, 1, 0, 0,
        0, 0, 0, std::numbers::sqrt2;
  e2 << 1, 0, -1, 0,
        0, -1, 1, 0,
        -1, 1, 0, 0,
        0, 0, 0, std::numbers::sqrt2;
  return QuantumChannel({0.5 * e1, 0.5 * e2});
}

QuantumChannel unital_not_tp_3d() {
  ComplexMatrix e1(3, 3), e2(3, 3);
  e1 << std::numbers::sqrt2, 0, 0,
        1, 0, 1,
        0, 0, std::numbers::sqrt2;
  e2 << std::numbers::sqrt2, 0, 0,
        -1, 0, -1,
        0, 0, std::numbers::sqrt2;
  return QuantumChannel({0.5 * e1, 0.5 * e2});
}

QuantumChannel tp_not_unital_3d() {
  ComplexMatrix e1 = ComplexMatrix::Zero(3, 3);
  e1(0, 0) = kHalfSqrt2;
  e1(1, 1) = 1.0;
  e1(2, 2) = kHalfSqrt2;
  ComplexMatrix e2 = ComplexMatrix::Zero(3, 3);
  e2(1, 0) = kHalfSqrt2;
  ComplexMatrix e3 = ComplexMatrix::Zero(3, 3);
  e3(1, 2) = kHalfSqrt2;
  return QuantumChannel({e1, e2, e3});
}

QuantumChannel by_name(std::string_view name) {
  if (name == "bit_flip_3q") return bit_flip_3q();
  if (name == "recovery_3q") return recovery_3q();
  if (name == "counterexample_4d") return counterexample_4d();
  if (name == "unital_not_tp_3d") return unital_not_tp_3d();
  if (name == "tp_not_unital_3d") return tp_not_unital_3d();
  throw std::invalid_argument("unknown channel fixture: " + std::string(name));
}

std::vector<std::string> names() {
  return {"bit_flip_3q", "recovery_3q", "counterexample_4d", "unital_not_tp_3d",
          "tp_not_unital_3d"};
}

}  // namespace fixtures

}  // namespace qmd
