#include "qmd/qec.hpp"

#include <algorithm>
#include <cmath>

#include "qmd/random.hpp"

namespace qmd {

namespace {

ComplexMatrix complement_basis(const ComplexMatrix& isometry) {
  // Orthonormal basis of the orthocomplement of the column span.
  KernelResult k = kernel_basis({isometry.adjoint()}, isometry.rows(), 1e-12);
  return k.basis;
}

void require_tp(const QuantumChannel& ch, double tol, const char* what) {
  if (!ch.is_trace_preserving(std::max(tol, 1e-9) * 10.0))
    throw RefusalError(std::string(what) +
                       ": channel is not trace-preserving (residual " +
                       std::to_string(ch.tp_residual()) + ")");
}

}  // namespace

SubsystemCode::SubsystemCode(Index dim_a, Index dim_b,
                             const ComplexMatrix& embedding, double tol)
    : dim_a_(dim_a), dim_b_(dim_b), embedding_(embedding) {
  if (dim_a < 1 || dim_b < 1)
    throw std::invalid_argument("SubsystemCode: dims must be >= 1");
  const Index n = embedding.rows();
  if (embedding.cols() != dim_a * dim_b || n < dim_a * dim_b)
    throw std::invalid_argument(
        "SubsystemCode: embedding must be n x (dimA*dimB) with n >= dimA*dimB");
  const double iso_resid =
      (embedding.adjoint() * embedding -
       ComplexMatrix::Identity(dim_a * dim_b, dim_a * dim_b))
          .norm();
  if (iso_resid > std::max(tol, 1e-10))
    throw std::invalid_argument("SubsystemCode: embedding is not an isometry "
                                "(residual " + std::to_string(iso_resid) + ")");
  projector_ = embedding_ * embedding_.adjoint();

  ComplexMatrix u(n, n);
  u.leftCols(dim_a * dim_b) = embedding_;
  if (n > dim_a * dim_b)
    u.rightCols(n - dim_a * dim_b) = complement_basis(embedding_);
  algebra_ = algebra_from_blocks({{dim_a, dim_b}}, n - dim_a * dim_b, u);
}

SubsystemCode SubsystemCode::from_span(const std::vector<ComplexVector>& span,
                                       double tol) {
  if (span.empty())
    throw std::invalid_argument("SubsystemCode::from_span: empty span");
  const Index n = span[0].size();
  ComplexMatrix raw(n, static_cast<Index>(span.size()));
  for (std::size_t j = 0; j < span.size(); ++j) {
    if (span[j].size() != n)
      throw std::invalid_argument(
          "SubsystemCode::from_span: vectors have mixed lengths");
    raw.col(static_cast<Index>(j)) = span[j];
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(raw, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > std::max(tol, 1e-10) * sv(0)) ++rank;
  if (rank != raw.cols())
    throw std::invalid_argument(
        "SubsystemCode::from_span: span vectors are linearly dependent");
  return SubsystemCode(1, raw.cols(), svd.matrixU().leftCols(rank), tol);
}

KnillLaflammeResult knill_laflamme_test(const QuantumChannel& channel,
                                        const SubsystemCode& code, double tol) {
  if (code.dim_a() != 1)
    throw std::invalid_argument(
        "knill_laflamme_test: dim A > 1; use subsystem_correctable_test");
  if (code.ambient_dim() != channel.dim())
    throw std::invalid_argument("knill_laflamme_test: dimension mismatch");
  const Index k = static_cast<Index>(channel.kraus().size());
  const Index d = code.dim_b();
  const ComplexMatrix& w = code.embedding();

  KnillLaflammeResult out;
  out.lambda.resize(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) {
      const ComplexMatrix comp =
          w.adjoint() * channel.kraus()[static_cast<std::size_t>(i)].adjoint() *
          channel.kraus()[static_cast<std::size_t>(j)] * w;
      const Complex lam = comp.trace() / static_cast<double>(d);
      out.lambda(i, j) = lam;
      out.residual = std::max(
          out.residual, (comp - lam * ComplexMatrix::Identity(d, d)).norm());
    }
  out.correctable = out.residual < tol;
  return out;
}

SubsystemTestResult subsystem_correctable_test(const QuantumChannel& channel,
                                               const SubsystemCode& code,
                                               double tol) {
  if (code.ambient_dim() != channel.dim())
    throw std::invalid_argument("subsystem_correctable_test: dimension mismatch");
  const ComplexMatrix& w = code.embedding();
  const Index da = code.dim_a();
  const Index db = code.dim_b();
  SubsystemTestResult out;
  for (std::size_t i = 0; i < channel.kraus().size(); ++i)
    for (std::size_t j = 0; j < channel.kraus().size(); ++j) {
      const ComplexMatrix comp = w.adjoint() * channel.kraus()[i].adjoint() *
                                 channel.kraus()[j] * w;
      const ComplexMatrix g =
          partial_trace(comp, da, db, Factor::B) / static_cast<double>(db);
      out.residual = std::max(
          out.residual, (comp - kron(g, ComplexMatrix::Identity(db, db))).norm());
    }
  out.correctable = out.residual < tol;
  return out;
}

std::optional<Representation> find_correcting_representation(
    const QuantumChannel& channel, const SubsystemCode& code, double tol) {
  require_tp(channel, tol, "find_correcting_representation");
  if (code.ambient_dim() != channel.dim())
    throw std::invalid_argument(
        "find_correcting_representation: dimension mismatch");
  const Index n = channel.dim();
  const Index k = static_cast<Index>(channel.kraus().size());
  const ComplexMatrix& p = code.projector();

  // Columns of M span the support Q of channel(P_C); the equalities
  // pi(a) M = N(a) fix pi(a) there and say nothing off it, so the
  // minimum-norm solve compressed to Q is the only candidate.
  ComplexMatrix m(n, k * n);
  for (Index i = 0; i < k; ++i)
    m.middleCols(i * n, n) = channel.kraus()[static_cast<std::size_t>(i)] * p;
  const ComplexMatrix m_pinv = pinv(m, std::max(tol, 1e-12));
  const ComplexMatrix q = support_projection(channel.apply(p), std::max(tol, 1e-10));

  const double check_tol = std::max(tol, 1e-9) * 10.0;
  std::vector<ComplexMatrix> images;
  double worst = 0.0;
  for (const auto& a : code.algebra().basis().basis) {
    ComplexMatrix na(n, k * n);
    for (Index i = 0; i < k; ++i)
      na.middleCols(i * n, n) = channel.kraus()[static_cast<std::size_t>(i)] * a;
    ComplexMatrix x = q * (na * m_pinv) * q;
    worst = std::max(worst, (x * m - na).norm());
    for (Index i = 0; i < k; ++i) {
      const ComplexMatrix& e = channel.kraus()[static_cast<std::size_t>(i)];
      worst = std::max(worst, (p * e.adjoint() * x - a * e.adjoint()).norm());
    }
    if (worst >= check_tol) return std::nullopt;
    images.push_back(std::move(x));
  }

  Representation rep(code.algebra(), std::move(images));
  if (!rep.verify(tol).ok(check_tol)) return std::nullopt;
  return rep;
}

CompressionIdentityResult check_compression_identity(
    const QuantumChannel& channel, const SubsystemCode& code,
    const Representation& pi, double tol) {
  const ComplexMatrix ep = channel.apply(code.projector());
  CompressionIdentityResult out;
  const auto& basis = code.algebra().basis().basis;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const ComplexMatrix& im = pi.images()[j];
    const ComplexMatrix ea = channel.apply(basis[j]);
    out.residual = std::max(out.residual, (im * ep - ea).norm());
    out.residual = std::max(out.residual, (ep * im - ea).norm());
  }
  out.holds = out.residual < tol;
  return out;
}

QuantumChannel build_recovery(const QuantumChannel& channel,
                              const SubsystemCode& code, const Representation& pi,
                              double tol, double factor_tol) {
  CompressionIdentityResult c2 =
      check_compression_identity(channel, code, pi, std::max(tol, 1e-9) * 10.0);
  if (!c2.holds)
    throw std::invalid_argument(
        "build_recovery: the compression identity fails for this "
        "representation (residual " + std::to_string(c2.residual) + ")");

  const Index n = channel.dim();
  const Index da = code.dim_a();
  const Index db = code.dim_b();
  CanonicalForm cf = canonical_form(pi, tol);
  const Index m = cf.multiplicity;
  const ComplexMatrix range_frame = cf.unitary.leftCols(m * db);  // C'

  // channel(P_C) is supported on C' and commutes with pi(A_B), so its
  // compression must factor as sigma (x) I_B in the canonical frame.
  const ComplexMatrix s =
      range_frame.adjoint() * channel.apply(code.projector()) * range_frame;
  const ComplexMatrix sigma =
      partial_trace(s, m, db, Factor::B) / static_cast<double>(db);
  const double factor_resid =
      (s - kron(sigma, ComplexMatrix::Identity(db, db))).norm();
  if (factor_resid > factor_tol)
    throw std::invalid_argument(
        "build_recovery: channel(P_C) does not factor over the canonical "
        "frame (residual " + std::to_string(factor_resid) + ")");

  // Completely depolarizing A' -> A tensored with the B'-to-B identification
  // carried by the canonical frame. Kraus: W (|i>_A <j|_{A'} (x) I_B) W'^dag
  // normalized by sqrt(dim A).
  std::vector<ComplexMatrix> kraus;
  const double inv_sqrt_da = 1.0 / std::sqrt(static_cast<double>(da));
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < m; ++j) {
      ComplexMatrix link = ComplexMatrix::Zero(da * db, m * db);
      for (Index b = 0; b < db; ++b) link(i * db + b, j * db + b) = inv_sqrt_da;
      kraus.push_back(code.embedding() * link * range_frame.adjoint());
    }

  // Send the orthocomplement of C' to a fixed code state; the rank-one
  // completion makes the trace-preservation sum exact.
  const ComplexVector anchor = code.embedding().col(0);
  for (Index c = m * db; c < n; ++c)
    kraus.push_back(anchor * cf.unitary.col(c).adjoint());
  return QuantumChannel(std::move(kraus));
}

CorrectionVerification verify_correction(const QuantumChannel& channel,
                                         const QuantumChannel& recovery,
                                         const SubsystemCode& code, double tol) {
  if (recovery.dim() != channel.dim() || code.ambient_dim() != channel.dim())
    throw std::invalid_argument("verify_correction: dimension mismatch");
  const Index da = code.dim_a();
  const Index db = code.dim_b();
  const ComplexMatrix& w = code.embedding();

  // Compress T = recovery . channel . P_C back to L(A (x) B).
  auto compressed = [&](const ComplexMatrix& y) {
    return (w.adjoint() * recovery.apply(channel.apply(w * y * w.adjoint())) * w)
        .eval();
  };

  // Probe with product matrix units; the (b=0, b'=0) block of the image of
  // x (x) e_00 is the candidate F_A(x).
  std::vector<ComplexMatrix> f_of_unit(static_cast<std::size_t>(da * da));
  for (Index a1 = 0; a1 < da; ++a1)
    for (Index a2 = 0; a2 < da; ++a2) {
      ComplexMatrix probe = ComplexMatrix::Zero(da * db, da * db);
      probe(a1 * db, a2 * db) = 1.0;  // e_{a1 a2} (x) e_00
      ComplexMatrix img = compressed(probe);
      ComplexMatrix f(da, da);
      for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < da; ++j) f(i, j) = img(i * db, j * db);
      f_of_unit[static_cast<std::size_t>(a1 * da + a2)] = std::move(f);
    }

  CorrectionVerification out;
  for (Index a1 = 0; a1 < da; ++a1)
    for (Index a2 = 0; a2 < da; ++a2) {
      const ComplexMatrix& f = f_of_unit[static_cast<std::size_t>(a1 * da + a2)];
      for (Index b1 = 0; b1 < db; ++b1)
        for (Index b2 = 0; b2 < db; ++b2) {
          ComplexMatrix probe = ComplexMatrix::Zero(da * db, da * db);
          probe(a1 * db + b1, a2 * db + b2) = 1.0;
          ComplexMatrix expected = ComplexMatrix::Zero(da * db, da * db);
          for (Index i = 0; i < da; ++i)
            for (Index j = 0; j < da; ++j)
              expected(i * db + b1, j * db + b2) = f(i, j);
          out.residual = std::max(out.residual,
                                  (compressed(probe) - expected).norm());
        }
    }

  // The extracted map must itself be a channel: PSD Choi and exact trace
  // preservation within tolerance.
  ComplexMatrix choi_f = ComplexMatrix::Zero(da * da, da * da);
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < da; ++j)
      for (Index k = 0; k < da; ++k)
        for (Index l = 0; l < da; ++l)
          choi_f(i * da + j, k * da + l) =
              f_of_unit[static_cast<std::size_t>(j * da + l)](i, k);

  const double check_tol = std::max(tol, 1e-9) * 10.0;
  bool cptp = (choi_f - choi_f.adjoint()).norm() < check_tol;
  if (cptp) {
    HermitianEig eig = hermitian_eig(choi_f, 1e-6);
    cptp = eig.eigenvalues(0) > -check_tol;
    ComplexMatrix tp = ComplexMatrix::Zero(da, da);
    for (Index j = 0; j < da; ++j)
      for (Index l = 0; l < da; ++l)
        for (Index i = 0; i < da; ++i)
          tp(j, l) += choi_f(i * da + j, i * da + l);
    cptp = cptp && (tp - ComplexMatrix::Identity(da, da)).norm() < check_tol;
  }

  out.corrected = cptp && out.residual < check_tol;
  if (out.corrected)
    out.factor_map = QuantumChannel(kraus_from_choi(choi_f, std::max(tol, 1e-10)));
  return out;
}

bool noiseless_check(const QuantumChannel& channel, const SubsystemCode& code,
                     double tol) {
  if (code.ambient_dim() != channel.dim())
    throw std::invalid_argument("noiseless_check: dimension mismatch");
  const ComplexMatrix& p = code.projector();
  double worst = 0.0;
  for (const auto& a : code.algebra().basis().basis) {
    for (const auto& e : channel.kraus()) {
      worst = std::max(worst, (a * e * p - e * a).norm());
      worst = std::max(worst, (p * e.adjoint() * a - a * e.adjoint()).norm());
      if (worst >= tol) return false;
    }
  }
  return worst < tol;
}

CorrectionReport run_correction_suite(const QuantumChannel& channel,
                                      const SubsystemCode& code, double tol,
                                      std::uint64_t seed) {
  if (code.ambient_dim() != channel.dim())
    throw std::invalid_argument("run_correction_suite: dimension mismatch");
  require_tp(channel, tol, "run_correction_suite");
  const double cond_tol = std::max(tol, 1e-9) * 10.0;

  CorrectionReport report;
  SubsystemTestResult sub = subsystem_correctable_test(channel, code, cond_tol);
  report.subsystem_correctable = sub.correctable;
  report.subsystem_residual = sub.residual;

  report.representation = find_correcting_representation(channel, code, tol);
  report.representation_found = report.representation.has_value();

  if (report.representation) {
    MultDomResult md = generalized_multiplicative_domain(
        channel, *report.representation, tol, seed);
    SubspaceComparison cmp = subspace_equal(
        md.subspace, code.algebra().basis(), std::max(cond_tol, 1e-8));
    report.domain_match = cmp.equal;
    report.domain_angle = cmp.max_angle;

    CompressionIdentityResult c2 = check_compression_identity(
        channel, code, *report.representation, cond_tol);
    report.compression_identity = c2.holds;
    report.compression_residual = c2.residual;
  }

  const bool flags[4] = {report.subsystem_correctable, report.representation_found,
                         report.domain_match, report.compression_identity};
  for (bool f : flags)
    if (f != flags[0])
      throw std::logic_error(
          "run_correction_suite: the four correctability conditions disagree "
          "(subsystem " + std::to_string(flags[0]) + ", representation " +
          std::to_string(flags[1]) + ", domain " + std::to_string(flags[2]) +
          ", compression " + std::to_string(flags[3]) +
          "); this indicates a bug or a tolerance misfit");

  if (report.correctable()) {
    report.recovery = build_recovery(channel, code, *report.representation, tol);
    CorrectionVerification v =
        verify_correction(channel, *report.recovery, code, tol);
    report.recovery_verified = v.corrected;
    report.factor_map = v.factor_map;
  }
  report.noiseless = noiseless_check(channel, code, cond_tol);
  return report;
}

namespace fixtures {

SubsystemCode bit_flip_code(int k) {
  return SubsystemCode(1, 2, qmd::fixtures::bit_flip_subspace_basis(k));
}

}  // namespace fixtures

NoiselessModel random_noiseless_model(Index dim_a, Index dim_b,
                                      Index ambient_dim, int kraus_count,
                                      std::uint64_t seed) {
  if (ambient_dim < dim_a * dim_b)
    throw std::invalid_argument("random_noiseless_model: ambient too small");
  Rng rng(seed);
  ComplexMatrix w = random_isometry(ambient_dim, dim_a * dim_b, rng);
  SubsystemCode code(dim_a, dim_b, w);

  std::vector<ComplexMatrix> fa = random_cptp_kraus(dim_a, kraus_count, rng);
  const Index rest = ambient_dim - dim_a * dim_b;
  std::vector<ComplexMatrix> off;
  if (rest > 0) off = random_cptp_kraus(rest, kraus_count, rng);
  ComplexMatrix wp = rest > 0 ? complement_basis(w) : ComplexMatrix(ambient_dim, 0);

  std::vector<ComplexMatrix> kraus;
  const ComplexMatrix idb = ComplexMatrix::Identity(dim_b, dim_b);
  for (int i = 0; i < kraus_count; ++i) {
    ComplexMatrix g = w * kron(fa[static_cast<std::size_t>(i)], idb) * w.adjoint();
    if (rest > 0)
      g += wp * off[static_cast<std::size_t>(i)] * wp.adjoint();
    kraus.push_back(std::move(g));
  }
  return {QuantumChannel(std::move(kraus)), std::move(code),
          QuantumChannel(std::move(fa))};
}

}  // namespace qmd
