#include "qmd/multdom.hpp"

#include <algorithm>
#include <cmath>

namespace qmd {

namespace {

void require_verified(const Representation& pi, double tol) {
  RepresentationReport report = pi.verify(std::max(tol, 1e-9));
  if (!report.ok(std::max(tol, 1e-9) * 10.0))
    throw std::invalid_argument(
        "multiplicative domain solver: pi does not verify as a representation "
        "(multiplicativity " + std::to_string(report.multiplicativity_residual) +
        ", adjoint " + std::to_string(report.adjoint_residual) + ", faithful " +
        (report.faithful ? "yes" : "no") + ")");
}

void require_unital(const QuantumChannel& ch, double tol, const char* what) {
  if (!ch.is_unital(std::max(tol, 1e-9) * 10.0))
    throw RefusalError(std::string(what) +
                       ": channel is not unital (residual " +
                       std::to_string(ch.unital_residual()) +
                       "); the hypothesis is necessary, see fixture "
                       "tp_not_unital_3d");
}

void require_tp(const QuantumChannel& ch, double tol, const char* what) {
  if (!ch.is_trace_preserving(std::max(tol, 1e-9) * 10.0))
    throw RefusalError(std::string(what) +
                       ": channel is not trace-preserving (residual " +
                       std::to_string(ch.tp_residual()) +
                       "); the hypothesis is necessary, see fixture "
                       "unital_not_tp_3d");
}

// Solve a linear system over the parameter basis {p_j}: for every probe b
// and every family map F, the columns vec(F(p_j, b)) stacked over (b, F)
// form the constraint matrix; its kernel (in coordinates) is converted back
// to operators.
MultDomResult solve_in_basis(
    const std::vector<ComplexMatrix>& params, Index ambient,
    const std::vector<ComplexMatrix>& columns_stacked, Index rows_per_block,
    MdMethod method, double tol, std::uint64_t seed) {
  const Index d = static_cast<Index>(params.size());
  MultDomResult out;
  out.method = method;
  out.subspace.ambient_dim = ambient;
  if (d == 0) {
    out.algebra = decompose(out.subspace, tol, seed);
    return out;
  }

  ComplexMatrix system(static_cast<Index>(columns_stacked.size() / params.size()) *
                           rows_per_block,
                       d);
  // columns_stacked holds, for parameter j and block r, the matrix
  // F_r(p_j); layout: index r * d + j.
  const Index blocks = static_cast<Index>(columns_stacked.size()) / d;
  for (Index r = 0; r < blocks; ++r)
    for (Index j = 0; j < d; ++j)
      system.block(r * rows_per_block, j, rows_per_block, 1) =
          vec(columns_stacked[static_cast<std::size_t>(r * d + j)]);

  KernelResult kernel = kernel_basis({system}, d, tol);
  out.worst_residual = kernel.cut_residual;

  for (Index c = 0; c < kernel.basis.cols(); ++c) {
    ComplexMatrix a = ComplexMatrix::Zero(ambient, ambient);
    for (Index j = 0; j < d; ++j) a += kernel.basis(j, c) * params[static_cast<std::size_t>(j)];
    out.subspace.basis.push_back(std::move(a));
  }
  out.algebra = decompose(out.subspace, tol, seed);
  return out;
}

}  // namespace

std::string to_string(MdMethod method) {
  switch (method) {
    case MdMethod::DefinitionSystem: return "definition-system";
    case MdMethod::KrausSystem: return "kraus-system";
    case MdMethod::UnitCharacterization: return "unit-characterization";
  }
  return "?";
}

MultDomResult multiplicative_domain(const QuantumChannel& phi, double tol,
                                    std::uint64_t seed) {
  const Index n = phi.dim();
  std::vector<ComplexMatrix> params = matrix_unit_basis(n);
  std::vector<ComplexMatrix> probes = matrix_unit_basis(n);

  std::vector<ComplexMatrix> cols;
  cols.reserve(2 * probes.size() * params.size());
  for (const auto& b : probes) {
    const ComplexMatrix phib = phi.apply(b);
    for (const auto& p : params) cols.push_back(phi.apply(p * b) - phi.apply(p) * phib);
    for (const auto& p : params) cols.push_back(phi.apply(b * p) - phib * phi.apply(p));
  }
  return solve_in_basis(params, n, cols, n * n, MdMethod::DefinitionSystem, tol,
                        seed);
}

MultDomResult generalized_multiplicative_domain(const QuantumChannel& phi,
                                                const Representation& pi,
                                                double tol, std::uint64_t seed) {
  if (pi.domain().ambient_dim() != phi.dim())
    throw std::invalid_argument(
        "generalized_multiplicative_domain: dimension mismatch");
  require_verified(pi, tol);

  const auto& params = pi.domain().basis().basis;
  const auto& images = pi.images();
  std::vector<ComplexMatrix> cols;
  cols.reserve(2 * params.size() * params.size());
  for (const auto& b : params) {
    const ComplexMatrix phib = phi.apply(b);
    for (std::size_t j = 0; j < params.size(); ++j)
      cols.push_back(images[j] * phib - phi.apply(params[j] * b));
    for (std::size_t j = 0; j < params.size(); ++j)
      cols.push_back(phib * images[j] - phi.apply(b * params[j]));
  }
  return solve_in_basis(params, phi.dim(), cols, phi.dim() * phi.dim(),
                        MdMethod::DefinitionSystem, tol, seed);
}

MultDomResult multiplicative_domain_kraus(const QuantumChannel& channel,
                                          const Representation& pi, double tol,
                                          std::uint64_t seed) {
  if (pi.domain().ambient_dim() != channel.dim())
    throw std::invalid_argument("multiplicative_domain_kraus: dimension mismatch");
  require_tp(channel, tol, "multiplicative_domain_kraus");
  require_verified(pi, tol);

  const auto& params = pi.domain().basis().basis;
  const auto& images = pi.images();
  const ComplexMatrix& support = pi.domain().unit();

  std::vector<ComplexMatrix> cols;
  cols.reserve(2 * channel.kraus().size() * params.size());
  for (const auto& e : channel.kraus()) {
    const ComplexMatrix ep = e * support;
    const ComplexMatrix pe = support * e.adjoint();
    for (std::size_t j = 0; j < params.size(); ++j)
      cols.push_back(images[j] * ep - e * params[j]);
    for (std::size_t j = 0; j < params.size(); ++j)
      cols.push_back(pe * images[j] - params[j] * e.adjoint());
  }
  MultDomResult out =
      solve_in_basis(params, channel.dim(), cols, channel.dim() * channel.dim(),
                     MdMethod::KrausSystem, tol, seed);
  out.method = MdMethod::KrausSystem;
  return out;
}

bool schwarz_equalities_hold(const QuantumChannel& phi, const ComplexMatrix& a,
                             double tol) {
  require_unital(phi, tol, "schwarz_equalities_hold");
  const ComplexMatrix fa = phi.apply(a);
  const double left = (fa.adjoint() * fa - phi.apply(a.adjoint() * a)).norm();
  const double right = (fa * fa.adjoint() - phi.apply(a * a.adjoint())).norm();
  return std::max(left, right) < tol * std::max(1.0, a.norm() * a.norm());
}

bool square_equalities_hold(const QuantumChannel& channel,
                            const Representation& pi, const ComplexMatrix& a,
                            double tol) {
  require_unital(channel, tol, "square_equalities_hold");
  require_tp(channel, tol, "square_equalities_hold");
  if (!pi.domain().contains(a, std::max(tol, 1e-8)))
    throw std::invalid_argument(
        "square_equalities_hold: a is not in the domain algebra");
  const ComplexMatrix ea = channel.apply(a);
  const ComplexMatrix ea2 = channel.apply(a * a);
  const ComplexMatrix pa = pi.apply(a);
  const double scale = std::max(1.0, a.norm() * a.norm());
  return (ea * pa - ea2).norm() < tol * scale &&
         (pa * ea - ea2).norm() < tol * scale;
}

bool unit_equalities_hold(const QuantumChannel& channel, const Representation& pi,
                          const ComplexMatrix& a, double tol) {
  require_unital(channel, tol, "unit_equalities_hold");
  require_tp(channel, tol, "unit_equalities_hold");
  if (!pi.domain().contains(a, std::max(tol, 1e-8)))
    throw std::invalid_argument(
        "unit_equalities_hold: a is not in the domain algebra");
  const ComplexMatrix eu = channel.apply(pi.domain().unit());
  const ComplexMatrix ea = channel.apply(a);
  const ComplexMatrix pa = pi.apply(a);
  const double scale = std::max(1.0, a.norm());
  return (eu * pa - ea).norm() < tol * scale && (pa * eu - ea).norm() < tol * scale;
}

MultDomResult unit_characterization_set(const QuantumChannel& channel,
                                        const Representation& pi, double tol,
                                        std::uint64_t seed) {
  if (pi.domain().ambient_dim() != channel.dim())
    throw std::invalid_argument("unit_characterization_set: dimension mismatch");
  require_unital(channel, tol, "unit_characterization_set");
  require_tp(channel, tol, "unit_characterization_set");
  require_verified(pi, tol);

  const auto& params = pi.domain().basis().basis;
  const auto& images = pi.images();
  const ComplexMatrix eu = channel.apply(pi.domain().unit());

  std::vector<ComplexMatrix> cols;
  cols.reserve(2 * params.size());
  for (std::size_t j = 0; j < params.size(); ++j)
    cols.push_back(eu * images[j] - channel.apply(params[j]));
  for (std::size_t j = 0; j < params.size(); ++j)
    cols.push_back(images[j] * eu - channel.apply(params[j]));
  MultDomResult out =
      solve_in_basis(params, channel.dim(), cols, channel.dim() * channel.dim(),
                     MdMethod::UnitCharacterization, tol, seed);

  // The unit characterization and the defining system describe the same set
  // for unital CPTP channels; a mismatch means a bug or a tolerance misfit,
  // never a property of the input.
  MultDomResult direct = generalized_multiplicative_domain(channel, pi, tol, seed);
  SubspaceComparison cmp =
      subspace_equal(out.subspace, direct.subspace, std::max(tol * 100.0, 1e-7));
  if (!cmp.equal)
    throw std::logic_error(
        "unit_characterization_set: solution disagrees with the defining "
        "system (dims " + std::to_string(out.subspace.dim()) + " vs " +
        std::to_string(direct.subspace.dim()) + ", angle " +
        std::to_string(cmp.max_angle) + ")");
  return out;
}

bool is_bimodule(const QuantumChannel& phi, const OperatorAlgebra& alg,
                 double tol) {
  if (alg.ambient_dim() != phi.dim())
    throw std::invalid_argument("is_bimodule: dimension mismatch");
  double worst = 0.0;
  for (const auto& b : matrix_unit_basis(phi.dim())) {
    const ComplexMatrix phib = phi.apply(b);
    for (const auto& a : alg.basis().basis) {
      worst = std::max(worst, (phi.apply(a * b) - a * phib).norm());
      worst = std::max(worst, (phi.apply(b * a) - phib * a).norm());
      if (worst >= tol) return false;
    }
  }
  return worst < tol;
}

bool bimodule_characterization(const QuantumChannel& phi,
                               const OperatorAlgebra& alg, double tol) {
  if (alg.ambient_dim() != phi.dim())
    throw std::invalid_argument("bimodule_characterization: dimension mismatch");
  const ComplexMatrix id = ComplexMatrix::Identity(phi.dim(), phi.dim());
  if (!alg.contains(id, std::max(tol, 1e-8)))
    throw RefusalError(
        "bimodule_characterization: the algebra does not contain the ambient "
        "identity, which this criterion requires");
  const ComplexMatrix phi1 = phi.apply(id);
  double worst = 0.0;
  for (const auto& a : alg.basis().basis) {
    const ComplexMatrix pa = phi.apply(a);
    worst = std::max(worst, (phi1 * a - pa).norm());
    worst = std::max(worst, (a * phi1 - pa).norm());
  }
  return worst < tol;
}

}  // namespace qmd
