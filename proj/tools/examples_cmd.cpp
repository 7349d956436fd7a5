#include "examples_cmd.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <vector>

#include "qmd/multdom.hpp"
#include "qmd/qec.hpp"

namespace qmdcli {

using namespace qmd;

namespace {

struct Assertions {
  int passed = 0;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (ok)
      ++passed;
    else
      failures.push_back(what);
  }

  void expect_refusal(const std::function<void()>& f, const std::string& what) {
    try {
      f();
      failures.push_back(what + " (no refusal raised)");
    } catch (const RefusalError&) {
      ++passed;
    } catch (const std::exception& e) {
      failures.push_back(what + " (wrong error: " + e.what() + ")");
    }
  }
};

ComplexMatrix diag3(double a, double b, double c) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

// Closed-form image of the counterexample channel on the top-left block.
ComplexMatrix counterexample_image(const ComplexMatrix& c) {
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  out(0, 0) = c(0, 0);
  out(0, 2) = c(0, 1);
  out(1, 1) = c(1, 1);
  out(1, 2) = c(1, 0);
  out(2, 0) = c(1, 0);
  out(2, 1) = c(0, 1);
  out(2, 2) = c(0, 0) + c(1, 1);
  return 0.5 * out;
}

Assertions run_bit_flip_example(const Options& opts) {
  Assertions a;
  QuantumChannel ch = fixtures::bit_flip_3q();
  a.check(ch.kraus().size() == 4, "four Kraus operators");
  a.check(ch.is_trace_preserving(1e-12), "channel is trace preserving");

  ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
  rho(0, 0) = 1.0;
  ComplexMatrix expected = ComplexMatrix::Zero(8, 8);
  for (int i : {0, 4, 2, 1}) expected(i, i) = 0.25;
  a.check((ch.apply(rho) - expected).norm() < 1e-14,
          "image of |000><000| is the uniform flip mixture");

  ComplexMatrix stacked(8, 8);
  for (int k = 0; k < 4; ++k)
    stacked.middleCols(2 * k, 2) = fixtures::bit_flip_subspace_basis(k);
  a.check((stacked.adjoint() * stacked - ComplexMatrix::Identity(8, 8)).norm() <
              1e-14,
          "the four planes are orthogonal and fill the space");

  SubsystemCode code = qmd::fixtures::bit_flip_code(0);
  KnillLaflammeResult kl = knill_laflamme_test(ch, code, opts.tol);
  a.check(kl.correctable, "the span{|000>,|111>} plane is a correctable code");
  a.check((kl.lambda - 0.25 * Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-12,
          "compressions collapse to lambda = I/4");

  QuantumChannel recovery = fixtures::recovery_3q();
  CorrectionVerification v = verify_correction(ch, recovery, code, opts.tol);
  a.check(v.corrected, "the four-projector recovery corrects the code");
  return a;
}

Assertions run_counterexample_example(const Options& opts) {
  Assertions a;
  QuantumChannel ch = fixtures::counterexample_4d();
  a.check(ch.is_unital(1e-12) && ch.is_trace_preserving(1e-12),
          "channel is unital and trace preserving");

  double worst = 0.0;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      ComplexMatrix c = ComplexMatrix::Zero(2, 2);
      c(i, j) = 1.0;
      ComplexMatrix in = ComplexMatrix::Zero(4, 4);
      in.block(0, 0, 2, 2) = c;
      worst = std::max(worst,
                       (ch.apply(in) - counterexample_image(c)).cwiseAbs().maxCoeff());
    }
  a.check(worst < 1e-12, "block image formula holds entrywise");

  Representation pi = fixtures::doubled_block_rep();
  a.check(pi.verify(opts.tol).ok(1e-9), "the doubling map is a representation");

  ComplexMatrix proj = ComplexMatrix::Zero(4, 4);
  proj(0, 0) = 1.0;
  a.check(square_equalities_hold(ch, pi, proj, 1e-10),
          "the rank-1 projection passes the squared-action equalities");

  MultDomResult md =
      generalized_multiplicative_domain(ch, pi, opts.tol, opts.seed);
  a.check(md.subspace.dim() < 4, "the generalized domain is a proper subalgebra");
  a.check(!md.subspace.contains(proj, 1e-8),
          "the rank-1 projection is nevertheless not a member");
  a.check(!is_positive_full_rank_element(pi.domain(), proj),
          "it fails the maximal-rank hypothesis");
  return a;
}

Assertions run_hypotheses_example(const Options& opts) {
  Assertions a;
  QuantumChannel phi = fixtures::unital_not_tp_3d();
  a.check(phi.is_unital(1e-12) && !phi.is_trace_preserving(1e-3),
          "first map is unital but not trace preserving");

  ComplexMatrix av = diag3(1.0, 2.5, 3.0);
  ComplexMatrix fa = phi.apply(av);
  a.check((av * fa - phi.apply(av * av)).norm() < 1e-12 &&
              (fa * av - phi.apply(av * av)).norm() < 1e-12,
          "squared-action equalities hold for diag(1, 5/2, 3)");

  ComplexMatrix b = diag3(1.0, 0.0, 0.0);
  a.check((phi.apply(b * av) - diag3(1.0, 0.5, 0.0)).norm() < 1e-12,
          "phi(b a) = diag(1, 1/2, 0)");
  a.check((phi.apply(b) * av - diag3(1.0, 1.25, 0.0)).norm() < 1e-12,
          "phi(b) a = diag(1, 5/4, 0), so multiplicativity fails");

  ComplexMatrix ap = diag3(1.0, 2.0, 3.0);
  const ComplexMatrix id3 = ComplexMatrix::Identity(3, 3);
  a.check((phi.apply(id3) * ap - phi.apply(ap)).norm() < 1e-12 &&
              (ap * phi.apply(id3) - phi.apply(ap)).norm() < 1e-12,
          "unit equalities hold for diag(1, 2, 3)");
  a.check((phi.apply(b * ap) - diag3(1.0, 0.5, 0.0)).norm() < 1e-12 &&
              (phi.apply(b) * ap - diag3(1.0, 1.0, 0.0)).norm() < 1e-12,
          "phi(b a') = diag(1, 1/2, 0) differs from phi(b) a' = diag(1, 1, 0)");

  QuantumChannel tp_variant = fixtures::tp_not_unital_3d();
  a.check(tp_variant.is_trace_preserving(1e-12) && !tp_variant.is_unital(1e-3),
          "second map is trace preserving but not unital");

  OperatorAlgebra full =
      algebra_from_blocks({{1, 3}}, 0, ComplexMatrix::Identity(3, 3));
  Representation id_rep = identity_representation(full);
  a.expect_refusal(
      [&] { unit_characterization_set(phi, id_rep, opts.tol, opts.seed); },
      "unit characterization refuses the non-trace-preserving map");
  a.expect_refusal(
      [&] { unit_characterization_set(tp_variant, id_rep, opts.tol, opts.seed); },
      "unit characterization refuses the non-unital map");
  a.expect_refusal([&] { square_equalities_hold(phi, id_rep, av, opts.tol); },
                   "squared-action criterion refuses the non-TP map");
  return a;
}

Assertions run_code_domain_example(const Options& opts) {
  Assertions a;
  QuantumChannel ch = fixtures::bit_flip_3q();
  Representation pi = fixtures::bit_flip_syndrome_rep();
  a.check(pi.verify(opts.tol).ok(1e-9),
          "the syndrome conjugation is a representation");

  MultDomResult md =
      generalized_multiplicative_domain(ch, pi, opts.tol, opts.seed);
  a.check(md.subspace.dim() == 4, "its generalized domain has dimension 4");
  a.check(subspace_equal(md.subspace, pi.domain().basis(), 1e-9).equal,
          "and equals the full code algebra L(C_0)");

  SubsystemCode code = qmd::fixtures::bit_flip_code(0);
  CorrectionReport report = run_correction_suite(ch, code, opts.tol, opts.seed);
  a.check(report.subsystem_correctable && report.representation_found &&
              report.domain_match && report.compression_identity,
          "all four correctability conditions hold");
  a.check(report.recovery_verified, "the constructed recovery verifies");

  QuantumChannel dual_rec = fixtures::recovery_3q().dual();
  bool dual_matches = report.representation.has_value();
  if (dual_matches) {
    const auto& basis = code.algebra().basis().basis;
    for (std::size_t j = 0; j < basis.size(); ++j)
      dual_matches = dual_matches &&
                     (report.representation->images()[j] -
                      dual_rec.apply(basis[j]))
                             .norm() < 1e-9;
  }
  a.check(dual_matches,
          "the solved representation is the dual of the recovery channel");
  return a;
}

struct NamedExample {
  const char* name;
  Assertions (*run)(const Options&);
};

constexpr NamedExample kExamples[] = {
    {"2.1", run_bit_flip_example},
    {"3.2", run_counterexample_example},
    {"3.5", run_hypotheses_example},
    {"4.2", run_code_domain_example},
};

}  // namespace

int cmd_examples(const std::string& name, const Options& opts) {
  bool any = false;
  bool all_ok = true;
  for (const auto& ex : kExamples) {
    if (name != "all" && name != ex.name) continue;
    any = true;
    Assertions a = ex.run(opts);
    const int total = a.passed + static_cast<int>(a.failures.size());
    std::cout << "example " << ex.name << ": " << a.passed << "/" << total
              << " assertions passed\n";
    for (const auto& f : a.failures) std::cout << "  FAIL: " << f << "\n";
    all_ok = all_ok && a.failures.empty();
  }
  if (!any) {
    std::cerr << "unknown example \"" << name
              << "\" (known: 2.1, 3.2, 3.5, 4.2, all)\n";
    return kExitInputError;
  }
  return all_ok ? kExitOk : kExitConditionFailed;
}

}  // namespace qmdcli
