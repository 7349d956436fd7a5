// Acceptance suite: one pass/fail line per criterion. Exact-fixture
// reproduction plus randomized property sweeps, each pinned to the
// tolerance it must meet. Run with an optional criterion number to run a
// single one.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qmd/multdom.hpp"
#include "qmd/qec.hpp"
#include "qmd/serialization.hpp"
#include "support.hpp"

using namespace qmd;

namespace {

struct Failure {
  std::ostringstream msg;
  bool failed = false;
};

#define REQUIRE_THAT(cond, text)                         \
  do {                                                   \
    if (!(cond)) {                                       \
      f.failed = true;                                   \
      f.msg << (f.msg.str().empty() ? "" : "; ") << text; \
      return f;                                          \
    }                                                    \
  } while (0)

ComplexMatrix diag3(double a, double b, double c) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

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

// Criterion 1: the 4x4 counterexample channel reproduces its displayed
// block-image formula entrywise, the rank-1 projection passes the
// squared-action equalities, and yet the generalized domain excludes it.
Failure criterion1() {
  Failure f;
  QuantumChannel ch = fixtures::counterexample_4d();
  double worst = 0.0;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      ComplexMatrix c = ComplexMatrix::Zero(2, 2);
      c(i, j) = 1.0;
      ComplexMatrix in = ComplexMatrix::Zero(4, 4);
      in.block(0, 0, 2, 2) = c;
      worst = std::max(
          worst, (ch.apply(in) - counterexample_image(c)).cwiseAbs().maxCoeff());
    }
  REQUIRE_THAT(worst < 1e-12,
               "block image formula max abs error " << worst << " >= 1e-12");

  Representation pi = fixtures::doubled_block_rep();
  ComplexMatrix a = ComplexMatrix::Zero(4, 4);
  a(0, 0) = 1.0;
  const ComplexMatrix ea = ch.apply(a);
  const ComplexMatrix ea2 = ch.apply(a * a);
  const ComplexMatrix pa = pi.apply(a);
  REQUIRE_THAT((ea2 - ea * pa).norm() < 1e-12 && (ea2 - pa * ea).norm() < 1e-12,
               "squared-action equalities fail for the rank-1 projection");

  MultDomResult md = generalized_multiplicative_domain(ch, pi, 1e-9);
  REQUIRE_THAT(md.subspace.dim() < 4,
               "generalized domain dim " << md.subspace.dim() << " not < 4");
  REQUIRE_THAT(!md.subspace.contains(a, 1e-8),
               "rank-1 projection wrongly contained in the domain");
  return f;
}

// Criterion 2: the 3x3 hypothesis counterexamples, displayed values and
// refusals.
Failure criterion2() {
  Failure f;
  QuantumChannel phi = fixtures::unital_not_tp_3d();
  const ComplexMatrix a = diag3(1.0, 2.5, 3.0);
  const ComplexMatrix b = diag3(1.0, 0.0, 0.0);
  REQUIRE_THAT((phi.apply(b * a) - diag3(1, 0.5, 0)).cwiseAbs().maxCoeff() < 1e-12,
               "phi(b a) != diag(1, 1/2, 0)");
  REQUIRE_THAT((phi.apply(b) * a - diag3(1, 1.25, 0)).cwiseAbs().maxCoeff() < 1e-12,
               "phi(b) a != diag(1, 5/4, 0)");

  const ComplexMatrix ap = diag3(1.0, 2.0, 3.0);
  const ComplexMatrix id3 = ComplexMatrix::Identity(3, 3);
  REQUIRE_THAT(
      (phi.apply(id3) * ap - phi.apply(ap)).cwiseAbs().maxCoeff() < 1e-12 &&
          (ap * phi.apply(id3) - phi.apply(ap)).cwiseAbs().maxCoeff() < 1e-12,
      "unit equalities fail for diag(1, 2, 3)");
  REQUIRE_THAT(
      (phi.apply(b * ap) - diag3(1, 0.5, 0)).cwiseAbs().maxCoeff() < 1e-12 &&
          (phi.apply(b) * ap - diag3(1, 1.0, 0)).cwiseAbs().maxCoeff() < 1e-12,
      "phi(b a') vs phi(b) a' displayed values wrong");

  OperatorAlgebra full =
      algebra_from_blocks({{1, 3}}, 0, ComplexMatrix::Identity(3, 3));
  Representation id_rep = identity_representation(full);
  bool refused_tp = false, refused_unital = false;
  try {
    unit_characterization_set(phi, id_rep);
  } catch (const RefusalError&) {
    refused_tp = true;
  }
  try {
    unit_characterization_set(fixtures::tp_not_unital_3d(), id_rep);
  } catch (const RefusalError&) {
    refused_unital = true;
  }
  REQUIRE_THAT(refused_tp, "non-trace-preserving map was not refused");
  REQUIRE_THAT(refused_unital, "non-unital map was not refused");
  return f;
}

// Criterion 3: the bit-flip code end to end.
Failure criterion3() {
  Failure f;
  QuantumChannel ch = fixtures::bit_flip_3q();
  SubsystemCode code = qmd::fixtures::bit_flip_code(0);

  CorrectionReport report = run_correction_suite(ch, code, 1e-9);
  REQUIRE_THAT(report.subsystem_correctable && report.representation_found &&
                   report.domain_match && report.compression_identity,
               "a correctability condition reported false");

  MultDomResult md =
      generalized_multiplicative_domain(ch, *report.representation, 1e-9);
  REQUIRE_THAT(md.subspace.dim() == 4,
               "domain dim " << md.subspace.dim() << " != 4");
  SubspaceComparison cmp = subspace_equal(md.subspace, code.algebra().basis(), 1e-9);
  REQUIRE_THAT(cmp.equal && cmp.max_angle < 1e-9,
               "domain angle " << cmp.max_angle << " >= 1e-9");

  Representation expected = fixtures::bit_flip_syndrome_rep();
  for (std::size_t j = 0; j < expected.images().size(); ++j) {
    const double d =
        (report.representation->images()[j] - expected.images()[j]).norm();
    REQUIRE_THAT(d < 1e-9, "solved representation image " << j << " off by " << d);
  }

  QuantumChannel projector_map({code.projector()});
  QuantumChannel corrected =
      compose(*report.recovery, compose(ch, projector_map));
  const double choi_dist = (choi(corrected) - choi(projector_map)).norm();
  REQUIRE_THAT(choi_dist < 1e-9,
               "built recovery Choi distance " << choi_dist << " >= 1e-9");

  REQUIRE_THAT(verify_correction(ch, fixtures::recovery_3q(), code).corrected,
               "the explicit recovery fixture fails verification");

  KnillLaflammeResult kl = knill_laflamme_test(ch, code);
  REQUIRE_THAT(kl.correctable &&
                   (kl.lambda - 0.25 * Eigen::MatrixXcd::Identity(4, 4)).norm() <
                       1e-12,
               "lambda matrix is not I/4 at 1e-12");
  return f;
}

// Criterion 4: the Kraus-level solver agrees with the defining system on
// 100 seeded random channels, and with the unit characterization on the
// unital ones.
Failure criterion4() {
  Failure f;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(1000 + trial);
    std::uniform_int_distribution<Index> n_dist(3, 6);
    std::uniform_int_distribution<int> k_dist(2, 4);
    const Index n = n_dist(rng);
    const int k = k_dist(rng);
    const bool unital_case = trial % 2 == 0;
    QuantumChannel ch = unital_case ? test::random_unital_cptp_channel(n, k, rng)
                                    : test::random_cptp_channel(n, k, rng);
    OperatorAlgebra alg = test::random_block_algebra(n, rng);
    Representation pi = identity_representation(alg);

    MultDomResult by_def = generalized_multiplicative_domain(ch, pi, 1e-9, trial);
    MultDomResult by_kraus = multiplicative_domain_kraus(ch, pi, 1e-9, trial);
    SubspaceComparison cmp =
        subspace_equal(by_def.subspace, by_kraus.subspace, 1e-8);
    REQUIRE_THAT(cmp.equal, "trial " << trial << ": kraus solver angle "
                                     << cmp.max_angle << " >= 1e-8");
    if (unital_case) {
      MultDomResult by_unit = unit_characterization_set(ch, pi, 1e-9, trial);
      SubspaceComparison cmp2 =
          subspace_equal(by_def.subspace, by_unit.subspace, 1e-8);
      REQUIRE_THAT(cmp2.equal, "trial " << trial << ": unit characterization angle "
                                        << cmp2.max_angle << " >= 1e-8");
    }
  }
  return f;
}

// Criterion 5: membership equalities. Schwarz equalities on every basis
// element of 50 standard domains; squared-action equalities on 20 sampled
// positive full-rank elements each; the rank-1 counterexample element
// passes the equalities while failing membership.
Failure criterion5() {
  Failure f;
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng(2000 + trial);
    std::uniform_int_distribution<Index> n_dist(2, 4);
    std::uniform_int_distribution<int> k_dist(2, 3);
    const Index n = n_dist(rng);
    QuantumChannel ch = test::random_unital_cptp_channel(n, k_dist(rng), rng);

    MultDomResult md = multiplicative_domain(ch, 1e-9, trial);
    for (const auto& a : md.subspace.basis)
      REQUIRE_THAT(schwarz_equalities_hold(ch, a, 1e-9),
                   "trial " << trial << ": Schwarz equality fails on a basis element");

    Representation pi = md_restriction(ch, md.algebra);
    for (int s = 0; s < 20; ++s) {
      ComplexMatrix a =
          random_positive_full_rank(md.algebra, 9000 + 100 * trial + s);
      REQUIRE_THAT(square_equalities_hold(ch, pi, a, 1e-9),
                   "trial " << trial << ": squared-action equality fails on a "
                            "positive full-rank sample");
    }
  }

  QuantumChannel ce = fixtures::counterexample_4d();
  Representation pi = fixtures::doubled_block_rep();
  ComplexMatrix a = ComplexMatrix::Zero(4, 4);
  a(0, 0) = 1.0;
  REQUIRE_THAT(square_equalities_hold(ce, pi, a, 1e-9),
               "counterexample element no longer passes the equalities");
  MultDomResult md = generalized_multiplicative_domain(ce, pi, 1e-9);
  REQUIRE_THAT(!md.subspace.contains(a, 1e-8),
               "counterexample element wrongly a member");
  return f;
}

// Criterion 6: decompose round trips 100 random constructed algebras and
// the bicommutant fixes the unital ones.
Failure criterion6() {
  Failure f;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(3000 + trial);
    std::uniform_int_distribution<Index> n_dist(2, 12);
    OperatorAlgebra built = test::random_block_algebra(n_dist(rng), rng);
    OperatorAlgebra rec = decompose(built.basis(), 1e-9, 4000 + trial);

    auto key = [](const AlgebraBlock& b) { return std::pair(b.dim_a, b.dim_b); };
    std::vector<std::pair<Index, Index>> want, got;
    for (const auto& b : built.blocks()) want.push_back(key(b));
    for (const auto& b : rec.blocks()) got.push_back(key(b));
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    REQUIRE_THAT(want == got, "trial " << trial << ": block multiset mismatch");
    REQUIRE_THAT(rec.kernel_dim() == built.kernel_dim(),
                 "trial " << trial << ": kernel dim mismatch");

    SubspaceComparison cmp = subspace_equal(rec.basis(), built.basis(), 1e-8);
    REQUIRE_THAT(cmp.equal, "trial " << trial << ": basis angle "
                                     << cmp.max_angle << " >= 1e-8");

    if (built.kernel_dim() == 0) {
      OperatorSubspace once = commutant(built.basis().basis, built.ambient_dim());
      OperatorSubspace twice = commutant(once.basis, built.ambient_dim());
      REQUIRE_THAT(subspace_equal(twice, built.basis(), 1e-8).equal,
                   "trial " << trial << ": bicommutant mismatch");
    }
  }
  return f;
}

// Criterion 7: 50 constructed noiseless models pass every check with the
// identity representation recovered; the bit-flip code is correctable but
// not noiseless.
Failure criterion7() {
  Failure f;
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng(5000 + trial);
    std::uniform_int_distribution<Index> a_dist(1, 2), b_dist(2, 3), extra(0, 3);
    std::uniform_int_distribution<int> k_dist(2, 3);
    const Index da = a_dist(rng), db = b_dist(rng);
    const Index n = da * db + extra(rng);
    NoiselessModel model =
        random_noiseless_model(da, db, n, k_dist(rng), 6000 + trial);

    REQUIRE_THAT(noiseless_check(model.channel, model.code, 1e-8),
                 "trial " << trial << ": noiseless check fails");
    REQUIRE_THAT(is_bimodule(model.channel, model.code.algebra(), 1e-8),
                 "trial " << trial << ": bimodule check fails");

    CorrectionReport report =
        run_correction_suite(model.channel, model.code, 1e-9, trial);
    REQUIRE_THAT(report.correctable() && report.recovery_verified,
                 "trial " << trial << ": suite fails on a noiseless model");
    REQUIRE_THAT(report.noiseless, "trial " << trial << ": noiseless flag unset");

    const auto& basis = model.code.algebra().basis().basis;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const double d = (report.representation->images()[j] - basis[j]).norm();
      REQUIRE_THAT(d < 1e-8, "trial " << trial
                                      << ": solved representation is not the "
                                         "identity (image off by "
                                      << d << ")");
    }
  }

  QuantumChannel bf = fixtures::bit_flip_3q();
  SubsystemCode c0 = qmd::fixtures::bit_flip_code(0);
  CorrectionReport report = run_correction_suite(bf, c0, 1e-9);
  REQUIRE_THAT(report.correctable() && !report.noiseless,
               "bit-flip code must be correctable but not noiseless");
  REQUIRE_THAT(!noiseless_check(bf, c0, 1e-8), "noiseless_check wrongly true");
  return f;
}

// Criterion 8: equivalence integrity. run_correction_suite throws on any
// internal disagreement among the four conditions, so surviving every
// fixture and 200 random pairs is the assertion.
Failure criterion8() {
  Failure f;
  QuantumChannel bf = fixtures::bit_flip_3q();
  for (int k = 0; k < 4; ++k) {
    try {
      run_correction_suite(bf, qmd::fixtures::bit_flip_code(k), 1e-9);
    } catch (const std::exception& e) {
      REQUIRE_THAT(false, "fixture code " << k << ": " << e.what());
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    Rng rng(7000 + trial);
    std::uniform_int_distribution<Index> n_dist(3, 8);
    std::uniform_int_distribution<int> k_dist(2, 4);
    const Index n = n_dist(rng);
    QuantumChannel ch = test::random_cptp_channel(n, k_dist(rng), rng);
    SubsystemCode code = test::random_code(n, rng);
    try {
      CorrectionReport report = run_correction_suite(ch, code, 1e-9, trial);
      if (report.correctable())
        REQUIRE_THAT(report.recovery_verified,
                     "trial " << trial << ": correctable but recovery unverified");
    } catch (const std::logic_error& e) {
      REQUIRE_THAT(false, "trial " << trial << ": conditions disagree: " << e.what());
    }
  }
  return f;
}

struct Criterion {
  int id;
  const char* summary;
  std::function<Failure()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "counterexample channel: image formula, equalities, non-membership",
       criterion1},
      {2, "hypothesis counterexamples: displayed values and refusals", criterion2},
      {3, "bit-flip code: all conditions, representation, recovery, lambda",
       criterion3},
      {4, "solver cross-checks over 100 random channels", criterion4},
      {5, "membership equality suites over 50 random unital channels", criterion5},
      {6, "100 algebra decomposition round trips + bicommutant", criterion6},
      {7, "50 noiseless models end to end; bit-flip is not noiseless", criterion7},
      {8, "equivalence integrity over fixtures and 200 random pairs", criterion8},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  bool all_ok = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Failure f;
    try {
      f = c.run();
    } catch (const std::exception& e) {
      f.failed = true;
      f.msg << "unexpected exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::cout << "criterion " << c.id << ": " << (f.failed ? "FAIL" : "PASS")
              << " (" << secs << "s) - " << c.summary;
    if (f.failed) std::cout << " [" << f.msg.str() << "]";
    std::cout << std::endl;
    all_ok = all_ok && !f.failed;
  }
  return all_ok ? 0 : 1;
}
