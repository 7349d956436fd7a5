#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qmd/channel.hpp"
#include "qmd/numerics.hpp"
#include "qmd/random.hpp"
#include "support.hpp"

using namespace qmd;

namespace {

// The closed-form image of the counterexample channel on the top-left 2x2
// block: entries c1..c4 land on the diagonal and at (2,2), all halved.
ComplexMatrix counterexample_block_image(Complex c1, Complex c2, Complex c3,
                                         Complex c4) {
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  out(0, 0) = c1;
  out(0, 2) = c2;
  out(1, 1) = c4;
  out(1, 2) = c3;
  out(2, 0) = c3;
  out(2, 1) = c2;
  out(2, 2) = c1 + c4;
  return 0.5 * out;
}

ComplexMatrix ket(int i, Index n) {
  ComplexMatrix v = ComplexMatrix::Zero(n, 1);
  v(i, 0) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("bit flip channel spreads |000><000| over the four flips") {
  QuantumChannel ch = fixtures::bit_flip_3q();
  ComplexMatrix rho = ket(0, 8) * ket(0, 8).adjoint();
  ComplexMatrix img = ch.apply(rho);
  ComplexMatrix expected = ComplexMatrix::Zero(8, 8);
  for (int i : {0b000, 0b100, 0b010, 0b001})
    expected(i, i) = 0.25;
  CHECK((img - expected).norm() < 1e-15);
}

TEST_CASE("counterexample channel matches its closed-form block image") {
  QuantumChannel ch = fixtures::counterexample_4d();
  Rng rng(21);
  ComplexMatrix c = random_gaussian(2, 2, rng);
  ComplexMatrix in = ComplexMatrix::Zero(4, 4);
  in.block(0, 0, 2, 2) = c;
  ComplexMatrix expected =
      counterexample_block_image(c(0, 0), c(0, 1), c(1, 0), c(1, 1));
  CHECK((ch.apply(in) - expected).norm() < 1e-14);
}

TEST_CASE("identity Kraus channel acts as the identity") {
  QuantumChannel id({ComplexMatrix::Identity(3, 3)});
  Rng rng(2);
  ComplexMatrix x = random_gaussian(3, 3, rng);
  CHECK((id.apply(x) - x).norm() == 0.0);
  CHECK_THROWS_AS(id.apply(ComplexMatrix::Zero(2, 2)), std::invalid_argument);
}

TEST_CASE("dual is an involution and swaps TP with unital") {
  QuantumChannel ch = fixtures::bit_flip_3q();
  QuantumChannel dd = ch.dual().dual();
  REQUIRE(dd.kraus().size() == ch.kraus().size());
  for (std::size_t i = 0; i < ch.kraus().size(); ++i)
    CHECK((dd.kraus()[i] - ch.kraus()[i]).norm() == 0.0);

  CHECK(ch.is_trace_preserving(1e-12));
  CHECK(ch.dual().is_unital(1e-12));

  // Trace duality <apply(a), b> = <a, dual(b)> on the non-TP fixture.
  QuantumChannel phi = fixtures::unital_not_tp_3d();
  Rng rng(4);
  for (int t = 0; t < 5; ++t) {
    ComplexMatrix a = random_gaussian(3, 3, rng);
    ComplexMatrix b = random_gaussian(3, 3, rng);
    Complex lhs = (phi.apply(a) * b).trace();
    Complex rhs = (a * phi.dual().apply(b)).trace();
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("fixture unitality / trace-preservation flags") {
  CHECK(fixtures::counterexample_4d().is_unital(1e-12));
  CHECK(fixtures::counterexample_4d().is_trace_preserving(1e-12));

  CHECK(fixtures::unital_not_tp_3d().is_unital(1e-12));
  CHECK_FALSE(fixtures::unital_not_tp_3d().is_trace_preserving(1e-3));

  CHECK(fixtures::tp_not_unital_3d().is_trace_preserving(1e-12));
  CHECK_FALSE(fixtures::tp_not_unital_3d().is_unital(1e-3));
}

TEST_CASE("compose with the identity and Choi-level distribution") {
  QuantumChannel ch = fixtures::bit_flip_3q();
  QuantumChannel id({ComplexMatrix::Identity(8, 8)});
  CHECK(channels_equal(compose(id, ch), ch, 1e-12));

  Rng rng(6);
  QuantumChannel f = test::random_cptp_channel(3, 2, rng);
  QuantumChannel g = test::random_cptp_channel(3, 3, rng);
  QuantumChannel fg = compose(f, g);
  for (const auto& u : matrix_unit_basis(3))
    CHECK((fg.apply(u) - f.apply(g.apply(u))).norm() < 1e-13);
}

TEST_CASE("recovery composed with the noise restricts to the identity on the code") {
  QuantumChannel noisy = fixtures::bit_flip_3q();
  QuantumChannel rec = fixtures::recovery_3q();
  QuantumChannel fixed = compose(rec, noisy);
  ComplexMatrix w = fixtures::bit_flip_subspace_basis(0);
  for (const auto& y : matrix_unit_basis(2)) {
    ComplexMatrix lifted = w * y * w.adjoint();
    CHECK((fixed.apply(lifted) - lifted).norm() < 1e-13);
  }
}

TEST_CASE("channels_equal sees maps, not Kraus lists") {
  QuantumChannel plus({ComplexMatrix::Identity(2, 2)});
  QuantumChannel minus({-ComplexMatrix::Identity(2, 2)});
  CHECK(channels_equal(plus, minus, 1e-14));

  QuantumChannel ch = fixtures::bit_flip_3q();
  auto kraus = ch.kraus();
  std::rotate(kraus.begin(), kraus.begin() + 2, kraus.end());
  CHECK(channels_equal(ch, QuantumChannel(kraus), 1e-14));

  QuantumChannel id8({ComplexMatrix::Identity(8, 8)});
  CHECK_FALSE(channels_equal(ch, id8, 1e-9));
  CHECK((choi(ch) - choi(id8)).norm() > 0.1);
}

TEST_CASE("stinespring dilation reconstructs the channel") {
  QuantumChannel id({ComplexMatrix::Identity(3, 3)});
  CHECK((stinespring(id) - ComplexMatrix::Identity(3, 3)).norm() == 0.0);

  QuantumChannel uni = fixtures::counterexample_4d();
  ComplexMatrix v = stinespring(uni);
  CHECK((v.adjoint() * v - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);

  QuantumChannel nonuni = fixtures::tp_not_unital_3d();
  ComplexMatrix v2 = stinespring(nonuni);
  CHECK((v2.adjoint() * v2 - ComplexMatrix::Identity(3, 3)).norm() > 1e-3);

  const Index k = static_cast<Index>(uni.kraus().size());
  for (const auto& a : matrix_unit_basis(4)) {
    ComplexMatrix dilated =
        v.adjoint() * kron(ComplexMatrix::Identity(k, k), a) * v;
    CHECK((dilated - uni.apply(a)).norm() < 1e-10);
  }
}

TEST_CASE("fixture matrices are bit-exact") {
  QuantumChannel bf = fixtures::bit_flip_3q();
  REQUIRE(bf.kraus().size() == 4);
  CHECK(bf.kraus()[0](0, 0) == Complex(0.5, 0.0));
  ComplexMatrix xii = bf.kraus()[1];  // (1/2) X (x) I (x) I
  CHECK(xii(0, 4) == Complex(0.5, 0.0));
  CHECK(xii(4, 0) == Complex(0.5, 0.0));

  QuantumChannel rec = fixtures::recovery_3q();
  REQUIRE(rec.kraus().size() == 4);
  CHECK((rec.kraus()[0] - fixtures::bit_flip_subspace_projector(0)).norm() == 0.0);

  QuantumChannel ce = fixtures::counterexample_4d();
  const ComplexMatrix& e1 = ce.kraus()[0];
  CHECK(e1(3, 0) == Complex(0.0, 0.0));
  CHECK(e1(3, 1) == Complex(0.0, 0.0));
  CHECK(e1(3, 2) == Complex(0.0, 0.0));
  CHECK(e1(3, 3) == Complex(std::numbers::sqrt2 / 2.0, 0.0));

  CHECK_THROWS_AS(fixtures::by_name("nope"), std::invalid_argument);
  for (const auto& name : fixtures::names())
    CHECK(fixtures::by_name(name).dim() > 0);
}

TEST_CASE("channel properties: adjoint compatibility, trace preservation") {
  Rng rng(8);
  QuantumChannel ch = test::random_cptp_channel(4, 3, rng);
  for (int t = 0; t < 5; ++t) {
    ComplexMatrix x = random_gaussian(4, 4, rng);
    CHECK((ch.apply(x.adjoint()) - ch.apply(x).adjoint()).norm() < 1e-12);
  }
  for (const auto& name : {"bit_flip_3q", "recovery_3q", "counterexample_4d",
                           "tp_not_unital_3d"}) {
    QuantumChannel tp = fixtures::by_name(name);
    ComplexMatrix rho = random_gaussian(tp.dim(), tp.dim(), rng);
    rho = (rho * rho.adjoint()).eval();
    CHECK(std::abs(tp.apply(rho).trace() - rho.trace()) <
          1e-10 * std::max(1.0, std::abs(rho.trace())));
  }
}

TEST_CASE("choi rank counts independent Kraus operators") {
  QuantumChannel id({ComplexMatrix::Identity(2, 2)});
  CHECK(choi_rank(id) == 1);
  CHECK(choi_rank(fixtures::bit_flip_3q()) == 4);

  // kraus_from_choi round trip at the map level.
  QuantumChannel ch = fixtures::counterexample_4d();
  QuantumChannel re(kraus_from_choi(choi(ch)));
  CHECK(channels_equal(ch, re, 1e-10));
}
