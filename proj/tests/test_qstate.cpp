#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tangle/qstate.hpp"

using namespace tangle;

namespace {
const double kRoot2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("from_spec builds sparse and dense states") {
  StateSpec spec;
  spec.n = 4;
  spec.terms = {{"0011", 1.0, 0.0}};
  spec.normalize_on_load = true;
  const QState s = from_spec(spec);
  CHECK(s.amps[3] == Complex(1.0, 0.0));
  for (int i = 0; i < 16; ++i) {
    if (i != 3) CHECK(s.amps[i] == Complex(0.0, 0.0));
  }

  StateSpec ghz_spec;
  ghz_spec.n = 4;
  ghz_spec.terms = {{"0000", 1.0, 0.0}, {"1111", 1.0, 0.0}};
  ghz_spec.normalize_on_load = true;
  const QState g = from_spec(ghz_spec);
  CHECK(g.amps[0].real() == doctest::Approx(kRoot2).epsilon(1e-14));
  CHECK(g.amps[15].real() == doctest::Approx(kRoot2).epsilon(1e-14));
}

TEST_CASE("from_spec rejects bad input") {
  StateSpec zero;
  zero.n = 2;
  zero.dense.assign(4, Complex(0.0, 0.0));
  zero.normalize_on_load = true;
  CHECK_THROWS_WITH_AS(from_spec(zero), doctest::Contains("zero vector"),
                       std::invalid_argument);

  StateSpec dup;
  dup.n = 2;
  dup.terms = {{"01", 1.0, 0.0}, {"01", 1.0, 0.0}};
  dup.normalize_on_load = true;
  CHECK_THROWS_AS(from_spec(dup), std::invalid_argument);

  StateSpec short_dense;
  short_dense.n = 3;
  short_dense.dense.assign(4, Complex(0.5, 0.0));
  CHECK_THROWS_AS(from_spec(short_dense), std::invalid_argument);
}

TEST_CASE("ghz amplitudes") {
  const QState g2 = ghz(2);
  CHECK(g2.amps[0].real() == doctest::Approx(kRoot2));
  CHECK(g2.amps[1] == Complex(0.0));
  CHECK(g2.amps[2] == Complex(0.0));
  CHECK(g2.amps[3].real() == doctest::Approx(kRoot2));

  const QState g3 = ghz(3);
  CHECK(g3.amps[0].real() == doctest::Approx(kRoot2));
  CHECK(g3.amps[7].real() == doctest::Approx(kRoot2));

  const QState g4 = ghz(4);
  CHECK(g4.amps[0].real() == doctest::Approx(kRoot2));
  CHECK(g4.amps[15].real() == doctest::Approx(kRoot2));

  CHECK_THROWS_AS(ghz(1), std::invalid_argument);
}

TEST_CASE("w amplitudes sit on powers of two") {
  const QState w2 = w(2);
  CHECK(w2.amps[1].real() == doctest::Approx(kRoot2));
  CHECK(w2.amps[2].real() == doctest::Approx(kRoot2));
  CHECK(w2.amps[0] == Complex(0.0));
  CHECK(w2.amps[3] == Complex(0.0));

  const QState w3 = w(3);
  for (int idx : {1, 2, 4}) {
    CHECK(w3.amps[idx].real() == doctest::Approx(1.0 / std::sqrt(3.0)));
  }

  const QState w4 = w(4);
  for (int idx : {1, 2, 4, 8}) {
    CHECK(w4.amps[idx].real() == doctest::Approx(0.5));
  }
}

TEST_CASE("dicke states enumerate fixed-weight strings") {
  const QState d24 = dicke(2, 4);
  for (int idx : {3, 5, 6, 9, 10, 12}) {
    CHECK(d24.amps[idx].real() == doctest::Approx(1.0 / std::sqrt(6.0)));
  }
  CHECK(d24.amps[0] == Complex(0.0));
  CHECK(d24.amps[15] == Complex(0.0));

  const QState d13 = dicke(1, 3);
  const QState w3 = w(3);
  for (int i = 0; i < 8; ++i) CHECK(d13.amps[i] == w3.amps[i]);

  const QState d36 = dicke(3, 6);
  int nonzero = 0;
  for (int i = 0; i < 64; ++i) {
    if (std::abs(d36.amps[i]) > 0) {
      ++nonzero;
      CHECK(d36.amps[i].real() == doctest::Approx(1.0 / std::sqrt(20.0)));
    }
  }
  CHECK(nonzero == 20);

  CHECK_THROWS_AS(dicke(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(dicke(4, 4), std::invalid_argument);
}

TEST_CASE("tensor places the left factor on high-order qubits") {
  QState zero1{1, CVector::Zero(2)};
  zero1.amps[0] = 1.0;
  QState one1{1, CVector::Zero(2)};
  one1.amps[1] = 1.0;
  const QState zo = tensor(zero1, one1);
  CHECK(zo.amps[1] == Complex(1.0));

  const QState gg = tensor(ghz(2), ghz(2));
  for (int idx : {0, 3, 12, 15}) CHECK(gg.amps[idx].real() == doctest::Approx(0.5));

  const QState gg3 = tensor(ghz(3), ghz(3));
  for (int idx : {0, 7, 56, 63}) CHECK(gg3.amps[idx].real() == doctest::Approx(0.5));

  const QState a = random_pure(2, 1);
  const QState b = random_pure(2, 2);
  const QState c = random_pure(1, 3);
  const QState lhs = tensor(tensor(a, b), c);
  const QState rhs = tensor(a, tensor(b, c));
  CHECK((lhs.amps - rhs.amps).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(std::abs(lhs.norm() - a.norm() * b.norm() * c.norm()) <= 1e-14);
}

TEST_CASE("permute_qubits relabels consistently") {
  const QState g = ghz(4);
  const QState same = permute_qubits(g, {1, 2, 3, 4});
  CHECK((same.amps - g.amps).cwiseAbs().maxCoeff() == 0.0);

  QState zo{2, CVector::Zero(4)};
  zo.amps[1] = 1.0;  // |01>
  const QState oz = permute_qubits(zo, {2, 1});
  CHECK(oz.amps[2] == Complex(1.0));  // |10>

  const QState shuffled = permute_qubits(g, {3, 1, 4, 2});
  CHECK((shuffled.amps - g.amps).cwiseAbs().maxCoeff() == 0.0);

  const QState s = random_pure(4, 9);
  const QState round = permute_qubits(permute_qubits(s, {2, 4, 1, 3}), {3, 1, 4, 2});
  CHECK((round.amps - s.amps).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(permute_qubits(s, {4, 3, 2, 1}).norm() - 1.0) <= 1e-14);

  CHECK_THROWS_AS(permute_qubits(g, {1, 1, 2, 3}), std::invalid_argument);
}

TEST_CASE("random_pure is deterministic and normalized") {
  const QState a = random_pure(4, 77);
  const QState b = random_pure(4, 77);
  CHECK(a.amps.size() == 16);
  CHECK((a.amps - b.amps).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(a.norm() - 1.0) <= 1e-12);
  const QState c = random_pure(4, 78);
  CHECK((a.amps - c.amps).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("bit convention: qubit 1 is the most significant bit") {
  // |1000> must live at index 8 for n = 4.
  StateSpec spec;
  spec.n = 4;
  spec.terms = {{"1000", 1.0, 0.0}};
  spec.normalize_on_load = true;
  const QState s = from_spec(spec);
  CHECK(s.amps[8] == Complex(1.0));
  CHECK(qubit_bit(8, 1, 4) == 1);
  CHECK(qubit_bit(8, 4, 4) == 0);
}
