#include <doctest.h>

#include <cmath>

#include "tangle/concurrence.hpp"
#include "tangle/invariants.hpp"
#include "tangle/linalg.hpp"
#include "tangle/qstate.hpp"

using namespace tangle;

TEST_CASE("partial trace fixtures") {
  const CMatrix r1 = partial_trace(ghz(4), {1});
  CHECK(std::abs(r1(0, 0) - 0.5) <= 1e-14);
  CHECK(std::abs(r1(1, 1) - 0.5) <= 1e-14);
  CHECK(std::abs(r1(0, 1)) <= 1e-14);

  const CMatrix r12 = partial_trace(ghz(5), {1, 2});
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double want = ((i == j) && (i == 0 || i == 3)) ? 0.5 : 0.0;
      CHECK(std::abs(r12(i, j) - want) <= 1e-14);
    }
  }

  QState zero1{1, CVector::Zero(2)};
  zero1.amps[0] = 1.0;
  const CMatrix r = partial_trace(tensor(zero1, random_pure(3, 4)), {1});
  CHECK(std::abs(r(0, 0) - 1.0) <= 1e-12);
  CHECK(std::abs(r(1, 1)) <= 1e-12);

  CHECK_THROWS_AS(partial_trace(ghz(4), {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(ghz(4), {0}), std::invalid_argument);

  // Hermiticity and unit trace on random reductions
  for (int trial = 0; trial < 20; ++trial) {
    const QState s = random_pure(5, std::uint64_t(trial));
    const CMatrix rho = partial_trace(s, {1, 3});
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
  }
}

TEST_CASE("spin flip") {
  CMatrix rho = CMatrix::Zero(4, 4);
  rho(0, 0) = rho(3, 3) = 0.5;
  CHECK((spin_flip(rho) - rho).cwiseAbs().maxCoeff() <= 1e-15);

  const CMatrix mixed = CMatrix::Identity(4, 4) / 4.0;
  CHECK((spin_flip(mixed) - mixed).cwiseAbs().maxCoeff() <= 1e-15);

  const CMatrix r = partial_trace(random_pure(4, 8), {1, 2});
  CHECK((spin_flip(spin_flip(r)) - r).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("wootters concurrence") {
  for (int n : {4, 6}) {
    const CMatrix rho = partial_trace(dicke(n / 2, n), {1, 2});
    CHECK(wootters_concurrence(rho) ==
          doctest::Approx(1.0 / (n - 1)).epsilon(1e-9));
    CHECK(wootters_concurrence(partial_trace(ghz(n), {1, 2})) <= 1e-9);
  }

  // Dicke n=4: rho rho~ spectrum {4/9, 1/36, 1/36, 0}
  const CMatrix rho = partial_trace(dicke(2, 4), {1, 2});
  const CMatrix prod = rho * spin_flip(rho);
  const CVector ev = eigenvalues(prod).sorted_by_real();
  CHECK(std::abs(ev[0] - 4.0 / 9.0) <= 1e-9);
  CHECK(std::abs(ev[1] - 1.0 / 36.0) <= 1e-9);
  CHECK(std::abs(ev[2] - 1.0 / 36.0) <= 1e-9);
  CHECK(std::abs(ev[3]) <= 1e-9);

  // closed-form pure two-qubit oracle: C = 2|a0 a3 - a1 a2|
  for (int trial = 0; trial < 200; ++trial) {
    const QState s = random_pure(2, std::uint64_t(trial + 1));
    const CMatrix pure = s.amps * s.amps.adjoint();
    const double want = 2.0 * std::abs(s.amps[0] * s.amps[3] - s.amps[1] * s.amps[2]);
    CHECK(std::abs(wootters_concurrence(pure) - want) <= 1e-10);
  }
}

TEST_CASE("qubit-1 concurrence in both forms") {
  for (int n : {4, 6}) {
    CHECK(c_one_rest(dicke(n / 2, n), COneForm::det_form).c_squared ==
          doctest::Approx(1.0).epsilon(1e-11));
  }
  for (int n : {3, 4, 5, 6}) {
    CHECK(c_one_rest(w(n), COneForm::det_form).c_squared ==
          doctest::Approx(4.0 * (n - 1) / double(n * n)).epsilon(1e-11));
  }
  QState one1{1, CVector::Zero(2)};
  one1.amps[1] = 1.0;
  CHECK(c_one_rest(tensor(one1, random_pure(3, 2)), COneForm::sum_form).c <= 1e-12);

  for (int n = 3; n <= 8; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const QState s = random_pure(n, std::uint64_t(100 * n + trial));
      const double a = c_one_rest(s, COneForm::det_form).c_squared;
      const double b = c_one_rest(s, COneForm::sum_form).c_squared;
      CHECK(std::abs(a - b) <= 1e-11);
      CHECK(b >= 0.0);
      CHECK(b <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("residual entanglement fixtures") {
  for (int n : {4, 6, 8}) {
    const ConcurrenceReport g = residual_tangle(ghz(n));
    CHECK(g.residual == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g.c_one_rest_sq == doctest::Approx(1.0).epsilon(1e-10));
    for (double c : g.c_pairs) CHECK(c <= 1e-9);

    const ConcurrenceReport d = residual_tangle(dicke(n / 2, n));
    CHECK(d.residual == doctest::Approx((n - 2.0) / (n - 1.0)).epsilon(1e-9));
  }
  for (int n : {3, 4, 5, 6}) {
    CHECK(std::abs(residual_tangle(w(n)).residual) <= 1e-9);
  }

  // monogamy on random pure states
  for (int n = 3; n <= 6; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      CHECK(residual_tangle(random_pure(n, std::uint64_t(trial))).residual >= -1e-9);
    }
  }
}

TEST_CASE("factorization round trips and converse") {
  QState plus{1, CVector::Zero(2)};
  plus.amps[0] = plus.amps[1] = 1.0 / std::sqrt(2.0);
  const FactorResult f1 = factor_one_rest(tensor(plus, ghz(3)), 1e-8);
  REQUIRE(f1.is_product);
  CHECK(f1.fidelity >= 1.0 - 1e-10);

  QState one1{1, CVector::Zero(2)};
  one1.amps[1] = 1.0;
  const FactorResult f2 = factor_one_rest(tensor(one1, random_pure(5, 6)), 1e-8);
  REQUIRE(f2.is_product);
  CHECK(f2.case_branch == 1);
  CHECK(f2.fidelity >= 1.0 - 1e-12);

  const FactorResult f3 = factor_one_rest(ghz(4), 1e-8);
  CHECK_FALSE(f3.is_product);
  CHECK(f3.c_value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("C^2 >= tau certificate") {
  for (int trial = 0; trial < 200; ++trial) {
    const Result3Certificate c = result3_certificate(random_pure(4, std::uint64_t(trial)));
    CHECK(c.block_gap <= 1e-11);
    CHECK(c.tau_within_bound);
    CHECK(c.worst_pair_margin >= -1e-12);
    CHECK(c.headline);
  }

  const Result3Certificate d = result3_certificate(dicke(2, 4));
  CHECK(d.c_squared == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(d.tau == doctest::Approx(1.0).epsilon(1e-10));

  const Result3Certificate ww = result3_certificate(w(4));
  CHECK(ww.c_squared == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(ww.tau <= 1e-12);

  // corollaries of C^2 >= tau
  for (int trial = 0; trial < 100; ++trial) {
    const QState s = random_pure(6, std::uint64_t(600 + trial));
    const double tau = n_tangle_fast(s).tau;
    const double c = c_one_rest(s, COneForm::sum_form).c;
    if (tau > 1e-6) CHECK(c > 1e-6);
    if (c < 1e-12) CHECK(tau < 1e-10);
  }
}

TEST_CASE("partial-measure laws for product states") {
  const PartialMeasureReport gg = partial_measure_check(ghz(3), ghz(3));
  CHECK(gg.c_gap <= 1e-10);
  CHECK(gg.pair_gap_kept <= 1e-10);
  CHECK(gg.pair_max_cross <= 1e-10);
  CHECK(gg.residual_gap <= 1e-9);
  CHECK(residual_tangle(tensor(ghz(3), ghz(3))).residual ==
        doctest::Approx(1.0).epsilon(1e-9));

  CHECK(std::abs(residual_tangle(tensor(w(3), random_pure(2, 11))).residual) <= 1e-9);

  QState zero1{1, CVector::Zero(2)};
  zero1.amps[0] = 1.0;
  CHECK(residual_tangle(tensor(dicke(2, 4), zero1)).residual ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));

  for (int trial = 0; trial < 10; ++trial) {
    const PartialMeasureReport rep = partial_measure_check(
        random_pure(3, std::uint64_t(trial)), random_pure(2, std::uint64_t(50 + trial)));
    CHECK(rep.c_gap <= 1e-10);
    CHECK(rep.pair_gap_kept <= 1e-10);
    CHECK(rep.pair_max_cross <= 1e-10);
    CHECK(rep.residual_gap <= 1e-9);
  }
}
