#include "tangle/invariants.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace tangle {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_even(const QState& s, const char* op) {
  if (s.n < 2 || (s.n % 2) != 0) {
    throw std::invalid_argument(std::string(op) +
                                ": defined for even n >= 2 only (no degree-2 invariant at odd n)");
  }
}

int pcs(std::uint64_t l) { return (std::popcount(l) & 1) ? -1 : 1; }

struct ConstrainedSums {
  Complex s = 0.0;
  Complex case1 = 0.0;  // beta_n = alpha_n subset
  long term_count = 0;
  long mult_count = 0;
  std::uint64_t total = 0;
};

// Quartic sum with the epsilon constraints substituted: free indices are
// alpha (n bits), the gamma prefix (n-1 bits) and beta_n.
ConstrainedSums constrained_oracle(const QState& state) {
  const int n = state.n;
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t half = dim >> 1;
  const std::uint64_t mask = half - 1;
  const EpsilonTensor eps;
  const CVector& a = state.amps;

  ConstrainedSums out;
  for (std::uint64_t alpha = 0; alpha < dim; ++alpha) {
    const std::uint64_t ap = alpha >> 1;  // alpha_1..alpha_{n-1}
    const int an = int(alpha & 1);
    const int sign_a = pcs(ap) * eps(an, an ^ 1);
    const Complex a1 = a[std::int64_t(alpha)];
    for (std::uint64_t g = 0; g < half; ++g) {
      const int sign_g = pcs(g);
      const Complex a3 = a[std::int64_t((g << 1) | std::uint64_t(an ^ 1))];
      const Complex a4lo = a[std::int64_t(((~g & mask) << 1) | 1)];
      const Complex a4hi = a[std::int64_t((~g & mask) << 1)];
      for (int bn = 0; bn < 2; ++bn) {
        const Complex a2 = a[std::int64_t(((~ap & mask) << 1) | std::uint64_t(bn))];
        const Complex a4 = (bn == 0) ? a4lo : a4hi;  // delta_n = complement(beta_n)
        const double sign = double(sign_a * sign_g * eps(bn, bn ^ 1));
        const Complex term = sign * a1 * a2 * a3 * a4;
        out.s += term;
        if (bn == an) out.case1 += term;
        ++out.term_count;
        out.mult_count += 3;
      }
    }
  }
  out.total = dim * half * 2;
  return out;
}

// The degree-2 partial sum S_i: pairs a_{alpha' i} with a_{complement i'}.
Complex s_partial(const QState& state, int i) {
  const int n = state.n;
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  const std::uint64_t mask = half - 1;
  Complex acc = 0.0;
  for (std::uint64_t ap = 0; ap < half; ++ap) {
    acc += double(pcs(ap)) * state.amps[std::int64_t((ap << 1) | std::uint64_t(i))] *
           state.amps[std::int64_t(((~ap & mask) << 1) | std::uint64_t(i ^ 1))];
  }
  return acc;
}

}  // namespace

int popcount_sign(std::uint64_t l, int width) {
  require(width >= 0 && (width >= 64 || l < (std::uint64_t{1} << width)),
          "popcount_sign: value out of range for width");
  return pcs(l);
}

Complex invariant_s0(const QState& state) {
  require_even(state, "invariant_s0");
  const int m = state.n - 1;
  const std::uint64_t half = std::uint64_t{1} << m;
  const std::uint64_t mask = half - 1;
  const EpsilonTensor eps;
  Complex acc = 0.0;
  for (std::uint64_t alpha = 0; alpha < half; ++alpha) {
    int sign = 1;
    for (int i = 0; i < m; ++i) {
      const int b = int((alpha >> i) & 1);
      sign *= eps(b, b ^ 1);
    }
    acc += double(sign) * state.amps[std::int64_t(alpha << 1)] *
           state.amps[std::int64_t(((~alpha & mask) << 1) | 1)];
  }
  return acc;
}

Complex i_star(const QState& state, IStarForm form) {
  require_even(state, "i_star");
  const std::uint64_t dim = std::uint64_t{1} << state.n;
  const std::uint64_t half = dim >> 1;
  const std::uint64_t quarter = dim >> 2;
  const CVector& a = state.amps;
  Complex acc = 0.0;
  switch (form) {
    case IStarForm::grouped:
      for (std::uint64_t l = 0; l < quarter; ++l) {
        acc += double(pcs(l)) *
               (a[std::int64_t(2 * l)] * a[std::int64_t(dim - 1 - 2 * l)] -
                a[std::int64_t(2 * l + 1)] * a[std::int64_t(dim - 2 - 2 * l)]);
      }
      break;
    case IStarForm::pairform:
      for (std::uint64_t k = 0; k < half; ++k) {
        acc += double(pcs(k)) * a[std::int64_t(k)] * a[std::int64_t(dim - 1 - k)];
      }
      break;
    case IStarForm::folded:
      for (std::uint64_t k = 0; k < quarter; ++k) {
        acc += double(pcs(k)) *
               (a[std::int64_t(k)] * a[std::int64_t(dim - 1 - k)] -
                a[std::int64_t(half - 1 - k)] * a[std::int64_t(half + k)]);
      }
      break;
  }
  return acc;
}

double tau_prime(const QState& state) {
  require_even(state, "tau_prime");
  return 2.0 * std::abs(i_star(state, IStarForm::grouped));
}

FastTangle n_tangle_fast(const QState& state) {
  require_even(state, "n_tangle_fast");
  const std::uint64_t dim = std::uint64_t{1} << state.n;
  const std::uint64_t half = dim >> 1;
  const CVector& a = state.amps;
  Complex acc = 0.0;
  for (std::uint64_t l = 0; l < half; ++l) {
    acc += double(pcs(l)) * a[std::int64_t(2 * l)] * a[std::int64_t(dim - 1 - 2 * l)];
  }
  FastTangle out;
  out.sum_mults = long(half);
  out.final_ops = 2;  // |acc|^2 and the factor 4
  out.tau = 4.0 * std::norm(acc);
  return out;
}

OracleResult n_tangle_oracle(const QState& state, OracleMode mode) {
  const int n = state.n;
  OracleResult out;
  if (mode == OracleMode::raw) {
    require(n == 3 || n == 4, "n_tangle_oracle raw: budget allows n in {3, 4}");
    const std::uint64_t dim = std::uint64_t{1} << n;
    const EpsilonTensor eps;
    const CVector& a = state.amps;
    Complex acc = 0.0;
    for (std::uint64_t alpha = 0; alpha < dim; ++alpha)
      for (std::uint64_t beta = 0; beta < dim; ++beta)
        for (std::uint64_t gamma = 0; gamma < dim; ++gamma)
          for (std::uint64_t delta = 0; delta < dim; ++delta) {
            int ep = 1;
            for (int i = 1; i < n && ep != 0; ++i) {
              ep *= eps(qubit_bit(alpha, i, n), qubit_bit(beta, i, n));
              ep *= eps(qubit_bit(gamma, i, n), qubit_bit(delta, i, n));
            }
            if (ep == 0) continue;
            ep *= eps(qubit_bit(alpha, n, n), qubit_bit(gamma, n, n));
            ep *= eps(qubit_bit(beta, n, n), qubit_bit(delta, n, n));
            if (ep == 0) continue;
            acc += double(ep) * a[std::int64_t(alpha)] * a[std::int64_t(beta)] *
                   a[std::int64_t(gamma)] * a[std::int64_t(delta)];
            ++out.term_count;
            out.mult_count += 3;
          }
    out.s = acc;
    out.total_iterated = dim * dim * dim * dim;
  } else {
    require(n == 3 || (n % 2 == 0 && n >= 2 && n <= 12),
            "n_tangle_oracle constrained: budget allows even n <= 12 or n = 3");
    const ConstrainedSums cs = constrained_oracle(state);
    out.s = cs.s;
    out.term_count = cs.term_count;
    out.mult_count = cs.mult_count;
    out.total_iterated = cs.total;
  }
  out.s1 = s_partial(state, 1);
  out.tau = 2.0 * std::abs(out.s);
  return out;
}

ReductionReport verify_reduction(const QState& state) {
  require_even(state, "verify_reduction");
  require(state.n <= 12, "verify_reduction: constrained-oracle budget is n <= 12");
  const ConstrainedSums cs = constrained_oracle(state);
  ReductionReport rep;
  rep.s = cs.s;
  rep.s0 = invariant_s0(state);
  rep.s1 = s_partial(state, 1);
  rep.gap_s_2s0sq = std::abs(cs.s - 2.0 * rep.s0 * rep.s0);
  rep.gap_s1_plus_s0 = std::abs(rep.s1 + rep.s0);
  rep.case1_partial = std::abs(cs.case1);
  return rep;
}

MultiplicativityReport multiplicativity_check(const QState& a, const QState& b) {
  require_even(a, "multiplicativity_check");
  require_even(b, "multiplicativity_check");
  MultiplicativityReport rep;
  rep.tau_left = n_tangle_fast(a).tau;
  rep.tau_right = n_tangle_fast(b).tau;
  rep.tau_product = n_tangle_fast(tensor(a, b)).tau;
  rep.gap = std::abs(rep.tau_product - rep.tau_left * rep.tau_right);
  return rep;
}

}  // namespace tangle
