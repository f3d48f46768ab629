#pragma once

#include <cstdint>

#include "tangle/qstate.hpp"

namespace tangle {

// Antisymmetric 2x2 epsilon table: e(0,1) = 1, e(1,0) = -1, zero diagonal.
struct EpsilonTensor {
  int operator()(int a, int b) const {
    static constexpr int table[2][2] = {{0, 1}, {-1, 0}};
    return table[a][b];
  }
};

// (-1)^N(l) where N(l) is the ones count of l's binary form.
int popcount_sign(std::uint64_t l, int width);

// Degree-2 sum over the epsilon table: paired amplitudes a_{alpha 0} and
// a_{complement(alpha) 1}. Even n only.
Complex invariant_s0(const QState& state);

enum class IStarForm {
  grouped,   // quarter-range, two products per term
  pairform,  // full-range a_k a_{2^n-1-k} pairing
  folded,    // quarter-range differences (the Z_k shape)
};

// The degree-2 SLOCC invariant in one of its three equivalent summation
// forms. Even n only; all forms agree with invariant_s0 as signed values.
Complex i_star(const QState& state, IStarForm form);

// 2|I*|
double tau_prime(const QState& state);

struct FastTangle {
  double tau = 0.0;
  long sum_mults = 0;    // complex multiplications inside the signed sum
  long final_ops = 0;    // modulus-square + scale, reported separately
};

// 4 |sum_l (-1)^N(l) a_{2l} a_{2^n-1-2l}|^2, instrumented.
FastTangle n_tangle_fast(const QState& state);

enum class OracleMode {
  raw,          // all 2^(4n) index quadruples with the epsilon product
  constrained,  // the 2^(2n) assignments surviving the epsilon constraints
};

struct OracleResult {
  Complex s;                          // quartic sum S
  Complex s1;                         // the i=1 degree-2 partial sum
  long term_count = 0;                // terms with nonzero epsilon product
  long mult_count = 0;                // complex multiplications performed
  std::uint64_t total_iterated = 0;   // index tuples visited
  double tau = 0.0;                   // 2|S|
};

// Brute-force quartic evaluation. raw: n in {3, 4}; constrained: even
// n <= 12 or n = 3. Throws std::invalid_argument outside the budget.
OracleResult n_tangle_oracle(const QState& state, OracleMode mode);

struct ReductionReport {
  Complex s;
  Complex s0;
  Complex s1;
  double gap_s_2s0sq = 0.0;    // |S - 2 S0^2|
  double gap_s1_plus_s0 = 0.0; // |S1 + S0|
  double case1_partial = 0.0;  // |sum of the beta_n = alpha_n terms|
};

ReductionReport verify_reduction(const QState& state);

struct MultiplicativityReport {
  double tau_product = 0.0;
  double tau_left = 0.0;
  double tau_right = 0.0;
  double gap = 0.0;  // |tau(a o b) - tau(a) tau(b)|
};

MultiplicativityReport multiplicativity_check(const QState& a, const QState& b);

}  // namespace tangle
