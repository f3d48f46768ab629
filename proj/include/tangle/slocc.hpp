#pragma once

#include <cstdint>
#include <vector>

#include "tangle/qstate.hpp"

namespace tangle {

// n invertible 2x2 operators A_1..A_n plus their determinant product.
struct LocalOperatorSet {
  std::vector<Mat2> ops;
  Complex det_product = 1.0;
};

LocalOperatorSet make_operator_set(std::vector<Mat2> ops);

// A_1 o ... o A_n |psi>, one 2x2 sweep per qubit. Not normalized.
QState apply_local(const QState& state, const LocalOperatorSet& ops);

// Gaussian-entry 2x2 operators, redrawn while |det| < 0.1.
LocalOperatorSet random_invertible_set(int n, std::uint64_t seed);

struct CovarianceReport {
  Complex i_star_in;
  Complex i_star_out;
  Complex predicted;     // I*(a) * prod det A_i
  double rel_error = 0.0;
  double tau_rel_error = 0.0;
};

// Checks I*(b) = I*(a) prod det(A_i) and the induced tau scaling.
CovarianceReport covariance_check(const QState& state, const LocalOperatorSet& ops);

}  // namespace tangle
