#include "tangle/slocc.hpp"

#include <cmath>
#include <stdexcept>

#include "tangle/invariants.hpp"
#include "tangle/random.hpp"

namespace tangle {

LocalOperatorSet make_operator_set(std::vector<Mat2> ops) {
  LocalOperatorSet set;
  set.ops = std::move(ops);
  set.det_product = 1.0;
  for (const Mat2& a : set.ops) {
    set.det_product *= a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  }
  return set;
}

QState apply_local(const QState& state, const LocalOperatorSet& ops) {
  if (int(ops.ops.size()) != state.n) {
    throw std::invalid_argument("apply_local: operator count != qubit count");
  }
  QState out = state;
  for (int q = 1; q <= state.n; ++q) {
    const Mat2& a = ops.ops[size_t(q - 1)];
    const std::uint64_t stride = std::uint64_t{1} << (state.n - q);
    for (std::uint64_t i = 0; i < std::uint64_t(state.dim()); ++i) {
      if (i & stride) continue;
      const std::int64_t i0 = std::int64_t(i);
      const std::int64_t i1 = std::int64_t(i | stride);
      const Complex v0 = out.amps[i0];
      const Complex v1 = out.amps[i1];
      out.amps[i0] = a(0, 0) * v0 + a(0, 1) * v1;
      out.amps[i1] = a(1, 0) * v0 + a(1, 1) * v1;
    }
  }
  return out;
}

LocalOperatorSet random_invertible_set(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_invertible_set: n >= 1");
  detail::GaussianSource g(seed);
  std::vector<Mat2> ops;
  ops.reserve(size_t(n));
  while (int(ops.size()) < n) {
    Mat2 a;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) a(r, c) = Complex(g(), g());
    const Complex d = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    if (std::abs(d) < 0.1) continue;
    ops.push_back(a);
  }
  return make_operator_set(std::move(ops));
}

CovarianceReport covariance_check(const QState& state, const LocalOperatorSet& ops) {
  CovarianceReport rep;
  const QState mapped = apply_local(state, ops);
  rep.i_star_in = i_star(state, IStarForm::pairform);
  rep.i_star_out = i_star(mapped, IStarForm::pairform);
  rep.predicted = rep.i_star_in * ops.det_product;
  rep.rel_error =
      std::abs(rep.i_star_out - rep.predicted) / (1.0 + std::abs(rep.predicted));
  const double tau_in = n_tangle_fast(state).tau;
  const double tau_out = n_tangle_fast(mapped).tau;
  const double predicted_tau = tau_in * std::norm(ops.det_product);
  rep.tau_rel_error = std::abs(tau_out - predicted_tau) / (1.0 + predicted_tau);
  return rep;
}

}  // namespace tangle
