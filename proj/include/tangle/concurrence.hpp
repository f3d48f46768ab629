#pragma once

#include <vector>

#include "tangle/qstate.hpp"

namespace tangle {

// Reduced density matrix over the kept qubits (1-based, |keep| = 1 or 2;
// the first listed qubit is the MSB of the reduced index). Built directly
// from the pure state; Hermitian with unit trace.
CMatrix partial_trace(const QState& state, const std::vector<int>& keep);

// (sigma_y o sigma_y) rho* (sigma_y o sigma_y), dim 4 only.
CMatrix spin_flip(const CMatrix& rho);

// Wootters concurrence max(0, l1 - l2 - l3 - l4) from the rho rho~
// spectrum. Throws std::runtime_error if an eigenvalue has imaginary part
// or negativity beyond 1e-6.
double wootters_concurrence(const CMatrix& rho);

enum class COneForm {
  det_form,  // 4 det(rho_1)
  sum_form,  // 4 sum_{i<j} |P(i,j)|^2
};

struct COne {
  double c = 0.0;
  double c_squared = 0.0;
};

// Concurrence of qubit 1 vs. the rest, in either of its two routes.
COne c_one_rest(const QState& state, COneForm form);

struct ConcurrenceReport {
  double c_one_rest = 0.0;
  double c_one_rest_sq = 0.0;
  std::vector<double> c_pairs;    // C_{1k}, k = 2..n
  double residual = 0.0;          // C^2 - sum C_{1k}^2, reported signed
  double monogamy_slack = 0.0;    // same quantity by definition
};

ConcurrenceReport residual_tangle(const QState& state);

struct FactorResult {
  bool is_product = false;
  QState qubit_factor;   // single-qubit factor (valid when is_product)
  QState rest;           // (n-1)-qubit factor
  double fidelity = 0.0; // |<psi | factor o rest>|
  double c_value = 0.0;  // the concurrence that was tested against tol
  int case_branch = 0;   // 1: vanishing lower half, 2: pivot branch
};

// Constructive factorization when C_1(2...n) < tol, NotAProduct otherwise
// (is_product = false carrying the concurrence value).
FactorResult factor_one_rest(const QState& state, double tol);

struct Result3Certificate {
  double c_squared = 0.0;
  double tau = 0.0;
  double block_gap = 0.0;         // |C^2 - 4(block1 + block2 + block3)|
  double zk_bound = 0.0;          // 4 (sum_k Z_k)^2
  bool tau_within_bound = false;  // tau <= zk_bound + 1e-12
  double worst_pair_margin = 0.0; // min over (k,m) of lhs - Z_k Z_m
  bool headline = false;          // C^2 >= tau - 1e-11
};

// White-box certificate for C^2 >= tau: three-block decomposition, the
// Z_k bound, and the per-pair inequality. Even n <= 10.
Result3Certificate result3_certificate(const QState& state);

struct PartialMeasureReport {
  double c_gap = 0.0;          // |C(left o right) - C(left)|
  double pair_gap_kept = 0.0;  // max over k <= l of |C_1k(prod) - C_1k(left)|
  double pair_max_cross = 0.0; // max over k > l of C_1k(prod)
  double residual_gap = 0.0;   // |residual(prod) - residual(left)|
  double ci_structure_dev = 0.0;  // max dev of rho rho~ from (tr/4) I, k > l
};

// Checks that concurrence and residual of left o right only see `left`.
PartialMeasureReport partial_measure_check(const QState& left, const QState& right);

}  // namespace tangle
