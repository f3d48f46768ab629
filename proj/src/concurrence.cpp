#include "tangle/concurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tangle/invariants.hpp"
#include "tangle/linalg.hpp"

namespace tangle {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

const Mat4& sigma_yy() {
  static const Mat4 m = [] {
    Mat2 sy;
    sy << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    Mat4 out;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        out.block<2, 2>(2 * r, 2 * c) = sy(r, c) * sy;
    return out;
  }();
  return m;
}

// P(i,j) over the qubit-1 split of the amplitude vector.
Complex pair_term(const CVector& a, std::int64_t half, std::int64_t i, std::int64_t j) {
  return a[i] * a[j + half] - a[i + half] * a[j];
}

std::vector<double> pairwise_concurrences(const QState& state) {
  std::vector<double> out;
  out.reserve(size_t(state.n - 1));
  for (int k = 2; k <= state.n; ++k) {
    out.push_back(wootters_concurrence(partial_trace(state, {1, k})));
  }
  return out;
}

}  // namespace

CMatrix partial_trace(const QState& state, const std::vector<int>& keep) {
  const int n = state.n;
  require(keep.size() == 1 || keep.size() == 2, "partial_trace: keep 1 or 2 qubits");
  for (int q : keep) require(q >= 1 && q <= n, "partial_trace: qubit out of range");
  if (keep.size() == 2) require(keep[0] != keep[1], "partial_trace: duplicate qubit");

  const int k = int(keep.size());
  const std::int64_t d = std::int64_t{1} << k;
  // bit positions (LSB-based) of kept and traced-out qubits
  std::vector<int> kept_pos, env_pos;
  for (int q : keep) kept_pos.push_back(n - q);
  for (int q = 1; q <= n; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) env_pos.push_back(n - q);
  }

  auto scatter = [&](std::int64_t r, std::uint64_t env) {
    std::uint64_t idx = 0;
    for (int b = 0; b < k; ++b) {
      if ((r >> (k - 1 - b)) & 1) idx |= std::uint64_t{1} << kept_pos[size_t(b)];
    }
    for (size_t b = 0; b < env_pos.size(); ++b) {
      if ((env >> b) & 1) idx |= std::uint64_t{1} << env_pos[b];
    }
    return std::int64_t(idx);
  };

  CMatrix rho = CMatrix::Zero(d, d);
  const std::uint64_t env_dim = std::uint64_t{1} << env_pos.size();
  for (std::uint64_t env = 0; env < env_dim; ++env) {
    for (std::int64_t r = 0; r < d; ++r) {
      const Complex ar = state.amps[scatter(r, env)];
      for (std::int64_t c = 0; c < d; ++c) {
        rho(r, c) += ar * std::conj(state.amps[scatter(c, env)]);
      }
    }
  }
  return rho;
}

CMatrix spin_flip(const CMatrix& rho) {
  require(rho.rows() == 4 && rho.cols() == 4, "spin_flip: dim must be 4");
  return sigma_yy() * rho.conjugate() * sigma_yy();
}

double wootters_concurrence(const CMatrix& rho) {
  require(rho.rows() == 4 && rho.cols() == 4, "wootters_concurrence: dim must be 4");
  const Spectrum sp = eigenvalues(rho * spin_flip(rho));
  std::vector<double> lambdas;
  for (Eigen::Index i = 0; i < 4; ++i) {
    const Complex mu = sp.eigenvalues[i];
    if (std::abs(mu.imag()) > 1e-6 || mu.real() < -1e-6) {
      throw std::runtime_error("wootters_concurrence: invalid rho rho~ spectrum");
    }
    lambdas.push_back(std::sqrt(std::max(0.0, mu.real())));
  }
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

COne c_one_rest(const QState& state, COneForm form) {
  double c2 = 0.0;
  if (form == COneForm::det_form) {
    c2 = 4.0 * det(partial_trace(state, {1})).real();
  } else {
    const std::int64_t half = state.dim() / 2;
    for (std::int64_t i = 0; i < half; ++i) {
      for (std::int64_t j = i + 1; j < half; ++j) {
        c2 += 4.0 * std::norm(pair_term(state.amps, half, i, j));
      }
    }
  }
  COne out;
  out.c_squared = c2;
  out.c = std::sqrt(std::max(0.0, c2));
  return out;
}

ConcurrenceReport residual_tangle(const QState& state) {
  require(state.n >= 2, "residual_tangle: need n >= 2");
  ConcurrenceReport rep;
  const COne c1 = c_one_rest(state, COneForm::det_form);
  rep.c_one_rest = c1.c;
  rep.c_one_rest_sq = c1.c_squared;
  rep.c_pairs = pairwise_concurrences(state);
  double pair_sq = 0.0;
  for (double c : rep.c_pairs) pair_sq += c * c;
  rep.residual = rep.c_one_rest_sq - pair_sq;
  rep.monogamy_slack = rep.residual;
  return rep;
}

FactorResult factor_one_rest(const QState& state, double tol) {
  const std::int64_t half = state.dim() / 2;
  FactorResult out;
  out.c_value = c_one_rest(state, COneForm::sum_form).c;
  if (out.c_value >= tol) return out;

  out.is_product = true;
  out.qubit_factor.n = 1;
  out.qubit_factor.amps = CVector::Zero(2);
  out.rest.n = state.n - 1;
  out.rest.amps = CVector::Zero(half);

  double lower_sq = 0.0;
  for (std::int64_t i = 0; i < half; ++i) lower_sq += std::norm(state.amps[i]);

  if (lower_sq < tol * tol) {
    // vanishing lower half: qubit 1 is |1>, the rest is the upper half
    out.case_branch = 1;
    out.qubit_factor.amps[1] = 1.0;
    for (std::int64_t j = 0; j < half; ++j) out.rest.amps[j] = state.amps[j + half];
  } else {
    // pivot on the largest lower-half amplitude for stability
    out.case_branch = 2;
    std::int64_t pivot = 0;
    for (std::int64_t i = 1; i < half; ++i) {
      if (std::abs(state.amps[i]) > std::abs(state.amps[pivot])) pivot = i;
    }
    const Complex alpha = state.amps[pivot + half] / state.amps[pivot];
    out.qubit_factor.amps[0] = 1.0;
    out.qubit_factor.amps[1] = alpha;
    for (std::int64_t j = 0; j < half; ++j) out.rest.amps[j] = state.amps[j];
  }
  out.qubit_factor.amps /= out.qubit_factor.amps.norm();
  out.rest.amps /= out.rest.amps.norm();
  out.fidelity = std::abs(tensor(out.qubit_factor, out.rest).amps.dot(state.amps));
  return out;
}

Result3Certificate result3_certificate(const QState& state) {
  const int n = state.n;
  require(n >= 4 && n % 2 == 0, "result3_certificate: even n >= 4 only");
  require(n <= 10, "result3_certificate: ledger budget is n <= 10");
  const std::int64_t half = state.dim() / 2;
  const std::int64_t quarter = half / 2;
  const CVector& a = state.amps;

  Result3Certificate cert;
  cert.c_squared = c_one_rest(state, COneForm::sum_form).c_squared;

  // three-block split of the pair sum
  double block1 = 0.0, block2 = 0.0, block3 = 0.0;
  for (std::int64_t i = 0; i < quarter; ++i) {
    for (std::int64_t j = i + 1; j < half; ++j) {
      if (j == half - 1 - i) continue;
      block1 += std::norm(pair_term(a, half, i, j));
    }
  }
  for (std::int64_t i = quarter; i < half; ++i) {
    for (std::int64_t j = i + 1; j < half; ++j) {
      block2 += std::norm(pair_term(a, half, i, j));
    }
  }
  std::vector<double> z(size_t(quarter), 0.0);
  for (std::int64_t k = 0; k < quarter; ++k) {
    z[size_t(k)] = std::abs(pair_term(a, half, k, half - 1 - k));
    block3 += z[size_t(k)] * z[size_t(k)];
  }
  cert.block_gap = std::abs(cert.c_squared - 4.0 * (block1 + block2 + block3));

  double zsum = 0.0;
  for (double v : z) zsum += v;
  cert.zk_bound = 4.0 * zsum * zsum;

  const FastTangle nt = n_tangle_fast(state);
  cert.tau = nt.tau;
  cert.tau_within_bound = cert.tau <= cert.zk_bound + 1e-12;

  double worst = std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k < quarter; ++k) {
    for (std::int64_t m = k + 1; m < quarter; ++m) {
      const double lhs =
          std::abs(pair_term(a, half, k, half - 1 - m)) *
              std::abs(pair_term(a, half, m, half - 1 - k)) +
          std::abs(pair_term(a, half, k, m)) *
              std::abs(pair_term(a, half, half - 1 - m, half - 1 - k));
      worst = std::min(worst, lhs - z[size_t(k)] * z[size_t(m)]);
    }
  }
  cert.worst_pair_margin = (quarter > 1) ? worst : 0.0;
  cert.headline = cert.c_squared >= cert.tau - 1e-11;
  return cert;
}

PartialMeasureReport partial_measure_check(const QState& left, const QState& right) {
  require(left.n >= 2, "partial_measure_check: left.n >= 2");
  const QState prod = tensor(left, right);
  const int l = left.n;
  const int n = prod.n;

  PartialMeasureReport rep;
  rep.c_gap = std::abs(c_one_rest(prod, COneForm::det_form).c -
                       c_one_rest(left, COneForm::det_form).c);
  for (int k = 2; k <= n; ++k) {
    const double c_prod = wootters_concurrence(partial_trace(prod, {1, k}));
    if (k <= l) {
      const double c_left = wootters_concurrence(partial_trace(left, {1, k}));
      rep.pair_gap_kept = std::max(rep.pair_gap_kept, std::abs(c_prod - c_left));
    } else {
      rep.pair_max_cross = std::max(rep.pair_max_cross, c_prod);
      // rho rho~ should be a multiple of the identity across the product cut
      const CMatrix rho = partial_trace(prod, {1, k});
      const CMatrix m = rho * spin_flip(rho);
      const CMatrix dev = m - (m.trace() / 4.0) * CMatrix::Identity(4, 4);
      rep.ci_structure_dev = std::max(rep.ci_structure_dev, dev.cwiseAbs().maxCoeff());
    }
  }
  rep.residual_gap =
      std::abs(residual_tangle(prod).residual - residual_tangle(left).residual);
  return rep;
}

}  // namespace tangle
