#include "tangle/qstate.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "tangle/random.hpp"

namespace tangle {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

QState zero_state(int n) {
  QState s;
  s.n = n;
  s.amps = CVector::Zero(std::int64_t{1} << n);
  return s;
}

}  // namespace

QState from_spec(const StateSpec& spec) {
  require(spec.n >= 1, "StateSpec: n must be >= 1");
  const std::int64_t dim = std::int64_t{1} << spec.n;
  QState s = zero_state(spec.n);

  if (!spec.dense.empty()) {
    require(spec.terms.empty(), "StateSpec: dense and sparse forms are exclusive");
    require(std::int64_t(spec.dense.size()) == dim,
            "StateSpec: dense amplitude count must be 2^n");
    for (std::int64_t i = 0; i < dim; ++i) s.amps[i] = spec.dense[size_t(i)];
  } else {
    require(!spec.terms.empty(), "StateSpec: no amplitudes given");
    std::unordered_set<std::string> seen;
    for (const auto& t : spec.terms) {
      require(int(t.basis.size()) == spec.n, "StateSpec: basis string length != n");
      require(seen.insert(t.basis).second, "StateSpec: duplicate sparse basis");
      std::uint64_t idx = 0;
      for (char c : t.basis) {
        require(c == '0' || c == '1', "StateSpec: basis string must be binary");
        idx = (idx << 1) | std::uint64_t(c - '0');
      }
      s.amps[std::int64_t(idx)] = Complex(t.re, t.im);
    }
  }

  const double nrm = s.amps.norm();
  if (spec.normalize_on_load) {
    require(nrm > 0.0, "StateSpec: zero vector (cannot normalize)");
    s.amps /= nrm;
  } else {
    require(std::abs(nrm - 1.0) <= 1e-9, "StateSpec: state not normalized");
  }
  return s;
}

QState ghz(int n) {
  require(n >= 2, "ghz: n must be >= 2");
  QState s = zero_state(n);
  const double v = 1.0 / std::sqrt(2.0);
  s.amps[0] = v;
  s.amps[s.dim() - 1] = v;
  return s;
}

QState w(int n) {
  require(n >= 2, "w: n must be >= 2");
  QState s = zero_state(n);
  const double v = 1.0 / std::sqrt(double(n));
  for (int k = 0; k < n; ++k) s.amps[std::int64_t{1} << k] = v;
  return s;
}

QState dicke(int l, int n) {
  require(n >= 2, "dicke: n must be >= 2");
  require(l >= 1 && l <= n - 1, "dicke: need 1 <= l <= n-1");
  QState s = zero_state(n);
  std::int64_t count = 0;
  for (std::int64_t i = 0; i < s.dim(); ++i) {
    if (std::popcount(std::uint64_t(i)) == l) ++count;
  }
  const double v = 1.0 / std::sqrt(double(count));
  for (std::int64_t i = 0; i < s.dim(); ++i) {
    if (std::popcount(std::uint64_t(i)) == l) s.amps[i] = v;
  }
  return s;
}

QState tensor(const QState& left, const QState& right) {
  QState s = zero_state(left.n + right.n);
  const std::int64_t rdim = right.dim();
  for (std::int64_t i = 0; i < left.dim(); ++i) {
    for (std::int64_t j = 0; j < rdim; ++j) {
      s.amps[i * rdim + j] = left.amps[i] * right.amps[j];
    }
  }
  return s;
}

QState permute_qubits(const QState& state, const std::vector<int>& perm) {
  const int n = state.n;
  require(int(perm.size()) == n, "permute_qubits: permutation size != n");
  std::vector<bool> hit(size_t(n), false);
  for (int p : perm) {
    require(p >= 1 && p <= n, "permute_qubits: entry out of range");
    require(!hit[size_t(p - 1)], "permute_qubits: not a permutation");
    hit[size_t(p - 1)] = true;
  }
  QState out = zero_state(n);
  for (std::uint64_t idx = 0; idx < std::uint64_t(state.dim()); ++idx) {
    std::uint64_t dst = 0;
    for (int k = 1; k <= n; ++k) {
      if (qubit_bit(idx, k, n)) dst |= std::uint64_t{1} << (n - perm[size_t(k - 1)]);
    }
    out.amps[std::int64_t(dst)] = state.amps[std::int64_t(idx)];
  }
  return out;
}

QState random_pure(int n, std::uint64_t seed) {
  require(n >= 1, "random_pure: n must be >= 1");
  detail::GaussianSource g(seed);
  QState s = zero_state(n);
  for (std::int64_t i = 0; i < s.dim(); ++i) s.amps[i] = Complex(g(), g());
  s.amps /= s.amps.norm();
  return s;
}

}  // namespace tangle
