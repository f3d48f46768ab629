#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tangle/types.hpp"

namespace tangle {

// n-qubit pure state. Amplitude a_{i1 i2 ... in} lives at array index
// i1*2^(n-1) + ... + in*2^0, i.e. qubit 1 is the most significant bit.
// Immutable value after construction; every operation below is a pure
// function returning a fresh state.
struct QState {
  int n = 0;
  CVector amps;

  std::int64_t dim() const { return std::int64_t{1} << n; }
  double norm() const { return amps.norm(); }
};

// Bit of `index` belonging to qubit q, q in {1..n} (qubit 1 = MSB).
inline int qubit_bit(std::uint64_t index, int q, int n) {
  return int((index >> (n - q)) & 1u);
}

struct SparseTerm {
  std::string basis;  // n-char bitstring, MSB first
  double re = 0.0;
  double im = 0.0;
};

struct StateSpec {
  int n = 0;
  std::vector<Complex> dense;     // 2^n amplitudes, or empty
  std::vector<SparseTerm> terms;  // sparse form, or empty
  bool normalize_on_load = false;
};

// Build a state from a spec. Throws std::invalid_argument on length
// mismatch, duplicate sparse basis strings, a zero vector, or (when
// normalize_on_load is false) a norm off 1 by more than 1e-9.
QState from_spec(const StateSpec& spec);

QState ghz(int n);                  // (|0...0> + |1...1>)/sqrt(2), n >= 2
QState w(int n);                    // equal single-excitation superposition
QState dicke(int l, int n);         // normalized weight-l symmetric state

// left occupies qubits 1..left.n of the result.
QState tensor(const QState& left, const QState& right);

// perm[k-1] is the destination of qubit k; output bit at qubit perm(k)
// equals input bit at qubit k.
QState permute_qubits(const QState& state, const std::vector<int>& perm);

// i.i.d. complex Gaussian amplitudes, normalized (Haar on the sphere).
QState random_pure(int n, std::uint64_t seed);

}  // namespace tangle
