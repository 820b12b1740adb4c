#pragma once

// Small statevector simulator for Grover search over a bucket.
//
// Gates are never synthesised: the phase oracle and the diffusion operator
// are applied to the amplitude vector directly as reflections. This matches
// the circuit formulation up to a global phase, which measurement cannot see.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qiris/splitmix64.hpp"

namespace qiris::quantum {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kDefaultDimension = 16;  // 4 qubits
inline constexpr std::size_t kMaxQubits = 20;
inline constexpr std::uint32_t kDefaultShots = 1024;

inline bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

class Statevector {
 public:
  explicit Statevector(std::vector<Amplitude> amplitudes) : amps_(std::move(amplitudes)) {
    if (!is_power_of_two(amps_.size()) || amps_.size() > (std::size_t{1} << kMaxQubits)) {
      throw std::invalid_argument("statevector dimension must be a power of two up to 2^20, got " +
                                  std::to_string(amps_.size()));
    }
  }

  std::size_t dimension() const noexcept { return amps_.size(); }

  std::size_t qubits() const noexcept {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < amps_.size()) {
      ++n;
    }
    return n;
  }

  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_.at(i); }
  Amplitude& operator[](std::size_t i) { return amps_.at(i); }

  double probability(std::size_t i) const { return std::norm(amps_.at(i)); }

  double norm() const noexcept {
    double sum = 0.0;
    for (const auto& a : amps_) {
      sum += std::norm(a);
    }
    return std::sqrt(sum);
  }

  friend bool operator==(const Statevector&, const Statevector&) = default;

 private:
  std::vector<Amplitude> amps_;
};

// Little-endian bit rendering (qubit 0 first), the convention used when
// printing measurement counts.
inline std::string to_bitstring(std::size_t index, std::size_t qubits) {
  std::string bits(qubits, '0');
  for (std::size_t q = 0; q < qubits; ++q) {
    if ((index >> q) & 1U) {
      bits[q] = '1';
    }
  }
  return bits;
}

// Uniform superposition over `marked`: the 0/1 membership mask divided by
// its Frobenius norm, i.e. 1/sqrt(m) on each of the m marked states.
inline Statevector prepare_state(const std::set<std::size_t>& marked,
                                 std::size_t dimension = kDefaultDimension) {
  if (marked.empty()) {
    throw std::invalid_argument("prepare_state needs at least one marked state");
  }
  if (*marked.rbegin() >= dimension) {
    throw std::out_of_range("marked index " + std::to_string(*marked.rbegin()) +
                            " outside dimension " + std::to_string(dimension));
  }
  std::vector<Amplitude> amps(dimension, Amplitude{0.0, 0.0});
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(marked.size()));
  for (const std::size_t i : marked) {
    amps[i] = Amplitude{amplitude, 0.0};
  }
  return Statevector(std::move(amps));
}

// Phase oracle: |target> -> -|target>, identity elsewhere.
inline Statevector apply_oracle(Statevector state, std::size_t target) {
  if (target >= state.dimension()) {
    throw std::out_of_range("oracle target " + std::to_string(target) + " outside dimension " +
                            std::to_string(state.dimension()));
  }
  state[target] = -state[target];
  return state;
}

// 2|axis><axis| - I applied to `state`.
//
// The overlap is divided by <axis|axis> (1 for a unit axis) so that a state
// equal to the axis is reproduced bit-for-bit rather than up to rounding.
inline Statevector reflect_about(const Statevector& state, const Statevector& axis) {
  if (state.dimension() != axis.dimension()) {
    throw std::invalid_argument("reflect_about: dimension mismatch");
  }
  const auto s = state.amplitudes();
  const auto a = axis.amplitudes();
  Amplitude overlap{0.0, 0.0};
  double axis_norm2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    overlap += std::conj(a[i]) * s[i];
    axis_norm2 += std::norm(a[i]);
  }
  const Amplitude scale = 2.0 * (overlap / axis_norm2);
  std::vector<Amplitude> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = scale * a[i] - s[i];
  }
  return Statevector(std::move(out));
}

// floor(pi/4 * sqrt(m))
inline std::size_t grover_iterations(std::size_t m) {
  if (m == 0) {
    throw std::invalid_argument("grover_iterations requires m >= 1");
  }
  return static_cast<std::size_t>(
      std::floor(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(m))));
}

using Counts = std::map<std::size_t, std::uint32_t>;

// `shots` inverse-CDF draws over |amplitude|^2 from a SplitMix64 stream. A
// draw u in [0,1) lands on the first index whose running sum exceeds u; if
// rounding leaves the total just under u, the last supported index is used.
inline Counts measure(const Statevector& state, std::uint32_t shots, std::uint64_t rng_seed) {
  if (shots == 0) {
    throw std::invalid_argument("measure requires at least one shot");
  }
  const auto amps = state.amplitudes();
  std::vector<double> cumulative(amps.size());
  double running = 0.0;
  std::size_t last_support = 0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    running += p;
    cumulative[i] = running;
    if (p > 0.0) {
      last_support = i;
    }
  }

  Counts counts;
  SplitMix64 rng(rng_seed);
  for (std::uint32_t shot = 0; shot < shots; ++shot) {
    const double u = rng.next_unit();
    std::size_t hit = last_support;
    for (std::size_t i = 0; i < cumulative.size(); ++i) {
      if (cumulative[i] > u) {
        hit = i;
        break;
      }
    }
    ++counts[hit];
  }
  return counts;
}

struct GroverOutcome {
  Counts counts;
  std::uint32_t shots = 0;
  std::size_t iterations = 0;
  std::size_t target = 0;
  bool decision = false;

  std::uint32_t count(std::size_t index) const {
    const auto it = counts.find(index);
    return it == counts.end() ? 0 : it->second;
  }
};

// Success means the target took strictly more than floor(shots/2) samples;
// with 1024 shots that is the "> 512" rule.
inline bool majority_decision(std::uint32_t target_count, std::uint32_t shots) noexcept {
  return target_count > shots / 2;
}

// Runs the full search and returns the final state alongside the outcome, for
// callers that want to inspect amplitudes.
inline std::pair<GroverOutcome, Statevector> grover_run(const std::set<std::size_t>& marked,
                                                        std::size_t target, std::size_t dimension,
                                                        std::uint32_t shots,
                                                        std::uint64_t rng_seed) {
  if (target >= dimension) {
    throw std::out_of_range("grover target " + std::to_string(target) + " outside dimension " +
                            std::to_string(dimension));
  }
  const Statevector initial = prepare_state(marked, dimension);
  const std::size_t k = grover_iterations(marked.size());
  Statevector psi = initial;
  for (std::size_t it = 0; it < k; ++it) {
    psi = reflect_about(apply_oracle(std::move(psi), target), initial);
  }
  GroverOutcome outcome;
  outcome.counts = measure(psi, shots, rng_seed);
  outcome.shots = shots;
  outcome.iterations = k;
  outcome.target = target;
  outcome.decision = majority_decision(outcome.count(target), shots);
  return {std::move(outcome), std::move(psi)};
}

// `marked` is a set, so duplicate residues from a bucket are already
// collapsed and the iteration count uses the distinct size.
inline GroverOutcome grover_search(const std::set<std::size_t>& marked, std::size_t target,
                                   std::size_t dimension = kDefaultDimension,
                                   std::uint32_t shots = kDefaultShots,
                                   std::uint64_t rng_seed = 0) {
  return grover_run(marked, target, dimension, shots, rng_seed).first;
}

}  // namespace qiris::quantum
