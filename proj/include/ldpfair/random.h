// Copyright 2026 The ldpfair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LDPFAIR_RANDOM_H_
#define LDPFAIR_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <numbers>
#include <random>
#include <utility>

namespace ldpfair {

// SplitMix64 finalizer. Used to turn structured seed paths into
// well-mixed 64-bit seeds.
constexpr uint64_t MixBits(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives a child seed from `master` and a path of integers, e.g.
// DeriveSeed(master, {stream, run, fold}). The result depends only on the
// arguments, never on call order or global state.
constexpr uint64_t DeriveSeed(uint64_t master,
                              std::initializer_list<uint64_t> path) {
  uint64_t h = MixBits(master);
  for (uint64_t v : path) h = MixBits(h ^ MixBits(v + 0x632be59bd9b4e019ULL));
  return h;
}

// Seeded pseudo-random source. Distributions are implemented here rather
// than through <random> adaptors so that sequences are identical across
// standard library implementations.
class Prng {
 public:
  using result_type = uint64_t;

  explicit Prng(uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double UniformDouble() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n > 0. Multiply-shift mapping; no rejection
  // loop, so every call consumes exactly one engine output.
  uint64_t UniformInt(uint64_t n) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  bool Bernoulli(double p) { return UniformDouble() < p; }

  // Box-Muller; the second variate of each pair is cached.
  double StandardNormal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = UniformDouble();
    while (u1 <= 0.0) u1 = UniformDouble();
    const double u2 = UniformDouble();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Draws an index from a discrete distribution given by `probs`, which is
  // assumed to sum to 1.
  template <typename Range>
  size_t Categorical(const Range& probs) {
    const double u = UniformDouble();
    double acc = 0.0;
    size_t i = 0;
    size_t last = 0;
    for (double p : probs) {
      acc += p;
      if (p > 0.0) last = i;
      if (u < acc) return i;
      ++i;
    }
    return last;
  }

  template <typename RandomIt>
  void Shuffle(RandomIt first, RandomIt last) {
    const auto n = static_cast<uint64_t>(std::distance(first, last));
    for (uint64_t i = n; i > 1; --i) {
      const uint64_t j = UniformInt(i);
      using std::swap;
      swap(first[i - 1], first[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ldpfair

#endif  // LDPFAIR_RANDOM_H_
