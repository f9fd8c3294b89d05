// Copyright 2026 The RiskProp Authors
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

#ifndef RISKPROP_RANDOM_H_
#define RISKPROP_RANDOM_H_

#include <cstdint>
#include <random>

namespace riskprop {

// Independent random streams addressed by (seed, stream kind, index).
//
// The engine is std::mt19937_64 seeded through std::seed_seq; both are fully
// specified by the standard, so outputs are identical across platforms. The
// standard distributions are not, which is why the conversions below are
// written out.
enum class Stream : std::uint32_t {
  kPoints = 1,
  kPowerlawCluster = 2,
  kScores = 3,
  kContactTimes = 4,
  kSampling = 5,
};

class Rng {
 public:
  Rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0);

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // Uniform integer in [0, bound), bound > 0. Rejection sampling, no modulo
  // bias.
  std::uint64_t Below(std::uint64_t bound);

  bool Bernoulli(double p) { return Uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace riskprop

#endif  // RISKPROP_RANDOM_H_
