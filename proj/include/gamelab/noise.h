// Copyright 2026 The GameLab Authors
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

#ifndef GAMELAB_NOISE_H_
#define GAMELAB_NOISE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "gamelab/core_types.h"

namespace gamelab {

// Noise with E||xi||^2 = sigma_add^2 + sigma_mult * ||V_i||^2.
//
// sigma_add = 0 is the multiplicative regime: the noise vanishes wherever
// the clean gradient does. When bound_abs is set, draws are rejected until
// ||xi|| <= bound_abs.
struct NoiseSpec {
  double sigma_add = 0.0;
  double sigma_mult = 0.0;
  std::optional<double> bound_abs;

  void Validate() const;
  bool multiplicative() const { return sigma_add == 0.0; }
  std::string Describe() const;
};

struct FeedbackSample {
  PlayerVector g;
  // The noise draw itself, g - clean before rounding.
  PlayerVector xi;
  double clean_norm_sq = 0.0;
  std::size_t player = 0;
  std::int64_t t = 0;
};

// One independent noise stream per (run seed, player).
inline constexpr std::uint64_t NoiseStreamId(std::size_t player) {
  return static_cast<std::uint64_t>(player) + 1;
}

inline constexpr std::size_t kMaxRejectionAttempts = 1'000'000;

// g = clean + xi, xi ~ N(0, (sigma_add^2 + sigma_mult ||clean||^2) / d I).
FeedbackSample SampleFeedback(const PlayerVector& clean, const NoiseSpec& spec,
                              RngStream& rng, std::size_t player = 0,
                              std::int64_t t = 0);

// g_0 = 0, the feedback used for the very first extrapolation.
FeedbackSample ZeroFeedback(std::size_t dim, std::size_t player = 0);

}  // namespace gamelab

#endif  // GAMELAB_NOISE_H_
