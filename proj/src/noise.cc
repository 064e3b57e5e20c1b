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

#include "gamelab/noise.h"

#include <cmath>
#include <sstream>
#include <utility>

#include "gamelab/errors.h"

namespace gamelab {

void NoiseSpec::Validate() const {
  if (!(sigma_add >= 0.0) || !std::isfinite(sigma_add)) {
    throw ConfigError("noise sigma_add must be finite and >= 0");
  }
  if (!(sigma_mult >= 0.0) || !std::isfinite(sigma_mult)) {
    throw ConfigError("noise sigma_mult must be finite and >= 0");
  }
  if (bound_abs && (!(*bound_abs >= 0.0) || !std::isfinite(*bound_abs))) {
    throw ConfigError("noise bound_abs must be finite and >= 0");
  }
}

std::string NoiseSpec::Describe() const {
  std::ostringstream out;
  out << "{sigma_add=" << sigma_add << ", sigma_mult=" << sigma_mult;
  if (bound_abs) out << ", bound_abs=" << *bound_abs;
  out << "}";
  return out.str();
}

FeedbackSample SampleFeedback(const PlayerVector& clean, const NoiseSpec& spec,
                              RngStream& rng, std::size_t player,
                              std::int64_t t) {
  spec.Validate();
  FeedbackSample out;
  out.player = player;
  out.t = t;
  out.clean_norm_sq = clean.NormSq();
  const double total_var =
      spec.sigma_add * spec.sigma_add + spec.sigma_mult * out.clean_norm_sq;
  if (total_var == 0.0) {
    out.g = clean;
    out.xi = PlayerVector(clean.dim());
    return out;
  }
  const double coord_std =
      std::sqrt(total_var / static_cast<double>(clean.dim()));
  PlayerVector xi = GaussianVector(rng, clean.dim(), coord_std);
  if (spec.bound_abs) {
    const double bound_sq = *spec.bound_abs * *spec.bound_abs;
    std::size_t attempts = 1;
    while (xi.NormSq() > bound_sq) {
      if (attempts == kMaxRejectionAttempts) {
        throw RunError("noise rejection budget exhausted for spec " +
                       spec.Describe() + " at round " + std::to_string(t) +
                       ", player " + std::to_string(player));
      }
      xi = GaussianVector(rng, clean.dim(), coord_std);
      ++attempts;
    }
  }
  out.g = clean + xi;
  out.xi = std::move(xi);
  return out;
}

FeedbackSample ZeroFeedback(std::size_t dim, std::size_t player) {
  if (dim == 0) throw StructuralError("zero feedback of dimension 0");
  FeedbackSample out;
  out.g = PlayerVector(dim);
  out.xi = PlayerVector(dim);
  out.player = player;
  return out;
}

}  // namespace gamelab
