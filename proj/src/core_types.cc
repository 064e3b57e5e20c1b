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

#include "gamelab/core_types.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gamelab/errors.h"

namespace gamelab {
namespace {

void CheckSameDim(const PlayerVector& a, const PlayerVector& b) {
  if (a.dim() != b.dim()) {
    throw StructuralError("player vector dimension mismatch: " +
                          std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
  }
}

void CheckSameShape(const JointAction& a, const JointAction& b) {
  if (!a.SameShape(b)) {
    throw StructuralError("joint action shape mismatch");
  }
}

}  // namespace

double PlayerVector::NormSq() const {
  double acc = 0.0;
  for (double v : values_) acc += v * v;
  return acc;
}

bool PlayerVector::IsFinite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

bool PlayerVector::IsZero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 0.0; });
}

PlayerVector& PlayerVector::operator+=(const PlayerVector& other) {
  CheckSameDim(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other[i];
  return *this;
}

PlayerVector& PlayerVector::operator-=(const PlayerVector& other) {
  CheckSameDim(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other[i];
  return *this;
}

PlayerVector& PlayerVector::operator*=(double scale) {
  for (double& v : values_) v *= scale;
  return *this;
}

PlayerVector& PlayerVector::AddScaled(double scale, const PlayerVector& other) {
  CheckSameDim(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    values_[i] += scale * other[i];
  }
  return *this;
}

PlayerVector operator+(PlayerVector lhs, const PlayerVector& rhs) {
  return lhs += rhs;
}

PlayerVector operator-(PlayerVector lhs, const PlayerVector& rhs) {
  return lhs -= rhs;
}

PlayerVector operator*(double scale, PlayerVector v) { return v *= scale; }

double Dot(const PlayerVector& a, const PlayerVector& b) {
  CheckSameDim(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
  return acc;
}

JointAction JointAction::Zeros(std::span<const std::size_t> dims) {
  std::vector<PlayerVector> players;
  players.reserve(dims.size());
  for (std::size_t d : dims) players.emplace_back(d);
  return JointAction(std::move(players));
}

std::vector<std::size_t> JointAction::dims() const {
  std::vector<std::size_t> out;
  out.reserve(players_.size());
  for (const auto& p : players_) out.push_back(p.dim());
  return out;
}

std::size_t JointAction::total_dim() const {
  std::size_t total = 0;
  for (const auto& p : players_) total += p.dim();
  return total;
}

std::vector<double> JointAction::Flatten() const {
  std::vector<double> flat;
  flat.reserve(total_dim());
  for (const auto& p : players_) {
    flat.insert(flat.end(), p.values().begin(), p.values().end());
  }
  return flat;
}

JointAction JointAction::Unflatten(std::span<const double> flat,
                                   std::span<const std::size_t> dims) {
  std::size_t total = 0;
  for (std::size_t d : dims) total += d;
  if (total != flat.size()) {
    throw StructuralError("flat vector of length " +
                          std::to_string(flat.size()) +
                          " does not match total dimension " +
                          std::to_string(total));
  }
  std::vector<PlayerVector> players;
  players.reserve(dims.size());
  std::size_t offset = 0;
  for (std::size_t d : dims) {
    players.emplace_back(std::vector<double>(flat.begin() + offset,
                                             flat.begin() + offset + d));
    offset += d;
  }
  return JointAction(std::move(players));
}

double JointAction::NormSq() const {
  double acc = 0.0;
  for (const auto& p : players_) acc += p.NormSq();
  return acc;
}

bool JointAction::SameShape(const JointAction& other) const {
  if (players_.size() != other.players_.size()) return false;
  for (std::size_t i = 0; i < players_.size(); ++i) {
    if (players_[i].dim() != other.players_[i].dim()) return false;
  }
  return true;
}

JointAction& JointAction::operator+=(const JointAction& other) {
  CheckSameShape(*this, other);
  for (std::size_t i = 0; i < players_.size(); ++i) players_[i] += other[i];
  return *this;
}

JointAction& JointAction::operator-=(const JointAction& other) {
  CheckSameShape(*this, other);
  for (std::size_t i = 0; i < players_.size(); ++i) players_[i] -= other[i];
  return *this;
}

JointAction& JointAction::operator*=(double scale) {
  for (auto& p : players_) p *= scale;
  return *this;
}

JointAction operator+(JointAction lhs, const JointAction& rhs) {
  return lhs += rhs;
}

JointAction operator-(JointAction lhs, const JointAction& rhs) {
  return lhs -= rhs;
}

JointAction operator*(double scale, JointAction x) { return x *= scale; }

double Dot(const JointAction& a, const JointAction& b) {
  CheckSameShape(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.num_players(); ++i) acc += Dot(a[i], b[i]);
  return acc;
}

WeightVector::WeightVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw StructuralError("weights must be finite and non-negative");
    }
  }
}

double WeightedNormSq(const JointAction& x, const WeightVector& w) {
  if (x.num_players() != w.size()) {
    throw StructuralError("weighted norm: " + std::to_string(x.num_players()) +
                          " players but " + std::to_string(w.size()) +
                          " weights");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * x[i].NormSq();
  return acc;
}

WeightNorms L1AndLinf(const WeightVector& w) {
  WeightNorms out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.l1 += w[i];
    out.linf = std::max(out.linf, w[i]);
  }
  return out;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  engine_.seed(seq);
}

double RngStream::Uniform() {
  // 53 random bits, shifted by half an ulp so 0 is never returned.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RngStream::StandardNormal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = Uniform();
  const double u2 = Uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

PlayerVector GaussianVector(RngStream& rng, std::size_t dim, double stddev) {
  if (dim == 0) throw StructuralError("gaussian vector of dimension 0");
  if (!(stddev >= 0.0)) {
    throw StructuralError("gaussian vector needs a non-negative stddev");
  }
  PlayerVector out(dim);
  if (stddev == 0.0) return out;
  for (std::size_t i = 0; i < dim; ++i) out[i] = stddev * rng.StandardNormal();
  return out;
}

std::vector<double> UniformInBall(RngStream& rng, std::size_t dim,
                                  double radius) {
  std::vector<double> out(dim);
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (double& v : out) {
      v = rng.StandardNormal();
      norm_sq += v * v;
    }
  } while (norm_sq == 0.0);
  const double r =
      radius * std::pow(rng.Uniform(), 1.0 / static_cast<double>(dim));
  const double scale = r / std::sqrt(norm_sq);
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace gamelab
