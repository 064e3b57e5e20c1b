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

#ifndef GAMELAB_CORE_TYPES_H_
#define GAMELAB_CORE_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace gamelab {

// One player's coordinates: an action, a gradient, or a noise draw.
class PlayerVector {
 public:
  PlayerVector() = default;
  explicit PlayerVector(std::size_t dim, double fill = 0.0)
      : values_(dim, fill) {}
  PlayerVector(std::initializer_list<double> values) : values_(values) {}
  explicit PlayerVector(std::vector<double> values)
      : values_(std::move(values)) {}

  std::size_t dim() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double NormSq() const;
  bool IsFinite() const;
  bool IsZero() const;

  PlayerVector& operator+=(const PlayerVector& other);
  PlayerVector& operator-=(const PlayerVector& other);
  PlayerVector& operator*=(double scale);
  // this += scale * other
  PlayerVector& AddScaled(double scale, const PlayerVector& other);

  friend bool operator==(const PlayerVector&, const PlayerVector&) = default;

 private:
  std::vector<double> values_;
};

PlayerVector operator+(PlayerVector lhs, const PlayerVector& rhs);
PlayerVector operator-(PlayerVector lhs, const PlayerVector& rhs);
PlayerVector operator*(double scale, PlayerVector v);
double Dot(const PlayerVector& a, const PlayerVector& b);

// The joint profile x = (x_1, ..., x_N).
class JointAction {
 public:
  JointAction() = default;
  explicit JointAction(std::vector<PlayerVector> players)
      : players_(std::move(players)) {}
  JointAction(std::initializer_list<PlayerVector> players)
      : players_(players) {}
  // Zero profile with the given per-player dimensions.
  static JointAction Zeros(std::span<const std::size_t> dims);

  std::size_t num_players() const { return players_.size(); }
  const PlayerVector& player(std::size_t i) const { return players_[i]; }
  PlayerVector& player(std::size_t i) { return players_[i]; }
  const PlayerVector& operator[](std::size_t i) const { return players_[i]; }
  PlayerVector& operator[](std::size_t i) { return players_[i]; }

  std::vector<std::size_t> dims() const;
  std::size_t total_dim() const;
  std::vector<double> Flatten() const;
  static JointAction Unflatten(std::span<const double> flat,
                               std::span<const std::size_t> dims);
  double NormSq() const;
  bool SameShape(const JointAction& other) const;

  JointAction& operator+=(const JointAction& other);
  JointAction& operator-=(const JointAction& other);
  JointAction& operator*=(double scale);

  friend bool operator==(const JointAction&, const JointAction&) = default;

 private:
  std::vector<PlayerVector> players_;
};

JointAction operator+(JointAction lhs, const JointAction& rhs);
JointAction operator-(JointAction lhs, const JointAction& rhs);
JointAction operator*(double scale, JointAction x);
double Dot(const JointAction& a, const JointAction& b);

// Non-negative per-player weights for ||x||_w^2 = sum_i w_i ||x_i||^2.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> weights);
  WeightVector(std::initializer_list<double> weights)
      : WeightVector(std::vector<double>(weights)) {}
  static WeightVector Unit(std::size_t num_players) {
    return WeightVector(std::vector<double>(num_players, 1.0));
  }

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

 private:
  std::vector<double> weights_;
};

double WeightedNormSq(const JointAction& x, const WeightVector& w);

struct WeightNorms {
  double l1 = 0.0;
  double linf = 0.0;
};
WeightNorms L1AndLinf(const WeightVector& w);

// Deterministic random stream keyed by (seed, stream_id).
//
// Backed by std::mt19937_64 seeded through std::seed_seq, both of which are
// fully specified by the standard. Normal draws use Box-Muller on 53-bit
// uniforms instead of std::normal_distribution, whose algorithm is left to
// the library vendor.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Uniform in the open interval (0, 1).
  double Uniform();
  double StandardNormal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

PlayerVector GaussianVector(RngStream& rng, std::size_t dim, double stddev);

// Uniform draw from the Euclidean ball of the given radius in R^dim.
std::vector<double> UniformInBall(RngStream& rng, std::size_t dim,
                                  double radius);

}  // namespace gamelab

#endif  // GAMELAB_CORE_TYPES_H_
