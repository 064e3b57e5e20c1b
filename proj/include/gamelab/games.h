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

#ifndef GAMELAB_GAMES_H_
#define GAMELAB_GAMES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gamelab/core_types.h"

namespace gamelab {

enum class GameKind { kBilinear, kQuadratic };

std::string GameKindName(GameKind kind);

// Representative zeros of the joint field V.
struct EquilibriumSet {
  std::vector<JointAction> points;
};

// An unconstrained continuous game with an affine joint gradient field
// V(x) = M x - c.
//
//   bilinear:  two players, loss_1 = x^T A y, loss_2 = -x^T A y, so
//              V(x, y) = (A y, -A^T x). Equilibrium at the origin.
//   quadratic: N players, V(x) = B x - b with B + B^T positive
//              semidefinite and B invertible. Equilibrium at B^{-1} b.
//
// Instances are immutable once built.
class Game {
 public:
  // `lipschitz` overrides the computed spectral norm; it must not be smaller.
  static Game Bilinear(const Eigen::MatrixXd& a,
                       std::optional<double> lipschitz = std::nullopt);
  static Game Quadratic(std::vector<std::size_t> dims,
                        const Eigen::MatrixXd& b_matrix,
                        const Eigen::VectorXd& b_vector,
                        std::optional<double> lipschitz = std::nullopt);
  // min_x max_y x*y: A = 1, equilibrium (0, 0), L = 1.
  static Game ScalarBilinear() { return Bilinear(Eigen::MatrixXd::Ones(1, 1)); }

  GameKind kind() const { return kind_; }
  std::size_t num_players() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  double lipschitz() const { return lipschitz_; }
  const EquilibriumSet& equilibria() const { return equilibria_; }
  const Eigen::MatrixXd& joint_matrix() const { return joint_matrix_; }

  JointAction PayoffGradient(const JointAction& x) const;

  // Loss of `player` at x when the game defines one in closed form
  // (bilinear); nullopt otherwise.
  std::optional<double> PlayerLoss(const JointAction& x,
                                   std::size_t player) const;

  void CheckShape(const JointAction& x) const;

 private:
  Game(GameKind kind, std::vector<std::size_t> dims, Eigen::MatrixXd matrix,
       Eigen::VectorXd offset, std::optional<double> lipschitz);

  GameKind kind_;
  std::vector<std::size_t> dims_;
  Eigen::MatrixXd joint_matrix_;
  Eigen::VectorXd offset_;
  Eigen::MatrixXd bilinear_a_;
  double lipschitz_ = 0.0;
  EquilibriumSet equilibria_;
};

// Minimum over stored equilibria of ||x - z*||_w.
double DistanceToEquilibrium(const Game& game, const JointAction& x,
                             const WeightVector& w);
double DistanceToEquilibrium(const Game& game, const JointAction& x);

struct StabilityReport {
  // min over sampled x of <V(x), x - z*>
  double min_inner = 0.0;
  std::size_t evaluations = 0;
};

// Samples uniformly in a ball around each stored equilibrium. A radius of 0
// evaluates the equilibrium itself.
StabilityReport VariationalStabilityProbe(const Game& game, RngStream& rng,
                                          std::size_t samples, double radius);

// max over sampled pairs x != y of ||V(x) - V(y)|| / ||x - y||.
double LipschitzProbe(const Game& game, RngStream& rng, std::size_t pairs,
                      double radius);

}  // namespace gamelab

#endif  // GAMELAB_GAMES_H_
