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

#include "gamelab/games.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "gamelab/errors.h"

namespace gamelab {
namespace {

constexpr double kEquilibriumTolerance = 1e-10;

double SpectralNorm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

double ResolveLipschitz(double computed, std::optional<double> requested) {
  if (!requested) return computed;
  if (!(*requested > 0.0) || *requested < computed * (1.0 - 1e-12)) {
    throw ConfigError("lipschitz " + std::to_string(*requested) +
                      " is below the field's Lipschitz constant " +
                      std::to_string(computed));
  }
  return *requested;
}

Eigen::VectorXd ToEigen(const JointAction& x) {
  const std::vector<double> flat = x.Flatten();
  return Eigen::Map<const Eigen::VectorXd>(flat.data(),
                                           static_cast<Eigen::Index>(flat.size()));
}

JointAction FromEigen(const Eigen::VectorXd& v,
                      const std::vector<std::size_t>& dims) {
  return JointAction::Unflatten(
      std::span<const double>(v.data(), static_cast<std::size_t>(v.size())),
      dims);
}

}  // namespace

std::string GameKindName(GameKind kind) {
  switch (kind) {
    case GameKind::kBilinear:
      return "bilinear";
    case GameKind::kQuadratic:
      return "quadratic";
  }
  return "unknown";
}

Game::Game(GameKind kind, std::vector<std::size_t> dims, Eigen::MatrixXd matrix,
           Eigen::VectorXd offset, std::optional<double> lipschitz)
    : kind_(kind),
      dims_(std::move(dims)),
      joint_matrix_(std::move(matrix)),
      offset_(std::move(offset)) {
  lipschitz_ = ResolveLipschitz(SpectralNorm(joint_matrix_), lipschitz);
  if (lipschitz_ == 0.0) {
    throw ConfigError("game field is identically constant (L = 0)");
  }
}

Game Game::Bilinear(const Eigen::MatrixXd& a, std::optional<double> lipschitz) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw ConfigError("bilinear game needs a non-empty matrix A");
  }
  if (!a.allFinite()) throw ConfigError("bilinear matrix A is not finite");
  const auto d1 = static_cast<std::size_t>(a.rows());
  const auto d2 = static_cast<std::size_t>(a.cols());
  const Eigen::Index n = a.rows() + a.cols();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m.topRightCorner(a.rows(), a.cols()) = a;
  m.bottomLeftCorner(a.cols(), a.rows()) = -a.transpose();
  Game game(GameKind::kBilinear, {d1, d2}, std::move(m),
            Eigen::VectorXd::Zero(n), lipschitz);
  game.bilinear_a_ = a;
  game.equilibria_.points.push_back(JointAction::Zeros(game.dims_));
  return game;
}

Game Game::Quadratic(std::vector<std::size_t> dims,
                     const Eigen::MatrixXd& b_matrix,
                     const Eigen::VectorXd& b_vector,
                     std::optional<double> lipschitz) {
  if (dims.empty()) throw ConfigError("quadratic game needs at least 1 player");
  if (std::find(dims.begin(), dims.end(), 0u) != dims.end()) {
    throw ConfigError("player dimensions must be >= 1");
  }
  const auto total = static_cast<Eigen::Index>(
      std::accumulate(dims.begin(), dims.end(), std::size_t{0}));
  if (b_matrix.rows() != total || b_matrix.cols() != total ||
      b_vector.size() != total) {
    throw ConfigError("quadratic game: B must be " + std::to_string(total) +
                      "x" + std::to_string(total) + " and b of length " +
                      std::to_string(total));
  }
  if (!b_matrix.allFinite() || !b_vector.allFinite()) {
    throw ConfigError("quadratic game parameters are not finite");
  }
  const Eigen::MatrixXd sym = 0.5 * (b_matrix + b_matrix.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  const double scale = std::max(1.0, b_matrix.cwiseAbs().maxCoeff());
  if (eig.eigenvalues().minCoeff() < -1e-12 * scale) {
    throw ConfigError(
        "quadratic game: symmetric part of B is not positive semidefinite");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(b_matrix);
  if (!lu.isInvertible()) {
    throw ConfigError("quadratic game: B must be invertible");
  }
  Game game(GameKind::kQuadratic, std::move(dims), b_matrix, b_vector,
            lipschitz);
  const Eigen::VectorXd z = lu.solve(b_vector);
  JointAction eq = FromEigen(z, game.dims_);
  if (std::sqrt(game.PayoffGradient(eq).NormSq()) > kEquilibriumTolerance) {
    throw ConfigError(
        "quadratic game: B^{-1} b is not a zero of V within 1e-10 (B is "
        "ill-conditioned)");
  }
  game.equilibria_.points.push_back(std::move(eq));
  return game;
}

void Game::CheckShape(const JointAction& x) const {
  if (x.dims() != dims_) {
    throw StructuralError("joint action does not match the game's dimensions");
  }
}

JointAction Game::PayoffGradient(const JointAction& x) const {
  CheckShape(x);
  const Eigen::VectorXd v = joint_matrix_ * ToEigen(x) - offset_;
  return FromEigen(v, dims_);
}

std::optional<double> Game::PlayerLoss(const JointAction& x,
                                       std::size_t player) const {
  CheckShape(x);
  if (kind_ != GameKind::kBilinear) return std::nullopt;
  const auto& xs = x[0].values();
  const auto& ys = x[1].values();
  const Eigen::Map<const Eigen::VectorXd> xv(xs.data(),
                                             static_cast<Eigen::Index>(xs.size()));
  const Eigen::Map<const Eigen::VectorXd> yv(ys.data(),
                                             static_cast<Eigen::Index>(ys.size()));
  const double value = xv.dot(bilinear_a_ * yv);
  return player == 0 ? value : -value;
}

double DistanceToEquilibrium(const Game& game, const JointAction& x,
                             const WeightVector& w) {
  const auto& points = game.equilibria().points;
  if (points.empty()) throw ConfigError("game has no stored equilibrium");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : points) {
    best = std::min(best, WeightedNormSq(x - z, w));
  }
  return std::sqrt(best);
}

double DistanceToEquilibrium(const Game& game, const JointAction& x) {
  return DistanceToEquilibrium(game, x, WeightVector::Unit(x.num_players()));
}

StabilityReport VariationalStabilityProbe(const Game& game, RngStream& rng,
                                          std::size_t samples, double radius) {
  if (samples == 0) throw StructuralError("stability probe needs samples >= 1");
  StabilityReport report;
  report.min_inner = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> dims = game.dims();
  std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
  for (const auto& z : game.equilibria().points) {
    for (std::size_t s = 0; s < samples; ++s) {
      JointAction x = z;
      if (radius > 0.0) {
        x += JointAction::Unflatten(UniformInBall(rng, total, radius), dims);
      }
      const double inner = Dot(game.PayoffGradient(x), x - z);
      report.min_inner = std::min(report.min_inner, inner);
      ++report.evaluations;
    }
  }
  return report;
}

double LipschitzProbe(const Game& game, RngStream& rng, std::size_t pairs,
                      double radius) {
  if (pairs == 0) throw StructuralError("lipschitz probe needs pairs >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw StructuralError("lipschitz probe needs a finite radius > 0");
  }
  const std::vector<std::size_t> dims = game.dims();
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{0});
  const JointAction& center = game.equilibria().points.front();
  double best = 0.0;
  for (std::size_t p = 0; p < pairs; ++p) {
    JointAction x = center;
    JointAction y = center;
    double gap_sq = 0.0;
    for (int attempt = 0; gap_sq == 0.0; ++attempt) {
      // Only reachable when the radius underflows once squared.
      if (attempt == 1000) {
        throw RunError("lipschitz probe cannot separate points at radius " +
                       std::to_string(radius));
      }
      x = center + JointAction::Unflatten(UniformInBall(rng, total, radius), dims);
      y = center + JointAction::Unflatten(UniformInBall(rng, total, radius), dims);
      gap_sq = (x - y).NormSq();
    }
    const double num = (game.PayoffGradient(x) - game.PayoffGradient(y)).NormSq();
    best = std::max(best, std::sqrt(num / gap_sq));
  }
  return best;
}

}  // namespace gamelab
