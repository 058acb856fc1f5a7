#pragma once

#include <cstdint>
#include <random>

#include "zsa/game.hpp"

namespace zsa {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Seeded generator of random integer zero-sum games and interior points.
/// Entries are i.i.d. uniform on [lo, hi]; symmetric games are K - K^T.
class GameSampler {
 public:
  explicit GameSampler(std::uint64_t seed = kDefaultSeed, int lo = -9, int hi = 9) : rng_(seed), lo_(lo), hi_(hi) {}

  Game non_symmetric(std::size_t max_rows = 5, std::size_t max_cols = 5) {
    const std::size_t n = uniform_size(max_rows), m = uniform_size(max_cols);
    RationalMatrix mat(n, m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) mat(i, j) = Rational(entry());
    }
    return Game(GameMode::non_symmetric, std::move(mat));
  }

  /// Non-symmetric game with exactly n x m strategies.
  Game non_symmetric_exact(std::size_t n, std::size_t m) {
    RationalMatrix mat(n, m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) mat(i, j) = Rational(entry());
    }
    return Game(GameMode::non_symmetric, std::move(mat));
  }

  Game symmetric(std::size_t max_size = 7) {
    const std::size_t n = uniform_size(max_size);
    std::vector<long long> k(n * n);
    for (auto& v : k) v = entry();
    RationalMatrix mat(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) mat(i, j) = Rational(k[i * n + j] - k[j * n + i]);
    }
    return Game(GameMode::symmetric, std::move(mat));
  }

  /// Alternates non-symmetric (up to 5x5) and symmetric (up to 7x7) games.
  Game next_mixed() { return (counter_++ % 2 == 0) ? non_symmetric() : symmetric(); }

  /// Uniform (flat Dirichlet) point in the interior of the strategy space.
  MixedProfile interior_point(const Game& g) {
    Eigen::VectorXd x = simplex_point(g.rows());
    if (g.is_symmetric()) return MixedProfile::symmetric(std::move(x));
    return MixedProfile::pair(std::move(x), simplex_point(g.cols()));
  }

  Eigen::VectorXd simplex_point(std::size_t n) {
    std::exponential_distribution<double> e(1.0);
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      double s;
      do {
        s = e(rng_);
      } while (!(s > 0.0));
      v[i] = s;
    }
    return v / v.sum();
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::size_t uniform_size(std::size_t max) { return std::uniform_int_distribution<std::size_t>(1, max)(rng_); }
  long long entry() { return std::uniform_int_distribution<long long>(lo_, hi_)(rng_); }

  std::mt19937_64 rng_;
  int lo_;
  int hi_;
  std::uint64_t counter_ = 0;
};

}  // namespace zsa
