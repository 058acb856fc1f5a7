#pragma once

#include <string>

#include "zsa/zsa.hpp"

namespace zsa::testing {

inline Game matching_pennies() {
  return make_game(GameMode::non_symmetric, {{1, -1}, {-1, 1}}, {"H", "T"}, {"H", "T"});
}

inline Game rock_paper_scissors() {
  return make_game(GameMode::symmetric, {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}, {"R", "P", "S"});
}

/// Smallest (row-major lexicographic) integer matrix in [-5, 5] with
/// M_{a,c} = 3 whose sink is every profile except (a,a) and whose unique
/// equilibrium is ((0,1/2,1/2),(0,1/2,1/2)). Found by the exhaustive search
/// in the acceptance suite.
inline Game outer_diamond() {
  return make_game(GameMode::non_symmetric, {{4, -5, 3}, {5, -5, 5}, {5, 5, -5}}, {"a", "b", "c"}, {"a", "b", "c"});
}

inline std::string games_dir() { return ZSA_GAMES_DIR; }

inline MixedProfile mixed(std::initializer_list<double> x, std::initializer_list<double> y) {
  Eigen::VectorXd a(static_cast<Eigen::Index>(x.size())), b(static_cast<Eigen::Index>(y.size()));
  Eigen::Index i = 0;
  for (double v : x) a[i++] = v;
  i = 0;
  for (double v : y) b[i++] = v;
  return MixedProfile::pair(a, b);
}

inline MixedProfile mixed(std::initializer_list<double> x) {
  Eigen::VectorXd a(static_cast<Eigen::Index>(x.size()));
  Eigen::Index i = 0;
  for (double v : x) a[i++] = v;
  return MixedProfile::symmetric(a);
}

}  // namespace zsa::testing
