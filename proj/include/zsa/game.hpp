#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "zsa/errors.hpp"
#include "zsa/rational.hpp"

namespace zsa {

/// Row-major dense matrix. Used for exact payoff and symmetrised matrices.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = DenseMatrix<Rational>;

enum class GameMode { symmetric, non_symmetric };

inline const char* to_string(GameMode mode) {
  return mode == GameMode::symmetric ? "symmetric" : "non-symmetric";
}

/// A pure profile. In symmetric games profiles are strategies and only
/// `first` is meaningful (`second` stays 0).
struct Profile {
  std::size_t first = 0;
  std::size_t second = 0;

  friend auto operator<=>(const Profile&, const Profile&) = default;
};

/// Two-player zero-sum game (M, -M^T). Payoffs are to player 1.
/// Symmetric games are square anti-symmetric M; profiles are strategies.
class Game {
 public:
  /// Throws std::invalid_argument when M is empty, ragged, or (symmetric
  /// mode) not square and anti-symmetric.
  Game(GameMode mode, RationalMatrix matrix, std::vector<std::string> row_labels = {},
       std::vector<std::string> col_labels = {})
      : mode_(mode), matrix_(std::move(matrix)),
        row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)) {
    if (matrix_.rows() == 0 || matrix_.cols() == 0) {
      throw std::invalid_argument("game matrix must have at least one row and one column");
    }
    if (mode_ == GameMode::symmetric) {
      if (matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("symmetric game matrix must be square");
      }
      for (std::size_t i = 0; i < matrix_.rows(); ++i) {
        for (std::size_t j = i; j < matrix_.cols(); ++j) {
          if (matrix_(i, j) != -matrix_(j, i)) {
            throw std::invalid_argument("symmetric game matrix is not anti-symmetric at (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
          }
        }
      }
      if (col_labels_.empty()) col_labels_ = row_labels_;
    }
    fill_default_labels(row_labels_, matrix_.rows(), "s");
    fill_default_labels(col_labels_, matrix_.cols(), mode_ == GameMode::symmetric ? "s" : "t");
    if (row_labels_.size() != matrix_.rows() || col_labels_.size() != matrix_.cols()) {
      throw std::invalid_argument("label count does not match matrix dimensions");
    }
    if (mode_ == GameMode::symmetric && col_labels_ != row_labels_) {
      throw std::invalid_argument("symmetric game uses a single label list");
    }
    numeric_.resize(static_cast<Eigen::Index>(matrix_.rows()), static_cast<Eigen::Index>(matrix_.cols()));
    for (std::size_t i = 0; i < matrix_.rows(); ++i) {
      for (std::size_t j = 0; j < matrix_.cols(); ++j) {
        numeric_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(matrix_(i, j));
      }
    }
  }

  GameMode mode() const { return mode_; }
  bool is_symmetric() const { return mode_ == GameMode::symmetric; }
  std::size_t rows() const { return matrix_.rows(); }
  std::size_t cols() const { return matrix_.cols(); }

  const Rational& payoff(std::size_t row, std::size_t col) const { return matrix_(row, col); }
  const RationalMatrix& exact_matrix() const { return matrix_; }
  /// Floating-point copy of M for the dynamics.
  const Eigen::MatrixXd& matrix() const { return numeric_; }

  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  /// n*m profiles (non-symmetric) or n strategies (symmetric).
  std::size_t profile_count() const { return is_symmetric() ? rows() : rows() * cols(); }

  /// Row-major: index = first * cols + second.
  Profile profile_at(std::size_t index) const {
    if (index >= profile_count()) throw std::out_of_range("profile index out of range");
    if (is_symmetric()) return {index, 0};
    return {index / cols(), index % cols()};
  }

  std::size_t index_of(const Profile& p) const {
    check(p);
    return is_symmetric() ? p.first : p.first * cols() + p.second;
  }

  void check(const Profile& p) const {
    bool ok = is_symmetric() ? (p.first < rows() && p.second == 0) : (p.first < rows() && p.second < cols());
    if (!ok) throw std::out_of_range("profile outside the game's strategy sets");
  }

  /// "row,col" for non-symmetric profiles, the plain label otherwise.
  std::string profile_name(const Profile& p) const {
    check(p);
    if (is_symmetric()) return row_labels_[p.first];
    return row_labels_[p.first] + "," + col_labels_[p.second];
  }

  std::string profile_name(std::size_t index) const { return profile_name(profile_at(index)); }

 private:
  static void fill_default_labels(std::vector<std::string>& labels, std::size_t n, const char* prefix) {
    if (!labels.empty()) return;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  }

  GameMode mode_;
  RationalMatrix matrix_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  Eigen::MatrixXd numeric_;
};

/// Builds a game from a nested list of integers.
inline Game make_game(GameMode mode, const std::vector<std::vector<long long>>& entries,
                      std::vector<std::string> row_labels = {}, std::vector<std::string> col_labels = {}) {
  std::size_t rows = entries.size();
  std::size_t cols = rows == 0 ? 0 : entries.front().size();
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (entries[i].size() != cols) throw std::invalid_argument("ragged payoff matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(entries[i][j]);
  }
  return Game(mode, std::move(m), std::move(row_labels), std::move(col_labels));
}

/// A set of profiles of one game, stored as a membership mask over
/// row-major profile indices.
class ProfileSet {
 public:
  ProfileSet() = default;
  explicit ProfileSet(std::size_t universe) : member_(universe, false) {}
  ProfileSet(std::size_t universe, const std::vector<std::size_t>& indices) : member_(universe, false) {
    for (std::size_t i : indices) insert(i);
  }

  static ProfileSet all(std::size_t universe) {
    ProfileSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
  }

  void insert(std::size_t index) {
    if (index >= member_.size()) throw std::out_of_range("profile index out of range");
    if (!member_[index]) {
      member_[index] = true;
      ++count_;
    }
  }

  bool contains(std::size_t index) const { return index < member_.size() && member_[index]; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  std::size_t universe() const { return member_.size(); }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < member_.size(); ++i) {
      if (member_[i]) out.push_back(i);
    }
    return out;
  }

  bool subset_of(const ProfileSet& other) const {
    for (std::size_t i = 0; i < member_.size(); ++i) {
      if (member_[i] && !other.contains(i)) return false;
    }
    return true;
  }

  bool operator==(const ProfileSet&) const = default;

 private:
  std::vector<bool> member_;
  std::size_t count_ = 0;
};

/// A subgame T1 x T2 given by sorted strategy index lists. Symmetric games
/// use `first` only: the subgame is the face Delta(first).
struct Subgame {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;

  friend auto operator<=>(const Subgame&, const Subgame&) = default;
};

/// Profiles of a subgame as a ProfileSet of `g`.
inline ProfileSet profiles_of(const Game& g, const Subgame& s) {
  ProfileSet out(g.profile_count());
  if (g.is_symmetric()) {
    for (std::size_t i : s.first) out.insert(g.index_of({i, 0}));
    return out;
  }
  for (std::size_t i : s.first) {
    for (std::size_t j : s.second) out.insert(g.index_of({i, j}));
  }
  return out;
}

/// Mixed profile: (x, y) for non-symmetric games, a single mixed strategy x
/// for symmetric games (`second` is empty).
struct MixedProfile {
  Eigen::VectorXd first;
  Eigen::VectorXd second;

  static MixedProfile symmetric(Eigen::VectorXd x) { return {std::move(x), Eigen::VectorXd()}; }
  static MixedProfile pair(Eigen::VectorXd x, Eigen::VectorXd y) { return {std::move(x), std::move(y)}; }

  /// Number of populations represented (1 or 2).
  int populations() const { return second.size() == 0 ? 1 : 2; }
};

inline void check_dimensions(const Game& g, const MixedProfile& z) {
  bool ok = g.is_symmetric()
                ? (static_cast<std::size_t>(z.first.size()) == g.rows() && z.second.size() == 0)
                : (static_cast<std::size_t>(z.first.size()) == g.rows() &&
                   static_cast<std::size_t>(z.second.size()) == g.cols());
  if (!ok) throw std::invalid_argument("mixed profile dimensions do not match the game");
}

/// Throws std::invalid_argument unless every vector is nonnegative, finite
/// and sums to one within `tol`.
inline void validate(const Game& g, const MixedProfile& z, double tol = 1e-12) {
  check_dimensions(g, z);
  auto check_vec = [&](const Eigen::VectorXd& v, const char* who) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (!std::isfinite(v[i]) || v[i] < 0.0) {
        throw std::invalid_argument(std::string(who) + " has a negative or non-finite entry");
      }
    }
    if (std::abs(v.sum() - 1.0) > tol) {
      throw std::invalid_argument(std::string(who) + " does not sum to 1");
    }
  };
  check_vec(z.first, "player 1 strategy");
  if (!g.is_symmetric()) check_vec(z.second, "player 2 strategy");
}

inline MixedProfile uniform_profile(const Game& g) {
  Eigen::VectorXd x = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g.rows()), 1.0 / g.rows());
  if (g.is_symmetric()) return MixedProfile::symmetric(std::move(x));
  Eigen::VectorXd y = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g.cols()), 1.0 / g.cols());
  return MixedProfile::pair(std::move(x), std::move(y));
}

inline MixedProfile pure_profile(const Game& g, const Profile& p) {
  g.check(p);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.rows()));
  x[static_cast<Eigen::Index>(p.first)] = 1.0;
  if (g.is_symmetric()) return MixedProfile::symmetric(std::move(x));
  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.cols()));
  y[static_cast<Eigen::Index>(p.second)] = 1.0;
  return MixedProfile::pair(std::move(x), std::move(y));
}

/// Indices with entries strictly above `threshold`.
inline std::vector<std::size_t> support(const Eigen::VectorXd& v, double threshold = 0.0) {
  std::vector<std::size_t> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] > threshold) out.push_back(static_cast<std::size_t>(i));
  }
  return out;
}

inline Subgame support(const Game& g, const MixedProfile& z, double threshold = 0.0) {
  check_dimensions(g, z);
  Subgame s{support(z.first, threshold), {}};
  if (!g.is_symmetric()) s.second = support(z.second, threshold);
  return s;
}

// ---------------------------------------------------------------------------
// Comparability and weights

/// Which player's deviation separates two comparable profiles.
enum class Comparison { player1, player2, all };

/// The unique i such that a and b are i-comparable. Symmetric games compare
/// every distinct pair (`all`). Equal or doubly-differing profiles: nullopt.
inline std::optional<Comparison> comparable(const Game& g, const Profile& a, const Profile& b) {
  g.check(a);
  g.check(b);
  if (a == b) return std::nullopt;
  if (g.is_symmetric()) return Comparison::all;
  if (a.second == b.second) return Comparison::player1;
  if (a.first == b.first) return Comparison::player2;
  return std::nullopt;
}

/// Signed payoff difference W_{p,q}. W_{p,p} is 0. Throws std::domain_error
/// for incomparable pairs.
inline Rational weight(const Game& g, const Profile& p, const Profile& q) {
  if (p == q) {
    g.check(p);
    return Rational(0);
  }
  auto c = comparable(g, p, q);
  if (!c) {
    throw std::domain_error("weight undefined for incomparable profiles " + g.profile_name(p) + " and " +
                            g.profile_name(q));
  }
  switch (*c) {
    case Comparison::all:
      return g.payoff(p.first, q.first);
    case Comparison::player1:
      return g.payoff(p.first, p.second) - g.payoff(q.first, q.second);
    case Comparison::player2:
      return g.payoff(q.first, q.second) - g.payoff(p.first, p.second);
  }
  return Rational(0);
}

// ---------------------------------------------------------------------------
// Payoffs and product masses

/// Player 1's expected payoff x^T M y (x^T M x in symmetric games).
/// Player 2 receives the negation.
inline double expected_payoff(const Game& g, const MixedProfile& z) {
  check_dimensions(g, z);
  const Eigen::VectorXd& y = g.is_symmetric() ? z.first : z.second;
  return z.first.dot(g.matrix() * y);
}

/// Mass x_p of profile p under the product distribution; in symmetric games
/// the strategy coordinate itself.
inline double product_mass(const Game& g, const MixedProfile& z, const Profile& p) {
  check_dimensions(g, z);
  g.check(p);
  double mass = z.first[static_cast<Eigen::Index>(p.first)];
  if (!g.is_symmetric()) mass *= z.second[static_cast<Eigen::Index>(p.second)];
  return mass;
}

/// Product distribution over all profiles in row-major order.
inline Eigen::VectorXd profile_distribution(const Game& g, const MixedProfile& z) {
  check_dimensions(g, z);
  if (g.is_symmetric()) return z.first;
  Eigen::VectorXd out(static_cast<Eigen::Index>(g.profile_count()));
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      out[static_cast<Eigen::Index>(i * g.cols() + j)] =
          z.first[static_cast<Eigen::Index>(i)] * z.second[static_cast<Eigen::Index>(j)];
    }
  }
  return out;
}

}  // namespace zsa
