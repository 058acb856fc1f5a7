#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zsa/game.hpp"

namespace zsa {

/// Von Neumann symmetrisation S_M of a non-symmetric game: an (nm)x(nm)
/// anti-symmetric matrix indexed by profiles in row-major order,
///   (S_M)_{p,q} = M_{p1,q2} - M_{q1,p2}.
class SymmetrisedGame {
 public:
  const Game& base() const { return base_; }
  const RationalMatrix& exact_matrix() const { return matrix_; }
  const Eigen::MatrixXd& matrix() const { return numeric_; }
  std::size_t size() const { return matrix_.rows(); }

  const Rational& entry(const Profile& p, const Profile& q) const {
    return matrix_(base_.index_of(p), base_.index_of(q));
  }

  bool is_antisymmetric() const {
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = i; j < size(); ++j) {
        if (matrix_(i, j) != -matrix_(j, i)) return false;
      }
    }
    return true;
  }

  /// S_M as a symmetric game whose strategies are the base game's profiles,
  /// labelled "row,col".
  Game as_game() const {
    std::vector<std::string> labels;
    labels.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) labels.push_back(base_.profile_name(i));
    return Game(GameMode::symmetric, matrix_, labels, labels);
  }

 private:
  SymmetrisedGame(Game base, RationalMatrix m) : base_(std::move(base)), matrix_(std::move(m)) {
    numeric_.resize(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) {
        numeric_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(matrix_(i, j));
      }
    }
  }
  friend SymmetrisedGame symmetrise(const Game&);

  Game base_;
  RationalMatrix matrix_;
  Eigen::MatrixXd numeric_;
};

/// Throws std::invalid_argument for symmetric input.
inline SymmetrisedGame symmetrise(const Game& g) {
  if (g.is_symmetric()) throw std::invalid_argument("symmetrisation expects a non-symmetric game");
  const std::size_t count = g.profile_count();
  RationalMatrix s(count, count);
  for (std::size_t i = 0; i < count; ++i) {
    const Profile p = g.profile_at(i);
    for (std::size_t j = 0; j < count; ++j) {
      const Profile q = g.profile_at(j);
      s(i, j) = g.payoff(p.first, q.second) - g.payoff(q.first, p.second);
    }
  }
  return SymmetrisedGame(g, std::move(s));
}

/// One ordered pair at which the weight decomposition of S_M failed.
struct WeightIdentityViolation {
  Profile p;
  Profile q;
  Rational symmetrised;
  Rational via_source;  // W_{p,(p1,q2)} + W_{p,(q1,p2)}
  Rational via_target;  // W_{(p1,q2),q} + W_{(q1,p2),q}
};

struct WeightIdentityReport {
  std::size_t pairs_checked = 0;
  std::size_t comparable_pairs_checked = 0;
  bool antisymmetric = true;
  std::vector<WeightIdentityViolation> violations;
  /// Comparable pairs where (S_M)_{p,q} != W_{p,q}.
  std::vector<std::pair<Profile, Profile>> restriction_violations;

  bool passed() const { return antisymmetric && violations.empty() && restriction_violations.empty(); }
};

/// Checks, for every ordered profile pair (p, q), that S_M decomposes into
/// weights through the two corner profiles (p1,q2) and (q1,p2), and that
/// S_M agrees with W on comparable pairs. All exact.
inline WeightIdentityReport check_weight_identity(const Game& g) {
  const SymmetrisedGame sm = symmetrise(g);
  WeightIdentityReport report;
  report.antisymmetric = sm.is_antisymmetric();
  const std::size_t count = g.profile_count();
  for (std::size_t i = 0; i < count; ++i) {
    const Profile p = g.profile_at(i);
    for (std::size_t j = 0; j < count; ++j) {
      const Profile q = g.profile_at(j);
      const Profile a{p.first, q.second};
      const Profile b{q.first, p.second};
      const Rational& s = sm.exact_matrix()(i, j);
      Rational via_source = weight(g, p, a) + weight(g, p, b);
      Rational via_target = weight(g, a, q) + weight(g, b, q);
      ++report.pairs_checked;
      if (s != via_source || s != via_target) {
        report.violations.push_back({p, q, s, std::move(via_source), std::move(via_target)});
      }
      if (comparable(g, p, q)) {
        ++report.comparable_pairs_checked;
        if (s != weight(g, p, q)) report.restriction_violations.emplace_back(p, q);
      }
    }
  }
  return report;
}

}  // namespace zsa
