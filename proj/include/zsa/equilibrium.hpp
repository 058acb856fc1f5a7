#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "zsa/content.hpp"
#include "zsa/game.hpp"
#include "zsa/preference_graph.hpp"

namespace zsa {

/// Entries at or below this count as off-support in computed equilibria.
inline constexpr double kSupportThreshold = 1e-10;
/// Slack for the minimax best-response inequalities.
inline constexpr double kBestResponseTolerance = 1e-9;

/// A Nash equilibrium with the structural verdicts about its support.
struct NashCertificate {
  MixedProfile equilibrium;
  double value = 0.0;
  Subgame support;
  bool in_sink = false;
  bool support_strongly_connected = false;
  /// Antiparallel zero-weight arc pairs inside the support's induced graph.
  std::size_t tied_pairs_in_support = 0;

  bool passed() const { return in_sink && support_strongly_connected; }
};

/// All extreme equilibria found by enumerating square support pairs, plus
/// their barycentre (an equilibrium whose support is the essential subgame).
struct EquilibriumSet {
  std::vector<Eigen::VectorXd> player1;  // distinct extreme optimal strategies
  std::vector<Eigen::VectorXd> player2;
  MixedProfile barycentre;
  double value = 0.0;
};

namespace detail {

inline std::vector<std::size_t> mask_bits(std::uint32_t mask, std::size_t width) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < width; ++k) {
    if (mask >> k & 1u) out.push_back(k);
  }
  return out;
}

/// Solves sum_{i in I} w_i A(i, j) = v for j in J, sum w = 1, for a |I|=|J|
/// kernel. Returns false if the bordered system is singular.
inline bool solve_indifference(const Eigen::MatrixXd& a, const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& cols, Eigen::VectorXd& weights, double& value) {
  const auto k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(k + 1, k + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index r = 0; r < k; ++r) sys(c, r) = a(static_cast<Eigen::Index>(rows[r]), static_cast<Eigen::Index>(cols[c]));
    sys(c, k) = -1.0;
  }
  for (Eigen::Index r = 0; r < k; ++r) sys(k, r) = 1.0;
  rhs[k] = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
  if (!lu.isInvertible()) return false;
  Eigen::VectorXd sol = lu.solve(rhs);
  if (!sol.allFinite() || (sys * sol - rhs).cwiseAbs().maxCoeff() > 1e-9) return false;
  weights = Eigen::VectorXd::Zero(a.rows());
  for (Eigen::Index r = 0; r < k; ++r) weights[static_cast<Eigen::Index>(rows[r])] = sol[r];
  value = sol[k];
  return true;
}

inline bool clean_distribution(Eigen::VectorXd& w) {
  if (w.minCoeff() < -kSupportThreshold) return false;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] <= kSupportThreshold) w[i] = 0.0;
  }
  w /= w.sum();
  return true;
}

inline void add_distinct(std::vector<Eigen::VectorXd>& set, const Eigen::VectorXd& v) {
  for (const auto& u : set) {
    if ((u - v).cwiseAbs().maxCoeff() <= 1e-9) return;
  }
  set.push_back(v);
}

}  // namespace detail

/// Enumerates every pair of equal-size supports (I, J), solves both
/// indifference systems and keeps solutions satisfying the minimax
/// inequalities. Symmetric games are solved as the bimatrix game (M, -M^T).
/// Throws std::invalid_argument if min(n, m) > 9, std::logic_error if no
/// equilibrium is found.
inline EquilibriumSet enumerate_equilibria(const Game& g) {
  const std::size_t n = g.rows(), m = g.cols();
  if (std::min(n, m) > 9 || std::max(n, m) > 31) {
    throw std::invalid_argument("support enumeration supports min(n, m) <= 9");
  }
  const Eigen::MatrixXd& a = g.matrix();
  const Eigen::MatrixXd at = a.transpose();

  EquilibriumSet out;
  double value_sum = 0.0;
  std::size_t found = 0;
  for (std::uint32_t rmask = 1; rmask < (1u << n); ++rmask) {
    const auto rows = detail::mask_bits(rmask, n);
    for (std::uint32_t cmask = 1; cmask < (1u << m); ++cmask) {
      if (static_cast<std::size_t>(__builtin_popcount(cmask)) != rows.size()) continue;
      const auto cols = detail::mask_bits(cmask, m);
      Eigen::VectorXd x, y;
      double v1 = 0.0, v2 = 0.0;
      // x makes player 2 indifferent across J; y makes player 1 indifferent across I.
      if (!detail::solve_indifference(a, rows, cols, x, v1)) continue;
      if (!detail::solve_indifference(at, cols, rows, y, v2)) continue;
      if (std::abs(v1 - v2) > kBestResponseTolerance) continue;
      if (!detail::clean_distribution(x) || !detail::clean_distribution(y)) continue;
      const Eigen::VectorXd my = a * y;
      const Eigen::VectorXd mtx = at * x;
      const double v = x.dot(my);
      if (my.maxCoeff() > v + kBestResponseTolerance || mtx.minCoeff() < v - kBestResponseTolerance) continue;
      detail::add_distinct(out.player1, x);
      detail::add_distinct(out.player2, y);
      value_sum += v;
      ++found;
    }
  }
  if (found == 0) throw std::logic_error("support enumeration found no equilibrium");

  auto mean = [](const std::vector<Eigen::VectorXd>& vs) {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(vs.front().size());
    for (const auto& v : vs) s += v;
    return Eigen::VectorXd(s / static_cast<double>(vs.size()));
  };
  Eigen::VectorXd xbar = mean(out.player1);
  Eigen::VectorXd ybar = mean(out.player2);
  out.value = value_sum / static_cast<double>(found);
  if (g.is_symmetric()) {
    // Both players share the optimal set of an anti-symmetric matrix.
    out.barycentre = MixedProfile::symmetric(std::move(xbar));
  } else {
    out.barycentre = MixedProfile::pair(std::move(xbar), std::move(ybar));
  }
  return out;
}

/// Subgame spanned by the union of all equilibrium supports. Symmetric games
/// return the strategy set in `first`.
inline Subgame essential_subgame(const Game& g) {
  const EquilibriumSet eq = enumerate_equilibria(g);
  return support(g, eq.barycentre, kSupportThreshold);
}

namespace detail {

inline NashCertificate certify(const Game& g, const PreferenceGraph& pg, const SinkComponent& sink,
                               const EquilibriumSet& eq) {
  NashCertificate cert;
  cert.equilibrium = eq.barycentre;
  cert.value = expected_payoff(g, eq.barycentre);
  cert.support = support(g, eq.barycentre, kSupportThreshold);
  const ProfileSet profiles = profiles_of(g, cert.support);
  cert.in_sink = profiles.subset_of(sink.profiles());
  cert.support_strongly_connected = is_strongly_connected(pg, profiles);
  for (const Arc& arc : pg.arcs()) {
    if (arc.weight == 0 && arc.source < arc.target && profiles.contains(arc.source) && profiles.contains(arc.target)) {
      ++cert.tied_pairs_in_support;
    }
  }
  return cert;
}

}  // namespace detail

/// Nash equilibrium whose support is the essential subgame, with the game
/// value and both preference-graph verdicts.
inline NashCertificate solve_nash(const Game& g) {
  const PreferenceGraph pg = build_graph(g);
  return detail::certify(g, pg, sink_component(pg), enumerate_equilibria(g));
}

inline NashCertificate solve_nash(const Game& g, const PreferenceGraph& pg, const SinkComponent& sink) {
  return detail::certify(g, pg, sink, enumerate_equilibria(g));
}

/// Outcome of checking that the essential subgame sits inside the sink
/// component and induces a strongly connected subgraph.
struct PreferenceNashReport {
  Subgame essential;
  bool in_sink = false;
  bool strongly_connected = false;
  std::size_t tied_pairs = 0;

  bool passed() const { return in_sink && strongly_connected; }
};

inline PreferenceNashReport verify_preference_nash(const Game& g) {
  const NashCertificate cert = solve_nash(g);
  return {cert.support, cert.in_sink, cert.support_strongly_connected, cert.tied_pairs_in_support};
}

/// Largest violation of the minimax identities at the certificate:
/// max_s (M y)_s - value and value - min_t (M^T x)_t, clamped at zero, and
/// |max_s (My)_s - min_t (M^T x)_t|.
inline double minimax_gap(const Game& g, const MixedProfile& eq, double value) {
  const Eigen::VectorXd& x = eq.first;
  const Eigen::VectorXd& y = g.is_symmetric() ? eq.first : eq.second;
  const double upper = (g.matrix() * y).maxCoeff();
  const double lower = (g.matrix().transpose() * x).minCoeff();
  return std::max({std::abs(upper - lower), std::abs(upper - value), std::abs(lower - value)});
}

inline nlohmann::json certificate_to_json(const Game& g, const NashCertificate& cert) {
  nlohmann::json out;
  out["player1"] = std::vector<double>(cert.equilibrium.first.data(),
                                       cert.equilibrium.first.data() + cert.equilibrium.first.size());
  if (!g.is_symmetric()) {
    out["player2"] = std::vector<double>(cert.equilibrium.second.data(),
                                         cert.equilibrium.second.data() + cert.equilibrium.second.size());
  }
  out["value"] = cert.value;
  out["support"] = subgame_to_json(g, cert.support);
  out["in_sink"] = cert.in_sink;
  out["support_strongly_connected"] = cert.support_strongly_connected;
  out["tied_pairs_in_support"] = cert.tied_pairs_in_support;
  out["verdict"] = cert.passed() ? "PASS" : "FAIL";
  return out;
}

}  // namespace zsa
