#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zsa/content.hpp"
#include "zsa/dynamics.hpp"
#include "zsa/equilibrium.hpp"
#include "zsa/game.hpp"
#include "zsa/game_io.hpp"
#include "zsa/preference_graph.hpp"
#include "zsa/random_games.hpp"
#include "zsa/symmetrisation.hpp"

namespace zsa {

/// Thresholds used by the fuzz suites.
struct VerifyTolerances {
  double embedding = 1e-10;
  double rate_vs_difference = 1e-5;
  double difference_step = 1e-4;
  double monotone_slack = 1e-8;
  double saturation = 1e-12;  // x_H above 1 - saturation counts as converged
  double minimax = 1e-9;
  double fixed_point = 1e-9;
  double band_low = 0.05;
  double band_high = 0.95;
  std::size_t points_per_game = 50;
  std::size_t embedding_points = 10;
};

struct SuiteResult {
  std::string name;
  std::size_t games = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double max_residual = 0.0;
  std::optional<Game> counterexample;
  std::string first_failure;

  bool passed() const { return failures == 0; }

  void fail(const Game& g, std::string why) {
    ++failures;
    if (!counterexample) {
      counterexample = g;
      first_failure = std::move(why);
    }
  }

  nlohmann::json to_json() const {
    nlohmann::json out;
    out["suite"] = name;
    out["games"] = games;
    out["checks"] = checks;
    out["failures"] = failures;
    out["max_residual"] = max_residual;
    out["verdict"] = passed() ? "PASS" : "FAIL";
    if (counterexample) {
      out["first_failure"] = first_failure;
      out["counterexample"] = game_to_json(*counterexample);
    }
    return out;
  }
};

/// A point with x_H near `target`, found by bisection along a path from a
/// perturbed pure profile outside H to one inside H. Both ends are mixed
/// with an interior noise point, so the result is interior. Returns nullopt
/// if the end-point masses do not bracket the target.
inline std::optional<MixedProfile> band_point(const Game& g, const ProfileSet& h, GameSampler& rng, double target) {
  const auto inside = h.indices();
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < g.profile_count(); ++i) {
    if (!h.contains(i)) outside.push_back(i);
  }
  if (inside.empty() || outside.empty()) return std::nullopt;
  const Profile q = g.profile_at(outside[rng.index(outside.size())]);
  const Profile p = g.profile_at(inside[rng.index(inside.size())]);
  const double noise = rng.uniform(0.005, 0.2);
  const MixedProfile w = rng.interior_point(g);

  auto at = [&](double lambda) {
    auto mix = [&](std::size_t from, std::size_t to, const Eigen::VectorXd& base) {
      Eigen::VectorXd v = noise * base;
      v[static_cast<Eigen::Index>(from)] += (1.0 - noise) * (1.0 - lambda);
      v[static_cast<Eigen::Index>(to)] += (1.0 - noise) * lambda;
      return Eigen::VectorXd(v / v.sum());
    };
    if (g.is_symmetric()) return MixedProfile::symmetric(mix(q.first, p.first, w.first));
    return MixedProfile::pair(mix(q.first, p.first, w.first), mix(q.second, p.second, w.second));
  };
  double lo = 0.0, hi = 1.0;
  if (mass_on(g, at(lo), h) >= target || mass_on(g, at(hi), h) <= target) return std::nullopt;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass_on(g, at(mid), h) < target ? lo : hi) = mid;
  }
  return at(0.5 * (lo + hi));
}

/// Unique sink (plus tournament and scale-invariance properties) on
/// alternating non-symmetric (<= 5x5) and symmetric (<= 7x7) games.
inline SuiteResult verify_graph(std::size_t count, std::uint64_t seed) {
  SuiteResult r{"graph"};
  GameSampler sampler(seed);
  for (std::size_t k = 0; k < count; ++k) {
    const Game g = sampler.next_mixed();
    ++r.games;
    const PreferenceGraph pg = build_graph(g);
    const SccPartition part = scc(pg);
    ++r.checks;
    if (part.sinks.size() != 1) {
      r.fail(g, "found " + std::to_string(part.sinks.size()) + " sink components");
      continue;
    }
    if (g.is_symmetric() && pg.tie_count() == 0) {
      ++r.checks;
      const std::size_t n = g.rows();
      if (pg.arcs().size() != n * (n - 1) / 2) r.fail(g, "tournament arc count mismatch");
    }
    RationalMatrix scaled = g.exact_matrix();
    for (std::size_t i = 0; i < scaled.rows(); ++i) {
      for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(i, j) *= Rational(7, 3);
    }
    const PreferenceGraph spg = build_graph(Game(g.mode(), scaled));
    ++r.checks;
    bool same = spg.arcs().size() == pg.arcs().size();
    for (std::size_t a = 0; same && a < pg.arcs().size(); ++a) {
      same = pg.arcs()[a].source == spg.arcs()[a].source && pg.arcs()[a].target == spg.arcs()[a].target;
    }
    if (!same) r.fail(g, "arc set changed under positive scaling");
  }
  return r;
}

/// Exact anti-symmetry of S_M and the weight decomposition on random
/// non-symmetric games up to 5x5.
inline SuiteResult verify_symmetrisation(std::size_t count, std::uint64_t seed) {
  SuiteResult r{"symmetrisation"};
  GameSampler sampler(seed);
  for (std::size_t k = 0; k < count; ++k) {
    const Game g = sampler.non_symmetric();
    ++r.games;
    const WeightIdentityReport rep = check_weight_identity(g);
    r.checks += rep.pairs_checked + rep.comparable_pairs_checked + 1;
    if (!rep.passed()) {
      r.fail(g, rep.antisymmetric ? "weight identity violated" : "S_M not anti-symmetric");
    }
  }
  return r;
}

/// max |d/dt x_p - x_p (S_M x)_p| over random interior points.
inline SuiteResult verify_embedding(std::size_t count, std::uint64_t seed, const VerifyTolerances& tol = {}) {
  SuiteResult r{"embedding"};
  GameSampler sampler(seed);
  for (std::size_t k = 0; k < count; ++k) {
    const Game g = sampler.non_symmetric();
    ++r.games;
    const SymmetrisedGame sm = symmetrise(g);
    for (std::size_t i = 0; i < tol.embedding_points; ++i) {
      const EmbeddingReport rep = check_embedding(sm, sampler.interior_point(g));
      ++r.checks;
      r.max_residual = std::max(r.max_residual, rep.max_discrepancy);
      if (!(rep.max_discrepancy <= tol.embedding)) r.fail(g, "embedding residual above tolerance");
    }
  }
  return r;
}

/// Positivity of the closed-form rate for x_H in the band, agreement with a
/// centred difference of x_H along the integrated flow, and monotone x_H on
/// one integrated trajectory per game. Games whose sink is everything are
/// counted but have nothing to check.
inline SuiteResult verify_lyapunov(std::size_t count, std::uint64_t seed, const VerifyTolerances& tol = {}) {
  SuiteResult r{"lyapunov"};
  GameSampler sampler(seed);
  for (std::size_t k = 0; k < count; ++k) {
    const Game g = sampler.next_mixed();
    ++r.games;
    const SinkComponent sink = sink_component(build_graph(g));
    if (sink.is_everything()) continue;
    const ProfileSet& h = sink.profiles();

    std::size_t accepted = 0, attempts = 0;
    while (accepted < tol.points_per_game && attempts < 100 * tol.points_per_game) {
      ++attempts;
      const double target = sampler.uniform(tol.band_low + 0.01, tol.band_high - 0.01);
      auto z = band_point(g, h, sampler, target);
      if (!z) continue;
      const double xh = mass_on(g, *z, h);
      if (!(xh > tol.band_low && xh < tol.band_high)) continue;
      ++accepted;
      const double rate = lyapunov_rate(g, sink, *z);
      const double dt = tol.difference_step;
      const double fd = (mass_on(g, flow_step(g, *z, dt), h) - mass_on(g, flow_step(g, *z, -dt), h)) / (2 * dt);
      r.checks += 2;
      r.max_residual = std::max(r.max_residual, std::abs(rate - fd));
      if (!(rate > 0.0)) r.fail(g, "non-positive Lyapunov rate at x_H = " + std::to_string(xh));
      if (!(std::abs(rate - fd) <= tol.rate_vs_difference)) r.fail(g, "closed-form rate disagrees with finite difference");
    }
    if (accepted < tol.points_per_game) r.fail(g, "could not sample enough points in the x_H band");

    IntegratorConfig cfg;
    cfg.horizon = 20.0;
    const Trajectory tr = integrate(g, sampler.interior_point(g), cfg, h);
    ++r.checks;
    for (std::size_t s = 1; s < tr.size(); ++s) {
      if (tr.mass[s - 1] > 1.0 - tol.saturation) break;
      if (tr.mass[s] < tr.mass[s - 1] - tol.monotone_slack) {
        r.fail(g, "x_H decreased along an integrated trajectory");
        break;
      }
    }
  }
  return r;
}

/// Essential subgame inside the sink and strongly connected, plus minimax
/// consistency, fixed-point property and the fully-mixed corollary.
inline SuiteResult verify_nash(std::size_t count, std::uint64_t seed, const VerifyTolerances& tol = {}) {
  SuiteResult r{"nash"};
  GameSampler sampler(seed);
  for (std::size_t k = 0; k < count; ++k) {
    const Game g = sampler.next_mixed();
    ++r.games;
    const PreferenceGraph pg = build_graph(g);
    const SinkComponent sink = sink_component(pg);
    const NashCertificate cert = solve_nash(g, pg, sink);
    r.checks += 4;
    if (!cert.in_sink) r.fail(g, "essential subgame leaves the sink component");
    if (!cert.support_strongly_connected) r.fail(g, "essential subgame is not strongly connected");
    const double gap = minimax_gap(g, cert.equilibrium, cert.value);
    const double speed = rhs(g, cert.equilibrium).norm();
    r.max_residual = std::max({r.max_residual, gap, speed});
    if (!(gap <= tol.minimax)) r.fail(g, "minimax identities violated");
    if (!(speed <= tol.fixed_point)) r.fail(g, "equilibrium is not a replicator fixed point");
    const ProfileSet support_profiles = profiles_of(g, cert.support);
    if (support_profiles.size() == g.profile_count()) {
      ++r.checks;
      if (!is_strongly_connected(pg, support_profiles)) r.fail(g, "fully mixed equilibrium but graph not strongly connected");
    }
  }
  return r;
}

inline const std::vector<std::string>& verify_scopes() {
  static const std::vector<std::string> scopes{"graph", "symmetrisation", "embedding", "lyapunov", "nash", "all"};
  return scopes;
}

/// Runs one scope (or all five suites for "all").
inline std::vector<SuiteResult> run_verification(const std::string& scope, std::size_t count, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  const bool all = scope == "all";
  if (all || scope == "graph") out.push_back(verify_graph(count, seed));
  if (all || scope == "symmetrisation") out.push_back(verify_symmetrisation(count, seed));
  if (all || scope == "embedding") out.push_back(verify_embedding(count, seed));
  if (all || scope == "lyapunov") out.push_back(verify_lyapunov(count, seed));
  if (all || scope == "nash") out.push_back(verify_nash(count, seed));
  if (out.empty()) throw ParseError("unknown verification scope '" + scope + "'");
  return out;
}

}  // namespace zsa
