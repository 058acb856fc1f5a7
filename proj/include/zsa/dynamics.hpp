#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zsa/content.hpp"
#include "zsa/errors.hpp"
#include "zsa/game.hpp"
#include "zsa/preference_graph.hpp"
#include "zsa/symmetrisation.hpp"

namespace zsa {

/// Time derivative of a mixed profile; same layout as MixedProfile.
struct Velocity {
  Eigen::VectorXd first;
  Eigen::VectorXd second;

  double norm() const { return std::sqrt(first.squaredNorm() + second.squaredNorm()); }
};

/// x_s (M x)_s. Throws std::invalid_argument on non-symmetric games or a
/// dimension mismatch.
inline Eigen::VectorXd rhs_symmetric(const Game& g, const Eigen::VectorXd& x) {
  if (!g.is_symmetric()) throw std::invalid_argument("rhs_symmetric needs a symmetric game");
  if (static_cast<std::size_t>(x.size()) != g.rows()) throw std::invalid_argument("strategy dimension mismatch");
  return x.cwiseProduct(g.matrix() * x);
}

/// x_s ((M y)_s - x^T M y) and -y_t ((M^T x)_t - x^T M y).
inline Velocity rhs_nonsymmetric(const Game& g, const MixedProfile& z) {
  if (g.is_symmetric()) throw std::invalid_argument("rhs_nonsymmetric needs a non-symmetric game");
  check_dimensions(g, z);
  const Eigen::VectorXd my = g.matrix() * z.second;
  const Eigen::VectorXd mtx = g.matrix().transpose() * z.first;
  const double avg = z.first.dot(my);
  Velocity v;
  v.first = z.first.cwiseProduct((my.array() - avg).matrix());
  v.second = -z.second.cwiseProduct((mtx.array() - avg).matrix());
  return v;
}

/// Dispatches on the game's mode.
inline Velocity rhs(const Game& g, const MixedProfile& z) {
  if (g.is_symmetric()) {
    check_dimensions(g, z);
    return {rhs_symmetric(g, z.first), Eigen::VectorXd()};
  }
  return rhs_nonsymmetric(g, z);
}

// ---------------------------------------------------------------------------
// Integration

enum class IntegrationMethod { rk4_log, rk4_direct };

inline const char* to_string(IntegrationMethod m) { return m == IntegrationMethod::rk4_log ? "rk4-log" : "rk4-direct"; }

inline IntegrationMethod parse_method(const std::string& s) {
  if (s == "rk4-log") return IntegrationMethod::rk4_log;
  if (s == "rk4-direct") return IntegrationMethod::rk4_direct;
  throw ParseError("unknown integration method '" + s + "' (expected rk4-log or rk4-direct)");
}

struct IntegratorConfig {
  double step = 0.01;
  double horizon = 200.0;
  IntegrationMethod method = IntegrationMethod::rk4_log;
  bool renormalize = true;
  double mwu_eta = 0.01;

  /// step in (0, 0.1], horizon >= 0. A zero horizon yields the initial state only.
  void validate() const {
    if (!(step > 0.0) || step > 0.1) throw std::invalid_argument("integration step must lie in (0, 0.1]");
    if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("horizon must be finite and >= 0");
    if (horizon > 0.0 && !(step < horizon)) throw std::invalid_argument("integration step must be below the horizon");
  }

  /// ceil(horizon / step), tolerant of representation error in the ratio.
  std::size_t step_count() const {
    if (horizon == 0.0) return 0;
    return static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
  }
};

namespace detail {

/// Per-strategy growth rates: d/dt log x_s.
inline MixedProfile growth_rates(const Game& g, const MixedProfile& z) {
  if (g.is_symmetric()) return MixedProfile::symmetric(g.matrix() * z.first);
  const Eigen::VectorXd my = g.matrix() * z.second;
  const Eigen::VectorXd mtx = g.matrix().transpose() * z.first;
  const double avg = z.first.dot(my);
  return MixedProfile::pair((my.array() - avg).matrix(), (avg - mtx.array()).matrix());
}

/// Log coordinates; zero entries become -inf and stay there.
inline Eigen::VectorXd to_log(const Eigen::VectorXd& x) {
  Eigen::VectorXd u(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    u[i] = x[i] > 0.0 ? std::log(x[i]) : -std::numeric_limits<double>::infinity();
  }
  return u;
}

inline Eigen::VectorXd softmax(const Eigen::VectorXd& u) {
  double top = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < u.size(); ++i) top = std::max(top, u[i]);
  Eigen::VectorXd x(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) x[i] = std::isinf(u[i]) && u[i] < 0 ? 0.0 : std::exp(u[i] - top);
  return x / x.sum();
}

/// u + h * k on the finite (support) coordinates only.
inline Eigen::VectorXd shift(const Eigen::VectorXd& u, const Eigen::VectorXd& k, double h) {
  Eigen::VectorXd out = u;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::isfinite(u[i])) out[i] += h * k[i];
  }
  return out;
}

inline MixedProfile from_log(const Game& g, const Eigen::VectorXd& u1, const Eigen::VectorXd& u2) {
  if (g.is_symmetric()) return MixedProfile::symmetric(softmax(u1));
  return MixedProfile::pair(softmax(u1), softmax(u2));
}

inline MixedProfile step_log(const Game& g, const MixedProfile& z, double dt) {
  const Eigen::VectorXd u1 = to_log(z.first);
  const Eigen::VectorXd u2 = g.is_symmetric() ? Eigen::VectorXd() : to_log(z.second);
  auto stage = [&](const MixedProfile& k, double h) {
    return from_log(g, shift(u1, k.first, h), g.is_symmetric() ? u2 : shift(u2, k.second, h));
  };
  const MixedProfile k1 = growth_rates(g, z);
  const MixedProfile k2 = growth_rates(g, stage(k1, dt / 2));
  const MixedProfile k3 = growth_rates(g, stage(k2, dt / 2));
  const MixedProfile k4 = growth_rates(g, stage(k3, dt));
  MixedProfile incr;
  incr.first = (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first) / 6.0;
  if (!g.is_symmetric()) incr.second = (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second) / 6.0;
  return stage(incr, dt);
}

inline void project(Eigen::VectorXd& x) {
  x = x.cwiseMax(0.0);
  x /= x.sum();
}

inline MixedProfile step_direct(const Game& g, const MixedProfile& z, double dt, bool renormalize) {
  auto add = [&](const MixedProfile& a, const Velocity& v, double h) {
    MixedProfile out{a.first + h * v.first, a.second};
    if (!g.is_symmetric()) out.second = a.second + h * v.second;
    return out;
  };
  const Velocity k1 = rhs(g, z);
  const Velocity k2 = rhs(g, add(z, k1, dt / 2));
  const Velocity k3 = rhs(g, add(z, k2, dt / 2));
  const Velocity k4 = rhs(g, add(z, k3, dt));
  Velocity incr{(k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first) / 6.0, Eigen::VectorXd()};
  if (!g.is_symmetric()) incr.second = (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second) / 6.0;
  MixedProfile out = add(z, incr, dt);
  if (renormalize) {
    project(out.first);
    if (!g.is_symmetric()) project(out.second);
  }
  return out;
}

inline bool all_finite(const MixedProfile& z) { return z.first.allFinite() && z.second.allFinite(); }

}  // namespace detail

/// One RK4 step of signed length dt. Coordinates that are exactly zero stay
/// exactly zero under both methods.
inline MixedProfile flow_step(const Game& g, const MixedProfile& z, double dt,
                              IntegrationMethod method = IntegrationMethod::rk4_log, bool renormalize = true) {
  check_dimensions(g, z);
  return method == IntegrationMethod::rk4_log ? detail::step_log(g, z, dt)
                                              : detail::step_direct(g, z, dt, renormalize);
}

/// Approximates the flow phi(z, t) by `substeps` RK4 steps.
inline MixedProfile flow(const Game& g, MixedProfile z, double t, std::size_t substeps) {
  const double dt = t / static_cast<double>(substeps);
  for (std::size_t k = 0; k < substeps; ++k) z = flow_step(g, z, dt);
  return z;
}

/// Sampled trajectory on a uniform time grid. The derived series `mass`
/// (x_H) and `distance` (1 - x_H) are filled only when a profile set was
/// tracked; `payoff` is player 1's expected payoff.
struct Trajectory {
  std::vector<double> times;
  std::vector<MixedProfile> states;
  std::optional<ProfileSet> tracked;
  std::vector<double> mass;
  std::vector<double> payoff;
  std::vector<double> distance;

  std::size_t size() const { return states.size(); }
};

/// Integrates the replicator from z0 for ceil(horizon/step) steps.
/// Throws NumericalError if a state turns non-finite.
inline Trajectory integrate(const Game& g, const MixedProfile& z0, const IntegratorConfig& cfg,
                            const std::optional<ProfileSet>& tracked = std::nullopt) {
  cfg.validate();
  validate(g, z0, 1e-12);
  if (tracked) detail::require_nonempty(*tracked);
  const std::size_t steps = cfg.step_count();

  Trajectory tr;
  tr.tracked = tracked;
  tr.times.reserve(steps + 1);
  tr.states.reserve(steps + 1);
  auto record = [&](double t, MixedProfile z) {
    tr.payoff.push_back(expected_payoff(g, z));
    if (tracked) {
      const double m = mass_on(g, z, *tracked);
      tr.mass.push_back(m);
      tr.distance.push_back(std::clamp(1.0 - m, 0.0, 1.0));
    }
    tr.times.push_back(t);
    tr.states.push_back(std::move(z));
  };

  MixedProfile z = z0;
  record(0.0, z);
  for (std::size_t k = 1; k <= steps; ++k) {
    z = flow_step(g, z, cfg.step, cfg.method, cfg.renormalize);
    if (!detail::all_finite(z)) {
      throw NumericalError("non-finite state at step " + std::to_string(k) + " (t = " +
                           std::to_string(static_cast<double>(k) * cfg.step) + ")");
    }
    record(static_cast<double>(k) * cfg.step, z);
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Lyapunov function x_H

/// Closed-form d/dt x_H for the certified sink H:
///   sum_{q not in H} sum_{h in H} x_q x_h A_{h,q}
/// with A = M (symmetric games) or A = S_M (non-symmetric games).
inline double lyapunov_rate(const Game& g, const SinkComponent& sink, const MixedProfile& z) {
  check_dimensions(g, z);
  if (sink.profiles().universe() != g.profile_count()) throw std::invalid_argument("sink belongs to a different game");
  const Eigen::VectorXd mass = profile_distribution(g, z);
  const Eigen::MatrixXd& m = g.matrix();
  const auto inside = sink.profiles().indices();
  double rate = 0.0;
  for (std::size_t qi = 0; qi < g.profile_count(); ++qi) {
    if (sink.contains(qi)) continue;
    const double xq = mass[static_cast<Eigen::Index>(qi)];
    if (xq == 0.0) continue;
    const Profile q = g.profile_at(qi);
    for (std::size_t hi : inside) {
      const double xh = mass[static_cast<Eigen::Index>(hi)];
      if (xh == 0.0) continue;
      const Profile h = g.profile_at(hi);
      double a;
      if (g.is_symmetric()) {
        a = m(static_cast<Eigen::Index>(h.first), static_cast<Eigen::Index>(q.first));
      } else {
        a = m(static_cast<Eigen::Index>(h.first), static_cast<Eigen::Index>(q.second)) -
            m(static_cast<Eigen::Index>(q.first), static_cast<Eigen::Index>(h.second));
      }
      rate += xq * xh * a;
    }
  }
  return rate;
}

/// As above, but first certifies that `h` is the sink component of g's
/// preference graph. Throws std::invalid_argument otherwise.
inline double lyapunov_rate(const Game& g, const ProfileSet& h, const MixedProfile& z) {
  SinkComponent sink = sink_component(build_graph(g));
  if (!(sink.profiles() == h)) {
    throw std::invalid_argument("lyapunov_rate requires the sink component of the preference graph");
  }
  return lyapunov_rate(g, sink, z);
}

// ---------------------------------------------------------------------------
// Embedding into the symmetrised game

struct EmbeddingReport {
  double max_discrepancy = 0.0;
  std::size_t worst_profile = 0;
};

/// Compares d/dt (x1_{p1} x2_{p2}) from the two-population replicator (via
/// the product rule) with x_p (S_M x)_p, for every profile p.
inline EmbeddingReport check_embedding(const SymmetrisedGame& sm, const MixedProfile& z) {
  const Game& g = sm.base();
  const Velocity v = rhs_nonsymmetric(g, z);
  const Eigen::VectorXd mass = profile_distribution(g, z);
  const Eigen::VectorXd sx = sm.matrix() * mass;
  EmbeddingReport report;
  for (std::size_t i = 0; i < g.profile_count(); ++i) {
    const Profile p = g.profile_at(i);
    const auto a = static_cast<Eigen::Index>(p.first), b = static_cast<Eigen::Index>(p.second);
    const auto k = static_cast<Eigen::Index>(i);
    const double product_rule = v.first[a] * z.second[b] + z.first[a] * v.second[b];
    const double symmetrised = mass[k] * sx[k];
    const double gap = std::abs(product_rule - symmetrised);
    if (gap > report.max_discrepancy) {
      report.max_discrepancy = gap;
      report.worst_profile = i;
    }
  }
  return report;
}

inline EmbeddingReport check_embedding(const Game& g, const MixedProfile& z) {
  return check_embedding(symmetrise(g), z);
}

// ---------------------------------------------------------------------------
// Multiplicative weights

namespace detail {
inline Eigen::VectorXd exponential_weights(const Eigen::VectorXd& x, const Eigen::VectorXd& payoff, double eta) {
  double top = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) top = std::max(top, eta * payoff[i]);
  }
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = x[i] > 0.0 ? x[i] * std::exp(eta * payoff[i] - top) : 0.0;
  return out / out.sum();
}
}  // namespace detail

/// Simultaneous exponential-weights update x'_s ∝ x_s exp(eta * u_s), where
/// u is each player's own payoff against the current opponent mixture.
inline MixedProfile mwu_step(const Game& g, const MixedProfile& z, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("MWU step size must be positive");
  check_dimensions(g, z);
  if (g.is_symmetric()) return MixedProfile::symmetric(detail::exponential_weights(z.first, g.matrix() * z.first, eta));
  const Eigen::VectorXd u1 = g.matrix() * z.second;
  const Eigen::VectorXd u2 = -(g.matrix().transpose() * z.first);
  return MixedProfile::pair(detail::exponential_weights(z.first, u1, eta),
                            detail::exponential_weights(z.second, u2, eta));
}

// ---------------------------------------------------------------------------
// Post-processing

/// Coordinate-wise mean of the sampled states.
inline MixedProfile time_average(const Trajectory& tr) {
  if (tr.states.empty()) throw std::invalid_argument("time average of an empty trajectory");
  MixedProfile avg = tr.states.front();
  avg.first.setZero();
  avg.second.setZero();
  for (const MixedProfile& z : tr.states) {
    avg.first += z.first;
    if (z.second.size()) avg.second += z.second;
  }
  const double n = static_cast<double>(tr.states.size());
  avg.first /= n;
  avg.second /= n;
  return avg;
}

/// sum_s x*_s log x_s (+ sum_t y*_t log y_t): constant along replicator
/// orbits whenever `equilibrium` is a fully mixed Nash equilibrium.
inline double first_integral(const Game& g, const MixedProfile& equilibrium, const MixedProfile& z) {
  check_dimensions(g, z);
  check_dimensions(g, equilibrium);
  auto term = [](const Eigen::VectorXd& w, const Eigen::VectorXd& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (w[i] > 0.0) s += w[i] * std::log(x[i]);
    }
    return s;
  };
  double v = term(equilibrium.first, z.first);
  if (!g.is_symmetric()) v += term(equilibrium.second, z.second);
  return v;
}

}  // namespace zsa
