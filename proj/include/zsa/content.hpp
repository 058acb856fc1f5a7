#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include <json.hpp>

#include "zsa/game.hpp"
#include "zsa/preference_graph.hpp"

namespace zsa {

/// A profile set H together with its decomposition into maximal subgames.
/// The content of H is the union of the strategy spaces of those subgames.
struct Content {
  ProfileSet profiles;
  std::vector<Subgame> maximal_subgames;
};

namespace detail {
inline void require_nonempty(const ProfileSet& h) {
  if (h.empty()) throw std::invalid_argument("profile set must be nonempty");
}
}  // namespace detail

/// x_H: total product mass on the profiles of H.
inline double mass_on(const Game& g, const MixedProfile& z, const ProfileSet& h) {
  detail::require_nonempty(h);
  if (h.universe() != g.profile_count()) throw std::invalid_argument("profile set belongs to a different game");
  double mass = 0.0;
  for (std::size_t i : h.indices()) mass += product_mass(g, z, g.profile_at(i));
  return mass;
}

/// Whether supp(z) (as a product set) lies inside H. Entries at or below
/// `threshold` count as outside the support; use 0 for exact initial
/// conditions and a small positive value for integrated states.
inline bool in_content(const Game& g, const MixedProfile& z, const ProfileSet& h, double threshold = 0.0) {
  detail::require_nonempty(h);
  if (h.universe() != g.profile_count()) throw std::invalid_argument("profile set belongs to a different game");
  const Subgame s = support(g, z, threshold);
  if (g.is_symmetric()) {
    return std::all_of(s.first.begin(), s.first.end(), [&](std::size_t i) { return h.contains(i); });
  }
  for (std::size_t i : s.first) {
    for (std::size_t j : s.second) {
      if (!h.contains(g.index_of({i, j}))) return false;
    }
  }
  return true;
}

/// 1 - x_H; zero exactly on the content of H.
inline double distance_to_content(const Game& g, const MixedProfile& z, const ProfileSet& h) {
  return std::clamp(1.0 - mass_on(g, z, h), 0.0, 1.0);
}

/// All maximal product sets T1 x T2 contained in H (maximal bicliques of H
/// read as a rows-by-columns relation), in ascending (T1, T2) order.
/// Symmetric games return the single strategy set H.
///
/// Every maximal biclique is a closed pair: T2 is the common neighbourhood
/// of T1 and T1 the common neighbourhood of T2. Enumerating row subsets and
/// keeping the closed ones finds each exactly once.
inline std::vector<Subgame> maximal_subgames(const Game& g, const ProfileSet& h) {
  detail::require_nonempty(h);
  if (h.universe() != g.profile_count()) throw std::invalid_argument("profile set belongs to a different game");
  if (g.is_symmetric()) return {Subgame{h.indices(), {}}};

  const std::size_t n = g.rows(), m = g.cols();
  if (n > 20 || m > 63) throw std::invalid_argument("maximal subgame enumeration supports at most 20 rows");
  std::vector<std::uint64_t> row_nbrs(n, 0), col_nbrs(m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (h.contains(g.index_of({i, j}))) {
        row_nbrs[i] |= std::uint64_t{1} << j;
        col_nbrs[j] |= std::uint64_t{1} << i;
      }
    }
  }
  const std::uint64_t all_cols = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;

  std::set<std::pair<std::uint64_t, std::uint64_t>> closed;
  for (std::uint64_t rows = 1; rows < (std::uint64_t{1} << n); ++rows) {
    std::uint64_t cols = all_cols;
    for (std::size_t i = 0; i < n; ++i) {
      if (rows >> i & 1) cols &= row_nbrs[i];
    }
    if (cols == 0) continue;
    std::uint64_t closure = (std::uint64_t{1} << n) - 1;
    for (std::size_t j = 0; j < m; ++j) {
      if (cols >> j & 1) closure &= col_nbrs[j];
    }
    if (closure == rows) closed.emplace(rows, cols);
  }

  auto bits = [](std::uint64_t mask, std::size_t width) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < width; ++k) {
      if (mask >> k & 1) out.push_back(k);
    }
    return out;
  };
  std::vector<Subgame> out;
  out.reserve(closed.size());
  for (const auto& [rows, cols] : closed) out.push_back({bits(rows, n), bits(cols, m)});
  std::sort(out.begin(), out.end());
  return out;
}

inline Content content_of(const Game& g, const ProfileSet& h) { return {h, maximal_subgames(g, h)}; }

inline nlohmann::json subgame_to_json(const Game& g, const Subgame& s) {
  auto names = [](const std::vector<std::size_t>& idx, const std::vector<std::string>& labels) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i : idx) arr.push_back(labels[i]);
    return arr;
  };
  nlohmann::json out;
  if (g.is_symmetric()) {
    out["strategies"] = names(s.first, g.row_labels());
  } else {
    out["player1"] = names(s.first, g.row_labels());
    out["player2"] = names(s.second, g.col_labels());
  }
  return out;
}

/// Content report: the profiles of H and its maximal subgames, by label.
inline nlohmann::json content_report(const Game& g, const Content& c) {
  nlohmann::json profiles = nlohmann::json::array();
  for (std::size_t i : c.profiles.indices()) profiles.push_back(g.profile_name(i));
  nlohmann::json subgames = nlohmann::json::array();
  for (const Subgame& s : c.maximal_subgames) subgames.push_back(subgame_to_json(g, s));
  nlohmann::json out;
  out["sink_profiles"] = std::move(profiles);
  out["maximal_subgames"] = std::move(subgames);
  out["is_whole_game"] = c.profiles.size() == c.profiles.universe();
  return out;
}

/// "{a,b,c} x {b,c}" style rendering.
inline std::string describe(const Game& g, const Subgame& s) {
  auto set = [](const std::vector<std::size_t>& idx, const std::vector<std::string>& labels) {
    std::string out = "{";
    for (std::size_t k = 0; k < idx.size(); ++k) out += (k ? "," : "") + labels[idx[k]];
    return out + "}";
  };
  if (g.is_symmetric()) return set(s.first, g.row_labels());
  return set(s.first, g.row_labels()) + " x " + set(s.second, g.col_labels());
}

}  // namespace zsa
