#pragma once

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "zsa/errors.hpp"
#include "zsa/game.hpp"

namespace zsa {

/// Arc p -> q: the deviating player weakly prefers q. Weight is |W_{p,q}|.
struct Arc {
  std::size_t source = 0;
  std::size_t target = 0;
  Rational weight;

  bool operator==(const Arc&) const = default;
};

/// Preference graph over the profiles of a game, nodes in row-major order.
class PreferenceGraph {
 public:
  PreferenceGraph(GameMode mode, std::vector<std::string> node_names, std::vector<Arc> arcs)
      : mode_(mode), names_(std::move(node_names)), arcs_(std::move(arcs)), out_(names_.size()) {
    std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
      return a.source != b.source ? a.source < b.source : a.target < b.target;
    });
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      if (arcs_[i].source >= names_.size() || arcs_[i].target >= names_.size()) {
        throw std::out_of_range("arc endpoint outside the node set");
      }
      out_[arcs_[i].source].push_back(arcs_[i].target);
    }
  }

  GameMode mode() const { return mode_; }
  std::size_t node_count() const { return names_.size(); }
  const std::vector<std::string>& node_names() const { return names_; }
  /// Sorted by (source, target).
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<std::size_t>& successors(std::size_t node) const { return out_.at(node); }

  bool has_arc(std::size_t source, std::size_t target) const {
    const auto& s = out_.at(source);
    return std::binary_search(s.begin(), s.end(), target);
  }

  /// Number of unordered node pairs joined by antiparallel zero-weight arcs.
  std::size_t tie_count() const {
    std::size_t ties = 0;
    for (const Arc& a : arcs_) {
      if (a.weight == 0 && a.source < a.target) ++ties;
    }
    return ties;
  }

 private:
  GameMode mode_;
  std::vector<std::string> names_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Arc p -> q iff p, q comparable and W_{p,q} <= 0. Ties give both arcs.
/// Decided in exact arithmetic.
inline PreferenceGraph build_graph(const Game& g) {
  const std::size_t count = g.profile_count();
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) names.push_back(g.profile_name(i));

  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < count; ++i) {
    const Profile p = g.profile_at(i);
    for (std::size_t j = i + 1; j < count; ++j) {
      const Profile q = g.profile_at(j);
      if (!comparable(g, p, q)) continue;
      Rational w = weight(g, p, q);
      if (w <= 0) arcs.push_back({i, j, -w});
      if (w >= 0) arcs.push_back({j, i, w});
    }
  }
  return PreferenceGraph(g.mode(), std::move(names), std::move(arcs));
}

/// Strongly connected components plus the condensation DAG. Components are
/// numbered in order of their smallest member node.
struct SccPartition {
  std::vector<std::size_t> component_of;
  std::vector<std::vector<std::size_t>> members;       // sorted node lists
  std::vector<std::vector<std::size_t>> condensation;  // sorted successor components
  std::vector<std::size_t> sinks;                      // components without successors

  std::size_t component_count() const { return members.size(); }
};

namespace detail {

/// Iterative Tarjan over an adjacency-list graph; returns raw component ids.
inline std::vector<std::size_t> tarjan(const std::vector<std::vector<std::size_t>>& adj, std::size_t& count) {
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = adj.size();
  std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next successor position)
  std::size_t next_index = 0;
  count = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos == 0 && index[v] == unvisited) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (pos < adj[v].size()) {
        std::size_t w = adj[v][pos++];
        if (index[w] == unvisited) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

}  // namespace detail

inline SccPartition scc(const PreferenceGraph& pg) {
  const std::size_t n = pg.node_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t v = 0; v < n; ++v) adj[v] = pg.successors(v);

  std::size_t raw_count = 0;
  std::vector<std::size_t> raw = detail::tarjan(adj, raw_count);

  // Renumber by smallest member; nodes are scanned in increasing order.
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> renumber(raw_count, unset);
  std::size_t next = 0;
  SccPartition out;
  out.component_of.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (renumber[raw[v]] == unset) renumber[raw[v]] = next++;
    out.component_of[v] = renumber[raw[v]];
  }
  out.members.resize(next);
  for (std::size_t v = 0; v < n; ++v) out.members[out.component_of[v]].push_back(v);

  std::vector<std::set<std::size_t>> succ(next);
  for (const Arc& a : pg.arcs()) {
    std::size_t cs = out.component_of[a.source], ct = out.component_of[a.target];
    if (cs != ct) succ[cs].insert(ct);
  }
  out.condensation.resize(next);
  for (std::size_t c = 0; c < next; ++c) {
    out.condensation[c].assign(succ[c].begin(), succ[c].end());
    if (out.condensation[c].empty()) out.sinks.push_back(c);
  }
  return out;
}

/// The certified unique sink component of a preference graph. Only
/// obtainable through sink_component(), so holding one proves the set is
/// the sink of the graph it came from.
class SinkComponent {
 public:
  const ProfileSet& profiles() const { return profiles_; }
  std::size_t size() const { return profiles_.size(); }
  bool contains(std::size_t index) const { return profiles_.contains(index); }
  bool is_everything() const { return profiles_.size() == profiles_.universe(); }

 private:
  explicit SinkComponent(ProfileSet s) : profiles_(std::move(s)) {}
  friend SinkComponent sink_component(const PreferenceGraph&, const SccPartition&);

  ProfileSet profiles_;
};

/// Throws InvariantViolation listing the offending components when the
/// number of sinks is not exactly one.
inline SinkComponent sink_component(const PreferenceGraph& pg, const SccPartition& part) {
  if (part.sinks.size() != 1) {
    std::ostringstream msg;
    msg << "expected exactly one sink component, found " << part.sinks.size();
    for (std::size_t c : part.sinks) {
      msg << " {";
      for (std::size_t i = 0; i < part.members[c].size(); ++i) {
        msg << (i ? "; " : "") << pg.node_names()[part.members[c][i]];
      }
      msg << "}";
    }
    throw InvariantViolation(msg.str());
  }
  return SinkComponent(ProfileSet(pg.node_count(), part.members[part.sinks.front()]));
}

inline SinkComponent sink_component(const PreferenceGraph& pg) { return sink_component(pg, scc(pg)); }

/// True iff the subgraph induced on `subset` is strongly connected.
/// Throws std::invalid_argument on an empty subset.
inline bool is_strongly_connected(const PreferenceGraph& pg, const ProfileSet& subset) {
  if (subset.empty()) throw std::invalid_argument("strong connectivity of an empty subset is undefined");
  if (subset.universe() != pg.node_count()) throw std::invalid_argument("subset belongs to a different graph");
  const auto nodes = subset.indices();
  const std::size_t n = pg.node_count();
  std::vector<std::vector<std::size_t>> rev(n);
  for (const Arc& a : pg.arcs()) {
    if (subset.contains(a.source) && subset.contains(a.target)) rev[a.target].push_back(a.source);
  }
  auto reach_all = [&](bool forward) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> todo{nodes.front()};
    seen[nodes.front()] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
      std::size_t v = todo.back();
      todo.pop_back();
      const auto& next = forward ? pg.successors(v) : rev[v];
      for (std::size_t w : next) {
        if (!subset.contains(w) || seen[w]) continue;
        seen[w] = true;
        ++reached;
        todo.push_back(w);
      }
    }
    return reached == nodes.size();
  };
  return reach_all(true) && reach_all(false);
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Graphviz digraph. Highlighted nodes are filled grey; arcs carry |W|.
inline std::string to_dot(const PreferenceGraph& pg, const ProfileSet& highlight, const std::string& name = "preference") {
  std::ostringstream out;
  out << "digraph " << detail::dot_quote(name) << " {\n";
  out << "  node [shape=ellipse];\n";
  for (std::size_t v = 0; v < pg.node_count(); ++v) {
    out << "  " << detail::dot_quote(pg.node_names()[v]);
    if (highlight.contains(v)) out << " [style=filled, fillcolor=lightgray]";
    out << ";\n";
  }
  for (const Arc& a : pg.arcs()) {
    out << "  " << detail::dot_quote(pg.node_names()[a.source]) << " -> "
        << detail::dot_quote(pg.node_names()[a.target]) << " [label=" << detail::dot_quote(to_string(a.weight))
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string to_dot(const PreferenceGraph& pg) { return to_dot(pg, ProfileSet(pg.node_count())); }

}  // namespace zsa
