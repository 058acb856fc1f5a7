#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "zsa/content.hpp"
#include "zsa/equilibrium.hpp"
#include "zsa/game.hpp"
#include "zsa/preference_graph.hpp"
#include "zsa/trajectory_io.hpp"

namespace zsa {

/// Everything `analyze` reports about a game: its preference graph, the
/// sink component, the attractor as a union of maximal subgames, and a
/// Nash certificate.
struct Analysis {
  Game game;
  PreferenceGraph graph;
  SccPartition partition;
  SinkComponent sink;
  Content attractor;
  NashCertificate nash;
};

/// Throws InvariantViolation when the graph has several sink components.
inline Analysis analyze(const Game& g) {
  PreferenceGraph pg = build_graph(g);
  SccPartition part = scc(pg);
  SinkComponent sink = sink_component(pg, part);
  Content attractor = content_of(g, sink.profiles());
  NashCertificate nash = solve_nash(g, pg, sink);
  return Analysis{g, std::move(pg), std::move(part), std::move(sink), std::move(attractor), std::move(nash)};
}

inline nlohmann::json analysis_to_json(const Analysis& a) {
  const Game& g = a.game;
  nlohmann::json out;
  out["mode"] = to_string(g.mode());
  out["rows"] = g.rows();
  out["cols"] = g.cols();
  nlohmann::json graph;
  graph["nodes"] = a.graph.node_count();
  graph["arcs"] = a.graph.arcs().size();
  graph["tied_pairs"] = a.graph.tie_count();
  graph["components"] = a.partition.component_count();
  graph["strongly_connected"] = a.partition.component_count() == 1;
  out["preference_graph"] = std::move(graph);
  nlohmann::json comps = nlohmann::json::array();
  for (std::size_t c = 0; c < a.partition.component_count(); ++c) {
    nlohmann::json names = nlohmann::json::array();
    for (std::size_t v : a.partition.members[c]) names.push_back(a.graph.node_names()[v]);
    comps.push_back(std::move(names));
  }
  out["components"] = std::move(comps);
  out["attractor"] = content_report(g, a.attractor);
  out["nash"] = certificate_to_json(g, a.nash);
  return out;
}

inline std::string analysis_to_text(const Analysis& a) {
  const Game& g = a.game;
  std::ostringstream out;
  out << "game: " << to_string(g.mode()) << ' ' << g.rows() << 'x' << g.cols() << '\n';
  out << "preference graph: " << a.graph.node_count() << " nodes, " << a.graph.arcs().size() << " arcs, "
      << a.graph.tie_count() << " tied pairs, " << a.partition.component_count() << " strongly connected components\n";
  out << "sink component (" << a.sink.size() << " profiles):";
  for (std::size_t i : a.sink.profiles().indices()) out << " (" << g.profile_name(i) << ')';
  out << '\n';
  out << "attractor = content of the sink = union of " << a.attractor.maximal_subgames.size()
      << " maximal subgame(s):\n";
  for (const Subgame& s : a.attractor.maximal_subgames) out << "  " << describe(g, s) << '\n';
  if (a.sink.is_everything()) out << "  (the whole strategy space)\n";
  out << "nash equilibrium:\n  x = (";
  for (Eigen::Index i = 0; i < a.nash.equilibrium.first.size(); ++i) {
    out << (i ? ", " : "") << format_double(a.nash.equilibrium.first[i]);
  }
  out << ")\n";
  if (!g.is_symmetric()) {
    out << "  y = (";
    for (Eigen::Index i = 0; i < a.nash.equilibrium.second.size(); ++i) {
      out << (i ? ", " : "") << format_double(a.nash.equilibrium.second[i]);
    }
    out << ")\n";
  }
  out << "  value = " << format_double(a.nash.value) << '\n';
  out << "  support = " << describe(g, a.nash.support) << '\n';
  out << "  support inside sink: " << (a.nash.in_sink ? "yes" : "no")
      << ", induced subgraph strongly connected: " << (a.nash.support_strongly_connected ? "yes" : "no");
  if (a.nash.tied_pairs_in_support) out << " (" << a.nash.tied_pairs_in_support << " tied pairs)";
  out << "\n  verdict: " << (a.nash.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace zsa
