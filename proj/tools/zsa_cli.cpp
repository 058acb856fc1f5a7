// zsa: command-line front end for the zero-sum attractor library.
//
//   zsa analyze   <game.json> [--dot FILE]
//   zsa simulate  <game.json> [--start uniform|random|VECTOR] [--horizon T] [--step H]
//                              [--csv FILE] [--svg FILE]
//   zsa verify    --scope graph|symmetrisation|embedding|lyapunov|nash|all --count N
//   zsa symmetrise <game.json> [-o FILE]
//
// Global flags: --seed (default 42), --out-dir (default .), --format json|text.
// Exit codes: 0 ok, 2 bad input, 3 invariant violation or failed check.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zsa/zsa.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInput = 2;
constexpr int kExitViolation = 3;

struct GlobalOptions {
  std::uint64_t seed = zsa::kDefaultSeed;
  std::string out_dir = ".";
  std::string format = "text";
};

/// Record of one invocation, written to <out-dir>/manifest.json.
class RunManifest {
 public:
  RunManifest(std::string command, const GlobalOptions& opts) : opts_(opts) {
    doc_["command"] = std::move(command);
    doc_["seed"] = opts.seed;
    doc_["out_dir"] = opts.out_dir;
    doc_["outputs"] = json::array();
    doc_["config"] = json::object();
  }

  void set_input(const std::string& path) { doc_["input"] = path; }
  json& config() { return doc_["config"]; }

  /// Relative paths resolve against --out-dir.
  std::string resolve(const std::string& path) const {
    fs::path p(path);
    if (p.is_absolute()) return p.string();
    return (fs::path(opts_.out_dir) / p).lexically_normal().string();
  }

  void write_file(const std::string& path, const std::string& contents) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << contents;
    doc_["outputs"].push_back(path);
  }

  void finish(bool passed) {
    doc_["passed"] = passed;
    const std::string path = resolve("manifest.json");
    doc_["outputs"].push_back(path);
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << doc_.dump(2) << '\n';
  }

 private:
  GlobalOptions opts_;
  json doc_;
};

// --- start vectors ----------------------------------------------------------

Eigen::VectorXd parse_vector(const std::string& text, std::size_t expected) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument("trailing characters");
      values.push_back(v);
    } catch (const std::exception&) {
      throw zsa::ParseError("invalid number '" + item + "' in start vector");
    }
  }
  if (values.size() != expected) {
    throw zsa::ParseError("start vector has " + std::to_string(values.size()) + " entries, expected " +
                          std::to_string(expected));
  }
  Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  if (!v.allFinite() || v.minCoeff() < 0.0) throw zsa::ParseError("start vector entries must be finite and >= 0");
  if (std::abs(v.sum() - 1.0) > 1e-6) throw zsa::ParseError("start vector must sum to 1");
  return v / v.sum();
}

/// "uniform", "random", or "x1,x2,...[;y1,y2,...]".
zsa::MixedProfile parse_start(const zsa::Game& g, const std::string& spec, std::uint64_t seed) {
  if (spec == "uniform") return zsa::uniform_profile(g);
  if (spec == "random") {
    zsa::GameSampler sampler(seed);
    return sampler.interior_point(g);
  }
  const auto semi = spec.find(';');
  if (g.is_symmetric()) {
    if (semi != std::string::npos) throw zsa::ParseError("symmetric games take a single start vector");
    return zsa::MixedProfile::symmetric(parse_vector(spec, g.rows()));
  }
  if (semi == std::string::npos) throw zsa::ParseError("non-symmetric games take 'x1,...;y1,...' start vectors");
  return zsa::MixedProfile::pair(parse_vector(spec.substr(0, semi), g.rows()),
                                 parse_vector(spec.substr(semi + 1), g.cols()));
}

json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json profile_json(const zsa::MixedProfile& z) {
  json out;
  out["player1"] = vec_json(z.first);
  if (z.second.size()) out["player2"] = vec_json(z.second);
  return out;
}

// --- commands ---------------------------------------------------------------

int cmd_analyze(const GlobalOptions& opts, const std::string& game_path, const std::string& dot_path) {
  RunManifest manifest("analyze", opts);
  manifest.set_input(game_path);
  const zsa::Game g = zsa::load_game(game_path);
  const zsa::Analysis a = zsa::analyze(g);
  if (!dot_path.empty()) {
    manifest.write_file(manifest.resolve(dot_path), zsa::to_dot(a.graph, a.sink.profiles()));
  }
  if (opts.format == "json") {
    std::cout << zsa::analysis_to_json(a).dump(2) << '\n';
  } else {
    std::cout << zsa::analysis_to_text(a);
  }
  const bool passed = a.nash.passed();
  manifest.finish(passed);
  if (!passed) {
    std::cerr << "error: equilibrium support violates the preference-graph structure\n";
    return kExitViolation;
  }
  return kExitOk;
}

struct SimulateOptions {
  std::string start = "uniform";
  double horizon = 200.0;
  double step = 0.01;
  std::string method = "rk4-log";
  bool no_renormalize = false;
  std::string csv = "trajectory.csv";
  std::string svg;
};

int cmd_simulate(const GlobalOptions& opts, const std::string& game_path, const SimulateOptions& so) {
  RunManifest manifest("simulate", opts);
  manifest.set_input(game_path);
  const zsa::Game g = zsa::load_game(game_path);
  const zsa::MixedProfile z0 = parse_start(g, so.start, opts.seed);

  zsa::IntegratorConfig cfg;
  cfg.horizon = so.horizon;
  cfg.step = so.step;
  cfg.method = zsa::parse_method(so.method);
  cfg.renormalize = !so.no_renormalize;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw zsa::ParseError(e.what());
  }
  manifest.config() = {{"start", so.start},   {"horizon", cfg.horizon},         {"step", cfg.step},
                       {"method", so.method}, {"renormalize", cfg.renormalize}};

  const zsa::SinkComponent sink = zsa::sink_component(zsa::build_graph(g));
  const zsa::Trajectory tr = zsa::integrate(g, z0, cfg, sink.profiles());

  manifest.write_file(manifest.resolve(so.csv), zsa::trajectory_csv(g, tr));
  if (!so.svg.empty()) manifest.write_file(manifest.resolve(so.svg), zsa::trajectory_svg(tr));

  json report;
  report["steps"] = tr.size() - 1;
  report["final_time"] = tr.times.back();
  report["final_x_H"] = tr.mass.back();
  report["final_dist_content"] = tr.distance.back();
  report["final_state"] = profile_json(tr.states.back());
  report["time_average"] = profile_json(zsa::time_average(tr));
  double max_simplex_error = 0.0;
  for (const auto& z : tr.states) {
    max_simplex_error = std::max(max_simplex_error, std::abs(z.first.sum() - 1.0));
    if (z.second.size()) max_simplex_error = std::max(max_simplex_error, std::abs(z.second.sum() - 1.0));
  }
  report["max_simplex_error"] = max_simplex_error;

  // For a fully mixed equilibrium sum x*_s log x_s is a first integral.
  const zsa::NashCertificate nash = zsa::solve_nash(g);
  const bool interior = nash.equilibrium.first.minCoeff() > zsa::kSupportThreshold &&
                        (g.is_symmetric() || nash.equilibrium.second.minCoeff() > zsa::kSupportThreshold);
  const bool start_interior = z0.first.minCoeff() > 0.0 && (g.is_symmetric() || z0.second.minCoeff() > 0.0);
  if (interior && start_interior) {
    const double initial = zsa::first_integral(g, nash.equilibrium, tr.states.front());
    double drift = 0.0, last = initial;
    for (const auto& z : tr.states) {
      last = zsa::first_integral(g, nash.equilibrium, z);
      drift = std::max(drift, std::abs(last - initial));
    }
    report["first_integral"] = {{"initial", initial}, {"final", last}, {"max_drift", drift}};
  } else {
    report["first_integral"] = nullptr;
  }

  if (opts.format == "json") {
    std::cout << report.dump(2) << '\n';
  } else {
    std::cout << "steps: " << tr.size() - 1 << ", final t = " << zsa::format_double(tr.times.back()) << '\n';
    std::cout << "final x_H = " << zsa::format_double(tr.mass.back())
              << ", dist_content = " << zsa::format_double(tr.distance.back()) << '\n';
    std::cout << "max simplex error = " << zsa::format_double(max_simplex_error) << '\n';
    if (!report["first_integral"].is_null()) {
      std::cout << "first integral sum x*log x: initial " << zsa::format_double(report["first_integral"]["initial"])
                << ", max drift " << zsa::format_double(report["first_integral"]["max_drift"]) << '\n';
    }
  }
  manifest.finish(true);
  return kExitOk;
}

int cmd_verify(const GlobalOptions& opts, const std::string& scope, std::size_t count) {
  RunManifest manifest("verify", opts);
  manifest.config() = {{"scope", scope}, {"count", count}};
  if (count == 0) std::cerr << "warning: --count 0 checks nothing; reporting a vacuous pass\n";
  const auto results = zsa::run_verification(scope, count, opts.seed);

  bool passed = true;
  json report;
  report["scope"] = scope;
  report["count"] = count;
  report["seed"] = opts.seed;
  report["suites"] = json::array();
  for (const auto& r : results) {
    passed = passed && r.passed();
    report["suites"].push_back(r.to_json());
    if (r.counterexample) {
      manifest.write_file(manifest.resolve("counterexample_" + r.name + ".json"),
                          zsa::game_to_json(*r.counterexample).dump(2) + "\n");
    }
  }
  report["verdict"] = passed ? "PASS" : "FAIL";

  if (opts.format == "json") {
    std::cout << report.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.games << " games, " << r.checks
                << " checks, " << r.failures << " failures, max residual " << zsa::format_double(r.max_residual);
      if (!r.passed()) std::cout << " (" << r.first_failure << ")";
      std::cout << '\n';
    }
  }
  manifest.finish(passed);
  return passed ? kExitOk : kExitViolation;
}

int cmd_symmetrise(const GlobalOptions& opts, const std::string& game_path, const std::string& out_path) {
  RunManifest manifest("symmetrise", opts);
  manifest.set_input(game_path);
  const zsa::Game g = zsa::load_game(game_path);
  if (g.is_symmetric()) throw zsa::ParseError("symmetrise expects a non-symmetric game");
  const zsa::SymmetrisedGame sm = zsa::symmetrise(g);
  const std::string text = zsa::game_to_json(sm.as_game()).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    manifest.write_file(manifest.resolve(out_path), text);
  }
  manifest.finish(sm.is_antisymmetric());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unique replicator attractors of two-player zero-sum games"};
  app.require_subcommand(1);
  GlobalOptions opts;
  app.add_option("--seed", opts.seed, "PRNG seed")->capture_default_str();
  app.add_option("--out-dir", opts.out_dir, "Directory for emitted files")->capture_default_str();
  app.add_option("--format", opts.format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  // Global flags are accepted after the subcommand too; subcommands inherit
  // this setting when they are created.
  app.fallthrough();

  std::string game_path, dot_path, out_path, scope = "all";
  std::size_t count = 100;
  SimulateOptions so;

  auto* analyze = app.add_subcommand("analyze", "Preference graph, sink component, attractor and Nash certificate");
  analyze->add_option("game", game_path, "Game file (JSON)")->required();
  analyze->add_option("--dot", dot_path, "Write the preference graph as DOT with the sink shaded");

  auto* simulate = app.add_subcommand("simulate", "Integrate the replicator and write CSV/SVG");
  simulate->add_option("game", game_path, "Game file (JSON)")->required();
  simulate->add_option("--start", so.start, "uniform | random | x1,...[;y1,...]")->capture_default_str();
  simulate->add_option("--horizon", so.horizon, "Final time")->capture_default_str();
  simulate->add_option("--step", so.step, "Fixed step size")->capture_default_str();
  simulate->add_option("--method", so.method, "rk4-log | rk4-direct")->capture_default_str();
  simulate->add_flag("--no-renormalize", so.no_renormalize, "Skip projection in rk4-direct");
  simulate->add_option("--csv", so.csv, "Trajectory CSV path")->capture_default_str();
  simulate->add_option("--svg", so.svg, "SVG chart of x_H and dist_content");

  auto* verify = app.add_subcommand("verify", "Run the randomized invariant suites");
  verify->add_option("--scope", scope, "Suite to run")->check(CLI::IsMember(zsa::verify_scopes()))->capture_default_str();
  verify->add_option("--count", count, "Number of random games")->capture_default_str();

  auto* symmetrise = app.add_subcommand("symmetrise", "Write the von Neumann symmetrisation as a game file");
  symmetrise->add_option("game", game_path, "Game file (JSON)")->required();
  symmetrise->add_option("-o,--output", out_path, "Output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*analyze) return cmd_analyze(opts, game_path, dot_path);
    if (*simulate) return cmd_simulate(opts, game_path, so);
    if (*verify) return cmd_verify(opts, scope, count);
    if (*symmetrise) return cmd_symmetrise(opts, game_path, out_path);
  } catch (const zsa::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const zsa::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
