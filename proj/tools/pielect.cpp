// Copyright 2026 The pielect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success or electoral, 1 refuted,
// 2 inconclusive, 3 usage or input error.

#include <CLI11.hpp>

#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "pielect/adversary.hpp"
#include "pielect/election.hpp"
#include "pielect/error.hpp"
#include "pielect/protocols.hpp"
#include "pielect/random.hpp"
#include "pielect/symmetry.hpp"
#include "pielect/syntax.hpp"

using namespace pielect;

namespace {

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 3;

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

bool looks_like(const std::string& text, const std::string& head) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    return line.compare(p, head.size(), head) == 0;
  }
  return false;
}

std::string orbit_sizes(const Automorphism& a) {
  std::string s;
  for (const auto& o : orbits(a).orbits) s += (s.empty() ? "" : ",") + std::to_string(o.size());
  return s;
}

struct Options {
  std::string input;
  std::size_t depth = 12;
  std::size_t states = 200000;
  std::size_t fresh = 1;
  std::string mode = "strict";
  std::string out;
  std::string sigma;
  std::size_t rounds = 50;
  std::uint64_t seed = 0;
  bool random = false;
  bool fair = false;
  bool well_balanced = false;
  bool network_only = false;
  std::string demo;
  std::string export_dir;
  std::size_t runs = 1;
  std::size_t workers = 1;
};

int cmd_parse(const Options& o) {
  std::string text = read_input(o.input);
  if (looks_like(text, "net")) {
    Network n = parse_network(text);
    std::cout << format_network(n) << "profile: " << classify(n).str() << "\n";
    for (std::size_t i = 0; i < n.size(); ++i) std::cout << "comp " << i << " profile: " << classify(n[i]).str() << "\n";
    return kOk;
  }
  if (looks_like(text, "node")) {
    std::cout << format_hypergraph(parse_hypergraph(text));
    return kOk;
  }
  Process p = parse_process(text);
  std::cout << print(p) << "\nprofile: " << classify(p).str() << "\n";
  return kOk;
}

int cmd_step(const Options& o) {
  Network n = parse_network(read_input(o.input));
  auto next = enumerate_net_steps(n, network_universe(n, o.fresh));
  std::cout << "# " << next.size() << " successor(s)\n";
  for (std::size_t i = 0; i < next.size(); ++i) std::cout << format_step(i, next[i].step, next[i].next) << "\n";
  return kOk;
}

int cmd_explore(const Options& o) {
  Network n = parse_network(read_input(o.input));
  std::map<std::string, std::size_t> seen{{canonical_key(n), 0}};
  std::deque<std::pair<Network, std::size_t>> queue{{n, 0}};
  std::size_t edges = 0, terminal = 0, frontier = 0;
  std::map<std::string, std::size_t> labels;
  while (!queue.empty()) {
    auto [cur, d] = queue.front();
    queue.pop_front();
    if (d >= o.depth || seen.size() >= o.states) {
      ++frontier;
      continue;
    }
    auto next = enumerate_net_steps(cur, network_universe(cur, o.fresh));
    if (next.empty()) ++terminal;
    for (auto& s : next) {
      ++edges;
      ++labels[s.step.label.str()];
      if (seen.emplace(canonical_key(s.next), seen.size()).second) queue.emplace_back(std::move(s.next), d + 1);
    }
  }
  std::cout << "states=" << seen.size() << " edges=" << edges << " terminal=" << terminal << " frontier=" << frontier
            << "\n";
  for (const auto& [l, c] : labels) std::cout << "label " << l << " count=" << c << "\n";
  return frontier ? kInconclusive : kOk;
}

int cmd_check(const Options& o) {
  Network n = parse_network(read_input(o.input));
  ExplorationBudget b;
  b.max_depth = o.depth;
  b.max_states = o.states;
  b.fresh_budget = o.fresh;
  if (o.mode == "strict")
    b.mode = ElectionMode::Strict;
  else if (o.mode == "permissive")
    b.mode = ElectionMode::Permissive;
  else
    throw PreconditionError("mode must be strict or permissive");
  ElectionVerdict v = check_electoral(n, b);
  std::cout << "electoral check (" << o.mode << " mode, depth " << o.depth << ", states " << o.states << ", fresh "
            << o.fresh << ")\n"
            << v.summary() << "\n";
  const std::optional<Computation>& c = v.counterexample ? v.counterexample : v.witness;
  if (c) {
    std::map<std::size_t, std::vector<std::string>> notes;
    if (v.loop_start) notes[*v.loop_start].push_back("# loop starts here");
    std::string trace = format_trace(*c, notes);
    if (!o.out.empty())
      write_output(o.out, trace);
    else
      std::cout << trace;
  }
  switch (v.status) {
    case ElectionVerdict::Status::Electoral:
      return kOk;
    case ElectionVerdict::Status::NotElectoral:
      return kRefuted;
    case ElectionVerdict::Status::Inconclusive:
      return kInconclusive;
  }
  return kInconclusive;
}

int cmd_automorphisms(const Options& o) {
  std::string text = read_input(o.input);
  std::vector<Automorphism> all;
  if (looks_like(text, "net")) {
    Network n = parse_network(text);
    all = o.network_only ? network_automorphisms(n) : all_automorphisms(hypergraph_of(n));
  } else {
    all = all_automorphisms(parse_hypergraph(text));
  }
  std::size_t shown = 0;
  for (const Automorphism& a : all) {
    if (o.well_balanced && !is_well_balanced(a)) continue;
    std::cout << format_automorphism(a) << " orbits=" << orbit_sizes(a) << "\n";
    ++shown;
  }
  std::cout << "# " << shown << " of " << all.size() << " automorphism(s)\n";
  return kOk;
}

int cmd_check_symmetry(const Options& o) {
  Network n = parse_network(read_input(o.input));
  if (!o.sigma.empty()) {
    Automorphism a = parse_automorphism(o.sigma, hypergraph_of(n));
    bool ok = is_symmetric(n, a);
    for (const auto& w : symmetry_witnesses(n, a)) std::cout << w << "\n";
    std::cout << (ok ? "symmetric" : "not symmetric") << "\n";
    return ok ? kOk : kRefuted;
  }
  bool all = true;
  for (const Automorphism& a : network_automorphisms(n)) {
    bool ok = is_symmetric(n, a);
    all = all && ok;
    std::cout << format_automorphism(a) << " " << (ok ? "symmetric" : "not-symmetric") << "\n";
  }
  std::cout << (all ? "fully symmetric" : "not fully symmetric") << "\n";
  return all ? kOk : kRefuted;
}

int cmd_quotient(const Options& o) {
  Network n = parse_network(read_input(o.input));
  if (o.sigma.empty()) throw PreconditionError("quotient needs --sigma");
  Quotient q = orbit_quotient(n, parse_automorphism(o.sigma, hypergraph_of(n)));
  std::cout << "orbits=" << q.p << " size=" << q.q << "\ntheta=" << format_automorphism(q.theta) << "\n";
  if (!o.out.empty())
    write_output(o.out, format_network(q.network));
  else
    std::cout << format_network(q.network);
  return is_symmetric(q.network, q.theta) ? kOk : kRefuted;
}

Automorphism default_sigma(const Network& n, AdversaryMode mode) {
  for (const Automorphism& a : network_automorphisms(n)) {
    if (a.is_identity()) continue;
    try {
      check_adversary_preconditions(n, a, mode);
      return a;
    } catch (const PreconditionError&) {
    }
  }
  throw PreconditionError("no automorphism satisfies the " + mode_name(mode) + " preconditions");
}

int cmd_adversary(const Options& o) {
  Network n = parse_network(read_input(o.input));
  AdversaryMode mode = parse_adversary_mode(o.mode == "strict" ? "pis" : o.mode);
  AdversaryOptions opts;
  opts.fresh_budget = o.fresh;
  opts.fair = o.fair;
  if (o.random) opts.seed = o.seed;
  Automorphism a = o.sigma.empty() ? default_sigma(n, mode) : parse_automorphism(o.sigma, hypergraph_of(n));
  AdversaryRun run = run_adversary(n, a, o.rounds, mode, opts);
  std::size_t outs = 0;
  for (const NetStep& s : run.computation.steps)
    for (const LocalMove& m : s.local)
      if (m.label.is_output() && m.label.channel.is_out()) ++outs;
  std::cout << "adversary mode=" << mode_name(mode) << " sigma=" << format_automorphism(a)
            << " rounds=" << run.rounds.size() << " steps=" << run.computation.length() << " out-actions=" << outs
            << (run.stuck ? " stuck" : "") << "\n";
  std::string trace = format_trace(run.computation, run.notes);
  if (!o.out.empty())
    write_output(o.out, trace);
  else
    std::cout << trace;
  return run.stuck ? kInconclusive : kOk;
}

void export_fixtures(const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::map<std::string, Fixture> fx{{"two-node", build_two_node()},
                                     {"two-node-sep", build_two_node_separate()},
                                     {"ring4", build_ring4()},
                                     {"pii-ring", build_pii_ring()},
                                     {"quotient", build_quotient_fixture()}};
  for (const auto& [name, f] : fx) {
    write_output(dir + "/" + name + ".net", format_network(f.network));
    write_output(dir + "/" + name + ".sigma", format_automorphism(f.automorphism) + "\n");
  }
  for (const auto& [name, h] : build_figure_hypergraphs()) {
    std::string file = name;
    for (char& c : file) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    write_output(dir + "/" + file + ".hyp", format_hypergraph(h));
  }
}

int demo_two_node(const Options& o) {
  Fixture f = build_two_node();
  Rng rng(o.seed);
  Computation c = random_run(f.network, rng, 100);
  std::cout << "two-node election, seed " << o.seed << "\n" << format_network(f.network);
  for (std::size_t i = 0; i < c.length(); ++i) {
    const NetStep& s = c.steps[i];
    std::cout << "step " << i << ": ";
    for (std::size_t j = 0; j < s.local.size(); ++j)
      std::cout << (j ? ", " : "") << "node " << s.local[j].component << " does " << s.local[j].label.str();
    std::cout << "\n";
  }
  if (!o.out.empty()) write_output(o.out, format_trace(c));
  auto ann = observe_winners(c);
  if (ann.size() != 2 || ann[0].second != ann[1].second) {
    std::cout << "no leader\n";
    return kRefuted;
  }
  std::cout << "leader = " << ann[0].second.str() << "\n";
  return kOk;
}

int demo_ring4(const Options& o) {
  Rng root(o.seed);
  std::vector<Rng> seeds;
  for (std::size_t i = 0; i < o.runs; ++i) seeds.push_back(root.split());
  std::vector<std::optional<RingRun>> slots(o.runs);
  std::size_t workers = std::max<std::size_t>(1, std::min(o.workers, o.runs));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < o.runs; i += workers) slots[i] = run_ring4(seeds[i]);
    });
  for (auto& t : pool) t.join();
  std::vector<RingRun> runs;
  for (auto& r : slots) runs.push_back(std::move(*r));

  std::cout << "ring4 election, seed " << o.seed << ", " << o.runs << " run(s)\n";
  bool all_ok = true;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const RingRun& r = runs[i];
    bool ok = r.terminated && r.winner && r.order_ok && r.dominations == 3;
    all_ok = all_ok && ok;
    std::cout << "run " << i << ": steps=" << r.computation.length() << " order=" << (r.order_ok ? "ok" : "broken")
              << " dominations=" << r.dominations;
    if (r.winner)
      std::cout << " leader = " << *r.winner << "\n";
    else
      std::cout << " no leader\n";
  }
  if (!o.out.empty() && !runs.empty()) write_output(o.out, format_trace(runs.front().computation));
  return all_ok ? kOk : kRefuted;
}

int cmd_demo(const Options& o) {
  if (!o.export_dir.empty()) export_fixtures(o.export_dir);
  if (o.demo == "two-node") return demo_two_node(o);
  if (o.demo == "ring4") return demo_ring4(o);
  if (o.demo == "export") return kOk;
  throw PreconditionError("demo must be two-node, ring4 or export");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pielect: pi-calculus election workbench"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* sc) { sc->add_option("input", o.input, "Input file, or - for stdin")->required(); };
  auto budget = [&](CLI::App* sc) {
    sc->add_option("--depth", o.depth, "Exploration depth")->check(CLI::PositiveNumber);
    sc->add_option("--states", o.states, "State budget")->check(CLI::PositiveNumber);
    sc->add_option("--fresh", o.fresh, "Fresh names per input")->check(CLI::PositiveNumber);
  };

  auto* parse = app.add_subcommand("parse", "Parse and print a term, network or hypergraph");
  input(parse);
  auto* step = app.add_subcommand("step", "List the successors of a network");
  input(step);
  step->add_option("--fresh", o.fresh)->check(CLI::PositiveNumber);
  auto* explore = app.add_subcommand("explore", "Breadth-first state exploration");
  input(explore);
  budget(explore);
  auto* check = app.add_subcommand("check-electoral", "Bounded electoral-system check");
  input(check);
  budget(check);
  check->add_option("--mode", o.mode, "strict or permissive");
  check->add_option("--out,--trace", o.out, "Trace output path");
  check->add_option("--workers", o.workers, "Accepted for interface symmetry; exploration is sequential");
  auto* autos = app.add_subcommand("automorphisms", "Enumerate hypergraph automorphisms");
  input(autos);
  autos->add_flag("--well-balanced", o.well_balanced, "Only well-balanced automorphisms");
  autos->add_flag("--network", o.network_only, "Only network automorphisms (network input)");
  auto* csym = app.add_subcommand("check-symmetry", "Check symmetry of a network");
  input(csym);
  csym->add_option("--sigma", o.sigma, "Automorphism, e.g. \"(0 1) {x0->x1,x1->x0}\"");
  auto* quot = app.add_subcommand("quotient", "Orbit quotient of a network");
  input(quot);
  quot->add_option("--sigma", o.sigma)->required();
  quot->add_option("--out", o.out);
  auto* adv = app.add_subcommand("adversary", "Build a symmetric computation without a leader");
  input(adv);
  adv->add_option("--mode", o.mode, "pis, pii or ccs")->required();
  adv->add_option("--rounds", o.rounds);
  adv->add_option("--seed", o.seed);
  adv->add_flag("--random", o.random, "Pick each round's first step at random");
  adv->add_flag("--fair", o.fair, "Rotate the starting component per round");
  adv->add_option("--sigma", o.sigma);
  adv->add_option("--fresh", o.fresh)->check(CLI::PositiveNumber);
  adv->add_option("--out,--trace", o.out);
  auto* demo = app.add_subcommand("demo", "Run a fixture election");
  demo->add_option("which", o.demo, "two-node, ring4 or export")->required();
  demo->add_option("--seed", o.seed);
  demo->add_option("--out,--trace", o.out);
  demo->add_option("--export", o.export_dir, "Write fixture files to this directory");
  demo->add_option("--runs", o.runs)->check(CLI::PositiveNumber);
  demo->add_option("--workers", o.workers)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (parse->parsed()) return cmd_parse(o);
    if (step->parsed()) return cmd_step(o);
    if (explore->parsed()) return cmd_explore(o);
    if (check->parsed()) return cmd_check(o);
    if (autos->parsed()) return cmd_automorphisms(o);
    if (csym->parsed()) return cmd_check_symmetry(o);
    if (quot->parsed()) return cmd_quotient(o);
    if (adv->parsed()) return cmd_adversary(o);
    if (demo->parsed()) return cmd_demo(o);
  } catch (const SymmetryBroken& e) {
    std::cerr << "symmetry broken: " << e.what() << "\n";
    return kRefuted;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kInconclusive;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
