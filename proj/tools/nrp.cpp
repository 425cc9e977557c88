// nrp: command-line front end for the rotation puzzle engine.

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nrp/group/bfs.hpp"
#include "nrp/group/movement_graph.hpp"
#include "nrp/group/s6.hpp"
#include "nrp/group/schreier_sims.hpp"
#include "nrp/io.hpp"
#include "nrp/macros.hpp"
#include "nrp/placement.hpp"
#include "nrp/scramble.hpp"
#include "nrp/service.hpp"
#include "nrp/solvability.hpp"
#include "nrp/solver.hpp"

namespace {

using json = nlohmann::json;
using namespace nrp;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

PuzzleSpec spec_of(const std::vector<int>& v) {
  if (v.size() != 3) throw Error("--spec takes three integers: n m b");
  PuzzleSpec s{v[0], v[1], v[2]};
  s.validate();
  return s;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

json checks_json(const SolvabilityVerdict& v) { return service::verdict_to_json(v); }

void print_verdict_text(const SolvabilityVerdict& v) {
  std::cout << "branch: " << branch_name(v.branch) << " (" << branch_description(v.branch) << ")\n";
  for (const auto& c : v.checks) std::cout << "check " << c.name << ": " << (c.passed ? "pass" : "fail") << "\n";
  std::cout << "solvable: " << (v.solvable ? "yes" : "no") << "\n";
}

int cmd_scramble(const std::vector<int>& spec, std::uint64_t seed, int k, bool as_json) {
  const auto s = scramble(spec_of(spec), seed, k);
  if (as_json) {
    print_json({{"spec", service::spec_to_json(s.board.spec())},
                {"grid", service::grid_to_json(s.board)},
                {"moves", serialize_moves(s.moves)}});
  } else {
    std::cout << serialize_board(s.board);
  }
  return kExitOk;
}

int cmd_check(const std::string& file, bool as_json) {
  const auto v = is_solvable(parse_board(read_input(file)));
  if (as_json) {
    print_json(checks_json(v));
  } else {
    print_verdict_text(v);
  }
  return v.solvable ? kExitOk : kExitNegative;
}

int cmd_solve(const std::string& file, bool verify, bool as_json) {
  const Board board = parse_board(read_input(file));
  const auto r = solve(board);
  bool verified = false;
  if (r.solved() && verify) {
    if (!apply_sequence(board, r.moves).is_solved()) throw VerificationFailure("--verify: sequence does not solve");
    verified = true;
  }
  if (as_json) {
    json out = checks_json(r.verdict);
    if (r.solved()) {
      out["moves"] = serialize_moves(r.moves);
      out["length"] = r.moves.size();
      out["verified"] = verified;
      out["stats"] = {{"strategy", r.stats.strategy},
                      {"moves_raw", r.stats.moves_raw},
                      {"macros_invoked", r.stats.macros_invoked},
                      {"parity_fix", r.stats.parity_fix},
                      {"elapsed_ms", r.stats.elapsed_ms}};
    }
    print_json(out);
  } else if (r.solved()) {
    std::cout << serialize_moves(r.moves) << "\n";
    if (verify) std::cerr << "verified: " << r.moves.size() << " moves reach the solved board\n";
  } else {
    print_verdict_text(r.verdict);
  }
  return r.solved() ? kExitOk : kExitNegative;
}

int cmd_apply(const std::string& file, const std::string& moves, const std::string& moves_file, bool as_json) {
  const Board board = parse_board(read_input(file));
  const std::string text = moves_file.empty() ? moves : read_input(moves_file);
  const Board next = apply_sequence(board, parse_moves(text));
  if (as_json) {
    print_json({{"spec", service::spec_to_json(next.spec())}, {"grid", service::grid_to_json(next)}});
  } else {
    std::cout << serialize_board(next);
  }
  return kExitOk;
}

int cmd_enumerate(const std::vector<int>& spec_v, const std::string& mode, std::uint64_t limit, bool as_json) {
  const PuzzleSpec spec = spec_of(spec_v);
  const bool all = mode == "all";
  json out{{"spec", service::spec_to_json(spec)}};
  std::vector<group::BigInt> values;
  int status = kExitOk;
  if (all || mode == "bfs") {
    try {
      const auto r = group::bfs_reachable(spec, limit);
      out["bfs"] = std::to_string(r.count);
      values.emplace_back(r.count);
    } catch (const LimitExceeded& e) {
      out["bfs_refused"] = e.what();
      if (!all) status = kExitError;
    }
  }
  if (all || mode == "order") {
    try {
      const auto o = group::group_order(spec);
      out["order"] = o.str();
      values.push_back(o);
    } catch (const LimitExceeded& e) {
      out["order_refused"] = e.what();
      if (!all) status = kExitError;
    }
  }
  if (all || mode == "predict") {
    const auto p = predicted_reachable_count(spec);
    out["predicted"] = p.str();
    out["branch"] = std::string(branch_name(classify_spec(spec)));
    values.push_back(p);
  }
  bool agree = true;
  for (const auto& v : values) agree = agree && v == values.front();
  out["agree"] = agree;
  if (!agree) status = kExitError;
  if (as_json) {
    print_json(out);
  } else {
    for (const char* k : {"bfs", "bfs_refused", "order", "order_refused", "predicted", "branch"}) {
      if (out.contains(k)) std::cout << k << ": " << out[k].get<std::string>() << "\n";
    }
    std::cout << "agree: " << (agree ? "yes" : "no") << "\n";
  }
  return status;
}

std::string cycle_type_string(const std::vector<int>& t) {
  if (t.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "+" : "") + std::to_string(t[k]);
  return s;
}

int cmd_automorphism(int words, std::uint64_t seed, bool as_json) {
  const auto [g0, g1] = group::build_movement_graphs();
  const auto iso = group::find_isomorphism(g0, g1);
  std::size_t word_failures = 0;
  if (!iso.bijections.empty()) {
    const auto& f = iso.bijections.front();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(1, 24), letter(0, 1), q(1, 3);
    for (int w = 0; w < words; ++w) {
      std::vector<std::pair<char, int>> word(static_cast<std::size_t>(len(rng)));
      for (auto& [l, k] : word) {
        l = letter(rng) ? 'X' : 'Y';
        k = q(rng);
      }
      for (int p = 0; p < static_cast<int>(g0.nodes.size()); ++p) {
        int a = p, b = f[p];
        for (const auto& [l, k] : word) {
          a = g0.step(a, l, k);
          b = g1.step(b, l, k);
        }
        word_failures += f[a] != b;
      }
    }
  }
  const auto psi = group::construct_psi();
  const auto rep = group::verify_outer(psi.psi);
  const bool ok = !iso.bijections.empty() && word_failures == 0 && rep.ok();

  json table = json::array();
  for (const auto& [from, to] : rep.class_table) {
    json images = json::array();
    for (const auto& t : to) images.push_back(cycle_type_string(t));
    table.push_back({{"class", cycle_type_string(from)}, {"images", images}});
  }
  json phi = json::array();
  if (!iso.bijections.empty()) {
    for (std::size_t p = 0; p < g0.nodes.size(); ++p) {
      phi.push_back({{"pair", group::to_string(g0.nodes[p])},
                     {"partition", group::to_string(g1.nodes[iso.bijections.front()[p]])}});
    }
  }
  const json out{{"graph_nodes", {g0.nodes.size(), g1.nodes.size()}},
                 {"isomorphisms", iso.bijections.size()},
                 {"candidates_tried", iso.candidates_tried},
                 {"candidates_pruned", iso.candidates_pruned},
                 {"phi", phi},
                 {"words_checked", words},
                 {"word_failures", word_failures},
                 {"psi_states", psi.states},
                 {"psi_conflicts", psi.conflicts},
                 {"homomorphism_pairs", rep.pairs_checked},
                 {"homomorphism_failures", rep.homomorphism_failures},
                 {"bijective", rep.bijective},
                 {"class_table", table},
                 {"transposition_to_triple", rep.transposition_to_triple},
                 {"square_inner", rep.square_conjugator.has_value()},
                 {"square_conjugator", rep.square_conjugator ? rep.square_conjugator->to_string() : ""},
                 {"ok", ok}};
  if (as_json) {
    print_json(out);
  } else {
    std::cout << "movement graphs: " << g0.nodes.size() << " pairs, " << g1.nodes.size() << " partitions\n";
    std::cout << "structure-preserving bijections: " << iso.bijections.size() << " (" << iso.candidates_tried
              << " seeds tried, " << iso.candidates_pruned << " pruned by signature)\n";
    for (const auto& row : phi) {
      std::cout << "  " << row["pair"].get<std::string>() << " -> " << row["partition"].get<std::string>() << "\n";
    }
    std::cout << "equivariance on " << words << " random words: " << word_failures << " failures\n";
    std::cout << "psi from " << psi.states << " states, conflicts " << psi.conflicts << "\n";
    std::cout << "homomorphism: " << rep.homomorphism_failures << " failures in " << rep.pairs_checked << " pairs\n";
    std::cout << "bijective: " << (rep.bijective ? "yes" : "no") << "\n";
    std::cout << "class table:\n";
    for (const auto& row : table) {
      std::cout << "  " << row["class"].get<std::string>() << " ->";
      for (const auto& t : row["images"]) std::cout << " " << t.get<std::string>();
      std::cout << "\n";
    }
    std::cout << "transpositions map to 2+2+2: " << (rep.transposition_to_triple ? "yes" : "no") << "\n";
    std::cout << "psi^2 inner: "
              << (rep.square_conjugator ? "yes, conjugator " + rep.square_conjugator->to_string() : "no") << "\n";
    std::cout << "ok: " << (ok ? "yes" : "no") << "\n";
  }
  return ok ? kExitOk : kExitError;
}

json macro_json(const Macro& m) {
  json letters = json::object();
  for (const auto& [l, a] : m.letters) letters[std::string(1, l)] = json::array({a.i, a.j});
  json fp = json::array();
  for (const auto& c : m.footprint) fp.push_back(json::array({c.i, c.j}));
  return {{"name", m.name},
          {"word", m.word},
          {"board", service::spec_to_json(m.board)},
          {"anchors", letters},
          {"length", m.seq.size()},
          {"cycle_type", m.permutation().cycle_type()},
          {"moves", serialize_moves(m.seq)},
          {"footprint", fp}};
}

int cmd_macros(int n, bool as_json) {
  json list = json::array();
  for (const auto& m : macros::catalog(n)) list.push_back(macro_json(m));
  if (as_json) {
    print_json({{"macros", list}});
    return kExitOk;
  }
  for (const auto& m : list) {
    std::cout << m["name"].get<std::string>() << " " << m["word"].get<std::string>() << " on "
              << PuzzleSpec{m["board"][0], m["board"][1], m["board"][2]}.to_string() << ": " << m["length"]
              << " moves, cycle type " << cycle_type_string(m["cycle_type"].get<std::vector<int>>()) << ", "
              << m["footprint"].size() << " cells moved\n";
  }
  return kExitOk;
}

std::vector<Coord> parse_cells(const std::string& text) {
  std::vector<Coord> out;
  for (auto tok : detail::split_ws(text)) {
    const auto m = parse_move(std::string(tok) + ":1");
    out.push_back(m.anchor);
  }
  return out;
}

int cmd_place(int n, const std::string& cells_text, bool as_json) {
  const auto cells = parse_cells(cells_text);
  if (cells.size() != 3) throw Error("--cells takes three cells, e.g. \"(4,2) (1,5) (6,6)\"");
  const PuzzleSpec frame = macros::xy_board(n);
  const auto steps = placement::place_three_steps(n, {cells[0], cells[1], cells[2]});
  std::vector<Coord> pos = cells;
  json out = json::array();
  for (const auto& st : steps) {
    for (auto& p : pos) {
      for (const auto& mv : st.moves) p = rotate_coord(frame.b, mv, p);
    }
    json at = json::array();
    for (const auto& p : pos) at.push_back(json::array({p.i, p.j}));
    out.push_back({{"step", st.label}, {"moves", serialize_moves(st.moves)}, {"tokens", at}});
  }
  if (as_json) {
    print_json({{"n", n}, {"steps", out}});
    return kExitOk;
  }
  for (const auto& st : out) {
    std::cout << st["step"].get<std::string>() << " [" << st["moves"].get<std::string>() << "] ->";
    for (const auto& p : st["tokens"]) std::cout << " (" << p[0] << "," << p[1] << ")";
    std::cout << "\n";
  }
  return kExitOk;
}

// Shared rotation vectors: random boards and moves with their images.
int cmd_vectors(int count, std::uint64_t seed) {
  const std::vector<PuzzleSpec> specs{{2, 2, 2}, {2, 3, 2}, {3, 3, 2}, {3, 4, 3}, {4, 5, 3},
                                      {4, 5, 4}, {5, 6, 5}, {6, 7, 6}, {3, 7, 3}, {4, 6, 2}};
  std::mt19937_64 rng(seed);
  json vec = json::array();
  for (int k = 0; k < count; ++k) {
    const PuzzleSpec spec = specs[static_cast<std::size_t>(k) % specs.size()];
    const auto start = scramble(spec, rng(), 1 + static_cast<int>(rng() % 20)).board;
    const auto moves = legal_moves(spec);
    const Move mv = moves[rng() % moves.size()];
    const Board out = apply_move(start, mv);
    vec.push_back({{"spec", service::spec_to_json(spec)},
                   {"grid", service::grid_to_json(start)},
                   {"move", {{"anchor", {mv.anchor.i, mv.anchor.j}}, {"quarters", mv.quarters}}},
                   {"token", serialize_move(mv)},
                   {"expected", service::grid_to_json(out)}});
  }
  print_json({{"description", "counter-clockwise block rotations: grid after applying move"},
              {"seed", seed},
              {"vectors", vec}});
  return kExitOk;
}

int cmd_api(const std::string& endpoint) {
  const std::string body{std::istreambuf_iterator<char>(std::cin), {}};
  const auto r = service::handle_text(endpoint, body);
  print_json(r.body);
  return r.status == 200 ? kExitOk : kExitError;
}

int cmd_serve(const std::string& host, int port) {
  httplib::Server srv;
  auto reply = [](httplib::Response& res, const service::Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  for (const std::string ep : {"check", "solve", "apply", "hint", "scramble"}) {
    srv.Post("/api/" + ep, [ep, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, service::handle_text(ep, req.body));
    });
  }
  srv.Get("/api/specs", [reply](const httplib::Request&, httplib::Response& res) {
    reply(res, service::handle("specs", {}));
  });
  if (!srv.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  std::cerr << "listening on http://" << host << ":" << port << "\n";
  return srv.listen_after_bind() ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Number rotation puzzle engine"};
  app.require_subcommand(1);
  bool as_json = false;

  std::vector<int> spec;
  std::uint64_t seed = 0;
  int k = 30;
  auto* sc = app.add_subcommand("scramble", "Write a seeded scramble as a board file");
  sc->add_option("--spec", spec, "n m b")->expected(3)->required();
  sc->add_option("--seed", seed);
  sc->add_option("--moves", k, "number of random moves")->check(CLI::NonNegativeNumber);
  sc->add_flag("--json", as_json);

  std::string file = "-";
  auto* ck = app.add_subcommand("check", "Classify a board (exit 0 solvable, 2 unsolvable)");
  ck->add_option("board", file, "board file, - for stdin");
  ck->add_flag("--json", as_json);

  bool verify = false;
  auto* sv = app.add_subcommand("solve", "Print a move sequence solving a board");
  sv->add_option("board", file, "board file, - for stdin");
  sv->add_flag("--verify", verify, "re-apply the sequence and require the solved board");
  sv->add_flag("--json", as_json);

  std::string moves, moves_file;
  auto* ap = app.add_subcommand("apply", "Apply moves to a board");
  ap->add_option("board", file, "board file, - for stdin");
  ap->add_option("--moves", moves, "move tokens such as \"(1,1):1 (1,2):3\"");
  ap->add_option("--moves-file", moves_file);
  ap->add_flag("--json", as_json);

  std::string mode = "all";
  std::uint64_t limit = 5'000'000;
  auto* en = app.add_subcommand("enumerate", "Reachable-set size by BFS, group order, or prediction");
  en->add_option("--spec", spec, "n m b")->expected(3)->required();
  en->add_option("--mode", mode)->check(CLI::IsMember({"bfs", "order", "predict", "all"}));
  en->add_option("--limit", limit, "BFS state cap");
  en->add_flag("--json", as_json);

  int words = 1000;
  auto* au = app.add_subcommand("automorphism", "Movement-graph isomorphism and the outer automorphism of S6");
  au->add_option("--words", words, "random words for the equivariance check");
  au->add_option("--seed", seed);
  au->add_flag("--json", as_json);

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* se = app.add_subcommand("serve", "Serve the JSON API");
  se->add_option("--host", host);
  se->add_option("--port", port);

  int n = 6;
  auto* ma = app.add_subcommand("macros", "Dump the macro catalog");
  ma->add_option("--n", n, "frame size for the (n,n+1,n) macros")->check(CLI::Range(5, 40));
  ma->add_flag("--json", as_json);

  std::string cells;
  auto* pl = app.add_subcommand("place", "Replay a three-token placement step by step");
  pl->add_option("--n", n)->check(CLI::Range(5, 40));
  pl->add_option("--cells", cells, "three frame cells, e.g. \"(4,2) (1,5) (6,6)\"")->required();
  pl->add_flag("--json", as_json);

  int count = 240;
  auto* ve = app.add_subcommand("vectors", "Generate shared rotation test vectors");
  ve->add_option("--count", count);
  ve->add_option("--seed", seed);

  std::string endpoint;
  auto* api = app.add_subcommand("api", "Answer one API request read from stdin");
  api->add_option("endpoint", endpoint)->required()->check(
      CLI::IsMember({"check", "solve", "apply", "hint", "scramble", "specs"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*sc) return cmd_scramble(spec, seed, k, as_json);
    if (*ck) return cmd_check(file, as_json);
    if (*sv) return cmd_solve(file, verify, as_json);
    if (*ap) return cmd_apply(file, moves, moves_file, as_json);
    if (*en) return cmd_enumerate(spec, mode, limit, as_json);
    if (*au) return cmd_automorphism(words, seed, as_json);
    if (*se) return cmd_serve(host, port);
    if (*ma) return cmd_macros(n, as_json);
    if (*pl) return cmd_place(n, cells, as_json);
    if (*ve) return cmd_vectors(count, seed);
    if (*api) return cmd_api(endpoint);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
