#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nrp/board.hpp"
#include "nrp/error.hpp"
#include "nrp/io.hpp"
#include "nrp/scramble.hpp"
#include "nrp/solvability.hpp"
#include "nrp/solver.hpp"

// Request handlers behind the JSON API. Transport-free: each handler takes
// the parsed body and returns (HTTP status, response body).
namespace nrp::service {

using json = nlohmann::json;

// Side bound for boards accepted over the API.
inline constexpr int kMaxSide = 16;

struct Response {
  int status = 200;
  json body;
};

inline json spec_to_json(const PuzzleSpec& s) { return json::array({s.n, s.m, s.b}); }

inline json grid_to_json(const Board& b) {
  json rows = json::array();
  for (int i = 1; i <= b.spec().n; ++i) {
    json row = json::array();
    for (int j = 1; j <= b.spec().m; ++j) row.push_back(b.at({i, j}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline PuzzleSpec spec_from_json(const json& body) {
  if (!body.contains("spec")) throw ParseError("missing field 'spec'");
  const auto& s = body.at("spec");
  if (!s.is_array() || s.size() != 3) throw ParseError("'spec' must be [n, m, b]");
  for (const auto& x : s) {
    if (!x.is_number_integer()) throw ParseError("'spec' entries must be integers");
  }
  PuzzleSpec spec{s[0].get<int>(), s[1].get<int>(), s[2].get<int>()};
  spec.validate();
  if (spec.n > kMaxSide || spec.m > kMaxSide) {
    throw InvalidSpec("board sides above " + std::to_string(kMaxSide) + " are not served");
  }
  return spec;
}

inline Board board_from_json(const json& body) {
  const PuzzleSpec spec = spec_from_json(body);
  if (!body.contains("grid")) throw ParseError("missing field 'grid'");
  const auto& g = body.at("grid");
  if (!g.is_array() || g.size() != static_cast<std::size_t>(spec.n)) {
    throw ParseError("'grid' must have " + std::to_string(spec.n) + " rows");
  }
  std::vector<int> values;
  for (const auto& row : g) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(spec.m)) {
      throw ParseError("every grid row must have " + std::to_string(spec.m) + " entries");
    }
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw ParseError("grid entries must be integers");
      values.push_back(v.get<int>());
    }
  }
  return Board(spec, std::move(values));
}

inline json verdict_to_json(const SolvabilityVerdict& v) {
  json checks = json::array();
  for (const auto& c : v.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}});
  return {{"solvable", v.solvable},
          {"branch", std::string(branch_name(v.branch))},
          {"branch_description", std::string(branch_description(v.branch))},
          {"checks", std::move(checks)}};
}

inline json error_body(const std::string& msg) { return {{"ok", false}, {"error", msg}}; }

inline Response check(const json& body) {
  json out = verdict_to_json(is_solvable(board_from_json(body)));
  out["ok"] = true;
  return {200, std::move(out)};
}

inline Response solve(const json& body) {
  const Board board = board_from_json(body);
  const SolveResult r = nrp::solve(board);
  json out = verdict_to_json(r.verdict);
  out["ok"] = true;
  if (r.solved()) {
    out["moves"] = serialize_moves(r.moves);
    out["length"] = r.moves.size();
    out["stats"] = {{"strategy", r.stats.strategy},
                    {"moves_raw", r.stats.moves_raw},
                    {"macros_invoked", r.stats.macros_invoked},
                    {"parity_fix", r.stats.parity_fix}};
  }
  return {200, std::move(out)};
}

inline Response apply(const json& body) {
  const Board board = board_from_json(body);
  const std::string text = body.value("moves", std::string{});
  const Board next = apply_sequence(board, parse_moves(text));
  return {200, {{"ok", true}, {"spec", spec_to_json(next.spec())}, {"grid", grid_to_json(next)}}};
}

// A fresh solution is not prefix-stable: re-solving after a hinted move can
// yield a longer sequence, so count = 1 hints alone need not converge. The
// response carries the rest of the solution as "plan"; a client that sends it
// back gets hints from that plan (after checking it still solves the board),
// so repeated hints terminate without server-side state.
inline Response hint(const json& body) {
  const Board board = board_from_json(body);
  const int count = body.value("count", 1);
  if (count < 0) throw ParseError("'count' must be non-negative");
  MoveSequence plan;
  bool have_plan = false;
  if (body.contains("plan")) {
    if (!body.at("plan").is_string()) throw ParseError("'plan' must be a move string");
    plan = parse_moves(body.at("plan").get<std::string>());
    try {
      have_plan = apply_sequence(board, plan).is_solved();
    } catch (const IllegalMove&) {
      have_plan = false;
    }
  }
  json out;
  if (have_plan) {
    out = verdict_to_json(is_solvable(board));
  } else {
    SolveResult r = nrp::solve(board);
    out = verdict_to_json(r.verdict);
    if (!r.solved()) {
      out["ok"] = true;
      return {200, std::move(out)};
    }
    plan = std::move(r.moves);
  }
  out["ok"] = true;
  const auto k = static_cast<std::ptrdiff_t>(std::min<std::size_t>(static_cast<std::size_t>(count), plan.size()));
  out["moves"] = serialize_moves(MoveSequence(plan.begin(), plan.begin() + k));
  out["plan"] = serialize_moves(MoveSequence(plan.begin() + k, plan.end()));
  out["remaining"] = plan.size() - static_cast<std::size_t>(k);
  return {200, std::move(out)};
}

inline Response scramble(const json& body) {
  const PuzzleSpec spec = spec_from_json(body);
  const auto seed = body.value("seed", std::uint64_t{0});
  const int k = body.value("k", 30);
  const auto s = nrp::scramble(spec, seed, k);
  return {200, {{"ok", true}, {"spec", spec_to_json(spec)}, {"grid", grid_to_json(s.board)},
                {"moves", serialize_moves(s.moves)}}};
}

// Variants offered by the playground picker.
inline std::vector<PuzzleSpec> featured_specs() {
  return {{2, 3, 2}, {3, 3, 2}, {2, 4, 2}, {4, 5, 2}, {3, 4, 3}, {3, 5, 3}, {4, 4, 3}, {4, 5, 3},
          {4, 5, 4}, {6, 7, 4}, {5, 6, 5}, {6, 7, 6}, {7, 8, 7}, {4, 4, 4}};
}

inline Response specs(const json& = {}) {
  json list = json::array();
  for (const auto& s : featured_specs()) {
    const auto br = classify_spec(s);
    list.push_back({{"spec", spec_to_json(s)},
                    {"branch", std::string(branch_name(br))},
                    {"branch_description", std::string(branch_description(br))},
                    {"predicted", predicted_reachable_count(s).str()}});
  }
  return {200, {{"ok", true}, {"specs", std::move(list)}}};
}

// Dispatches by endpoint name ("check", "solve", ...). Engine and parse
// errors become 400 responses with an error body.
inline Response handle(const std::string& endpoint, const json& body) {
  try {
    if (endpoint == "specs") return specs(body);
    if (!body.is_object()) throw ParseError("request body must be a JSON object");
    if (endpoint == "check") return check(body);
    if (endpoint == "solve") return solve(body);
    if (endpoint == "apply") return apply(body);
    if (endpoint == "hint") return hint(body);
    if (endpoint == "scramble") return scramble(body);
    return {404, error_body("unknown endpoint '" + endpoint + "'")};
  } catch (const json::exception& e) {
    return {400, error_body(std::string("malformed request: ") + e.what())};
  } catch (const Error& e) {
    return {400, error_body(e.what())};
  }
}

inline Response handle_text(const std::string& endpoint, const std::string& text) {
  json body;
  if (endpoint != "specs" || !text.empty()) {
    body = json::parse(text, nullptr, false);
    if (body.is_discarded()) return {400, error_body("request body is not valid JSON")};
  }
  return handle(endpoint, body);
}

}  // namespace nrp::service
