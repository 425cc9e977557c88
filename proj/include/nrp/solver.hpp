#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nrp/board.hpp"
#include "nrp/error.hpp"
#include "nrp/group/bfs.hpp"
#include "nrp/macros.hpp"
#include "nrp/placement.hpp"
#include "nrp/solvability.hpp"

namespace nrp {

// Merges adjacent moves on the same anchor (quarters mod 4), dropping the
// ones that cancel. Runs to a fixed point in one pass with a stack.
inline MoveSequence simplify(const MoveSequence& seq) {
  MoveSequence out;
  out.reserve(seq.size());
  for (const auto& mv : seq) {
    if (!out.empty() && out.back().anchor == mv.anchor) {
      const int q = (out.back().quarters + mv.quarters) % 4;
      out.pop_back();
      if (q) out.push_back({mv.anchor, q});
    } else if (mv.quarters % 4) {
      out.push_back({mv.anchor, mv.quarters % 4});
    }
  }
  return out;
}

enum class SolveOutcome { Solved, Unsolvable };

struct SolveStats {
  std::size_t moves_emitted = 0;   // after simplification
  std::size_t moves_raw = 0;       // before simplification
  std::size_t macros_invoked = 0;  // transpositions and 3-cycles applied
  bool parity_fix = false;
  std::string strategy;
  double elapsed_ms = 0;
};

struct SolveResult {
  SolveOutcome outcome = SolveOutcome::Unsolvable;
  MoveSequence moves;  // meaningful when Solved
  SolvabilityVerdict verdict;
  SolveStats stats;

  bool solved() const noexcept { return outcome == SolveOutcome::Solved; }
};

namespace solver_detail {

// For a fixed tuple of goal cells, a BFS table over ordered tuples of
// distinct cells: setup(from) returns moves carrying the contents of
// from[k] onto goal[k] for every k simultaneously.
class TokenRouter {
 public:
  static constexpr std::uint64_t kMaxStates = 30'000'000;

  TokenRouter(PuzzleSpec spec, std::vector<Coord> goal) : spec_(spec), goal_(std::move(goal)) {
    const auto moves = legal_moves(spec_);
    moves_ = moves;
    const int N = spec_.cells();
    std::uint64_t states = 1;
    for (std::size_t k = 0; k < goal_.size(); ++k) states *= static_cast<std::uint64_t>(N);
    if (states > kMaxStates) throw LimitExceeded("token router table too large for " + spec_.to_string());
    for (const auto& mv : moves_) {
      const auto p = move_permutation(spec_, mv);
      fwd_.emplace_back(p.images().begin(), p.images().end());
      const auto pi = p.inverse();
      bwd_.emplace_back(pi.images().begin(), pi.images().end());
    }
    via_.assign(states, kUnseen);
    std::vector<int> g;
    for (const auto& c : goal_) g.push_back(cell_index(spec_, c));
    const auto start = encode(g);
    via_[start] = kRoot;
    std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(start)};
    std::vector<int> t(goal_.size());
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      decode(frontier[head], t);
      for (std::size_t m = 0; m < fwd_.size(); ++m) {
        std::vector<int> u(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) u[k] = fwd_[m][t[k]];
        const auto code = encode(u);
        if (via_[code] != kUnseen) continue;
        via_[code] = static_cast<std::int16_t>(m);
        frontier.push_back(static_cast<std::uint32_t>(code));
      }
    }
  }

  const std::vector<Coord>& goal() const noexcept { return goal_; }

  std::optional<MoveSequence> setup(const std::vector<Coord>& from) const {
    if (from.size() != goal_.size()) throw Error("router tuple size mismatch");
    std::vector<int> t;
    for (const auto& c : from) t.push_back(cell_index(spec_, c));
    auto code = encode(t);
    if (via_[code] == kUnseen) return std::nullopt;
    // Walking back to the goal yields the path goal -> from in reverse;
    // the setup is that path inverted, i.e. the walk's moves inverted in order.
    MoveSequence out;
    while (via_[code] != kRoot) {
      const int m = via_[code];
      out.push_back(moves_[m].inverse());
      for (auto& x : t) x = bwd_[m][x];
      code = encode(t);
    }
    return out;
  }

 private:
  static constexpr std::int16_t kUnseen = -1;
  static constexpr std::int16_t kRoot = -2;

  std::uint64_t encode(const std::vector<int>& t) const {
    std::uint64_t c = 0;
    for (int x : t) c = c * static_cast<std::uint64_t>(spec_.cells()) + static_cast<std::uint64_t>(x);
    return c;
  }
  void decode(std::uint64_t c, std::vector<int>& t) const {
    for (std::size_t k = t.size(); k-- > 0;) {
      t[k] = static_cast<int>(c % static_cast<std::uint64_t>(spec_.cells()));
      c /= static_cast<std::uint64_t>(spec_.cells());
    }
  }

  PuzzleSpec spec_;
  std::vector<Coord> goal_;
  std::vector<Move> moves_;
  std::vector<std::vector<int>> fwd_, bwd_;
  std::vector<std::int16_t> via_;
};

inline std::shared_ptr<const TokenRouter> router_for(const PuzzleSpec& spec, const std::vector<Coord>& goal) {
  static std::mutex mu;
  static std::map<std::pair<PuzzleSpec, std::vector<Coord>>, std::shared_ptr<const TokenRouter>> cache;
  const auto key = std::make_pair(spec, goal);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto r = std::make_shared<const TokenRouter>(spec, goal);
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(r)).first->second;
}

// A macro placed on the host, with the oriented cycle it is used for:
// the content of cells[k] moves to cells[k+1].
struct CycleMacro {
  std::string name;
  MoveSequence seq;
  std::vector<Coord> cells;
  std::shared_ptr<const TokenRouter> router;

  // Moves realising the same cycle on `targets` via conjugation.
  MoveSequence on(const std::vector<Coord>& targets) const {
    auto R = router->setup(targets);
    if (!R) throw VerificationFailure(name + ": no routing to the macro cells");
    return concat(concat(*R, seq), invert_sequence(*R));
  }
};

// Picks the cycle of the requested length from a macro's permutation;
// with parity >= 0 only a cycle lying in that class qualifies.
inline CycleMacro place_macro(const Macro& frame, const PuzzleSpec& host, const Embedding& emb, std::size_t length,
                              int parity = -1) {
  const Macro m = translate_macro(frame, host, emb);
  for (const auto& cyc : m.permutation().cycles()) {
    if (cyc.size() != length) continue;
    std::vector<Coord> cells;
    bool ok = true;
    for (int x : cyc) {
      cells.push_back(cell_coord(host, x));
      if (parity >= 0 && cell_parity(cells.back()) != parity) ok = false;
    }
    if (ok) return {m.name, m.seq, cells, router_for(host, cells)};
  }
  throw VerificationFailure(m.name + " has no cycle of the requested shape");
}

using CycleFn = std::function<MoveSequence(const Board&, const std::vector<Coord>&)>;

struct Work {
  Board board;
  MoveSequence moves;
  SolveStats* stats;

  void apply(const MoveSequence& seq) {
    board = apply_sequence(board, seq);
    moves.insert(moves.end(), seq.begin(), seq.end());
  }
};

// Fixes the cells of `order` one at a time. With arity 2 the cycle is a
// transposition (s h); with arity 3 it is s -> h -> r where r is a later,
// still unfixed cell, preferably the home of the value now sitting at h.
inline void greedy(Work& w, const std::vector<Coord>& order, int arity, const CycleFn& fn,
                   const std::function<bool(Coord, Coord, Coord)>& prefer = {}) {
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Coord h = order[k];
    const int v = solved_value(w.board.spec(), h);
    const Coord s = w.board.find(v);
    if (s == h) continue;
    std::vector<Coord> targets{s, h};
    if (arity == 3) {
      const Coord want = cell_coord(w.board.spec(), w.board.at(h) - 1);
      std::optional<Coord> r;
      for (std::size_t t = k + 1; t < order.size(); ++t) {
        if (order[t] == want && want != s) r = want;
      }
      if (!r) {
        for (std::size_t t = k + 1; t < order.size() && !r; ++t) {
          if (order[t] != s && (!prefer || prefer(s, h, order[t]))) r = order[t];
        }
      }
      for (std::size_t t = k + 1; t < order.size() && !r; ++t) {
        if (order[t] != s) r = order[t];
      }
      if (!r) throw VerificationFailure("no scratch cell left; parity bookkeeping is inconsistent");
      targets.push_back(*r);
    }
    w.apply(fn(w.board, targets));
    ++w.stats->macros_invoked;
    if (w.board.at(h) != v) throw VerificationFailure("cycle did not fix " + h.to_string());
  }
}

inline std::vector<Coord> all_cells(const PuzzleSpec& spec) {
  std::vector<Coord> out;
  for (int k = 0; k < spec.cells(); ++k) out.push_back(cell_coord(spec, k));
  return out;
}

// Whether the board's permutation lies in the group generated by 3-cycles.
inline bool even_for_three_cycles(const Board& b) {
  if (b.spec().b % 2 == 1) {
    return parity_respecting(b) && within_parity_sign(b, 0) == 1 && within_parity_sign(b, 1) == 1;
  }
  return as_permutation(b).sign() == 1;
}

inline void parity_fix(Work& w) {
  if (even_for_three_cycles(w.board)) return;
  w.apply({legal_moves(w.board.spec()).front()});
  w.stats->parity_fix = true;
  if (!even_for_three_cycles(w.board)) throw VerificationFailure("parity move did not produce an even board");
}

// b x (b+1) windows of a host with n <= m, row-major by origin.
inline std::vector<Embedding> windows(const PuzzleSpec& spec) {
  std::vector<Embedding> out;
  for (int i = 1; i + spec.b - 1 <= spec.n; ++i) {
    for (int j = 1; j + spec.b <= spec.m; ++j) out.push_back({{i, j}, spec.b, spec.b + 1, false});
  }
  return out;
}

inline std::optional<Embedding> common_window(const PuzzleSpec& spec, std::span<const Coord> cells) {
  for (const auto& w : windows(spec)) {
    bool all = true;
    for (const auto& c : cells) all = all && w.covers(c);
    if (all) return w;
  }
  return std::nullopt;
}

inline int window_distance(const Embedding& a, const Embedding& b) {
  return std::abs(a.origin.i - b.origin.i) + std::abs(a.origin.j - b.origin.j);
}

// route_three on a host with n <= m.
inline MoveSequence route_three_norm(const Board& board, std::array<int, 3> values, std::size_t* cycles) {
  const auto& spec = board.spec();
  if (spec.b < 5 || spec.m < spec.b + 1) throw Error("route_three needs b >= 5 and a host of at least b x (b+1)");
  Board cur = board;
  MoveSequence out;
  std::array<Coord, 3> pos{cur.find(values[0]), cur.find(values[1]), cur.find(values[2])};
  if (common_window(spec, pos)) return out;
  const auto ws = windows(spec);
  Embedding W0 = ws.front();
  for (const auto& w : ws) {
    if (w.covers(pos[0])) {
      W0 = w;
      break;
    }
  }
  const bool odd = spec.b % 2 == 1;
  for (int k = 1; k < 3; ++k) {
    for (int guard = 0;; ++guard) {
      if (guard > spec.n + spec.m) throw PlacementDefect("window walk did not converge");
      const Coord p = cur.find(values[k]);
      if (W0.covers(p)) break;
      const Embedding* W = nullptr;
      for (const auto& w : ws) {
        if (w.covers(p) && (!W || window_distance(w, W0) < window_distance(*W, W0))) W = &w;
      }
      Embedding next = *W;
      if (next.origin.i != W0.origin.i) {
        next.origin.i += next.origin.i < W0.origin.i ? 1 : -1;
      } else {
        next.origin.j += next.origin.j < W0.origin.j ? 1 : -1;
      }
      std::vector<Coord> busy;
      for (int t = 0; t < 3; ++t) {
        if (t != k) busy.push_back(cur.find(values[t]));
      }
      auto usable = [&](Coord c) {
        if (c == p || std::find(busy.begin(), busy.end(), c) != busy.end()) return false;
        return !odd || cell_parity(c) == cell_parity(p);
      };
      std::optional<Coord> c, r;
      for (int i = W->origin.i; i < W->origin.i + W->rows && !c; ++i) {
        for (int j = W->origin.j; j < W->origin.j + W->cols && !c; ++j) {
          if (next.covers({i, j}) && usable({i, j})) c = Coord{i, j};
        }
      }
      for (int i = W->origin.i; i < W->origin.i + W->rows && !r; ++i) {
        for (int j = W->origin.j; j < W->origin.j + W->cols && !r; ++j) {
          if (usable({i, j}) && Coord{i, j} != *c) r = Coord{i, j};
        }
      }
      if (!c || !r) throw PlacementDefect("window step found no free cells");
      const auto seq = placement::cycle3(cur, {p, *c, *r}, *W);
      cur = apply_sequence(cur, seq);
      out.insert(out.end(), seq.begin(), seq.end());
      if (cycles) ++*cycles;
    }
  }
  return out;
}

inline void solve_block_ge5(Work& w) {
  const auto& spec = w.board.spec();
  parity_fix(w);
  const int b = spec.b;
  auto fn = [&](const Board& cur, const std::vector<Coord>& t) -> MoveSequence {
    if (auto W = common_window(spec, t)) return placement::cycle3(cur, {t[0], t[1], t[2]}, *W);
    std::size_t routed = 0;
    const std::array<int, 3> vals{cur.at(t[0]), cur.at(t[1]), cur.at(t[2])};
    const MoveSequence R = route_three_norm(cur, vals, &routed);
    const Board mid = apply_sequence(cur, R);
    const std::array<Coord, 3> p{mid.find(vals[0]), mid.find(vals[1]), mid.find(vals[2])};
    const auto W = common_window(spec, p);
    if (!W) throw PlacementDefect("routing did not gather the values in one window");
    w.stats->macros_invoked += 2 * routed;
    return concat(concat(R, placement::cycle3(mid, p, *W)), invert_sequence(R));
  };
  auto near = [&](Coord s, Coord h, Coord r) {
    const std::array<Coord, 3> t{s, h, r};
    return common_window(spec, t).has_value();
  };
  if (b % 2 == 1) {
    for (int cls = 0; cls < 2; ++cls) greedy(w, parity_cells(spec, cls), 3, fn, near);
  } else {
    greedy(w, all_cells(spec), 3, fn, near);
  }
}

inline void solve_b2(Work& w) {
  const auto& spec = w.board.spec();
  const CycleMacro mac = spec.n == 2
                             ? place_macro(macros::swap_2n2_frame(), spec, {{1, 1}, 2, 4, false}, 2)
                             : place_macro(macros::swap_b2_frame(), spec, {{1, 1}, 3, 3, false}, 2);
  w.stats->strategy = mac.name;
  greedy(w, all_cells(spec), 2, [&](const Board&, const std::vector<Coord>& t) { return mac.on(t); });
}

inline void solve_343(Work& w) {
  const auto& spec = w.board.spec();
  const CycleMacro mac = place_macro(macros::swap_343_P0(), spec, {{1, 1}, 3, 4, false}, 2, 0);
  w.stats->strategy = mac.name;
  greedy(w, parity_cells(spec, 0), 2, [&](const Board&, const std::vector<Coord>& t) { return mac.on(t); });
  if (!w.board.is_solved()) throw VerificationFailure("(3,4,3): odd class not solved with the even class");
}

inline void solve_3n3(Work& w) {
  const auto& spec = w.board.spec();
  const auto m3 = macros::macros_3n3_frame();
  const Embedding emb{{1, 1}, 3, 5, false};
  const CycleMacro swap0 = place_macro(m3.p0_swap, spec, emb, 2, 0);
  const CycleMacro cyc1 = place_macro(m3.p1_cycle, spec, emb, 3, 1);
  w.stats->strategy = "p0_swap+p1_cycle";
  greedy(w, parity_cells(spec, 0), 2, [&](const Board&, const std::vector<Coord>& t) { return swap0.on(t); });
  greedy(w, parity_cells(spec, 1), 3, [&](const Board&, const std::vector<Coord>& t) { return cyc1.on(t); });
}

inline void solve_b3(Work& w) {
  const auto& spec = w.board.spec();
  parity_fix(w);
  const CycleMacro odd = place_macro(macros::three_cycle_b3_frame(), spec, {{1, 1}, 4, 4, false}, 3, 1);
  const CycleMacro even = place_macro(macros::three_cycle_b3_frame(), spec, {{1, 1}, 4, 4, true}, 3, 0);
  w.stats->strategy = "three_cycle_b3";
  for (int cls = 0; cls < 2; ++cls) {
    const CycleMacro& mac = cls == 0 ? even : odd;
    greedy(w, parity_cells(spec, cls), 3, [&](const Board&, const std::vector<Coord>& t) { return mac.on(t); });
  }
}

inline void solve_b4(Work& w) {
  const auto& spec = w.board.spec();
  parity_fix(w);
  const CycleMacro mac = place_macro(macros::three_cycle_b4_frame(), spec, {{1, 1}, 4, 5, false}, 3);
  w.stats->strategy = "three_cycle_b4";
  greedy(w, all_cells(spec), 3, [&](const Board&, const std::vector<Coord>& t) { return mac.on(t); });
}

// Solves a board already known to be solvable, with n <= m.
inline MoveSequence solve_normalized(const Board& board, TheoremBranch branch, SolveStats& stats) {
  const auto& spec = board.spec();
  Work w{board, {}, &stats};
  if (board.is_solved()) {
    stats.strategy = "already solved";
    return {};
  }
  switch (branch) {
    case TheoremBranch::SingleBlock: {
      stats.strategy = "single block turn";
      for (int q = 1; q <= 3; ++q) {
        if (apply_move(board, {{1, 1}, q}).is_solved()) return {{{1, 1}, q}};
      }
      throw VerificationFailure("single-block board is not a rotation of solved");
    }
    case TheoremBranch::BlockOne: throw VerificationFailure("b = 1 board is not solved");
    case TheoremBranch::B2Small: {
      stats.strategy = "breadth-first search";
      auto path = group::bfs_solve(board, 1000);
      if (!path) throw VerificationFailure("(2,3,2) board outside the reachable set");
      return *path;
    }
    case TheoremBranch::B2General: solve_b2(w); break;
    case TheoremBranch::B3Small: solve_343(w); break;
    case TheoremBranch::B3General:
      if (spec.n == 3) {
        solve_3n3(w);
      } else {
        solve_b3(w);
      }
      break;
    default:
      if (spec.b == 4) {
        solve_b4(w);
      } else {
        stats.strategy = "cycle3 on windows";
        solve_block_ge5(w);
      }
  }
  if (!w.board.is_solved()) throw VerificationFailure("solver finished on an unsolved board");
  return std::move(w.moves);
}

}  // namespace solver_detail

// Moves after which the three values share one b x (b+1) window. Conjugating
// a cycle3 on that window by these moves cycles the values' original cells.
inline MoveSequence route_three(const Board& board, std::array<int, 3> values) {
  if (board.spec().n <= board.spec().m) return solver_detail::route_three_norm(board, values, nullptr);
  const auto& s = board.spec();
  const Board t = transpose_problem(board);
  for (auto& v : values) {
    const Coord home = cell_coord(s, v - 1);
    v = solved_value(t.spec(), {home.j, home.i});
  }
  return transpose_sequence(solver_detail::route_three_norm(t, values, nullptr));
}

inline SolveResult solve(const Board& board) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult res;
  res.verdict = is_solvable(board);
  if (res.verdict.solvable) {
    const bool flip = board.spec().n > board.spec().m;
    const Board work = flip ? transpose_problem(board) : board;
    MoveSequence raw = solver_detail::solve_normalized(work, res.verdict.branch, res.stats);
    if (flip) raw = transpose_sequence(raw);
    res.stats.moves_raw = raw.size();
    res.moves = simplify(raw);
    res.stats.moves_emitted = res.moves.size();
    if (!apply_sequence(board, res.moves).is_solved()) throw VerificationFailure("solution does not reach solved");
    res.outcome = SolveOutcome::Solved;
  }
  res.stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace nrp
