#pragma once

#include <array>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "nrp/board.hpp"
#include "nrp/error.hpp"
#include "nrp/macros.hpp"

// Placement on an (n, n+1, n) frame. All coordinates below are frame
// coordinates unless a function takes a Board and an Embedding.
namespace nrp::placement {

enum class Variant { Normal, Star };

// Cell next to the Y-block centre where every spiral ends.
inline Coord spiral_target(int n) { return n % 2 == 0 ? Coord{n / 2, n / 2 + 1} : Coord{(n + 1) / 2, (n + 1) / 2}; }

struct TripleTargets {
  Coord u1, u2, u3;
};

inline TripleTargets triple_targets(int n) {
  return n % 2 == 0 ? TripleTargets{{1, 1}, {2, 1}, spiral_target(n)} : TripleTargets{{1, 1}, {3, 1}, spiral_target(n)};
}

// Squared distance from c to the Y-block centre, in doubled coordinates so
// the half-integer centre ((n+1)/2, (n+3)/2) stays integral.
inline long long doubled_distance2(int n, Coord c) {
  const long long di = 2LL * c.i - (n + 1);
  const long long dj = 2LL * c.j - (n + 3);
  return di * di + dj * dj;
}

inline long long spiral_cap(int n) { return 8LL * (n + 1) * (n + 1); }

// distances[0] is measured when the loop starts; one entry follows each X step.
struct SpiralTrace {
  std::vector<long long> distances;
  int iterations = 0;
  int hides = 0;
  int unhides = 0;
};

namespace detail {

inline Move X(int q) { return {{1, 1}, q}; }
inline Move Y(int q) { return {{1, 2}, q}; }

inline const MoveSequence& hide_word(int n) {
  static std::mutex mu;
  static std::map<int, MoveSequence> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    MoveSequence c = macros::cycle_frame(n).seq;
    if (n == 5) c = concat(c, c);
    it = cache.emplace(n, std::move(c)).first;
  }
  return it->second;
}

struct Tracker {
  int n;
  std::vector<Coord> pts;
  MoveSequence seq;

  void apply(const Move& mv) {
    for (auto& p : pts) p = rotate_coord(n, mv, p);
    seq.push_back(mv);
  }
  void apply(const MoveSequence& s) {
    for (const auto& mv : s) apply(mv);
  }
};

inline void require_frame(int n) {
  if (n < 5) throw Error("placement needs a frame with n >= 5, got n = " + std::to_string(n));
}

inline void require_cell(int n, Coord c) {
  if (c.i < 1 || c.i > n || c.j < 1 || c.j > n + 1) throw Error("cell " + c.to_string() + " outside the frame");
}

inline void require_class0(int n, Coord c) {
  if (n % 2 == 1 && cell_parity(c) != 0) {
    throw ParityMismatch("cell " + c.to_string() + " is in parity class 1 of an odd frame");
  }
}

// Drives token k to the spiral target. Tokens listed in `protect` sit in
// column 1 and are parked in column n+1 with C^-1 before any X, brought back
// with C before any Y, and finally cycled home with C.
inline void run_spiral(Tracker& tr, std::size_t k, Variant v, const std::vector<std::size_t>& protect,
                       SpiralTrace* trace) {
  const int n = tr.n;
  const Coord u = spiral_target(n);
  const MoveSequence& C = hide_word(n);
  const MoveSequence Ci = invert_sequence(C);
  const bool star = v == Variant::Star;

  auto guard = [&](char letter) {
    if (protect.empty()) return;
    const int col = letter == 'X' ? 1 : n + 1;
    bool needed = false;
    for (auto t : protect) needed = needed || tr.pts[t].j == col;
    if (!needed) return;
    const Coord before = tr.pts[k];
    tr.apply(letter == 'X' ? Ci : C);
    if (trace) ++(letter == 'X' ? trace->hides : trace->unhides);
    if (tr.pts[k] != before) throw PlacementDefect("hiding step displaced the token being placed");
    for (auto t : protect) {
      if (tr.pts[t].j != (letter == 'X' ? n + 1 : 1)) throw PlacementDefect("hiding step left a protected token exposed");
    }
  };

  if (tr.pts[k].j == 1) {
    guard('X');
    tr.apply(X(2));
  }
  const long long target_d = doubled_distance2(n, u);
  if (trace) trace->distances.push_back(doubled_distance2(n, tr.pts[k]));
  for (long long it = 0;; ++it) {
    if (it >= spiral_cap(n)) throw PlacementDefect("spiral exceeded its iteration cap");
    const Coord p = tr.pts[k];
    const long long d0 = doubled_distance2(n, p);
    if (d0 == target_d) {
      int q = 0;
      while (q < 4 && rotate_coord(n, Y(q), p) != u) ++q;
      if (q == 4) throw PlacementDefect("minimum-distance cell does not rotate onto the target");
      if (q) {
        guard('Y');
        tr.apply(Y(q));
      }
      break;
    }
    int q = 0;
    for (; q < 4; ++q) {
      const Coord c = rotate_coord(n, Y(q), p);
      const bool rows = star ? (2 <= 2 * c.i && 2 * c.i <= n + 1) : (n + 1 <= 2 * c.i && 2 * c.i <= 2 * n);
      if (rows && 4 <= 2 * c.j && 2 * c.j <= n + 3) break;
    }
    if (q == 4) throw PlacementDefect("no Y power reaches the quadrant");
    if (q) {
      guard('Y');
      tr.apply(Y(q));
    }
    guard('X');
    tr.apply(X(star ? 3 : 1));
    const long long d1 = doubled_distance2(n, tr.pts[k]);
    if (trace) {
      trace->distances.push_back(d1);
      ++trace->iterations;
    }
    if (d1 >= d0) throw PlacementDefect("spiral distance did not decrease");
  }
  if (!protect.empty()) {
    const Coord home = {1, 1};
    for (int r = 0; tr.pts[protect.front()] != home; ++r) {
      if (r > 3 * n) throw PlacementDefect("protected token did not return to (1,1)");
      tr.apply(C);
    }
  }
}

// Sequence taking the token at `start` to u (via a spiral) and then on to
// `target` (via the inverse spiral of target), fixing the protected cells.
inline MoveSequence spiral_to(int n, Coord start, Coord target, Variant v, const std::vector<Coord>& protect) {
  auto run = [&](Coord s) {
    Tracker tr{n, {s}, {}};
    std::vector<std::size_t> idx;
    for (const auto& c : protect) {
      tr.pts.push_back(c);
      idx.push_back(tr.pts.size() - 1);
    }
    run_spiral(tr, 0, v, idx, nullptr);
    return tr.seq;
  };
  return concat(run(start), invert_sequence(run(target)));
}

}  // namespace detail

// Sequence sending the token at `start` to the spiral target.
inline MoveSequence spiral_frame(int n, Coord start, Variant v, SpiralTrace* trace = nullptr) {
  detail::require_frame(n);
  detail::require_cell(n, start);
  detail::require_class0(n, start);
  detail::Tracker tr{n, {start}, {}};
  detail::run_spiral(tr, 0, v, {}, trace);
  return tr.seq;
}

inline const MoveSequence& evacuate_frame_seq(int n) {
  static std::mutex mu;
  static std::map<int, MoveSequence> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, macros::evacuate_frame(n).seq).first;
  return it->second;
}

struct PlacementStep {
  std::string label;
  MoveSequence moves;
};

// The spiral-cycle placement of the tokens at s[0], s[1], s[2] onto u1, u2, u3,
// split into its labelled steps.
inline std::vector<PlacementStep> place_three_steps(int n, std::array<Coord, 3> s) {
  detail::require_frame(n);
  for (const auto& c : s) {
    detail::require_cell(n, c);
    detail::require_class0(n, c);
  }
  if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]) throw Error("place_three needs three distinct cells");
  const auto [u1, u2, u3] = triple_targets(n);
  std::vector<PlacementStep> steps;
  if (s[0] == u1 && s[1] == u2 && s[2] == u3) return steps;
  detail::Tracker tr{n, {s[0], s[1], s[2]}, {}};
  auto step = [&](std::string label, const MoveSequence& seq) {
    tr.apply(seq);
    steps.push_back({std::move(label), seq});
  };

  step("a1 to u1", detail::spiral_to(n, tr.pts[0], u1, Variant::Normal, {}));
  if (tr.pts[1].j == 1) step("extract a2", {detail::X(1), detail::Y(1), detail::X(3)});
  const Coord T = n % 2 == 0 ? Coord{n, n + 1} : Coord{n - 1, n + 1};
  step("a2 to staging", detail::spiral_to(n, tr.pts[1], T, Variant::Star, {u1}));
  step("a2 to u2", {detail::X(1), detail::Y(3), detail::X(3)});
  if (tr.pts[0] != u1 || tr.pts[1] != u2) throw PlacementDefect("a1, a2 not at their targets");
  if (tr.pts[2].j == 1) step("evacuate column", evacuate_frame_seq(n));
  if (tr.pts[2].j == 1) throw PlacementDefect("evacuation left a3 in column 1");
  detail::Tracker sub{n, tr.pts, {}};
  detail::run_spiral(sub, 2, Variant::Star, {0, 1}, nullptr);
  step("a3 to u3", sub.seq);
  if (tr.pts[0] != u1 || tr.pts[1] != u2 || tr.pts[2] != u3) throw PlacementDefect("placement missed a target");
  return steps;
}

inline MoveSequence place_three_frame(int n, std::array<Coord, 3> s) {
  MoveSequence out;
  for (auto& st : place_three_steps(n, s)) out.insert(out.end(), st.moves.begin(), st.moves.end());
  return out;
}

namespace detail {

// phi for even n; its mirror image for odd n, whose three cells are class 0.
// Returns the moves and the cells p1 -> p2 -> p3 of the cycle.
struct FramePhi {
  MoveSequence seq;
  std::array<Coord, 3> cells;
  MoveSequence to_u;  // place_three of the three cells
};

inline const FramePhi& frame_phi(int n) {
  static std::mutex mu;
  static std::map<int, FramePhi> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  const PuzzleSpec f = macros::xy_board(n);
  MoveSequence seq = macros::phi_frame(n).seq;
  if (n % 2 == 1) seq = reflect_sequence(f, seq);
  const auto cyc = sequence_permutation(f, seq).cycles();
  if (cyc.size() != 1 || cyc[0].size() != 3) throw VerificationFailure("phi is not a 3-cycle");
  FramePhi fp{seq, {cell_coord(f, cyc[0][0]), cell_coord(f, cyc[0][1]), cell_coord(f, cyc[0][2])}, {}};
  fp.to_u = place_three_frame(n, fp.cells);
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(fp)).first->second;
}

}  // namespace detail

// Moves that cycle the contents src[0] -> src[1] -> src[2] -> src[0] and fix
// every other cell of the frame.
inline MoveSequence cycle3_frame(int n, std::array<Coord, 3> src) {
  detail::require_frame(n);
  for (const auto& c : src) detail::require_cell(n, c);
  if (src[0] == src[1] || src[0] == src[2] || src[1] == src[2]) throw Error("cycle3 needs three distinct cells");
  if (n % 2 == 1) {
    const int cls = cell_parity(src[0]);
    if (cell_parity(src[1]) != cls || cell_parity(src[2]) != cls) {
      throw ParityMismatch("cycle3 on an odd frame needs three cells of one parity class");
    }
    if (cls == 1) {
      std::array<Coord, 3> mirrored;
      for (int k = 0; k < 3; ++k) mirrored[k] = {src[k].i, n + 2 - src[k].j};
      return reflect_sequence(macros::xy_board(n), cycle3_frame(n, mirrored));
    }
  }
  const auto& phi = detail::frame_phi(n);
  const MoveSequence S = concat(place_three_frame(n, src), invert_sequence(phi.to_u));
  return concat(concat(S, phi.seq), invert_sequence(S));
}

// Board-level entry points. The embedding selects an (n, n+1) window of the
// host whose block size is n.

namespace detail {

inline int frame_n(const Board& board, const Embedding& emb) {
  macros::require_xy(board.spec(), emb);
  require_frame(emb.rows);
  return emb.rows;
}

inline Coord frame_cell_of(const Board& board, int value, const Embedding& emb) {
  const Coord h = board.find(value);
  if (!emb.covers(h)) throw Error("value " + std::to_string(value) + " lies outside the embedding");
  return emb.to_frame(h);
}

}  // namespace detail

inline MoveSequence spiral(const Board& board, int value, const Embedding& emb, Variant v,
                           SpiralTrace* trace = nullptr) {
  const int n = detail::frame_n(board, emb);
  return emb.to_host(spiral_frame(n, detail::frame_cell_of(board, value, emb), v, trace), n);
}

inline MoveSequence evacuate_column(const Board& board, const Embedding& emb) {
  const int n = detail::frame_n(board, emb);
  return emb.to_host(evacuate_frame_seq(n), n);
}

inline MoveSequence place_three(const Board& board, int a1, int a2, int a3, const Embedding& emb) {
  const int n = detail::frame_n(board, emb);
  const std::array<Coord, 3> s{detail::frame_cell_of(board, a1, emb), detail::frame_cell_of(board, a2, emb),
                               detail::frame_cell_of(board, a3, emb)};
  return emb.to_host(place_three_frame(n, s), n);
}

// sources are host cells inside the embedding.
inline MoveSequence cycle3(const Board& board, std::array<Coord, 3> sources, const Embedding& emb) {
  const int n = detail::frame_n(board, emb);
  std::array<Coord, 3> f;
  for (int k = 0; k < 3; ++k) {
    if (!emb.covers(sources[k])) throw Error("cycle3 source " + sources[k].to_string() + " outside the embedding");
    f[k] = emb.to_frame(sources[k]);
  }
  return emb.to_host(cycle3_frame(n, f), n);
}

}  // namespace nrp::placement
