#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nrp/board.hpp"
#include "nrp/error.hpp"

namespace nrp {

// Letter -> anchor of the block that letter rotates counter-clockwise.
using AnchorTable = std::map<char, Coord>;

namespace detail {

inline int word_power(std::string_view w, std::size_t& k) {
  std::size_t start = k;
  while (k < w.size() && std::isdigit(static_cast<unsigned char>(w[k]))) ++k;
  return k > start ? std::stoi(std::string(w.substr(start, k - start))) : 1;
}

inline MoveSequence expand_word(std::string_view w, std::size_t& k, const AnchorTable& letters, bool nested) {
  MoveSequence out;
  while (k < w.size()) {
    const char ch = w[k];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++k;
      continue;
    }
    if (ch == ')') {
      if (!nested) throw ParseError("unbalanced ')' in word '" + std::string(w) + "'");
      ++k;
      return out;
    }
    MoveSequence term;
    if (ch == '(') {
      ++k;
      term = expand_word(w, k, letters, true);
      const bool inv = k < w.size() && w[k] == '\'';
      if (inv) {
        ++k;
        term = invert_sequence(term);
      }
      const int p = word_power(w, k);
      for (int r = 0; r < p; ++r) out.insert(out.end(), term.begin(), term.end());
      continue;
    }
    auto it = letters.find(ch);
    if (it == letters.end()) throw ParseError(std::string("unknown letter '") + ch + "' in word '" + std::string(w) + "'");
    ++k;
    int q = 1;
    if (k < w.size() && w[k] == '\'') {
      ++k;
      q = 3 * word_power(w, k);
    } else {
      q = word_power(w, k);
    }
    q %= 4;
    if (q != 0) out.push_back({it->second, q});
  }
  if (nested) throw ParseError("unbalanced '(' in word '" + std::string(w) + "'");
  return out;
}

}  // namespace detail

// Expands a word such as "XY2X'Y'" or "(YX)4" into moves. A letter power k
// becomes one move of k mod 4 quarters; a primed letter is the inverse turn;
// a parenthesised group may carry a prime and/or a repeat count.
inline MoveSequence expand_word(std::string_view word, const AnchorTable& letters) {
  std::size_t k = 0;
  return detail::expand_word(word, k, letters, false);
}

// Places a rows x cols sub-board on a host board. With reflected set, the
// sub-board's column j lands on host column origin.j + cols - j, which
// conjugates every macro by the horizontal mirror.
struct Embedding {
  Coord origin{1, 1};
  int rows = 0;
  int cols = 0;
  bool reflected = false;

  static Embedding whole(const PuzzleSpec& spec) { return {{1, 1}, spec.n, spec.m, false}; }

  bool fits(const PuzzleSpec& host) const noexcept {
    return rows >= 1 && cols >= 1 && origin.i >= 1 && origin.j >= 1 && origin.i + rows - 1 <= host.n &&
           origin.j + cols - 1 <= host.m;
  }

  Coord to_host(Coord c) const noexcept {
    return {origin.i + c.i - 1, origin.j + (reflected ? cols + 1 - c.j : c.j) - 1};
  }

  Coord to_frame(Coord h) const noexcept {
    const int fj = h.j - origin.j + 1;
    return {h.i - origin.i + 1, reflected ? cols + 1 - fj : fj};
  }

  bool covers(Coord h) const noexcept {
    return h.i >= origin.i && h.i < origin.i + rows && h.j >= origin.j && h.j < origin.j + cols;
  }

  Move to_host(const Move& mv, int b) const noexcept {
    if (!reflected) return {{origin.i + mv.anchor.i - 1, origin.j + mv.anchor.j - 1}, mv.quarters};
    return {{origin.i + mv.anchor.i - 1, origin.j + cols - b - mv.anchor.j + 1}, 4 - mv.quarters};
  }

  MoveSequence to_host(const MoveSequence& seq, int b) const {
    MoveSequence out;
    out.reserve(seq.size());
    for (const auto& mv : seq) out.push_back(to_host(mv, b));
    return out;
  }

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

// A named algorithm with the cells it moves (in the coordinates of `board`).
struct Macro {
  std::string name;
  std::string word;
  AnchorTable letters;
  PuzzleSpec board;
  MoveSequence seq;
  std::vector<Coord> footprint;

  Permutation permutation() const { return sequence_permutation(board, seq); }
};

// Cells whose content a sequence moves, in row-major order.
inline std::vector<Coord> measured_footprint(const PuzzleSpec& spec, const MoveSequence& seq) {
  std::vector<Coord> out;
  for (int k : sequence_permutation(spec, seq).moved_points()) out.push_back(cell_coord(spec, k));
  return out;
}

inline Macro make_macro(std::string name, std::string word, AnchorTable letters, PuzzleSpec board) {
  Macro mac{std::move(name), std::move(word), std::move(letters), board, {}, {}};
  mac.seq = expand_word(mac.word, mac.letters);
  for (const auto& mv : mac.seq) check_move(board, mv);
  mac.footprint = measured_footprint(board, mac.seq);
  return mac;
}

// Macro built from an explicit move list (compositions of other macros).
inline Macro make_macro(std::string name, std::string word, PuzzleSpec board, MoveSequence seq) {
  Macro mac{std::move(name), std::move(word), {}, board, std::move(seq), {}};
  for (const auto& mv : mac.seq) check_move(board, mv);
  mac.footprint = measured_footprint(board, mac.seq);
  return mac;
}

// Replays a macro defined on its own board inside `host` through `emb`.
inline Macro translate_macro(const Macro& mac, const PuzzleSpec& host, const Embedding& emb) {
  if (emb.rows != mac.board.n || emb.cols != mac.board.m) {
    throw Error("embedding shape " + std::to_string(emb.rows) + "x" + std::to_string(emb.cols) +
                " does not match macro board " + mac.board.to_string());
  }
  if (host.b != mac.board.b) throw Error("host block size differs from macro block size");
  if (!emb.fits(host)) throw Error("macro footprint escapes host " + host.to_string());
  Macro out = mac;
  out.board = host;
  out.seq = emb.to_host(mac.seq, host.b);
  for (auto& [letter, anchor] : out.letters) anchor = emb.to_host(Move{anchor, 1}, host.b).anchor;
  out.footprint.clear();
  for (const auto& c : mac.footprint) out.footprint.push_back(emb.to_host(c));
  std::sort(out.footprint.begin(), out.footprint.end());
  return out;
}

namespace macros {

// (n, n+1, n) sub-board: X rotates the left block, Y the right block.
inline AnchorTable xy_letters() { return {{'X', {1, 1}}, {'Y', {1, 2}}}; }

inline PuzzleSpec xy_board(int n) { return {n, n + 1, n}; }

inline void require_xy(const PuzzleSpec& host, const Embedding& emb) {
  if (emb.cols != emb.rows + 1 || host.b != emb.rows) {
    throw Error("embedding must be an (n, n+1) sub-board with block size n");
  }
  if (!emb.fits(host)) throw Error("embedding does not fit host " + host.to_string());
}

inline std::pair<Move, Move> gen_XY(const PuzzleSpec& host, const Embedding& emb) {
  require_xy(host, emb);
  return {emb.to_host(Move{{1, 1}, 1}, host.b), emb.to_host(Move{{1, 2}, 1}, host.b)};
}

// Belt of the (n, n+1) sub-board in counter-clockwise order from (1,1): down
// the left column, along the bottom row, up the right column.
inline std::vector<Coord> belt_frame(int n) {
  std::vector<Coord> out;
  for (int i = 1; i <= n; ++i) out.push_back({i, 1});
  for (int j = 2; j <= n; ++j) out.push_back({n, j});
  for (int i = n; i >= 1; --i) out.push_back({i, n + 1});
  return out;
}

inline std::vector<Coord> belt(const PuzzleSpec& host, const Embedding& emb) {
  require_xy(host, emb);
  std::vector<Coord> out;
  for (const auto& c : belt_frame(emb.rows)) out.push_back(emb.to_host(c));
  return out;
}

inline Macro cycle_frame(int n) {
  if (n < 4) throw Error("cycle needs n >= 4");
  return make_macro("cycle", "(YX)4", xy_letters(), xy_board(n));
}

inline Macro conjugator_A_frame(int n) {
  if (n < 5) throw Error("conjugator A needs n >= 5");
  return make_macro("conjugator_A", "XYYXY'X'", xy_letters(), xy_board(n));
}

// phi = C (A C A^-1) C^-1 (A C^-1 A^-1), the commutator of C and A C A^-1.
inline Macro phi_frame(int n) {
  if (n < 5) throw Error("phi needs n >= 5");
  const auto C = cycle_frame(n).seq;
  const auto A = conjugator_A_frame(n).seq;
  const auto Ci = invert_sequence(C);
  const auto Ai = invert_sequence(A);
  MoveSequence seq;
  for (const auto* part : {&C, &A, &C, &Ai, &Ci, &A, &Ci, &Ai}) seq.insert(seq.end(), part->begin(), part->end());
  return make_macro("phi", "C(ACA')C'(AC'A')", xy_board(n), std::move(seq));
}

inline Macro cycle(const PuzzleSpec& host, const Embedding& emb) {
  require_xy(host, emb);
  return translate_macro(cycle_frame(emb.rows), host, emb);
}

inline Macro conjugator_A(const PuzzleSpec& host, const Embedding& emb) {
  require_xy(host, emb);
  return translate_macro(conjugator_A_frame(emb.rows), host, emb);
}

inline Macro phi_three_cycle(const PuzzleSpec& host, const Embedding& emb) {
  require_xy(host, emb);
  return translate_macro(phi_frame(emb.rows), host, emb);
}

// Sub-board column-1 evacuation used by the spiral-cycle placement.
inline Macro evacuate_frame(int n) {
  if (n < 5) throw Error("column evacuation needs n >= 5");
  return n % 2 == 0 ? make_macro("evacuate_even", "XY2X'Y'XY'X'", xy_letters(), xy_board(n))
                    : make_macro("evacuate_odd", "XY2XYXY'X2Y'XY'X'", xy_letters(), xy_board(n));
}

// Transposition on a 2x4 window of a b = 2 board (three anchors left to right).
inline Macro swap_2n2_frame() {
  return make_macro("swap_2n2", "XYZ'Y2X'Z'YZ2Y'", {{'X', {1, 1}}, {'Y', {1, 2}}, {'Z', {1, 3}}}, {2, 4, 2});
}

// Transposition on a 3x3 window of a b = 2 board. X lower-left, Y upper-right,
// Z lower-right.
inline Macro swap_b2_frame() {
  return make_macro("swap_b2", "XY'X'YZ", {{'X', {2, 1}}, {'Y', {1, 2}}, {'Z', {2, 2}}}, {3, 3, 2});
}

inline Macro swap_2n2(const PuzzleSpec& host, const Embedding& emb) {
  if (emb.rows != 2 || emb.cols != 4) throw Error("swap_2n2 needs a 2x4 window");
  return translate_macro(swap_2n2_frame(), host, emb);
}

inline Macro swap_b2(const PuzzleSpec& host, const Embedding& emb) {
  if (emb.rows != 3 || emb.cols != 3) throw Error("swap_b2 needs a 3x3 window");
  return translate_macro(swap_b2_frame(), host, emb);
}

// On (3,4,3): swaps (2,4) and (3,3) and fixes the rest of the even class.
inline Macro swap_343_P0() { return make_macro("swap_343_P0", "XYX'Y'XY'XYXYX", xy_letters(), {3, 4, 3}); }

struct Macros3n3 {
  Macro p0_swap;   // one transposition on the even class of the window
  Macro p1_cycle;  // 3-cycle on the odd class, even class fixed
  Macro p1_swap;   // one transposition on the odd class
};

inline AnchorTable xyz3_letters() { return {{'X', {1, 1}}, {'Y', {1, 2}}, {'Z', {1, 3}}}; }

// Words on a 3x5 window with X, Y, Z the left, middle and right anchors. The
// two transposition words act on the opposite class from the one their
// position in the literature suggests: the X,Y word (confined to columns 1..4)
// transposes two even cells, the Y,Z word (columns 2..5, whose own corner is
// odd in window coordinates) transposes two odd cells.
inline Macros3n3 macros_3n3_frame() {
  const PuzzleSpec w{3, 5, 3};
  return {make_macro("p0_swap", "XYX'Y'XY2X'Y'", xyz3_letters(), w),
          make_macro("p1_cycle", "(XZX'Z')2", xyz3_letters(), w),
          make_macro("p1_swap", "YZY'Z'YZ2Y'Z'", xyz3_letters(), w)};
}

inline Macros3n3 macros_3n3(const PuzzleSpec& host, const Embedding& emb) {
  if (emb.rows != 3 || emb.cols != 5) throw Error("3n3 macros need a 3x5 window");
  auto f = macros_3n3_frame();
  return {translate_macro(f.p0_swap, host, emb), translate_macro(f.p1_cycle, host, emb),
          translate_macro(f.p1_swap, host, emb)};
}

// 4x4 window, b = 3: A upper-left, B upper-right, C lower-left, D lower-right.
inline Macro three_cycle_b3_frame() {
  return make_macro("three_cycle_b3", "ADA'D'C'DA'D'AC", {{'A', {1, 1}}, {'B', {1, 2}}, {'C', {2, 1}}, {'D', {2, 2}}},
                    {4, 4, 3});
}

inline Macro three_cycle_b3(const PuzzleSpec& host, const Embedding& emb) {
  if (emb.rows != 4 || emb.cols != 4) throw Error("three_cycle_b3 needs a 4x4 window");
  return translate_macro(three_cycle_b3_frame(), host, emb);
}

inline constexpr std::string_view kB4BaseWord = "XY2X'YX'Y2";

// 4x5 window, b = 4. 210 moves. Cached since it is replayed often.
inline const Macro& three_cycle_b4_frame() {
  static const Macro mac = make_macro("three_cycle_b4", "(XY2X'YX'Y2)35", xy_letters(), {4, 5, 4});
  return mac;
}

inline Macro three_cycle_b4(const PuzzleSpec& host, const Embedding& emb) {
  if (emb.rows != 4 || emb.cols != 5) throw Error("three_cycle_b4 needs a 4x5 window");
  return translate_macro(three_cycle_b4_frame(), host, emb);
}

// Every named macro on its own board, for documentation dumps.
inline std::vector<Macro> catalog(int n = 6) {
  auto m3 = macros_3n3_frame();
  return {cycle_frame(n),   conjugator_A_frame(n), phi_frame(n),           evacuate_frame(n),
          evacuate_frame(n + 1), swap_2n2_frame(), swap_b2_frame(),        swap_343_P0(),
          m3.p0_swap,       m3.p1_cycle,           m3.p1_swap,             three_cycle_b3_frame(),
          three_cycle_b4_frame()};
}

}  // namespace macros
}  // namespace nrp
