#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nrp/error.hpp"
#include "nrp/permutation.hpp"

namespace nrp {

// An NRP variant: n rows, m columns, b x b rotating blocks.
struct PuzzleSpec {
  int n = 0;
  int m = 0;
  int b = 0;

  void validate() const {
    if (n <= 0 || m <= 0 || b <= 0) {
      throw InvalidSpec("spec dimensions must be positive: " + to_string());
    }
    if (b > n || b > m) throw InvalidSpec("block size exceeds board: " + to_string());
  }

  int cells() const noexcept { return n * m; }
  int anchor_rows() const noexcept { return n - b + 1; }
  int anchor_cols() const noexcept { return m - b + 1; }
  PuzzleSpec transposed() const noexcept { return {m, n, b}; }

  std::string to_string() const {
    return "(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(b) + ")";
  }

  friend bool operator==(const PuzzleSpec&, const PuzzleSpec&) = default;
  friend auto operator<=>(const PuzzleSpec&, const PuzzleSpec&) = default;
};

// 1-based cell coordinate: row i from the top, column j from the left.
struct Coord {
  int i = 1;
  int j = 1;

  friend bool operator==(const Coord&, const Coord&) = default;
  friend auto operator<=>(const Coord&, const Coord&) = default;

  std::string to_string() const {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
};

// A counter-clockwise rotation of the block whose top-left cell is anchor,
// by quarters * 90 degrees. quarters == 3 is the clockwise quarter turn.
struct Move {
  Coord anchor;
  int quarters = 1;

  Move inverse() const noexcept { return {anchor, 4 - quarters}; }

  friend bool operator==(const Move&, const Move&) = default;
  friend auto operator<=>(const Move&, const Move&) = default;
};

// Moves are applied left to right.
using MoveSequence = std::vector<Move>;

inline bool contains(const PuzzleSpec& spec, Coord c) noexcept {
  return c.i >= 1 && c.i <= spec.n && c.j >= 1 && c.j <= spec.m;
}

inline int cell_index(const PuzzleSpec& spec, Coord c) noexcept { return (c.i - 1) * spec.m + (c.j - 1); }

inline Coord cell_coord(const PuzzleSpec& spec, int index) noexcept {
  return {index / spec.m + 1, index % spec.m + 1};
}

// Value held by cell c on the solved board.
inline int solved_value(const PuzzleSpec& spec, Coord c) noexcept { return cell_index(spec, c) + 1; }

// 0 when i + j is even, 1 when odd.
inline int cell_parity(Coord c) noexcept { return (c.i + c.j) % 2; }

inline void check_move(const PuzzleSpec& spec, const Move& mv) {
  if (spec.b == 1) throw IllegalMove("block size 1 admits no moves");
  if (mv.quarters < 1 || mv.quarters > 3) {
    throw IllegalMove("quarters must be 1, 2 or 3, got " + std::to_string(mv.quarters));
  }
  if (mv.anchor.i < 1 || mv.anchor.i > spec.anchor_rows() || mv.anchor.j < 1 ||
      mv.anchor.j > spec.anchor_cols()) {
    throw IllegalMove("anchor " + mv.anchor.to_string() + " does not fit " + spec.to_string());
  }
}

// Where the content of cell c lands after mv (cells outside the block stay).
// Does not validate the move.
inline Coord rotate_coord(int b, const Move& mv, Coord c) noexcept {
  const int oi = c.i - mv.anchor.i;
  const int oj = c.j - mv.anchor.j;
  if (oi < 0 || oj < 0 || oi >= b || oj >= b) return c;
  switch (mv.quarters & 3) {
    case 1: return {mv.anchor.i + b - 1 - oj, mv.anchor.j + oi};
    case 2: return {mv.anchor.i + b - 1 - oi, mv.anchor.j + b - 1 - oj};
    case 3: return {mv.anchor.i + oj, mv.anchor.j + b - 1 - oi};
    default: return c;
  }
}

class Board {
 public:
  // values are row-major and must be a permutation of 1..n*m.
  Board(PuzzleSpec spec, std::vector<int> values) : spec_(spec), cells_(std::move(values)) {
    spec_.validate();
    if (cells_.size() != static_cast<std::size_t>(spec_.cells())) {
      throw InvalidBoard("expected " + std::to_string(spec_.cells()) + " values, got " +
                         std::to_string(cells_.size()));
    }
    std::vector<char> seen(cells_.size() + 1, 0);
    for (int v : cells_) {
      if (v < 1 || v > spec_.cells()) throw InvalidBoard("value out of range: " + std::to_string(v));
      if (seen[v]) throw InvalidBoard("duplicate value: " + std::to_string(v));
      seen[v] = 1;
    }
  }

  static Board solved(PuzzleSpec spec) {
    spec.validate();
    std::vector<int> v(static_cast<std::size_t>(spec.cells()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<int>(k) + 1;
    return Board(spec, std::move(v), Trusted{});
  }

  const PuzzleSpec& spec() const noexcept { return spec_; }
  std::span<const int> values() const noexcept { return cells_; }
  int at(Coord c) const { return cells_[cell_index(spec_, c)]; }

  Coord find(int value) const {
    auto it = std::find(cells_.begin(), cells_.end(), value);
    if (it == cells_.end()) throw InvalidBoard("value not on board: " + std::to_string(value));
    return cell_coord(spec_, static_cast<int>(it - cells_.begin()));
  }

  // position index -> value, inverted.
  std::vector<int> positions() const {
    std::vector<int> pos(cells_.size() + 1, -1);
    for (std::size_t k = 0; k < cells_.size(); ++k) pos[cells_[k]] = static_cast<int>(k);
    return pos;
  }

  bool is_solved() const noexcept {
    for (std::size_t k = 0; k < cells_.size(); ++k) {
      if (cells_[k] != static_cast<int>(k) + 1) return false;
    }
    return true;
  }

  Board with_move(const Move& mv) const {
    check_move(spec_, mv);
    std::vector<int> next = cells_;
    const int b = spec_.b;
    for (int oi = 0; oi < b; ++oi) {
      for (int oj = 0; oj < b; ++oj) {
        const Coord from{mv.anchor.i + oi, mv.anchor.j + oj};
        next[cell_index(spec_, rotate_coord(b, mv, from))] = cells_[cell_index(spec_, from)];
      }
    }
    return Board(spec_, std::move(next), Trusted{});
  }

  friend bool operator==(const Board&, const Board&) = default;

 private:
  struct Trusted {};
  Board(PuzzleSpec spec, std::vector<int> values, Trusted) : spec_(spec), cells_(std::move(values)) {}

  PuzzleSpec spec_;
  std::vector<int> cells_;
};

inline Board solved_board(const PuzzleSpec& spec) { return Board::solved(spec); }

inline Board apply_move(const Board& board, const Move& mv) { return board.with_move(mv); }

inline Board apply_sequence(const Board& board, const MoveSequence& seq) {
  Board cur = board;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    try {
      cur = cur.with_move(seq[k]);
    } catch (const IllegalMove& e) {
      throw IllegalMove(e.what(), static_cast<std::ptrdiff_t>(k));
    }
  }
  return cur;
}

inline MoveSequence invert_sequence(const MoveSequence& seq) {
  MoveSequence out;
  out.reserve(seq.size());
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) out.push_back(it->inverse());
  return out;
}

inline MoveSequence concat(MoveSequence a, const MoveSequence& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Row-major anchors, ascending quarters. Empty when b == 1.
inline std::vector<Move> legal_moves(const PuzzleSpec& spec) {
  spec.validate();
  std::vector<Move> out;
  if (spec.b == 1) return out;
  for (int i = 1; i <= spec.anchor_rows(); ++i) {
    for (int j = 1; j <= spec.anchor_cols(); ++j) {
      for (int q = 1; q <= 3; ++q) out.push_back({{i, j}, q});
    }
  }
  return out;
}

// Position permutation of a move: cell index -> index its content moves to.
inline Permutation move_permutation(const PuzzleSpec& spec, const Move& mv) {
  check_move(spec, mv);
  std::vector<int> img(static_cast<std::size_t>(spec.cells()));
  for (int k = 0; k < spec.cells(); ++k) {
    img[k] = cell_index(spec, rotate_coord(spec.b, mv, cell_coord(spec, k)));
  }
  return Permutation(std::move(img));
}

inline Permutation sequence_permutation(const PuzzleSpec& spec, const MoveSequence& seq) {
  Permutation p(static_cast<std::size_t>(spec.cells()));
  for (const auto& mv : seq) p = p.then(move_permutation(spec, mv));
  return p;
}

// Permutation of the b*b cells of a lone block (row-major), valid for b == 1.
inline Permutation rotation_permutation(int b, int quarters) {
  std::vector<int> img(static_cast<std::size_t>(b * b));
  const Move mv{{1, 1}, quarters};
  for (int k = 0; k < b * b; ++k) {
    const Coord c = rotate_coord(b, mv, {k / b + 1, k % b + 1});
    img[k] = (c.i - 1) * b + (c.j - 1);
  }
  return Permutation(std::move(img));
}

// Sends each value's solved position index to its current position index.
inline Permutation as_permutation(const Board& board) {
  const auto vals = board.values();
  std::vector<int> img(vals.size());
  for (std::size_t k = 0; k < vals.size(); ++k) img[vals[k] - 1] = static_cast<int>(k);
  return Permutation(std::move(img));
}

// Every value sits on a cell of the same checkerboard colour as its home.
inline bool parity_respecting(const Board& board) {
  const auto& spec = board.spec();
  const auto vals = board.values();
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const Coord here = cell_coord(spec, static_cast<int>(k));
    const Coord home = cell_coord(spec, vals[k] - 1);
    if (cell_parity(here) != cell_parity(home)) return false;
  }
  return true;
}

// Cells of the given parity class in row-major order.
inline std::vector<Coord> parity_cells(const PuzzleSpec& spec, int parity) {
  std::vector<Coord> out;
  for (int i = 1; i <= spec.n; ++i) {
    for (int j = 1; j <= spec.m; ++j) {
      if (cell_parity({i, j}) == parity) out.push_back({i, j});
    }
  }
  return out;
}

// Restriction of a parity-preserving position permutation to one class,
// relabelled 0..k-1 in row-major order of the class.
inline Permutation restrict_to_parity(const PuzzleSpec& spec, const Permutation& p, int parity) {
  const auto cells = parity_cells(spec, parity);
  std::vector<int> label(static_cast<std::size_t>(spec.cells()), -1);
  for (std::size_t k = 0; k < cells.size(); ++k) label[cell_index(spec, cells[k])] = static_cast<int>(k);
  std::vector<int> img(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const int to = label[p[cell_index(spec, cells[k])]];
    if (to < 0) throw Error("permutation moves a cell across parity classes");
    img[k] = to;
  }
  return Permutation(std::move(img));
}

inline int within_parity_sign(const Board& board, int parity) {
  if (!parity_respecting(board)) throw Error("within-parity sign undefined: board mixes parity classes");
  return restrict_to_parity(board.spec(), as_permutation(board), parity).sign();
}

// Swaps rows and columns together with the spec. Values are carried as-is.
inline Board transpose(const Board& board) {
  const auto& s = board.spec();
  const PuzzleSpec t = s.transposed();
  std::vector<int> v(static_cast<std::size_t>(s.cells()));
  for (int i = 1; i <= s.n; ++i) {
    for (int j = 1; j <= s.m; ++j) v[cell_index(t, {j, i})] = board.at({i, j});
  }
  return Board(t, std::move(v));
}

// Mirrors columns. Values are carried as-is.
inline Board reflect_horizontal(const Board& board) {
  const auto& s = board.spec();
  std::vector<int> v(static_cast<std::size_t>(s.cells()));
  for (int i = 1; i <= s.n; ++i) {
    for (int j = 1; j <= s.m; ++j) v[cell_index(s, {i, s.m + 1 - j})] = board.at({i, j});
  }
  return Board(s, std::move(v));
}

// The move on the transposed board conjugate to mv (transposition reverses
// the sense of rotation).
inline Move transpose_move(const Move& mv) { return {{mv.anchor.j, mv.anchor.i}, 4 - mv.quarters}; }

inline Move reflect_move(const PuzzleSpec& spec, const Move& mv) {
  return {{mv.anchor.i, spec.m - spec.b + 2 - mv.anchor.j}, 4 - mv.quarters};
}

inline MoveSequence transpose_sequence(const MoveSequence& seq) {
  MoveSequence out;
  out.reserve(seq.size());
  for (const auto& mv : seq) out.push_back(transpose_move(mv));
  return out;
}

inline MoveSequence reflect_sequence(const PuzzleSpec& spec, const MoveSequence& seq) {
  MoveSequence out;
  out.reserve(seq.size());
  for (const auto& mv : seq) out.push_back(reflect_move(spec, mv));
  return out;
}

// Transposes the board and renumbers values so that the solved board maps to
// the solved board of the transposed spec. Solving the result with moves S
// solves the original with transpose_sequence(S).
inline Board transpose_problem(const Board& board) {
  const auto& s = board.spec();
  const PuzzleSpec t = s.transposed();
  auto relabel = [&](int v) {
    const Coord home = cell_coord(s, v - 1);
    return solved_value(t, {home.j, home.i});
  };
  std::vector<int> v(static_cast<std::size_t>(s.cells()));
  for (int i = 1; i <= s.n; ++i) {
    for (int j = 1; j <= s.m; ++j) v[cell_index(t, {j, i})] = relabel(board.at({i, j}));
  }
  return Board(t, std::move(v));
}

}  // namespace nrp
