#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "nrp/board.hpp"

namespace nrp {

struct Scramble {
  Board board;
  MoveSequence moves;
};

// k uniformly drawn legal moves from the solved board. Deterministic per
// (spec, seed, k). With b == 1 there are no moves and the board stays solved.
inline Scramble scramble(const PuzzleSpec& spec, std::uint64_t seed, int k) {
  if (k < 0) throw Error("scramble length must be non-negative");
  const auto moves = legal_moves(spec);
  Board board = solved_board(spec);
  MoveSequence seq;
  if (moves.empty()) return {std::move(board), std::move(seq)};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
  seq.reserve(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) {
    const Move& mv = moves[pick(rng)];
    board = board.with_move(mv);
    seq.push_back(mv);
  }
  return {std::move(board), std::move(seq)};
}

}  // namespace nrp
