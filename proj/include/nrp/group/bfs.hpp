#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nrp/board.hpp"
#include "nrp/error.hpp"

namespace nrp::group {

// Canonical state key: the row-major value tuple, one byte per cell.
inline std::string state_key(std::span<const int> values) {
  std::string key(values.size(), '\0');
  for (std::size_t k = 0; k < values.size(); ++k) key[k] = static_cast<char>(values[k]);
  return key;
}

inline std::string state_key(const Board& board) { return state_key(board.values()); }

using StateSet = std::unordered_set<std::string>;

struct BfsResult {
  std::uint64_t count = 0;
  std::optional<StateSet> states;
};

namespace detail {

// Cell-index images of every legal move, for fast state expansion.
inline std::vector<std::vector<int>> move_tables(const PuzzleSpec& spec) {
  std::vector<std::vector<int>> tables;
  for (const auto& mv : legal_moves(spec)) {
    const auto p = move_permutation(spec, mv);
    tables.emplace_back(p.images().begin(), p.images().end());
  }
  return tables;
}

inline void apply_table(const std::string& from, const std::vector<int>& table, std::string& to) {
  for (std::size_t k = 0; k < from.size(); ++k) to[table[k]] = from[k];
}

}  // namespace detail

// Exact number of boards reachable from solved. Refuses with LimitExceeded as
// soon as more than `limit` states are discovered; never returns a partial count.
inline BfsResult bfs_reachable(const PuzzleSpec& spec, std::uint64_t limit, bool keep_states = false) {
  spec.validate();
  if (spec.cells() > 255) throw LimitExceeded("state keys support at most 255 cells");
  const auto tables = detail::move_tables(spec);
  StateSet seen;
  std::deque<std::string> frontier;
  const std::string start = state_key(solved_board(spec));
  seen.insert(start);
  frontier.push_back(start);
  std::string next(start.size(), '\0');
  while (!frontier.empty()) {
    const std::string cur = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& t : tables) {
      detail::apply_table(cur, t, next);
      if (seen.insert(next).second) {
        if (seen.size() > limit) {
          throw LimitExceeded("reachable set of " + spec.to_string() + " exceeds limit " + std::to_string(limit));
        }
        frontier.push_back(next);
      }
    }
  }
  BfsResult r;
  r.count = seen.size();
  if (keep_states) r.states = std::move(seen);
  return r;
}

// Shortest move sequence from `board` to solved, searching at most `limit`
// states. Empty optional when solved is not reached.
inline std::optional<MoveSequence> bfs_solve(const Board& board, std::uint64_t limit) {
  const auto& spec = board.spec();
  const auto moves = legal_moves(spec);
  const auto tables = detail::move_tables(spec);
  const std::string start = state_key(board);
  const std::string goal = state_key(solved_board(spec));
  struct Parent {
    std::string prev;
    int move = -1;
  };
  std::unordered_map<std::string, Parent> parent;
  parent.emplace(start, Parent{});
  std::deque<std::string> frontier{start};
  std::string next(start.size(), '\0');
  bool found = start == goal;
  while (!frontier.empty() && !found) {
    const std::string cur = std::move(frontier.front());
    frontier.pop_front();
    for (std::size_t t = 0; t < tables.size(); ++t) {
      detail::apply_table(cur, tables[t], next);
      if (parent.emplace(next, Parent{cur, static_cast<int>(t)}).second) {
        if (next == goal) {
          found = true;
          break;
        }
        if (parent.size() > limit) return std::nullopt;
        frontier.push_back(next);
      }
    }
  }
  if (!found) return std::nullopt;
  MoveSequence path;
  for (std::string s = goal; s != start;) {
    const auto& p = parent.at(s);
    path.push_back(moves[p.move]);
    s = p.prev;
  }
  return MoveSequence(path.rbegin(), path.rend());
}

}  // namespace nrp::group
