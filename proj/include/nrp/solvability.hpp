#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nrp/board.hpp"
#include "nrp/group/bfs.hpp"
#include "nrp/group/schreier_sims.hpp"

namespace nrp {

enum class TheoremBranch {
  SingleBlock,  // b = n = m
  BlockOne,     // b = 1
  B2Small,      // b = 2 on 2x3 / 3x2
  B2General,
  B3Small,      // b = 3 on 3x4 / 4x3
  B3General,
  BMod8_26,     // b >= 4, b = 2,6 (mod 8)
  BMod8_04,
  BMod8_35,
  BMod8_17,
};

inline std::string_view branch_name(TheoremBranch b) {
  switch (b) {
    case TheoremBranch::SingleBlock: return "SingleBlock";
    case TheoremBranch::BlockOne: return "BlockOne";
    case TheoremBranch::B2Small: return "B2Small";
    case TheoremBranch::B2General: return "B2General";
    case TheoremBranch::B3Small: return "B3Small";
    case TheoremBranch::B3General: return "B3General";
    case TheoremBranch::BMod8_26: return "BMod8_26";
    case TheoremBranch::BMod8_04: return "BMod8_04";
    case TheoremBranch::BMod8_35: return "BMod8_35";
    case TheoremBranch::BMod8_17: return "BMod8_17";
  }
  return "?";
}

// Human-readable condition, as shown in the playground badge.
inline std::string_view branch_description(TheoremBranch b) {
  switch (b) {
    case TheoremBranch::SingleBlock: return "b = n = m (rotations of solved only)";
    case TheoremBranch::BlockOne: return "b = 1 (solved board only)";
    case TheoremBranch::B2Small: return "b = 2 on 2x3 (120 reachable)";
    case TheoremBranch::B2General: return "b = 2 (all boards)";
    case TheoremBranch::B3Small: return "b = 3 on 3x4 (720 reachable)";
    case TheoremBranch::B3General: return "b = 3 (even, correct parity)";
    case TheoremBranch::BMod8_26: return "b ≡ 2,6 (mod 8)";
    case TheoremBranch::BMod8_04: return "b ≡ 0,4 (mod 8)";
    case TheoremBranch::BMod8_35: return "b ≡ 3,5 (mod 8)";
    case TheoremBranch::BMod8_17: return "b ≡ 1,7 (mod 8)";
  }
  return "?";
}

namespace check_names {
inline constexpr std::string_view kSquareParity = "square-parity";
inline constexpr std::string_view kGlobalEven = "global-even";
inline constexpr std::string_view kPerParityEven = "per-parity-even";
inline constexpr std::string_view kEnumeratedSet = "enumerated-set";
}  // namespace check_names

struct RestrictionCheck {
  std::string name;
  bool passed = false;

  friend bool operator==(const RestrictionCheck&, const RestrictionCheck&) = default;
};

struct SolvabilityVerdict {
  bool solvable = false;
  TheoremBranch branch = TheoremBranch::BlockOne;
  std::vector<RestrictionCheck> checks;

  bool failed(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return !c.passed;
    }
    return false;
  }
};

// Branches are decided on the orientation with n <= m; precedence follows the
// case list: single block, b = 1, b = 2, b = 3, then b mod 8.
inline TheoremBranch classify_spec(PuzzleSpec spec) {
  spec.validate();
  if (spec.n > spec.m) spec = spec.transposed();
  const int n = spec.n, m = spec.m, b = spec.b;
  if (b == n && b == m) return TheoremBranch::SingleBlock;
  if (b == 1) return TheoremBranch::BlockOne;
  if (b == 2) return (n == 2 && m == 3) ? TheoremBranch::B2Small : TheoremBranch::B2General;
  if (b == 3) return (n == 3 && m == 4) ? TheoremBranch::B3Small : TheoremBranch::B3General;
  switch (b % 8) {
    case 2:
    case 6: return TheoremBranch::BMod8_26;
    case 0:
    case 4: return TheoremBranch::BMod8_04;
    case 3:
    case 5: return TheoremBranch::BMod8_35;
    default: return TheoremBranch::BMod8_17;
  }
}

// Brings a board to the n <= m orientation (renumbering values).
inline Board normalize_orientation(const Board& board) {
  return board.spec().n > board.spec().m ? transpose_problem(board) : board;
}

namespace detail {

// Reachable-set caches for the two enumerated branches. Function-local
// statics give synchronized, once-only construction.
inline const group::StateSet& reachable_2x3() {
  static const group::StateSet set = *group::bfs_reachable({2, 3, 2}, 1000, true).states;
  return set;
}

inline const group::StateSet& reachable_3x4() {
  static const group::StateSet set = *group::bfs_reachable({3, 4, 3}, 10000, true).states;
  return set;
}

inline bool is_rotation_of_solved(const Board& board) {
  // Only reached for b == n == m, where the single anchor is (1,1).
  Board r = solved_board(board.spec());
  if (board == r) return true;
  if (board.spec().b == 1) return false;
  for (int q = 1; q <= 3; ++q) {
    if (board == apply_move(solved_board(board.spec()), Move{{1, 1}, q})) return true;
  }
  return false;
}

}  // namespace detail

inline SolvabilityVerdict is_solvable(const Board& input) {
  const Board board = normalize_orientation(input);
  SolvabilityVerdict v;
  v.branch = classify_spec(board.spec());
  auto add = [&](std::string_view name, bool ok) { v.checks.push_back({std::string(name), ok}); };
  auto square_parity = [&] {
    const bool ok = parity_respecting(board);
    add(check_names::kSquareParity, ok);
    return ok;
  };
  auto global_even = [&] {
    const bool ok = as_permutation(board).sign() == 1;
    add(check_names::kGlobalEven, ok);
    return ok;
  };

  switch (v.branch) {
    case TheoremBranch::SingleBlock: {
      const bool ok = detail::is_rotation_of_solved(board);
      add(check_names::kEnumeratedSet, ok);
      v.solvable = ok;
      break;
    }
    case TheoremBranch::BlockOne: {
      const bool ok = board.is_solved();
      add(check_names::kEnumeratedSet, ok);
      v.solvable = ok;
      break;
    }
    case TheoremBranch::B2Small: {
      const bool ok = detail::reachable_2x3().contains(group::state_key(board));
      add(check_names::kEnumeratedSet, ok);
      v.solvable = ok;
      break;
    }
    case TheoremBranch::B3Small: {
      const bool ok = detail::reachable_3x4().contains(group::state_key(board));
      add(check_names::kEnumeratedSet, ok);
      v.solvable = ok;
      break;
    }
    case TheoremBranch::B2General:
    case TheoremBranch::BMod8_26: v.solvable = true; break;
    case TheoremBranch::BMod8_04: v.solvable = global_even(); break;
    case TheoremBranch::B3General:
    case TheoremBranch::BMod8_35: {
      const bool sq = square_parity();
      const bool ev = global_even();
      v.solvable = sq && ev;
      break;
    }
    case TheoremBranch::BMod8_17: {
      const bool sq = square_parity();
      bool per = false;
      if (sq) per = within_parity_sign(board, 0) == 1 && within_parity_sign(board, 1) == 1;
      add(check_names::kPerParityEven, per);
      v.solvable = sq && per;
      break;
    }
  }
  return v;
}

// Sizes of the two checkerboard classes (p0 holds the cells with i + j even).
inline std::pair<int, int> parity_class_sizes(const PuzzleSpec& spec) {
  const int p0 = (spec.cells() + 1) / 2;
  return {p0, spec.cells() - p0};
}

inline group::BigInt predicted_reachable_count(const PuzzleSpec& spec) {
  using group::factorial;
  const auto [p0, p1] = parity_class_sizes(spec);
  const auto all = factorial(static_cast<unsigned>(spec.cells()));
  switch (classify_spec(spec)) {
    case TheoremBranch::SingleBlock: return spec.b == 1 ? 1 : 4;
    case TheoremBranch::BlockOne: return 1;
    case TheoremBranch::B2Small: return 120;
    case TheoremBranch::B3Small: return 720;
    case TheoremBranch::B2General:
    case TheoremBranch::BMod8_26: return all;
    case TheoremBranch::BMod8_04: return all / 2;
    case TheoremBranch::B3General:
    case TheoremBranch::BMod8_35:
      return factorial(static_cast<unsigned>(p0)) * factorial(static_cast<unsigned>(p1)) / 2;
    case TheoremBranch::BMod8_17:
      return (factorial(static_cast<unsigned>(p0)) / 2) * (factorial(static_cast<unsigned>(p1)) / 2);
  }
  return 0;
}

}  // namespace nrp
