#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "nrp/board.hpp"
#include "nrp/error.hpp"
#include "nrp/permutation.hpp"

namespace nrp::group {

using BigInt = boost::multiprecision::cpp_int;

// Permutation group given by generators, with a base and strong generating
// set built on first use by deterministic Schreier-Sims.
//
// Each level k stores the base point, the strong generators fixing the
// earlier base points, and a transversal: for every orbit point x an element
// u_x with u_x(base point) = x. Transversal entries are never replaced once
// set, so an element that sifted to the identity keeps doing so as the chain
// grows. This lets every Schreier generator be tested exactly once.
class PermGroup {
 public:
  // Largest degree accepted for puzzle groups.
  static constexpr int kMaxPuzzleDegree = 64;

  PermGroup(std::size_t degree, std::vector<Permutation> generators)
      : degree_(degree), generators_(std::move(generators)), chain_(std::make_shared<Chain>()) {
    for (const auto& g : generators_) {
      if (g.size() != degree_) throw Error("generator degree mismatch");
    }
  }

  // Group generated by the quarter-turn position permutations of a puzzle.
  static PermGroup of_puzzle(const PuzzleSpec& spec) {
    spec.validate();
    if (spec.cells() > kMaxPuzzleDegree) {
      throw LimitExceeded("group degree " + std::to_string(spec.cells()) + " exceeds " +
                          std::to_string(kMaxPuzzleDegree));
    }
    std::vector<Permutation> gens;
    for (const auto& mv : legal_moves(spec)) {
      if (mv.quarters == 1) gens.push_back(move_permutation(spec, mv));
    }
    return PermGroup(static_cast<std::size_t>(spec.cells()), std::move(gens));
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }

  const std::vector<int>& base() const { return chain().base; }
  const std::vector<Permutation>& strong_generators() const { return chain().strong; }

  std::vector<std::size_t> orbit_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& lv : chain().levels) out.push_back(lv.orbit.size());
    return out;
  }

  BigInt order() const {
    BigInt o = 1;
    for (const auto& lv : chain().levels) o *= static_cast<unsigned>(lv.orbit.size());
    return o;
  }

  bool contains(const Permutation& p) const {
    if (p.size() != degree_) return false;
    const auto& c = chain();
    auto [residue, level] = sift(c, p, 0);
    return level == c.levels.size() && residue.is_identity();
  }

 private:
  struct Level {
    int point = 0;
    std::vector<std::size_t> gens;          // indices into Chain::strong
    std::vector<int> orbit;                 // orbit points, discovery order
    std::vector<int> slot;                  // point -> index in orbit, -1 if absent
    std::vector<Permutation> trans;         // trans[k] maps point to orbit[k]
    std::vector<Permutation> trans_inv;
    std::vector<std::vector<char>> tested;  // tested[orbit idx][gen idx]
  };

  struct Chain {
    std::once_flag built;
    std::vector<int> base;
    std::vector<Permutation> strong;
    std::vector<Level> levels;
  };

  const Chain& chain() const {
    std::call_once(chain_->built, [this] { build(*chain_); });
    return *chain_;
  }

  static std::pair<Permutation, std::size_t> sift(const Chain& c, Permutation h, std::size_t start) {
    for (std::size_t l = start; l < c.levels.size(); ++l) {
      const auto& lv = c.levels[l];
      const int x = h[lv.point];
      const int k = lv.slot[x];
      if (k < 0) return {std::move(h), l};
      h = h.then(lv.trans_inv[k]);
    }
    return {std::move(h), c.levels.size()};
  }

  static void extend_orbit(const Chain& c, Level& lv) {
    for (std::size_t idx = 0; idx < lv.orbit.size(); ++idx) {
      for (std::size_t gi : lv.gens) {
        const auto& g = c.strong[gi];
        const int y = g[lv.orbit[idx]];
        if (lv.slot[y] >= 0) continue;
        lv.slot[y] = static_cast<int>(lv.orbit.size());
        lv.orbit.push_back(y);
        lv.trans.push_back(lv.trans[idx].then(g));
        lv.trans_inv.push_back(lv.trans.back().inverse());
      }
    }
  }

  void add_level(Chain& c, int point) const {
    Level lv;
    lv.point = point;
    lv.slot.assign(degree_, -1);
    lv.slot[point] = 0;
    lv.orbit.push_back(point);
    lv.trans.emplace_back(degree_);
    lv.trans_inv.emplace_back(degree_);
    c.base.push_back(point);
    c.levels.push_back(std::move(lv));
  }

  // Adds a strong generator that fixes the first `first` base points to
  // levels first..last, appending a base point when it fixes them all.
  void add_strong(Chain& c, Permutation g, std::size_t first) const {
    const std::size_t id = c.strong.size();
    c.strong.push_back(std::move(g));
    const auto& s = c.strong[id];
    std::size_t last = first;
    while (last < c.levels.size() && s[c.levels[last].point] == c.levels[last].point) ++last;
    if (last == c.levels.size()) {
      // Base points are taken in ascending order among the points it moves.
      add_level(c, s.moved_points().front());
    }
    for (std::size_t l = first; l <= last; ++l) {
      c.levels[l].gens.push_back(id);
      extend_orbit(c, c.levels[l]);
    }
  }

  void build(Chain& c) const {
    for (const auto& g : generators_) {
      if (g.is_identity()) continue;
      auto [residue, level] = sift(c, g, 0);
      if (level == c.levels.size() && residue.is_identity()) continue;
      add_strong(c, g, 0);
    }
    if (c.levels.empty()) return;

    std::size_t i = c.levels.size() - 1;
    while (true) {
      bool restarted = false;
      for (std::size_t a = 0; a < c.levels[i].orbit.size() && !restarted; ++a) {
        for (std::size_t s = 0; s < c.levels[i].gens.size(); ++s) {
          Level& lv = c.levels[i];
          if (lv.tested.size() < lv.orbit.size()) lv.tested.resize(lv.orbit.size());
          auto& row = lv.tested[a];
          if (row.size() < lv.gens.size()) row.resize(lv.gens.size(), 0);
          if (row[s]) continue;
          row[s] = 1;
          const auto& gen = c.strong[lv.gens[s]];
          const int b = gen[lv.orbit[a]];
          Permutation h = lv.trans[a].then(gen).then(lv.trans_inv[lv.slot[b]]);
          if (h.is_identity()) continue;
          auto [residue, level] = sift(c, std::move(h), i + 1);
          if (level == c.levels.size() && residue.is_identity()) continue;
          add_strong(c, std::move(residue), i + 1);
          i = std::min(level, c.levels.size() - 1);
          restarted = true;
          break;
        }
      }
      if (restarted) continue;
      if (i == 0) break;
      --i;
    }
  }

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::shared_ptr<Chain> chain_;
};

inline BigInt factorial(unsigned k) {
  BigInt f = 1;
  for (unsigned t = 2; t <= k; ++t) f *= t;
  return f;
}

// Exact order of the group generated by the legal moves of spec.
inline BigInt group_order(const PuzzleSpec& spec) { return PermGroup::of_puzzle(spec).order(); }

}  // namespace nrp::group
