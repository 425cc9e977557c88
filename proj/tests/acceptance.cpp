// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nrp/group/bfs.hpp"
#include "nrp/group/movement_graph.hpp"
#include "nrp/group/s6.hpp"
#include "nrp/group/schreier_sims.hpp"
#include "nrp/macros.hpp"
#include "nrp/placement.hpp"
#include "nrp/scramble.hpp"
#include "nrp/solvability.hpp"
#include "nrp/solver.hpp"

using namespace nrp;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << "first failure: ";
      if (pass) note << what;
      pass = false;
    }
  }
};

using Check = std::function<void(Outcome&)>;

int inversion_sign(const Permutation& p) {
  long inv = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t c = a + 1; c < p.size(); ++c) inv += p[static_cast<int>(a)] > p[static_cast<int>(c)];
  return inv % 2 ? -1 : 1;
}

Board with_swaps(const PuzzleSpec& spec, std::initializer_list<std::pair<Coord, Coord>> swaps) {
  const Board s = solved_board(spec);
  std::vector<int> v(s.values().begin(), s.values().end());
  for (auto [a, c] : swaps) std::swap(v[cell_index(spec, a)], v[cell_index(spec, c)]);
  return Board(spec, v);
}

std::vector<int> class_ct(const PuzzleSpec& spec, const MoveSequence& seq, int cls) {
  return restrict_to_parity(spec, sequence_permutation(spec, seq), cls).cycle_type();
}

Coord track(int n, const MoveSequence& seq, Coord c) {
  for (const auto& mv : seq) c = rotate_coord(n, mv, c);
  return c;
}

void reachability(Outcome& o) {
  const std::pair<PuzzleSpec, std::uint64_t> rows[] = {
      {{2, 3, 2}, 120}, {{3, 4, 3}, 720}, {{3, 3, 2}, 362880}, {{2, 4, 2}, 40320}};
  for (const auto& [spec, want] : rows) {
    const auto got = group::bfs_reachable(spec, want).count;
    o.note << spec.to_string() << "=" << got << " ";
    o.require(got == want, spec.to_string());
  }
}

void group_orders(Outcome& o) {
  using group::factorial;
  const std::pair<PuzzleSpec, group::BigInt> rows[] = {
      {{2, 3, 2}, 120},
      {{3, 4, 3}, 720},
      {{3, 3, 2}, factorial(9)},
      {{3, 5, 3}, factorial(8) * factorial(7) / 2},
      {{4, 5, 4}, factorial(20) / 2},
      {{5, 6, 5}, factorial(15) * factorial(15) / 2}};
  for (const auto& [spec, want] : rows) {
    const auto got = group::group_order(spec);
    o.note << spec.to_string() << "=" << got.str() << " ";
    o.require(got == want, spec.to_string() + " order");
    o.require(got == predicted_reachable_count(spec), spec.to_string() + " prediction");
  }
}

void parity_table(Outcome& o) {
  for (int b = 1; b <= 12; ++b) {
    const auto p = rotation_permutation(b, 1);
    const int want = (b % 4 == 0 || b % 4 == 1 || b % 4 == 3) ? 1 : -1;
    o.require(p.sign() == want && inversion_sign(p) == want, "quarter-turn sign b=" + std::to_string(b));
  }
  for (int b = 3; b <= 15; b += 2) {
    const Board s = apply_move(solved_board({b, b, b}), {{1, 1}, 1});
    const int want = (b % 8 == 1 || b % 8 == 7) ? 1 : -1;
    for (int cls = 0; cls < 2; ++cls) {
      const auto r = restrict_to_parity(s.spec(), as_permutation(s), cls);
      o.require(within_parity_sign(s, cls) == want && inversion_sign(r) == want,
                "within-parity sign b=" + std::to_string(b));
    }
  }
  o.note << "b=1..12 quarter turns, odd b=3..15 per class";
}

void macro_suite(Outcome& o) {
  using namespace macros;
  using CT = std::vector<int>;
  for (int n = 4; n <= 12; ++n) {
    const PuzzleSpec f = xy_board(n);
    const auto belt = belt_frame(n);
    const int len = 3 * n - 1;
    const Board a = apply_sequence(solved_board(f), cycle_frame(n).seq);
    for (int k = 0; k < len; ++k) {
      o.require(a.find(solved_value(f, belt[k])) == belt[(k + n - 3) % len], "cycle n=" + std::to_string(n));
    }
    for (int i = 1; i < n; ++i)
      for (int j = 2; j <= n; ++j) o.require(a.at({i, j}) == solved_value(f, {i, j}), "cycle interior");
  }
  for (int n = 5; n <= 12; ++n) {
    const PuzzleSpec f = xy_board(n);
    const auto belt = belt_frame(n);
    const std::set<Coord> bs(belt.begin(), belt.end());
    const Board a = apply_sequence(solved_board(f), conjugator_A_frame(n).seq);
    std::vector<Coord> meet;
    for (auto c : belt) {
      if (bs.contains(a.find(solved_value(f, c)))) meet.push_back(a.find(solved_value(f, c)));
    }
    o.require(meet == std::vector<Coord>{{n, n + 1}}, "A(belt) n=" + std::to_string(n));
    o.require(phi_frame(n).permutation().cycle_type() == CT{3}, "phi n=" + std::to_string(n));

    const auto& w = placement::evacuate_frame_seq(n);
    std::set<Coord> img, want;
    if (n % 2 == 0) {
      for (int i = 3; i <= n; ++i) {
        img.insert(track(n, w, {i, 1}));
        want.insert({i, 3});
      }
      o.require(track(n, w, {1, 1}) == Coord{1, 1} && track(n, w, {2, 1}) == Coord{2, 1}, "evacuate fixes");
    } else {
      img.insert(track(n, w, {2, 1}));
      want.insert({n - 2, n + 1});
      for (int i = 4; i <= n; ++i) img.insert(track(n, w, {i, 1}));
      for (int i = 3; i <= n - 1; ++i) want.insert({i, 4});
      o.require(track(n, w, {1, 1}) == Coord{1, 1} && track(n, w, {3, 1}) == Coord{3, 1}, "evacuate fixes");
    }
    o.require(img == want, "evacuate image n=" + std::to_string(n));
  }
  o.require(swap_2n2_frame().permutation().cycle_type() == CT{2}, "swap_2n2");
  o.require(swap_b2_frame().permutation().cycle_type() == CT{2}, "swap_b2");
  {
    const PuzzleSpec s{3, 4, 3};
    const auto p0 = restrict_to_parity(s, swap_343_P0().permutation(), 0);
    const auto cells = parity_cells(s, 0);
    const auto moved = p0.moved_points();
    o.require(p0.cycle_type() == CT{2} && moved.size() == 2 &&
                  std::set<Coord>{cells[moved[0]], cells[moved[1]]} == std::set<Coord>{{2, 4}, {3, 3}},
              "swap_343_P0");
  }
  {
    const auto m = macros_3n3_frame();
    const PuzzleSpec w{3, 5, 3};
    o.require(class_ct(w, m.p0_swap.seq, 0) == CT{2}, "p0_swap");
    o.require(class_ct(w, m.p1_cycle.seq, 1) == CT{3} && class_ct(w, m.p1_cycle.seq, 0).empty(), "p1_cycle");
    o.require(class_ct(w, m.p1_swap.seq, 1) == CT{2}, "p1_swap");
  }
  o.require(three_cycle_b3_frame().permutation().cycle_type() == CT{3}, "three_cycle_b3");
  {
    const auto base = sequence_permutation({4, 5, 4}, expand_word(kB4BaseWord, xy_letters()));
    int order = 1;
    for (int c : base.cycle_type()) order = std::lcm(order, c);
    o.require(order % 3 == 0, "b4 base word order");
    o.require(three_cycle_b4_frame().permutation().cycle_type() == CT{3} && three_cycle_b4_frame().seq.size() == 210,
              "three_cycle_b4");
  }
  o.note << "cycle n=4..12, A/phi/evacuate n=5..12, 9 block macros";
}

void spiral_monovariant(Outcome& o) {
  std::mt19937 rng(5150);
  long runs = 0, steps = 0;
  for (int n = 5; n <= 12; ++n) {
    const PuzzleSpec f = macros::xy_board(n);
    std::vector<int> v(static_cast<std::size_t>(f.cells()));
    std::iota(v.begin(), v.end(), 1);
    for (int t = 0; t < 1000; ++t) {
      std::shuffle(v.begin(), v.end(), rng);
      const Board b(f, v);
      int value;
      do {
        value = 1 + static_cast<int>(rng() % static_cast<unsigned>(f.cells()));
      } while (n % 2 == 1 && cell_parity(b.find(value)) != 0);
      for (auto var : {placement::Variant::Normal, placement::Variant::Star}) {
        placement::SpiralTrace tr;
        MoveSequence seq;
        try {
          seq = placement::spiral(b, value, Embedding::whole(f), var, &tr);
        } catch (const std::exception& e) {
          o.require(false, std::string("spiral threw: ") + e.what());
          continue;
        }
        ++runs;
        steps += tr.iterations;
        for (std::size_t k = 1; k < tr.distances.size(); ++k) {
          o.require(tr.distances[k] < tr.distances[k - 1], "distance rose at n=" + std::to_string(n));
        }
        o.require(tr.iterations < placement::spiral_cap(n), "cap reached");
        o.require(apply_sequence(b, seq).find(value) == placement::spiral_target(n), "missed u");
      }
    }
  }
  o.note << runs << " spirals, " << steps << " loop steps";
}

void solver_round_trip(Outcome& o) {
  const PuzzleSpec matrix[] = {{2, 3, 2}, {2, 6, 2}, {3, 3, 2}, {4, 5, 2}, {3, 4, 3}, {3, 7, 3}, {4, 5, 3},
                               {5, 5, 3}, {4, 5, 4}, {6, 7, 4}, {5, 6, 5}, {6, 7, 6}, {7, 8, 7}};
  std::size_t solved = 0, longest = 0;
  for (const auto& spec : matrix) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Board b = scramble(spec, seed, 200).board;
      try {
        const auto r = solve(b);
        const bool ok = r.solved() && apply_sequence(b, r.moves).is_solved();
        o.require(ok, spec.to_string() + " seed " + std::to_string(seed));
        solved += ok;
        longest = std::max(longest, r.moves.size());
      } catch (const std::exception& e) {
        o.require(false, spec.to_string() + " threw " + e.what());
      }
    }
  }
  const Board bad[] = {
      with_swaps({4, 5, 4}, {{{1, 1}, {1, 2}}}),
      with_swaps({4, 5, 4}, {{{2, 2}, {4, 5}}}),
      with_swaps({5, 6, 5}, {{{1, 1}, {1, 2}}}),
      with_swaps({5, 6, 5}, {{{1, 1}, {3, 3}}}),
      with_swaps({7, 8, 7}, {{{1, 1}, {1, 2}}}),
      with_swaps({7, 8, 7}, {{{1, 1}, {1, 3}}, {{1, 2}, {1, 4}}}),
  };
  for (const auto& b : bad) {
    o.require(solve(b).outcome == SolveOutcome::Unsolvable, "violating board on " + b.spec().to_string());
  }
  o.note << solved << "/1300 solved, longest " << longest << " moves, " << std::size(bad) << " violating boards rejected";
}

void classifier_oracle(Outcome& o) {
  std::size_t boards = 0, disagreements = 0;
  {
    const PuzzleSpec spec{2, 3, 2};
    const auto reach = group::bfs_reachable(spec, 1000, true);
    const auto g = group::PermGroup::of_puzzle(spec);
    std::vector<int> v{1, 2, 3, 4, 5, 6};
    do {
      const Board b(spec, v);
      const bool in = reach.states->contains(group::state_key(b));
      disagreements += is_solvable(b).solvable != in;
      disagreements += g.contains(as_permutation(b)) != in;
      ++boards;
    } while (std::next_permutation(v.begin(), v.end()));
  }
  {
    const PuzzleSpec spec{3, 4, 3};
    const auto reach = group::bfs_reachable(spec, 10000, true);
    const auto g = group::PermGroup::of_puzzle(spec);
    for (const auto& key : *reach.states) {
      std::vector<int> v(key.begin(), key.end());
      for (auto& x : v) x = static_cast<unsigned char>(x);
      const Board b(spec, v);
      disagreements += !is_solvable(b).solvable || !g.contains(as_permutation(b));
      ++boards;
    }
    // Every parity-respecting board: 6! arrangements per class.
    const auto c0 = parity_cells(spec, 0), c1 = parity_cells(spec, 1);
    std::vector<int> s0, s1;
    for (auto c : c0) s0.push_back(solved_value(spec, c));
    for (auto c : c1) s1.push_back(solved_value(spec, c));
    std::size_t accepted = 0;
    std::vector<int> v(12);
    do {
      for (std::size_t k = 0; k < 6; ++k) v[cell_index(spec, c0[k])] = s0[k];
      std::vector<int> t1 = s1;
      do {
        for (std::size_t k = 0; k < 6; ++k) v[cell_index(spec, c1[k])] = t1[k];
        const Board b(spec, v);
        const bool in = reach.states->contains(group::state_key(b));
        const bool cls = is_solvable(b).solvable;
        disagreements += cls != in;
        disagreements += g.contains(as_permutation(b)) != in;
        accepted += cls;
        ++boards;
      } while (std::next_permutation(t1.begin(), t1.end()));
    } while (std::next_permutation(s0.begin(), s0.end()));
    o.require(accepted == 720, "parity-respecting boards accepted on (3,4,3) " + std::to_string(accepted));
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  o.note << boards << " boards, " << disagreements << " disagreements";
}

void outer_automorphism(Outcome& o) {
  const auto c = group::construct_psi();
  const auto r = group::verify_outer(c.psi);
  o.require(c.conflicts == 0 && c.psi.total(), "psi well defined");
  o.require(r.homomorphism_failures == 0, "homomorphism");
  o.require(r.bijective, "bijective");
  o.require(r.transposition_to_triple, "transposition class image");
  o.require(r.square_conjugator.has_value(), "psi^2 inner");
  const auto [g0, g1] = group::build_movement_graphs();
  const auto iso = group::find_isomorphism(g0, g1);
  o.require(!iso.bijections.empty(), "movement-graph isomorphism");
  if (!iso.bijections.empty()) {
    const auto& f = iso.bijections.front();
    std::mt19937 rng(1000);
    for (int w = 0; w < 1000; ++w) {
      const int len = 1 + static_cast<int>(rng() % 24);
      std::vector<std::pair<char, int>> word;
      for (int k = 0; k < len; ++k) word.emplace_back(rng() % 2 ? 'X' : 'Y', 1 + static_cast<int>(rng() % 3));
      for (int p = 0; p < 15; ++p) {
        int a = p, b = f[p];
        for (const auto& [l, q] : word) {
          a = g0.step(a, l, q);
          b = g1.step(b, l, q);
        }
        o.require(f[a] == b, "word equivariance");
      }
    }
  }
  o.note << r.pairs_checked << " products, " << iso.bijections.size() << " graph bijection(s), 1000 words";
}

void linkage(Outcome& o) {
  const auto r = group::check_linkage_343();
  o.require(r.states == 720, "state count");
  o.require(r.violations == 0, "violations");
  o.note << r.states << " states, " << r.violations << " violations";
}

}  // namespace

int main() {
  const std::pair<const char*, Check> checks[] = {
      {"reachability-counts", reachability},
      {"group-orders", group_orders},
      {"move-parity-table", parity_table},
      {"macro-cycle-structure", macro_suite},
      {"spiral-monovariant", spiral_monovariant},
      {"solver-round-trip", solver_round_trip},
      {"classifier-oracle-agreement", classifier_oracle},
      {"outer-automorphism", outer_automorphism},
      {"linkage-343", linkage},
  };
  int failed = 0;
  for (const auto& [name, fn] : checks) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << std::fixed << std::setprecision(2) << s << " s) "
              << o.note.str() << "\n";
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
