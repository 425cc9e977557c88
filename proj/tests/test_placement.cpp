#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "nrp/placement.hpp"

using namespace nrp;
using namespace nrp::placement;

namespace {

std::vector<Coord> frame_cells(int n, int cls = -1) {
  std::vector<Coord> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n + 1; ++j)
      if (cls < 0 || cell_parity({i, j}) == cls) out.push_back({i, j});
  return out;
}

// Placement needs class-0 cells when n is odd.
std::vector<Coord> eligible(int n) { return frame_cells(n, n % 2 == 1 ? 0 : -1); }

Board random_board(const PuzzleSpec& spec, std::mt19937& rng) {
  std::vector<int> v(static_cast<std::size_t>(spec.cells()));
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  return Board(spec, v);
}

std::array<Coord, 3> distinct3(const std::vector<Coord>& pool, std::mt19937& rng) {
  std::vector<Coord> p = pool;
  std::shuffle(p.begin(), p.end(), rng);
  return {p[0], p[1], p[2]};
}

Coord track(int n, const MoveSequence& seq, Coord c) {
  for (const auto& mv : seq) c = rotate_coord(n, mv, c);
  return c;
}

std::set<Coord> image(int n, const MoveSequence& seq, const std::vector<Coord>& cells) {
  std::set<Coord> out;
  for (auto c : cells) out.insert(track(n, seq, c));
  return out;
}

}  // namespace

TEST(Targets, Values) {
  EXPECT_EQ(spiral_target(6), (Coord{3, 4}));
  EXPECT_EQ(spiral_target(5), (Coord{3, 3}));
  EXPECT_EQ(triple_targets(6).u2, (Coord{2, 1}));
  EXPECT_EQ(triple_targets(7).u2, (Coord{3, 1}));
  for (int n = 5; n <= 12; n += 2) {
    const auto t = triple_targets(n);
    for (auto c : {t.u1, t.u2, t.u3}) EXPECT_EQ(cell_parity(c), 0);
  }
}

TEST(Targets, UIsAtMinimumPositiveDistance) {
  for (int n = 5; n <= 12; ++n) {
    long long best = -1;
    for (auto c : frame_cells(n)) {
      const long long d = doubled_distance2(n, c);
      if (d > 0 && (best < 0 || d < best)) best = d;
    }
    EXPECT_EQ(doubled_distance2(n, spiral_target(n)), best) << "n=" << n;
  }
}

TEST(Spiral, AtTargetIsEmpty) {
  for (int n = 5; n <= 12; ++n) {
    EXPECT_TRUE(spiral_frame(n, spiral_target(n), Variant::Normal).empty());
    EXPECT_TRUE(spiral_frame(n, spiral_target(n), Variant::Star).empty());
  }
}

TEST(Spiral, OtherMinimumCellsNeedOneYMove) {
  for (int n = 5; n <= 12; ++n) {
    const Coord u = spiral_target(n);
    for (auto c : eligible(n)) {
      if (c == u || doubled_distance2(n, c) != doubled_distance2(n, u)) continue;
      const auto seq = spiral_frame(n, c, Variant::Normal);
      ASSERT_EQ(seq.size(), 1u);
      EXPECT_EQ(seq[0].anchor, (Coord{1, 2}));
      EXPECT_EQ(track(n, seq, c), u);
    }
  }
}

TEST(Spiral, SixFromOneTwo) {
  SpiralTrace tr;
  const auto seq = spiral_frame(6, {1, 2}, Variant::Normal, &tr);
  EXPECT_EQ(track(6, seq, {1, 2}), (Coord{3, 4}));
  ASSERT_GE(tr.distances.size(), 2u);
  for (std::size_t k = 1; k < tr.distances.size(); ++k) EXPECT_LT(tr.distances[k], tr.distances[k - 1]);
}

TEST(Spiral, MonovariantAndCap) {
  std::mt19937 rng(2024);
  for (int n = 5; n <= 12; ++n) {
    const auto pool = eligible(n);
    for (int t = 0; t < 1000; ++t) {
      const Coord a = pool[rng() % pool.size()];
      for (auto v : {Variant::Normal, Variant::Star}) {
        SpiralTrace tr;
        const auto seq = spiral_frame(n, a, v, &tr);
        EXPECT_EQ(track(n, seq, a), spiral_target(n));
        EXPECT_LT(tr.iterations, spiral_cap(n));
        EXPECT_EQ(tr.distances.size(), std::size_t(tr.iterations) + 1);
        for (std::size_t k = 1; k < tr.distances.size(); ++k) ASSERT_LT(tr.distances[k], tr.distances[k - 1]);
        for (const auto& mv : seq) EXPECT_TRUE(mv.anchor == (Coord{1, 1}) || mv.anchor == (Coord{1, 2}));
      }
    }
  }
}

TEST(Spiral, Errors) {
  EXPECT_THROW(spiral_frame(4, {1, 1}, Variant::Normal), Error);
  EXPECT_THROW(spiral_frame(5, {1, 2}, Variant::Normal), ParityMismatch);
  EXPECT_THROW(spiral_frame(6, {7, 1}, Variant::Normal), Error);
  EXPECT_NO_THROW(spiral_frame(6, {1, 2}, Variant::Normal));
}

TEST(Spiral, BoardLevelInsideHost) {
  const PuzzleSpec host{9, 11, 6};
  std::mt19937 rng(3);
  const Board b = random_board(host, rng);
  for (bool refl : {false, true}) {
    const Embedding e{{2, 4}, 6, 7, refl};
    const int value = b.at({5, 6});
    const auto seq = spiral(b, value, e, Variant::Normal);
    EXPECT_EQ(apply_sequence(b, seq).find(value), e.to_host(spiral_target(6)));
  }
  EXPECT_THROW(spiral(b, b.at({1, 1}), {{2, 4}, 6, 7, false}, Variant::Normal), Error);
}

TEST(Evacuate, EvenImageSets) {
  for (int n = 6; n <= 12; n += 2) {
    const auto& w = evacuate_frame_seq(n);
    EXPECT_EQ(track(n, w, {1, 1}), (Coord{1, 1}));
    EXPECT_EQ(track(n, w, {2, 1}), (Coord{2, 1}));
    std::vector<Coord> E, want;
    for (int i = 3; i <= n; ++i) {
      E.push_back({i, 1});
      want.push_back({i, 3});
    }
    EXPECT_EQ(image(n, w, E), std::set<Coord>(want.begin(), want.end())) << "n=" << n;
  }
}

TEST(Evacuate, OddImageSets) {
  for (int n = 5; n <= 11; n += 2) {
    const auto& w = evacuate_frame_seq(n);
    EXPECT_EQ(track(n, w, {1, 1}), (Coord{1, 1}));
    EXPECT_EQ(track(n, w, {3, 1}), (Coord{3, 1}));
    std::vector<Coord> E{{2, 1}}, want{{n - 2, n + 1}};
    for (int i = 4; i <= n; ++i) E.push_back({i, 1});
    for (int i = 3; i <= n - 1; ++i) want.push_back({i, 4});
    const auto got = image(n, w, E);
    EXPECT_EQ(got, std::set<Coord>(want.begin(), want.end())) << "n=" << n;
    for (auto c : got) EXPECT_NE(c.j, 1);
  }
}

TEST(Evacuate, BoardLevel) {
  const PuzzleSpec host{7, 9, 6};
  const Board b = solved_board(host);
  const Embedding e{{1, 2}, 6, 7, false};
  const Board a = apply_sequence(b, evacuate_column(b, e));
  for (int i = 3; i <= 6; ++i) EXPECT_NE(a.find(b.at({i, 2})).j, 2);
  EXPECT_EQ(a.at({1, 2}), b.at({1, 2}));
  EXPECT_EQ(a.at({2, 2}), b.at({2, 2}));
}

TEST(Hiding, CycleInverseParksFirstColumnTop) {
  for (int n = 5; n <= 12; ++n) {
    const auto& C = placement::detail::hide_word(n);
    const auto Ci = invert_sequence(C);
    for (auto c : {Coord{1, 1}, Coord{2, 1}, Coord{3, 1}}) {
      const Coord h = track(n, Ci, c);
      EXPECT_EQ(h.j, n + 1) << "n=" << n << " " << c.to_string();
      EXPECT_EQ(track(n, C, h), c);
    }
  }
  const auto C5 = macros::cycle_frame(5).seq;
  EXPECT_EQ(placement::detail::hide_word(5), concat(C5, C5));
  EXPECT_EQ(placement::detail::hide_word(6), macros::cycle_frame(6).seq);
}

TEST(PlaceThree, AlreadyPlacedLeavesBoardUnchanged) {
  for (int n = 5; n <= 12; ++n) {
    const auto t = triple_targets(n);
    EXPECT_TRUE(place_three_frame(n, {t.u1, t.u2, t.u3}).empty());
  }
}

TEST(PlaceThree, RandomTriplesSizeSix) {
  std::mt19937 rng(6);
  const auto pool = eligible(6);
  const auto t = triple_targets(6);
  for (int k = 0; k < 1000; ++k) {
    const auto s = distinct3(pool, rng);
    const auto seq = place_three_frame(6, s);
    EXPECT_EQ(track(6, seq, s[0]), t.u1);
    EXPECT_EQ(track(6, seq, s[1]), t.u2);
    EXPECT_EQ(track(6, seq, s[2]), t.u3);
  }
}

TEST(PlaceThree, RandomTriplesAllSizes) {
  std::mt19937 rng(7);
  for (int n = 5; n <= 12; ++n) {
    const auto pool = eligible(n);
    const auto t = triple_targets(n);
    for (int k = 0; k < 200; ++k) {
      const auto s = distinct3(pool, rng);
      const auto steps = place_three_steps(n, s);
      MoveSequence seq;
      for (const auto& st : steps) seq.insert(seq.end(), st.moves.begin(), st.moves.end());
      EXPECT_EQ(track(n, seq, s[0]), t.u1);
      EXPECT_EQ(track(n, seq, s[1]), t.u2);
      EXPECT_EQ(track(n, seq, s[2]), t.u3);
      EXPECT_EQ(steps.back().label, "a3 to u3");
    }
  }
}

TEST(PlaceThree, ColumnOneCasesTriggerExtractionAndEvacuation) {
  // a2 and a3 start in column 1 below the targets.
  const auto steps = place_three_steps(6, {Coord{2, 3}, Coord{4, 1}, Coord{5, 1}});
  std::set<std::string> labels;
  for (const auto& s : steps) labels.insert(s.label);
  EXPECT_TRUE(labels.contains("a2 to staging"));
  EXPECT_TRUE(labels.contains("a2 to u2"));
  const auto t = triple_targets(6);
  MoveSequence seq;
  for (const auto& s : steps) seq.insert(seq.end(), s.moves.begin(), s.moves.end());
  EXPECT_EQ(track(6, seq, {2, 3}), t.u1);
  EXPECT_EQ(track(6, seq, {4, 1}), t.u2);
  EXPECT_EQ(track(6, seq, {5, 1}), t.u3);
}

TEST(PlaceThree, BoardLevel) {
  std::mt19937 rng(8);
  const PuzzleSpec host{8, 10, 5};
  for (bool refl : {false, true}) {
    const Embedding e{{2, 3}, 5, 6, refl};
    for (int k = 0; k < 50; ++k) {
      const Board b = random_board(host, rng);
      std::vector<int> vals;
      for (auto c : eligible(5)) vals.push_back(b.at(e.to_host(c)));
      std::shuffle(vals.begin(), vals.end(), rng);
      const Board a = apply_sequence(b, place_three(b, vals[0], vals[1], vals[2], e));
      const auto t = triple_targets(5);
      EXPECT_EQ(a.at(e.to_host(t.u1)), vals[0]);
      EXPECT_EQ(a.at(e.to_host(t.u2)), vals[1]);
      EXPECT_EQ(a.at(e.to_host(t.u3)), vals[2]);
    }
  }
}

TEST(PlaceThree, Errors) {
  EXPECT_THROW(place_three_frame(6, {Coord{1, 1}, Coord{1, 1}, Coord{2, 2}}), Error);
  EXPECT_THROW(place_three_frame(5, {Coord{1, 1}, Coord{1, 2}, Coord{2, 2}}), ParityMismatch);
}

TEST(Cycle3, ExactlyThreeCellsCycled) {
  std::mt19937 rng(9);
  for (int n = 5; n <= 8; ++n) {
    const PuzzleSpec f = macros::xy_board(n);
    for (int cls : {0, 1}) {
      const auto pool = n % 2 == 1 ? frame_cells(n, cls) : frame_cells(n);
      for (int k = 0; k < 60; ++k) {
        const auto s = distinct3(pool, rng);
        const auto seq = cycle3_frame(n, s);
        const Board b = solved_board(f);
        const Board a = apply_sequence(b, seq);
        int changed = 0;
        for (auto c : frame_cells(n)) changed += a.at(c) != b.at(c);
        EXPECT_EQ(changed, 3);
        EXPECT_EQ(a.at(s[1]), b.at(s[0]));
        EXPECT_EQ(a.at(s[2]), b.at(s[1]));
        EXPECT_EQ(a.at(s[0]), b.at(s[2]));
        EXPECT_TRUE(apply_sequence(a, concat(seq, seq)).is_solved());
      }
    }
  }
}

TEST(Cycle3, EvenFrameMixedClasses) {
  const auto seq = cycle3_frame(6, {Coord{1, 1}, Coord{1, 2}, Coord{6, 7}});
  const auto p = sequence_permutation(macros::xy_board(6), seq);
  EXPECT_EQ(p.cycle_type(), (std::vector<int>{3}));
  EXPECT_THROW(cycle3_frame(5, {Coord{1, 1}, Coord{1, 2}, Coord{2, 2}}), ParityMismatch);
  EXPECT_THROW(cycle3_frame(6, {Coord{1, 1}, Coord{1, 1}, Coord{2, 2}}), Error);
}

TEST(Cycle3, IndependentOfBoardContent) {
  std::mt19937 rng(10);
  const PuzzleSpec host{8, 9, 6};
  const Embedding e{{2, 2}, 6, 7, false};
  const std::array<Coord, 3> src{Coord{2, 2}, Coord{7, 8}, Coord{4, 5}};
  std::optional<MoveSequence> first;
  for (int k = 0; k < 100; ++k) {
    const Board b = random_board(host, rng);
    const auto seq = cycle3(b, src, e);
    if (!first) first = seq;
    EXPECT_EQ(seq, *first);
    const Board a = apply_sequence(b, seq);
    EXPECT_EQ(a.at(src[1]), b.at(src[0]));
    EXPECT_EQ(a.at(src[2]), b.at(src[1]));
    EXPECT_EQ(a.at(src[0]), b.at(src[2]));
    int changed = 0;
    for (int v = 0; v < host.cells(); ++v) changed += a.values()[v] != b.values()[v];
    EXPECT_EQ(changed, 3);
  }
  EXPECT_THROW(cycle3(solved_board(host), {Coord{1, 1}, Coord{2, 2}, Coord{3, 3}}, e), Error);
}
