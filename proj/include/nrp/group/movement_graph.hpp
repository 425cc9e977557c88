#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nrp/board.hpp"
#include "nrp/error.hpp"

namespace nrp::group {

using CellPair = std::array<Coord, 2>;
// A node is a set of disjoint cell pairs: one pair for a subset of the even
// class, three pairs for a pairing of the odd class. Kept sorted.
using PairSet = std::vector<CellPair>;

inline PairSet canonical(PairSet s) {
  for (auto& p : s) {
    if (p[1] < p[0]) std::swap(p[0], p[1]);
  }
  std::sort(s.begin(), s.end());
  return s;
}

inline PairSet act(int b, const Move& mv, const PairSet& s) {
  PairSet out = s;
  for (auto& p : out) {
    for (auto& c : p) c = rotate_coord(b, mv, c);
  }
  return canonical(std::move(out));
}

inline std::string to_string(const PairSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ",";
    out += "{" + s[k][0].to_string() + "," + s[k][1].to_string() + "}";
  }
  return out + "}";
}

struct MovementGraph {
  std::string name;
  std::vector<PairSet> nodes;
  std::vector<int> x_edges;  // node -> node reached by X
  std::vector<int> y_edges;

  int index_of(const PairSet& s) const {
    const auto c = canonical(s);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (nodes[k] == c) return static_cast<int>(k);
    }
    return -1;
  }

  // Node reached by `q` quarter turns of 'X' or 'Y'.
  int step(int node, char letter, int q) const {
    const auto& e = letter == 'X' ? x_edges : y_edges;
    for (int r = 0; r < ((q % 4) + 4) % 4; ++r) node = e[node];
    return node;
  }
};

namespace detail {

inline MovementGraph finish_graph(std::string name, std::vector<PairSet> nodes) {
  constexpr int b = 3;
  const Move X{{1, 1}, 1}, Y{{1, 2}, 1};
  MovementGraph g{std::move(name), std::move(nodes), {}, {}};
  for (const auto& s : g.nodes) {
    g.x_edges.push_back(g.index_of(act(b, X, s)));
    g.y_edges.push_back(g.index_of(act(b, Y, s)));
  }
  for (auto* e : {&g.x_edges, &g.y_edges}) {
    auto sorted = *e;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (sorted[k] != static_cast<int>(k)) throw VerificationFailure(g.name + ": edge map is not a bijection");
    }
  }
  return g;
}

inline void pairings(std::vector<Coord> rest, PairSet cur, std::vector<PairSet>& out) {
  if (rest.empty()) {
    out.push_back(canonical(cur));
    return;
  }
  const Coord a = rest.front();
  for (std::size_t k = 1; k < rest.size(); ++k) {
    std::vector<Coord> next;
    for (std::size_t t = 1; t < rest.size(); ++t) {
      if (t != k) next.push_back(rest[t]);
    }
    cur.push_back({a, rest[k]});
    pairings(next, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

// The two 15-node graphs of (3,4,3): pairs of even cells, and pairings of the
// six odd cells into three pairs, with X and Y acting cellwise.
inline std::pair<MovementGraph, MovementGraph> build_movement_graphs() {
  const PuzzleSpec spec{3, 4, 3};
  const auto p0 = parity_cells(spec, 0);
  const auto p1 = parity_cells(spec, 1);
  std::vector<PairSet> n0;
  for (std::size_t a = 0; a < p0.size(); ++a) {
    for (std::size_t c = a + 1; c < p0.size(); ++c) n0.push_back({{p0[a], p0[c]}});
  }
  std::vector<PairSet> n1;
  detail::pairings(p1, {}, n1);
  std::sort(n1.begin(), n1.end());
  return {detail::finish_graph("pairs", std::move(n0)), detail::finish_graph("partitions", std::move(n1))};
}

struct IsomorphismSearch {
  std::vector<std::vector<int>> bijections;  // bijections[k][node of g0] = node of g1
  std::size_t candidates_tried = 0;
  std::size_t candidates_pruned = 0;
};

namespace detail {

inline int cycle_length(const std::vector<int>& e, int node) {
  int len = 1;
  for (int x = e[node]; x != node; x = e[x]) ++len;
  return len;
}

// Node signature: lengths of the X- and Y-cycles through it. Equivariant
// maps preserve it.
inline std::pair<int, int> signature(const MovementGraph& g, int node) {
  return {cycle_length(g.x_edges, node), cycle_length(g.y_edges, node)};
}

}  // namespace detail

// Exhaustive search for the bijections f with f(X p) = X f(p) and
// f(Y p) = Y f(p). Per orbit of g0, the image of one node determines the
// rest by propagation; orbit images are then combined injectively.
inline IsomorphismSearch find_isomorphism(const MovementGraph& g0, const MovementGraph& g1) {
  IsomorphismSearch res;
  const int N = static_cast<int>(g0.nodes.size());
  if (N != static_cast<int>(g1.nodes.size())) return res;

  std::vector<int> orbit_of(N, -1);
  std::vector<std::vector<int>> orbits;
  for (int s = 0; s < N; ++s) {
    if (orbit_of[s] >= 0) continue;
    std::vector<int> orb{s};
    orbit_of[s] = static_cast<int>(orbits.size());
    for (std::size_t k = 0; k < orb.size(); ++k) {
      for (int t : {g0.x_edges[orb[k]], g0.y_edges[orb[k]]}) {
        if (orbit_of[t] < 0) {
          orbit_of[t] = static_cast<int>(orbits.size());
          orb.push_back(t);
        }
      }
    }
    orbits.push_back(std::move(orb));
  }

  // Partial maps (on one orbit each) consistent with the edges.
  std::vector<std::vector<std::vector<int>>> options(orbits.size());
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    const int root = orbits[o].front();
    for (int img = 0; img < N; ++img) {
      ++res.candidates_tried;
      if (detail::signature(g0, root) != detail::signature(g1, img)) {
        ++res.candidates_pruned;
        continue;
      }
      std::vector<int> f(N, -1);
      f[root] = img;
      std::vector<int> queue{root};
      bool ok = true;
      for (std::size_t k = 0; k < queue.size() && ok; ++k) {
        const int p = queue[k];
        for (int e = 0; e < 2 && ok; ++e) {
          const int q0 = e == 0 ? g0.x_edges[p] : g0.y_edges[p];
          const int q1 = e == 0 ? g1.x_edges[f[p]] : g1.y_edges[f[p]];
          if (f[q0] < 0) {
            f[q0] = q1;
            queue.push_back(q0);
          } else if (f[q0] != q1) {
            ok = false;
          }
        }
      }
      if (ok) {
        std::vector<char> hit(N, 0);
        for (int p : orbits[o]) {
          ok = ok && !hit[f[p]];
          hit[f[p]] = 1;
        }
      }
      if (ok) options[o].push_back(std::move(f));
    }
  }

  std::vector<int> f(N, -1);
  std::vector<char> used(N, 0);
  auto combine = [&](auto&& self, std::size_t o) -> void {
    if (o == orbits.size()) {
      res.bijections.push_back(f);
      return;
    }
    for (const auto& part : options[o]) {
      bool clash = false;
      for (int p : orbits[o]) clash = clash || used[part[p]];
      if (clash) continue;
      for (int p : orbits[o]) {
        f[p] = part[p];
        used[part[p]] = 1;
      }
      self(self, o + 1);
      for (int p : orbits[o]) {
        used[part[p]] = 0;
        f[p] = -1;
      }
    }
  };
  combine(combine, 0);
  return res;
}

}  // namespace nrp::group
