#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nrp/board.hpp"
#include "nrp/error.hpp"
#include "nrp/group/bfs.hpp"
#include "nrp/permutation.hpp"

namespace nrp::group {

inline constexpr int kS6Order = 720;

// Lehmer rank of a permutation of 0..5.
inline int perm_index(const Permutation& p) {
  const auto img = p.images();
  int idx = 0;
  for (std::size_t a = 0; a < img.size(); ++a) {
    int smaller = 0;
    for (std::size_t c = a + 1; c < img.size(); ++c) smaller += img[c] < img[a];
    idx = idx * static_cast<int>(img.size() - a) + smaller;
  }
  return idx;
}

inline Permutation perm_from_index(int idx, int size = 6) {
  std::vector<int> digits(static_cast<std::size_t>(size));
  for (int a = size - 1; a >= 0; --a) {
    digits[a] = idx % (size - a);
    idx /= (size - a);
  }
  std::vector<int> pool(static_cast<std::size_t>(size));
  for (int k = 0; k < size; ++k) pool[k] = k;
  std::vector<int> img;
  for (int a = 0; a < size; ++a) {
    img.push_back(pool[digits[a]]);
    pool.erase(pool.begin() + digits[a]);
  }
  return Permutation(std::move(img));
}

// A map S6 -> S6 stored by rank.
struct S6Automorphism {
  std::vector<std::optional<Permutation>> image = std::vector<std::optional<Permutation>>(kS6Order);

  const Permutation& operator()(const Permutation& p) const {
    const auto& r = image.at(static_cast<std::size_t>(perm_index(p)));
    if (!r) throw Error("automorphism undefined at " + p.to_string());
    return *r;
  }
  bool total() const {
    for (const auto& r : image) {
      if (!r) return false;
    }
    return true;
  }
};

// Labels: the even cells of (3,4,3) in row-major order are 0..5, likewise
// the odd cells.
struct PsiConstruction {
  S6Automorphism psi;
  std::size_t states = 0;
  std::size_t conflicts = 0;  // states whose even action had been seen with another odd action
};

inline std::vector<std::pair<Permutation, Permutation>> class_actions_343() {
  const PuzzleSpec spec{3, 4, 3};
  const auto res = bfs_reachable(spec, 10000, true);
  std::vector<std::pair<Permutation, Permutation>> out;
  for (const auto& key : *res.states) {
    std::vector<int> v(key.begin(), key.end());
    for (auto& x : v) x = static_cast<unsigned char>(x);
    const auto p = as_permutation(Board(spec, std::move(v)));
    out.emplace_back(restrict_to_parity(spec, p, 0), restrict_to_parity(spec, p, 1));
  }
  return out;
}

// psi sends the action of a reachable state on the even class to its action
// on the odd class. Functionality is checked over every reachable state.
inline PsiConstruction construct_psi() {
  PsiConstruction c;
  for (const auto& [p0, p1] : class_actions_343()) {
    ++c.states;
    auto& slot = c.psi.image[static_cast<std::size_t>(perm_index(p0))];
    if (slot && *slot != p1) ++c.conflicts;
    if (!slot) slot = p1;
  }
  if (c.conflicts) throw VerificationFailure("psi is not well defined: one even action pairs with two odd actions");
  if (!c.psi.total()) throw VerificationFailure("even-class actions do not cover S6");
  return c;
}

struct OuterReport {
  std::size_t pairs_checked = 0;
  std::size_t homomorphism_failures = 0;
  bool bijective = false;
  // cycle type of a class -> cycle types of its images
  std::map<std::vector<int>, std::vector<std::vector<int>>> class_table;
  bool transposition_to_triple = false;
  std::optional<Permutation> square_conjugator;  // g with psi(psi(s)) = g^-1 s g

  bool ok() const {
    return homomorphism_failures == 0 && bijective && transposition_to_triple && square_conjugator.has_value();
  }
};

inline OuterReport verify_outer(const S6Automorphism& psi) {
  OuterReport r;
  std::vector<Permutation> all;
  for (int k = 0; k < kS6Order; ++k) all.push_back(perm_from_index(k));
  std::vector<Permutation> img;
  for (const auto& s : all) img.push_back(psi(s));

  for (int a = 0; a < kS6Order; ++a) {
    for (int b = 0; b < kS6Order; ++b) {
      ++r.pairs_checked;
      if (psi(all[a].then(all[b])) != img[a].then(img[b])) ++r.homomorphism_failures;
    }
  }

  std::vector<char> hit(kS6Order, 0);
  r.bijective = true;
  for (const auto& p : img) {
    const int k = perm_index(p);
    if (hit[k]) r.bijective = false;
    hit[k] = 1;
  }

  for (int k = 0; k < kS6Order; ++k) {
    auto& row = r.class_table[all[k].cycle_type()];
    const auto t = img[k].cycle_type();
    if (std::find(row.begin(), row.end(), t) == row.end()) row.push_back(t);
  }
  const auto& tr = r.class_table[{2}];
  r.transposition_to_triple = tr == std::vector<std::vector<int>>{{2, 2, 2}};

  for (const auto& g : all) {
    const Permutation gi = g.inverse();
    bool works = true;
    for (int k = 0; k < kS6Order && works; ++k) works = psi(img[k]) == gi.then(all[k]).then(g);
    if (works) {
      r.square_conjugator = g;
      break;
    }
  }
  return r;
}

struct LinkageReport {
  std::size_t states = 0;
  std::size_t p0_solved = 0;
  std::size_t p1_solved = 0;
  std::size_t violations = 0;  // exactly one class solved
};

inline LinkageReport check_linkage_343() {
  LinkageReport r;
  for (const auto& [p0, p1] : class_actions_343()) {
    ++r.states;
    r.p0_solved += p0.is_identity();
    r.p1_solved += p1.is_identity();
    r.violations += p0.is_identity() != p1.is_identity();
  }
  return r;
}

}  // namespace nrp::group
