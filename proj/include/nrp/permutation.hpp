#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "nrp/error.hpp"

namespace nrp {

// A permutation of the points {0, ..., size-1}. images()[x] is the point x is
// sent to. Products are read left to right, like move sequences: a.then(b)
// applies a first, then b.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::size_t size) : images_(size) {
    std::iota(images_.begin(), images_.end(), 0);
  }

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int x : images_) {
      if (x < 0 || static_cast<std::size_t>(x) >= images_.size() || seen[x]) {
        throw Error("permutation images are not a bijection");
      }
      seen[x] = 1;
    }
  }

  // Builds a permutation of the given size from disjoint cycles.
  static Permutation from_cycles(std::size_t size,
                                 const std::vector<std::vector<int>>& cycles) {
    std::vector<int> img(size);
    std::iota(img.begin(), img.end(), 0);
    for (const auto& cyc : cycles) {
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        img[cyc[k]] = cyc[(k + 1) % cyc.size()];
      }
    }
    return Permutation(std::move(img));
  }

  std::size_t size() const noexcept { return images_.size(); }
  int operator[](int x) const { return images_[x]; }
  std::span<const int> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t x = 0; x < images_.size(); ++x) {
      if (images_[x] != static_cast<int>(x)) return false;
    }
    return true;
  }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x) inv[images_[x]] = static_cast<int>(x);
    Permutation p;
    p.images_ = std::move(inv);
    return p;
  }

  Permutation then(const Permutation& next) const {
    if (next.size() != size()) throw Error("permutation size mismatch");
    Permutation p;
    p.images_.resize(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x) p.images_[x] = next.images_[images_[x]];
    return p;
  }

  Permutation pow(long long k) const {
    Permutation base = k < 0 ? inverse() : *this;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    Permutation acc(size());
    while (e) {
      if (e & 1U) acc = acc.then(base);
      base = base.then(base);
      e >>= 1U;
    }
    return acc;
  }

  // Nontrivial cycles, each starting at its smallest point, ordered by that point.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(images_.size(), 0);
    for (std::size_t s = 0; s < images_.size(); ++s) {
      if (seen[s] || images_[s] == static_cast<int>(s)) continue;
      std::vector<int> cyc;
      for (int x = static_cast<int>(s); !seen[x]; x = images_[x]) {
        seen[x] = 1;
        cyc.push_back(x);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  // Lengths of the nontrivial cycles, largest first.
  std::vector<int> cycle_type() const {
    std::vector<int> t;
    for (const auto& c : cycles()) t.push_back(static_cast<int>(c.size()));
    std::sort(t.begin(), t.end(), std::greater<>());
    return t;
  }

  std::vector<int> moved_points() const {
    std::vector<int> out;
    for (std::size_t x = 0; x < images_.size(); ++x) {
      if (images_[x] != static_cast<int>(x)) out.push_back(static_cast<int>(x));
    }
    return out;
  }

  // (-1)^(size - number of cycles, fixed points included).
  int sign() const {
    std::size_t transpositions = 0;
    for (const auto& c : cycles()) transpositions += c.size() - 1;
    return transpositions % 2 == 0 ? 1 : -1;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

  // Cycle notation over 1-based points, "()" for the identity.
  std::string to_string() const {
    auto cs = cycles();
    if (cs.empty()) return "()";
    std::string s;
    for (const auto& c : cs) {
      s += '(';
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) s += ' ';
        s += std::to_string(c[k] + 1);
      }
      s += ')';
    }
    return s;
  }

 private:
  std::vector<int> images_;
};

inline Permutation operator*(const Permutation& a, const Permutation& b) { return a.then(b); }

inline int permutation_sign(const Permutation& p) { return p.sign(); }

}  // namespace nrp
