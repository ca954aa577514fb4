#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace quasilevel {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) { reset(n); }

  void reset(std::size_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    size_.assign(n, 1);
  }

  std::uint32_t add() {
    const auto id = static_cast<std::uint32_t>(parent_.size());
    parent_.push_back(id);
    size_.push_back(1);
    return id;
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  std::uint32_t unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return a;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

using LatticeOffset = std::array<std::int32_t, 2>;

/// Union-find over the nodes of a periodic grid. Each node stores its lattice
/// offset relative to its parent, so a cycle with nonzero accumulated offset
/// reveals a component that wraps around the torus.
class OffsetUnionFind {
 public:
  explicit OffsetUnionFind(std::size_t n);

  /// Root of x and the offset of x relative to the root.
  std::pair<std::uint32_t, LatticeOffset> find(std::uint32_t x);

  /// Joins a and the copy of b translated by d relative to a's copy.
  void unite(std::uint32_t a, std::uint32_t b, LatticeOffset d);

  /// Wrap rank (0, 1 or 2) of the component rooted at root, and a primitive-reduced generator.
  int wrap_rank(std::uint32_t root) const { return rank_[root]; }
  LatticeOffset wrap_vector(std::uint32_t root) const { return wrap_[root]; }

 private:
  void add_wrap(std::uint32_t root, LatticeOffset w);

  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<LatticeOffset> offset_;
  std::vector<LatticeOffset> wrap_;
  std::vector<std::uint8_t> rank_;
};

}  // namespace quasilevel
