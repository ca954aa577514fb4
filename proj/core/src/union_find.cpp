#include "quasilevel/union_find.hpp"

#include <cstdlib>
#include <numeric>

namespace quasilevel {

namespace {

LatticeOffset add(LatticeOffset a, LatticeOffset b) { return {a[0] + b[0], a[1] + b[1]}; }
LatticeOffset sub(LatticeOffset a, LatticeOffset b) { return {a[0] - b[0], a[1] - b[1]}; }
bool is_zero(LatticeOffset a) { return a[0] == 0 && a[1] == 0; }

}  // namespace

OffsetUnionFind::OffsetUnionFind(std::size_t n)
    : parent_(n), size_(n, 1), offset_(n, LatticeOffset{0, 0}), wrap_(n, LatticeOffset{0, 0}), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
}

std::pair<std::uint32_t, LatticeOffset> OffsetUnionFind::find(std::uint32_t x) {
  // First pass: locate root and total offset; second pass: compress.
  std::uint32_t root = x;
  LatticeOffset total{0, 0};
  while (parent_[root] != root) {
    total = add(total, offset_[root]);
    root = parent_[root];
  }
  LatticeOffset remaining = total;
  std::uint32_t cur = x;
  while (parent_[cur] != root && cur != root) {
    const std::uint32_t next = parent_[cur];
    const LatticeOffset own = offset_[cur];
    parent_[cur] = root;
    offset_[cur] = remaining;
    remaining = sub(remaining, own);
    cur = next;
  }
  return {root, total};
}

void OffsetUnionFind::unite(std::uint32_t a, std::uint32_t b, LatticeOffset d) {
  auto [ra, oa] = find(a);
  auto [rb, ob] = find(b);
  // Position of b's adjacent copy in ra's frame is oa + d; in rb's frame b sits at ob.
  const LatticeOffset target = add(oa, d);
  if (ra == rb) {
    const LatticeOffset w = sub(target, ob);
    if (!is_zero(w)) add_wrap(ra, w);
    return;
  }
  // Attach the smaller tree; keep offsets consistent for either orientation.
  if (size_[ra] < size_[rb]) {
    parent_[ra] = rb;
    offset_[ra] = sub(ob, target);
    size_[rb] += size_[ra];
    if (rank_[ra] > 0) add_wrap(rb, wrap_[ra]);
    if (rank_[ra] > 1) rank_[rb] = 2;
  } else {
    parent_[rb] = ra;
    offset_[rb] = sub(target, ob);
    size_[ra] += size_[rb];
    if (rank_[rb] > 0) add_wrap(ra, wrap_[rb]);
    if (rank_[rb] > 1) rank_[ra] = 2;
  }
}

void OffsetUnionFind::add_wrap(std::uint32_t root, LatticeOffset w) {
  if (rank_[root] == 0) {
    wrap_[root] = w;
    rank_[root] = 1;
    return;
  }
  if (rank_[root] == 2) return;
  const LatticeOffset v = wrap_[root];
  const long long cr = static_cast<long long>(v[0]) * w[1] - static_cast<long long>(v[1]) * w[0];
  if (cr != 0) {
    rank_[root] = 2;
    return;
  }
  // Parallel: keep the gcd generator.
  const int g1 = std::gcd(std::abs(v[0]), std::abs(v[1]));
  const int g2 = std::gcd(std::abs(w[0]), std::abs(w[1]));
  const int g = std::gcd(g1, g2);
  wrap_[root] = {v[0] / g1 * g, v[1] / g1 * g};
}

}  // namespace quasilevel
