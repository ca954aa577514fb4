#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "quasilevel/vec2.hpp"

namespace quasilevel {

struct IPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(IPoint, IPoint) = default;
};

template <class P>
using coord_t = decltype(P{}.x);

template <class P>
coord_t<P> cross3(const P& o, const P& a, const P& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

template <class P>
coord_t<P> dist2(const P& a, const P& b) {
  const auto dx = a.x - b.x;
  const auto dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// Andrew's monotone chain. Counter-clockwise, no collinear points.
template <class P>
std::vector<P> convex_hull(std::vector<P> pts) {
  std::sort(pts.begin(), pts.end(), [](const P& a, const P& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const P& a, const P& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<P> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross3(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross3(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

/// Squared diameter of a convex polygon by rotating calipers.
template <class P>
coord_t<P> hull_diameter2(const std::vector<P>& h) {
  const std::size_t n = h.size();
  if (n == 0) return 0;
  if (n == 1) return 0;
  if (n == 2) return dist2(h[0], h[1]);
  coord_t<P> best = 0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t i1 = (i + 1) % n;
    while (true) {
      const std::size_t j1 = (j + 1) % n;
      if (cross3(h[i], h[i1], h[j1]) > cross3(h[i], h[i1], h[j])) {
        j = j1;
      } else {
        break;
      }
    }
    best = std::max(best, dist2(h[i], h[j]));
    best = std::max(best, dist2(h[i1], h[j]));
  }
  return best;
}

template <class P>
coord_t<P> diameter2(std::vector<P> pts) {
  return hull_diameter2(convex_hull(std::move(pts)));
}

}  // namespace quasilevel
