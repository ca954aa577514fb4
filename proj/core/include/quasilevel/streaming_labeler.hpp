#pragma once

#include <cstdint>
#include <vector>

#include "quasilevel/convex_hull.hpp"
#include "quasilevel/grid_field.hpp"
#include "quasilevel/labeling.hpp"
#include "quasilevel/union_find.hpp"

namespace quasilevel {

struct ClosedComponentStats {
  /// Largest diameter among components not touching the window boundary (NaN if none).
  double d_hat = 0.0;
  std::int64_t censored = 0;
  std::int64_t closed = 0;

  std::int64_t total() const { return censored + closed; }
};

/// Row-by-row labeling of one level set in an open window, keeping two rows in memory.
/// Same connectivity rule as label_grid without saddle hints.
class StreamingLabeler {
 public:
  StreamingLabeler(int nx, int ny, double spacing, double epsilon, LevelSign sign);

  /// Feeds the next row (nx values). Rows must arrive in order 0..ny-1.
  void push_row(const double* values);
  ClosedComponentStats finish();

 private:
  struct Stats {
    bool touches = false;
    std::int64_t cells = 0;
    std::vector<IPoint> points;
    std::size_t prune_at = 256;
  };

  void merge_into(Stats& dst, Stats& src);
  void finalize(Stats& s);

  int nx_;
  int ny_;
  double spacing_;
  double epsilon_;
  LevelSign sign_;
  int row_ = 0;
  bool finished_ = false;

  std::vector<double> prev_values_;
  std::vector<std::int32_t> prev_labels_;
  std::vector<Stats> live_;

  std::vector<std::int32_t> cur_labels_;
  UnionFind uf_;
  std::vector<std::int32_t> new_id_;
  std::vector<std::int32_t> done_id_;
  std::vector<Stats> next_live_;
  std::vector<Stats> done_;

  ClosedComponentStats result_;
  std::int64_t max_d2_ = -1;
};

/// D_hat over both signs at level epsilon in an open-window field. Throws WindowTooSmall.
ClosedComponentStats max_closed_diameter(const GridField& field, double epsilon);

}  // namespace quasilevel
