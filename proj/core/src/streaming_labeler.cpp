#include "quasilevel/streaming_labeler.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "quasilevel/errors.hpp"

namespace quasilevel {

StreamingLabeler::StreamingLabeler(int nx, int ny, double spacing, double epsilon, LevelSign sign)
    : nx_(nx), ny_(ny), spacing_(spacing), epsilon_(epsilon), sign_(sign) {
  if (nx <= 0 || ny <= 0) throw InvalidArgument("window must contain at least one node");
  if (!std::isfinite(epsilon)) throw InvalidArgument("epsilon must be finite");
  prev_values_.assign(static_cast<std::size_t>(nx), 0.0);
  prev_labels_.assign(static_cast<std::size_t>(nx), -1);
  cur_labels_.assign(static_cast<std::size_t>(nx), -1);
}

void StreamingLabeler::merge_into(Stats& dst, Stats& src) {
  dst.touches = dst.touches || src.touches;
  dst.cells += src.cells;
  if (dst.touches) {
    dst.points.clear();
    dst.points.shrink_to_fit();
  } else {
    if (dst.points.size() < src.points.size()) std::swap(dst.points, src.points);
    dst.points.insert(dst.points.end(), src.points.begin(), src.points.end());
    dst.prune_at = std::max(dst.prune_at, src.prune_at);
  }
  src.points.clear();
  src.points.shrink_to_fit();
}

void StreamingLabeler::finalize(Stats& s) {
  if (s.touches) {
    ++result_.censored;
    return;
  }
  ++result_.closed;
  max_d2_ = std::max<std::int64_t>(max_d2_, diameter2(std::move(s.points)));
}

void StreamingLabeler::push_row(const double* values) {
  if (finished_ || row_ >= ny_) throw InvalidArgument("too many rows pushed");
  const int j = row_;
  const auto L = static_cast<std::int32_t>(live_.size());
  uf_.reset(static_cast<std::size_t>(L));
  auto member = [&](double v) { return in_set(v, epsilon_, sign_); };

  for (int i = 0; i < nx_; ++i) {
    const double v = values[i];
    if (!member(v)) {
      cur_labels_[i] = -1;
      continue;
    }
    std::int32_t lab;
    if (i > 0 && cur_labels_[i - 1] >= 0) {
      lab = cur_labels_[i - 1];
    } else {
      lab = static_cast<std::int32_t>(uf_.add());
    }
    cur_labels_[i] = lab;
    if (j > 0 && prev_labels_[i] >= 0) uf_.unite(static_cast<std::uint32_t>(lab), static_cast<std::uint32_t>(prev_labels_[i]));
  }
  // Plaquettes between this row and the previous one.
  if (j > 0) {
    for (int i = 1; i < nx_; ++i) {
      const bool m00 = prev_labels_[i - 1] >= 0;
      const bool m10 = prev_labels_[i] >= 0;
      const bool m01 = cur_labels_[i - 1] >= 0;
      const bool m11 = cur_labels_[i] >= 0;
      const bool diag = m00 && m11 && !m10 && !m01;
      const bool anti = m10 && m01 && !m00 && !m11;
      if (!diag && !anti) continue;
      const double centre = 0.25 * (prev_values_[i - 1] + prev_values_[i] + values[i - 1] + values[i]);
      if (!member(centre)) continue;
      if (diag) {
        uf_.unite(static_cast<std::uint32_t>(prev_labels_[i - 1]), static_cast<std::uint32_t>(cur_labels_[i]));
      } else {
        uf_.unite(static_cast<std::uint32_t>(prev_labels_[i]), static_cast<std::uint32_t>(cur_labels_[i - 1]));
      }
    }
  }

  // Compact: surviving roots get fresh ids, the rest are complete.
  const std::size_t total = uf_.size();
  new_id_.assign(total, -1);
  done_id_.assign(total, -1);
  next_live_.clear();
  done_.clear();
  const bool edge_row = (j == 0) || (j == ny_ - 1);
  int run_start = -1;
  for (int i = 0; i <= nx_; ++i) {
    const bool in = i < nx_ && cur_labels_[i] >= 0;
    if (in) {
      const std::uint32_t root = uf_.find(static_cast<std::uint32_t>(cur_labels_[i]));
      if (new_id_[root] < 0) {
        new_id_[root] = static_cast<std::int32_t>(next_live_.size());
        next_live_.emplace_back();
      }
      cur_labels_[i] = new_id_[root];
      if (run_start < 0) run_start = i;
    }
    if (!in && run_start >= 0) {
      // A maximal run in this row: only its end points can lie on the hull.
      Stats& s = next_live_[static_cast<std::size_t>(cur_labels_[run_start])];
      const int run_end = i - 1;
      s.cells += run_end - run_start + 1;
      if (edge_row || run_start == 0 || run_end == nx_ - 1) s.touches = true;
      if (!s.touches) {
        s.points.push_back({run_start, j});
        if (run_end != run_start) s.points.push_back({run_end, j});
      }
      run_start = -1;
    }
  }
  for (std::int32_t l = 0; l < L; ++l) {
    const std::uint32_t root = uf_.find(static_cast<std::uint32_t>(l));
    if (new_id_[root] >= 0) {
      merge_into(next_live_[static_cast<std::size_t>(new_id_[root])], live_[static_cast<std::size_t>(l)]);
    } else {
      if (done_id_[root] < 0) {
        done_id_[root] = static_cast<std::int32_t>(done_.size());
        done_.emplace_back();
      }
      merge_into(done_[static_cast<std::size_t>(done_id_[root])], live_[static_cast<std::size_t>(l)]);
    }
  }
  for (Stats& s : done_) finalize(s);
  for (Stats& s : next_live_) {
    if (s.touches) {
      s.points.clear();
      s.points.shrink_to_fit();
    } else if (s.points.size() > s.prune_at) {
      s.points = convex_hull(std::move(s.points));
      s.prune_at = 2 * s.points.size() + 256;
    }
  }
  live_.swap(next_live_);
  prev_labels_.swap(cur_labels_);
  std::copy(values, values + nx_, prev_values_.begin());
  ++row_;
}

ClosedComponentStats StreamingLabeler::finish() {
  if (finished_) return result_;
  if (row_ != ny_) throw InvalidArgument("expected " + std::to_string(ny_) + " rows, got " + std::to_string(row_));
  for (Stats& s : live_) finalize(s);
  live_.clear();
  finished_ = true;
  result_.d_hat = max_d2_ < 0 ? std::numeric_limits<double>::quiet_NaN()
                              : std::sqrt(static_cast<double>(max_d2_)) * spacing_;
  return result_;
}

ClosedComponentStats max_closed_diameter(const GridField& field, double epsilon) {
  if (field.periodic()) throw InvalidArgument("max_closed_diameter requires an open window");
  if (epsilon == 0.0) throw ZeroEpsilon();
  StreamingLabeler above(field.nx, field.ny, field.spacing, epsilon, LevelSign::above);
  StreamingLabeler below(field.nx, field.ny, field.spacing, epsilon, LevelSign::below);
  for (int j = 0; j < field.ny; ++j) {
    const double* row = field.values.data() + field.index(0, j);
    above.push_row(row);
    below.push_row(row);
  }
  const ClosedComponentStats a = above.finish();
  const ClosedComponentStats b = below.finish();
  ClosedComponentStats out;
  out.censored = a.censored + b.censored;
  out.closed = a.closed + b.closed;
  if (out.closed == 0) {
    throw WindowTooSmall("every component at epsilon = " + std::to_string(epsilon) + " touches the window boundary");
  }
  out.d_hat = std::fmax(std::isnan(a.d_hat) ? -1.0 : a.d_hat, std::isnan(b.d_hat) ? -1.0 : b.d_hat);
  return out;
}

}  // namespace quasilevel
