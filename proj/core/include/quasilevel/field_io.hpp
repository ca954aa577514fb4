#pragma once

#include <istream>
#include <ostream>

#include "quasilevel/grid_field.hpp"

namespace quasilevel {

/// Line 1: nx,ny,spacing,origin_x,origin_y; line 2: values; then one line per grid row.
void write_field_csv(std::ostream& os, const GridField& field);

/// 64-byte header "QLVL1" + JSON array [nx, ny, spacing, origin_x, origin_y] padded with spaces and ending
/// in '\n'; reals use the most significant digits (at most 17) that fit,
/// followed by nx*ny little-endian float64 values in row-major order.
void write_field_binary(std::ostream& os, const GridField& field);

struct BinaryFieldHeader {
  int nx = 0;
  int ny = 0;
  double spacing = 0.0;
  Vec2 origin;
};

BinaryFieldHeader read_field_binary(std::istream& is, std::vector<double>& values);

}  // namespace quasilevel
