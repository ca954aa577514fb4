#pragma once

#include "quasilevel/convex_hull.hpp"
#include "quasilevel/critical_points.hpp"
#include "quasilevel/errors.hpp"
#include "quasilevel/field_io.hpp"
#include "quasilevel/grid_field.hpp"
#include "quasilevel/labeling.hpp"
#include "quasilevel/magic_angles.hpp"
#include "quasilevel/percolation.hpp"
#include "quasilevel/potential.hpp"
#include "quasilevel/report_io.hpp"
#include "quasilevel/singular_net.hpp"
#include "quasilevel/streaming_labeler.hpp"
#include "quasilevel/sweep.hpp"
#include "quasilevel/sweep_config.hpp"
#include "quasilevel/vec2.hpp"
#include "quasilevel/verify.hpp"
