#pragma once

#include <span>
#include <vector>

#include "smallfock/geometry.hpp"

namespace smallfock {

// Number of points with t in the closed band [t0, t0 + R].
long count_in_band(const PointSequence& s, double t0, double R);

struct DensityProfile {
  struct Entry {
    double R = 0.0;
    long min_count = 0;
    double inf_count_over_R = 0.0;
  };
  std::vector<Entry> entries;  // sorted by R ascending
  double estimate = 0.0;       // value at the largest R
  double R_max_used = 0.0;
};

// Lower logarithmic density profile. For each R the exact infimum over
// band positions t0 in [t_min, t_max - R] of count/R is taken; the count
// is piecewise constant in t0 with breakpoints at {t_i, t_i - R}, so the
// sweep evaluates every breakpoint and the midpoint of every open piece.
// Each R must satisfy 0 < R <= extent/3 (finite-data guard).
DensityProfile lower_log_density(const PointSequence& s, std::span<const double> R_list);

}  // namespace smallfock
