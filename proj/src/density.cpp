#include "smallfock/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smallfock/errors.hpp"

namespace smallfock {

namespace {

long count_sorted(const std::vector<double>& ts, double lo, double hi) {
  auto b = std::lower_bound(ts.begin(), ts.end(), lo);
  auto e = std::upper_bound(ts.begin(), ts.end(), hi);
  return static_cast<long>(e - b);
}

}  // namespace

long count_in_band(const PointSequence& s, double t0, double R) {
  if (!std::isfinite(t0) || !std::isfinite(R) || R < 0.0) {
    throw validation_error("count_in_band: bad band");
  }
  std::vector<double> ts;
  ts.reserve(s.size());
  for (const auto& q : s.points()) ts.push_back(q.t);
  return count_sorted(ts, t0, t0 + R);
}

DensityProfile lower_log_density(const PointSequence& s, std::span<const double> R_list) {
  if (R_list.empty()) throw validation_error("lower_log_density: empty R list");
  double extent = s.window().extent();
  std::vector<double> Rs(R_list.begin(), R_list.end());
  std::sort(Rs.begin(), Rs.end());
  for (double R : Rs) {
    if (!(R > 0.0) || !(R <= extent / 3.0)) {
      throw validation_error("lower_log_density: each R must satisfy 0 < R <= extent/3 "
                             "(extent = " + std::to_string(extent) + ")");
    }
  }

  std::vector<double> ts;
  ts.reserve(s.size());
  for (const auto& q : s.points()) ts.push_back(q.t);

  DensityProfile out;
  for (double R : Rs) {
    double lo = s.window().t_min, hi = s.window().t_max - R;
    // count(t0) is piecewise constant with breakpoints where the band edge
    // crosses a point: t0 = t_i or t0 = t_i - R. The infimum is attained
    // either at a breakpoint or on an open piece between two of them, so
    // midpoints of consecutive breakpoints are probed as well.
    std::vector<double> events{lo, hi};
    for (double t : ts) {
      if (t >= lo && t <= hi) events.push_back(t);
      double e = t - R;
      if (e >= lo && e <= hi) events.push_back(e);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    long best = std::numeric_limits<long>::max();
    for (std::size_t i = 0; i < events.size(); ++i) {
      best = std::min(best, count_sorted(ts, events[i], events[i] + R));
      if (i + 1 < events.size()) {
        double mid = 0.5 * (events[i] + events[i + 1]);
        best = std::min(best, count_sorted(ts, mid, mid + R));
      }
    }
    out.entries.push_back({R, best, static_cast<double>(best) / R});
  }
  out.estimate = out.entries.back().inf_count_over_R;
  out.R_max_used = out.entries.back().R;
  return out;
}

}  // namespace smallfock
