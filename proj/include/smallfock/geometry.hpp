#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "smallfock/numeric.hpp"

namespace smallfock {

// Point of the punctured plane in logarithmic coordinates:
// z = e^{t + i*theta} with theta reduced to [-pi, pi).
struct LogPoint {
  double t = 0.0;
  double theta = 0.0;
};

// Validates finiteness and wraps theta.
LogPoint make_log_point(double t, double theta);

// Product metric on R x T:  |t_a - t_b| + |e^{i theta_a} - e^{i theta_b}|.
// The circle part is the chord distance 2|sin((theta_a - theta_b)/2)|.
double dlog(const LogPoint& a, const LogPoint& b);

// Completeness window in t. Points of a sequence are asserted to be the
// complete data inside [t_min, t_max]; nothing is claimed outside.
struct Window {
  double t_min = 0.0;
  double t_max = 0.0;
  double extent() const { return t_max - t_min; }
};

// Finite list of distinct points, sorted by (t, theta), with a declared
// completeness window. Construction validates: finite coordinates, no
// exact duplicates, every t inside the window.
class PointSequence {
 public:
  PointSequence() = default;
  explicit PointSequence(std::vector<LogPoint> pts,
                         std::optional<Window> window = std::nullopt);

  std::span<const LogPoint> points() const { return pts_; }
  const Window& window() const { return window_; }
  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  const LogPoint& operator[](std::size_t i) const { return pts_[i]; }

 private:
  std::vector<LogPoint> pts_;
  Window window_;
};

// inf over distinct pairs of dlog; +inf for fewer than two points.
double separation_constant(const PointSequence& s);

// Multiply every modulus by c = e^{log_c}: t -> t + log_c. Window shifts
// along with the points.
PointSequence scale_sequence(const PointSequence& s, double log_c);

// Rotate every point by dtheta (window unchanged).
PointSequence rotate_sequence(const PointSequence& s, double dtheta);

// Copy of s without the point at `index` (window unchanged).
PointSequence remove_point(const PointSequence& s, std::size_t index);

// True iff there is a perfect bipartite matching pairing every point of a
// with a distinct point of b at dlog distance <= eps. Sizes must agree for
// a possible match; unequal sizes give false.
bool epsilon_match(const PointSequence& a, const PointSequence& b, double eps);

}  // namespace smallfock
