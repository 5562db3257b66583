#include "smallfock/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smallfock/errors.hpp"

namespace smallfock {

LogPoint make_log_point(double t, double theta) {
  if (!std::isfinite(t) || !std::isfinite(theta)) {
    throw validation_error("point coordinates must be finite");
  }
  return {t, wrap_angle(theta)};
}

double dlog(const LogPoint& a, const LogPoint& b) {
  double radial = std::fabs(a.t - b.t);
  double chord = 2.0 * std::fabs(std::sin(0.5 * (a.theta - b.theta)));
  return radial + chord;
}

PointSequence::PointSequence(std::vector<LogPoint> pts, std::optional<Window> window) {
  for (auto& q : pts) q = make_log_point(q.t, q.theta);
  std::sort(pts.begin(), pts.end(), [](const LogPoint& x, const LogPoint& y) {
    return x.t != y.t ? x.t < y.t : x.theta < y.theta;
  });
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].t == pts[i - 1].t && pts[i].theta == pts[i - 1].theta) {
      throw validation_error("duplicate point at t=" + std::to_string(pts[i].t));
    }
  }
  if (window) {
    if (!std::isfinite(window->t_min) || !std::isfinite(window->t_max) ||
        window->t_min > window->t_max) {
      throw validation_error("invalid window");
    }
    window_ = *window;
  } else if (!pts.empty()) {
    window_ = {pts.front().t, pts.back().t};
  } else {
    window_ = {0.0, 0.0};
  }
  if (!pts.empty() &&
      (pts.front().t < window_.t_min || pts.back().t > window_.t_max)) {
    throw validation_error("point outside the declared window");
  }
  pts_ = std::move(pts);
}

double separation_constant(const PointSequence& s) {
  std::size_t n = s.size();
  if (n < 2) return std::numeric_limits<double>::infinity();
  // Points are sorted by t. A pair further than `best` apart in t alone
  // cannot improve the minimum, so each point only looks ahead while the
  // t gap stays below the current best.
  double best = std::numeric_limits<double>::infinity();
  auto pts = s.points();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pts[j].t - pts[i].t >= best) break;
      best = std::min(best, dlog(pts[i], pts[j]));
    }
  }
  return best;
}

PointSequence scale_sequence(const PointSequence& s, double log_c) {
  if (!std::isfinite(log_c)) throw validation_error("scale must be finite");
  std::vector<LogPoint> pts(s.points().begin(), s.points().end());
  for (auto& q : pts) q.t += log_c;
  Window w{s.window().t_min + log_c, s.window().t_max + log_c};
  return PointSequence(std::move(pts), w);
}

PointSequence rotate_sequence(const PointSequence& s, double dtheta) {
  if (!std::isfinite(dtheta)) throw validation_error("rotation must be finite");
  std::vector<LogPoint> pts(s.points().begin(), s.points().end());
  for (auto& q : pts) q.theta = wrap_angle(q.theta + dtheta);
  return PointSequence(std::move(pts), s.window());
}

PointSequence remove_point(const PointSequence& s, std::size_t index) {
  if (index >= s.size()) throw validation_error("remove_point: index out of range");
  std::vector<LogPoint> pts(s.points().begin(), s.points().end());
  pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(index));
  return PointSequence(std::move(pts), s.window());
}

namespace {

// Kuhn augmenting-path matching on the eps-adjacency graph.
bool try_augment(std::size_t u, const std::vector<std::vector<std::size_t>>& adj,
                 std::vector<int>& match_b, std::vector<char>& visited) {
  for (std::size_t v : adj[u]) {
    if (visited[v]) continue;
    visited[v] = 1;
    if (match_b[v] < 0 ||
        try_augment(static_cast<std::size_t>(match_b[v]), adj, match_b, visited)) {
      match_b[v] = static_cast<int>(u);
      return true;
    }
  }
  return false;
}

}  // namespace

bool epsilon_match(const PointSequence& a, const PointSequence& b, double eps) {
  if (!(eps >= 0.0)) throw validation_error("epsilon_match: eps must be >= 0");
  if (a.size() != b.size()) return false;
  std::size_t n = a.size();
  if (n == 0) return true;
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (dlog(a[i], b[j]) <= eps) adj[i].push_back(j);
    }
  }
  std::vector<int> match_b(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<char> visited(n, 0);
    if (!try_augment(i, adj, match_b, visited)) return false;
  }
  return true;
}

}  // namespace smallfock
