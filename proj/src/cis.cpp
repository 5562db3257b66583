#include "smallfock/cis.hpp"

#include <algorithm>
#include <cmath>

#include "smallfock/errors.hpp"

namespace smallfock {

DeltaSequence compute_deltas(const PointSequence& s, const SpaceParams& sp) {
  sp.validate();
  if (s.empty()) throw validation_error("compute_deltas: empty sequence");
  auto pts = s.points();
  // k = 0 goes to the point with the smallest t >= 0, or the largest t if
  // every t is negative; consecutive integers follow the sort order.
  std::size_t i0 = pts.size() - 1;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].t >= 0.0) {
      i0 = i;
      break;
    }
  }
  DeltaSequence d;
  d.params = sp;
  d.k_first = -static_cast<long>(i0);
  d.deltas.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    long k = static_cast<long>(i) - static_cast<long>(i0);
    d.deltas.push_back(2.0 * sp.alpha * pts[i].t - static_cast<double>(k) -
                       sp.two_over_p());
  }
  return d;
}

std::optional<AveragingWitness> find_m(const DeltaSequence& d, int N_max, double eps_tol) {
  if (N_max < 1) throw validation_error("find_m: N_max must be >= 1");
  if (!(eps_tol > 0.0) || !(eps_tol < 0.5)) {
    throw validation_error("find_m: eps_tol must lie in (0, 1/2)");
  }
  long count = static_cast<long>(d.deltas.size());
  if (count == 0) return std::nullopt;
  std::vector<double> prefix(static_cast<std::size_t>(count) + 1, 0.0);
  for (long i = 0; i < count; ++i) {
    prefix[static_cast<std::size_t>(i) + 1] =
        prefix[static_cast<std::size_t>(i)] + d.deltas[static_cast<std::size_t>(i)];
  }
  for (int N = 1; N <= std::min<long>(N_max, count); ++N) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    std::vector<double> avgs;
    avgs.reserve(static_cast<std::size_t>(count - N + 1));
    for (long i = 0; i + N <= count; ++i) {
      double a = (prefix[static_cast<std::size_t>(i + N)] -
                  prefix[static_cast<std::size_t>(i)]) / N;
      avgs.push_back(a);
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    long m_lo = static_cast<long>(std::ceil(-hi - 1.0));
    long m_hi = static_cast<long>(std::floor(-lo + 1.0));
    for (long m = m_lo; m <= m_hi; ++m) {
      double sup = 0.0;
      for (double a : avgs) sup = std::max(sup, std::fabs(a + static_cast<double>(m)));
      double margin = 0.5 - sup;
      if (margin >= eps_tol) return AveragingWitness{m, N, margin};
    }
  }
  return std::nullopt;
}

CisVerdict cis_check(const PointSequence& s, const SpaceParams& sp, const CisOptions& opts) {
  sp.validate();
  if (opts.separation_floor < 0.0 || opts.delta_sup_cap <= 0.0) {
    throw validation_error("cis_check: bad options");
  }
  CisVerdict v;
  v.options = opts;
  v.separation = separation_constant(s);
  v.separated = v.separation >= opts.separation_floor;

  DeltaSequence d = compute_deltas(s, sp);
  v.delta_sup = 0.0;
  for (double x : d.deltas) v.delta_sup = std::max(v.delta_sup, std::fabs(x));
  v.deltas_bounded = v.delta_sup <= opts.delta_sup_cap;

  v.averaging = find_m(d, opts.N_max, opts.eps_tol);

  // Best margin over the scan, reported even when no witness qualifies.
  long count = static_cast<long>(d.deltas.size());
  v.best_margin = -0.5;
  for (int N = 1; N <= std::min<long>(opts.N_max, count); ++N) {
    std::vector<double> avgs;
    double run = 0.0;
    for (long i = 0; i < count; ++i) {
      run += d.deltas[static_cast<std::size_t>(i)];
      if (i >= N) run -= d.deltas[static_cast<std::size_t>(i - N)];
      if (i >= N - 1) avgs.push_back(run / N);
    }
    double lo = *std::min_element(avgs.begin(), avgs.end());
    double hi = *std::max_element(avgs.begin(), avgs.end());
    for (long m = static_cast<long>(std::ceil(-hi - 1.0));
         m <= static_cast<long>(std::floor(-lo + 1.0)); ++m) {
      double sup = 0.0;
      for (double a : avgs) sup = std::max(sup, std::fabs(a + static_cast<double>(m)));
      v.best_margin = std::max(v.best_margin, 0.5 - sup);
    }
  }

  v.pass = v.separated && v.deltas_bounded && v.averaging.has_value();
  return v;
}

}  // namespace smallfock
