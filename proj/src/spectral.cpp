#include "smallfock/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smallfock/errors.hpp"
#include "smallfock/products.hpp"

namespace smallfock {

double default_margin(const SpaceParams& sp) { return 6.0 / std::sqrt(sp.alpha); }

Eigen::MatrixXcd frame_matrix(const PointSequence& s, const SpaceParams& sp, long N0,
                              long N1, double margin) {
  sp.validate();
  if (sp.p != 2.0) throw validation_error("frame analysis requires p = 2");
  if (N0 > N1) throw validation_error("frame_matrix: empty coefficient range");
  if (!(margin > 0.0)) throw validation_error("frame_matrix: margin must be > 0");
  double pad_lo = static_cast<double>(N0) / (2.0 * sp.alpha) - margin;
  double pad_hi = static_cast<double>(N1) / (2.0 * sp.alpha) + margin;
  if (s.window().t_min > pad_lo || s.window().t_max < pad_hi) {
    throw validation_error(
        "frame_matrix: declared window [" + std::to_string(s.window().t_min) + ", " +
        std::to_string(s.window().t_max) + "] does not cover the padded window [" +
        std::to_string(pad_lo) + ", " + std::to_string(pad_hi) + "]");
  }
  std::vector<LogPoint> rows;
  for (const auto& q : s.points()) {
    if (q.t >= pad_lo && q.t <= pad_hi) rows.push_back(q);
  }
  long cols = N1 - N0 + 1;
  Eigen::MatrixXcd M(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double t = rows[r].t, theta = rows[r].theta;
    for (long c = 0; c < cols; ++c) {
      long n = N0 + c;
      double nn = static_cast<double>(n);
      double lm = nn * t + t - phi(sp, t) - log_monomial_norm(sp, n);
      double ph = nn * theta;
      M(static_cast<Eigen::Index>(r), c) =
          std::exp(lm) * std::complex<double>(std::cos(ph), std::sin(ph));
    }
  }
  return M;
}

std::pair<double, double> frame_bounds(const Eigen::MatrixXcd& M) {
  if (M.cols() < 1) throw validation_error("frame_bounds: no columns");
  Eigen::MatrixXcd H = M.adjoint() * M;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success) throw numeric_error("eigensolver failed");
  double A = es.eigenvalues()(0);
  double B = es.eigenvalues()(M.cols() - 1);
  double scale = std::max(std::fabs(A), std::fabs(B));
  if (scale > 0.0) {
    for (Eigen::Index k : {Eigen::Index(0), M.cols() - 1}) {
      Eigen::VectorXcd v = es.eigenvectors().col(k);
      double resid = (H * v - es.eigenvalues()(k) * v).norm();
      if (resid > 1e-8 * scale) {
        throw numeric_error("eigensolver residual " + std::to_string(resid) +
                            " exceeds certificate");
      }
    }
  }
  return {std::max(A, 0.0), std::max(B, 0.0)};
}

namespace {

double rel_change(double x, double y) {
  double scale = std::max(std::fabs(x), std::fabs(y));
  if (scale == 0.0) return 0.0;
  return std::fabs(x - y) / scale;
}

}  // namespace

FrameBoundsReport frame_report(const PointSequence& s, const SpaceParams& sp,
                               const SpectralOptions& opts) {
  double margin = opts.margin.value_or(default_margin(sp));
  Eigen::MatrixXcd M = frame_matrix(s, sp, opts.coeff_lo, opts.coeff_hi, margin);
  auto [lam_lo, lam_hi] = frame_bounds(M);
  // the report carries the sampling constants themselves, i.e. the extreme
  // singular values of the restriction matrix, not their squares
  double A = std::sqrt(std::max(0.0, lam_lo));
  double B = std::sqrt(std::max(0.0, lam_hi));
  FrameBoundsReport rep;
  rep.A = A;
  rep.B = B;
  rep.coeff_lo = opts.coeff_lo;
  rep.coeff_hi = opts.coeff_hi;
  rep.margin = margin;
  rep.t_lo = static_cast<double>(opts.coeff_lo) / (2.0 * sp.alpha) - margin;
  rep.t_hi = static_cast<double>(opts.coeff_hi) / (2.0 * sp.alpha) + margin;
  rep.rows = M.rows();
  rep.cols = M.cols();

  // Stability probe: widen the coefficient range by the step and watch the
  // bounds move. A window too small to support the probe leaves the result
  // marked non-stabilized rather than failing.
  long w_lo = opts.coeff_lo - opts.stabilization_step / 2;
  long w_hi = opts.coeff_hi + (opts.stabilization_step - opts.stabilization_step / 2);
  rep.stabilization_change = std::numeric_limits<double>::infinity();
  rep.stabilized = false;
  try {
    auto [l2_lo, l2_hi] = frame_bounds(frame_matrix(s, sp, w_lo, w_hi, margin));
    double A2 = std::sqrt(std::max(0.0, l2_lo));
    double B2 = std::sqrt(std::max(0.0, l2_hi));
    rep.stabilization_change = std::max(rel_change(A, A2), rel_change(B, B2));
    rep.stabilized = rep.stabilization_change < 0.05;
  } catch (const validation_error&) {
    // widened padded window not covered by the data
  }
  return rep;
}

std::vector<FrameBoundsReport> bounds_over_shifts(const PointSequence& s,
                                                  const SpaceParams& sp,
                                                  const SpectralOptions& opts) {
  if (opts.shift_grid_size < 1) throw validation_error("bounds_over_shifts: empty grid");
  double cell = 1.0 / (2.0 * sp.alpha);
  std::vector<FrameBoundsReport> out;
  out.reserve(static_cast<std::size_t>(opts.shift_grid_size));
  for (int i = 0; i < opts.shift_grid_size; ++i) {
    double sh = cell * static_cast<double>(i) / static_cast<double>(opts.shift_grid_size);
    FrameBoundsReport rep = frame_report(scale_sequence(s, sh), sp, opts);
    rep.shift = sh;
    out.push_back(rep);
  }
  return out;
}

ExtremalCertificate extremal_product_bound(const PointSequence& s, const SpaceParams& sp,
                                           double I_lo, double I_hi,
                                           const ExtremalOptions& opts) {
  sp.validate();
  if (!sp.sup_space()) throw validation_error("extremal_product_bound requires p = inf");
  if (!std::isfinite(I_lo) || !std::isfinite(I_hi) || !(I_hi > I_lo)) {
    throw validation_error("extremal_product_bound: bad interval");
  }
  double len = I_hi - I_lo;
  double need_lo = I_lo - opts.band_padding_factor * len;
  double need_hi = I_hi + opts.band_padding_factor * len;
  if (s.window().t_min > need_lo || s.window().t_max < need_hi) {
    throw validation_error("extremal_product_bound: window must cover the band padded "
                           "by its own length on both sides");
  }

  std::vector<LogPoint> band;
  for (const auto& q : s.points()) {
    if (q.t >= I_lo && q.t <= I_hi) band.push_back(q);
  }
  long count_raw = static_cast<long>(band.size());
  if (count_raw < 2) {
    throw validation_error("extremal_product_bound: band holds fewer than 2 points");
  }
  double deficiency = 1.0 - static_cast<double>(count_raw) / (2.0 * sp.alpha * len);

  ExtremalCertificate cert;
  cert.interval_lo = I_lo;
  cert.interval_hi = I_hi;
  cert.deficiency = deficiency;

  if (count_raw % 2 == 1) {
    double center = 0.5 * (I_lo + I_hi);
    std::size_t worst = 0;
    double worst_d = -1.0;
    for (std::size_t i = 0; i < band.size(); ++i) {
      double d = std::fabs(band[i].t - center);
      if (d >= worst_d) {  // ties resolve to the larger t (later index)
        worst_d = d;
        worst = i;
      }
    }
    band.erase(band.begin() + static_cast<std::ptrdiff_t>(worst));
    cert.dropped_point = true;
  }
  cert.two_n = static_cast<long>(band.size());
  if (cert.two_n < 2) {
    throw validation_error("extremal_product_bound: band too thin after parity reduction");
  }
  long N = cert.two_n / 2;

  // Shift the picture so the band starts in [-R - cell, -R]; the measured
  // ratio is invariant under whole-cell shifts, and the probe ring lands
  // at |t| = N/(2 alpha).
  double R = 0.5 * len;
  double cell = 1.0 / (2.0 * sp.alpha);
  double h = cell * std::floor(2.0 * sp.alpha * (-R - I_lo));
  cert.centering_shift = h;

  std::vector<LogPoint> zeros = band;
  for (auto& q : zeros) q.t += h;
  ZeroSet zs(PointSequence(zeros), static_cast<std::size_t>(N));

  auto lf = [&zs](const LogPoint& q) { return canonical_product(zs, q).log_mag; };

  PointSequence shifted = scale_sequence(s, h);
  double ring = static_cast<double>(N) / (2.0 * sp.alpha);
  double zone_lo = std::min(zeros.front().t, -ring) - opts.grid.pad;
  double zone_hi = std::max(zeros.back().t, ring) + opts.grid.pad;
  double emphasis[2] = {-ring, ring};
  double log_sup = log_weighted_sup(lf, sp, zone_lo, zone_hi, opts.grid, emphasis);

  double log_restricted = kNegInf;
  for (const auto& q : shifted.points()) {
    double v = lf(q);
    if (std::isinf(v) && v < 0) continue;  // a zero of the product
    log_restricted = std::max(log_restricted, v - phi(sp, q.t));
  }
  // Every restricted sample is also a lower bound for the full sup.
  log_sup = std::max(log_sup, log_restricted);

  cert.log_measured_ratio = log_sup - log_restricted;
  cert.measured_ratio = std::exp(cert.log_measured_ratio);
  double arg = len * deficiency - 3.0 / (2.0 * sp.alpha);
  cert.log_predicted_floor = sp.alpha / 4.0 * arg * arg;
  cert.predicted_floor = std::exp(cert.log_predicted_floor);
  return cert;
}

RemovalReport removal_experiment(const PointSequence& s, const SpaceParams& sp,
                                 std::optional<std::size_t> point_index,
                                 std::span<const std::pair<long, long>> coeff_ranges,
                                 std::optional<double> margin) {
  if (coeff_ranges.empty()) throw validation_error("removal_experiment: empty schedule");
  PointSequence probe = point_index ? remove_point(s, *point_index) : s;
  RemovalReport rep;
  for (const auto& [lo, hi] : coeff_ranges) {
    SpectralOptions o;
    o.coeff_lo = lo;
    o.coeff_hi = hi;
    o.margin = margin;
    rep.entries.push_back(frame_report(probe, sp, o));
  }
  double A0 = rep.entries.front().A;
  double An = rep.entries.back().A;
  rep.first_to_last_ratio = An > 0.0 ? A0 / An
                            : (A0 > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  rep.max_rel_change = 0.0;
  for (const auto& e : rep.entries) {
    double d = A0 > 0.0 ? std::fabs(e.A - A0) / A0
                        : (e.A == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    rep.max_rel_change = std::max(rep.max_rel_change, d);
  }
  if (rep.max_rel_change <= 0.10) {
    rep.verdict = RemovalVerdict::stable;
  } else if (rep.first_to_last_ratio >= 2.0) {
    rep.verdict = RemovalVerdict::decaying;
  } else {
    rep.verdict = RemovalVerdict::inconclusive;
  }
  return rep;
}

}  // namespace smallfock
