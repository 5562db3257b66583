#include "smallfock/products.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smallfock/errors.hpp"

namespace smallfock {

ZeroSet::ZeroSet(PointSequence zeros, std::size_t split, long first_index, double tail_tol)
    : zeros_(std::move(zeros)), split_(split), first_index_(first_index),
      tail_tol_(tail_tol) {
  if (split_ > zeros_.size()) throw validation_error("ZeroSet: split out of range");
  if (tail_tol_ < 0.0 || tail_tol_ >= 1e-2) {
    throw validation_error("ZeroSet: tail_tol out of range");
  }
  if (separation_constant(zeros_) <= 0.0) {
    throw validation_error("ZeroSet: zeros must be separated");
  }
}

ZeroSet gamma_lattice(const SpaceParams& sp, long n_lo, long n_hi, double tail_tol) {
  sp.validate();
  if (n_lo > n_hi) throw validation_error("gamma_lattice: empty index range");
  std::vector<LogPoint> pts;
  pts.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (long n = n_lo; n <= n_hi; ++n) {
    double t = (static_cast<double>(n) + sp.two_over_p() - 1.0) / (2.0 * sp.alpha);
    pts.push_back({t, 0.0});
  }
  std::size_t split = 0;
  if (n_lo <= 0) split = static_cast<std::size_t>(std::min(0L, n_hi) - n_lo + 1);
  ZeroSet zs(PointSequence(std::move(pts)), split, n_lo, tail_tol);
  zs.lattice_tail_ = sp;
  return zs;
}

namespace {

// log(1 - ratio) for the factor of zero j at the probe z; inverted factors
// use ratio = zero/z, direct ones ratio = z/zero.
LogValue factor_value(const LogPoint& zero, bool inverted, const LogPoint& z) {
  double lr = inverted ? zero.t - z.t : z.t - zero.t;
  double ph = inverted ? zero.theta - z.theta : z.theta - zero.theta;
  return log_one_minus(lr, ph);
}

}  // namespace

LogValue canonical_product(const ZeroSet& zs, const LogPoint& z) {
  double log_mag = 0.0;
  double phase = 0.0;
  double log_skip = zs.tail_tol() > 0.0 ? std::log(zs.tail_tol()) : kNegInf;
  auto pts = zs.zeros().points();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    bool inverted = j < zs.split();
    double lr = inverted ? pts[j].t - z.t : z.t - pts[j].t;
    if (lr < log_skip) continue;  // |log factor| < 2 * tail_tol, certified small
    LogValue f = factor_value(pts[j], inverted, z);
    if (f.at_zero()) return LogValue::zero();
    log_mag += f.log_mag;
    phase += f.phase;
  }
  return {log_mag, wrap_angle(phase)};
}

double product_tail_log_slack(const ZeroSet& zs, const LogPoint& z) {
  if (!zs.lattice_tail()) return 0.0;
  const SpaceParams& sp = zs.lattice_params();
  if (zs.first_index() > 0 || zs.last_index() < 1) {
    return std::numeric_limits<double>::infinity();  // not a two-sided truncation
  }
  double cell = 1.0 / (2.0 * sp.alpha);
  auto t_of = [&](long n) {
    return (static_cast<double>(n) + sp.two_over_p() - 1.0) / (2.0 * sp.alpha);
  };
  double q = std::exp(-cell);
  double up = std::exp(z.t - t_of(zs.last_index() + 1));
  double lo = std::exp(t_of(zs.first_index() - 1) - z.t);
  if (up > 0.5 || lo > 0.5) return std::numeric_limits<double>::infinity();
  return 2.0 * (up + lo) / (1.0 - q);
}

LogValue product_derivative_at_zero(const ZeroSet& zs, std::size_t zero_index) {
  auto pts = zs.zeros().points();
  if (zero_index >= pts.size()) {
    throw validation_error("product_derivative_at_zero: index out of range");
  }
  const LogPoint& g = pts[zero_index];
  bool removed_inverted = zero_index < zs.split();
  // d/dz (1 - z/g) = -1/g;  d/dz (1 - g/z) = g/z^2 -> 1/g at z = g.
  LogValue acc{-g.t, wrap_angle(removed_inverted ? -g.theta : kPi - g.theta)};
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j == zero_index) continue;
    LogValue f = factor_value(pts[j], j < zs.split(), g);
    if (f.at_zero()) throw numeric_error("coincident zeros in product");
    acc = acc * f;
  }
  return acc;
}

LogValue interpolation_function(const ZeroSet& zs, long n, const LogPoint& z,
                                long edge_margin) {
  if (edge_margin < 0) throw validation_error("interpolation_function: bad edge margin");
  if (n - zs.first_index() < edge_margin || zs.last_index() - n < edge_margin) {
    throw validation_error("interpolation_function: index " + std::to_string(n) +
                           " is within " + std::to_string(edge_margin) +
                           " factors of the truncation edge");
  }
  std::size_t idx = static_cast<std::size_t>(n - zs.first_index());
  const LogPoint g = zs.zeros()[idx];
  if (z.t == g.t && wrap_angle(z.theta) == g.theta) return LogValue::one();
  LogValue G = canonical_product(zs, z);
  if (G.at_zero()) return LogValue::zero();  // z is another retained zero
  LogValue Gp = product_derivative_at_zero(zs, idx);
  // z - g = -g (1 - z/g), assembled in the log domain
  LogValue one_minus = log_one_minus(z.t - g.t, z.theta - g.theta);
  LogValue denom{g.t + one_minus.log_mag, wrap_angle(g.theta + kPi + one_minus.phase)};
  return G / (Gp * denom);
}

LaurentVector LaurentSpectrum::materialize() const {
  LaurentVector v;
  for (const auto& [m, lv] : coeffs) {
    std::complex<double> c = lv.to_complex();
    if (c != std::complex<double>(0.0, 0.0)) v.set(m, c);
  }
  return v;
}

namespace {

struct CircleSum {
  double log_mag = kNegInf;  // log |(1/Q) sum f(z_q) e^{-i m s_q}|
  double phase = 0.0;
  double log_peak = kNegInf;  // max log|f| over the circle samples
};

CircleSum contour_sum(const LogEvaluator& f, double t_R, long m, int Q) {
  std::vector<LogValue> vals(static_cast<std::size_t>(Q));
  double peak = kNegInf;
  for (int q = 0; q < Q; ++q) {
    double s = -kPi + kTwoPi * q / Q;
    vals[static_cast<std::size_t>(q)] = f({t_R, s});
    peak = std::max(peak, vals[static_cast<std::size_t>(q)].log_mag);
  }
  CircleSum out;
  out.log_peak = peak;
  if (std::isinf(peak) && peak < 0) return out;  // f vanishes on the whole circle
  std::complex<double> sum = 0.0;
  for (int q = 0; q < Q; ++q) {
    const LogValue& v = vals[static_cast<std::size_t>(q)];
    if (v.at_zero()) continue;
    double s = -kPi + kTwoPi * q / Q;
    double ph = v.phase - static_cast<double>(m) * s;
    sum += std::exp(v.log_mag - peak) * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  sum /= static_cast<double>(Q);
  double mag = std::abs(sum);
  if (mag == 0.0) return out;
  out.log_mag = peak + std::log(mag);
  out.phase = std::arg(sum);
  return out;
}

}  // namespace

LaurentSpectrum laurent_coeffs_by_contour(const LogEvaluator& f, long m_lo, long m_hi,
                                          const SpaceParams& sp,
                                          const ContourOptions& opts) {
  sp.validate();
  if (m_lo > m_hi) throw validation_error("laurent_coeffs_by_contour: empty index range");
  if (opts.q_init < 8 || opts.q_cap < opts.q_init || !(opts.rel_tol > 0.0)) {
    throw validation_error("laurent_coeffs_by_contour: bad quadrature options");
  }
  LaurentSpectrum out;
  for (long m = m_lo; m <= m_hi; ++m) {
    double half = m >= 0 ? 0.5 : -0.5;
    double t_R = (static_cast<double>(m) + half + sp.two_over_p()) / (2.0 * sp.alpha);
    CircleSum prev;
    bool have_prev = false;
    bool done = false;
    for (int Q = opts.q_init; Q <= opts.q_cap; Q *= 2) {
      CircleSum cur = contour_sum(f, t_R, m, Q);
      if (have_prev) {
        bool converged;
        if (std::isinf(cur.log_peak) && cur.log_peak < 0) {
          converged = true;  // f vanished on the whole circle
        } else if (prev.log_mag <= cur.log_peak - 28.0 &&
                   cur.log_mag <= cur.log_peak - 28.0) {
          // the average sits at the cancellation floor of the samples, so the
          // coefficient is zero to working precision
          converged = true;
        } else {
          double ref = std::max(prev.log_mag, cur.log_mag);
          auto scaled = [ref](const CircleSum& c) {
            return c.log_mag == kNegInf
                       ? std::complex<double>(0.0, 0.0)
                       : std::polar(std::exp(c.log_mag - ref), c.phase);
          };
          double d = std::abs(scaled(prev) - scaled(cur));
          converged = d <= opts.rel_tol * std::exp(cur.log_mag - ref);
        }
        if (converged) {
          // the circle average carries a factor R^m; take it back out
          out.coeffs[m] = LogValue{cur.log_mag - static_cast<double>(m) * t_R, cur.phase};
          done = true;
          break;
        }
      }
      prev = cur;
      have_prev = true;
    }
    if (!done) {
      throw numeric_error("contour quadrature did not converge for index " +
                          std::to_string(m));
    }
  }
  return out;
}

long zero_count(const ZeroSet& zs, double t_radius) {
  if (!std::isfinite(t_radius) || t_radius < 0.0) {
    throw validation_error("zero_count: bad radius");
  }
  long count = 0;
  for (const auto& q : zs.zeros().points()) {
    if (std::fabs(q.t) > t_radius) continue;
    double B = std::sqrt(std::max(0.0, t_radius * t_radius - q.t * q.t));
    long k_lo = static_cast<long>(std::ceil((-B - q.theta) / kTwoPi));
    long k_hi = static_cast<long>(std::floor((B - q.theta) / kTwoPi));
    if (k_hi >= k_lo) count += k_hi - k_lo + 1;
  }
  return count;
}

JensenReport jensen_residual(const ZeroSet& zs, double R, const JensenOptions& opts) {
  if (!std::isfinite(R) || !(R > 0.0)) throw validation_error("jensen_residual: R must be > 0");
  for (const auto& q : zs.zeros().points()) {
    if (q.t == 0.0 && q.theta == 0.0) {
      throw validation_error("jensen_residual: zero at the lift origin");
    }
  }
  // Moduli of the lifted zeros t + i(theta + 2 pi k) out to R plus headroom
  // for the clearance shift.
  double reach = R + 1.0;
  std::vector<double> moduli;
  for (const auto& q : zs.zeros().points()) {
    if (std::fabs(q.t) > reach) continue;
    double B = std::sqrt(std::max(0.0, reach * reach - q.t * q.t));
    long k_lo = static_cast<long>(std::ceil((-B - q.theta) / kTwoPi));
    long k_hi = static_cast<long>(std::floor((B - q.theta) / kTwoPi));
    for (long k = k_lo; k <= k_hi; ++k) {
      moduli.push_back(std::hypot(q.t, q.theta + kTwoPi * static_cast<double>(k)));
    }
  }

  JensenReport rep;
  rep.R_requested = R;
  double R_used = R;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    bool clear = true;
    for (double rho : moduli) clear = clear && std::fabs(rho - R_used) >= opts.clearance;
    if (clear) break;
    R_used += 3.0 * opts.clearance;
    rep.shifted = true;
  }
  if (R_used > R + 0.9) throw numeric_error("jensen_residual: could not clear the circle");
  rep.R_used = R_used;

  for (double rho : moduli) {
    if (rho <= R_used) rep.lhs += std::log(R_used / rho);
  }

  auto integrand = [&zs, R_used](double s) {
    LogPoint z{R_used * std::cos(s), wrap_angle(R_used * std::sin(s))};
    return canonical_product(zs, z).log_mag;
  };
  double integral = adaptive_simpson(integrand, 0.0, kTwoPi, opts.integral_tol * kTwoPi,
                                     64, 40);
  rep.circle_average = integral / kTwoPi;

  LogValue g0 = canonical_product(zs, {0.0, 0.0});
  if (g0.at_zero()) throw validation_error("jensen_residual: zero at the lift origin");
  rep.log_g0 = g0.log_mag;
  rep.residual = rep.lhs - (rep.circle_average - rep.log_g0);
  return rep;
}

}  // namespace smallfock
