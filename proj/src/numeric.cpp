#include "smallfock/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "smallfock/errors.hpp"

namespace smallfock {

double wrap_angle(double theta) {
  double w = std::remainder(theta, kTwoPi);  // (-pi, pi]
  if (w == kPi) w = -kPi;
  return w;
}

namespace {

double pairwise_sum_range(const double* xs, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += xs[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum_range(xs, h) + pairwise_sum_range(xs + h, n - h);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
  return pairwise_sum_range(xs.data(), xs.size());
}

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return kNegInf;
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (std::isinf(m)) return m;  // all -inf, or +inf dominates
  std::vector<double> shifted(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) shifted[i] = std::exp(xs[i] - m);
  return m + std::log(pairwise_sum(shifted));
}

std::complex<double> LogValue::to_complex() const {
  if (at_zero()) return {0.0, 0.0};
  double r = std::exp(log_mag);
  return {r * std::cos(phase), r * std::sin(phase)};
}

LogValue LogValue::from_complex(std::complex<double> v) {
  double a = std::abs(v);
  if (a == 0.0) return zero();
  return {std::log(a), std::arg(v)};
}

LogValue LogValue::operator*(const LogValue& o) const {
  if (at_zero() || o.at_zero()) return zero();
  return {log_mag + o.log_mag, wrap_angle(phase + o.phase)};
}

LogValue LogValue::operator/(const LogValue& o) const {
  if (o.at_zero()) throw numeric_error("LogValue division by zero");
  if (at_zero()) return zero();
  return {log_mag - o.log_mag, wrap_angle(phase - o.phase)};
}

LogValue log_one_minus(double log_ratio, double ratio_phase) {
  double psi = wrap_angle(ratio_phase);
  if (log_ratio == 0.0 && psi == 0.0) return LogValue::zero();
  if (log_ratio > 0.0) {
    // 1 - r = -r (1 - 1/r)
    LogValue inner = log_one_minus(-log_ratio, -psi);
    return {log_ratio + inner.log_mag, wrap_angle(psi + kPi + inner.phase)};
  }
  // re(r) - 1 and im(r), both stable when r is close to 1
  double s = std::sin(0.5 * psi);
  double u = std::expm1(log_ratio) * std::cos(psi) - 2.0 * s * s;  // e^L cos psi - 1
  double re = -u;
  double im = -std::exp(log_ratio) * std::sin(psi);
  return {std::log(std::hypot(re, im)), std::atan2(im, re)};
}

namespace {

struct SimpsonCtx {
  const std::function<double(double)>& f;
  int max_depth;
};

double simpson_rec(const SimpsonCtx& ctx, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = ctx.f(lm), frm = ctx.f(rm);
  double h = b - a;
  double left = h / 12.0 * (fa + 4.0 * flm + fm);
  double right = h / 12.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth >= ctx.max_depth || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_rec(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int initial_panels, int max_depth) {
  if (!(b > a)) throw validation_error("adaptive_simpson: empty interval");
  if (initial_panels < 1) initial_panels = 1;
  SimpsonCtx ctx{f, max_depth};
  double h = (b - a) / initial_panels;
  double total = 0.0;
  double panel_tol = tol / initial_panels;
  for (int i = 0; i < initial_panels; ++i) {
    double x0 = a + i * h, x1 = (i + 1 == initial_panels) ? b : x0 + h;
    double xm = 0.5 * (x0 + x1);
    double f0 = f(x0), fm = f(xm), f1 = f(x1);
    double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += simpson_rec(ctx, x0, x1, f0, fm, f1, whole, panel_tol, 0);
  }
  return total;
}

}  // namespace smallfock
