#include "smallfock/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "smallfock/errors.hpp"

namespace smallfock {

void SpaceParams::validate() const {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw validation_error("alpha must be a positive finite number");
  }
  if (std::isnan(p) || p <= 0.0) {
    throw validation_error("p must be positive (or infinity)");
  }
}

SpaceParams SpaceParams::make(double alpha, double p) {
  SpaceParams sp{alpha, p};
  sp.validate();
  return sp;
}

double phi(const SpaceParams& sp, double t) { return sp.alpha * t * t; }

double log_monomial_norm(const SpaceParams& sp, long n) {
  double nn = static_cast<double>(n);
  if (sp.sup_space()) return nn * nn / (4.0 * sp.alpha);
  double c = nn + sp.two_over_p();
  return (std::log(2.0 * kPi) + 0.5 * std::log(kPi / (sp.p * sp.alpha))) / sp.p +
         c * c / (4.0 * sp.alpha);
}

double monomial_norm(const SpaceParams& sp, long n) {
  return std::exp(log_monomial_norm(sp, n));
}

void LaurentVector::set(long n, std::complex<double> a) {
  if (a == std::complex<double>(0.0, 0.0)) {
    a_.erase(n);
  } else {
    a_[n] = a;
  }
}

std::complex<double> LaurentVector::get(long n) const {
  auto it = a_.find(n);
  return it == a_.end() ? std::complex<double>(0.0, 0.0) : it->second;
}

long LaurentVector::n_min() const {
  if (a_.empty()) throw validation_error("empty Laurent vector has no support");
  return a_.begin()->first;
}

long LaurentVector::n_max() const {
  if (a_.empty()) throw validation_error("empty Laurent vector has no support");
  return a_.rbegin()->first;
}

LogValue log_eval_point(const LaurentVector& v, const LogPoint& z) {
  if (v.empty()) return LogValue::zero();
  // Factor out the dominant term so the inner sum stays in range.
  double big = kNegInf;
  for (const auto& [n, a] : v.coeffs()) {
    big = std::max(big, std::log(std::abs(a)) + static_cast<double>(n) * z.t);
  }
  std::complex<double> sum = 0.0;
  for (const auto& [n, a] : v.coeffs()) {
    double nn = static_cast<double>(n);
    double scale = std::exp(std::log(std::abs(a)) + nn * z.t - big);
    double ph = std::arg(a) + nn * z.theta;
    sum += scale * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  double mag = std::abs(sum);
  if (mag == 0.0) return LogValue::zero();
  return {big + std::log(mag), std::arg(sum)};
}

std::complex<double> eval_point(const LaurentVector& v, const LogPoint& z) {
  return log_eval_point(v, z).to_complex();
}

LaurentVector apply_shift(const LaurentVector& v, long n, const SpaceParams& sp) {
  sp.validate();
  LaurentVector out;
  double nn = static_cast<double>(n);
  for (const auto& [m, a] : v.coeffs()) {
    double f = std::exp(-nn * nn / (4.0 * sp.alpha) +
                        nn * static_cast<double>(m) / (2.0 * sp.alpha));
    out.set(m - n, a * f);
  }
  return out;
}

double log_norm_p2(const LaurentVector& v, const SpaceParams& sp) {
  sp.validate();
  if (sp.p != 2.0) throw validation_error("norm_p2 requires p = 2");
  std::vector<double> terms;
  terms.reserve(v.coeffs().size());
  for (const auto& [n, a] : v.coeffs()) {
    terms.push_back(2.0 * (std::log(std::abs(a)) + log_monomial_norm(sp, n)));
  }
  return 0.5 * log_sum_exp(terms);
}

double norm_p2(const LaurentVector& v, const SpaceParams& sp) {
  return std::exp(log_norm_p2(v, sp));
}

double log_eval_functional_bound(const SpaceParams& sp, const LogPoint& z) {
  sp.validate();
  return phi(sp, z.t) - sp.two_over_p() * z.t;
}

double eval_functional_bound(const SpaceParams& sp, const LogPoint& z) {
  return std::exp(log_eval_functional_bound(sp, z));
}

double log_restricted_norm(const LogAbsEvaluator& lf, const PointSequence& s,
                           const SpaceParams& sp) {
  sp.validate();
  if (sp.sup_space()) {
    double best = kNegInf;
    for (const auto& q : s.points()) {
      best = std::max(best, lf(q) - phi(sp, q.t));
    }
    return best;
  }
  std::vector<double> terms;
  terms.reserve(s.size());
  for (const auto& q : s.points()) {
    double la = lf(q);
    if (std::isinf(la) && la < 0) continue;  // exact zero contributes nothing
    terms.push_back(sp.p * la + 2.0 * q.t - sp.p * phi(sp, q.t));
  }
  return log_sum_exp(terms) / sp.p;
}

double restricted_norm(const Evaluator& f, const PointSequence& s, const SpaceParams& sp) {
  auto lf = [&f](const LogPoint& q) {
    double a = std::abs(f(q));
    return a == 0.0 ? kNegInf : std::log(a);
  };
  return std::exp(log_restricted_norm(lf, s, sp));
}

namespace {

// Max over the theta ring of lf minus the weight at t.
double ring_max(const LogAbsEvaluator& lf, const SpaceParams& sp, double t,
                int theta_samples) {
  double best = kNegInf;
  for (int k = 0; k < theta_samples; ++k) {
    double theta = -kPi + kTwoPi * k / theta_samples;
    best = std::max(best, lf({t, theta}));
  }
  return best - phi(sp, t);
}

}  // namespace

double log_weighted_sup(const LogAbsEvaluator& lf, const SpaceParams& sp, double t_lo,
                        double t_hi, const GridOptions& opts,
                        std::span<const double> emphasis) {
  sp.validate();
  if (!(t_hi >= t_lo)) throw validation_error("log_weighted_sup: empty t range");
  if (opts.theta_samples < 8 || opts.t_step <= 0.0) {
    throw validation_error("log_weighted_sup: bad grid options");
  }
  long steps = std::max(1L, std::lround(std::ceil((t_hi - t_lo) / opts.t_step)));
  std::vector<std::pair<double, double>> vals;  // (value, t)
  vals.reserve(static_cast<std::size_t>(steps) + 1);
  for (long i = 0; i <= steps; ++i) {
    double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(steps);
    vals.emplace_back(ring_max(lf, sp, t, opts.theta_samples), t);
  }
  for (double e : emphasis) {
    if (e < t_lo || e > t_hi) continue;
    for (int j = -8; j <= 8; ++j) {
      double t = e + j * opts.t_step / 8.0;
      if (t < t_lo || t > t_hi) continue;
      vals.emplace_back(ring_max(lf, sp, t, opts.theta_samples), t);
    }
  }
  std::sort(vals.begin(), vals.end(), std::greater<>());
  double best = vals.front().first;

  // Local refinement around the leading candidates.
  std::vector<double> seeds;
  for (const auto& [v, t] : vals) {
    if (v < best - 1.0 || seeds.size() >= 3) break;
    bool close = false;
    for (double sd : seeds) close = close || std::fabs(sd - t) < 2.0 * opts.t_step;
    if (!close) seeds.push_back(t);
  }
  for (double seed : seeds) {
    double center = seed, radius = opts.t_step;
    double local = kNegInf;
    for (int round = 0; round < opts.max_refinements; ++round) {
      double round_best = kNegInf, round_arg = center;
      for (int j = -8; j <= 8; ++j) {
        double t = std::clamp(center + j * radius / 8.0, t_lo, t_hi);
        double v = ring_max(lf, sp, t, opts.theta_samples);
        if (v > round_best) {
          round_best = v;
          round_arg = t;
        }
      }
      center = round_arg;
      radius /= 8.0;
      if (round_best <= local + opts.refine_tol) {
        local = std::max(local, round_best);
        break;
      }
      local = round_best;
    }
    best = std::max(best, local);
  }
  return best;
}

double sup_norm_estimate(const LaurentVector& v, const SpaceParams& sp,
                         const GridOptions& opts) {
  sp.validate();
  if (!sp.sup_space()) throw validation_error("sup_norm_estimate requires p = inf");
  if (v.empty()) return 0.0;
  double t_lo = static_cast<double>(v.n_min()) / (2.0 * sp.alpha) - opts.pad;
  double t_hi = static_cast<double>(v.n_max()) / (2.0 * sp.alpha) + opts.pad;
  auto lf = [&v](const LogPoint& q) { return log_eval_point(v, q).log_mag; };
  return std::exp(log_weighted_sup(lf, sp, t_lo, t_hi, opts));
}

}  // namespace smallfock
