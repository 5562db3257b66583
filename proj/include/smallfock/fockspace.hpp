#pragma once

#include <complex>
#include <functional>
#include <map>

#include "smallfock/geometry.hpp"
#include "smallfock/numeric.hpp"

namespace smallfock {

// Parameters (alpha, p) of the weighted space on the punctured plane with
// weight phi(z) = alpha * log^2|z|. p may be infinity (sup-norm space).
struct SpaceParams {
  double alpha = 1.0;
  double p = 2.0;

  bool sup_space() const { return std::isinf(p); }
  double two_over_p() const { return sup_space() ? 0.0 : 2.0 / p; }
  void validate() const;  // throws validation_error on bad alpha/p

  static SpaceParams make(double alpha, double p);
};

// phi in log coordinates: alpha * t^2.
double phi(const SpaceParams& sp, double t);

// log ||z^n||. Closed form:
//   finite p: (1/p) log(2 pi sqrt(pi/(p alpha))) + (n + 2/p)^2 / (4 alpha)
//   p = inf : n^2 / (4 alpha)
double log_monomial_norm(const SpaceParams& sp, long n);
double monomial_norm(const SpaceParams& sp, long n);

// Finitely supported Laurent coefficient vector f(z) = sum a_n z^n.
class LaurentVector {
 public:
  void set(long n, std::complex<double> a);
  std::complex<double> get(long n) const;
  const std::map<long, std::complex<double>>& coeffs() const { return a_; }
  bool empty() const { return a_.empty(); }
  long n_min() const;  // require !empty()
  long n_max() const;

 private:
  std::map<long, std::complex<double>> a_;
};

// f(z) at a point, with the dominant term's growth factored out of the sum
// so intermediate terms stay in range. The returned complex value itself
// can still overflow; log_eval_point never does.
std::complex<double> eval_point(const LaurentVector& v, const LogPoint& z);
LogValue log_eval_point(const LaurentVector& v, const LogPoint& z);

// Weighted shift by n cells: coefficient map a_m -> a'_{m-n} with
// a'_{m-n} = a_m * exp(-n^2/(4 alpha)) * exp(n m /(2 alpha)).
// e^{n/(p alpha)} times this operator is an isometry of the space.
LaurentVector apply_shift(const LaurentVector& v, long n, const SpaceParams& sp);

// Norm for p = 2 from coefficients (orthogonal monomials):
// ||f||^2 = sum |a_n|^2 ||z^n||^2, accumulated in the log domain.
double log_norm_p2(const LaurentVector& v, const SpaceParams& sp);
double norm_p2(const LaurentVector& v, const SpaceParams& sp);

// Norm of the evaluation functional at z: sup |f(z)| over ||f|| <= 1 is
// comparable to e^{phi(t)} e^{-(2/p) t}; this returns that bound.
double log_eval_functional_bound(const SpaceParams& sp, const LogPoint& z);
double eval_functional_bound(const SpaceParams& sp, const LogPoint& z);

using Evaluator = std::function<std::complex<double>(const LogPoint&)>;
// log|f(z)|; must return -inf exactly at zeros of f.
using LogAbsEvaluator = std::function<double(const LogPoint&)>;

// Restriction norm over a point sequence:
//   finite p: ( sum_l |f(l)|^p |l|^2 e^{-p phi(l)} )^{1/p}
//   p = inf : sup_l |f(l)| e^{-phi(l)}
// Empty sequence gives 0.
double restricted_norm(const Evaluator& f, const PointSequence& s, const SpaceParams& sp);
double log_restricted_norm(const LogAbsEvaluator& lf, const PointSequence& s,
                           const SpaceParams& sp);

struct GridOptions {
  int theta_samples = 256;
  double t_step = 0.05;
  double refine_tol = 1e-6;
  int max_refinements = 6;
  double pad = 8.0;  // extension beyond the influence zone in t
};

// Grid estimate (lower bound, refined until stable) of
// log sup_z |f(z)| e^{-phi(z)} over t in [t_lo, t_hi], all theta.
// emphasis lists t values that get a locally fine sweep.
double log_weighted_sup(const LogAbsEvaluator& lf, const SpaceParams& sp, double t_lo,
                        double t_hi, const GridOptions& opts,
                        std::span<const double> emphasis = {});

// Sup-norm estimate for p = inf: the weighted sup over the coefficient
// influence zone [n_min/(2 alpha) - pad, n_max/(2 alpha) + pad].
double sup_norm_estimate(const LaurentVector& v, const SpaceParams& sp,
                         const GridOptions& opts = {});

}  // namespace smallfock
