#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <doctest.h>

#include "smallfock/numeric.hpp"
#include "oracles.hpp"

using namespace smallfock;

TEST_CASE("wrap_angle lands in [-pi, pi)") {
  CHECK(wrap_angle(0.0) == doctest::Approx(0.0));
  CHECK(wrap_angle(kPi) == doctest::Approx(-kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(-kPi));
  CHECK(wrap_angle(3.5 * kPi) == doctest::Approx(-0.5 * kPi));
  CHECK(wrap_angle(-7.25 * kPi) == doctest::Approx(0.75 * kPi));
  std::mt19937_64 gen(11);
  for (int i = 0; i < 500; ++i) {
    const double x = oracles::urand_in(gen, -50.0, 50.0);
    const double w = wrap_angle(x);
    CHECK(w >= -kPi);
    CHECK(w < kPi);
    // same point on the circle
    CHECK(std::abs(std::sin(w) - std::sin(x)) < 1e-11);
    CHECK(std::abs(std::cos(w) - std::cos(x)) < 1e-11);
  }
}

TEST_CASE("pairwise_sum matches long double accumulation") {
  std::mt19937_64 gen(7);
  std::vector<double> xs;
  long double ref = 0.0L;
  for (int i = 0; i < 10001; ++i) {
    const double x = oracles::urand_in(gen, -1.0, 1.0) * std::pow(10.0, int(gen() % 8));
    xs.push_back(x);
    ref += x;
  }
  const double got = pairwise_sum(xs);
  CHECK(std::abs(got - double(ref)) <= 1e-9 * std::max(1.0, std::abs(double(ref))));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{3.25}) == 3.25);
}

TEST_CASE("log_sum_exp basics and huge offsets") {
  CHECK(log_sum_exp(std::vector<double>{}) == kNegInf);
  std::vector<double> two{std::log(2.0), std::log(3.0)};
  CHECK(log_sum_exp(two) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  // values far outside double range still combine correctly
  std::vector<double> big{10000.0, 10000.0 + std::log(2.0)};
  CHECK(log_sum_exp(big) == doctest::Approx(10000.0 + std::log(3.0)).epsilon(1e-14));
  std::vector<double> withinf{kNegInf, 2.0, kNegInf};
  CHECK(log_sum_exp(withinf) == doctest::Approx(2.0));
  std::vector<double> allinf{kNegInf, kNegInf};
  CHECK(log_sum_exp(allinf) == kNegInf);
}

TEST_CASE("LogValue round-trips complex values") {
  std::mt19937_64 gen(23);
  for (int i = 0; i < 200; ++i) {
    const std::complex<double> v(oracles::urand_in(gen, -5, 5), oracles::urand_in(gen, -5, 5));
    const auto lv = LogValue::from_complex(v);
    const auto back = lv.to_complex();
    CHECK(std::abs(back - v) <= 1e-13 * std::abs(v));
  }
  CHECK(LogValue::from_complex(0.0).at_zero());
  CHECK(LogValue::zero().at_zero());
  CHECK(!LogValue::one().at_zero());
  CHECK(LogValue::one().to_complex() == std::complex<double>(1.0, 0.0));
}

TEST_CASE("LogValue multiply and divide") {
  const auto a = LogValue::from_complex({3.0, 4.0});
  const auto b = LogValue::from_complex({-1.0, 2.0});
  const auto prod = (a * b).to_complex();
  const auto quot = (a / b).to_complex();
  const std::complex<double> za(3.0, 4.0), zb(-1.0, 2.0);
  CHECK(std::abs(prod - za * zb) < 1e-12 * std::abs(za * zb));
  CHECK(std::abs(quot - za / zb) < 1e-12 * std::abs(za / zb));
  CHECK((a * LogValue::zero()).at_zero());
  // phase stays reduced
  const auto c = a * a * a * a;
  CHECK(c.phase >= -kPi);
  CHECK(c.phase < kPi);
}

TEST_CASE("log_one_minus against direct complex arithmetic") {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 2000; ++i) {
    const double lr = oracles::urand_in(gen, -3.0, 3.0);
    const double ph = oracles::urand_in(gen, -kPi, kPi);
    const std::complex<double> r = std::exp(std::complex<double>(lr, ph));
    const std::complex<double> direct = 1.0 - r;
    const auto lv = log_one_minus(lr, ph);
    if (std::abs(direct) < 1e-300) {
      CHECK(lv.at_zero());
      continue;
    }
    CHECK(lv.log_mag == doctest::Approx(std::log(std::abs(direct))).epsilon(1e-11));
    const double dphase = wrap_angle(lv.phase - std::arg(direct));
    CHECK(std::abs(dphase) < 1e-11);
  }
}

TEST_CASE("log_one_minus near-cancellation stays accurate") {
  // r = exp(eps) with tiny eps: 1 - r = -eps - eps^2/2 - ...
  for (const double eps : {1e-8, 1e-12, 1e-15}) {
    const auto lv = log_one_minus(eps, 0.0);
    CHECK(lv.log_mag == doctest::Approx(std::log(eps)).epsilon(1e-7));
    CHECK(std::abs(wrap_angle(lv.phase - (-kPi))) < 1e-6);  // negative real value
  }
  // r exactly 1
  CHECK(log_one_minus(0.0, 0.0).at_zero());
  // |r| huge: 1 - r ~ -r
  const auto big = log_one_minus(500.0, 0.3);
  CHECK(big.log_mag == doctest::Approx(500.0).epsilon(1e-12));
  CHECK(std::abs(wrap_angle(big.phase - wrap_angle(0.3 + kPi))) < 1e-12);
  // |r| tiny: log|1-r| ~ -r.real
  const auto small = log_one_minus(-40.0, 0.0);
  CHECK(small.log_mag == doctest::Approx(-std::exp(-40.0)).epsilon(1e-6));
}

TEST_CASE("adaptive_simpson on known integrals") {
  const auto one_over_x = [](double x) { return 1.0 / x; };
  CHECK(adaptive_simpson(one_over_x, 1.0, 2.0, 1e-12) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-11));
  const auto gauss = [](double x) { return std::exp(-x * x); };
  CHECK(adaptive_simpson(gauss, -8.0, 8.0, 1e-12) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-11));
  // narrow spike: initial panel split must catch it
  const auto spike = [](double x) { return std::exp(-1e4 * (x - 0.625) * (x - 0.625)); };
  const double spike_ref = oracles::trapezoid_doubling(spike, 0.0, 1.0, 1e-14, 2048);
  CHECK(adaptive_simpson(spike, 0.0, 1.0, 1e-12, 64) ==
        doctest::Approx(spike_ref).epsilon(1e-9));
  // oscillatory
  const auto osc = [](double x) { return std::cos(7.0 * x); };
  CHECK(adaptive_simpson(osc, 0.0, 2.0, 1e-12) ==
        doctest::Approx(std::sin(14.0) / 7.0).epsilon(1e-10));
}
