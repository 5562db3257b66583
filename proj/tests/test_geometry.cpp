#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "smallfock/errors.hpp"
#include "smallfock/geometry.hpp"
#include "oracles.hpp"

using namespace smallfock;

namespace {

PointSequence lattice_points(int lo, int hi, double step = 1.0, double theta = 0.0) {
  std::vector<LogPoint> pts;
  for (int k = lo; k <= hi; ++k) pts.push_back(make_log_point(k * step, theta));
  return PointSequence(std::move(pts));
}

}  // namespace

TEST_CASE("dlog on pinned values") {
  CHECK(dlog({0.0, 0.0}, {0.0, 0.0}) == 0.0);
  CHECK(dlog({0.0, 0.0}, {1.0, 0.0}) == doctest::Approx(1.0));
  // antipodal on the circle: chord length 2
  CHECK(dlog({0.0, 0.0}, {0.0, kPi}) == doctest::Approx(2.0));
  CHECK(dlog({2.0, 0.5}, {-1.0, 0.5}) == doctest::Approx(3.0));
  CHECK(dlog({0.0, 0.0}, {0.0, kPi / 2}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("dlog metric axioms on random triples") {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 400; ++i) {
    const LogPoint a = make_log_point(oracles::urand_in(gen, -9, 9), oracles::urand_in(gen, -9, 9));
    const LogPoint b = make_log_point(oracles::urand_in(gen, -9, 9), oracles::urand_in(gen, -9, 9));
    const LogPoint c = make_log_point(oracles::urand_in(gen, -9, 9), oracles::urand_in(gen, -9, 9));
    CHECK(dlog(a, b) == doctest::Approx(dlog(b, a)).epsilon(1e-14));
    CHECK(dlog(a, b) >= 0.0);
    CHECK(dlog(a, c) <= dlog(a, b) + dlog(b, c) + 1e-12);
  }
  // identity of indiscernibles on wrapped angles: same circle point
  CHECK(dlog(make_log_point(1.0, kPi - 1e-17), make_log_point(1.0, kPi - 1e-17)) == 0.0);
}

TEST_CASE("dlog ignores full angular turns") {
  const LogPoint a = make_log_point(0.3, 0.4);
  const LogPoint b = make_log_point(-0.2, 0.4 + kTwoPi);
  CHECK(dlog(a, b) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("PointSequence validates and sorts") {
  std::vector<LogPoint> pts{make_log_point(2.0, 0.0), make_log_point(-1.0, 0.5),
                            make_log_point(0.5, -0.5)};
  PointSequence s(pts);
  CHECK(s.size() == 3);
  CHECK(s[0].t == -1.0);
  CHECK(s[2].t == 2.0);
  CHECK(s.window().t_min == -1.0);
  CHECK(s.window().t_max == 2.0);

  CHECK_THROWS_AS(PointSequence({make_log_point(0, 0), make_log_point(0, 0)}),
                  validation_error);
  CHECK_THROWS_AS(
      PointSequence({make_log_point(0, 0)}, Window{1.0, 2.0}),  // point outside window
      validation_error);
  CHECK_THROWS_AS(make_log_point(std::nan(""), 0.0), validation_error);
  CHECK_THROWS_AS(make_log_point(0.0, std::numeric_limits<double>::infinity()),
                  validation_error);
  // duplicates after angle wrapping are still duplicates
  CHECK_THROWS_AS(PointSequence({make_log_point(1.0, 0.25),
                                 make_log_point(1.0, 0.25 + kTwoPi)}),
                  validation_error);
  CHECK(PointSequence().empty());
}

TEST_CASE("separation constant of lattices") {
  CHECK(separation_constant(lattice_points(-10, 10)) == doctest::Approx(1.0));
  CHECK(separation_constant(lattice_points(-5, 5, 0.25)) == doctest::Approx(0.25));
  CHECK(separation_constant(PointSequence({make_log_point(0, 0)})) ==
        std::numeric_limits<double>::infinity());
  // two points split between modulus and angle
  PointSequence two({make_log_point(0, 0), make_log_point(0.1, 0.3)});
  CHECK(separation_constant(two) ==
        doctest::Approx(0.1 + 2 * std::sin(0.15)).epsilon(1e-13));
}

TEST_CASE("separation is invariant under scaling and rotation") {
  std::mt19937_64 gen(101);
  std::vector<LogPoint> pts;
  for (int i = 0; i < 40; ++i)
    pts.push_back(make_log_point(oracles::urand_in(gen, -8, 8), oracles::urand_in(gen, -3, 3)));
  PointSequence s(pts);
  const double base = separation_constant(s);
  CHECK(separation_constant(scale_sequence(s, 2.75)) == doctest::Approx(base).epsilon(1e-12));
  CHECK(separation_constant(rotate_sequence(s, 1.2)) == doctest::Approx(base).epsilon(1e-12));
  // scaling shifts every t and the window
  const auto scaled = scale_sequence(s, 2.75);
  CHECK(scaled.window().t_min == doctest::Approx(s.window().t_min + 2.75));
  CHECK(scaled[0].t == doctest::Approx(s[0].t + 2.75));
}

TEST_CASE("separation against brute-force pair scan") {
  std::mt19937_64 gen(55);
  for (int round = 0; round < 20; ++round) {
    std::vector<LogPoint> pts;
    for (int i = 0; i < 25; ++i)
      pts.push_back(
          make_log_point(oracles::urand_in(gen, -6, 6), oracles::urand_in(gen, -3, 3)));
    PointSequence s(pts);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) best = std::min(best, dlog(s[i], s[j]));
    CHECK(separation_constant(s) == doctest::Approx(best).epsilon(1e-14));
  }
}

TEST_CASE("remove_point drops exactly one point") {
  auto s = lattice_points(0, 4);
  auto r = remove_point(s, 2);
  CHECK(r.size() == 4);
  CHECK(r[1].t == 1.0);
  CHECK(r[2].t == 3.0);
  CHECK(r.window().t_min == s.window().t_min);  // window unchanged
  CHECK_THROWS_AS(remove_point(s, 5), validation_error);
}

TEST_CASE("epsilon_match on shifted lattices") {
  auto a = lattice_points(0, 9);
  auto b_pts = std::vector<LogPoint>{};
  for (int k = 0; k <= 9; ++k) b_pts.push_back(make_log_point(k + 0.05, 0.0));
  PointSequence b(std::move(b_pts));
  CHECK(!epsilon_match(a, b, 0.04));
  CHECK(epsilon_match(a, b, 0.06));
  CHECK(epsilon_match(a, a, 0.0));
  // size mismatch can never match
  CHECK(!epsilon_match(a, lattice_points(0, 8), 100.0));
}

TEST_CASE("epsilon_match agrees with exhaustive matching") {
  std::mt19937_64 gen(77);
  for (int round = 0; round < 30; ++round) {
    const int n = 1 + int(gen() % 7);
    std::vector<LogPoint> pa, pb;
    for (int i = 0; i < n; ++i) {
      pa.push_back(make_log_point(oracles::urand_in(gen, -2, 2), oracles::urand_in(gen, -2, 2)));
      pb.push_back(make_log_point(oracles::urand_in(gen, -2, 2), oracles::urand_in(gen, -2, 2)));
    }
    PointSequence a(pa), b(pb);
    for (const double eps : {0.25, 0.75, 1.5, 3.0}) {
      CHECK(epsilon_match(a, b, eps) == oracles::brute_force_match(a, b, eps));
    }
  }
}

TEST_CASE("epsilon_match is monotone in eps and symmetric") {
  std::mt19937_64 gen(13);
  std::vector<LogPoint> pa, pb;
  for (int i = 0; i < 12; ++i) {
    pa.push_back(make_log_point(oracles::urand_in(gen, -4, 4), oracles::urand_in(gen, -2, 2)));
    pb.push_back(make_log_point(oracles::urand_in(gen, -4, 4), oracles::urand_in(gen, -2, 2)));
  }
  PointSequence a(pa), b(pb);
  bool prev = false;
  for (const double eps : {0.1, 0.3, 0.6, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    const bool now = epsilon_match(a, b, eps);
    CHECK(epsilon_match(b, a, eps) == now);
    if (prev) CHECK(now);  // once matchable, stays matchable
    prev = now;
  }
  CHECK(prev);  // 16 exceeds any possible pair distance here, must match
}
