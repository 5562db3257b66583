#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "smallfock/density.hpp"
#include "smallfock/errors.hpp"
#include "oracles.hpp"

using namespace smallfock;

namespace {

PointSequence int_lattice(int lo, int hi) {
  std::vector<LogPoint> pts;
  for (int k = lo; k <= hi; ++k) pts.push_back(make_log_point(double(k), 0.0));
  return PointSequence(std::move(pts));
}

}  // namespace

TEST_CASE("count_in_band on pinned cases") {
  CHECK(count_in_band(PointSequence(), 0.0, 5.0) == 0);
  auto s = int_lattice(-10, 10);
  CHECK(count_in_band(s, -0.5, 3.0) == 3);  // t = 0, 1, 2
  CHECK(count_in_band(s, 0.0, 0.0) == 1);   // closed band hits t = 0
  CHECK(count_in_band(s, 10.5, 4.0) == 0);
  CHECK(count_in_band(s, -10.0, 20.0) == 21);
}

TEST_CASE("critical lattice has density one") {
  auto s = int_lattice(-30, 30);
  const double R[] = {20.0};
  const auto profile = lower_log_density(s, R);
  REQUIRE(profile.entries.size() == 1);
  CHECK(profile.entries[0].min_count == 20);
  CHECK(profile.estimate == doctest::Approx(1.0));
  CHECK(profile.R_max_used == 20.0);
}

TEST_CASE("gapped lattice: the infimum lives between event points") {
  // integer points on [-30, 30] with 0..10 deleted; a width-12 band placed
  // just right of t = -1 catches only the point at t = 11
  std::vector<LogPoint> pts;
  for (int k = -30; k <= 30; ++k)
    if (k < 0 || k > 10) pts.push_back(make_log_point(double(k), 0.0));
  PointSequence s(pts, Window{-30.0, 30.0});
  const double R[] = {12.0};
  const auto profile = lower_log_density(s, R);
  CHECK(profile.entries[0].min_count == 1);
  CHECK(profile.estimate == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("empty sequence has zero density") {
  PointSequence s({}, Window{-10.0, 10.0});
  const double R[] = {5.0};
  const auto profile = lower_log_density(s, R);
  CHECK(profile.estimate == 0.0);
  CHECK(profile.entries[0].min_count == 0);
}

TEST_CASE("profile is sorted by R and estimate uses the largest R") {
  auto s = int_lattice(-30, 30);
  const double R[] = {15.0, 5.0, 20.0};
  const auto profile = lower_log_density(s, R);
  REQUIRE(profile.entries.size() == 3);
  CHECK(profile.entries[0].R == 5.0);
  CHECK(profile.entries[2].R == 20.0);
  CHECK(profile.estimate == profile.entries[2].inf_count_over_R);
}

TEST_CASE("extent guard") {
  auto s = int_lattice(-15, 15);  // extent 30
  const double bad_big[] = {10.5};
  CHECK_THROWS_AS(lower_log_density(s, bad_big), validation_error);
  const double bad_zero[] = {0.0};
  CHECK_THROWS_AS(lower_log_density(s, bad_zero), validation_error);
  const double good[] = {10.0};
  CHECK_NOTHROW(lower_log_density(s, good));
}

TEST_CASE("density is exactly scale invariant") {
  std::mt19937_64 gen(6021);
  std::vector<LogPoint> pts;
  for (int i = 0; i < 50; ++i)
    pts.push_back(make_log_point(oracles::grid_rand(gen, -12.0, 12.0),
                                 oracles::urand_in(gen, -3, 3)));
  PointSequence s(pts);
  const double R[] = {2.0, 4.0, 6.0};
  const auto base = lower_log_density(s, R);
  for (const double shift : {0.5, -3.25, 7.0}) {  // binary-grid shifts keep t exact
    const auto moved = lower_log_density(scale_sequence(s, shift), R);
    for (std::size_t i = 0; i < base.entries.size(); ++i) {
      CHECK(moved.entries[i].min_count == base.entries[i].min_count);
      CHECK(moved.entries[i].inf_count_over_R == base.entries[i].inf_count_over_R);
    }
  }
}

TEST_CASE("removing points never raises the profile") {
  std::mt19937_64 gen(88);
  std::vector<LogPoint> pts;
  for (int i = 0; i < 60; ++i)
    pts.push_back(make_log_point(oracles::grid_rand(gen, -12.0, 12.0),
                                 oracles::urand_in(gen, -3, 3)));
  PointSequence s(pts);
  const double R[] = {3.0, 6.0};
  auto cur = s;
  auto prev_profile = lower_log_density(cur, R);
  for (int step = 0; step < 10; ++step) {
    cur = remove_point(cur, std::size_t(gen() % cur.size()));
    const auto profile = lower_log_density(cur, R);
    for (std::size_t i = 0; i < profile.entries.size(); ++i)
      CHECK(profile.entries[i].min_count <= prev_profile.entries[i].min_count);
    prev_profile = profile;
  }
}

TEST_CASE("periodic sequences approach points-per-period over R") {
  // two points per unit: period 0.5
  std::vector<LogPoint> pts;
  for (int k = -60; k <= 60; ++k) pts.push_back(make_log_point(k * 0.5, 0.0));
  PointSequence s(pts);
  const double R[] = {5.0, 10.0, 15.0, 20.0};
  const auto profile = lower_log_density(s, R);
  for (const auto& e : profile.entries) {
    CHECK(std::abs(e.inf_count_over_R - 2.0) <= 2.0 / e.R);
  }
}

TEST_CASE("exact sweep agrees with a dense scan") {
  std::mt19937_64 gen(404);
  for (int round = 0; round < 5; ++round) {
    std::vector<LogPoint> pts;
    for (int i = 0; i < 40; ++i)
      pts.push_back(make_log_point(oracles::grid_rand(gen, -10.0, 10.0, 0x1.0p-4),
                                   oracles::urand_in(gen, -3, 3)));
    PointSequence s(pts);
    for (const double Rv : {3.0, 5.5}) {
      const double R[] = {Rv};
      const auto profile = lower_log_density(s, R);
      CHECK(profile.entries[0].min_count == oracles::min_count_scan(s, Rv));
    }
  }
}
