#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <specdiff/errors.hpp>
#include <specdiff/one_sided.hpp>

using specdiff::DiffSchedule;
using specdiff::ERTag;
using specdiff::EvaluationError;
using specdiff::NoLimitError;
using specdiff::Side;
using specdiff::estimate_one_sided;

TEST_CASE("smooth slope from the right", "[one_sided]") {
  const auto d = estimate_one_sided([](double x) { return x * x; }, 1.0, Side::right);
  REQUIRE(d.tag == ERTag::finite);
  CHECK(d.value == Catch::Approx(2.0).margin(1e-8));
}

TEST_CASE("kink slope from the left is exact", "[one_sided]") {
  const auto d = estimate_one_sided([](double x) { return std::fabs(x); }, 0.0, Side::left);
  REQUIRE(d.tag == ERTag::finite);
  // every quotient is exactly -1, so the estimate is too
  CHECK(d.value == -1.0);
}

TEST_CASE("jump discontinuity classifies as an infinite slope", "[one_sided]") {
  const auto f = [](double x) { return x <= 1.0 ? x * x : x + 0.5; };
  CHECK(estimate_one_sided(f, 1.0, Side::right).tag == ERTag::pos_inf);
  const auto left = estimate_one_sided(f, 1.0, Side::left);
  REQUIRE(left.tag == ERTag::finite);
  CHECK(left.value == Catch::Approx(2.0).margin(1e-8));

  const auto g = [](double x) { return x <= 1.0 ? x * x : x - 0.5; };
  CHECK(estimate_one_sided(g, 1.0, Side::right).tag == ERTag::neg_inf);
}

TEST_CASE("root-like growth near the infinity threshold", "[one_sided]") {
  // x^(1/5): quotients h^(-4/5) clear the threshold on three final levels
  const auto fifth = [](double x) {
    return x < 0.0 ? -std::pow(-x, 0.2) : std::pow(x, 0.2);
  };
  CHECK(estimate_one_sided(fifth, 0.0, Side::right).tag == ERTag::pos_inf);

  // x^(1/3): quotients h^(-2/3) top out near 1.4e7, short of the threshold,
  // and never settle either
  CHECK_THROWS_AS(estimate_one_sided([](double x) { return std::cbrt(x); }, 0.0,
                                     Side::right),
                  NoLimitError);
}

TEST_CASE("oscillatory quotients never settle", "[one_sided]") {
  const auto f = [](double x) { return x == 0.0 ? 0.0 : x * std::sin(1.0 / x); };
  CHECK_THROWS_AS(estimate_one_sided(f, 0.0, Side::right), NoLimitError);
}

TEST_CASE("non-finite function values are evaluation errors", "[one_sided]") {
  CHECK_THROWS_AS(estimate_one_sided([](double x) { return std::sqrt(x); }, 0.0,
                                     Side::left),
                  EvaluationError);
  CHECK_THROWS_AS(estimate_one_sided([](double) { return std::nan(""); }, 0.5,
                                     Side::right),
                  EvaluationError);
  const auto blows = [](double x) { return x == 0.25 ? 1.0 : 1e308 * 1e10; };
  CHECK_THROWS_AS(estimate_one_sided(blows, 0.25, Side::right), EvaluationError);
}

TEST_CASE("schedule parameters are validated", "[one_sided]") {
  DiffSchedule bad;
  bad.h0 = 0.0;
  CHECK_THROWS_AS(bad.validate(), specdiff::ConfigError);
  bad = DiffSchedule{};
  bad.shrink = 1.0;
  CHECK_THROWS_AS(bad.validate(), specdiff::ConfigError);
  bad = DiffSchedule{};
  bad.shrink = 0.0;
  CHECK_THROWS_AS(bad.validate(), specdiff::ConfigError);
  bad = DiffSchedule{};
  bad.max_levels = 1;
  CHECK_THROWS_AS(bad.validate(), specdiff::ConfigError);
  bad = DiffSchedule{};
  bad.conv_tol = -1e-8;
  CHECK_THROWS_AS(bad.validate(), specdiff::ConfigError);
  bad = DiffSchedule{};
  bad.inf_threshold = 0.0;
  CHECK_THROWS_AS(bad.validate(), specdiff::ConfigError);
  CHECK_NOTHROW(DiffSchedule{}.validate());
}

TEST_CASE("estimates respect a custom schedule", "[one_sided]") {
  DiffSchedule coarse;
  coarse.h0 = 1e-3;
  coarse.conv_tol = 1e-5;
  const auto d =
      estimate_one_sided([](double x) { return std::exp(x); }, 0.0, Side::right, coarse);
  REQUIRE(d.tag == ERTag::finite);
  CHECK(d.value == Catch::Approx(1.0).margin(1e-4));
}
