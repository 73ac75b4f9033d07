#include <doctest.h>

#include <cmath>
#include <random>

#include "npg/model.hpp"

using namespace npg;

namespace {
const MarketParams kUnit{1.0, 1.0};
}

TEST_CASE("market params derive pmax and Umax") {
  MarketParams params{2.0, 0.5};
  CHECK(params.pmax() == 4.0);
  CHECK(params.Umax() == 8.0);
  CHECK_THROWS_AS((MarketParams{0.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((MarketParams{1.0, -1.0}.validate()), DomainError);
}

TEST_CASE("linear demand") {
  CHECK(linear_demand(kUnit, 0.0) == 1.0);
  CHECK(linear_demand(kUnit, 2.0 / 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(linear_demand(kUnit, 1.5) == 0.0);
  CHECK_THROWS_AS(linear_demand(kUnit, -0.1), DomainError);

  // never negative anywhere in the domain
  for (int i = 0; i <= 100; ++i) CHECK(linear_demand(kUnit, 0.03 * i) >= 0.0);
}

TEST_CASE("class split") {
  ClassParams cls;
  cls.gamma = 1.0;

  SUBCASE("no price gap sends everyone to the high class") {
    const DemandSplit split = class_split(kUnit, cls, 0.2, 0.2, 0.1);
    CHECK(split.low == 0.0);
    CHECK(split.high == split.total);
  }

  SUBCASE("vanishing gamma sends everyone to the low class") {
    ClassParams sharp = cls;
    sharp.gamma = 1e-12;
    const DemandSplit split = class_split(kUnit, sharp, 0.0, 0.2, 0.0);
    CHECK(split.low == split.total);
    CHECK(split.high == 0.0);
  }

  SUBCASE("direct evaluation and conservation") {
    const DemandSplit split = class_split(kUnit, cls, 0.0, 0.2, 0.0);
    CHECK(split.total == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(split.low == doctest::Approx(0.8 * (1.0 - std::exp(-0.2))).epsilon(1e-14));
    CHECK(split.low + split.high == split.total);
  }

  SUBCASE("split coefficients demand form") {
    ClassParams split_cls = cls;
    split_cls.dl = 0.5;
    split_cls.dh = 0.5;
    split_cls.d2 = 1.0;
    const DemandSplit split = class_split(kUnit, split_cls, 0.1, 0.3, 0.2);
    CHECK(split.total == doctest::Approx(1.0 - 0.05 - 0.15 - 0.2).epsilon(1e-15));
  }

  SUBCASE("low-class demand grows with the price gap at fixed total") {
    const double sum = 0.4;
    double previous = -1.0;
    for (int i = 0; i <= 40; ++i) {
      const double gap = sum * double(i) / 40.0;
      const DemandSplit split =
          class_split(kUnit, cls, (sum - gap) / 2.0, (sum + gap) / 2.0, 0.1);
      CHECK(split.low >= previous - 1e-15);
      previous = split.low;
    }
  }

  CHECK_THROWS_AS(class_split(kUnit, cls, 0.3, 0.2, 0.0), DomainError);
  CHECK_THROWS_AS(class_split(kUnit, cls, -0.1, 0.2, 0.0), DomainError);
}

TEST_CASE("class params validation") {
  ClassParams cls;
  cls.gamma = 0.0;
  CHECK_THROWS_AS(cls.validate(), DomainError);
  cls.gamma = 1.0;
  cls.dl = 0.5;
  CHECK_THROWS_AS(cls.validate(), DomainError);  // split coefficients are all-or-none
  cls.dh = 1.5;
  cls.d2 = 1.0;
  CHECK_THROWS_AS(cls.validate(), DomainError);  // dh > d2
  cls.dh = 0.5;
  CHECK_NOTHROW(cls.validate());
}

TEST_CASE("stickiness shares") {
  CHECK(stickiness_share(StickinessKind::Reciprocal, 0.2, 0.2, 1.0) == 0.5);
  CHECK(stickiness_share(StickinessKind::Reciprocal, 0.1, 0.3, 1.0) == doctest::Approx(0.75));
  CHECK(stickiness_share(StickinessKind::Slackness, 0.2, 0.6, 1.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  SUBCASE("degenerate denominators fall back to one half") {
    CHECK(stickiness_share(StickinessKind::Reciprocal, 0.0, 0.0, 1.0) == 0.5);
    CHECK(stickiness_share(StickinessKind::Slackness, 1.0, 1.0, 1.0) == 0.5);
  }

  SUBCASE("shares conserve and split ties evenly") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const double x = unif(rng), y = unif(rng);
      for (StickinessKind kind : {StickinessKind::Reciprocal, StickinessKind::Slackness}) {
        const double sum = stickiness_share(kind, x, y, 1.0) + stickiness_share(kind, y, x, 1.0);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(stickiness_share(kind, x, x, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
      }
    }
  }

  CHECK_THROWS_AS(stickiness_share(StickinessKind::Reciprocal, -0.1, 0.2, 1.0), DomainError);
  CHECK_THROWS_AS(stickiness_share(StickinessKind::Slackness, 0.1, 1.2, 1.0), DomainError);
}

TEST_CASE("two player utilities") {
  SUBCASE("competitive equilibrium point") {
    const TwoPlayerUtilities u = utilities_two_player(kUnit, {}, 1.0 / 3.0, 1.0 / 3.0);
    CHECK(u.u1 == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(u.u2 == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  }

  SUBCASE("boundary side-payment point") {
    const TwoPlayerUtilities u = utilities_two_player(kUnit, {0.5, 0.0}, 0.0, 0.75);
    CHECK(u.u1 == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(u.u2 == doctest::Approx(0.0625).epsilon(1e-15));
  }

  SUBCASE("zero demand past pmax") {
    const TwoPlayerUtilities u = utilities_two_player(kUnit, {}, 0.5, 0.5);
    CHECK(u.u1 == 0.0);
    CHECK(u.u2 == 0.0);
  }

  SUBCASE("zero transfers reduce exactly to D*p") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 0.5);
    for (int i = 0; i < 100; ++i) {
      const double p1 = unif(rng), p2 = unif(rng);
      const TwoPlayerUtilities u = utilities_two_player(kUnit, {}, p1, p2);
      const double demand = linear_demand(kUnit, p1 + p2);
      CHECK(u.u1 == demand * p1);
      CHECK(u.u2 == demand * p2);
    }
  }

  CHECK_THROWS_AS(utilities_two_player(kUnit, {}, -0.1, 0.2), DomainError);
  CHECK_THROWS_AS(utilities_two_player(kUnit, {1.5, 0.0}, 0.1, 0.2), DomainError);
}

TEST_CASE("multiclass utilities") {
  ClassParams cls;

  SUBCASE("equal class prices collapse to the single-class model") {
    const TwoPlayerUtilities u = utilities_multiclass(kUnit, cls, 0.2, 0.2, 0.1);
    const double demand = linear_demand(kUnit, 0.5);
    CHECK(u.u1 == demand * 0.2);
    CHECK(u.u2 == demand * 0.1);
  }

  SUBCASE("flat-rate low class leaves only discounted high revenue") {
    const TwoPlayerUtilities u = utilities_multiclass(kUnit, cls, 0.0, 0.3, 0.1);
    const double demand = linear_demand(kUnit, 0.4);
    CHECK(u.u1 == doctest::Approx(demand * 0.3 * std::exp(-0.3)).epsilon(1e-14));
  }

  SUBCASE("matches the class-split evaluation") {
    const TwoPlayerUtilities u = utilities_multiclass(kUnit, cls, 0.1, 0.3, 0.2);
    CHECK(u.u1 == doctest::Approx(0.4 * (0.1 + 0.2 * std::exp(-0.2))).epsilon(1e-14));
    const DemandSplit split = class_split(kUnit, cls, 0.1, 0.3, 0.2);
    CHECK(u.u1 ==
          doctest::Approx(split.low * 0.1 + split.high * 0.3).epsilon(1e-14));
    CHECK(u.u2 == doctest::Approx(split.total * 0.2).epsilon(1e-15));
  }

  CHECK_THROWS_AS(utilities_multiclass(kUnit, cls, 0.3, 0.2, 0.1), DomainError);
}

TEST_CASE("duopoly utilities") {
  SUBCASE("reciprocal equilibrium point") {
    const DuopolyUtilities u =
        utilities_duopoly(kUnit, StickinessKind::Reciprocal, 0.0, 0.4, 0.2, 0.2);
    CHECK(u.u1 == doctest::Approx(0.16).epsilon(1e-15));
    CHECK(u.u2 == doctest::Approx(0.04).epsilon(1e-15));
    CHECK(u.u3 == doctest::Approx(0.04).epsilon(1e-15));
  }

  SUBCASE("slackness equilibrium point") {
    const DuopolyUtilities u = utilities_duopoly(kUnit, StickinessKind::Slackness, 0.0,
                                                 5.0 / 14.0, 2.0 / 7.0, 2.0 / 7.0);
    CHECK(u.u1 == doctest::Approx(25.0 / 196.0).epsilon(1e-14));
    CHECK(u.u2 == doctest::Approx(10.0 / 196.0).epsilon(1e-14));
  }

  SUBCASE("same CP prices give the same CP utilities") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> unif(0.01, 0.45);
    for (int i = 0; i < 50; ++i) {
      const double p1 = unif(rng), pbar = unif(rng);
      for (StickinessKind kind : {StickinessKind::Reciprocal, StickinessKind::Slackness}) {
        const DuopolyUtilities u = utilities_duopoly(kUnit, kind, 0.0, p1, pbar, pbar);
        CHECK(u.u2 == u.u3);
      }
    }
  }

  CHECK_THROWS_AS(utilities_duopoly(kUnit, StickinessKind::Reciprocal, 0.0, 1.2, 0.2, 0.2),
                  DomainError);
}
