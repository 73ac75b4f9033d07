#include <doctest.h>

#include <cmath>
#include <random>

#include "npg/equilibria.hpp"
#include "npg/model.hpp"
#include "npg/numerics.hpp"
#include "oracles.hpp"

using namespace npg;

namespace {

const MarketParams kUnit{1.0, 1.0};

GameView basic_game(Transfers transfers = {}) {
  ScenarioSpec spec;
  spec.variant = transfers.ps != 0.0 ? Variant::SidePayment : Variant::BasicCompetition;
  spec.params = kUnit;
  spec.transfers = transfers;
  return make_game_view(spec);
}

}  // namespace

TEST_CASE("phi and its inverse") {
  CHECK(phi(0.0) == 1.0);
  CHECK(phi(1.0) == 0.0);
  CHECK(phi(0.5) == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(phi(-0.01), DomainError);
  CHECK_THROWS_AS(phi(1.01), DomainError);

  CHECK(phi_inverse(1.0) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(phi_inverse(0.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(phi_inverse(-0.1), DomainError);
  CHECK_THROWS_AS(phi_inverse(1.1), DomainError);

  SUBCASE("agrees with an independent bisection") {
    const double reference =
        testsupport::bisect_decreasing([](double x) { return (1.0 - x) * std::exp(-x); }, 0.0,
                                       1.0, 0.5);
    CHECK(phi_inverse(0.5) == doctest::Approx(reference).epsilon(1e-12));
    CHECK(phi_inverse(0.5) == doctest::Approx(0.3149).epsilon(1e-4));
  }

  SUBCASE("round trips to 1e-10") {
    for (int i = 0; i <= 100; ++i) {
      const double x = double(i) / 100.0;
      CHECK(std::abs(phi_inverse(phi(x)) - x) <= 1e-10);
      CHECK(std::abs(phi(phi_inverse(x)) - x) <= 1e-12);
    }
  }

  SUBCASE("deterministic across calls") {
    const double first = phi_inverse(0.5);
    for (int i = 0; i < 5; ++i) CHECK(phi_inverse(0.5) == first);
  }
}

TEST_CASE("quadratic roots") {
  SUBCASE("simple factorization") {
    const QuadraticRoots roots = solve_quadratic(1.0, -1.0, 0.0);
    REQUIRE(roots.count == 2);
    CHECK(roots.root[0] == 0.0);
    CHECK(roots.root[1] == 1.0);
  }

  SUBCASE("duopoly side-payment quadratic at eta = 0") {
    const QuadraticRoots roots = solve_quadratic(5.0, -1.0, 0.0);
    REQUIRE(roots.count == 2);
    CHECK(roots.root[0] == 0.0);
    CHECK(roots.root[1] == 0.2);
  }

  SUBCASE("discriminant equals psi squared at eta = 0.1") {
    const double eta = 0.1;
    const double a = 5.0, b = -(1.0 + 4.0 * eta), c = -(eta + eta * eta);
    const double disc = b * b - 4.0 * a * c;
    const double psi2 = 1.0 + 28.0 * eta + 36.0 * eta * eta;
    CHECK(disc == doctest::Approx(psi2).epsilon(1e-14));
  }

  SUBCASE("degenerate cases") {
    CHECK(solve_quadratic(0.0, 0.0, 1.0).count == 0);
    const QuadraticRoots linear = solve_quadratic(0.0, 2.0, -1.0);
    REQUIRE(linear.count == 1);
    CHECK(linear.root[0] == 0.5);
    CHECK(solve_quadratic(1.0, 0.0, 1.0).count == 0);
    const QuadraticRoots twin = solve_quadratic(1.0, -2.0, 1.0);
    REQUIRE(twin.count == 1);
    CHECK(twin.root[0] == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("residuals stay small on random coefficients") {
    std::mt19937 rng(20240812);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
      const double a = unif(rng), b = unif(rng), c = unif(rng);
      const QuadraticRoots roots = solve_quadratic(a, b, c);
      const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
      for (int r = 0; r < roots.count; ++r) {
        const double x = roots.root[r];
        CHECK(std::abs(a * x * x + b * x + c) <= 1e-10 * scale);
      }
      if (roots.count == 2) CHECK(roots.root[0] <= roots.root[1]);
    }
  }
}

TEST_CASE("best response") {
  const GameView game = basic_game();

  SUBCASE("interior argmax at the mutual fixed point") {
    const std::vector<double> profile{0.5, 1.0 / 3.0};
    CHECK(best_response(game, 0, profile) == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  }

  SUBCASE("boundary argmax under a large side payment") {
    const GameView side = basic_game({0.5, 0.0});
    const std::vector<double> profile{0.2, 0.75};
    CHECK(best_response(side, 0, profile) == 0.0);
  }

  SUBCASE("zero demand everywhere ties to the smallest price") {
    const std::vector<double> profile{0.5, 1.0};
    CHECK(best_response(game, 0, profile) == 0.0);
  }

  SUBCASE("beats a dense sample of alternatives") {
    ScenarioSpec spec;
    spec.variant = Variant::MulticlassCompetition;
    spec.params = kUnit;
    spec.cls = ClassParams{};
    const GameView multiclass = make_game_view(spec);
    for (const std::vector<double> profile :
         {std::vector<double>{0.3, 0.2}, std::vector<double>{0.1, 0.5}}) {
      for (std::size_t player : {std::size_t(0), std::size_t(1)}) {
        const double reply = best_response(multiclass, player, profile);
        std::vector<double> work = profile;
        work[player] = reply;
        const double reply_value = multiclass.utility[player](work);
        for (int i = 0; i <= 10000; ++i) {
          work[player] = double(i) / 10000.0;
          CHECK(reply_value + 1e-12 >= multiclass.utility[player](work));
        }
      }
    }
  }
}

TEST_CASE("best response dynamics") {
  SUBCASE("basic game converges to the competitive point") {
    const GameView game = basic_game();
    const DynamicsResult run = best_response_dynamics(game, {0.9, 0.9});
    REQUIRE(run.converged);
    CHECK(run.profile[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
    CHECK(run.profile[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
  }

  SUBCASE("a closed-form equilibrium is fixed in one iteration") {
    const GameView game = basic_game();
    const DynamicsResult run =
        best_response_dynamics(game, {1.0 / 3.0, 1.0 / 3.0}, 0.5, 1e-6);
    REQUIRE(run.converged);
    CHECK(run.iterations == 1);
  }

  SUBCASE("starting below the unstable root slides to flat-rate content") {
    const MarketParams params = kUnit;
    const double ps = -0.02;
    const std::vector<EquilibriumOutcome> outcomes = solve_duopoly_side_payments(params, ps);
    REQUIRE(outcomes.size() == 2);
    const EquilibriumOutcome& unstable = outcomes[1];
    const double pbar0 = price(unstable.prices, "p2");
    const double p1 = price(unstable.prices, "p1");

    ScenarioSpec spec;
    spec.variant = Variant::DuopolySidePayment;
    spec.params = params;
    spec.transfers = {ps, 0.0};
    const GameView game = make_game_view(spec);
    const DynamicsResult run =
        best_response_dynamics(game, {p1, pbar0 - 1e-3, pbar0 - 1e-3});
    REQUIRE(run.converged);
    CHECK(run.profile[1] < 0.005);
    CHECK(run.profile[2] < 0.005);
  }

  SUBCASE("reports divergence after max_iter") {
    const GameView game = basic_game();
    const DynamicsResult run = best_response_dynamics(game, {0.9, 0.9}, 0.5, 1e-12, 2);
    CHECK_FALSE(run.converged);
    CHECK(run.iterations == 2);
  }
}

TEST_CASE("epsilon-Nash verification") {
  const GameView game = basic_game();

  SUBCASE("the competitive point passes") {
    const std::vector<double> nep{1.0 / 3.0, 1.0 / 3.0};
    const NashCheck check = verify_epsilon_nash(game, nep, 2001, 1e-6);
    CHECK(check.pass);
    for (double gain : check.gain) CHECK(gain <= 1e-6);
  }

  SUBCASE("an off-equilibrium profile fails with a positive gain") {
    const std::vector<double> off{0.5, 0.5};
    const NashCheck check = verify_epsilon_nash(game, off, 2001, 1e-6);
    CHECK_FALSE(check.pass);
    CHECK(check.gain[0] > 0.05);
  }

  SUBCASE("collaboration total price is a 1-D maximizer") {
    ScenarioSpec spec;
    spec.variant = Variant::BasicCollaboration;
    spec.params = kUnit;
    const GameView coalition = make_game_view(spec);
    const std::vector<double> total{0.5};
    CHECK(verify_epsilon_nash(coalition, total, 2001, 1e-6).pass);
  }
}

TEST_CASE("stability probe") {
  const MarketParams params = kUnit;
  const double ps = -0.02;
  const double eta = ps;
  const double psi = std::sqrt(1.0 + 28.0 * eta + 36.0 * eta * eta);
  const double pbar1 = (1.0 + 4.0 * eta + psi) / 10.0;
  const double p1_hi = (9.0 - 14.0 * eta - psi) / 20.0;
  const double pbar0 = (1.0 + 4.0 * eta - psi) / 10.0;
  const double p1_lo = (9.0 - 14.0 * eta + psi) / 20.0;

  CHECK(stability_probe(make_cp_probe_view(params, StickinessKind::Reciprocal, ps, p1_hi),
                        pbar1, 1e-4) == Stability::Stable);
  CHECK(stability_probe(make_cp_probe_view(params, StickinessKind::Reciprocal, ps, p1_lo),
                        pbar0, 1e-4) == Stability::Unstable);

  SUBCASE("off-equilibrium probes are ambiguous") {
    const GameView probe = make_cp_probe_view(params, StickinessKind::Reciprocal, ps, p1_hi);
    CHECK_THROWS_AS(stability_probe(probe, 0.4, 1e-4), AmbiguousProbe);
    try {
      stability_probe(probe, 0.4, 1e-4);
    } catch (const AmbiguousProbe& probe_error) {
      CHECK(probe_error.below * probe_error.above > 0.0);
    }
  }
}

TEST_CASE("gradient field") {
  const MarketParams params = kUnit;
  auto utot = [&](double p1, double p2) {
    const double total = p1 + p2;
    return std::max(0.0, params.D0 - params.d * total) * total;
  };

  SUBCASE("vanishes on the collaboration stationary line") {
    const std::vector<FieldSample> samples =
        gradient_field(utot, {0.0, 1.0, 0.0, 1.0}, 5, 5, 1e-6);
    REQUIRE(samples.size() == 25);
    int on_line = 0;
    for (const FieldSample& s : samples) {
      if (std::abs(s.x + s.y - 0.5) < 1e-12) {
        ++on_line;
        CHECK(s.magnitude <= 1e-6);
      }
    }
    CHECK(on_line == 3);
  }

  SUBCASE("points uphill from the free corner") {
    const std::vector<FieldSample> samples =
        gradient_field(utot, {0.0, 1.0, 0.0, 1.0}, 3, 3, 1e-6);
    CHECK(samples[0].gx == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(samples[0].gy == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("finite differences match the analytic gradient") {
    const std::vector<FieldSample> samples =
        gradient_field(utot, {0.05, 0.45, 0.05, 0.45}, 9, 9, 1e-6);
    for (const FieldSample& s : samples) {
      const double analytic = params.D0 - 2.0 * params.d * (s.x + s.y);
      CHECK(s.gx == doctest::Approx(analytic).epsilon(1e-4));
      CHECK(s.gy == doctest::Approx(analytic).epsilon(1e-4));
    }
  }

  CHECK_THROWS_AS(gradient_field(utot, {0.0, 1.0, 0.0, 1.0}, 1, 5, 1e-6), DomainError);
}
