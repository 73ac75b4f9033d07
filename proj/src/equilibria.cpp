#include "npg/equilibria.hpp"

#include <algorithm>
#include <cmath>

namespace npg {

namespace {

constexpr double kProbeStepScale = 1e-4;  // stability probe step, in units of pmax

PriceProfile two_prices(double p1, double p2) {
  return {{"p1", p1}, {"p2", p2}};
}

PriceProfile multiclass_prices(double pl, double ph, double p2) {
  return {{"pl", pl}, {"ph", ph}, {"p2", p2}};
}

PriceProfile duopoly_prices(double p1, double pbar) {
  return {{"p1", p1}, {"p2", pbar}, {"p3", pbar}};
}

bool requires_class(Variant v) {
  return v == Variant::MulticlassCollab || v == Variant::MulticlassLine ||
         v == Variant::MulticlassCompetition;
}

}  // namespace

void ScenarioSpec::validate() const {
  params.validate();
  transfers.validate(params);
  if (requires_class(variant)) {
    if (!cls) throw DomainError(to_string(variant) + " requires class parameters");
    cls->validate();
    if (variant == Variant::MulticlassLine && !cls->has_split())
      throw DomainError("multiclass-line requires split coefficients dl, dh, d2");
  } else if (cls && cls->has_split()) {
    throw DomainError(to_string(variant) + " does not take split coefficients");
  }
  if (variant == Variant::Duopoly) {
    if (!kind) throw DomainError("duopoly requires a stickiness kind");
  }
  if (variant == Variant::Stackelberg) {
    if (!leader) throw DomainError("stackelberg requires a leader");
  }
}

std::string to_string(Variant variant) {
  switch (variant) {
    case Variant::BasicCompetition: return "basic-competition";
    case Variant::BasicCollaboration: return "basic-collaboration";
    case Variant::SidePayment: return "side-payment";
    case Variant::AdCompetition: return "ad-competition";
    case Variant::AdCollaboration: return "ad-collaboration";
    case Variant::MulticlassCollab: return "multiclass-collab";
    case Variant::MulticlassLine: return "multiclass-line";
    case Variant::MulticlassCompetition: return "multiclass-competition";
    case Variant::Duopoly: return "duopoly";
    case Variant::DuopolySidePayment: return "duopoly-side-payment";
    case Variant::Stackelberg: return "stackelberg";
  }
  return "?";
}

Variant variant_from_string(std::string_view name) {
  for (Variant v :
       {Variant::BasicCompetition, Variant::BasicCollaboration, Variant::SidePayment,
        Variant::AdCompetition, Variant::AdCollaboration, Variant::MulticlassCollab,
        Variant::MulticlassLine, Variant::MulticlassCompetition, Variant::Duopoly,
        Variant::DuopolySidePayment, Variant::Stackelberg})
    if (to_string(v) == name) return v;
  throw DomainError("unknown scenario '" + std::string(name) + "'");
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::Interior: return "interior";
    case Regime::BoundaryP1Zero: return "boundary-p1-zero";
    case Regime::BoundaryP2Zero: return "boundary-p2-zero";
    case Regime::BoundaryPlZero: return "boundary-pl-zero";
    case Regime::BelowThreshold: return "below-threshold";
    case Regime::EquilibriumLine: return "equilibrium-line";
    case Regime::NoLine: return "no-line";
  }
  return "?";
}

std::string to_string(Stability stability) {
  switch (stability) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::NotApplicable: return "na";
  }
  return "?";
}

std::string to_string(Source source) {
  switch (source) {
    case Source::ClosedForm: return "closed-form";
    case Source::Oracle: return "oracle";
    case Source::PaperPrinted: return "paper-printed";
  }
  return "?";
}

double EquilibriumOutcome::total_utility() const {
  double total = 0.0;
  for (double u : utilities) total += u;
  return total;
}

EquilibriumOutcome solve_basic_competition(const MarketParams& params) {
  params.validate();
  const double p = params.pmax() / 3.0;
  EquilibriumOutcome out;
  out.prices = two_prices(p, p);
  out.demand = params.D0 / 3.0;
  out.utilities = {params.Umax() / 9.0, params.Umax() / 9.0};
  out.regime = Regime::Interior;
  out.source = Source::ClosedForm;
  return out;
}

EquilibriumOutcome solve_basic_collaboration(const MarketParams& params) {
  params.validate();
  // Only the total price is pinned; every split of it is revenue-equivalent
  // under pooling. The symmetric split is reported.
  const double half_total = params.pmax() / 4.0;
  EquilibriumOutcome out;
  out.prices = two_prices(half_total, half_total);
  out.demand = params.D0 / 2.0;
  out.utilities = {params.Umax() / 8.0, params.Umax() / 8.0};
  out.regime = Regime::Interior;
  out.source = Source::ClosedForm;
  return out;
}

EquilibriumOutcome solve_side_payment(const MarketParams& params, double ps) {
  params.validate();
  const double pmax = params.pmax();
  if (!(std::abs(ps) <= pmax)) throw DomainError("side-payment: |ps| must be <= pmax");

  EquilibriumOutcome out;
  out.source = Source::ClosedForm;
  if (ps >= pmax / 3.0) {
    // ISP stops usage pricing; side payments carry its revenue.
    out.regime = Regime::BoundaryP1Zero;
    out.prices = two_prices(0.0, 0.5 * (pmax + ps));
    out.demand = 0.5 * (params.D0 - params.d * ps);
    out.utilities = {(params.D0 - params.d * ps) * ps / 2.0,
                     (params.D0 - params.d * ps) * (params.D0 - params.d * ps) /
                         (4.0 * params.d)};
  } else if (ps <= -pmax / 3.0) {
    out.regime = Regime::BoundaryP2Zero;
    out.prices = two_prices(0.5 * (pmax - ps), 0.0);
    out.demand = 0.5 * (params.D0 + params.d * ps);
    out.utilities = {(params.D0 + params.d * ps) * (params.D0 + params.d * ps) /
                         (4.0 * params.d),
                     (params.D0 + params.d * ps) * (-ps) / 2.0};
  } else {
    out.regime = Regime::Interior;
    out.prices = two_prices(pmax / 3.0 - ps, pmax / 3.0 + ps);
    out.demand = params.D0 / 3.0;
    out.utilities = {params.Umax() / 9.0, params.Umax() / 9.0};
  }
  return out;
}

EquilibriumOutcome solve_advertising_competition(const MarketParams& params, double ps,
                                                 double pa) {
  params.validate();
  Transfers transfers{ps, pa};
  transfers.validate(params);
  const double pmax = params.pmax();
  const double p1 = pmax / 3.0 - ps + pa / 3.0;
  const double p2 = pmax / 3.0 + ps - 2.0 * pa / 3.0;

  EquilibriumOutcome out;
  if (p1 >= 0.0 && p2 >= 0.0) {
    const double boosted = params.D0 + params.d * pa;
    out.prices = two_prices(p1, p2);
    out.demand = boosted / 3.0;
    out.utilities = {boosted * boosted / (9.0 * params.d), boosted * boosted / (9.0 * params.d)};
    out.regime = Regime::Interior;
    out.source = Source::ClosedForm;
    return out;
  }

  // A printed price went negative: pin it and let the oracle find the
  // boundary equilibrium.
  ScenarioSpec spec{Variant::AdCompetition, params, transfers, {}, {}, {}};
  const GameView game = make_game_view(spec);
  std::vector<double> start{std::clamp(p1, 0.0, pmax), std::clamp(p2, 0.0, pmax)};
  const DynamicsResult run = best_response_dynamics(game, start);
  if (!run.converged)
    throw OracleError("ad-competition boundary dynamics did not converge");
  const TwoPlayerUtilities u =
      utilities_two_player(params, transfers, run.profile[0], run.profile[1]);
  out.prices = two_prices(run.profile[0], run.profile[1]);
  out.demand = linear_demand(params, run.profile[0] + run.profile[1]);
  out.utilities = {u.u1, u.u2};
  out.regime = p1 < 0.0 ? Regime::BoundaryP1Zero : Regime::BoundaryP2Zero;
  out.source = Source::Oracle;
  return out;
}

EquilibriumOutcome solve_advertising_collaboration(const MarketParams& params, double pa) {
  params.validate();
  const double pmax = params.pmax();
  if (!(pa >= 0.0)) throw DomainError("ad-collaboration: pa must be >= 0");
  if (!(pa <= pmax)) throw DomainError("ad-collaboration: pa must be <= pmax");
  const double boosted = params.D0 + params.d * pa;
  const double half_total = (pmax - pa) / 4.0;
  EquilibriumOutcome out;
  out.prices = two_prices(half_total, half_total);
  out.demand = boosted / 2.0;
  out.utilities = {boosted * boosted / (8.0 * params.d), boosted * boosted / (8.0 * params.d)};
  out.regime = Regime::Interior;
  out.source = Source::ClosedForm;
  return out;
}

namespace {

// Printed usage-priced-access branch of the two-class collaboration,
// transcribed as published.
EquilibriumOutcome printed_multiclass_collab(const MarketParams& params, const ClassParams& cls) {
  const double pmax = params.pmax();
  const double delta = phi_inverse(0.5);
  const double decay = std::exp(-delta);
  const double gamma = cls.gamma;
  const double pl = (0.5 - gamma * delta * decay) / 3.0 * pmax;
  const double gap = gamma * delta * pmax;
  const double utot = params.Umax() / 9.0 * (0.5 + 2.0 * gamma * delta * decay) *
                      (2.0 + (2.0 * decay - 3.0) * delta * gamma);
  EquilibriumOutcome out;
  out.prices = multiclass_prices(pl, pl + gap, 0.0);
  out.demand = std::max(0.0, params.D0 - params.d * (pl + pl + gap));
  out.demand_low = (1.0 - decay) * out.demand;
  out.demand_high = out.demand - *out.demand_low;
  out.utilities = {utot / 2.0, utot / 2.0};
  out.regime = Regime::BoundaryP2Zero;
  out.source = Source::PaperPrinted;
  return out;
}

EquilibriumOutcome multiclass_outcome(const MarketParams& params, const ClassParams& cls,
                                      double pl, double ph, double p2, Regime regime,
                                      Source source, bool pooled) {
  const DemandSplit split = class_split(params, cls, pl, ph, p2);
  const TwoPlayerUtilities u = utilities_multiclass(params, cls, pl, ph, p2);
  EquilibriumOutcome out;
  out.prices = multiclass_prices(pl, ph, p2);
  out.demand = split.total;
  out.demand_low = split.low;
  out.demand_high = split.high;
  if (pooled) {
    const double utot = u.u1 + u.u2;
    out.utilities = {utot / 2.0, utot / 2.0};
  } else {
    out.utilities = {u.u1, u.u2};
  }
  out.regime = regime;
  out.source = source;
  return out;
}

}  // namespace

GameView make_collab_p2zero_view(const MarketParams& params, const ClassParams& cls) {
  const double pmax = params.pmax();
  auto utot = [params, cls](std::span<const double> x) {
    const TwoPlayerUtilities u = utilities_multiclass(params, cls, x[0], x[0] + x[1], 0.0);
    return u.u1 + u.u2;
  };
  GameView game;
  game.utility = {utot, utot};
  game.bounds = {{0.0, pmax}, {0.0, pmax}};
  return game;
}

MulticlassCollabResult solve_multiclass_collab_boundary(const MarketParams& params,
                                                        const ClassParams& cls) {
  params.validate();
  cls.validate();
  const double pmax = params.pmax();

  MulticlassCollabResult result;
  result.branch_pl_zero = multiclass_outcome(params, cls, 0.0, 0.0, pmax / 2.0,
                                             Regime::BoundaryPlZero, Source::ClosedForm, true);
  // Closed form for the flat-rate branch: D = D0/2, Utot = Umax/4.
  result.branch_pl_zero.demand = params.D0 / 2.0;
  result.branch_pl_zero.demand_low = 0.0;
  result.branch_pl_zero.demand_high = params.D0 / 2.0;
  result.branch_pl_zero.utilities = {params.Umax() / 8.0, params.Umax() / 8.0};

  const GameView branch_game = make_collab_p2zero_view(params, cls);
  const double delta_seed = phi_inverse(0.5);
  std::vector<double> seed{pmax / 8.0, std::min(cls.gamma * delta_seed * pmax, pmax)};
  const DynamicsResult ascent = coordinate_ascent(branch_game, std::move(seed));
  if (!ascent.converged)
    throw OracleError("multiclass-collab: branch maximization did not converge");
  result.branch_p2_zero =
      multiclass_outcome(params, cls, ascent.profile[0], ascent.profile[0] + ascent.profile[1],
                         0.0, Regime::BoundaryP2Zero, Source::Oracle, true);

  result.branch_p2_zero_printed = printed_multiclass_collab(params, cls);
  result.flat_rate_best =
      result.branch_pl_zero.total_utility() > result.branch_p2_zero.total_utility();
  return result;
}

MulticlassLineResult solve_multiclass_line(const MarketParams& params, const ClassParams& cls,
                                           int samples) {
  params.validate();
  cls.validate();
  if (!cls.has_split())
    throw DomainError("multiclass-line requires split coefficients dl, dh, d2");
  if (samples < 2) throw DomainError("multiclass-line: samples must be >= 2");

  const double pmax = params.pmax();
  MulticlassLineResult result;
  result.delta_star = phi_inverse(*cls.dh / *cls.d2);
  result.price_gap = cls.gamma * pmax * result.delta_star;

  const double gap = result.price_gap;
  auto utot = [&](double pl, double p2) {
    const TwoPlayerUtilities u = utilities_multiclass(params, cls, pl, pl + gap, p2);
    return u.u1 + u.u2;
  };

  const bool balanced = std::abs(*cls.d2 - (*cls.dl + *cls.dh)) <= 1e-12 * *cls.d2;
  if (balanced) {
    result.regime = Regime::EquilibriumLine;
    // Trace the stationary set: for each access price, the content price
    // solving the remaining first-order condition.
    const Bounds p2_bounds{0.0, pmax};
    const double level =
        argmax_interval([&](double p2) { return utot(0.0, p2); }, p2_bounds);
    for (int i = 0; i < samples; ++i) {
      const double pl = level * double(i) / double(samples - 1);
      const double p2 =
          argmax_interval([&](double p2v) { return utot(pl, p2v); }, p2_bounds);
      result.points.push_back({pl, p2});
    }
    return result;
  }

  result.regime = Regime::NoLine;
  ScenarioSpec spec{Variant::MulticlassLine, params, {}, cls, {}, {}};
  const GameView coalition = make_game_view(spec);
  std::vector<double> seed{pmax / 8.0, std::min(gap, pmax), pmax / 8.0};
  const DynamicsResult ascent = coordinate_ascent(coalition, std::move(seed));
  if (!ascent.converged)
    throw OracleError("multiclass-line: coalition ascent did not converge");
  result.attractor = multiclass_prices(ascent.profile[0], ascent.profile[0] + ascent.profile[1],
                                       ascent.profile[2]);
  return result;
}

EquilibriumOutcome solve_multiclass_competition(const MarketParams& params,
                                                const ClassParams& cls, int max_iter) {
  params.validate();
  cls.validate();
  const double pmax = params.pmax();

  ScenarioSpec spec{Variant::MulticlassCompetition, params, {}, cls, {}, {}};
  const GameView game = make_game_view(spec);
  std::vector<double> start{pmax / 3.0, pmax / 3.0};
  const DynamicsResult run = best_response_dynamics(game, std::move(start), 0.5, 1e-8, max_iter);
  if (!run.converged)
    throw OracleError("multiclass-competition: best responses did not converge");
  return multiclass_outcome(params, cls, 0.0, run.profile[0], run.profile[1],
                            Regime::BoundaryPlZero, Source::Oracle, false);
}

GameView make_cp_probe_view(const MarketParams& params, StickinessKind kind, double ps,
                            double p1_fixed) {
  const double pmax = params.pmax();
  GameView game;
  game.utility = {
      [params, kind, ps, p1_fixed](std::span<const double> x) {
        return utilities_duopoly(params, kind, ps, p1_fixed, x[0], x[1]).u2;
      },
      [params, kind, ps, p1_fixed](std::span<const double> x) {
        return utilities_duopoly(params, kind, ps, p1_fixed, x[1], x[0]).u2;
      },
  };
  game.bounds = {{0.0, pmax}, {0.0, pmax}};
  game.symmetric_pair = {{0, 1}};
  return game;
}

namespace {

Stability probe_duopoly(const MarketParams& params, StickinessKind kind, double ps, double p1,
                        double pbar) {
  const GameView probe = make_cp_probe_view(params, kind, ps, p1);
  return stability_probe(probe, pbar, kProbeStepScale * params.pmax());
}

EquilibriumOutcome duopoly_outcome(const MarketParams& params, StickinessKind kind, double ps,
                                   double p1, double pbar, Regime regime, Stability stability,
                                   Source source) {
  const DuopolyUtilities u = utilities_duopoly(params, kind, ps, p1, pbar, pbar);
  EquilibriumOutcome out;
  out.prices = duopoly_prices(p1, pbar);
  out.demand = linear_demand(params, p1 + pbar);
  out.utilities = {u.u1, u.u2, u.u3};
  out.regime = regime;
  out.stability = stability;
  out.source = source;
  return out;
}

}  // namespace

EquilibriumOutcome solve_duopoly(const MarketParams& params, StickinessKind kind) {
  params.validate();
  const double pmax = params.pmax();
  double p1 = 0.0, pbar = 0.0, u1 = 0.0, ui = 0.0, demand = 0.0;
  switch (kind) {
    case StickinessKind::Reciprocal:
      p1 = 2.0 * pmax / 5.0;
      pbar = pmax / 5.0;
      demand = 2.0 * params.D0 / 5.0;
      u1 = 4.0 * params.Umax() / 25.0;
      ui = params.Umax() / 25.0;
      break;
    case StickinessKind::Slackness:
      p1 = 5.0 * pmax / 14.0;
      pbar = 2.0 * pmax / 7.0;
      demand = 5.0 * params.D0 / 14.0;
      u1 = 25.0 * params.Umax() / 196.0;
      ui = 10.0 * params.Umax() / 196.0;
      break;
  }
  EquilibriumOutcome out;
  out.prices = duopoly_prices(p1, pbar);
  out.demand = demand;
  out.utilities = {u1, ui, ui};
  out.regime = Regime::Interior;
  out.stability = probe_duopoly(params, kind, 0.0, p1, pbar);
  out.source = Source::ClosedForm;
  return out;
}

double duopoly_threshold(const MarketParams& params) {
  return (-7.0 + 2.0 * std::sqrt(10.0)) / 18.0 * params.pmax();
}

std::vector<EquilibriumOutcome> solve_duopoly_side_payments(const MarketParams& params,
                                                            double ps) {
  params.validate();
  const double pmax = params.pmax();
  const double umax = params.Umax();
  if (!(std::abs(ps) <= pmax))
    throw DomainError("duopoly-side-payment: |ps| must be <= pmax");

  if (ps <= duopoly_threshold(params)) {
    // The CPs' marginal utility is negative everywhere: content goes
    // flat-rate and all their usage revenue comes from side payments.
    const double p1 = 0.5 * (pmax - ps);
    EquilibriumOutcome out = duopoly_outcome(params, StickinessKind::Reciprocal, ps, p1, 0.0,
                                             Regime::BelowThreshold,
                                             Stability::NotApplicable, Source::ClosedForm);
    return {out};
  }

  const double eta = ps / pmax;
  const double psi = std::sqrt(std::max(0.0, 1.0 + 28.0 * eta + 36.0 * eta * eta));

  const double pbar_hi = pmax * (1.0 + 4.0 * eta + psi) / 10.0;
  const double p1_hi = pmax * (9.0 - 14.0 * eta - psi) / 20.0;
  if (p1_hi < 0.0 || pbar_hi > pmax)
    throw DomainError("duopoly-side-payment: equilibrium prices leave [0, pmax] at this ps");
  EquilibriumOutcome stable = duopoly_outcome(
      params, StickinessKind::Reciprocal, ps, p1_hi, pbar_hi, Regime::Interior,
      probe_duopoly(params, StickinessKind::Reciprocal, ps, p1_hi, pbar_hi), Source::ClosedForm);
  stable.demand = params.D0 * (9.0 + 6.0 * eta - psi) / 20.0;
  stable.utilities = {umax * (9.0 + 6.0 * eta - psi) * (9.0 + 6.0 * eta - psi) / 400.0,
                      umax * (2.0 - 19.0 * eta - 18.0 * eta * eta + (2.0 + 3.0 * eta) * psi) /
                          100.0,
                      umax * (2.0 - 19.0 * eta - 18.0 * eta * eta + (2.0 + 3.0 * eta) * psi) /
                          100.0};

  std::vector<EquilibriumOutcome> outcomes{stable};
  if (ps < 0.0) {
    const double pbar_lo = pmax * (1.0 + 4.0 * eta - psi) / 10.0;
    const double p1_lo = pmax * (9.0 - 14.0 * eta + psi) / 20.0;
    EquilibriumOutcome other = duopoly_outcome(
        params, StickinessKind::Reciprocal, ps, p1_lo, pbar_lo, Regime::Interior,
        probe_duopoly(params, StickinessKind::Reciprocal, ps, p1_lo, pbar_lo),
        Source::ClosedForm);
    other.demand = params.D0 * (9.0 + 6.0 * eta + psi) / 20.0;
    other.utilities = {umax * (9.0 + 6.0 * eta + psi) * (9.0 + 6.0 * eta + psi) / 400.0,
                       umax * (2.0 - 19.0 * eta - 18.0 * eta * eta - (2.0 + 3.0 * eta) * psi) /
                           100.0,
                       umax * (2.0 - 19.0 * eta - 18.0 * eta * eta - (2.0 + 3.0 * eta) * psi) /
                           100.0};
    outcomes.push_back(other);
  }
  return outcomes;
}

EquilibriumOutcome solve_stackelberg(const MarketParams& params, const Transfers& transfers,
                                     Leader leader) {
  params.validate();
  transfers.validate(params);
  const double pmax = params.pmax();
  const double ps = transfers.ps, pa = transfers.pa;
  if (!(ps <= pmax / 2.0 + pa / 2.0))
    throw DomainError("stackelberg: requires ps <= pmax/2 + pa/2");
  if (!(pa <= pmax / 3.0 + ps / 4.0))
    throw DomainError("stackelberg: requires pa <= pmax/3 + ps/4");

  double p1 = 0.0, p2 = 0.0;
  if (leader == Leader::Isp) {
    p1 = pmax / 2.0 - ps + pa / 2.0;
    p2 = pmax / 4.0 + ps - 3.0 * pa / 4.0;
  } else {
    p2 = pmax / 2.0 + ps - pa / 2.0;
    p1 = pmax / 4.0 - ps + pa / 4.0;
  }
  if (p1 < 0.0) throw DomainError("stackelberg: p1 would be negative at these transfers");
  if (p2 < 0.0) throw DomainError("stackelberg: p2 would be negative at these transfers");

  const double boosted = params.D0 + params.d * pa;
  const double lead = boosted * boosted / (8.0 * params.d);
  const double follow = boosted * boosted / (16.0 * params.d);
  EquilibriumOutcome out;
  out.prices = two_prices(p1, p2);
  out.demand = boosted / 4.0;
  out.utilities = leader == Leader::Isp ? std::vector<double>{lead, follow}
                                        : std::vector<double>{follow, lead};
  out.regime = Regime::Interior;
  out.source = Source::ClosedForm;
  return out;
}

EquilibriumOutcome paper_reference(const ScenarioSpec& spec) {
  spec.validate();
  const MarketParams& params = spec.params;
  auto retag = [](EquilibriumOutcome out) {
    out.source = Source::PaperPrinted;
    return out;
  };
  switch (spec.variant) {
    case Variant::BasicCompetition:
      return retag(solve_basic_competition(params));
    case Variant::BasicCollaboration:
      return retag(solve_basic_collaboration(params));
    case Variant::SidePayment:
      return retag(solve_side_payment(params, spec.transfers.ps));
    case Variant::AdCompetition: {
      // Printed interior formulas, uncorrected even when a price is negative.
      const double pmax = params.pmax();
      const double ps = spec.transfers.ps, pa = spec.transfers.pa;
      const double boosted = params.D0 + params.d * pa;
      EquilibriumOutcome out;
      out.prices = two_prices(pmax / 3.0 - ps + pa / 3.0, pmax / 3.0 + ps - 2.0 * pa / 3.0);
      out.demand = boosted / 3.0;
      out.utilities = {boosted * boosted / (9.0 * params.d),
                       boosted * boosted / (9.0 * params.d)};
      out.regime = Regime::Interior;
      out.source = Source::PaperPrinted;
      return out;
    }
    case Variant::AdCollaboration:
      return retag(solve_advertising_collaboration(params, spec.transfers.pa));
    case Variant::MulticlassCollab:
      return printed_multiclass_collab(params, *spec.cls);
    case Variant::MulticlassCompetition: {
      const double pmax = params.pmax();
      const double gamma = spec.cls->gamma;
      const double root = std::sqrt(9.0 * gamma * gamma + 2.0 * gamma + 1.0);
      const double fh = gamma / (2.0 * root - 3.0 * gamma + 2.0);
      const double f2 = (root - 3.0 * gamma + 1.0) / 4.0;
      const double slack = 1.0 - fh - f2;
      EquilibriumOutcome out;
      out.prices = multiclass_prices(0.0, fh * pmax, f2 * pmax);
      out.demand = slack * params.D0;
      const double decay = std::exp(-fh / gamma);  // delta = ph/(gamma pmax)
      out.demand_low = (1.0 - decay) * out.demand;
      out.demand_high = out.demand - *out.demand_low;
      out.utilities = {fh * slack * params.Umax(), f2 * slack * params.Umax()};
      out.regime = Regime::BoundaryPlZero;
      out.source = Source::PaperPrinted;
      return out;
    }
    case Variant::Duopoly:
      return retag(solve_duopoly(params, *spec.kind));
    case Variant::DuopolySidePayment:
      return retag(solve_duopoly_side_payments(params, spec.transfers.ps).front());
    case Variant::Stackelberg:
      return retag(solve_stackelberg(params, spec.transfers, *spec.leader));
    case Variant::MulticlassLine:
      break;
  }
  throw DomainError("paper_reference: no printed point equilibrium for " +
                    to_string(spec.variant));
}

GameView make_game_view(const ScenarioSpec& spec) {
  spec.validate();
  const MarketParams params = spec.params;
  const Transfers transfers = spec.transfers;
  const double pmax = params.pmax();
  const Bounds box{0.0, pmax};
  GameView game;

  switch (spec.variant) {
    case Variant::BasicCompetition:
    case Variant::SidePayment:
    case Variant::AdCompetition: {
      game.utility = {
          [params, transfers](std::span<const double> x) {
            return utilities_two_player(params, transfers, x[0], x[1]).u1;
          },
          [params, transfers](std::span<const double> x) {
            return utilities_two_player(params, transfers, x[0], x[1]).u2;
          },
      };
      game.bounds = {box, box};
      return game;
    }
    case Variant::BasicCollaboration:
    case Variant::AdCollaboration: {
      // One coordinate: the coalition's total price.
      game.utility = {[params, transfers](std::span<const double> x) {
        return linear_demand(params, x[0]) * (x[0] + transfers.pa);
      }};
      game.bounds = {box};
      return game;
    }
    case Variant::MulticlassCollab:
    case Variant::MulticlassLine: {
      const ClassParams cls = *spec.cls;
      auto utot = [params, cls](std::span<const double> x) {
        const TwoPlayerUtilities u =
            utilities_multiclass(params, cls, x[0], x[0] + x[1], x[2]);
        return u.u1 + u.u2;
      };
      game.utility = {utot, utot, utot};
      game.bounds = {box, box, box};
      return game;
    }
    case Variant::MulticlassCompetition: {
      // Best-effort access is flat-rate (pl = 0); coordinates (ph, p2).
      const ClassParams cls = *spec.cls;
      game.utility = {
          [params, cls](std::span<const double> x) {
            return utilities_multiclass(params, cls, 0.0, x[0], x[1]).u1;
          },
          [params, cls](std::span<const double> x) {
            return utilities_multiclass(params, cls, 0.0, x[0], x[1]).u2;
          },
      };
      game.bounds = {box, box};
      return game;
    }
    case Variant::Duopoly:
    case Variant::DuopolySidePayment: {
      const StickinessKind kind =
          spec.variant == Variant::Duopoly ? *spec.kind : StickinessKind::Reciprocal;
      const double ps = spec.variant == Variant::Duopoly ? 0.0 : transfers.ps;
      game.utility = {
          [params, kind, ps](std::span<const double> x) {
            return utilities_duopoly(params, kind, ps, x[0], x[1], x[2]).u1;
          },
          [params, kind, ps](std::span<const double> x) {
            return utilities_duopoly(params, kind, ps, x[0], x[1], x[2]).u2;
          },
          [params, kind, ps](std::span<const double> x) {
            return utilities_duopoly(params, kind, ps, x[0], x[1], x[2]).u3;
          },
      };
      game.bounds = {box, box, box};
      game.symmetric_pair = {{1, 2}};
      return game;
    }
    case Variant::Stackelberg: {
      const bool isp_leads = *spec.leader == Leader::Isp;
      // The leader's payoff is evaluated against the follower's numeric
      // best response, so its coordinate is checked as a one-shot argmax.
      auto follower_response = [params, transfers, isp_leads, box](double lead_price) {
        return argmax_interval(
            [&](double reply) {
              const TwoPlayerUtilities u =
                  isp_leads ? utilities_two_player(params, transfers, lead_price, reply)
                            : utilities_two_player(params, transfers, reply, lead_price);
              return isp_leads ? u.u2 : u.u1;
            },
            box);
      };
      auto leader_utility = [params, transfers, isp_leads,
                             follower_response](std::span<const double> x) {
        const double lead_price = isp_leads ? x[0] : x[1];
        const double reply = follower_response(lead_price);
        const TwoPlayerUtilities u =
            isp_leads ? utilities_two_player(params, transfers, lead_price, reply)
                      : utilities_two_player(params, transfers, reply, lead_price);
        return isp_leads ? u.u1 : u.u2;
      };
      auto follower_utility = [params, transfers, isp_leads](std::span<const double> x) {
        const TwoPlayerUtilities u = utilities_two_player(params, transfers, x[0], x[1]);
        return isp_leads ? u.u2 : u.u1;
      };
      if (isp_leads)
        game.utility = {leader_utility, follower_utility};
      else
        game.utility = {follower_utility, leader_utility};
      game.bounds = {box, box};
      return game;
    }
  }
  throw DomainError("make_game_view: unsupported scenario");
}

std::vector<double> view_coordinates(const ScenarioSpec& spec, const EquilibriumOutcome& out) {
  switch (spec.variant) {
    case Variant::BasicCompetition:
    case Variant::SidePayment:
    case Variant::AdCompetition:
    case Variant::Stackelberg:
      return {price(out.prices, "p1"), price(out.prices, "p2")};
    case Variant::BasicCollaboration:
    case Variant::AdCollaboration:
      return {price(out.prices, "p1") + price(out.prices, "p2")};
    case Variant::MulticlassCollab:
    case Variant::MulticlassLine:
      return {price(out.prices, "pl"), price(out.prices, "ph") - price(out.prices, "pl"),
              price(out.prices, "p2")};
    case Variant::MulticlassCompetition:
      return {price(out.prices, "ph"), price(out.prices, "p2")};
    case Variant::Duopoly:
    case Variant::DuopolySidePayment:
      return {price(out.prices, "p1"), price(out.prices, "p2"), price(out.prices, "p3")};
  }
  throw DomainError("view_coordinates: unsupported scenario");
}

NashCheck verify_outcome(const ScenarioSpec& spec, const EquilibriumOutcome& outcome,
                         std::size_t grid_points, double epsilon) {
  if (spec.variant == Variant::MulticlassCollab && outcome.regime == Regime::BoundaryP2Zero) {
    // Usage-priced-access branch: content price is pinned at zero.
    const GameView game = make_collab_p2zero_view(spec.params, *spec.cls);
    const double pl = price(outcome.prices, "pl");
    const std::vector<double> coords{pl, price(outcome.prices, "ph") - pl};
    return verify_epsilon_nash(game, coords, grid_points, epsilon);
  }
  const GameView game = make_game_view(spec);
  const std::vector<double> coords = view_coordinates(spec, outcome);
  return verify_epsilon_nash(game, coords, grid_points, epsilon);
}

}  // namespace npg
