#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "npg/model.hpp"
#include "npg/numerics.hpp"

namespace npg {

enum class Variant {
  BasicCompetition,
  BasicCollaboration,
  SidePayment,
  AdCompetition,
  AdCollaboration,
  MulticlassCollab,
  MulticlassLine,
  MulticlassCompetition,
  Duopoly,
  DuopolySidePayment,
  Stackelberg,
};

enum class Leader { Isp, Cp };

// Which game is being solved, plus everything its solver needs.
struct ScenarioSpec {
  Variant variant = Variant::BasicCompetition;
  MarketParams params;
  Transfers transfers;
  std::optional<ClassParams> cls;
  std::optional<StickinessKind> kind;
  std::optional<Leader> leader;

  void validate() const;  // optional fields present exactly when required
};

std::string to_string(Variant variant);
Variant variant_from_string(std::string_view name);

enum class Regime {
  Interior,
  BoundaryP1Zero,
  BoundaryP2Zero,
  BoundaryPlZero,
  BelowThreshold,
  EquilibriumLine,
  NoLine,
};

enum class Source { ClosedForm, Oracle, PaperPrinted };

std::string to_string(Regime regime);
std::string to_string(Stability stability);
std::string to_string(Source source);

struct EquilibriumOutcome {
  PriceProfile prices;
  double demand = 0.0;
  std::optional<double> demand_low, demand_high;  // multiclass scenarios only
  std::vector<double> utilities;                  // per player; collaborations report equal shares
  Regime regime = Regime::Interior;
  Stability stability = Stability::NotApplicable;
  Source source = Source::ClosedForm;

  double total_utility() const;
};

// --- closed-form and oracle solvers, one per scenario --------------------

EquilibriumOutcome solve_basic_competition(const MarketParams& params);
EquilibriumOutcome solve_basic_collaboration(const MarketParams& params);

// Interior for |ps| < pmax/3; outside, the provider receiving side payments
// drops its usage price to zero.
EquilibriumOutcome solve_side_payment(const MarketParams& params, double ps);

// Interior closed form when both printed prices are non-negative; otherwise
// the offending price pins at zero and the boundary point is found by the
// best-response oracle (source tag Oracle).
EquilibriumOutcome solve_advertising_competition(const MarketParams& params, double ps, double pa);
EquilibriumOutcome solve_advertising_collaboration(const MarketParams& params, double pa);

struct MulticlassCollabResult {
  EquilibriumOutcome branch_p2_zero;          // oracle maximization, usage-priced access
  EquilibriumOutcome branch_pl_zero;          // flat-rate access, content priced at pmax/2
  EquilibriumOutcome branch_p2_zero_printed;  // the printed formulas, kept for reporting
  bool flat_rate_best = false;                // true when branch_pl_zero wins
};

MulticlassCollabResult solve_multiclass_collab_boundary(const MarketParams& params,
                                                        const ClassParams& cls);

struct MulticlassLineResult {
  Regime regime = Regime::EquilibriumLine;  // NoLine when d2 != dl + dh
  double delta_star = 0.0;                  // phi_inverse(dh / d2)
  double price_gap = 0.0;                   // gamma * pmax * delta_star
  // Stationary (pl, p2) pairs of the coalition objective with the class gap
  // pinned at price_gap; empty in the NoLine case.
  std::vector<std::array<double, 2>> points;
  // NoLine only: border profile the coordinate ascent settles on.
  PriceProfile attractor;
};

MulticlassLineResult solve_multiclass_line(const MarketParams& params, const ClassParams& cls,
                                           int samples = 11);

// Competitive two-class game. The ISP prices best-effort access at zero and
// the remaining best-response conditions are intersected numerically.
EquilibriumOutcome solve_multiclass_competition(const MarketParams& params,
                                                const ClassParams& cls, int max_iter = 500);

EquilibriumOutcome solve_duopoly(const MarketParams& params, StickinessKind kind);

// (-7 + 2 sqrt(10))/18 * pmax; below it the CPs stop usage pricing entirely.
double duopoly_threshold(const MarketParams& params);

// Reciprocal-stickiness duopoly with side payments. One stable equilibrium
// for ps >= 0; a stable and an unstable one between the threshold and zero;
// a below-threshold outcome with pbar = 0 otherwise. Stability labels are
// recomputed with stability_probe at step 1e-4 * pmax.
std::vector<EquilibriumOutcome> solve_duopoly_side_payments(const MarketParams& params, double ps);

EquilibriumOutcome solve_stackelberg(const MarketParams& params, const Transfers& transfers,
                                     Leader leader);

// Verbatim transcription of the printed equilibrium values for the variant,
// kept uncorrected for the discrepancy report.
EquilibriumOutcome paper_reference(const ScenarioSpec& spec);

// --- oracle adapters ------------------------------------------------------

// Game view matching the scenario's strategic structure: one price per
// player, collaborations as shared-objective coordinate games, Stackelberg
// with the leader's utility composed with the follower's numeric response.
GameView make_game_view(const ScenarioSpec& spec);

// Two-coordinate view of the duopoly CP pair with the ISP price frozen,
// for stability probing.
GameView make_cp_probe_view(const MarketParams& params, StickinessKind kind, double ps,
                            double p1_fixed);

// Coalition objective over (pl, ph - pl) with the content price pinned at
// zero: the usage-priced-access branch of the two-class collaboration.
GameView make_collab_p2zero_view(const MarketParams& params, const ClassParams& cls);

// The outcome's prices as coordinates of make_game_view(spec).
std::vector<double> view_coordinates(const ScenarioSpec& spec, const EquilibriumOutcome& outcome);

// Runs verify_epsilon_nash against the view matching the outcome's branch
// (collaboration branches use their pinned-coordinate views).
NashCheck verify_outcome(const ScenarioSpec& spec, const EquilibriumOutcome& outcome,
                         std::size_t grid_points, double epsilon);

}  // namespace npg
