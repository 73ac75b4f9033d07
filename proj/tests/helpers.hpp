#pragma once

#include <cmath>

#include "npg/equilibria.hpp"

namespace testsupport {

inline npg::ScenarioSpec unit_spec(npg::Variant variant) {
  npg::ScenarioSpec spec;
  spec.variant = variant;
  spec.params = {1.0, 1.0};
  if (variant == npg::Variant::MulticlassCollab || variant == npg::Variant::MulticlassLine ||
      variant == npg::Variant::MulticlassCompetition)
    spec.cls = npg::ClassParams{};
  if (variant == npg::Variant::Duopoly) spec.kind = npg::StickinessKind::Reciprocal;
  if (variant == npg::Variant::Stackelberg) spec.leader = npg::Leader::Isp;
  return spec;
}

// Largest gap between the outcome's recorded utilities and a re-evaluation
// of the model at its prices. Collaborations pool revenue, so they are
// checked on totals.
inline double consistency_gap(const npg::ScenarioSpec& spec,
                              const npg::EquilibriumOutcome& outcome) {
  using namespace npg;
  const MarketParams& params = spec.params;
  switch (spec.variant) {
    case Variant::BasicCompetition:
    case Variant::SidePayment:
    case Variant::AdCompetition:
    case Variant::Stackelberg: {
      const TwoPlayerUtilities u = utilities_two_player(
          params, spec.transfers, price(outcome.prices, "p1"), price(outcome.prices, "p2"));
      return std::max(std::abs(u.u1 - outcome.utilities.at(0)),
                      std::abs(u.u2 - outcome.utilities.at(1)));
    }
    case Variant::BasicCollaboration:
    case Variant::AdCollaboration: {
      const TwoPlayerUtilities u = utilities_two_player(
          params, spec.transfers, price(outcome.prices, "p1"), price(outcome.prices, "p2"));
      return std::abs(u.u1 + u.u2 - outcome.total_utility());
    }
    case Variant::MulticlassCollab: {
      const TwoPlayerUtilities u =
          utilities_multiclass(params, *spec.cls, price(outcome.prices, "pl"),
                               price(outcome.prices, "ph"), price(outcome.prices, "p2"));
      return std::abs(u.u1 + u.u2 - outcome.total_utility());
    }
    case Variant::MulticlassCompetition: {
      const TwoPlayerUtilities u =
          utilities_multiclass(params, *spec.cls, price(outcome.prices, "pl"),
                               price(outcome.prices, "ph"), price(outcome.prices, "p2"));
      return std::max(std::abs(u.u1 - outcome.utilities.at(0)),
                      std::abs(u.u2 - outcome.utilities.at(1)));
    }
    case Variant::Duopoly:
    case Variant::DuopolySidePayment: {
      const StickinessKind kind =
          spec.variant == Variant::Duopoly ? *spec.kind : StickinessKind::Reciprocal;
      const double ps = spec.variant == Variant::Duopoly ? 0.0 : spec.transfers.ps;
      const DuopolyUtilities u =
          utilities_duopoly(params, kind, ps, price(outcome.prices, "p1"),
                            price(outcome.prices, "p2"), price(outcome.prices, "p3"));
      return std::max({std::abs(u.u1 - outcome.utilities.at(0)),
                       std::abs(u.u2 - outcome.utilities.at(1)),
                       std::abs(u.u3 - outcome.utilities.at(2))});
    }
    case Variant::MulticlassLine:
      break;
  }
  return 0.0;
}

}  // namespace testsupport
