#include "npg/model.hpp"

#include <cmath>

namespace npg {

void MarketParams::validate() const {
  if (!(D0 > 0.0)) throw DomainError("MarketParams: D0 must be > 0");
  if (!(d > 0.0)) throw DomainError("MarketParams: d must be > 0");
}

void Transfers::validate(const MarketParams& market) const {
  if (!(std::abs(ps) <= market.pmax()))
    throw DomainError("Transfers: |ps| must be <= pmax");
  if (!(pa >= 0.0)) throw DomainError("Transfers: pa must be >= 0");
}

void ClassParams::validate() const {
  if (!(gamma > 0.0)) throw DomainError("ClassParams: gamma must be > 0");
  const bool any = dl || dh || d2;
  const bool all = dl && dh && d2;
  if (any && !all)
    throw DomainError("ClassParams: dl, dh, d2 must be given together");
  if (all) {
    if (!(*dl >= 0.0 && *dh >= 0.0 && *d2 > 0.0))
      throw DomainError("ClassParams: split coefficients must be non-negative, d2 > 0");
    if (!(*dh <= *d2))
      throw DomainError("ClassParams: dh must be <= d2");
  }
}

double price(const PriceProfile& prices, std::string_view name) {
  for (const auto& p : prices)
    if (p.name == name) return p.value;
  throw DomainError("price profile has no entry named '" + std::string(name) + "'");
}

double linear_demand(const MarketParams& market, double total_price) {
  market.validate();
  if (!(total_price >= 0.0))
    throw DomainError("linear_demand: total price must be >= 0");
  return std::max(0.0, market.D0 - market.d * total_price);
}

DemandSplit class_split(const MarketParams& market, const ClassParams& cls,
                        double pl, double ph, double p2) {
  market.validate();
  cls.validate();
  if (!(pl >= 0.0 && p2 >= 0.0)) throw DomainError("class_split: prices must be >= 0");
  if (!(ph >= pl)) throw DomainError("class_split: ph must be >= pl");

  double total;
  if (cls.has_split()) {
    total = std::max(0.0, market.D0 - *cls.dl * pl - *cls.dh * ph - *cls.d2 * p2);
  } else {
    total = linear_demand(market, pl + ph + p2);
  }
  const double delta = (ph - pl) / (cls.gamma * market.pmax());
  DemandSplit split;
  split.total = total;
  split.low = (1.0 - std::exp(-delta)) * total;
  split.high = total - split.low;
  return split;
}

double stickiness_share(StickinessKind kind, double pi, double pother, double pmax) {
  if (!(pi >= 0.0 && pi <= pmax && pother >= 0.0 && pother <= pmax))
    throw DomainError("stickiness_share: prices must lie in [0, pmax]");
  double mine = 0.0, rival = 0.0;
  switch (kind) {
    case StickinessKind::Reciprocal:
      mine = pother;  // 1/pi over (1/pi + 1/pother), cleared of fractions
      rival = pi;
      break;
    case StickinessKind::Slackness:
      mine = pmax - pi;
      rival = pmax - pother;
      break;
  }
  const double den = mine + rival;
  if (!(den > 0.0)) return 0.5;  // symmetric tie at the degenerate corner
  return mine / den;
}

TwoPlayerUtilities utilities_two_player(const MarketParams& market, const Transfers& transfers,
                                        double p1, double p2) {
  transfers.validate(market);
  if (!(p1 >= 0.0 && p2 >= 0.0))
    throw DomainError("utilities_two_player: prices must be >= 0");
  const double demand = linear_demand(market, p1 + p2);
  return {demand * (p1 + transfers.ps), demand * (p2 - transfers.ps + transfers.pa)};
}

TwoPlayerUtilities utilities_multiclass(const MarketParams& market, const ClassParams& cls,
                                        double pl, double ph, double p2) {
  const DemandSplit split = class_split(market, cls, pl, ph, p2);
  const double gap = ph - pl;
  const double delta = gap / (cls.gamma * market.pmax());
  return {split.total * (pl + gap * std::exp(-delta)), split.total * p2};
}

DuopolyUtilities utilities_duopoly(const MarketParams& market, StickinessKind kind, double ps,
                                   double p1, double p2, double p3) {
  market.validate();
  const double pmax = market.pmax();
  if (!(std::abs(ps) <= pmax)) throw DomainError("utilities_duopoly: |ps| must be <= pmax");
  for (double p : {p1, p2, p3})
    if (!(p >= 0.0 && p <= pmax))
      throw DomainError("utilities_duopoly: prices must lie in [0, pmax]");

  const double share2 = stickiness_share(kind, p2, p3, pmax);
  const double share3 = stickiness_share(kind, p3, p2, pmax);
  const double demand2 = linear_demand(market, p1 + p2);
  const double demand3 = linear_demand(market, p1 + p3);

  DuopolyUtilities u;
  u.u1 = (share2 * demand2 + share3 * demand3) * (p1 + ps);
  u.u2 = share2 * demand2 * (p2 - ps);
  u.u3 = share3 * demand3 * (p3 - ps);
  return u;
}

}  // namespace npg
