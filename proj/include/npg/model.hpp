#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace npg {

// Argument outside an operation's domain.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solve exceeded its iteration budget.
struct OracleError : std::runtime_error {
  explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

// Linear demand market: D(p) = D0 - d*p, clamped at zero past pmax.
struct MarketParams {
  double D0 = 1.0;  // demand at zero usage price (volume/period)
  double d = 1.0;   // demand sensitivity (volume per unit price)

  double pmax() const { return D0 / d; }         // total price at which demand hits 0
  double Umax() const { return D0 * pmax(); }    // natural revenue scale D0^2/d
  void validate() const;
};

// Regulated per-volume transfers. ps > 0 means the content side pays the ISP.
struct Transfers {
  double ps = 0.0;  // side-payment rate, signed
  double pa = 0.0;  // advertising rate, non-negative
  void validate(const MarketParams& market) const;
};

// Service-class choice parameters; split coefficients are all-or-none.
struct ClassParams {
  double gamma = 1.0;  // price sensitivity of class choice, > 0
  std::optional<double> dl, dh, d2;

  bool has_split() const { return dl.has_value(); }
  void validate() const;
};

enum class StickinessKind {
  Reciprocal,  // share kept is inversely proportional to own price
  Slackness,   // share kept is proportional to price slack pmax - p
};

struct NamedPrice {
  std::string name;
  double value = 0.0;
};
using PriceProfile = std::vector<NamedPrice>;

double price(const PriceProfile& prices, std::string_view name);

// D = max(0, D0 - d*total_price). total_price must be >= 0.
double linear_demand(const MarketParams& market, double total_price);

struct DemandSplit {
  double low = 0.0;   // demand routed to the low-quality class
  double high = 0.0;  // demand routed to the high-quality class
  double total = 0.0; // low + high, exactly
};

// Splits demand between the two access classes: Dl = (1 - e^{-delta}) D with
// delta = (ph - pl) / (gamma * pmax). Uses the split-coefficient demand form
// when ClassParams carries coefficients, the plain linear form otherwise.
DemandSplit class_split(const MarketParams& market, const ClassParams& cls,
                        double pl, double ph, double p2);

// Fraction of customers staying with the provider priced `pi` against a rival
// priced `pother`. Degenerate denominators fall back to the symmetric 1/2.
double stickiness_share(StickinessKind kind, double pi, double pother, double pmax);

struct TwoPlayerUtilities {
  double u1 = 0.0;
  double u2 = 0.0;
};

// U1 = D*(p1+ps), U2 = D*(p2-ps+pa), D evaluated at p1+p2.
TwoPlayerUtilities utilities_two_player(const MarketParams& market, const Transfers& transfers,
                                        double p1, double p2);

// U1 = D*(pl + (ph-pl) e^{-delta}), U2 = D*p2.
TwoPlayerUtilities utilities_multiclass(const MarketParams& market, const ClassParams& cls,
                                        double pl, double ph, double p2);

struct DuopolyUtilities {
  double u1 = 0.0;
  double u2 = 0.0;
  double u3 = 0.0;
};

// ISP plus two content providers selling the same content. Each CP sees its
// own demand D(p1, pi) weighted by its stickiness share; the ISP carries both
// shares, so U1 reduces to D(p1, pbar)*(p1+ps) when p2 = p3 = pbar.
DuopolyUtilities utilities_duopoly(const MarketParams& market, StickinessKind kind, double ps,
                                   double p1, double p2, double p3);

}  // namespace npg
