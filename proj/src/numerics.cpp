#include "npg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "npg/parallel.hpp"

namespace npg {

double phi(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("phi: x must lie in [0, 1]");
  return (1.0 - x) * std::exp(-x);
}

double phi_inverse(double y) {
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("phi_inverse: y must lie in [0, 1]");
  // phi is strictly decreasing on [0, 1]; bisect.
  double lo = 0.0, hi = 1.0;
  double mid = 0.5;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double value = phi(mid);
    if (std::abs(value - y) <= 1e-12) return mid;
    if (value > y)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

QuadraticRoots solve_quadratic(double a, double b, double c) {
  QuadraticRoots roots;
  if (a == 0.0) {
    if (b == 0.0) return roots;  // constant: no isolated root
    roots.count = 1;
    roots.root[0] = -c / b;
    return roots;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return roots;
  const double sign_b = (b < 0.0) ? -1.0 : 1.0;
  const double q = -0.5 * (b + sign_b * std::sqrt(disc));
  if (q == 0.0) {  // only reachable with b == 0 and c == 0: double root at the origin
    roots.count = 1;
    roots.root[0] = 0.0;
    return roots;
  }
  if (disc == 0.0) {
    roots.count = 1;
    roots.root[0] = q / a;
    return roots;
  }
  roots.count = 2;
  const double r1 = q / a;
  const double r2 = c / q;
  roots.root[0] = std::min(r1, r2);
  roots.root[1] = std::max(r1, r2);
  return roots;
}

namespace {

// Golden-section refinement of a bracketed maximum; returns the midpoint of
// the final bracket.
template <class F>
double golden_refine(F&& f, double lo, double hi, int iterations = 90) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iterations; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Grid seed plus golden polish; the polish is adopted only when it strictly
// improves on the grid winner, ties keep the grid point.
template <class F>
double argmax_on_interval(F&& f, const Bounds& bounds, std::size_t grid_points) {
  const std::size_t n = std::max<std::size_t>(grid_points, 3);
  const GridMax coarse = grid_max(f, bounds.lo, bounds.hi, n);
  const double h = (bounds.hi - bounds.lo) / double(n - 1);
  const double lo = std::max(bounds.lo, coarse.x - h);
  const double hi = std::min(bounds.hi, coarse.x + h);
  const double polished = golden_refine(f, lo, hi);
  if (f(polished) > coarse.value) return polished;
  return coarse.x;
}

std::vector<double> to_vector(std::span<const double> view) {
  return std::vector<double>(view.begin(), view.end());
}

void check_profile(const GameView& game, std::span<const double> profile) {
  if (profile.size() != game.players())
    throw DomainError("game profile has the wrong dimension");
  for (std::size_t i = 0; i < profile.size(); ++i)
    if (!(profile[i] >= game.bounds[i].lo && profile[i] <= game.bounds[i].hi))
      throw DomainError("game profile lies outside the bounds box");
}

}  // namespace

double argmax_interval(const std::function<double(double)>& f, const Bounds& bounds,
                       std::size_t grid_points) {
  return argmax_on_interval(f, bounds, grid_points);
}

double best_response(const GameView& game, std::size_t player,
                     std::span<const double> profile, std::size_t grid_points) {
  check_profile(game, profile);
  if (profile.size() > 8) throw DomainError("best_response: more than 8 price coordinates");
  const auto& utility = game.utility[player];
  // Each evaluation works on its own copy: the scan underneath runs the
  // grid points in parallel.
  auto value_at = [&](double x) {
    std::array<double, 8> work{};
    std::copy(profile.begin(), profile.end(), work.begin());
    work[player] = x;
    return utility(std::span<const double>(work.data(), profile.size()));
  };
  return argmax_on_interval(value_at, game.bounds[player], grid_points);
}

DynamicsResult best_response_dynamics(const GameView& game, std::vector<double> initial,
                                      double damping, double tol, int max_iter,
                                      std::size_t grid_points) {
  if (!(damping > 0.0 && damping <= 1.0))
    throw DomainError("best_response_dynamics: damping must lie in (0, 1]");
  if (!(tol > 0.0)) throw DomainError("best_response_dynamics: tol must be > 0");
  check_profile(game, initial);

  DynamicsResult result;
  result.profile = std::move(initial);
  std::vector<double> responses(game.players());
  for (int it = 1; it <= max_iter; ++it) {
    for (std::size_t p = 0; p < game.players(); ++p)
      responses[p] = best_response(game, p, result.profile, grid_points);
    double applied = 0.0;
    for (std::size_t p = 0; p < game.players(); ++p) {
      const double next = (1.0 - damping) * result.profile[p] + damping * responses[p];
      applied = std::max(applied, std::abs(next - result.profile[p]));
      result.profile[p] = next;
    }
    result.iterations = it;
    if (applied <= tol) {
      result.converged = true;
      return result;
    }
  }
  return result;  // divergence report: last profile, converged = false
}

DynamicsResult coordinate_ascent(const GameView& game, std::vector<double> initial,
                                 double tol, int max_iter, std::size_t grid_points) {
  check_profile(game, initial);
  DynamicsResult result;
  result.profile = std::move(initial);
  double previous_value = game.utility[0](result.profile);
  for (int it = 1; it <= max_iter; ++it) {
    double applied = 0.0;
    for (std::size_t p = 0; p < game.players(); ++p) {
      const double next = best_response(game, p, result.profile, grid_points);
      applied = std::max(applied, std::abs(next - result.profile[p]));
      result.profile[p] = next;
    }
    result.iterations = it;
    const double value = game.utility[0](result.profile);
    // Stop on a stationary profile or once a full round stops improving the
    // shared objective beyond round-off.
    if (applied <= tol ||
        std::abs(value - previous_value) <= 1e-15 * std::max(1.0, std::abs(value))) {
      result.converged = true;
      return result;
    }
    previous_value = value;
  }
  return result;
}

NashCheck verify_epsilon_nash(const GameView& game, std::span<const double> profile,
                              std::size_t grid_points, double epsilon) {
  if (grid_points < 2) throw DomainError("verify_epsilon_nash: grid_points must be >= 2");
  check_profile(game, profile);

  NashCheck check;
  check.epsilon = epsilon;
  check.gain.resize(game.players(), 0.0);
  check.pass = true;
  std::vector<double> work = to_vector(profile);
  for (std::size_t p = 0; p < game.players(); ++p) {
    const double current = game.utility[p](work);
    const double deviation = best_response(game, p, work, grid_points);
    const double saved = work[p];
    work[p] = deviation;
    const double improved = game.utility[p](work);
    work[p] = saved;
    check.gain[p] = std::max(0.0, improved - current);
    if (check.gain[p] > epsilon) check.pass = false;
  }
  return check;
}

AmbiguousProbe::AmbiguousProbe(double below_, double above_)
    : std::runtime_error("stability_probe: marginals " + std::to_string(below_) + " and " +
                         std::to_string(above_) + " do not change sign"),
      below(below_),
      above(above_) {}

Stability stability_probe(const GameView& game, double symmetric_price, double step) {
  if (!game.symmetric_pair) throw DomainError("stability_probe: game has no symmetric pair");
  if (!(step > 0.0)) throw DomainError("stability_probe: step must be > 0");
  const auto [first, second] = *game.symmetric_pair;
  if (game.players() != 2 || first == second)
    throw DomainError("stability_probe: game must consist of the symmetric pair");
  const Bounds bounds = game.bounds[first];
  if (!(symmetric_price - step >= bounds.lo && symmetric_price + step <= bounds.hi))
    throw DomainError("stability_probe: probed prices leave the bounds");

  const double inner = 1e-3 * step;  // central-difference step for the marginal
  auto marginal = [&](double x) {
    std::vector<double> work(2);
    work[second] = x;
    work[first] = x + inner;
    const double up = game.utility[first](work);
    work[first] = x - inner;
    const double down = game.utility[first](work);
    return (up - down) / (2.0 * inner);
  };
  const double below = marginal(symmetric_price - step);
  const double above = marginal(symmetric_price + step);
  if (below > 0.0 && above < 0.0) return Stability::Stable;
  if (below < 0.0 && above > 0.0) return Stability::Unstable;
  throw AmbiguousProbe(below, above);
}

namespace {

std::vector<FieldSample> sample_field(const std::function<double(double, double)>& objective,
                                      const Box& region, int nx, int ny, double step,
                                      bool parallel) {
  if (nx < 2 || ny < 2) throw DomainError("gradient_field: resolution must be >= 2 per axis");
  if (!(step > 0.0)) throw DomainError("gradient_field: step must be > 0");
  std::vector<FieldSample> samples(std::size_t(nx) * std::size_t(ny));
  auto body = [&](std::size_t k) {
    const int iy = int(k) / nx;
    const int ix = int(k) % nx;
    FieldSample s;
    s.x = region.x_lo + (region.x_hi - region.x_lo) * (double(ix) / double(nx - 1));
    s.y = region.y_lo + (region.y_hi - region.y_lo) * (double(iy) / double(ny - 1));
    s.gx = (objective(s.x + step, s.y) - objective(s.x - step, s.y)) / (2.0 * step);
    s.gy = (objective(s.x, s.y + step) - objective(s.x, s.y - step)) / (2.0 * step);
    s.magnitude = std::hypot(s.gx, s.gy);
    samples[k] = s;
  };
  if (parallel)
    parallel_for_index(samples.size(), body);
  else
    serial_for_index(samples.size(), body);
  return samples;
}

}  // namespace

std::vector<FieldSample> gradient_field(const std::function<double(double, double)>& objective,
                                        const Box& region, int nx, int ny, double step) {
  return sample_field(objective, region, nx, ny, step, true);
}

std::vector<FieldSample> gradient_field_serial(
    const std::function<double(double, double)>& objective, const Box& region, int nx, int ny,
    double step) {
  return sample_field(objective, region, nx, ny, step, false);
}

}  // namespace npg
