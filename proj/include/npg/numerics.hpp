#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "npg/model.hpp"

namespace npg {

// phi(x) := (1 - x) e^{-x}; strictly decreasing bijection of [0, 1].
double phi(double x);

// Inverse of phi by bisection; |phi(result) - y| <= 1e-12.
double phi_inverse(double y);

struct QuadraticRoots {
  int count = 0;                 // 0, 1 or 2 real roots
  std::array<double, 2> root{};  // ascending
};

// Real roots of a x^2 + b x + c, evaluated in the cancellation-safe form
// q = -(b + sign(b) sqrt(disc))/2, roots q/a and c/q. a = 0 degenerates to
// the linear case; a = b = 0 reports no isolated root.
QuadraticRoots solve_quadratic(double a, double b, double c);

struct Bounds {
  double lo = 0.0;
  double hi = 1.0;
};

// One price coordinate per player; utilities are total on the bounds box.
// symmetric_pair marks two players whose prices the stability probe moves
// together (the duopoly's content providers).
struct GameView {
  std::vector<std::function<double(std::span<const double>)>> utility;
  std::vector<Bounds> bounds;
  std::optional<std::pair<std::size_t, std::size_t>> symmetric_pair;

  std::size_t players() const { return utility.size(); }
};

// Grid-seeded golden-section argmax over an interval; ties break to the
// smallest maximizing point.
double argmax_interval(const std::function<double(double)>& f, const Bounds& bounds,
                       std::size_t grid_points = 2001);

// Argmax of one player's utility over its interval: coarse uniform grid
// seeded golden-section refinement, ties to the smallest maximizing price.
double best_response(const GameView& game, std::size_t player,
                     std::span<const double> profile, std::size_t grid_points = 2001);

struct DynamicsResult {
  bool converged = false;
  std::vector<double> profile;
  int iterations = 0;
};

// Damped simultaneous best-response iteration. Converged once the largest
// applied price change is <= tol; otherwise reports the last profile.
DynamicsResult best_response_dynamics(const GameView& game, std::vector<double> initial,
                                      double damping = 0.5, double tol = 1e-8,
                                      int max_iter = 500, std::size_t grid_points = 2001);

// Sequential coordinate-wise ascent for shared-objective (coalition) views.
DynamicsResult coordinate_ascent(const GameView& game, std::vector<double> initial,
                                 double tol = 1e-10, int max_iter = 300,
                                 std::size_t grid_points = 2001);

struct NashCheck {
  bool pass = false;
  double epsilon = 0.0;
  std::vector<double> gain;  // best unilateral improvement found per player
};

// Scans each player's interval (uniform grid plus golden-section polish) for
// a profitable unilateral deviation; passes iff every gain is <= epsilon.
NashCheck verify_epsilon_nash(const GameView& game, std::span<const double> profile,
                              std::size_t grid_points, double epsilon);

enum class Stability { Stable, Unstable, NotApplicable };

// Same-sign marginals on both sides of the probed price: no classification.
struct AmbiguousProbe : std::runtime_error {
  AmbiguousProbe(double below, double above);
  double below = 0.0;
  double above = 0.0;
};

// Sign test for a symmetric two-provider equilibrium: evaluates the first
// paired player's own-price marginal utility with both paired prices moved
// together to x - h and x + h. (+,-) is Stable, (-,+) is Unstable.
// The game must consist of exactly the symmetric pair (other prices frozen
// into the utilities).
Stability stability_probe(const GameView& game, double symmetric_price, double step);

struct FieldSample {
  double x = 0.0, y = 0.0;   // grid point
  double gx = 0.0, gy = 0.0; // central-difference gradient of the objective
  double magnitude = 0.0;
};

struct Box {
  double x_lo = 0.0, x_hi = 1.0;
  double y_lo = 0.0, y_hi = 1.0;
};

// Samples the gradient of a 2-D objective on an nx-by-ny grid, row-major in
// y then x. `step` is the central-difference step.
std::vector<FieldSample> gradient_field(const std::function<double(double, double)>& objective,
                                        const Box& region, int nx, int ny, double step);

// Serial reference implementation of gradient_field, kept for testing.
std::vector<FieldSample> gradient_field_serial(
    const std::function<double(double, double)>& objective, const Box& region, int nx, int ny,
    double step);

}  // namespace npg
