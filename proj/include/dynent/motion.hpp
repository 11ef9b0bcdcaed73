// Classical trajectory generators. Every generator returns a Schedule on a
// uniform grid; stochastic ones are pure functions of (parameters, seed).
#pragma once

#include <cstdint>
#include <vector>

#include "dynent/model.hpp"

namespace dynent {

/// x_a(t) = x_a(0) + (-1)^a a (cos(2 pi t / tau) - 1), a = 1, 2.
struct PeriodicMotion {
  double x1_0 = -20.0;
  double x2_0 = 20.0;
  double a = 5.0;
  double tau = 100.0;

  void validate() const;
};

double periodic_distance(const PeriodicMotion& motion, double t);

/// Samples `n_periods` periods; the spacing is tau / round(tau / dt) so that
/// period boundaries fall on grid points. The last sample closes the final period.
Schedule periodic_schedule(const PeriodicMotion& motion, const ModelParams& params, double dt,
                           int n_periods);

/// B(t) = B_start - delta min(t, t0), J(t) = J_start + delta min(t, t0).
struct RampMotion {
  double J_start = 0.1;
  double B_start = 1.2;
  double delta = 0.01;
  double t0 = 100.0;

  void validate() const;
};

Schedule ramp_schedule(const RampMotion& motion, double dt, double t_end);

/// Constant configuration for `t_end`.
Schedule static_schedule(HamiltonianPoint point, double dt, double t_end,
                         std::optional<double> distance = std::nullopt);

/// Docking / undocking: dwell at d_open, ramp to d_closed, dwell, ramp back, ...
/// Dwell durations are Normal(mean, std) draws resampled until positive.
struct WaitingTimeMotion {
  double d_open = 40.0;
  double d_closed = 20.0;
  double mean_open = 14.5;
  double std_open = 6.0;
  double mean_closed = 7.5;
  double std_closed = 5.0;
  double transit_time = 10.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct Dwell {
  bool open = true;
  double start = 0.0;
  double duration = 0.0;
};

/// Piecewise trajectory of dwells covering at least [0, t_end].
std::vector<Dwell> waiting_time_dwells(const WaitingTimeMotion& motion, double t_end);
double waiting_time_distance(const WaitingTimeMotion& motion, const std::vector<Dwell>& dwells,
                             double t);

Schedule waiting_time_schedule(const WaitingTimeMotion& motion, const ModelParams& params,
                               double dt, double t_end);

/// Double well with a Gaussian central barrier and quartic outer walls:
///   V(d) = A [G(x) + G(D) x^2 / (2 w^2)] - V_well + k [(d_closed - d)_+^4 + (d - d_open)_+^4]
/// with x = d - d_mid, D = (d_open - d_closed)/2, G(x) = exp(-x^2 / (2 w^2)).
/// The quadratic term pins the minima exactly at d_closed and d_open with
/// V = 0 there; A is scaled so that V(d_mid) - V(d_open) = barrier_height.
struct PotentialLandscape {
  double d_open = 40.0;
  double d_closed = 20.0;
  double barrier_height = 3.0;
  double well_width = 5.0;
  double wall_stiffness = 1e-3;

  void validate() const;
  double d_mid() const { return 0.5 * (d_open + d_closed); }
};

double landscape_potential(double d, const PotentialLandscape& landscape);

struct LandscapeMotion {
  PotentialLandscape landscape;
  double beta_cl = 1.0;
  double step = 2.0;
  double dt_hop = 1.0;
  double d_start = 40.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct MetropolisWalk {
  std::vector<double> positions;  // positions[0] = start, one entry per hop
  std::size_t accepted = 0;
};

/// Metropolis random walk d' = d + U(-step, step), accepted with
/// probability min(1, exp(-beta (V(d') - V(d)))). Non-positive proposals are rejected.
MetropolisWalk metropolis_walk(const PotentialLandscape& landscape, double beta, double step,
                               double d_start, std::size_t n_steps, std::uint64_t seed);

/// Holds each hop's position for dt_hop; requires dt <= dt_hop.
Schedule metropolis_schedule(const LandscapeMotion& motion, const ModelParams& params, double dt,
                             double t_end);

}  // namespace dynent
