#include "dynent/motion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dynent/errors.hpp"
#include "dynent/rng.hpp"

namespace dynent {

namespace {

std::size_t grid_count(double t_end, double dt) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");
  const double n = std::round(t_end / dt);
  if (std::abs(n * dt - t_end) > 1e-9 * std::max(1.0, t_end))
    throw DomainError("t_end must be an integer multiple of the schedule spacing");
  return static_cast<std::size_t>(n) + 1;
}

}  // namespace

void PeriodicMotion::validate() const {
  if (!(tau > 0.0)) throw DomainError("periodic.tau must satisfy tau > 0");
  if (!(a >= 0.0)) throw DomainError("periodic.a must satisfy a >= 0");
  // d(t) = |x1(0) - x2(0) - 2a(cos - 1)| is extremal at t = 0 and t = tau/2.
  const double d0 = std::abs(x1_0 - x2_0);
  const double dh = std::abs(x1_0 - x2_0 + 4.0 * a);
  double dmin = std::min(d0, dh);
  if ((x1_0 - x2_0) * (x1_0 - x2_0 + 4.0 * a) < 0.0) dmin = 0.0;  // spins cross
  if (!(dmin > 0.0)) {
    std::ostringstream msg;
    msg << "periodic motion reaches distance " << dmin << "; minimum distance must stay > 0";
    throw GeometryError(msg.str());
  }
}

double periodic_distance(const PeriodicMotion& m, double t) {
  const double c = std::cos(2.0 * std::numbers::pi * t / m.tau) - 1.0;
  const double x1 = m.x1_0 - m.a * c;
  const double x2 = m.x2_0 + m.a * c;
  return std::abs(x1 - x2);
}

Schedule periodic_schedule(const PeriodicMotion& motion, const ModelParams& params, double dt,
                           int n_periods) {
  motion.validate();
  params.validate();
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (n_periods < 1) throw DomainError("n_periods must be at least 1");
  const auto per = static_cast<std::size_t>(std::max(1.0, std::round(motion.tau / dt)));
  const double spacing = motion.tau / static_cast<double>(per);
  const std::size_t n = per * static_cast<std::size_t>(n_periods) + 1;
  std::vector<HamiltonianPoint> pts(n);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Phase from the index within the period so that d(t + tau) == d(t) bitwise.
    const double phase_t = spacing * static_cast<double>(i % per);
    d[i] = periodic_distance(motion, phase_t);
    pts[i] = point_at_distance(d[i], params);
  }
  return Schedule(0.0, spacing, std::move(pts), std::move(d));
}

void RampMotion::validate() const {
  if (!(delta > 0.0)) throw DomainError("ramp.delta must satisfy delta > 0");
  if (!(t0 > 0.0)) throw DomainError("ramp.t0 must satisfy t0 > 0");
  if (B_start - delta * t0 < -B_start) {
    std::ostringstream msg;
    msg << "ramp drives B to " << (B_start - delta * t0) << ", below -B_start = " << -B_start;
    throw RangeError(msg.str());
  }
}

Schedule ramp_schedule(const RampMotion& motion, double dt, double t_end) {
  motion.validate();
  if (t_end < motion.t0) throw DomainError("ramp requires t_end >= t0");
  const std::size_t n = grid_count(t_end, dt);
  std::vector<HamiltonianPoint> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = dt * static_cast<double>(i);
    const double x = motion.delta * std::min(t, motion.t0);
    pts[i] = {motion.J_start + x, motion.B_start - x};
  }
  return Schedule(0.0, dt, std::move(pts));
}

Schedule static_schedule(HamiltonianPoint point, double dt, double t_end, std::optional<double> distance) {
  const std::size_t n = grid_count(t_end, dt);
  std::optional<std::vector<double>> d;
  if (distance) d.emplace(n, *distance);
  return Schedule(0.0, dt, std::vector<HamiltonianPoint>(n, point), std::move(d));
}

void WaitingTimeMotion::validate() const {
  if (!(d_open > d_closed && d_closed > 0.0))
    throw DomainError("waiting motion requires d_open > d_closed > 0");
  if (!(mean_open > 0.0 && mean_closed > 0.0)) throw DomainError("waiting-time means must be > 0");
  if (!(std_open >= 0.0 && std_closed >= 0.0)) throw DomainError("waiting-time stds must be >= 0");
  if (!(transit_time > 0.0)) throw DomainError("waiting.transit_time must satisfy transit_time > 0");
}

std::vector<Dwell> waiting_time_dwells(const WaitingTimeMotion& motion, double t_end) {
  motion.validate();
  Rng rng(motion.seed);
  std::vector<Dwell> dwells;
  double t = 0.0;
  bool open = true;
  while (t <= t_end) {
    const double dur = open ? truncated_normal_positive(rng, motion.mean_open, motion.std_open)
                            : truncated_normal_positive(rng, motion.mean_closed, motion.std_closed);
    dwells.push_back({open, t, dur});
    t += dur + motion.transit_time;
    open = !open;
  }
  return dwells;
}

double waiting_time_distance(const WaitingTimeMotion& motion, const std::vector<Dwell>& dwells, double t) {
  auto it = std::upper_bound(dwells.begin(), dwells.end(), t,
                             [](double x, const Dwell& w) { return x < w.start; });
  if (it == dwells.begin()) return motion.d_open;
  const Dwell& w = *std::prev(it);
  const double here = w.open ? motion.d_open : motion.d_closed;
  const double there = w.open ? motion.d_closed : motion.d_open;
  const double into = t - w.start;
  if (into <= w.duration) return here;
  const double frac = std::min(1.0, (into - w.duration) / motion.transit_time);
  return here + frac * (there - here);
}

Schedule waiting_time_schedule(const WaitingTimeMotion& motion, const ModelParams& params, double dt,
                               double t_end) {
  params.validate();
  const std::size_t n = grid_count(t_end, dt);
  const auto dwells = waiting_time_dwells(motion, t_end);
  std::vector<HamiltonianPoint> pts(n);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = waiting_time_distance(motion, dwells, dt * static_cast<double>(i));
    pts[i] = point_at_distance(d[i], params);
  }
  return Schedule(0.0, dt, std::move(pts), std::move(d));
}

void PotentialLandscape::validate() const {
  if (!(d_open > d_closed)) throw DomainError("landscape requires d_open > d_closed");
  if (!(barrier_height >= 0.0)) throw DomainError("landscape.barrier_height must be >= 0");
  if (!(well_width > 0.0)) throw DomainError("landscape.well_width must be > 0");
  if (!(wall_stiffness >= 0.0)) throw DomainError("landscape.wall_stiffness must be >= 0");
}

double landscape_potential(double d, const PotentialLandscape& l) {
  const double half = 0.5 * (l.d_open - l.d_closed);
  const double w2 = l.well_width * l.well_width;
  const double g_half = std::exp(-half * half / (2.0 * w2));
  const double depth = 1.0 - g_half * (1.0 + half * half / (2.0 * w2));
  const double amp = depth > 0.0 ? l.barrier_height / depth : 0.0;
  const auto shape = [&](double x) { return std::exp(-x * x / (2.0 * w2)) + g_half * x * x / (2.0 * w2); };
  const double x = d - l.d_mid();
  double v = amp * (shape(x) - shape(half));
  const double below = std::max(0.0, l.d_closed - d);
  const double above = std::max(0.0, d - l.d_open);
  v += l.wall_stiffness * (below * below * below * below + above * above * above * above);
  return v;
}

void LandscapeMotion::validate() const {
  landscape.validate();
  if (!(step > 0.0)) throw DomainError("landscape.step must satisfy step > 0");
  if (!(dt_hop > 0.0)) throw DomainError("landscape.dt_hop must satisfy dt_hop > 0");
  if (!(beta_cl > 0.0)) throw DomainError("landscape.beta_cl must satisfy beta_cl > 0");
  if (!(d_start > 0.0)) throw GeometryError("landscape.d_start must be > 0");
}

MetropolisWalk metropolis_walk(const PotentialLandscape& landscape, double beta, double step, double d_start,
                               std::size_t n_steps, std::uint64_t seed) {
  Rng rng(seed);
  MetropolisWalk walk;
  walk.positions.reserve(n_steps + 1);
  double d = d_start;
  double v = landscape_potential(d, landscape);
  walk.positions.push_back(d);
  for (std::size_t i = 0; i < n_steps; ++i) {
    const double trial = d + rng.uniform(-step, step);
    const double u = rng.uniform();
    if (trial > 0.0) {
      const double vt = landscape_potential(trial, landscape);
      const double dv = vt - v;
      if (dv <= 0.0 || u < std::exp(-beta * dv)) {
        d = trial;
        v = vt;
        ++walk.accepted;
      }
    }
    walk.positions.push_back(d);
  }
  return walk;
}

Schedule metropolis_schedule(const LandscapeMotion& motion, const ModelParams& params, double dt, double t_end) {
  motion.validate();
  params.validate();
  if (dt > motion.dt_hop * (1.0 + 1e-12))
    throw DomainError("metropolis schedule requires dt <= dt_hop");
  const std::size_t n = grid_count(t_end, dt);
  const auto hops = static_cast<std::size_t>(std::floor(t_end / motion.dt_hop + 1e-9));
  const auto walk = metropolis_walk(motion.landscape, motion.beta_cl, motion.step, motion.d_start, hops,
                                    motion.seed);
  std::vector<HamiltonianPoint> pts(n);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = dt * static_cast<double>(i);
    const auto hop = std::min(walk.positions.size() - 1,
                              static_cast<std::size_t>(std::floor(t / motion.dt_hop + 1e-9)));
    d[i] = walk.positions[hop];
    pts[i] = point_at_distance(d[i], params);
  }
  return Schedule(0.0, dt, std::move(pts), std::move(d));
}

}  // namespace dynent
