// Fixed-step time evolution of d rho/dt = L(t) rho for any generator built
// from the instantaneous (J, B), plus the asymptotic-cycle driver.
#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dynent/model.hpp"
#include "dynent/quantum.hpp"

namespace dynent {

struct TimeRecord {
  double t = 0.0;
  std::optional<double> d;
  DensityMatrix rho = DensityMatrix::maximally_mixed();
  double concurrence = 0.0;
  std::array<double, 4> p{};  // instantaneous eigenbasis populations
  double purity = 0.0;
};

struct TimeSeries {
  std::vector<TimeRecord> records;

  double max_concurrence() const;
  /// Header `t,d,C,p0,p1,p2,p3,purity`.
  void write_csv(std::ostream& os) const;
  /// Header `t,re00,im00,re01,im01,...` (row-major, 32 value columns).
  void write_states_csv(std::ostream& os) const;
};

/// Tolerance applied to every state an integrator emits.
inline constexpr StateTolerance kIntegratorTolerance{1e-6, 1e-6, 1e-6};

/// Builds a validated record; `rho` is re-symmetrized first.
TimeRecord make_record(double t, std::optional<double> d, HamiltonianPoint point, const Mat4& rho,
                       const StateTolerance& tol = kIntegratorTolerance);

using GeneratorFn = std::function<Superoperator(HamiltonianPoint)>;

/// spacing / 4, the default integrator step.
double default_dt_int(const Schedule& schedule);

/// Classical RK4 with the generator rebuilt at every stage from the linearly
/// interpolated (J, B). dt_int must divide the schedule spacing; one record
/// is emitted per schedule sample.
TimeSeries integrate(const DensityMatrix& rho0, const Schedule& schedule, const GeneratorFn& generator,
                     double dt_int);

/// Propagator over the whole schedule as a 16x16 map on vec(rho).
Mat16 propagator(const Schedule& schedule, const GeneratorFn& generator, double dt_int);

struct CycleOptions {
  double tol = 1e-8;
  int max_periods = 500;
};

struct AsymptoticCycle {
  TimeSeries cycle;          // the converged period
  TimeSeries first_period;   // the period started from the initial state
  int periods = 0;           // one-period maps applied until convergence
  double residual = 0.0;     // trace distance between the last two period starts
};

/// Iterates the one-period map from `start` until successive period starts
/// are closer than options.tol in trace distance.
AsymptoticCycle asymptotic_cycle(const DensityMatrix& start, const Schedule& one_period,
                                 const GeneratorFn& generator, double dt_int, const CycleOptions& options = {});

/// Normalized null vector of a generator, i.e. the state with L rho = 0.
DensityMatrix null_space_state(const Superoperator& generator);

}  // namespace dynent
