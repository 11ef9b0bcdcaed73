// Spin-gas decoherence: per-spin gain/loss channels with equilibrium
// excitation s, the closed-form static steady state and the critical s.
#pragma once

#include <optional>

#include "dynent/dynamics.hpp"
#include "dynent/lindblad.hpp"
#include "dynent/model.hpp"
#include "dynent/quantum.hpp"

namespace dynent {

/// gamma: relaxation rate of <(1 + sz)/2>; s: its equilibrium value.
struct SpinGasParams {
  double gamma = 0.025;
  double s = 0.16;

  void validate() const;  // gamma > 0, 0 <= s <= 1/2
};

/// gamma sum_a [ s (2 s+ rho s- - {s- s+, rho}) + (1 - s)(2 s- rho s+ - {s+ s-, rho}) ]
Superoperator spin_gas_dissipator(const SpinGasParams& params);

Superoperator spin_gas_generator(HamiltonianPoint point, const SpinGasParams& params,
                                 const std::optional<DephasingParams>& dephasing = std::nullopt);

struct SteadyState {
  DensityMatrix rho = DensityMatrix::maximally_mixed();
  double b = 0.0;  // sqrt(4B^2 + gamma^2)
};

/// X-structured steady state of the spin-gas generator at fixed (J, B).
SteadyState steady_state_closed_form(HamiltonianPoint point, const SpinGasParams& params);

/// Steady state with optional dephasing from the generator's null space.
DensityMatrix steady_state_numeric(HamiltonianPoint point, const SpinGasParams& params,
                                   const std::optional<DephasingParams>& dephasing = std::nullopt);

/// max{0, (1 + r - sqrt(1 + 2 r^2)) / 2} with r = J / sqrt(4B^2 + gamma^2).
double critical_s(HamiltonianPoint point, double gamma);

/// 2 max{0, |rho03| - sqrt(rho11 rho22)} evaluated on the closed form.
double static_concurrence(HamiltonianPoint point, const SpinGasParams& params);

TimeSeries evolve_spin_gas(const DensityMatrix& rho0, const Schedule& schedule, const SpinGasParams& params,
                           const std::optional<DephasingParams>& dephasing, double dt_int);

/// Asymptotic cycle started from the steady state at the first configuration.
AsymptoticCycle spin_gas_asymptotic_cycle(const Schedule& one_period, const SpinGasParams& params,
                                          const std::optional<DephasingParams>& dephasing, double dt_int,
                                          const CycleOptions& options = {});

}  // namespace dynent
