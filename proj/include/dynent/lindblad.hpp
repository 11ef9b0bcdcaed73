// Born-Markov master equation for two spins in independent Ohmic bosonic
// baths, pure dephasing, and the thermal state of a fixed configuration.
#pragma once

#include <optional>

#include "dynent/dynamics.hpp"
#include "dynent/model.hpp"
#include "dynent/quantum.hpp"

namespace dynent {

/// Markovian Ohmic bath J(omega) = kappa omega at inverse temperature beta.
struct BathParams {
  double kappa = 0.01;
  double beta = 1.0;

  void validate() const;
};

struct DephasingParams {
  double gamma_p = 0.0;

  void validate() const;
};

/// Bose occupation 1 / (exp(beta omega) - 1).
double bose_occupation(double omega, double beta);

/// Emission/absorption rate:
///   omega > 0:  kappa omega (1 + N(omega))
///   omega < 0:  kappa |omega| N(|omega|)
///   omega = 0:  kappa / beta
double rate_gamma(double omega, const BathParams& bath);

/// Thermalization rate kappa omega (2 N(omega) + 1) of a transition omega > 0.
double thermalization_rate(double omega, const BathParams& bath);

/// Secular dissipator sum_{a, w} G_w (2 A rho A^dag - {A^dag A, rho}) with
/// A_a[w] = sum_{e_j - e_i = w} <e_i|sx_a|e_j> |e_i><e_j|; frequencies closer
/// than `grouping_tol` are merged into one jump operator.
Superoperator build_dissipator(const Spectrum& spec, const BathParams& bath, double grouping_tol = 1e-9);

/// gamma_p sum_i (sz_i rho sz_i - rho).
Superoperator dephasing_dissipator(const DephasingParams& params);

/// Full generator -i[H, .] + D (+ D_p) at one configuration.
Superoperator bosonic_generator(HamiltonianPoint point, const BathParams& bath,
                                const std::optional<DephasingParams>& dephasing = std::nullopt);

/// 2 cosh(E beta) + 2 cosh(J beta).
double partition_function(HamiltonianPoint point, double beta);

/// exp(-beta H) / Z from the closed-form spectrum.
DensityMatrix thermal_state(HamiltonianPoint point, double beta);

/// (2/Z) max{0, (2 eta/(1 + eta^2)) sinh(E beta) - cosh(J beta)}.
double thermal_concurrence(HamiltonianPoint point, double beta);

TimeSeries evolve(const DensityMatrix& rho0, const Schedule& schedule, const BathParams& bath,
                  const std::optional<DephasingParams>& dephasing, double dt_int);

AsymptoticCycle asymptotic_cycle(const Schedule& one_period, const BathParams& bath,
                                 const std::optional<DephasingParams>& dephasing, double dt_int,
                                 const CycleOptions& options = {});

}  // namespace dynent
