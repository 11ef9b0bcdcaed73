#include "dynent/spin_gas.hpp"

#include <cmath>
#include <sstream>

#include "dynent/errors.hpp"

namespace dynent {

void SpinGasParams::validate() const {
  if (!(gamma > 0.0)) {
    std::ostringstream msg;
    msg << "spin_gas.gamma = " << gamma << " violates gamma > 0";
    throw DomainError(msg.str());
  }
  if (!(s >= 0.0 && s <= 0.5)) {
    std::ostringstream msg;
    msg << "spin_gas.s = " << s << " violates 0 <= s <= 1/2";
    throw DomainError(msg.str());
  }
}

Superoperator spin_gas_dissipator(const SpinGasParams& params) {
  Superoperator out = Superoperator::Zero();
  for (int spin = 1; spin <= 2; ++spin) {
    // lindblad_term(L) = 2 L rho L^dag - {L^dag L, rho}
    out += params.s * superop::lindblad_term(ops::sigma_plus(spin));
    out += (1.0 - params.s) * superop::lindblad_term(ops::sigma_minus(spin));
  }
  return params.gamma * out;
}

Superoperator spin_gas_generator(HamiltonianPoint point, const SpinGasParams& params,
                                 const std::optional<DephasingParams>& dephasing) {
  Superoperator l = superop::commutator(hamiltonian(point)) + spin_gas_dissipator(params);
  if (dephasing) l += dephasing_dissipator(*dephasing);
  return l;
}

SteadyState steady_state_closed_form(HamiltonianPoint point, const SpinGasParams& params) {
  params.validate();
  const double J = point.J;
  const double B = point.B;
  const double g = params.gamma;
  const double s = params.s;
  const double b2 = 4.0 * B * B + g * g;
  const double den = J * J + b2;
  Mat4 rho = Mat4::Zero();
  rho(0, 0) = (J * J + 4.0 * b2 * s * s) / (4.0 * den);
  rho(1, 1) = (J * J + 4.0 * b2 * s * (1.0 - s)) / (4.0 * den);
  rho(2, 2) = rho(1, 1);
  rho(3, 3) = (J * J + 4.0 * b2 * (1.0 - s) * (1.0 - s)) / (4.0 * den);
  // Phase chosen so that L rho = 0 with sigma_+ = |0><1| and H = J sx sx + B sz.
  rho(0, 3) = -J * cplx(2.0 * B, g) * (1.0 - 2.0 * s) / (2.0 * den);
  rho(3, 0) = std::conj(rho(0, 3));
  return {DensityMatrix::from_matrix(rho, {1e-12, 1e-12, 1e-12}), std::sqrt(b2)};
}

DensityMatrix steady_state_numeric(HamiltonianPoint point, const SpinGasParams& params,
                                   const std::optional<DephasingParams>& dephasing) {
  params.validate();
  if (dephasing) dephasing->validate();
  return null_space_state(spin_gas_generator(point, params, dephasing));
}

double critical_s(HamiltonianPoint point, double gamma) {
  if (!(gamma > 0.0)) throw DomainError("critical_s requires gamma > 0");
  const double b = std::sqrt(4.0 * point.B * point.B + gamma * gamma);
  const double r = point.J / b;
  return std::max(0.0, 0.5 * (1.0 + r - std::sqrt(1.0 + 2.0 * r * r)));
}

double static_concurrence(HamiltonianPoint point, const SpinGasParams& params) {
  params.validate();
  const double J = point.J;
  const double s = params.s;
  const double b = std::sqrt(4.0 * point.B * point.B + params.gamma * params.gamma);
  const double num = 2.0 * J * b * (1.0 - 2.0 * s) - (J * J + 4.0 * b * b * (1.0 - s) * s);
  return 2.0 * std::max(0.0, num / (4.0 * (J * J + b * b)));
}

TimeSeries evolve_spin_gas(const DensityMatrix& rho0, const Schedule& schedule, const SpinGasParams& params,
                           const std::optional<DephasingParams>& dephasing, double dt_int) {
  params.validate();
  if (dephasing) dephasing->validate();
  const GeneratorFn gen = [params, dephasing](HamiltonianPoint p) {
    return spin_gas_generator(p, params, dephasing);
  };
  return integrate(rho0, schedule, gen, dt_int);
}

AsymptoticCycle spin_gas_asymptotic_cycle(const Schedule& one_period, const SpinGasParams& params,
                                          const std::optional<DephasingParams>& dephasing, double dt_int,
                                          const CycleOptions& options) {
  params.validate();
  if (dephasing) dephasing->validate();
  const GeneratorFn gen = [params, dephasing](HamiltonianPoint p) {
    return spin_gas_generator(p, params, dephasing);
  };
  const DensityMatrix start = steady_state_numeric(one_period.point(0), params, dephasing);
  return asymptotic_cycle(start, one_period, gen, dt_int, options);
}

}  // namespace dynent
