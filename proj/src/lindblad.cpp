#include "dynent/lindblad.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "dynent/errors.hpp"

namespace dynent {

void BathParams::validate() const {
  if (!(kappa >= 0.0)) {
    std::ostringstream msg;
    msg << "bath.kappa = " << kappa << " violates kappa >= 0";
    throw DomainError(msg.str());
  }
  if (!(beta > 0.0)) {
    std::ostringstream msg;
    msg << "bath.beta = " << beta << " violates beta > 0";
    throw DomainError(msg.str());
  }
}

void DephasingParams::validate() const {
  if (!(gamma_p >= 0.0)) {
    std::ostringstream msg;
    msg << "dephasing.gamma_p = " << gamma_p << " violates gamma_p >= 0";
    throw DomainError(msg.str());
  }
}

double bose_occupation(double omega, double beta) { return 1.0 / std::expm1(beta * omega); }

double rate_gamma(double omega, const BathParams& bath) {
  if (omega > 0.0) return bath.kappa * omega * (1.0 + bose_occupation(omega, bath.beta));
  if (omega < 0.0) return bath.kappa * (-omega) * bose_occupation(-omega, bath.beta);
  return bath.kappa / bath.beta;
}

double thermalization_rate(double omega, const BathParams& bath) {
  return bath.kappa * omega * (2.0 * bose_occupation(omega, bath.beta) + 1.0);
}

Superoperator build_dissipator(const Spectrum& spec, const BathParams& bath, double grouping_tol) {
  Superoperator out = Superoperator::Zero();
  if (bath.kappa == 0.0) return out;

  // Distinct transition frequencies e_j - e_i over all ordered pairs.
  std::vector<double> freqs;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double w = spec.eps[j] - spec.eps[i];
      bool seen = false;
      for (double f : freqs) seen = seen || std::abs(f - w) <= grouping_tol;
      if (!seen) freqs.push_back(w);
    }
  }

  for (int spin = 1; spin <= 2; ++spin) {
    const Mat4 sx = ops::sigma_x(spin);
    for (double w : freqs) {
      Mat4 jump = Mat4::Zero();
      for (int i = 0; i < 4; ++i) {
        const Vec4& ei = spec.states[i].vector();
        for (int j = 0; j < 4; ++j) {
          if (std::abs(spec.eps[j] - spec.eps[i] - w) > grouping_tol) continue;
          const Vec4& ej = spec.states[j].vector();
          const cplx element = (ei.adjoint() * sx * ej)(0);
          if (element != 0.0) jump += element * ei * ej.adjoint();
        }
      }
      if (jump.cwiseAbs().maxCoeff() < 1e-15) continue;
      out += rate_gamma(w, bath) * superop::lindblad_term(jump);
    }
  }
  return out;
}

Superoperator dephasing_dissipator(const DephasingParams& params) {
  Superoperator out = Superoperator::Zero();
  if (params.gamma_p == 0.0) return out;
  for (int spin = 1; spin <= 2; ++spin) {
    const Mat4 sz = ops::sigma_z(spin);
    out += params.gamma_p * (superop::sandwich(sz, sz) - Superoperator::Identity());
  }
  return out;
}

Superoperator bosonic_generator(HamiltonianPoint point, const BathParams& bath,
                                const std::optional<DephasingParams>& dephasing) {
  Superoperator l = superop::commutator(hamiltonian(point)) + build_dissipator(spectrum(point), bath);
  if (dephasing) l += dephasing_dissipator(*dephasing);
  return l;
}

double partition_function(HamiltonianPoint point, double beta) {
  const double e = std::sqrt(4.0 * point.B * point.B + point.J * point.J);
  return 2.0 * std::cosh(e * beta) + 2.0 * std::cosh(point.J * beta);
}

DensityMatrix thermal_state(HamiltonianPoint point, double beta) {
  if (!(beta > 0.0)) throw DomainError("thermal_state requires beta > 0");
  const Spectrum s = spectrum(point);
  // Boltzmann weights relative to the ground energy to avoid overflow.
  Mat4 rho = Mat4::Zero();
  double z = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double w = std::exp(-beta * (s.eps[k] - s.eps[0]));
    z += w;
    rho += w * s.states[k].vector() * s.states[k].vector().adjoint();
  }
  return DensityMatrix::from_matrix(rho / z);
}

double thermal_concurrence(HamiltonianPoint point, double beta) {
  if (!(beta > 0.0)) throw DomainError("thermal_concurrence requires beta > 0");
  const double e = std::sqrt(4.0 * point.B * point.B + point.J * point.J);
  if (e == 0.0) return 0.0;
  const double ground_c = std::abs(point.J) / e;  // 2 eta / (1 + eta^2)
  // Divide numerator and Z by exp(E beta) so large beta stays finite.
  const double jb = std::abs(point.J) * beta;
  const double eb = e * beta;
  const double sinh_s = 0.5 * (1.0 - std::exp(-2.0 * eb));
  const double cosh_j = 0.5 * (std::exp(jb - eb) + std::exp(-jb - eb));
  const double z = (1.0 + std::exp(-2.0 * eb)) + 2.0 * cosh_j;
  const double num = ground_c * sinh_s - cosh_j;
  return num > 0.0 ? 2.0 * num / z : 0.0;
}

TimeSeries evolve(const DensityMatrix& rho0, const Schedule& schedule, const BathParams& bath,
                  const std::optional<DephasingParams>& dephasing, double dt_int) {
  bath.validate();
  if (dephasing) dephasing->validate();
  const GeneratorFn gen = [bath, dephasing](HamiltonianPoint p) { return bosonic_generator(p, bath, dephasing); };
  return integrate(rho0, schedule, gen, dt_int);
}

AsymptoticCycle asymptotic_cycle(const Schedule& one_period, const BathParams& bath,
                                 const std::optional<DephasingParams>& dephasing, double dt_int,
                                 const CycleOptions& options) {
  bath.validate();
  if (dephasing) dephasing->validate();
  const GeneratorFn gen = [bath, dephasing](HamiltonianPoint p) { return bosonic_generator(p, bath, dephasing); };
  const DensityMatrix start = thermal_state(one_period.point(0), bath.beta);
  return asymptotic_cycle(start, one_period, gen, dt_int, options);
}

}  // namespace dynent
