// Quasi-adiabatic propagator path integral for the two spins, each coupled
// through sigma_x to its own Ohmic bath with exponential cutoff.
//
// Conventions
//   J(w)  = kappa w exp(-w/w_c)
//   C(t)  = (1/pi) int_0^inf J(w) [coth(beta w/2) cos(w t) - i sin(w t)] dw
//
// Time is cut into slices [k dt, (k+1) dt]. The coupling operator is taken
// as constant inside each slice, with value s_k^+ on the forward and s_k^-
// on the backward path. Each slice is propagated as
//   U_half(k) [bath weight] U_half(k),   U_half(k) = exp(-i H(t_k + dt/2) dt/2)
// and paths are weighted by
//   exp( - sum_{k >= k'} (s_k^+ - s_k^-) (eta_{k-k'} s_{k'}^+ - conj(eta_{k-k'}) s_{k'}^-) )
// with
//   eta_n = int_{slice k} dt int_{slice k-n} dt' C(t - t')            n >= 1
//   eta_0 = int_{slice k} dt int_{k dt}^{t} dt' C(t - t')
// Pairs further apart than dk slices are dropped.
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "dynent/dynamics.hpp"
#include "dynent/model.hpp"
#include "dynent/quantum.hpp"

namespace dynent {

struct SpectralDensity {
  double kappa = 0.01;
  double omega_c = 4.0;
  double beta = 1.0;

  void validate() const;
  double operator()(double omega) const;
};

struct QuapiParams {
  double dt_slice = 0.25;
  int dk = 2;
  int max_dk = 6;  // memory guard, 16^dk tensor entries

  double t_mem() const { return dk * dt_slice; }
  void validate() const;
};

/// C(t) by adaptive quadrature, relative tolerance 1e-8.
cplx bath_response_function(double t, const SpectralDensity& sd);

/// Closed form of Im C(t): -(kappa/pi) 2 w_c^3 t / (1 + w_c^2 t^2)^2.
double bath_response_imag_exact(double t, const SpectralDensity& sd);

/// eta_0 .. eta_dk for one bath; eta(k, k') = eta_{k-k'}.
struct InfluenceCoefficients {
  double dt_slice = 0.0;
  std::vector<cplx> eta;

  int dk() const { return static_cast<int>(eta.size()) - 1; }
  cplx operator()(int k, int kp) const;
};

/// Window double integrals of C, reduced to single frequency integrals.
InfluenceCoefficients influence_coefficients(const QuapiParams& params, const SpectralDensity& sd);

/// Per-bath data of the general engine: eigenvalue of the coupling
/// operator on each path-basis state, and that bath's coefficients.
struct PathBath {
  std::array<double, 4> s{};
  InfluenceCoefficients coeffs;
};

/// Path-integral propagation in an arbitrary orthonormal path basis (the
/// columns of `basis`) in which every bath's coupling operator is diagonal.
/// Records are emitted at every slice boundary.
TimeSeries quapi_propagate_general(const DensityMatrix& rho0, const Schedule& schedule, const QuapiParams& params,
                                   const Mat4& basis, const std::vector<PathBath>& baths);

/// Two independent baths on sx1 and sx2, path basis sx (x) sx.
TimeSeries quapi_propagate(const DensityMatrix& rho0, const Schedule& schedule, const QuapiParams& params,
                           const SpectralDensity& bath1, const SpectralDensity& bath2);
TimeSeries quapi_propagate(const DensityMatrix& rho0, const Schedule& schedule, const QuapiParams& params,
                           const SpectralDensity& sd);

/// Propagates I/4 at fixed (J, B) until successive slices differ by less
/// than `tol` in trace distance.
DensityMatrix quapi_equilibrium(HamiltonianPoint point, const QuapiParams& params, const SpectralDensity& sd,
                                double t_relax, double tol = 1e-6);

/// Positivity is relaxed for path-integral states.
inline constexpr StateTolerance kQuapiTolerance{1e-8, 1e-8, 1e-5};

struct ExtrapolationPoint {
  double dt_slice;
  double t_mem;
  double value;
};

struct Extrapolated {
  double value = 0.0;
  double uncertainty = 0.0;  // root-mean-square fit residual
};

/// Least-squares fit value = a + b dt^2 over points sharing one t_mem.
Extrapolated extrapolate_dt(const std::vector<ExtrapolationPoint>& points);

/// dt -> 0 at each t_mem (at least 3 dt values each), then
/// a(t_mem) = A + c / t_mem over at least 3 t_mem values.
Extrapolated extrapolate(const std::vector<ExtrapolationPoint>& points);

}  // namespace dynent
