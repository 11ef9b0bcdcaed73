// The two-spin molecule: distance-dependent coupling and field profiles,
// H = J sx1 sx2 + B (sz1 + sz2), its closed-form spectrum and the
// adiabaticity diagnostic.
#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dynent/quantum.hpp"

namespace dynent {

/// Profiles J(d) = J0/d^3 and B(d) = B0 - B1 exp(-d^2/(4 sigma_field)).
/// Energies in units of k_B T, hbar = 1.
struct ModelParams {
  double B0 = 1.3;
  double B1 = 2.4;
  double sigma_field = 120.0;  // length^2
  double J0 = 1.0e4;           // energy * length^3

  void validate() const;
};

struct HamiltonianPoint {
  double J = 0.0;
  double B = 0.0;
};

double coupling_strength(double d, const ModelParams& params);
double local_field(double d, const ModelParams& params);
HamiltonianPoint point_at_distance(double d, const ModelParams& params);

Mat4 hamiltonian(HamiltonianPoint p);

/// Instantaneous eigen-decomposition. Energies ascend for J >= 0:
///   eps = (-E, -J, +J, +E),  E = sqrt(4B^2 + J^2)
/// with eigenvectors
///   |e0> = (-eta|00> + |11>)/sqrt(1+eta^2)
///   |e1> = (|01> - |10>)/sqrt(2)
///   |e2> = (|01> + |10>)/sqrt(2)
///   |e3> = (|00> + eta|11>)/sqrt(1+eta^2)
/// and eta = (E - 2B)/J. The vectors are built from the mixing angle
/// phi = atan2(J, 2B), eta = tan(phi/2), which stays finite at J = 0.
struct Spectrum {
  std::array<double, 4> eps{};
  std::array<PureState, 4> states{PureState::basis(0), PureState::basis(1), PureState::basis(2),
                                  PureState::basis(3)};
  double eta = 0.0;
  double E = 0.0;
  double mixing_angle = 0.0;
};

Spectrum spectrum(HamiltonianPoint p);

/// J / sqrt(4B^2 + J^2) = 2 eta / (1 + eta^2).
double ground_state_concurrence(HamiltonianPoint p);

/// Uniformly sampled (J, B) time series with an optional distance column.
class Schedule {
 public:
  Schedule(double t_start, double spacing, std::vector<HamiltonianPoint> points,
           std::optional<std::vector<double>> distance = std::nullopt);

  std::size_t size() const noexcept { return points_.size(); }
  double spacing() const noexcept { return spacing_; }
  double start() const noexcept { return t_start_; }
  double end() const noexcept { return time(size() - 1); }
  double time(std::size_t i) const noexcept { return t_start_ + spacing_ * static_cast<double>(i); }

  const HamiltonianPoint& point(std::size_t i) const { return points_.at(i); }
  const std::vector<HamiltonianPoint>& points() const noexcept { return points_; }
  bool has_distance() const noexcept { return distance_.has_value(); }
  std::optional<double> distance(std::size_t i) const;

  /// Linear interpolation inside cell [i, i+1] at fraction `frac` in [0, 1].
  HamiltonianPoint interpolate(std::size_t cell, double frac) const;
  /// Linear interpolation at absolute time t (clamped to the grid).
  HamiltonianPoint at(double t) const;
  std::optional<double> distance_at(double t) const;

  /// Sub-range [first, last] as a new schedule.
  Schedule slice(std::size_t first, std::size_t last) const;

  /// CSV with header `t,d,J,B`; the d column is empty when absent.
  void write_csv(std::ostream& os) const;
  static Schedule read_csv(std::istream& is);

 private:
  double t_start_;
  double spacing_;
  std::vector<HamiltonianPoint> points_;
  std::optional<std::vector<double>> distance_;
};

/// |d/dt atan(eta)| / (2E) = |eta_dot/(1+eta^2)| / (2E) at an interior grid
/// point, with the derivative taken by central differences.
double adiabaticity_ratio(const Schedule& schedule, std::size_t index);

/// Largest adiabaticity_ratio over the interior points.
double max_adiabaticity_ratio(const Schedule& schedule);

}  // namespace dynent
