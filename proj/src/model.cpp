#include "dynent/model.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "dynent/csv.hpp"
#include "dynent/errors.hpp"

namespace dynent {

void ModelParams::validate() const {
  if (!(sigma_field > 0.0)) throw DomainError("model.sigma_field must satisfy sigma_field > 0");
  if (!(J0 > 0.0)) throw DomainError("model.J0 must satisfy J0 > 0");
  if (!std::isfinite(B0) || !std::isfinite(B1)) throw DomainError("model.B0 and model.B1 must be finite");
}

double coupling_strength(double d, const ModelParams& params) {
  if (!(d > 0.0)) {
    std::ostringstream msg;
    msg << "coupling_strength requires d > 0, got " << d;
    throw DomainError(msg.str());
  }
  return params.J0 / (d * d * d);
}

double local_field(double d, const ModelParams& params) {
  return params.B0 - params.B1 * std::exp(-d * d / (4.0 * params.sigma_field));
}

HamiltonianPoint point_at_distance(double d, const ModelParams& params) {
  return {coupling_strength(d, params), local_field(d, params)};
}

Mat4 hamiltonian(HamiltonianPoint p) {
  return p.J * ops::sigma_x(1) * ops::sigma_x(2) + p.B * (ops::sigma_z(1) + ops::sigma_z(2));
}

Spectrum spectrum(HamiltonianPoint p) {
  Spectrum s;
  s.E = std::sqrt(4.0 * p.B * p.B + p.J * p.J);
  s.eps = {-s.E, -p.J, p.J, s.E};
  s.mixing_angle = std::atan2(p.J, 2.0 * p.B);
  if (p.J != 0.0)
    s.eta = (p.B >= 0.0) ? p.J / (s.E + 2.0 * p.B) : (s.E - 2.0 * p.B) / p.J;
  else
    s.eta = (p.B >= 0.0) ? 0.0 : std::numeric_limits<double>::infinity();

  const double sh = std::sin(0.5 * s.mixing_angle);
  const double ch = std::cos(0.5 * s.mixing_angle);
  const double r = 1.0 / std::sqrt(2.0);
  Vec4 v0, v1, v2, v3;
  v0 << -sh, 0.0, 0.0, ch;
  v1 << 0.0, r, -r, 0.0;
  v2 << 0.0, r, r, 0.0;
  v3 << ch, 0.0, 0.0, sh;
  s.states = {PureState::normalized(v0), PureState::normalized(v1), PureState::normalized(v2),
              PureState::normalized(v3)};
  return s;
}

double ground_state_concurrence(HamiltonianPoint p) {
  const double e = std::sqrt(4.0 * p.B * p.B + p.J * p.J);
  if (e == 0.0) return 0.0;
  return std::abs(p.J) / e;
}

Schedule::Schedule(double t_start, double spacing, std::vector<HamiltonianPoint> points,
                   std::optional<std::vector<double>> distance)
    : t_start_(t_start), spacing_(spacing), points_(std::move(points)), distance_(std::move(distance)) {
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
    throw DomainError("schedule spacing must be positive and finite");
  if (points_.size() < 2) throw DomainError("schedule needs at least two samples");
  if (distance_ && distance_->size() != points_.size())
    throw DomainError("schedule distance column length does not match the (J, B) samples");
  if (distance_) {
    for (double d : *distance_)
      if (!(d > 0.0)) throw GeometryError("schedule distance must stay positive");
  }
}

std::optional<double> Schedule::distance(std::size_t i) const {
  if (!distance_) return std::nullopt;
  return distance_->at(i);
}

HamiltonianPoint Schedule::interpolate(std::size_t cell, double frac) const {
  if (cell + 1 >= points_.size()) return points_.back();
  const auto& a = points_[cell];
  const auto& b = points_[cell + 1];
  return {a.J + frac * (b.J - a.J), a.B + frac * (b.B - a.B)};
}

namespace {

std::pair<std::size_t, double> locate(double t, double t0, double dt, std::size_t n) {
  const double x = (t - t0) / dt;
  if (x <= 0.0) return {0, 0.0};
  if (x >= static_cast<double>(n - 1)) return {n - 2, 1.0};
  const auto cell = static_cast<std::size_t>(std::floor(x));
  return {cell, x - static_cast<double>(cell)};
}

}  // namespace

HamiltonianPoint Schedule::at(double t) const {
  const auto [cell, frac] = locate(t, t_start_, spacing_, points_.size());
  return interpolate(cell, frac);
}

std::optional<double> Schedule::distance_at(double t) const {
  if (!distance_) return std::nullopt;
  const auto [cell, frac] = locate(t, t_start_, spacing_, points_.size());
  const auto& d = *distance_;
  return d[cell] + frac * (d[cell + 1] - d[cell]);
}

Schedule Schedule::slice(std::size_t first, std::size_t last) const {
  if (last >= size() || first >= last) throw RangeError("invalid schedule slice");
  std::vector<HamiltonianPoint> pts(points_.begin() + first, points_.begin() + last + 1);
  std::optional<std::vector<double>> d;
  if (distance_) d.emplace(distance_->begin() + first, distance_->begin() + last + 1);
  return Schedule(time(first), spacing_, std::move(pts), std::move(d));
}

void Schedule::write_csv(std::ostream& os) const {
  os << "t,d,J,B\n";
  for (std::size_t i = 0; i < size(); ++i) {
    os << csv::format(time(i)) << ',';
    if (distance_) os << csv::format((*distance_)[i]);
    os << ',' << csv::format(points_[i].J) << ',' << csv::format(points_[i].B) << '\n';
  }
}

Schedule Schedule::read_csv(std::istream& is) {
  csv::read_header(is, {"t", "d", "J", "B"});
  std::vector<double> t;
  std::vector<HamiltonianPoint> pts;
  std::vector<double> d;
  bool any_d = false;
  bool all_d = true;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cols = csv::split(line);
    if (cols.size() != 4)
      throw IoError("schedule CSV line " + std::to_string(lineno) + ": expected 4 columns");
    t.push_back(csv::parse_double(cols[0]));
    if (cols[1].empty()) {
      all_d = false;
    } else {
      any_d = true;
      d.push_back(csv::parse_double(cols[1]));
    }
    pts.push_back({csv::parse_double(cols[2]), csv::parse_double(cols[3])});
  }
  if (t.size() < 2) throw IoError("schedule CSV needs at least two rows");
  if (any_d && !all_d) throw IoError("schedule CSV distance column is only partially filled");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double expect = t.front() + dt * static_cast<double>(i);
    if (std::abs(t[i] - expect) > 1e-9 * std::max(1.0, std::abs(expect)))
      throw IoError("schedule CSV time grid is not uniform at row " + std::to_string(i + 2));
  }
  std::optional<std::vector<double>> dist;
  if (any_d) dist = std::move(d);
  return Schedule(t.front(), dt, std::move(pts), std::move(dist));
}

double adiabaticity_ratio(const Schedule& schedule, std::size_t index) {
  if (index == 0 || index + 1 >= schedule.size())
    throw RangeError("adiabaticity_ratio needs an interior grid point, got index " +
                     std::to_string(index) + " of " + std::to_string(schedule.size()));
  // d/dt atan(eta) = eta_dot / (1 + eta^2), and atan(eta) = phi / 2.
  const double before = 0.5 * spectrum(schedule.point(index - 1)).mixing_angle;
  const double after = 0.5 * spectrum(schedule.point(index + 1)).mixing_angle;
  const double rate = (after - before) / (2.0 * schedule.spacing());
  const double e = spectrum(schedule.point(index)).E;
  if (e == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(rate) / (2.0 * e);
}

double max_adiabaticity_ratio(const Schedule& schedule) {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < schedule.size(); ++i)
    worst = std::max(worst, adiabaticity_ratio(schedule, i));
  return worst;
}

}  // namespace dynent
