#include "dynent/dynamics.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "dynent/csv.hpp"
#include "dynent/errors.hpp"

namespace dynent {

double TimeSeries::max_concurrence() const {
  double c = 0.0;
  for (const auto& r : records) c = std::max(c, r.concurrence);
  return c;
}

void TimeSeries::write_csv(std::ostream& os) const {
  os << "t,d,C,p0,p1,p2,p3,purity\n";
  for (const auto& r : records) {
    os << csv::format(r.t) << ',';
    if (r.d) os << csv::format(*r.d);
    os << ',' << csv::format(r.concurrence);
    for (double p : r.p) os << ',' << csv::format(p);
    os << ',' << csv::format(r.purity) << '\n';
  }
}

void TimeSeries::write_states_csv(std::ostream& os) const {
  os << 't';
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) os << ",re" << i << j << ",im" << i << j;
  os << '\n';
  for (const auto& r : records) {
    os << csv::format(r.t);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        os << ',' << csv::format(r.rho(i, j).real()) << ',' << csv::format(r.rho(i, j).imag());
    os << '\n';
  }
}

TimeRecord make_record(double t, std::optional<double> d, HamiltonianPoint point, const Mat4& rho,
                       const StateTolerance& tol) {
  if (auto defect = state_defect(rho, tol); !defect.empty()) {
    std::ostringstream msg;
    msg << "state invariant violated at t = " << t << ": " << defect
        << "; reduce the integrator step dt_int";
    throw IntegratorError(msg.str());
  }
  TimeRecord rec;
  rec.t = t;
  rec.d = d;
  rec.rho = DensityMatrix::from_matrix(rho, tol);
  rec.concurrence = wootters_concurrence(rec.rho);
  rec.p = populations(rec.rho, spectrum(point).states);
  rec.purity = rec.rho.purity();
  return rec;
}

double default_dt_int(const Schedule& schedule) { return schedule.spacing() / 4.0; }

namespace {

int substeps_per_cell(const Schedule& schedule, double dt_int) {
  if (!(dt_int > 0.0)) throw DomainError("dt_int must be positive");
  if (dt_int > schedule.spacing() * (1.0 + 1e-12))
    throw DomainError("dt_int must not exceed the schedule spacing");
  const double m = std::round(schedule.spacing() / dt_int);
  if (std::abs(m * dt_int - schedule.spacing()) > 1e-9 * schedule.spacing())
    throw DomainError("dt_int must divide the schedule spacing");
  return static_cast<int>(m);
}

// Advances `state` (vec(rho) or a stack of them) across one schedule cell.
template <typename State>
void advance_cell(State& state, const Schedule& schedule, std::size_t cell, int substeps,
                  const GeneratorFn& generator, Superoperator& l_start) {
  const double h = schedule.spacing() / substeps;
  for (int j = 0; j < substeps; ++j) {
    const double fm = (j + 0.5) / substeps;
    const double f1 = static_cast<double>(j + 1) / substeps;
    const Superoperator l_mid = generator(schedule.interpolate(cell, fm));
    const Superoperator l_end = generator(schedule.interpolate(cell, f1));
    const State k1 = l_start * state;
    const State k2 = l_mid * (state + (0.5 * h) * k1);
    const State k3 = l_mid * (state + (0.5 * h) * k2);
    const State k4 = l_end * (state + h * k3);
    state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    l_start = l_end;
  }
}

}  // namespace

TimeSeries integrate(const DensityMatrix& rho0, const Schedule& schedule, const GeneratorFn& generator,
                     double dt_int) {
  const int m = substeps_per_cell(schedule, dt_int);
  TimeSeries out;
  out.records.reserve(schedule.size());
  Vec16 state = superop::vec(rho0.matrix());
  out.records.push_back(make_record(schedule.time(0), schedule.distance(0), schedule.point(0), rho0.matrix()));
  Superoperator l_start = generator(schedule.point(0));
  for (std::size_t cell = 0; cell + 1 < schedule.size(); ++cell) {
    advance_cell(state, schedule, cell, m, generator, l_start);
    Mat4 rho = superop::unvec(state);
    auto rec = make_record(schedule.time(cell + 1), schedule.distance(cell + 1), schedule.point(cell + 1), rho);
    state = superop::vec(rec.rho.matrix());
    out.records.push_back(std::move(rec));
  }
  return out;
}

Mat16 propagator(const Schedule& schedule, const GeneratorFn& generator, double dt_int) {
  const int m = substeps_per_cell(schedule, dt_int);
  Mat16 map = Mat16::Identity();
  Superoperator l_start = generator(schedule.point(0));
  for (std::size_t cell = 0; cell + 1 < schedule.size(); ++cell)
    advance_cell(map, schedule, cell, m, generator, l_start);
  return map;
}

AsymptoticCycle asymptotic_cycle(const DensityMatrix& start, const Schedule& one_period,
                                 const GeneratorFn& generator, double dt_int, const CycleOptions& options) {
  if (!(options.tol > 0.0)) throw DomainError("cycle tolerance must be positive");
  if (options.max_periods < 1) throw DomainError("max_periods must be at least 1");
  const Mat16 map = propagator(one_period, generator, dt_int);
  Mat4 rho = start.matrix();
  double residual = 0.0;
  int n = 0;
  bool converged = false;
  while (n < options.max_periods) {
    Mat4 next = superop::unvec(map * superop::vec(rho));
    next = 0.5 * (next + next.adjoint());
    residual = trace_distance(next, rho);
    rho = next;
    ++n;
    if (residual < options.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "asymptotic cycle did not converge within " << options.max_periods
        << " periods; last residual " << residual << " (tol " << options.tol << ")";
    throw ConvergenceError(msg.str());
  }
  if (auto defect = state_defect(rho, kIntegratorTolerance); !defect.empty())
    throw IntegratorError("asymptotic cycle start state invalid: " + defect + "; reduce dt_int");
  AsymptoticCycle out;
  out.first_period = integrate(start, one_period, generator, dt_int);
  out.cycle = integrate(DensityMatrix::from_matrix(rho, kIntegratorTolerance), one_period, generator, dt_int);
  out.periods = n;
  out.residual = residual;
  return out;
}

DensityMatrix null_space_state(const Superoperator& generator) {
  // Replace one equation by the trace condition and solve the square system.
  Mat16 a = generator;
  Vec16 rhs = Vec16::Zero();
  const int row = 0;
  a.row(row).setZero();
  for (int i = 0; i < 4; ++i) a(row, 5 * i) = 1.0;
  rhs(row) = 1.0;
  Eigen::FullPivLU<Mat16> lu(a);
  if (lu.rank() < 16) throw NumericError("generator has a degenerate null space; steady state is not unique");
  const Vec16 v = lu.solve(rhs);
  const double residual = (generator * v).cwiseAbs().maxCoeff();
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << "null-space solve residual " << residual << " too large";
    throw NumericError(msg.str());
  }
  return DensityMatrix::from_matrix(superop::unvec(v), {1e-9, 1e-9, 1e-9});
}

}  // namespace dynent
