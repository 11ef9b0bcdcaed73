#include "dynent/quapi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dynent/errors.hpp"

namespace dynent {

void SpectralDensity::validate() const {
  if (!(kappa >= 0.0)) {
    std::ostringstream msg;
    msg << "quapi.kappa = " << kappa << " violates kappa >= 0";
    throw DomainError(msg.str());
  }
  if (!(omega_c > 0.0)) {
    std::ostringstream msg;
    msg << "quapi.omega_c = " << omega_c << " violates omega_c > 0";
    throw DomainError(msg.str());
  }
  if (!(beta > 0.0)) {
    std::ostringstream msg;
    msg << "quapi.beta = " << beta << " violates beta > 0";
    throw DomainError(msg.str());
  }
}

double SpectralDensity::operator()(double omega) const { return kappa * omega * std::exp(-omega / omega_c); }

void QuapiParams::validate() const {
  if (!(dt_slice > 0.0)) throw DomainError("quapi.dt_slice must satisfy dt_slice > 0");
  if (dk < 1) throw DomainError("quapi.dk must satisfy dk >= 1");
  if (dk > max_dk) {
    std::ostringstream msg;
    msg << "quapi.dk = " << dk << " needs a tensor of 16^" << dk << " = " << std::pow(16.0, dk)
        << " entries, above the limit 16^" << max_dk << "; raise quapi.max_dk to allow it";
    throw ResourceError(msg.str());
  }
}

namespace {

constexpr double kRelTol = 1e-8;

// w coth(beta w / 2), finite at w = 0.
double w_coth(double w, double beta) {
  const double x = 0.5 * beta * w;
  if (std::abs(x) < 1e-8) return 2.0 / beta;
  return w / std::tanh(x);
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// int_0^inf f(w) dw for integrands damped by exp(-w/w_c) and oscillating at
// frequency up to `osc`. The range is cut into panels of at most two
// oscillations and integrated panel by panel.
template <typename F>
double frequency_integral(F f, double omega_c, double osc, const char* what) {
  using boost::math::quadrature::gauss_kronrod;
  const double upper = 45.0 * omega_c;
  double width = omega_c;
  if (osc > 0.0) width = std::min(width, 4.0 * std::numbers::pi / osc);
  double total = 0.0;
  double err_total = 0.0;
  double l1_total = 0.0;
  for (double a = 0.0; a < upper; a += width) {
    const double b = std::min(upper, a + width);
    double err = 0.0;
    double l1 = 0.0;
    total += gauss_kronrod<double, 31>::integrate(f, a, b, 12, 1e-11, &err, &l1);
    err_total += err;
    l1_total += l1;
  }
  if (err_total > kRelTol * std::max(l1_total, 1e-300) && err_total > 1e-15) {
    std::ostringstream msg;
    msg << what << ": quadrature error estimate " << err_total << " exceeds relative tolerance " << kRelTol
        << " (L1 norm " << l1_total << ")";
    throw NumericError(msg.str());
  }
  return total;
}

}  // namespace

cplx bath_response_function(double t, const SpectralDensity& sd) {
  sd.validate();
  if (sd.kappa == 0.0) return 0.0;
  const double wc = sd.omega_c;
  const double beta = sd.beta;
  // J(w) coth = kappa exp(-w/wc) w coth
  const double re = frequency_integral(
      [&](double w) { return std::exp(-w / wc) * w_coth(w, beta) * std::cos(w * t); }, wc, std::abs(t), "BRF real part");
  const double im = frequency_integral(
      [&](double w) { return -std::exp(-w / wc) * w * std::sin(w * t); }, wc, std::abs(t), "BRF imaginary part");
  return sd.kappa / std::numbers::pi * cplx(re, im);
}

double bath_response_imag_exact(double t, const SpectralDensity& sd) {
  const double wc = sd.omega_c;
  const double q = 1.0 + wc * wc * t * t;
  return -sd.kappa / std::numbers::pi * 2.0 * wc * wc * wc * t / (q * q);
}

cplx InfluenceCoefficients::operator()(int k, int kp) const {
  const int n = k - kp;
  if (n < 0) throw RangeError("influence coefficient requires k >= k'");
  if (n > dk()) return 0.0;
  return eta[static_cast<std::size_t>(n)];
}

InfluenceCoefficients influence_coefficients(const QuapiParams& params, const SpectralDensity& sd) {
  params.validate();
  sd.validate();
  InfluenceCoefficients out;
  out.dt_slice = params.dt_slice;
  out.eta.assign(static_cast<std::size_t>(params.dk) + 1, 0.0);
  if (sd.kappa == 0.0) return out;
  const double dt = params.dt_slice;
  const double wc = sd.omega_c;
  const double beta = sd.beta;
  const double pref = sd.kappa / std::numbers::pi;

  // n = 0: int_0^dt (dt - u) C(u) du
  {
    const double re = frequency_integral(
        [&](double w) {
          const double sc = sinc(0.5 * w * dt);
          return std::exp(-w / wc) * 0.5 * dt * dt * sc * sc * w_coth(w, beta);
        },
        wc, dt, "eta_0 real part");
    const double im = frequency_integral(
        [&](double w) { return -std::exp(-w / wc) * dt * (1.0 - sinc(w * dt)); }, wc, dt, "eta_0 imaginary part");
    out.eta[0] = pref * cplx(re, im);
  }
  // n >= 1: |int_0^dt e^{iwu} du|^2 = dt^2 sinc^2(w dt/2) times the phase at lag n dt
  for (int n = 1; n <= params.dk; ++n) {
    const double lag = n * dt;
    const auto window = [&](double w) {
      const double sc = sinc(0.5 * w * dt);
      return std::exp(-w / wc) * dt * dt * sc * sc;
    };
    const double re = frequency_integral([&](double w) { return window(w) * w_coth(w, beta) * std::cos(w * lag); },
                                         wc, lag + dt, "eta_n real part");
    const double im = frequency_integral([&](double w) { return -window(w) * w * std::sin(w * lag); }, wc, lag + dt,
                                         "eta_n imaginary part");
    out.eta[static_cast<std::size_t>(n)] = pref * cplx(re, im);
  }
  return out;
}

namespace {

Mat4 half_step(HamiltonianPoint point, double tau) {
  const Spectrum s = spectrum(point);
  Mat4 u = Mat4::Zero();
  for (int k = 0; k < 4; ++k) {
    const Vec4& v = s.states[k].vector();
    u += std::exp(cplx(0.0, -s.eps[k] * tau)) * v * v.adjoint();
  }
  return u;
}

using Table = Eigen::Matrix<cplx, 16, 16>;  // (new pair, old pair)

// exp(-sum_b (s'+ - s'-)(eta s+ - conj(eta) s-)) for pair indices p' = 4a'+ + a'-.
Table influence_table(const std::vector<PathBath>& baths, int n, double weight) {
  Table f;
  for (int pn = 0; pn < 16; ++pn) {
    for (int po = 0; po < 16; ++po) {
      cplx expo = 0.0;
      for (const auto& bath : baths) {
        const cplx eta = weight * bath.coeffs.eta[static_cast<std::size_t>(n)];
        const double dn = bath.s[pn / 4] - bath.s[pn % 4];
        const double sp = bath.s[po / 4];
        const double sm = bath.s[po % 4];
        expo += dn * (eta * sp - std::conj(eta) * sm);
      }
      f(pn, po) = std::exp(-expo);
    }
  }
  return f;
}

Table link_table(const Mat4& link) {
  Table k;
  for (int pn = 0; pn < 16; ++pn)
    for (int po = 0; po < 16; ++po)
      k(pn, po) = link(pn / 4, po / 4) * std::conj(link(pn % 4, po % 4));
  return k;
}

std::size_t slice_count(const Schedule& schedule, double dt) {
  const double duration = schedule.end() - schedule.start();
  const double n = std::round(duration / dt);
  if (n < 1.0 || std::abs(n * dt - duration) > 1e-9 * std::max(1.0, duration))
    throw DomainError("schedule duration must be a positive integer multiple of quapi.dt_slice");
  const double ratio = std::max(dt, schedule.spacing()) / std::min(dt, schedule.spacing());
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
    throw DomainError("schedule spacing and quapi.dt_slice must be commensurate");
  return static_cast<std::size_t>(n);
}

using SliceObserver = std::function<bool(const TimeRecord&)>;

void propagate(const DensityMatrix& rho0, const Schedule& schedule, const QuapiParams& params, const Mat4& basis,
               const std::vector<PathBath>& baths, const SliceObserver& observe) {
  params.validate();
  if ((basis.adjoint() * basis - Mat4::Identity()).cwiseAbs().maxCoeff() > 1e-10)
    throw BasisError("quapi path basis is not orthonormal");
  for (const auto& b : baths) {
    if (b.coeffs.dk() < params.dk || std::abs(b.coeffs.dt_slice - params.dt_slice) > 1e-12 * params.dt_slice)
      throw InputError("influence coefficients do not match quapi.dt_slice / quapi.dk");
  }
  const double dt = params.dt_slice;
  const std::size_t n_slices = slice_count(schedule, dt);
  const int dk = params.dk;

  std::vector<Table> f(static_cast<std::size_t>(dk) + 1);
  // Half weight on the last lag puts the memory cut at dk * dt instead of
  // (dk + 1/2) dt, so the truncation error does not depend on dt at fixed t_mem.
  for (int n = 0; n <= dk; ++n) f[static_cast<std::size_t>(n)] = influence_table(baths, n, n == dk ? 0.5 : 1.0);
  Eigen::Matrix<cplx, 16, 1> f0;
  for (int p = 0; p < 16; ++p) f0(p) = f[0](p, p);

  const auto record = [&](double t, const Mat4& rho) {
    Mat4 herm = 0.5 * (rho + rho.adjoint());
    if (std::abs(herm.trace().real() - 1.0) > kQuapiTolerance.trace) {
      std::ostringstream msg;
      msg << "quapi trace drifted to " << herm.trace().real() << " at t = " << t;
      throw NumericError(msg.str());
    }
    if (auto defect = state_defect(herm, kQuapiTolerance); !defect.empty())
      throw NumericError("quapi state invalid at t = " + std::to_string(t) + ": " + defect);
    const HamiltonianPoint pt = schedule.at(t);
    return make_record(t, schedule.distance_at(t), pt, herm, kQuapiTolerance);
  };

  const double t0 = schedule.start();
  if (!observe(record(t0, rho0.matrix()))) return;

  const auto half_at = [&](std::size_t k) {
    return Mat4(basis.adjoint() * half_step(schedule.at(t0 + (static_cast<double>(k) + 0.5) * dt), 0.5 * dt) * basis);
  };

  // Window 0.
  Mat4 w_prev = half_at(0);
  Mat4 x = w_prev * (basis.adjoint() * rho0.matrix() * basis) * w_prev.adjoint();
  std::vector<cplx> r(16);
  for (int p = 0; p < 16; ++p) r[static_cast<std::size_t>(p)] = x(p / 4, p % 4) * f0(p);
  int m = 1;
  std::vector<cplx> next;

  const auto readout = [&](const Mat4& w) {
    Mat4 xs = Mat4::Zero();
    for (std::size_t i = 0; i < r.size(); ++i) xs(static_cast<int>(i % 16) / 4, static_cast<int>(i % 16) % 4) += r[i];
    return Mat4(basis * (w * xs * w.adjoint()) * basis.adjoint());
  };

  if (!observe(record(t0 + dt, readout(w_prev)))) return;

  std::vector<int> digits(static_cast<std::size_t>(dk) + 1);
  for (std::size_t k = 1; k < n_slices; ++k) {
    const Mat4 w = half_at(k);
    const Table kt = link_table(w * w_prev);
    const bool drop = (m == dk);
    const std::size_t kept = drop ? static_cast<std::size_t>(1) << (4 * (m - 1)) : r.size();
    next.assign(kept * 16, 0.0);
    if (!drop) {
      // Tensor grows by one pair: R'(q1..qm, p) = weight * R(q1..qm).
      for (std::size_t idx = 0; idx < r.size(); ++idx) {
        std::size_t rest = idx;
        for (int i = m - 1; i >= 0; --i) {
          digits[static_cast<std::size_t>(i)] = static_cast<int>(rest % 16);
          rest /= 16;
        }
        const cplx rv = r[idx];
        const int newest = digits[static_cast<std::size_t>(m - 1)];
        for (int p = 0; p < 16; ++p) {
          cplx wgt = f0(p) * kt(p, newest);
          for (int i = 0; i < m; ++i) wgt *= f[static_cast<std::size_t>(m - i)](p, digits[static_cast<std::size_t>(i)]);
          next[idx * 16 + static_cast<std::size_t>(p)] = wgt * rv;
        }
      }
      ++m;
    } else {
      // Oldest pair q1 leaves the memory window and is summed out.
      const Table& far = f[static_cast<std::size_t>(m)];
      for (std::size_t rest_idx = 0; rest_idx < kept; ++rest_idx) {
        std::size_t rest = rest_idx;
        for (int i = m - 1; i >= 1; --i) {
          digits[static_cast<std::size_t>(i)] = static_cast<int>(rest % 16);
          rest /= 16;
        }
        for (int p = 0; p < 16; ++p) {
          cplx base = f0(p);
          if (m > 1) base *= kt(p, digits[static_cast<std::size_t>(m - 1)]);
          for (int i = 1; i < m; ++i) base *= f[static_cast<std::size_t>(m - i)](p, digits[static_cast<std::size_t>(i)]);
          cplx sum = 0.0;
          for (int q1 = 0; q1 < 16; ++q1) {
            cplx g = far(p, q1);
            if (m == 1) g *= kt(p, q1);
            sum += g * r[static_cast<std::size_t>(q1) * kept + rest_idx];
          }
          next[rest_idx * 16 + static_cast<std::size_t>(p)] = base * sum;
        }
      }
    }
    r.swap(next);
    w_prev = w;
    if (!observe(record(t0 + static_cast<double>(k + 1) * dt, readout(w)))) return;
  }
}

void sx_pair_basis(Mat4& basis, std::array<double, 4>& s1, std::array<double, 4>& s2) {
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::Matrix<cplx, 2, 2> x;
  x << h, h, h, -h;  // columns |+>, |->
  for (int a = 0; a < 4; ++a) {
    const int i1 = a / 2;
    const int i2 = a % 2;
    for (int r = 0; r < 4; ++r) basis(r, a) = x(r / 2, i1) * x(r % 2, i2);
    s1[static_cast<std::size_t>(a)] = i1 == 0 ? 1.0 : -1.0;
    s2[static_cast<std::size_t>(a)] = i2 == 0 ? 1.0 : -1.0;
  }
}

}  // namespace

TimeSeries quapi_propagate_general(const DensityMatrix& rho0, const Schedule& schedule, const QuapiParams& params,
                                   const Mat4& basis, const std::vector<PathBath>& baths) {
  TimeSeries out;
  propagate(rho0, schedule, params, basis, baths, [&](const TimeRecord& rec) {
    out.records.push_back(rec);
    return true;
  });
  return out;
}

TimeSeries quapi_propagate(const DensityMatrix& rho0, const Schedule& schedule, const QuapiParams& params,
                           const SpectralDensity& bath1, const SpectralDensity& bath2) {
  params.validate();
  Mat4 basis;
  std::array<double, 4> s1{};
  std::array<double, 4> s2{};
  sx_pair_basis(basis, s1, s2);
  std::vector<PathBath> baths{{s1, influence_coefficients(params, bath1)}, {s2, influence_coefficients(params, bath2)}};
  return quapi_propagate_general(rho0, schedule, params, basis, baths);
}

TimeSeries quapi_propagate(const DensityMatrix& rho0, const Schedule& schedule, const QuapiParams& params,
                           const SpectralDensity& sd) {
  return quapi_propagate(rho0, schedule, params, sd, sd);
}

DensityMatrix quapi_equilibrium(HamiltonianPoint point, const QuapiParams& params, const SpectralDensity& sd,
                                double t_relax, double tol) {
  params.validate();
  if (!(t_relax > 0.0)) throw DomainError("t_relax must be positive");
  const auto n = static_cast<std::size_t>(std::ceil(t_relax / params.dt_slice - 1e-9));
  const Schedule sched(0.0, params.dt_slice, std::vector<HamiltonianPoint>(n + 1, point));
  Mat4 basis;
  std::array<double, 4> s1{};
  std::array<double, 4> s2{};
  sx_pair_basis(basis, s1, s2);
  const InfluenceCoefficients c = influence_coefficients(params, sd);
  const std::vector<PathBath> baths{{s1, c}, {s2, c}};

  // From I/4 the first slices barely move, so convergence is only tested
  // once the memory window is full.
  std::optional<Mat4> prev;
  std::optional<DensityMatrix> result;
  double last = 0.0;
  std::size_t slice = 0;
  propagate(DensityMatrix::maximally_mixed(), sched, params, basis, baths, [&](const TimeRecord& rec) {
    if (prev && slice++ > static_cast<std::size_t>(params.dk) + 1) {
      last = trace_distance(*prev, rec.rho.matrix());
      if (last < tol) {
        result = rec.rho;
        return false;
      }
    }
    prev = rec.rho.matrix();
    return true;
  });
  if (!result) {
    std::ostringstream msg;
    msg << "quapi equilibrium not reached within t_relax = " << t_relax << "; last slice change " << last
        << " (tol " << tol << ")";
    throw ConvergenceError(msg.str());
  }
  return *result;
}

namespace {

// Least squares y = a + b x; returns a and the rms residual.
Extrapolated linear_intercept(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) <= 1e-14 * std::max(1.0, n * sxx)) throw InputError("extrapolation abscissae are degenerate");
  const double b = (n * sxy - sx * sy) / det;
  const double a = (sy - b * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - a - b * x[i];
    ss += r * r;
  }
  return {a, std::sqrt(ss / n)};
}

}  // namespace

Extrapolated extrapolate_dt(const std::vector<ExtrapolationPoint>& points) {
  if (points.size() < 3) throw InputError("dt extrapolation needs at least 3 dt_slice values");
  std::vector<double> x, y;
  for (const auto& p : points) {
    if (std::abs(p.t_mem - points.front().t_mem) > 1e-9 * std::abs(points.front().t_mem))
      throw InputError("dt extrapolation requires a common t_mem");
    x.push_back(p.dt_slice * p.dt_slice);
    y.push_back(p.value);
  }
  return linear_intercept(x, y);
}

Extrapolated extrapolate(const std::vector<ExtrapolationPoint>& points) {
  std::vector<std::vector<ExtrapolationPoint>> groups;
  for (const auto& p : points) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return std::abs(g.front().t_mem - p.t_mem) <= 1e-9 * std::abs(p.t_mem);
    });
    if (it == groups.end())
      groups.push_back({p});
    else
      it->push_back(p);
  }
  if (groups.size() < 3) throw InputError("t_mem extrapolation needs at least 3 t_mem values");
  std::vector<double> inv, a;
  double step1 = 0.0;
  for (const auto& g : groups) {
    const Extrapolated e = extrapolate_dt(g);
    if (!(g.front().t_mem > 0.0)) throw InputError("t_mem must be positive");
    inv.push_back(1.0 / g.front().t_mem);
    a.push_back(e.value);
    step1 = std::max(step1, e.uncertainty);
  }
  Extrapolated out = linear_intercept(inv, a);
  out.uncertainty = std::hypot(out.uncertainty, step1);
  return out;
}

}  // namespace dynent
