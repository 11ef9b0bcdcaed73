#include "dynent/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "dynent/errors.hpp"

namespace dynent {

namespace ops {

Mat2 pauli_x() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Mat2 pauli_y() {
  Mat2 m;
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}

Mat2 pauli_z() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Mat2 sigma_plus() {
  Mat2 m;
  m << 0.0, 1.0, 0.0, 0.0;
  return m;
}

Mat2 sigma_minus() {
  Mat2 m;
  m << 0.0, 0.0, 1.0, 0.0;
  return m;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Mat4 on_spin(const Mat2& op, int spin) {
  if (spin == 1) return kron(op, Mat2::Identity());
  if (spin == 2) return kron(Mat2::Identity(), op);
  throw DomainError("spin index must be 1 or 2, got " + std::to_string(spin));
}

Mat4 sigma_x(int spin) { return on_spin(pauli_x(), spin); }
Mat4 sigma_y(int spin) { return on_spin(pauli_y(), spin); }
Mat4 sigma_z(int spin) { return on_spin(pauli_z(), spin); }
Mat4 sigma_plus(int spin) { return on_spin(sigma_plus(), spin); }
Mat4 sigma_minus(int spin) { return on_spin(sigma_minus(), spin); }

Mat4 spin_flip() { return kron(pauli_y(), pauli_y()); }

}  // namespace ops

namespace superop {

Vec16 vec(const Mat4& m) {
  Vec16 v;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) v(4 * c + r) = m(r, c);
  return v;
}

Mat4 unvec(const Vec16& v) {
  Mat4 m;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) m(r, c) = v(4 * c + r);
  return m;
}

Superoperator sandwich(const Mat4& a, const Mat4& b) {
  // vec(A X B) = (B^T (x) A) vec(X)
  Superoperator s;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s.block<4, 4>(4 * i, 4 * j) = b(j, i) * a;
  return s;
}

Superoperator left(const Mat4& a) { return sandwich(a, Mat4::Identity()); }
Superoperator right(const Mat4& b) { return sandwich(Mat4::Identity(), b); }

Superoperator commutator(const Mat4& h) {
  return cplx(0.0, -1.0) * (left(h) - right(h));
}

Superoperator lindblad_term(const Mat4& jump) {
  const Mat4 dag = jump.adjoint();
  const Mat4 dd = dag * jump;
  return 2.0 * sandwich(jump, dag) - left(dd) - right(dd);
}

Mat4 apply(const Superoperator& s, const Mat4& rho) { return unvec(s * vec(rho)); }

}  // namespace superop

PureState PureState::from_vector(const Vec4& v, double tol) {
  const double n = v.norm();
  if (!(std::abs(n - 1.0) <= tol)) {
    std::ostringstream msg;
    msg << "pure state norm " << n << " deviates from 1 by more than " << tol;
    throw InvalidStateError(msg.str());
  }
  return PureState(v);
}

PureState PureState::normalized(const Vec4& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw InvalidStateError("cannot normalize a zero vector");
  return PureState(v / n);
}

PureState PureState::basis(int index) {
  Vec4 v = Vec4::Zero();
  v(index) = 1.0;
  return PureState(v);
}

double hermiticity_defect(const Mat4& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

Eigen::Vector4d hermitian_eigenvalues(const Mat4& m) {
  const Mat4 h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat4> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

std::string state_defect(const Mat4& m, const StateTolerance& tol) {
  if (!m.allFinite()) return "state contains non-finite entries";
  std::ostringstream msg;
  const double herm = hermiticity_defect(m);
  if (herm > tol.hermiticity) {
    msg << "not Hermitian: max|rho - rho^dag| = " << herm << " > " << tol.hermiticity;
    return msg.str();
  }
  const cplx tr = m.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    msg << "trace " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag()
        << "i deviates from 1 by more than " << tol.trace;
    return msg.str();
  }
  const double min_eig = hermitian_eigenvalues(m).minCoeff();
  if (min_eig < -tol.positivity) {
    msg << "not positive semidefinite: min eigenvalue " << min_eig << " < " << -tol.positivity;
    return msg.str();
  }
  return {};
}

DensityMatrix DensityMatrix::from_matrix(const Mat4& m, StateTolerance tol) {
  if (auto defect = state_defect(m, tol); !defect.empty()) throw InvalidStateError(defect);
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.vector() * psi.vector().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(0.25 * Mat4::Identity()); }

DensityMatrix DensityMatrix::basis_state(int index) {
  return from_pure(PureState::basis(index));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

namespace {

double clamp_concurrence(double c) {
  if (c < 0.0) return 0.0;
  if (c > 1.0) {
    if (c - 1.0 > 1e-9) {
      std::ostringstream msg;
      msg << "concurrence " << c << " exceeds 1 beyond round-off";
      throw NumericError(msg.str());
    }
    return 1.0;
  }
  return c;
}

// Factor W with rho = W W^dag. Eigenvalues within a few ulps of zero are
// round-off of a rank-deficient state and are dropped; keeping them would
// enter the concurrence through their square roots (~1e-8).
Mat4 density_factor(const Mat4& m) {
  Eigen::SelfAdjointEigenSolver<Mat4> solver(0.5 * (m + m.adjoint()));
  const Eigen::Vector4d lam = solver.eigenvalues();
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, lam.cwiseAbs().maxCoeff());
  Eigen::Vector4d root;
  for (int k = 0; k < 4; ++k) root(k) = lam(k) > floor ? std::sqrt(lam(k)) : 0.0;
  return solver.eigenvectors() * root.cast<cplx>().asDiagonal();
}

}  // namespace

double wootters_concurrence(const DensityMatrix& rho) {
  // With rho = W W^dag, the square roots of eig(rho * rho~) are the singular
  // values of the complex symmetric matrix W^T (sy sy) W.
  const Mat4 w = density_factor(rho.matrix());
  const Mat4 tau = w.transpose() * ops::spin_flip() * w;
  Eigen::Vector4d lam = Eigen::JacobiSVD<Mat4>(tau).singularValues();
  std::sort(lam.data(), lam.data() + 4, std::greater<>());
  return clamp_concurrence(lam(0) - lam(1) - lam(2) - lam(3));
}

double x_state_concurrence(const DensityMatrix& rho, double tol) {
  const Mat4& r = rho.matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j || i + j == 3) continue;
      if (std::abs(r(i, j)) > tol) {
        std::ostringstream msg;
        msg << "state is not X-structured: |rho(" << i << "," << j << ")| = " << std::abs(r(i, j));
        throw StructureError(msg.str());
      }
    }
  }
  const auto diag = [&](int i) { return std::max(0.0, r(i, i).real()); };
  const double a = std::abs(r(0, 3)) - std::sqrt(diag(1) * diag(2));
  const double b = std::abs(r(1, 2)) - std::sqrt(diag(0) * diag(3));
  return clamp_concurrence(2.0 * std::max({0.0, a, b}));
}

double trace_distance(const Mat4& a, const Mat4& b) {
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.matrix(), b.matrix());
}

std::array<double, 4> populations(const DensityMatrix& rho, const std::array<PureState, 4>& basis) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const cplx overlap = basis[i].vector().dot(basis[j].vector());
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > 1e-10) {
        std::ostringstream msg;
        msg << "basis is not orthonormal: <e" << i << "|e" << j << "> = " << std::abs(overlap);
        throw BasisError(msg.str());
      }
    }
  }
  std::array<double, 4> p{};
  for (int k = 0; k < 4; ++k) {
    const Vec4& e = basis[k].vector();
    p[k] = std::clamp((e.adjoint() * rho.matrix() * e)(0).real(), 0.0, 1.0);
  }
  return p;
}

}  // namespace dynent
