// Random states and independent oracles shared by the test binaries. The
// oracles use generic numerical routes (dense eigensolvers, matrix
// exponentials) rather than the closed forms under test.
#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dynent/model.hpp"
#include "dynent/quantum.hpp"
#include "dynent/rng.hpp"

namespace dynent::test {

inline cplx gaussian_complex(Rng& rng) { return {rng.normal(), rng.normal()}; }

/// G G^dag / tr for a 4 x rank Ginibre matrix.
inline Mat4 random_density(Rng& rng, int rank = 4) {
  Eigen::Matrix<cplx, 4, Eigen::Dynamic> g(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = gaussian_complex(rng);
  Mat4 m = g * g.adjoint();
  return m / m.trace().real();
}

inline Mat2 random_density2(Rng& rng) {
  Mat2 g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = gaussian_complex(rng);
  Mat2 m = g * g.adjoint();
  return m / m.trace().real();
}

/// Haar-ish 2x2 unitary from the QR decomposition of a Ginibre matrix.
inline Mat2 random_unitary2(Rng& rng) {
  Mat2 g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = gaussian_complex(rng);
  Eigen::HouseholderQR<Mat2> qr(g);
  return qr.householderQ();
}

/// Random valid X state: |rho03| <= sqrt(p0 p3), |rho12| <= sqrt(p1 p2).
inline Mat4 random_x_state(Rng& rng) {
  double p[4];
  double sum = 0.0;
  for (double& v : p) {
    v = rng.uniform() + 1e-3;
    sum += v;
  }
  for (double& v : p) v /= sum;
  const double r03 = rng.uniform() * std::sqrt(p[0] * p[3]);
  const double r12 = rng.uniform() * std::sqrt(p[1] * p[2]);
  const double a = 2.0 * M_PI * rng.uniform();
  const double b = 2.0 * M_PI * rng.uniform();
  Mat4 m = Mat4::Zero();
  for (int i = 0; i < 4; ++i) m(i, i) = p[i];
  m(0, 3) = std::polar(r03, a);
  m(3, 0) = std::conj(m(0, 3));
  m(1, 2) = std::polar(r12, b);
  m(2, 1) = std::conj(m(1, 2));
  return m;
}

/// Explicit J sx sx + B (sz1 + sz2), built entry by entry.
inline Mat4 explicit_hamiltonian(double J, double B) {
  Mat4 h = Mat4::Zero();
  h(0, 0) = 2.0 * B;
  h(3, 3) = -2.0 * B;
  h(0, 3) = h(3, 0) = J;
  h(1, 2) = h(2, 1) = J;
  return h;
}

/// exp(-beta H) / Z through a dense eigensolver.
inline Mat4 gibbs_numeric(double J, double B, double beta) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(explicit_hamiltonian(J, B));
  Eigen::Vector4d w;
  for (int i = 0; i < 4; ++i) w(i) = std::exp(-beta * (es.eigenvalues()(i) - es.eigenvalues()(0)));
  w /= w.sum();
  return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

/// exp(-i H t) through a dense eigensolver.
inline Mat4 unitary_numeric(const Mat4& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat4> es(h);
  Vec4 phases;
  for (int i = 0; i < 4; ++i) phases(i) = std::exp(cplx(0.0, -es.eigenvalues()(i) * t));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Wootters concurrence from the non-Hermitian product rho (sy sy) rho* (sy sy).
inline double wootters_brute_force(const Mat4& rho) {
  Mat4 yy = Mat4::Zero();
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  const Mat4 r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Mat4> es(r);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace dynent::test
