// Two-qubit linear algebra: states, Pauli operators, superoperator helpers,
// concurrence and distance measures.
//
// Basis ordering is |00>, |01>, |10>, |11> with qubit 1 as the left tensor
// factor. sigma_z|0> = +|0>.
#pragma once

#include <array>
#include <complex>
#include <string>

#include <Eigen/Dense>

namespace dynent {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix<cplx, 2, 2>;
using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Vec4 = Eigen::Matrix<cplx, 4, 1>;
using Mat16 = Eigen::Matrix<cplx, 16, 16>;
using Vec16 = Eigen::Matrix<cplx, 16, 1>;

/// Linear map on 4x4 matrices acting on column-stacked vec(rho).
using Superoperator = Mat16;

namespace ops {

Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
/// sigma_+ = |0><1|, sigma_- = |1><0|.
Mat2 sigma_plus();
Mat2 sigma_minus();

/// Embeds a single-spin operator on `spin` (1 or 2).
Mat4 on_spin(const Mat2& op, int spin);
Mat4 kron(const Mat2& a, const Mat2& b);

Mat4 sigma_x(int spin);
Mat4 sigma_y(int spin);
Mat4 sigma_z(int spin);
Mat4 sigma_plus(int spin);
Mat4 sigma_minus(int spin);

/// sigma_y (x) sigma_y, the spin-flip operator of the concurrence.
Mat4 spin_flip();

}  // namespace ops

namespace superop {

Vec16 vec(const Mat4& m);
Mat4 unvec(const Vec16& v);

/// vec(A rho B) = sandwich(A, B) vec(rho).
Superoperator sandwich(const Mat4& a, const Mat4& b);
Superoperator left(const Mat4& a);
Superoperator right(const Mat4& b);
/// rho -> -i [H, rho]
Superoperator commutator(const Mat4& h);
/// rho -> 2 L rho L^dag - {L^dag L, rho}
Superoperator lindblad_term(const Mat4& jump);

Mat4 apply(const Superoperator& s, const Mat4& rho);

}  // namespace superop

struct StateTolerance {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double positivity = 1e-9;
};

/// Normalized 4-component state vector.
class PureState {
 public:
  /// Rejects vectors whose norm deviates from 1 by more than `tol`.
  static PureState from_vector(const Vec4& v, double tol = 1e-12);
  /// Normalizes `v`; throws on a zero vector.
  static PureState normalized(const Vec4& v);
  static PureState basis(int index);

  const Vec4& vector() const noexcept { return v_; }
  cplx operator[](int i) const { return v_(i); }

 private:
  explicit PureState(const Vec4& v) : v_(v) {}
  Vec4 v_;
};

/// Hermitian, unit-trace, positive semidefinite 4x4 matrix.
class DensityMatrix {
 public:
  /// Validates against `tol` and stores the Hermitian part of `m`.
  static DensityMatrix from_matrix(const Mat4& m, StateTolerance tol = {});
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed();
  static DensityMatrix basis_state(int index);

  const Mat4& matrix() const noexcept { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }
  double purity() const;

 private:
  explicit DensityMatrix(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

/// Eigenvalues (ascending) of the Hermitian part of `m`.
Eigen::Vector4d hermitian_eigenvalues(const Mat4& m);

/// Maximum elementwise |m - m^dag|.
double hermiticity_defect(const Mat4& m);

/// Checks `m` against the density matrix invariants; the message names the
/// violated invariant. Returns an empty string for a valid state.
std::string state_defect(const Mat4& m, const StateTolerance& tol);

/// Wootters concurrence max{0, l1 - l2 - l3 - l4}.
double wootters_concurrence(const DensityMatrix& rho);

/// Closed-form concurrence of an X-structured state. Throws StructureError
/// when an entry outside the diagonal and anti-diagonal exceeds `tol`.
double x_state_concurrence(const DensityMatrix& rho, double tol = 1e-10);

/// (1/2) sum |eig(a - b)|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double trace_distance(const Mat4& a, const Mat4& b);

/// p_k = <e_k|rho|e_k> for an orthonormal basis.
std::array<double, 4> populations(const DensityMatrix& rho,
                                  const std::array<PureState, 4>& basis);

}  // namespace dynent
