#include <doctest.h>

#include "dynent/errors.hpp"
#include "dynent/lindblad.hpp"
#include "dynent/quantum.hpp"
#include "dynent/spin_gas.hpp"
#include "support.hpp"

using namespace dynent;
using dynent::test::max_abs;

namespace {

Mat4 singlet() {
  Vec4 v = Vec4::Zero();
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

Mat4 werner(double p) { return p * singlet() + (1.0 - p) * Mat4::Identity() / 4.0; }

}  // namespace

TEST_SUITE("quantum-core") {
  TEST_CASE("wootters concurrence of reference states") {
    CHECK(wootters_concurrence(DensityMatrix::maximally_mixed()) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(wootters_concurrence(DensityMatrix::from_matrix(singlet())) == doctest::Approx(1.0).epsilon(1e-12));
    const DensityMatrix w = DensityMatrix::from_matrix(werner(0.5));
    CHECK(wootters_concurrence(w) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(test::wootters_brute_force(w.matrix()) == doctest::Approx(0.25).epsilon(1e-10));
    for (double p = 0.0; p <= 1.0; p += 0.05) {
      const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
      CHECK(std::abs(wootters_concurrence(DensityMatrix::from_matrix(werner(p))) - expected) < 1e-10);
    }
  }

  TEST_CASE("invalid states are rejected") {
    Mat4 m = Mat4::Identity() / 4.0;
    m(0, 1) = 0.1;  // not Hermitian
    CHECK_THROWS_AS(DensityMatrix::from_matrix(m), InvalidStateError);
    CHECK_THROWS_AS(DensityMatrix::from_matrix(Mat4::Identity() / 2.0), InvalidStateError);
    Mat4 neg = Mat4::Zero();
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix::from_matrix(neg), InvalidStateError);
  }

  TEST_CASE("x-state concurrence") {
    SpinGasParams half{0.025, 0.5};
    const DensityMatrix mixed = steady_state_closed_form({1.0, 1.0}, half).rho;
    CHECK(x_state_concurrence(mixed) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(x_state_concurrence(DensityMatrix::from_matrix(singlet())) == doctest::Approx(1.0).epsilon(1e-12));
    const DensityMatrix ss = steady_state_closed_form({2.0, 1.0}, {0.025, 0.05}).rho;
    CHECK(std::abs(x_state_concurrence(ss) - wootters_concurrence(ss)) < 1e-12);

    Rng rng(11);
    const DensityMatrix generic = DensityMatrix::from_matrix(test::random_density(rng));
    CHECK_THROWS_AS(x_state_concurrence(generic), StructureError);
  }

  TEST_CASE("trace distance examples") {
    Rng rng(3);
    const DensityMatrix rho = DensityMatrix::from_matrix(test::random_density(rng));
    CHECK(trace_distance(rho, rho) < 1e-14);
    CHECK(trace_distance(DensityMatrix::basis_state(0), DensityMatrix::basis_state(3)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(trace_distance(DensityMatrix::maximally_mixed(), DensityMatrix::basis_state(0)) ==
          doctest::Approx(0.75).epsilon(1e-14));
  }

  TEST_CASE("populations") {
    const Spectrum spec = spectrum({0.1, 1.2});
    const auto p = populations(DensityMatrix::from_pure(spec.states[0]), spec.states);
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 1; k < 4; ++k) CHECK(std::abs(p[k]) < 1e-12);
    for (double v : populations(DensityMatrix::maximally_mixed(), spec.states)) CHECK(v == doctest::Approx(0.25));

    // Gibbs ground population from the Boltzmann factors directly.
    const double E = std::sqrt(4.0 * 1.2 * 1.2 + 0.1 * 0.1);
    const double z = std::exp(E) + std::exp(0.1) + std::exp(-0.1) + std::exp(-E);
    const double p0 = populations(thermal_state({0.1, 1.2}, 1.0), spec.states)[0];
    CHECK(p0 == doctest::Approx(std::exp(E) / z).epsilon(1e-12));
    CHECK(std::abs(p0 - 0.85) < 0.01);

    std::array<PureState, 4> bad{PureState::basis(0), PureState::basis(0), PureState::basis(2), PureState::basis(3)};
    CHECK_THROWS_AS(populations(DensityMatrix::maximally_mixed(), bad), BasisError);
  }

  TEST_CASE("concurrence is invariant under local unitaries") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      const Mat4 rho = test::random_density(rng, 1 + trial % 4);
      const Mat4 u = ops::kron(test::random_unitary2(rng), test::random_unitary2(rng));
      const Mat4 rotated = u * rho * u.adjoint();
      const double c1 = wootters_concurrence(DensityMatrix::from_matrix(rho));
      const double c2 = wootters_concurrence(DensityMatrix::from_matrix(rotated));
      CHECK(std::abs(c1 - c2) < 1e-9);
      // The brute-force oracle square-roots round-off eigenvalues of rank-deficient states.
      if (trial % 4 == 3) CHECK(std::abs(c1 - test::wootters_brute_force(rho)) < 1e-9);
    }
  }

  TEST_CASE("product states are separable") {
    Rng rng(6);
    for (int trial = 0; trial < 200; ++trial) {
      const Mat4 rho = ops::kron(test::random_density2(rng), test::random_density2(rng));
      CHECK(wootters_concurrence(DensityMatrix::from_matrix(rho)) < 1e-9);
    }
  }

  TEST_CASE("x-state formula agrees with wootters on random X states") {
    Rng rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const DensityMatrix rho = DensityMatrix::from_matrix(test::random_x_state(rng));
      worst = std::max(worst, std::abs(x_state_concurrence(rho) - wootters_concurrence(rho)));
    }
    CHECK(worst < 1e-10);
  }

  TEST_CASE("trace distance is a metric") {
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      const DensityMatrix a = DensityMatrix::from_matrix(test::random_density(rng));
      const DensityMatrix b = DensityMatrix::from_matrix(test::random_density(rng));
      const DensityMatrix c = DensityMatrix::from_matrix(test::random_density(rng));
      const double ab = trace_distance(a, b);
      CHECK(std::abs(ab - trace_distance(b, a)) < 1e-14);
      CHECK(ab > 1e-6);
      CHECK(trace_distance(a, a) < 1e-12);
      CHECK(trace_distance(a, c) <= ab + trace_distance(b, c) + 1e-12);
      CHECK(ab <= 1.0 + 1e-12);
    }
  }

  TEST_CASE("populations of random states sum to one") {
    Rng rng(9);
    for (int trial = 0; trial < 200; ++trial) {
      const DensityMatrix rho = DensityMatrix::from_matrix(test::random_density(rng));
      const Spectrum spec = spectrum({5.0 * rng.uniform(), 5.0 * rng.uniform() - 2.5});
      const auto p = populations(rho, spec.states);
      double sum = 0.0;
      for (double v : p) {
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
        sum += v;
      }
      CHECK(std::abs(sum - 1.0) < 1e-9);
    }
  }

  TEST_CASE("superoperator vectorization convention") {
    Rng rng(10);
    const Mat4 a = test::random_density(rng);
    const Mat4 b = test::random_density(rng);
    const Mat4 x = test::random_density(rng);
    CHECK(max_abs(superop::unvec(superop::sandwich(a, b) * superop::vec(x)) - a * x * b) < 1e-14);
    const Mat4 h = test::explicit_hamiltonian(0.7, -0.3);
    const Mat4 comm = cplx(0, -1) * (h * x - x * h);
    CHECK(max_abs(superop::apply(superop::commutator(h), x) - comm) < 1e-14);
  }
}
