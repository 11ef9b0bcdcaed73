#include <doctest.h>

#include <sstream>

#include "dynent/errors.hpp"
#include "dynent/model.hpp"
#include "dynent/motion.hpp"
#include "support.hpp"

using namespace dynent;

namespace {

const ModelParams kCaption{1.3, 2.4, 120.0, 1.0e4};

// Closed-form energies and vectors against a dense eigensolver.
struct SpectrumCheck {
  double energy_error = 0.0;
  double min_overlap = 1.0;
};

SpectrumCheck compare_with_numeric(HamiltonianPoint p) {
  SpectrumCheck out;
  const Spectrum spec = spectrum(p);
  const Mat4 h = test::explicit_hamiltonian(p.J, p.B);
  Eigen::SelfAdjointEigenSolver<Mat4> es(h);
  for (int k = 0; k < 4; ++k) {
    out.energy_error = std::max(out.energy_error, std::abs(spec.eps[k] - es.eigenvalues()(k)));
    const Vec4& v = spec.states[k].vector();
    out.energy_error = std::max(out.energy_error, (h * v - spec.eps[k] * v).norm());
    // Overlap with the numeric eigenspace (handles accidental degeneracy).
    double overlap2 = 0.0;
    for (int j = 0; j < 4; ++j)
      if (std::abs(es.eigenvalues()(j) - spec.eps[k]) < 1e-8) overlap2 += std::norm(es.eigenvectors().col(j).dot(v));
    out.min_overlap = std::min(out.min_overlap, std::sqrt(overlap2));
  }
  return out;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("coupling strength") {
    CHECK(coupling_strength(10.0, kCaption) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(coupling_strength(40.0, kCaption) == doctest::Approx(0.15625).epsilon(1e-15));
    CHECK(coupling_strength(1e6, kCaption) < 1e-13);
    CHECK_THROWS_AS(coupling_strength(0.0, kCaption), DomainError);
    CHECK_THROWS_AS(coupling_strength(-1.0, kCaption), DomainError);
    for (double d = 1.0; d < 100.0; d += 0.5) CHECK(coupling_strength(d + 0.5, kCaption) < coupling_strength(d, kCaption));
  }

  TEST_CASE("local field") {
    CHECK(local_field(1e4, kCaption) == doctest::Approx(1.3).epsilon(1e-15));
    CHECK(local_field(0.0, kCaption) == doctest::Approx(-1.1).epsilon(1e-15));
    CHECK(local_field(40.0, kCaption) == doctest::Approx(1.3 - 2.4 * std::exp(-1600.0 / 480.0)).epsilon(1e-15));
    CHECK(local_field(40.0, kCaption) == doctest::Approx(1.2145).epsilon(1e-4));
    for (double d = 0.5; d < 100.0; d += 0.5) CHECK(local_field(d + 0.5, kCaption) > local_field(d, kCaption));
  }

  TEST_CASE("spectrum examples") {
    const Spectrum decoupled = spectrum({0.0, 1.0});
    CHECK(decoupled.eps[0] == doctest::Approx(-2.0));
    CHECK(decoupled.eps[1] == doctest::Approx(0.0));
    CHECK(decoupled.eps[2] == doctest::Approx(0.0));
    CHECK(decoupled.eps[3] == doctest::Approx(2.0));
    CHECK(decoupled.eta == 0.0);
    CHECK(std::abs(decoupled.states[0][3]) == doctest::Approx(1.0));

    const Spectrum ising = spectrum({1.0, 0.0});
    CHECK(ising.eps[0] == doctest::Approx(-1.0));
    CHECK(ising.eps[1] == doctest::Approx(-1.0));
    CHECK(ising.eps[2] == doctest::Approx(1.0));
    CHECK(ising.eps[3] == doctest::Approx(1.0));
    CHECK(ising.eta == doctest::Approx(1.0));
    CHECK(ising.states[0][0].real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK(ising.states[0][3].real() == doctest::Approx(1.0 / std::sqrt(2.0)));

    const Spectrum s32 = spectrum({3.0, 2.0});
    CHECK(s32.E == doctest::Approx(5.0));
    CHECK(s32.eps[0] == doctest::Approx(-5.0));
    CHECK(s32.eps[1] == doctest::Approx(-3.0));
    CHECK(s32.eps[2] == doctest::Approx(3.0));
    CHECK(s32.eps[3] == doctest::Approx(5.0));
    CHECK(s32.eta == doctest::Approx(1.0 / 3.0));
    const SpectrumCheck chk = compare_with_numeric({3.0, 2.0});
    CHECK(chk.energy_error < 1e-10);
    CHECK(chk.min_overlap > 1.0 - 1e-9);
  }

  TEST_CASE("closed-form spectrum matches numerical diagonalization") {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
      const HamiltonianPoint p{5.0 * (1.0 - rng.uniform()), 5.0 * (1.0 - rng.uniform())};
      const SpectrumCheck chk = compare_with_numeric(p);
      CHECK(chk.energy_error < 1e-10);
      CHECK(chk.min_overlap > 1.0 - 1e-9);
    }
  }

  TEST_CASE("ground-state concurrence") {
    CHECK(ground_state_concurrence({0.0, 1.0}) == 0.0);
    CHECK(ground_state_concurrence({1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(ground_state_concurrence({3.0, 2.0}) == doctest::Approx(0.6).epsilon(1e-15));
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
      const HamiltonianPoint p{5.0 * rng.uniform(), 5.0 * rng.uniform() - 2.5};
      const DensityMatrix g = DensityMatrix::from_pure(spectrum(p).states[0]);
      CHECK(std::abs(ground_state_concurrence(p) - wootters_concurrence(g)) < 1e-12);
    }
    for (double B = 0.1; B < 3.0; B += 0.3)
      for (double J = 0.1; J < 3.0; J += 0.1) {
        CHECK(ground_state_concurrence({J + 0.1, B}) > ground_state_concurrence({J, B}));
        CHECK(ground_state_concurrence({B, J + 0.1}) < ground_state_concurrence({B, J}));
      }
  }

  TEST_CASE("adiabaticity ratio") {
    const Schedule flat = static_schedule({0.5, 1.0}, 0.1, 10.0);
    for (std::size_t i = 1; i + 1 < flat.size(); ++i) CHECK(adiabaticity_ratio(flat, i) == 0.0);
    CHECK_THROWS_AS(adiabaticity_ratio(flat, 0), RangeError);
    CHECK_THROWS_AS(adiabaticity_ratio(flat, flat.size() - 1), RangeError);

    const PeriodicMotion motion{-20.0, 20.0, 5.0, 100.0};
    const Schedule cycle = periodic_schedule(motion, kCaption, motion.tau / 1000.0, 1);
    CHECK(max_adiabaticity_ratio(cycle) < 0.05);
    const Schedule ramp = ramp_schedule({0.1, 1.2, 0.01, 100.0}, 0.1, 200.0);
    CHECK(max_adiabaticity_ratio(ramp) < 0.05);
  }

  TEST_CASE("eigenvectors carry no geometric phase") {
    const PeriodicMotion motion{-20.0, 20.0, 5.0, 100.0};
    const Schedule cycle = periodic_schedule(motion, kCaption, 0.05, 1);
    const Schedule ramp = ramp_schedule({0.1, 1.2, 0.01, 100.0}, 0.05, 150.0);
    for (const Schedule* s : {&cycle, &ramp}) {
      const double h = s->spacing();
      for (std::size_t i = 1; i + 1 < s->size(); i += 7) {
        const Spectrum prev = spectrum(s->point(i - 1));
        const Spectrum here = spectrum(s->point(i));
        const Spectrum next = spectrum(s->point(i + 1));
        for (int k = 0; k < 4; ++k) {
          const Vec4 deriv = (next.states[k].vector() - prev.states[k].vector()) / (2.0 * h);
          CHECK(std::abs(here.states[k].vector().dot(deriv)) < 1e-6);
        }
      }
    }
  }

  TEST_CASE("schedule CSV round trip") {
    const PeriodicMotion motion{-20.0, 20.0, 5.0, 100.0};
    const Schedule cycle = periodic_schedule(motion, kCaption, 0.5, 1);
    std::stringstream ss;
    cycle.write_csv(ss);
    CHECK(ss.str().rfind("t,d,J,B\n", 0) == 0);
    const Schedule back = Schedule::read_csv(ss);
    REQUIRE(back.size() == cycle.size());
    CHECK(back.has_distance());
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      CHECK(back.point(i).J == doctest::Approx(cycle.point(i).J).epsilon(1e-11));
      CHECK(back.point(i).B == doctest::Approx(cycle.point(i).B).epsilon(1e-11));
    }
    std::stringstream bad("t,d,J,B\n0,,1\n");
    CHECK_THROWS_AS(Schedule::read_csv(bad), IoError);
  }
}
