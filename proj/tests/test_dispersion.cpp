#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "scatter1d/dispersion.hpp"
#include "scatter1d/errors.hpp"
#include "scatter1d/io.hpp"

using namespace scatter1d;

namespace {
constexpr double kPi = std::numbers::pi;

ReflectionRatio zero_data() {
  std::vector<double> kg;
  std::vector<Complex> vals;
  for (int i = 1; i <= 400; ++i) {
    kg.push_back(0.05 * i);
    vals.emplace_back(0.0, 0.0);
  }
  return ReflectionRatio::sampled(std::move(kg), std::move(vals));
}
}  // namespace

TEST_CASE("classification across the generic/exceptional dichotomy") {
  const Classification odd = classify(ReflectionRatio::square_well(5.0));
  CHECK(odd.kind == Classification::Kind::GenericOdd);
  CHECK(odd.zero_limit ==
        doctest::Approx(-std::sqrt(5.0) * std::sin(std::sqrt(5.0))).epsilon(1e-6));

  const Classification even = classify(ReflectionRatio::square_well(20.0));
  CHECK(even.kind == Classification::Kind::GenericEven);

  const Classification ex = classify(ReflectionRatio::square_well(kPi * kPi));
  CHECK(ex.kind == Classification::Kind::Exceptional);
  CHECK(std::abs(ex.zero_limit) <= 1e-6);

  // the potential-backed route agrees with the model
  const Classification via_ode = classify(ReflectionRatio::from_potential(Potential{SquareWell{5.0}}));
  CHECK(via_ode.kind == Classification::Kind::GenericOdd);
  CHECK(via_ode.zero_limit == doctest::Approx(odd.zero_limit).epsilon(1e-5));
}

TEST_CASE("odd-multiplicity zero counts on the positive imaginary axis") {
  CHECK(count_odd_zeros(ReflectionRatio::square_well(5.0)) == 0);
  CHECK(count_odd_zeros(ReflectionRatio::square_well(20.0)) == 1);
  CHECK(count_odd_zeros(ReflectionRatio::square_well(130.0)) == 3);
  // the would-be zero at the kappa = 0 edge stays excluded
  CHECK(count_odd_zeros(ReflectionRatio::square_well(kPi * kPi)) == 0);
  CHECK_THROWS_AS(count_odd_zeros(zero_data()), AnalyticModelRequired);
}

TEST_CASE("dispersion construction: trivial data gives T0 = 1") {
  const ReflectionRatio d = zero_data();
  for (Complex k : {Complex(1.0, 0.0), Complex(2.0, 1.0)}) {
    const TzeroResult r = tzero_integral(d, k);
    CHECK(std::abs(r.value - 1.0) <= 1e-9);
  }
}

TEST_CASE("dispersion construction matches the closed form off and on the axis") {
  for (double eps : {5.0, 20.0}) {
    const ReflectionRatio d = ReflectionRatio::square_well(eps);
    for (Complex k : {Complex(0.5, 0.0), Complex(1.0, 0.5), Complex(2.0, 1.7), Complex(0.7, 2.0)}) {
      const TzeroResult got = tzero_integral(d, k);
      const Complex want = tzero_closed_form(eps, k);
      CHECK(std::abs(got.value - want) <= 1e-4);
    }
  }
}

TEST_CASE("real-axis modulus identity |T0|^2 (1+|D|^2) = 1") {
  const ReflectionRatio d = ReflectionRatio::square_well(5.0);
  for (double k : {0.5, 1.0, 2.5, 4.0}) {
    const TzeroResult r = tzero_integral(d, Complex(k, 0.0));
    const double lhs = std::norm(r.value) * (1.0 + std::norm(d.eval_real(k)));
    CHECK(std::abs(lhs - 1.0) <= 1e-6);
  }
}

TEST_CASE("dispersion symmetry and convergence controls") {
  const ReflectionRatio d = ReflectionRatio::square_well(5.0);
  const Complex k(1.3, 0.8);
  const TzeroResult a = tzero_integral(d, k);
  const TzeroResult b = tzero_integral(d, -std::conj(k));
  CHECK(std::abs(b.value - std::conj(a.value)) <= 1e-6);

  const TzeroResult tight = tzero_integral(d, k, 1e-9);
  CHECK(std::abs(tight.value - a.value) <= std::max(a.abs_error, 1e-9));
}

TEST_CASE("closed form: unimodular blaschke factors and lower-axis reality") {
  const SquareWellTzero& swt = square_well_tzero(5.0);
  REQUIRE(swt.xi().size() == 1);
  for (double k : {0.4, 1.0, 3.0}) {
    CHECK(std::abs(std::abs(swt.value(Complex(k, 0.0))) -
                   1.0 / std::abs(swt.inv_tau(Complex(k, 0.0)))) <= 1e-12);
  }
  // 1/T0 has no zeros left on the upper imaginary axis
  for (int i = 1; i <= 400; ++i) {
    const double kap = 4.0 * i / 400.0;
    CHECK(std::abs(swt.inverse(Complex(0.0, kap))) > 1e-4);
  }
  // and is real on the lower one
  for (double beta : {0.3, 1.2, 2.9}) {
    const Complex v = swt.inverse(Complex(0.0, -beta));
    CHECK(std::abs(v.imag()) <= 1e-8 * std::max(1.0, std::abs(v.real())));
  }
  // reported zeros on the lower axis
  CHECK(std::abs(swt.inverse(Complex(0.0, -1.54334))) <= 1e-3);
  CHECK(std::abs(swt.inverse(Complex(0.0, -1.5857))) <= 1e-3);
}

TEST_CASE("reflection recovery: formulas, branches, unitarity") {
  const double eps = 5.0;
  const ReflectionRatio d = ReflectionRatio::square_well(eps);
  const SquareWellTzero& swt = square_well_tzero(eps);
  const std::vector<double> kgrid = {0.6, 1.2, 2.4};
  std::vector<Complex> t0;
  for (double k : kgrid) t0.push_back(swt.value(Complex(k, 0.0)));

  // the beta_2 candidate is the well itself: (3.2) must reproduce its L
  const double xi = swt.xi().front();
  const ReflectionRecovery rec =
      reflection_from_D(d, kgrid, t0, std::vector<double>{xi});
  const ScatteringCoefficients fwd =
      scattering_coefficients(Potential{SquareWell{eps}}, kgrid);
  for (std::size_t i = 0; i < kgrid.size(); ++i) {
    CHECK(std::abs(rec.L[i] - fwd.L[i]) <= 1e-5);
    // |T^[N]|^2 + |L|^2 = 1 with T^[N] = T0 * blaschke
    const Complex k(kgrid[i], 0.0);
    const Complex tn = t0[i] * (k + Complex(0, xi)) / (k - Complex(0, xi));
    CHECK(std::abs(std::norm(tn) + std::norm(rec.L[i]) - 1.0) <= 1e-5);
  }
  CHECK(rec.L0_alt.empty());  // generic case has a single branch

  // parity guard
  CHECK_THROWS_AS(reflection_from_D(ReflectionRatio::square_well(20.0), kgrid, t0,
                                    std::vector<double>{1.0}),
                  ParityMismatch);

  // the exceptional case carries both sign branches
  const ReflectionRatio dex = ReflectionRatio::square_well(kPi * kPi);
  const ReflectionRecovery both = reflection_from_D(dex, kgrid, t0, {});
  CHECK(both.exceptional);
  REQUIRE(both.L0_alt.size() == kgrid.size());
  for (std::size_t i = 0; i < kgrid.size(); ++i)
    CHECK(std::abs(both.L0[i] + both.L0_alt[i]) <= 1e-12);
}

TEST_CASE("sampled ratio data io round trip") {
  std::vector<double> kg = {0.5, 1.0, 1.5};
  std::vector<Complex> vals = {{0.1, -0.2}, {0.05, 0.01}, {-0.02, 0.0}};
  std::ostringstream os;
  write_ratio_csv(os, kg, vals);
  CHECK(os.str().rfind("k,reD,imD\n", 0) == 0);

  const ReflectionRatio d = ReflectionRatio::sampled(kg, vals);
  CHECK(d.eval_real(1.0) == vals[1]);
  CHECK(d.eval_real(-1.0) == std::conj(vals[1]));
  CHECK(d.eval_real(0.75).real() == doctest::Approx(0.075).epsilon(1e-12));
  CHECK(d.eval_real(0.75).imag() == doctest::Approx(-0.095).epsilon(1e-12));
  CHECK_THROWS_AS(d.eval(Complex(1.0, 1.0)), AnalyticModelRequired);
}
