#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "scatter1d/darboux.hpp"
#include "scatter1d/errors.hpp"
#include "scatter1d/quadrature.hpp"

using namespace scatter1d;

namespace {
constexpr double kPi = std::numbers::pi;

// smooth compactly supported bump a*exp(-1/(1-u^2)), u = (x-c)/w
Potential bump_grid(double amplitude, double center, double width, double dx) {
  SampledGrid g;
  g.x0 = 0.0;
  g.dx = dx;
  const auto n = static_cast<std::size_t>(std::llround(1.0 / dx)) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.dx * static_cast<double>(i);
    const double u = (x - center) / width;
    g.samples.push_back(std::abs(u) < 1.0 ? amplitude * std::exp(-1.0 / (1.0 - u * u)) : 0.0);
  }
  return Potential(std::move(g));
}

double max_diff_on_support(const Potential& a, const Potential& b, double lo, double hi) {
  double worst = 0.0;
  const int n = 2000;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / n;
    worst = std::max(worst, std::abs(a(x) - b(x)));
  }
  return worst;
}
}  // namespace

TEST_CASE("free-space addition produces the one-soliton well") {
  const DarbouxAddition added = add_bound_state(Potential::zero(0.0, 1.0), 1.0, 1.0);
  const auto& g = std::get<SampledGrid>(added.potential.form());
  double worst = 0.0;
  for (std::size_t i = 0; i < g.samples.size(); ++i) {
    const double x = g.x0 + g.dx * static_cast<double>(i);
    const double c = std::cosh(x);
    worst = std::max(worst, std::abs(g.samples[i] + 2.0 / (c * c)));
  }
  CHECK(worst <= 1e-6);

  // chi > 0 and mu -> +-kappa at the ends
  for (double c : added.step.chi.samples) CHECK(c > 0.0);
  CHECK(added.step.mu.samples.back() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(added.step.mu.samples.front() == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("blaschke relations after one addition") {
  const Potential base{PiecewiseConstant{{0.0, 0.6, 1.0}, {1.5, -0.8}}};
  const double kappa = 0.9, gamma = 1.1;
  const Potential lifted = add_bound_state(base, kappa, gamma).potential;

  const std::vector<double> kgrid = {0.5, 1.1, 2.3};
  const ScatteringCoefficients before = scattering_coefficients(base, kgrid);
  const ScatteringCoefficients after = scattering_coefficients(lifted, kgrid);
  for (std::size_t i = 0; i < kgrid.size(); ++i) {
    const Complex k(kgrid[i], 0.0);
    const Complex blaschke = (k + Complex(0, kappa)) / (k - Complex(0, kappa));
    CHECK(std::abs(after.T[i] / blaschke - before.T[i]) <= 1e-6);
    CHECK(std::abs(after.L[i] + before.L[i] * blaschke) <= 1e-6);
  }
}

TEST_CASE("addition preconditions") {
  CHECK_THROWS_AS(add_bound_state(Potential::zero(), -1.0, 1.0), BadInput);
  CHECK_THROWS_AS(add_bound_state(Potential::zero(), 1.0, 0.0), BadInput);
  // the eps=5 well holds a state at ~1.586; adding below it is refused
  CHECK_THROWS_AS(add_bound_state(Potential{SquareWell{5.0}}, 1.0, 1.0), OrderingViolation);
}

TEST_CASE("removal inverts addition") {
  // one-soliton -> free space
  const Potential soliton = add_bound_state(Potential::zero(0.0, 1.0), 1.0, 1.0).potential;
  const Potential flattened = remove_bound_state(soliton, 1);
  CHECK(max_diff_on_support(flattened, Potential::zero(), flattened.support_min(),
                            flattened.support_max()) <= 1e-6);

  // square-well roundtrip: remove the single state, re-add it
  const Potential well{SquareWell{kPi * kPi}};
  const BoundStateData bs = find_bound_states(well, kPi + 0.5);
  REQUIRE(bs.kappas.size() == 1);
  const Potential stripped = remove_bound_state(well, 1);
  CHECK(find_bound_states(stripped, kPi + 0.5).kappas.empty());

  // the stripped norm follows the ladder
  const double expect =
      std::sqrt(kPi * kPi * kPi * kPi - 16.0 / 3.0 * std::pow(bs.kappas[0], 3.0));
  CHECK(norms(stripped).l2 == doctest::Approx(expect).epsilon(1e-3));

  const Potential rebuilt =
      add_bound_state(stripped, bs.kappas[0], std::abs(bs.gammas[0])).potential;
  CHECK(max_diff_on_support(rebuilt, well, 0.0, 1.0) <= 1e-5);

  CHECK_THROWS_AS(remove_bound_state(well, 2), NoSuchBoundState);
  CHECK_THROWS_AS(remove_bound_state(Potential::zero(), 1), NoSuchBoundState);
}

TEST_CASE("re-adding with a different dependency constant keeps |T| and |L|") {
  const Potential well{SquareWell{kPi * kPi}};
  const BoundStateData bs = find_bound_states(well, kPi + 0.5);
  const Potential stripped = remove_bound_state(well, 1);
  const Potential other =
      add_bound_state(stripped, bs.kappas[0], 3.0 * std::abs(bs.gammas[0])).potential;

  CHECK(max_diff_on_support(other, well, 0.2, 0.8) > 1e-3);  // genuinely different potential

  const std::vector<double> kgrid = {0.7, 1.4, 2.8};
  const ScatteringCoefficients a = scattering_coefficients(well, kgrid);
  const ScatteringCoefficients b = scattering_coefficients(other, kgrid);
  for (std::size_t i = 0; i < kgrid.size(); ++i) {
    CHECK(std::abs(std::abs(a.T[i]) - std::abs(b.T[i])) <= 1e-5);
    CHECK(std::abs(std::abs(a.L[i]) - std::abs(b.L[i])) <= 1e-5);
  }
}

TEST_CASE("integral identities at the paper orders and beyond") {
  const DarbouxAddition added = add_bound_state(Potential::zero(0.0, 1.0), 1.0, 1.0);
  const IdentityReport r0 = integral_identity(added.potential, Potential::zero(0.0, 1.0), 1.0, 0);
  CHECK(r0.rhs == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(r0.residual <= 1e-8);

  const IdentityReport r1 = integral_identity(added.potential, Potential::zero(0.0, 1.0), 1.0, 1);
  CHECK(r1.rhs == doctest::Approx(16.0 / 3.0).epsilon(1e-14));
  CHECK(r1.residual <= 1e-8);

  // independent quadrature oracle: int (-2 sech^2)^3 = -8 * 16/15
  const IdentityReport r2 = integral_identity(added.potential, Potential::zero(0.0, 1.0), 1.0, 2);
  CHECK(r2.rhs == doctest::Approx(-128.0 / 15.0).epsilon(1e-14));
  CHECK(r2.lhs == doctest::Approx(-128.0 / 15.0).epsilon(1e-7));
  CHECK(r2.residual <= 1e-7);
}

TEST_CASE("identity values are independent of the dependency constant") {
  const Potential base = bump_grid(1.7, 0.45, 0.3, 1.0 / 4096.0);
  for (int n = 0; n <= 3; ++n) {
    double first = 0.0;
    bool have_first = false;
    for (double gamma : {0.1, 1.0, 10.0}) {
      const DarbouxAddition added = add_bound_state(base, 0.8, gamma);
      const IdentityReport rep = integral_identity(added.potential, base, 0.8, n);
      CHECK(rep.residual <= 1e-6);
      if (!have_first) {
        first = rep.lhs;
        have_first = true;
      } else {
        CHECK(std::abs(rep.lhs - first) <= 1e-6 * std::max(1.0, std::abs(rep.rhs)));
      }
    }
  }
}

TEST_CASE("norm shifts and telescoping over three additions") {
  const Potential v0 = Potential::zero(0.0, 1.0);
  const std::vector<double> kappas = {0.7, 1.2, 1.9};
  Potential v = v0;
  double lhs_sum = 0.0;
  std::vector<Potential> chain{v0};
  for (double kap : kappas) {
    const DarbouxAddition step = add_bound_state(v, kap, 0.5 + kap);
    lhs_sum += integral_identity(step.potential, v, kap, 1).lhs;
    v = step.potential;
    chain.push_back(v);
  }

  const NormShiftReport rep = norm_shift_report(v0, v, kappas);
  CHECK(rep.dl1_expected == doctest::Approx(-4.0 * (0.7 + 1.2 + 1.9)).epsilon(1e-14));
  CHECK(rep.dl2sq_expected ==
        doctest::Approx(16.0 / 3.0 * (std::pow(0.7, 3) + std::pow(1.2, 3) + std::pow(1.9, 3)))
            .epsilon(1e-14));
  CHECK(rep.dl1_residual <= 1e-6);
  CHECK(rep.dl2sq_residual <= 1e-6);

  // per-step n=1 identities telescope into the aggregate second moment
  CHECK(std::abs(lhs_sum - rep.dl2sq) <= 1e-6 * std::max(1.0, std::abs(rep.dl2sq)));
}

TEST_CASE("norm shift closed cases") {
  const Potential v0 = Potential::zero(0.0, 1.0);
  const Potential v1 = add_bound_state(v0, 1.0, 1.0).potential;
  const NormShiftReport one = norm_shift_report(v0, v1, std::vector<double>{1.0});
  CHECK(one.dl1 == doctest::Approx(-4.0).epsilon(1e-7));
  CHECK(one.dl2sq == doctest::Approx(16.0 / 3.0).epsilon(1e-7));

  const Potential v2 = add_bound_state(v1, 2.0, 0.7).potential;
  const NormShiftReport two = norm_shift_report(v0, v2, std::vector<double>{1.0, 2.0});
  CHECK(two.dl1 == doctest::Approx(-12.0).epsilon(1e-7));
  CHECK(two.dl2sq == doctest::Approx(48.0).epsilon(1e-7));
}

TEST_CASE("scattering sign rule after two additions") {
  const Potential base{PiecewiseConstant{{0.0, 1.0}, {1.0}}};
  const Potential v1 = add_bound_state(base, 0.8, 1.3).potential;
  const Potential v2 = add_bound_state(v1, 1.5, 0.6).potential;

  const std::vector<double> kgrid = {0.6, 1.3};
  const ScatteringCoefficients s0 = scattering_coefficients(base, kgrid);
  const ScatteringCoefficients s2 = scattering_coefficients(v2, kgrid);
  for (std::size_t i = 0; i < kgrid.size(); ++i) {
    const Complex k(kgrid[i], 0.0);
    Complex factor = 1.0;  // (-1)^N prod (k - i kappa)/(k + i kappa)
    for (double kap : {0.8, 1.5}) factor *= (k - Complex(0, kap)) / (k + Complex(0, kap));
    CHECK(std::abs(s2.L[i] * factor - s0.L[i]) <= 1e-5);
  }
}

TEST_CASE("binomial sum identity in exact fractions and quadrature") {
  for (int n = 0; n <= 10; ++n) {
    oracle::Fraction sum{0, 1};
    for (int p = 0; p <= n; ++p) {
      const oracle::Fraction term =
          oracle::binomial_fraction(n, p) * oracle::Fraction{(p % 2 == 0) ? 1 : -1, 2 * p + 1};
      sum = sum + term;
    }
    // closed form 2^n n!/(2n+1)!!
    oracle::Fraction closed{1, 1};
    for (int p = 1; p <= n; ++p)
      closed = closed * oracle::Fraction{2 * p, 2 * p + 1};
    CHECK(sum == closed);

    const double quad = adaptive_simpson(
        [n](double x) { return std::pow(1.0 - x * x, n); }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(sum.value() - quad) <= 1e-10);
  }
}

TEST_CASE("sign-flip partner: involution, moments, endpoint flip") {
  const Potential well{SquareWell{kPi * kPi}};
  const Potential v1 = remove_bound_state(well, 1);  // exceptional, no bound states
  const Potential v2 = signflip_partner(v1);

  // support preserved and endpoint sign flipped
  CHECK(v2.support_min() == doctest::Approx(v1.support_min()));
  CHECK(v2.support_max() == doctest::Approx(v1.support_max()));
  CHECK(v2(1e-4) == doctest::Approx(-v1(1e-4)).epsilon(1e-4));

  // moments of Prop-type products vanish
  for (int n = 0; n <= 3; ++n) {
    const auto* g = std::get_if<SampledGrid>(&v2.form());
    REQUIRE(g != nullptr);
    std::vector<double> vals(g->samples.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const double x = g->x0 + g->dx * static_cast<double>(i);
      vals[i] = (v2(x) - v1(x)) * std::pow(v2(x) + v1(x), n);
    }
    const double moment = simpson_uniform(vals, g->dx);
    CHECK(std::abs(moment) <= 1e-6);
  }

  // equal integrals and L2 norms
  CHECK(norms(v1).integral == doctest::Approx(norms(v2).integral).epsilon(1e-8));
  CHECK(norms(v1).l2 == doctest::Approx(norms(v2).l2).epsilon(1e-8));

  // involution
  const Potential v3 = signflip_partner(v2);
  CHECK(max_diff_on_support(v3, v1, 0.0, 1.0) <= 1e-6);

  // contract errors propagate
  CHECK_THROWS_AS(signflip_partner(well), HasBoundStates);
}

TEST_CASE("sign-flip partner swaps the reflection sign, keeps transmission") {
  const Potential well{SquareWell{kPi * kPi}};
  const Potential v1 = remove_bound_state(well, 1);
  const Potential v2 = signflip_partner(v1);
  const std::vector<double> kgrid = {0.8, 1.6, 3.1};
  const ScatteringCoefficients s1 = scattering_coefficients(v1, kgrid);
  const ScatteringCoefficients s2 = scattering_coefficients(v2, kgrid);
  for (std::size_t i = 0; i < kgrid.size(); ++i) {
    CHECK(std::abs(s2.T[i] - s1.T[i]) <= 1e-5);
    CHECK(std::abs(s2.L[i] + s1.L[i]) <= 1e-5);
    CHECK(std::abs(s2.R[i] + s1.R[i]) <= 1e-5);
  }
}
