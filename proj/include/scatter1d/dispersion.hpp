#pragma once

#include <memory>
#include <span>
#include <vector>

#include "scatter1d/jost.hpp"
#include "scatter1d/potential.hpp"

namespace scatter1d {

/// The ratio data D(k) = L(k)/T(k): an analytic model (square well or an
/// explicit potential, evaluable at complex k) or real-axis samples.
/// Sampled data supports real-axis operations only; analytic continuation
/// of samples is refused rather than regularized.
class ReflectionRatio {
public:
  enum class Kind { SquareWellModel, FromPotential, Sampled };

  static ReflectionRatio square_well(double epsilon);
  static ReflectionRatio from_potential(Potential v);
  // ascending positive k; negative k follows from D(-k) = conj D(k)
  static ReflectionRatio sampled(std::vector<double> kgrid, std::vector<Complex> values);

  Kind kind() const { return kind_; }
  bool analytic() const { return kind_ != Kind::Sampled; }

  Complex eval(Complex k) const;       // complex k, analytic models only
  Complex eval_real(double k) const;   // any kind
  double eval_imag_axis(double kappa) const;  // D(i kappa), real

  double epsilon() const;
  const Potential* potential() const;
  const std::vector<double>& sample_k() const { return sample_k_; }
  const std::vector<Complex>& sample_values() const { return sample_v_; }
  double max_sample_k() const;

private:
  ReflectionRatio() = default;
  Kind kind_ = Kind::Sampled;
  double epsilon_ = 0.0;
  std::shared_ptr<const Potential> potential_;
  std::vector<double> sample_k_;
  std::vector<Complex> sample_v_;
};

struct Classification {
  enum class Kind { GenericEven, GenericOdd, Exceptional };
  Kind kind = Kind::Exceptional;
  double zero_limit = 0.0;  // lim_{k->0} 2ik D(k)

  bool generic() const { return kind != Kind::Exceptional; }
};

// Richardson-extrapolates 2ik D(k) along real k -> 0+.  Exceptional when
// the limit is below 1e-6 relative to the data scale; otherwise the sign
// fixes the bound-state parity (negative limit -> D -> +inf on the
// positive imaginary axis -> odd N).
Classification classify(const ReflectionRatio& d);

// Number of odd-multiplicity zeros of D on the positive imaginary axis,
// counted as sign changes of kappa -> D(i kappa) on (0, kappa_window].
// kappa_window <= 0 picks 2 sqrt(eps) for square-well models.
int count_odd_zeros(const ReflectionRatio& d, double kappa_window = 0.0);

struct TzeroResult {
  Complex value;
  double abs_error = 0.0;  // quadrature + truncation estimate
};

// The bound-state-free transmission coefficient reconstructed from the
// dispersion integral over log(1+|D|^2), with the -i0+ prescription
// realized on the real axis as a principal value plus the explicit
// i pi log(1+|D(k)|^2) term.
TzeroResult tzero_integral(const ReflectionRatio& d, Complex k, double quad_tol = 1e-8);

// Closed form for square-well data: 1/T0 = (1/tau) prod (k+i xi_j)/(k-i xi_j)
// with xi_j the well's bound states.  Construction solves for the xi once.
class SquareWellTzero {
public:
  explicit SquareWellTzero(double epsilon);
  double epsilon() const { return epsilon_; }
  const std::vector<double>& xi() const { return xi_; }
  Complex inv_tau(Complex k) const;   // 1/tau(k), the well's 1/T
  Complex inverse(Complex k) const;   // 1/T0(k)
  Complex value(Complex k) const;     // T0(k)

private:
  double epsilon_;
  std::vector<double> xi_;
};

Complex tzero_closed_form(double epsilon, Complex k);  // cached per epsilon
const SquareWellTzero& square_well_tzero(double epsilon);

// square-well model helpers (entire in k except the k=0 pole)
Complex square_well_ratio(double epsilon, Complex k);

struct ReflectionRecovery {
  std::vector<Complex> L;   // D T0 prod (k+i kappa)/(k-i kappa)
  std::vector<Complex> L0, R0;          // V0-level coefficients
  std::vector<Complex> L0_alt, R0_alt;  // second sign branch, exceptional case only
  bool exceptional = false;
};

ReflectionRecovery reflection_from_D(const ReflectionRatio& d, std::span<const double> kgrid,
                                     std::span<const Complex> t0, std::span<const double> kappas);

}  // namespace scatter1d
