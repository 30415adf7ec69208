#include "scatter1d/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "scatter1d/errors.hpp"
#include "scatter1d/quadrature.hpp"

namespace scatter1d {

namespace {

constexpr Complex kImag{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

// sin(sqrt(w))/sqrt(w) and cos(sqrt(w)): entire in w
Complex sinc_sqrt(Complex w) {
  if (std::abs(w) < 1e-3) {
    // sum (-w)^m / (2m+1)!
    return 1.0 - w / 6.0 + w * w / 120.0 - w * w * w / 5040.0;
  }
  const Complex s = std::sqrt(w);
  return std::sin(s) / s;
}

Complex cos_sqrt(Complex w) {
  if (std::abs(w) < 1e-3) return 1.0 - w / 2.0 + w * w / 24.0 - w * w * w / 720.0;
  return std::cos(std::sqrt(w));
}

}  // namespace

Complex square_well_ratio(double epsilon, Complex k) {
  const Complex w = k * k + epsilon;
  return -epsilon * std::exp(kImag * k) * sinc_sqrt(w) / (2.0 * kImag * k);
}

ReflectionRatio ReflectionRatio::square_well(double epsilon) {
  if (!(epsilon > 0.0)) throw BadInput("square-well model needs epsilon > 0");
  ReflectionRatio d;
  d.kind_ = Kind::SquareWellModel;
  d.epsilon_ = epsilon;
  return d;
}

ReflectionRatio ReflectionRatio::from_potential(Potential v) {
  ReflectionRatio d;
  d.kind_ = Kind::FromPotential;
  d.potential_ = std::make_shared<Potential>(std::move(v));
  return d;
}

ReflectionRatio ReflectionRatio::sampled(std::vector<double> kgrid, std::vector<Complex> values) {
  if (kgrid.size() != values.size() || kgrid.empty())
    throw BadInput("sampled ratio data needs matching non-empty k and value arrays");
  for (std::size_t i = 0; i < kgrid.size(); ++i) {
    if (!(kgrid[i] > 0.0)) throw BadInput("sampled ratio data needs positive k");
    if (i > 0 && !(kgrid[i] > kgrid[i - 1])) throw BadInput("sampled k grid must ascend");
  }
  ReflectionRatio d;
  d.kind_ = Kind::Sampled;
  d.sample_k_ = std::move(kgrid);
  d.sample_v_ = std::move(values);
  return d;
}

double ReflectionRatio::epsilon() const {
  if (kind_ != Kind::SquareWellModel) throw BadInput("not a square-well model");
  return epsilon_;
}

const Potential* ReflectionRatio::potential() const {
  return kind_ == Kind::FromPotential ? potential_.get() : nullptr;
}

double ReflectionRatio::max_sample_k() const {
  return sample_k_.empty() ? 0.0 : sample_k_.back();
}

Complex ReflectionRatio::eval(Complex k) const {
  switch (kind_) {
    case Kind::SquareWellModel:
      return square_well_ratio(epsilon_, k);
    case Kind::FromPotential:
      return ratio_D_at(*potential_, k);
    case Kind::Sampled:
      if (k.imag() != 0.0)
        throw AnalyticModelRequired("sampled ratio data is defined on the real axis only");
      return eval_real(k.real());
  }
  return {};
}

Complex ReflectionRatio::eval_real(double k) const {
  if (kind_ != Kind::Sampled) return eval(Complex(k, 0.0));
  const bool flip = k < 0.0;
  const double kk = std::abs(k);
  if (kk < sample_k_.front() || kk > sample_k_.back())
    throw BadInput("requested k outside the sampled range");
  const auto it = std::lower_bound(sample_k_.begin(), sample_k_.end(), kk);
  Complex val;
  if (it == sample_k_.begin())
    val = sample_v_.front();
  else {
    const auto i = static_cast<std::size_t>(it - sample_k_.begin());
    const double w = (kk - sample_k_[i - 1]) / (sample_k_[i] - sample_k_[i - 1]);
    val = sample_v_[i - 1] * (1.0 - w) + sample_v_[i] * w;
  }
  return flip ? std::conj(val) : val;
}

double ReflectionRatio::eval_imag_axis(double kappa) const {
  if (!analytic())
    throw AnalyticModelRequired("imaginary-axis evaluation needs an analytic model");
  return eval(Complex(0.0, kappa)).real();
}

Classification classify(const ReflectionRatio& d) {
  std::vector<double> ks;
  if (d.kind() == ReflectionRatio::Kind::Sampled) {
    const auto& grid = d.sample_k();
    for (std::size_t i = 0; i < grid.size() && ks.size() < 8; ++i) ks.push_back(grid[i]);
    std::reverse(ks.begin(), ks.end());  // descending towards 0 like the dyadic probes
  } else {
    double k0 = 0.4;
    for (int m = 0; m < 8; ++m) ks.push_back(k0 / std::ldexp(1.0, m));
  }
  if (ks.size() < 3) throw InconclusiveLimit("too few samples near k=0");

  std::vector<double> h(ks.size());
  double dscale = 1.0;
  for (std::size_t m = 0; m < ks.size(); ++m) {
    const Complex dk = d.eval_real(ks[m]);
    dscale = std::max(dscale, std::abs(dk));
    h[m] = (2.0 * kImag * ks[m] * dk).real();
  }

  // Neville extrapolation of h(k) to k=0
  std::vector<double> tbl = h;
  double prev_diag = tbl[0];
  double diag = tbl[0];
  for (std::size_t j = 1; j < ks.size(); ++j) {
    for (std::size_t i = 0; i + j < ks.size(); ++i)
      tbl[i] = tbl[i + 1] + (tbl[i + 1] - tbl[i]) * ks[i + j] / (ks[i] - ks[i + j]);
    prev_diag = diag;
    diag = tbl[0];
  }
  const double err = std::abs(diag - prev_diag);
  if (err > 1e-4 * std::max(1.0, std::abs(diag)))
    throw InconclusiveLimit("zero-limit extrapolants disagree by " + std::to_string(err));

  Classification cls;
  cls.zero_limit = diag;
  if (std::abs(diag) <= 1e-6 * dscale)
    cls.kind = Classification::Kind::Exceptional;
  else
    cls.kind = diag < 0.0 ? Classification::Kind::GenericOdd : Classification::Kind::GenericEven;
  return cls;
}

int count_odd_zeros(const ReflectionRatio& d, double kappa_window) {
  if (!d.analytic())
    throw AnalyticModelRequired("zero counting on the imaginary axis needs an analytic model");
  if (kappa_window <= 0.0) {
    if (d.kind() == ReflectionRatio::Kind::SquareWellModel)
      kappa_window = 2.0 * std::sqrt(d.epsilon());
    else
      throw BadInput("kappa window required for potential-backed data");
  }
  const int m = 4096;
  int z = 0;
  double prev = d.eval_imag_axis(kappa_window / static_cast<double>(m));
  for (int i = 2; i <= m; ++i) {
    const double cur = d.eval_imag_axis(kappa_window * static_cast<double>(i) /
                                        static_cast<double>(m));
    if (prev * cur < 0.0) ++z;
    prev = cur;
  }
  return z;
}

namespace {

double truncation_radius(const ReflectionRatio& d) {
  if (d.kind() == ReflectionRatio::Kind::Sampled) {
    const double s = d.max_sample_k();
    if (std::abs(d.sample_values().back()) > 1e-3)
      throw TailTooFat("|D| = " + std::to_string(std::abs(d.sample_values().back())) +
                       " at the end of the sampled range");
    return s;
  }
  // smallest S with |D| < 1e-4 near S (checked off the oscillation nodes), doubled
  double s = 8.0;
  if (d.kind() == ReflectionRatio::Kind::SquareWellModel) s = std::max(s, 2.0 * d.epsilon());
  for (int j = 0; j < 24; ++j) {
    const double probes[] = {1.0, 1.013, 1.031, 1.057, 1.083};
    bool small = true;
    for (double p : probes)
      if (std::abs(d.eval_real(s * p)) >= 1e-4) {
        small = false;
        break;
      }
    if (small) return 2.0 * s;
    s *= 2.0;
  }
  throw TailTooFat("|D| stayed above 1e-4 out to S=" + std::to_string(s));
}

}  // namespace

TzeroResult tzero_integral(const ReflectionRatio& d, Complex k, double quad_tol) {
  if (k.imag() < 0.0) throw BadInput("tzero integral defined for Im k >= 0");
  if (k.imag() == 0.0 && k.real() == 0.0) throw BadInput("k = 0 is singular");
  const double S = truncation_radius(d);
  if (std::abs(k) > 0.9 * S)
    throw BadInput("k too close to the truncation radius");

  auto g = [&](double s) {
    const Complex v = d.eval_real(s);
    return std::log1p(std::norm(v));
  };

  const bool on_axis = k.imag() == 0.0;
  const double kr = std::clamp(k.real(), -0.9 * S, 0.9 * S);
  const double gk = g(on_axis ? k.real() : kr);

  auto smooth = [&](double s) -> double {
    const double ds = s - (on_axis ? k.real() : kr);
    if (std::abs(ds) < 1e-9 * std::max(1.0, std::abs(k.real()))) {
      const double hh = 1e-6 * std::max(1.0, std::abs(k.real()));
      return (g(s + hh) - g(s - hh)) / (2.0 * hh);
    }
    return (g(s) - gk) / ds;
  };

  // sampled data only covers [kmin, S]; models are evaluable down to the
  // k=0 log spike, which stays off the nodes
  const bool sampled = d.kind() == ReflectionRatio::Kind::Sampled;
  const double delta = sampled ? d.sample_k().front() : 1e-12;
  double gap_err = 0.0;
  if (sampled) gap_err = 2.0 * delta * g(delta) / std::max(delta, std::abs(k - Complex(delta, 0)));
  Complex integral;
  double quad_err = 0.0;
  if (on_axis) {
    double pv = adaptive_simpson(smooth, -S, -delta, 0.5 * quad_tol) +
                adaptive_simpson(smooth, delta, S, 0.5 * quad_tol);
    pv += gk * std::log((S - k.real()) / (S + k.real()));
    integral = Complex(pv, kPi * gk);
    quad_err += quad_tol;
  } else {
    auto full = [&](double s) -> Complex { return (g(s) - gk) / (Complex(s, 0.0) - k); };
    Complex val = adaptive_simpson_c(full, -S, -delta, 0.5 * quad_tol) +
                  adaptive_simpson_c(full, delta, S, 0.5 * quad_tol);
    // path stays below the log cut: principal values connect continuously
    val += gk * (std::log(Complex(S, 0.0) - k) - std::log(Complex(-S, 0.0) - k));
    integral = val;
    quad_err += quad_tol;
  }

  // |D| = O(1/s) makes g = O(1/s^2); estimate the discarded tails
  const double g_end = 0.5 * (g(S * 0.999) + g(-S * 0.999));
  const double tail = g_end;

  const Complex exponent = integral * (kImag / (2.0 * kPi));
  TzeroResult r;
  r.value = std::exp(exponent);
  r.abs_error = std::abs(r.value) * (quad_err + tail + gap_err) / (2.0 * kPi);
  return r;
}

SquareWellTzero::SquareWellTzero(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0)) throw BadInput("epsilon must be positive");
  const Potential well{SquareWell{epsilon}};
  xi_ = find_bound_states(well, std::sqrt(epsilon) + 0.5).kappas;
}

Complex SquareWellTzero::inv_tau(Complex k) const {
  const Complex w = k * k + epsilon_;
  return std::exp(kImag * k) *
         (cos_sqrt(w) + (2.0 * k * k + epsilon_) / (2.0 * kImag * k) * sinc_sqrt(w));
}

Complex SquareWellTzero::inverse(Complex k) const {
  Complex v = inv_tau(k);
  for (double x : xi_) v *= (k + kImag * x) / (k - kImag * x);
  return v;
}

Complex SquareWellTzero::value(Complex k) const { return 1.0 / inverse(k); }

const SquareWellTzero& square_well_tzero(double epsilon) {
  static std::mutex mtx;
  static std::map<double, std::shared_ptr<const SquareWellTzero>> cache;
  std::lock_guard lock(mtx);
  auto it = cache.find(epsilon);
  if (it == cache.end())
    it = cache.emplace(epsilon, std::make_shared<const SquareWellTzero>(epsilon)).first;
  return *it->second;
}

Complex tzero_closed_form(double epsilon, Complex k) {
  return square_well_tzero(epsilon).value(k);
}

ReflectionRecovery reflection_from_D(const ReflectionRatio& d, std::span<const double> kgrid,
                                     std::span<const Complex> t0, std::span<const double> kappas) {
  if (kgrid.size() != t0.size()) throw BadInput("k grid and T0 arrays must align");
  const Classification cls = classify(d);
  const int n = static_cast<int>(kappas.size());
  if (cls.kind == Classification::Kind::GenericEven && n % 2 != 0)
    throw ParityMismatch("even data with an odd bound-state count");
  if (cls.kind == Classification::Kind::GenericOdd && n % 2 != 1)
    throw ParityMismatch("odd data with an even bound-state count");

  ReflectionRecovery out;
  out.exceptional = cls.kind == Classification::Kind::Exceptional;
  const double par = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^N
  out.L.reserve(kgrid.size());
  out.L0.reserve(kgrid.size());
  out.R0.reserve(kgrid.size());
  for (std::size_t i = 0; i < kgrid.size(); ++i) {
    const Complex k(kgrid[i], 0.0);
    const Complex dk = d.eval_real(kgrid[i]);
    const Complex dmk = std::conj(dk);  // D(-k) on the real axis
    Complex blaschke = 1.0;
    for (double kap : kappas) blaschke *= (k + kImag * kap) / (k - kImag * kap);
    out.L.push_back(dk * t0[i] * blaschke);
    if (!out.exceptional) {
      out.L0.push_back(par * dk * t0[i]);
      out.R0.push_back(-par * dmk * t0[i]);
    } else {
      out.L0.push_back(dk * t0[i]);
      out.R0.push_back(-dmk * t0[i]);
      out.L0_alt.push_back(-dk * t0[i]);
      out.R0_alt.push_back(dmk * t0[i]);
    }
  }
  return out;
}

}  // namespace scatter1d
