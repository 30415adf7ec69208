#include "scatter1d/jost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "scatter1d/errors.hpp"

namespace scatter1d {

namespace {

constexpr Complex kImag{0.0, 1.0};

template <typename Scalar>
struct WaveState {
  Scalar psi, dpsi;
};

// One classical RK4 step for psi'' = (V - k^2) psi across an interval
// where V is smooth; v0/vm/v1 are the one-sided endpoint and midpoint
// values, h is signed.
template <typename Scalar>
inline WaveState<Scalar> rk4_step(const WaveState<Scalar>& y, double h, double v0, double vm,
                                  double v1, Scalar k2) {
  const Scalar a0 = Scalar(v0) - k2;
  const Scalar am = Scalar(vm) - k2;
  const Scalar a1 = Scalar(v1) - k2;
  const Scalar k1p = y.dpsi;
  const Scalar k1q = a0 * y.psi;
  const Scalar k2p = y.dpsi + 0.5 * h * k1q;
  const Scalar k2q = am * (y.psi + 0.5 * h * k1p);
  const Scalar k3p = y.dpsi + 0.5 * h * k2q;
  const Scalar k3q = am * (y.psi + 0.5 * h * k2p);
  const Scalar k4p = y.dpsi + h * k3q;
  const Scalar k4q = a1 * (y.psi + h * k3p);
  return {y.psi + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
          y.dpsi + h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)};
}

// f_r-like integration: left edge to right, writing every node.
template <typename Scalar>
void integrate_forward(const SchrodingerMesh& m, Scalar k2, WaveState<Scalar> y, Scalar* psi,
                       Scalar* dpsi) {
  psi[0] = y.psi;
  dpsi[0] = y.dpsi;
  for (std::size_t i = 0; i + 1 < m.x.size(); ++i) {
    const double h = m.x[i + 1] - m.x[i];
    y = rk4_step(y, h, m.v_left[i], m.v_mid[i], m.v_right[i], k2);
    psi[i + 1] = y.psi;
    dpsi[i + 1] = y.dpsi;
  }
}

// f_l-like integration: right edge to left.
template <typename Scalar>
void integrate_backward(const SchrodingerMesh& m, Scalar k2, WaveState<Scalar> y, Scalar* psi,
                        Scalar* dpsi) {
  const std::size_t n = m.x.size();
  psi[n - 1] = y.psi;
  dpsi[n - 1] = y.dpsi;
  for (std::size_t i = n - 1; i > 0; --i) {
    const double h = m.x[i - 1] - m.x[i];
    y = rk4_step(y, h, m.v_right[i - 1], m.v_mid[i - 1], m.v_left[i - 1], k2);
    psi[i - 1] = y.psi;
    dpsi[i - 1] = y.dpsi;
  }
}

// f_l(i kappa, x) at the left edge, real arithmetic; returns
// (fl(a), fl'(a)).  Enough for the bound-state Wronskian since f_r is
// exact there.
WaveState<double> left_edge_decaying(const SchrodingerMesh& m, double kappa) {
  const double b = m.x.back();
  const std::size_t n = m.x.size();
  WaveState<double> y{std::exp(-kappa * b), -kappa * std::exp(-kappa * b)};
  for (std::size_t i = n - 1; i > 0; --i) {
    const double h = m.x[i - 1] - m.x[i];
    y = rk4_step(y, h, m.v_right[i - 1], m.v_mid[i - 1], m.v_left[i - 1], kappa * kappa);
  }
  return y;
}

void guard_step(const Potential& v, Complex k, double step) {
  const double qmax = std::sqrt(std::norm(k) + v.max_abs());
  if (qmax * step > 0.5)
    throw StepTooCoarse("local wavenumber " + std::to_string(qmax) + " times step " +
                        std::to_string(step) + " exceeds 0.5");
}

void run_parallel(std::size_t count, int threads, const std::function<void(std::size_t)>& work) {
  unsigned int nt = threads > 0 ? static_cast<unsigned int>(threads)
                                : std::max(1u, std::thread::hardware_concurrency());
  nt = std::min<unsigned int>(nt, static_cast<unsigned int>(count));
  if (nt <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned int t = 0; t < nt; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += nt) work(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

SchrodingerMesh SchrodingerMesh::build(const Potential& v, double max_step) {
  const double a = v.support_min(), b = v.support_max();
  const double len = b - a;
  if (!(max_step > 0.0)) throw BadInput("mesh step must be positive");
  auto n_uniform = static_cast<std::size_t>(std::ceil(len / max_step - 1e-9));
  n_uniform = std::max<std::size_t>(n_uniform, 2);
  const double dxu = len / static_cast<double>(n_uniform);

  SchrodingerMesh m;
  m.x0 = a;
  m.dx_uniform = dxu;
  std::vector<double> nodes;
  nodes.reserve(n_uniform + 1);
  for (std::size_t i = 0; i <= n_uniform; ++i)
    nodes.push_back(i == n_uniform ? b : a + dxu * static_cast<double>(i));
  std::vector<double> breaks = v.interior_breakpoints();
  const double tol = 1e-12 * std::max(1.0, len);
  std::vector<double> merged = nodes;
  merged.insert(merged.end(), breaks.begin(), breaks.end());
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end(),
                           [tol](double p, double q) { return std::abs(p - q) < tol; }),
               merged.end());

  m.x = std::move(merged);
  m.uniform_idx.reserve(nodes.size());
  std::size_t j = 0;
  for (double u : nodes) {
    while (j + 1 < m.x.size() && std::abs(m.x[j] - u) > std::abs(m.x[j + 1] - u)) ++j;
    m.uniform_idx.push_back(j);
  }

  const std::size_t ni = m.x.size() - 1;
  m.v_left.resize(ni);
  m.v_mid.resize(ni);
  m.v_right.resize(ni);
  double widest = 0.0;
  for (std::size_t i = 0; i < ni; ++i) {
    const double w = m.x[i + 1] - m.x[i];
    widest = std::max(widest, w);
    const double inset = 1e-9 * w;
    m.v_left[i] = v(m.x[i] + inset);
    m.v_mid[i] = v(0.5 * (m.x[i] + m.x[i + 1]));
    m.v_right[i] = v(m.x[i + 1] - inset);
  }
  m.max_step = widest;
  return m;
}

JostPair solve_jost_on(const SchrodingerMesh& m, Complex k) {
  const std::size_t n = m.x.size();
  JostPair jp;
  jp.k = k;
  jp.x = m.x;
  jp.fl.resize(n);
  jp.fl_prime.resize(n);
  jp.fr.resize(n);
  jp.fr_prime.resize(n);
  const Complex k2 = k * k;
  const double a = m.x.front(), b = m.x.back();
  const Complex el = std::exp(kImag * k * b);
  integrate_backward<Complex>(m, k2, {el, kImag * k * el}, jp.fl.data(), jp.fl_prime.data());
  const Complex er = std::exp(-kImag * k * a);
  integrate_forward<Complex>(m, k2, {er, -kImag * k * er}, jp.fr.data(), jp.fr_prime.data());
  return jp;
}

JostPair solve_jost(const Potential& v, Complex k, double x_grid_step) {
  guard_step(v, k, x_grid_step);
  return solve_jost_on(SchrodingerMesh::build(v, x_grid_step), k);
}

Complex JostPair::wronskian() const { return fl[0] * fr_prime[0] - fl_prime[0] * fr[0]; }

double JostPair::wronskian_spread() const {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  double scale = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Complex w = fl[i] * fr_prime[i] - fl_prime[i] * fr[i];
    scale = std::max(scale, std::abs(w));
    const double re = std::abs(w);
    if (first) {
      lo = hi = re;
      first = false;
    } else {
      lo = std::min(lo, re);
      hi = std::max(hi, re);
    }
  }
  return scale > 0.0 ? (hi - lo) / scale : 0.0;
}

ScatteringEntry scattering_entry(const JostPair& jp) {
  const Complex k = jp.k;
  const double a = jp.x.front(), b = jp.x.back();
  const Complex ik = kImag * k;
  ScatteringEntry e;
  e.inv_t = (jp.fl_prime.front() * jp.fr.front() - jp.fl.front() * jp.fr_prime.front()) /
            (2.0 * ik);
  e.l_over_t = std::exp(ik * a) * (jp.fl.front() - jp.fl_prime.front() / ik) * 0.5;
  e.r_over_t = std::exp(-ik * b) * (jp.fr.back() + jp.fr_prime.back() / ik) * 0.5;
  return e;
}

ScatteringEntry scattering_entry_controlled(const Potential& v, Complex k) {
  const double qmax = std::sqrt(std::norm(k) + v.max_abs());
  double h = std::min(v.support_length() / 4096.0, 0.45 / qmax);
  ScatteringEntry prev = scattering_entry(solve_jost(v, k, h));
  for (int iter = 0; iter < 8; ++iter) {
    h *= 0.5;
    const ScatteringEntry fine = scattering_entry(solve_jost(v, k, h));
    const Complex t_prev = 1.0 / prev.inv_t;
    const Complex t_fine = 1.0 / fine.inv_t;
    if (std::abs(t_prev - t_fine) <= 1e-8 * std::max(1.0, std::abs(t_fine))) return fine;
    prev = fine;
  }
  throw StepTooCoarse("transmission did not settle to 1e-8 under step halving");
}

ScatteringCoefficients scattering_coefficients(const Potential& v, std::vector<double> kgrid,
                                               int threads) {
  if (kgrid.empty()) throw BadInput("empty k grid");
  for (std::size_t i = 0; i < kgrid.size(); ++i) {
    if (!(kgrid[i] > 0.0)) throw BadInput("k grid must be positive");
    if (i > 0 && !(kgrid[i] > kgrid[i - 1])) throw BadInput("k grid must be ascending");
  }
  ScatteringCoefficients sc;
  sc.kgrid = std::move(kgrid);
  const std::size_t n = sc.kgrid.size();
  sc.T.resize(n);
  sc.L.resize(n);
  sc.R.resize(n);
  run_parallel(n, threads, [&](std::size_t i) {
    const ScatteringEntry e = scattering_entry_controlled(v, Complex(sc.kgrid[i], 0.0));
    const Complex t = 1.0 / e.inv_t;
    sc.T[i] = t;
    sc.L[i] = e.l_over_t * t;
    sc.R[i] = e.r_over_t * t;
  });
  return sc;
}

std::vector<Complex> ratio_D(const Potential& v, std::span<const double> kgrid, int threads) {
  std::vector<Complex> d(kgrid.size());
  run_parallel(kgrid.size(), threads, [&](std::size_t i) {
    const ScatteringEntry e = scattering_entry_controlled(v, Complex(kgrid[i], 0.0));
    d[i] = e.l_over_t / e.inv_t;
  });
  return d;
}

Complex ratio_D_at(const Potential& v, Complex k) {
  const ScatteringEntry e = scattering_entry_controlled(v, k);
  return e.l_over_t / e.inv_t;
}

double bound_state_ceiling(const Potential& v) { return std::sqrt(v.max_abs()) + 0.5; }

BoundStateData find_bound_states(const Potential& v, double kappa_max, int scan_points) {
  if (!(kappa_max > 0.0)) throw BadInput("kappa_max must be positive");
  if (kappa_max < std::sqrt(v.max_abs()))
    throw BadInput("kappa_max below sqrt(max|V|); states could be missed");

  const double h = std::min(v.support_length() / 4096.0, 0.45 / (kappa_max + std::sqrt(v.max_abs())));
  const SchrodingerMesh mesh = SchrodingerMesh::build(v, h);
  const double a = mesh.x.front();

  // e^{kappa a}-scaled Wronskian: same zeros, tamer magnitude
  auto w = [&](double kappa) {
    const WaveState<double> fl = left_edge_decaying(mesh, kappa);
    return fl.dpsi - kappa * fl.psi;
  };

  auto scan = [&](int n) {
    std::vector<double> brackets;
    double prev_k = kappa_max / static_cast<double>(n);
    double prev_w = w(prev_k);
    for (int i = 2; i <= n; ++i) {
      const double kap = kappa_max * static_cast<double>(i) / static_cast<double>(n);
      const double cur = w(kap);
      if (prev_w == 0.0 || prev_w * cur < 0.0) {
        brackets.push_back(prev_k);
        brackets.push_back(kap);
      }
      prev_k = kap;
      prev_w = cur;
    }
    return brackets;
  };

  int n = std::max(scan_points, 16);
  std::vector<double> brackets = scan(n);
  for (int doublings = 0; doublings < 6; ++doublings) {
    std::vector<double> refined = scan(2 * n);
    if (refined.size() == brackets.size()) {
      brackets = std::move(refined);
      break;
    }
    n *= 2;
    brackets = std::move(refined);
    if (doublings == 5)
      throw ScanTooCoarse("bound-state count kept changing up to " + std::to_string(2 * n) +
                          " scan points");
  }

  BoundStateData out;
  for (std::size_t bi = 0; bi + 1 < brackets.size(); bi += 2) {
    double lo = brackets[bi], hi = brackets[bi + 1];
    double wlo = w(lo);
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      const double wm = w(mid);
      if (wm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (wlo * wm < 0.0)
        hi = mid;
      else {
        lo = mid;
        wlo = wm;
      }
    }
    out.kappas.push_back(0.5 * (lo + hi));
  }

  // dependency constants by projecting f_l on f_r over the support
  for (double kappa : out.kappas) {
    const std::size_t nn = mesh.x.size();
    std::vector<double> fl(nn), flp(nn), fr(nn), frp(nn);
    const double b = mesh.x.back();
    const double k2 = kappa * kappa;
    integrate_backward<double>(mesh, k2, {std::exp(-kappa * b), -kappa * std::exp(-kappa * b)},
                               fl.data(), flp.data());
    integrate_forward<double>(mesh, k2, {std::exp(kappa * a), kappa * std::exp(kappa * a)},
                              fr.data(), frp.data());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < nn; ++i) {
      num += fl[i] * fr[i];
      den += fr[i] * fr[i];
    }
    out.gammas.push_back(num / den);
  }

  const int N = static_cast<int>(out.kappas.size());
  for (int j = 1; j <= N; ++j) {
    const double sign = ((N - j) % 2 == 0) ? 1.0 : -1.0;
    if (!(sign * out.gammas[static_cast<std::size_t>(j - 1)] > 0.0))
      throw NumericalFailure("dependency constant sign rule violated at state " +
                             std::to_string(j));
  }
  return out;
}

SampledGrid zero_energy_logderivative(const Potential& v, double step) {
  const BoundStateData bs = find_bound_states(v, bound_state_ceiling(v));
  if (!bs.kappas.empty())
    throw HasBoundStates(std::to_string(bs.kappas.size()) + " bound states present");

  if (step <= 0.0) step = v.support_length() / 4096.0;
  const SchrodingerMesh mesh = SchrodingerMesh::build(v, step);
  const std::size_t n = mesh.x.size();
  std::vector<double> fl(n), flp(n);
  integrate_backward<double>(mesh, 0.0, {1.0, 0.0}, fl.data(), flp.data());

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(flp[i]));
  scale = std::max(scale, 1.0 / v.support_length());
  if (std::abs(flp.front()) > 1e-6 * scale)
    throw NotExceptional("|T(0)| below threshold 1e-6 (zero-energy solution grows)");

  for (std::size_t i = 0; i < n; ++i)
    if (!(fl[i] > 0.0))
      throw NumericalFailure("zero-energy Jost solution not strictly positive");

  SampledGrid rho;
  rho.x0 = mesh.x0;
  rho.dx = mesh.dx_uniform;
  rho.samples.reserve(mesh.uniform_idx.size());
  for (std::size_t idx : mesh.uniform_idx) rho.samples.push_back(flp[idx] / fl[idx]);
  return rho;
}

Complex inverse_transmission_at(const Potential& v, Complex k, double step) {
  const double qmax = std::sqrt(std::norm(k) + v.max_abs());
  if (step <= 0.0) step = std::min(v.support_length() / 4096.0, 0.45 / qmax);
  return scattering_entry(solve_jost(v, k, step)).inv_t;
}

}  // namespace scatter1d
