#include "scatter1d/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "scatter1d/errors.hpp"
#include "scatter1d/quadrature.hpp"

namespace scatter1d {

namespace {

// Grid inputs get an integer refinement of their own dx so the output
// grid stays aligned with the input samples.
double pick_support_step(const Potential& v, double kappa, double step_hint) {
  const double qmax = std::sqrt(kappa * kappa + v.max_abs());
  const double target = step_hint > 0.0 ? step_hint : v.support_length() / 4096.0;
  double h = target;
  if (const auto* g = std::get_if<SampledGrid>(&v.form())) {
    const double refine = std::max(1.0, std::ceil(g->dx / target - 1e-9));
    h = g->dx / refine;
  }
  while (qmax * h > 0.45) h *= 0.5;
  return h;
}

// no existing bound state may sit at or above kappa
void check_ordering(const Potential& v, double kappa) {
  const double ceiling = std::sqrt(v.max_abs());
  if (kappa >= ceiling) return;  // nothing can live above sqrt(max|V|)
  const BoundStateData bs = find_bound_states(v, ceiling + 0.5);
  for (double existing : bs.kappas)
    if (existing >= kappa)
      throw OrderingViolation("bound state at kappa=" + std::to_string(existing) +
                              " not below requested " + std::to_string(kappa));
}

struct ExpPair {
  double grow = 0.0;   // coefficient of e^{+kappa x}
  double decay = 0.0;  // coefficient of e^{-kappa x}
  double value(double kappa, double x) const {
    return grow * std::exp(kappa * x) + decay * std::exp(-kappa * x);
  }
  double derivative(double kappa, double x) const {
    return kappa * (grow * std::exp(kappa * x) - decay * std::exp(-kappa * x));
  }
};

// match psi = c+ e^{kappa x} + c- e^{-kappa x} to (psi, psi') at x
ExpPair match_exponentials(double kappa, double x, double psi, double dpsi) {
  ExpPair p;
  p.grow = 0.5 * (psi + dpsi / kappa) * std::exp(-kappa * x);
  p.decay = 0.5 * (psi - dpsi / kappa) * std::exp(kappa * x);
  return p;
}

double double_factorial_odd(int n) {  // (2n+1)!!
  double r = 1.0;
  for (int p = 1; p <= n; ++p) r *= static_cast<double>(2 * p + 1);
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int p = 2; p <= n; ++p) r *= static_cast<double>(p);
  return r;
}

double binomial(int n, int p) {
  double r = 1.0;
  for (int i = 1; i <= p; ++i) r *= static_cast<double>(n - p + i) / static_cast<double>(i);
  return r;
}

// F(m) with I_n = -2^{n+1} dF(mu)/dx; fixes the truncated tails of the
// identity integrals from the mu values at the grid ends
double tail_primitive(double kappa, int n, double m) {
  double sum = 0.0;
  for (int p = 0; p <= n; ++p) {
    const double sgn = ((n - p) % 2 == 0) ? 1.0 : -1.0;
    sum += sgn * std::pow(kappa, 2 * (n - p)) * binomial(n, p) * std::pow(m, 2 * p + 1) /
           static_cast<double>(2 * p + 1);
  }
  return sum;
}

// integrate f exactly over the cells of grid g (splitting cells at the
// extra breakpoints, which must be sorted), npts Gauss points per piece
double integrate_cells(const SampledGrid& g, std::span<const double> extra, int npts,
                       const std::function<double(double)>& f) {
  const GaussRule& rule = gauss_rule(npts);
  double total = 0.0;
  const std::size_t ncells = g.samples.size() - 1;
  std::size_t next_extra = 0;
  std::vector<double> cuts;
  const double eps = 1e-12 * std::max(1.0, g.dx * static_cast<double>(ncells));
  for (std::size_t c = 0; c < ncells; ++c) {
    const double xl = g.x0 + g.dx * static_cast<double>(c);
    const double xr = xl + g.dx;
    while (next_extra < extra.size() && extra[next_extra] <= xl + eps) ++next_extra;
    cuts.clear();
    cuts.push_back(xl);
    for (std::size_t e = next_extra; e < extra.size() && extra[e] < xr - eps; ++e)
      cuts.push_back(extra[e]);
    cuts.push_back(xr);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const double mid = 0.5 * (cuts[s] + cuts[s + 1]);
      const double half = 0.5 * (cuts[s + 1] - cuts[s]);
      double piece = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        piece += rule.weights[j] * f(mid + half * rule.nodes[j]);
      total += piece * half;
    }
  }
  return total;
}

std::vector<double> collect_breaks(const Potential& v) {
  std::vector<double> b = v.interior_breakpoints();
  b.push_back(v.support_min());
  b.push_back(v.support_max());
  std::sort(b.begin(), b.end());
  return b;
}

Potential remove_top_state(const Potential& v, double kappa) {
  const double h = pick_support_step(v, kappa, 0.0);
  const SchrodingerMesh mesh = SchrodingerMesh::build(v, h);
  const std::size_t n = mesh.size();
  // the ground-state wavefunction f_l(i kappa, .), nodeless
  const JostPair jp = solve_jost_on(mesh, Complex(0.0, kappa));
  std::vector<double> psi(n), dpsi(n);
  for (std::size_t i = 0; i < n; ++i) {
    psi[i] = jp.fl[i].real();
    dpsi[i] = jp.fl_prime[i].real();
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!(psi[i] > 0.0))
      throw NumericalFailure("ground-state wavefunction not strictly positive during removal");

  SampledGrid out;
  out.x0 = mesh.x0;
  out.dx = mesh.dx_uniform;
  out.samples.reserve(mesh.uniform_idx.size());
  for (std::size_t idx : mesh.uniform_idx) {
    const double nu = dpsi[idx] / psi[idx];
    out.samples.push_back(2.0 * nu * nu - 2.0 * kappa * kappa - v(mesh.x[idx]));
  }
  return Potential(std::move(out));
}

}  // namespace

double identity_rhs(double kappa, int n) {
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
  return sign * std::ldexp(1.0, 2 * n + 2) * std::pow(kappa, 2 * n + 1) * factorial(n) /
         double_factorial_odd(n);
}

DarbouxAddition add_bound_state(const Potential& v, double kappa, double gamma_abs,
                                double step_hint, double tail_tol) {
  if (!(kappa > 0.0)) throw BadInput("kappa must be positive");
  if (!(gamma_abs > 0.0)) throw BadInput("|gamma| must be positive");
  check_ordering(v, kappa);

  const double h = pick_support_step(v, kappa, step_hint);
  const SchrodingerMesh mesh = SchrodingerMesh::build(v, h);
  const double a = mesh.x.front(), b = mesh.x.back();
  const std::size_t n = mesh.size();

  const JostPair jp = solve_jost_on(mesh, Complex(0.0, kappa));
  std::vector<double> chi(n), dchi(n);
  for (std::size_t i = 0; i < n; ++i) {
    chi[i] = jp.fl[i].real() + gamma_abs * jp.fr[i].real();
    dchi[i] = jp.fl_prime[i].real() + gamma_abs * jp.fr_prime[i].real();
    if (!(chi[i] > 0.0))
      throw NonPositiveChi("chi crossed zero at x=" + std::to_string(mesh.x[i]));
  }

  // exact exponential continuations outside the support
  const ExpPair fl_left = match_exponentials(kappa, a, jp.fl.front().real(),
                                             jp.fl_prime.front().real());
  const ExpPair fr_right = match_exponentials(kappa, b, jp.fr.back().real(),
                                              jp.fr_prime.back().real());
  ExpPair chi_left{fl_left.grow + gamma_abs, fl_left.decay};
  ExpPair chi_right{gamma_abs * fr_right.grow, fr_right.decay + 1.0};
  if (!(chi_right.grow > 0.0) || !(chi_left.decay > 0.0))
    throw NonPositiveChi("chi loses its growing tail; kappa likely not above existing states");

  // grid extents where |mu -+ kappa| <= tail_tol; the minor/major
  // exponential ratio decays like e^{-2 kappa t} past the edge
  const double dx = mesh.dx_uniform;
  auto extent = [&](double minor, double major) {
    const double ratio = 2.0 * kappa * std::abs(minor) / major;
    if (ratio <= tail_tol) return 0.0;
    return std::log(ratio / tail_tol) / (2.0 * kappa);
  };
  auto cells = [&](double e) {
    return std::min<std::size_t>(static_cast<std::size_t>(std::ceil(e / dx)), 6'000'000);
  };
  const std::size_t nr =
      cells(extent(chi_right.decay * std::exp(-2.0 * kappa * b), chi_right.grow));
  const std::size_t nl = cells(extent(chi_left.grow * std::exp(2.0 * kappa * a), chi_left.decay));

  SampledGrid pot, chi_g, mu_g;
  pot.x0 = chi_g.x0 = mu_g.x0 = a - dx * static_cast<double>(nl);
  pot.dx = chi_g.dx = mu_g.dx = dx;
  const std::size_t total = nl + mesh.uniform_idx.size() + nr;
  pot.samples.reserve(total);
  chi_g.samples.reserve(total);
  mu_g.samples.reserve(total);

  for (std::size_t i = 0; i < nl; ++i) {
    const double x = pot.x0 + dx * static_cast<double>(i);
    const double c = chi_left.value(kappa, x);
    const double dc = chi_left.derivative(kappa, x);
    const double mu = dc / c;
    chi_g.samples.push_back(c);
    mu_g.samples.push_back(mu);
    pot.samples.push_back(2.0 * (mu * mu - kappa * kappa));
  }
  for (std::size_t idx : mesh.uniform_idx) {
    const double mu = dchi[idx] / chi[idx];
    chi_g.samples.push_back(chi[idx]);
    mu_g.samples.push_back(mu);
    pot.samples.push_back(2.0 * mu * mu - 2.0 * kappa * kappa - v(mesh.x[idx]));
  }
  for (std::size_t i = 1; i <= nr; ++i) {
    const double x = b + dx * static_cast<double>(i);
    const double c = chi_right.value(kappa, x);
    const double dc = chi_right.derivative(kappa, x);
    const double mu = dc / c;
    chi_g.samples.push_back(c);
    mu_g.samples.push_back(mu);
    pot.samples.push_back(2.0 * (mu * mu - kappa * kappa));
  }

  DarbouxAddition result{Potential(std::move(pot)), DarbouxStep{kappa, gamma_abs,
                                                                std::move(chi_g),
                                                                std::move(mu_g)}};
  return result;
}

Potential remove_bound_state(const Potential& v, int index) {
  const BoundStateData bs = find_bound_states(v, bound_state_ceiling(v));
  const int count = static_cast<int>(bs.kappas.size());
  if (index < 1 || index > count)
    throw NoSuchBoundState("index " + std::to_string(index) + " with " + std::to_string(count) +
                           " states present");

  Potential current = v;
  std::vector<std::pair<double, double>> peeled;  // (kappa, |gamma|) above the target
  for (int level = count; level >= index; --level) {
    const BoundStateData cur = find_bound_states(current, bound_state_ceiling(current));
    const double kap = cur.kappas.back();
    const double gam = std::abs(cur.gammas.back());
    if (level > index) peeled.emplace_back(kap, gam);
    current = remove_top_state(current, kap);
  }
  for (auto it = peeled.rbegin(); it != peeled.rend(); ++it)
    current = add_bound_state(current, it->first, it->second).potential;
  return current;
}

IdentityReport integral_identity(const Potential& v_after, const Potential& v_before,
                                 double kappa, int n) {
  if (n < 0) throw BadInput("identity order must be >= 0");
  if (!(kappa > 0.0)) throw BadInput("kappa must be positive");

  auto integrand = [&](double x) {
    const double va = v_after(x);
    const double vb = v_before(x);
    double w = va - vb;
    const double s = va + vb;
    for (int p = 0; p < n; ++p) w *= s;
    return w;
  };

  double lhs = 0.0;
  if (const auto* g = std::get_if<SampledGrid>(&v_after.form())) {
    lhs = integrate_cells(*g, collect_breaks(v_before), n + 2, integrand);
    // analytic tail contribution past the grid, from mu at the ends
    auto mu_at = [&](double x) {
      return std::sqrt(std::max(0.0, 0.5 * (v_after(x) + v_before(x)) + kappa * kappa));
    };
    const double mu_r = mu_at(g->x_end());
    const double mu_l = -mu_at(g->x0);
    const double pre = -std::ldexp(1.0, n + 1);  // -2^{n+1}
    lhs += pre * (tail_primitive(kappa, n, kappa) - tail_primitive(kappa, n, mu_r));
    lhs += pre * (tail_primitive(kappa, n, mu_l) - tail_primitive(kappa, n, -kappa));
  } else {
    // generic fallback for non-grid pairs
    std::vector<double> cuts = collect_breaks(v_before);
    const std::vector<double> more = collect_breaks(v_after);
    cuts.insert(cuts.end(), more.begin(), more.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      lhs += adaptive_simpson(integrand, cuts[i], cuts[i + 1], 1e-12);
  }

  IdentityReport rep;
  rep.n = n;
  rep.lhs = lhs;
  rep.rhs = identity_rhs(kappa, n);
  rep.residual = std::abs(rep.lhs - rep.rhs) / std::max(1.0, std::abs(rep.rhs));
  return rep;
}

NormShiftReport norm_shift_report(const Potential& v0, const Potential& vn,
                                  std::span<const double> kappas) {
  NormShiftReport rep;
  for (double kap : kappas) {
    rep.dl1_expected += -4.0 * kap;
    rep.dl2sq_expected += 16.0 / 3.0 * kap * kap * kap;
  }

  auto diff1 = [&](double x) { return vn(x) - v0(x); };
  auto diff2 = [&](double x) {
    const double an = vn(x), a0 = v0(x);
    return an * an - a0 * a0;
  };
  if (const auto* g = std::get_if<SampledGrid>(&vn.form())) {
    const std::vector<double> cuts = collect_breaks(v0);
    rep.dl1 = integrate_cells(*g, cuts, 2, diff1);
    rep.dl2sq = integrate_cells(*g, cuts, 3, diff2);
  } else {
    throw BadInput("norm shift expects the transformed potential on a grid");
  }
  rep.dl1_residual = std::abs(rep.dl1 - rep.dl1_expected) / std::max(1.0, std::abs(rep.dl1_expected));
  rep.dl2sq_residual =
      std::abs(rep.dl2sq - rep.dl2sq_expected) / std::max(1.0, std::abs(rep.dl2sq_expected));
  return rep;
}

Potential signflip_partner(const Potential& v1) {
  double step = 0.0;
  if (const auto* g = std::get_if<SampledGrid>(&v1.form())) step = g->dx;
  const SampledGrid rho = zero_energy_logderivative(v1, step);
  SampledGrid out;
  out.x0 = rho.x0;
  out.dx = rho.dx;
  out.samples.reserve(rho.samples.size());
  for (std::size_t i = 0; i < rho.samples.size(); ++i) {
    const double x = rho.x0 + rho.dx * static_cast<double>(i);
    out.samples.push_back(2.0 * rho.samples[i] * rho.samples[i] - v1(x));
  }
  return Potential(std::move(out));
}

}  // namespace scatter1d
