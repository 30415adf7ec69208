#include "scatter1d/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "scatter1d/errors.hpp"

namespace scatter1d {

namespace {

constexpr Complex kImag{0.0, 1.0};

// real-valued 1/T0 on the negative imaginary axis
std::function<double(double)> inv_t0_on_lower_axis(const ReflectionRatio& d) {
  if (d.kind() == ReflectionRatio::Kind::SquareWellModel) {
    const SquareWellTzero& swt = square_well_tzero(d.epsilon());
    return [&swt](double beta) { return swt.inverse(Complex(0.0, -beta)).real(); };
  }
  if (d.kind() == ReflectionRatio::Kind::FromPotential) {
    const Potential& v = *d.potential();
    auto bs = std::make_shared<const BoundStateData>(
        find_bound_states(v, bound_state_ceiling(v)));
    const Potential* vp = d.potential();
    return [vp, bs](double beta) {
      // 1/T0(k) = 1/T(k) * prod (k + i kappa)/(k - i kappa), continued to
      // k = -i beta where every factor is real
      double value = inverse_transmission_at(*vp, Complex(0.0, -beta)).real();
      for (double kap : bs->kappas) value *= (kap - beta) / (-(kap + beta));
      return value;
    };
  }
  throw AnalyticModelRequired("resonance search needs an analytic model");
}

}  // namespace

ResonanceSet find_resonances(const ReflectionRatio& d, double beta_max, int scan_points,
                             double bisect_tol) {
  if (!d.analytic()) throw AnalyticModelRequired("resonance search needs an analytic model");
  if (beta_max <= 0.0) {
    if (d.kind() == ReflectionRatio::Kind::SquareWellModel)
      beta_max = 2.0 * std::sqrt(d.epsilon());
    else
      beta_max = 2.0 * std::sqrt(d.potential()->max_abs()) + 1.0;
  }
  const auto g = inv_t0_on_lower_axis(d);

  auto scan = [&](int n) {
    std::vector<std::pair<double, double>> brackets;
    double prev_b = beta_max / static_cast<double>(n);
    double prev_g = g(prev_b);
    for (int i = 2; i <= n; ++i) {
      const double b = beta_max * static_cast<double>(i) / static_cast<double>(n);
      const double cur = g(b);
      if (prev_g == 0.0 || prev_g * cur < 0.0) brackets.emplace_back(prev_b, b);
      prev_b = b;
      prev_g = cur;
    }
    return brackets;
  };

  int n = std::max(scan_points, 2048);
  auto brackets = scan(n);
  while (true) {
    if (2 * n > (1 << 16)) {
      auto refined = scan(1 << 16);
      if (refined.size() != brackets.size())
        throw ScanTooCoarse("resonance count unresolved at 2^16 scan points");
      brackets = std::move(refined);
      break;
    }
    auto refined = scan(2 * n);
    if (refined.size() == brackets.size()) {
      brackets = std::move(refined);
      break;
    }
    brackets = std::move(refined);
    n *= 2;
  }

  ResonanceSet rs;
  rs.source = d.kind() == ReflectionRatio::Kind::SquareWellModel
                  ? "squarewell:" + std::to_string(d.epsilon())
                  : "potential";
  for (auto [lo, hi] : brackets) {
    const double scale = std::max(std::abs(g(lo)), std::abs(g(hi)));
    double glo = g(lo);
    while (hi - lo > bisect_tol * std::max(1.0, lo)) {
      const double mid = 0.5 * (lo + hi);
      const double gm = g(mid);
      if (gm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (glo * gm < 0.0)
        hi = mid;
      else {
        lo = mid;
        glo = gm;
      }
    }
    const double beta = 0.5 * (lo + hi);
    if (!(std::abs(g(beta)) <= 1e-8 * std::max(scale, 1e-300)))
      throw NumericalFailure("resonance residual above 1e-8 of the local scale");
    rs.betas.push_back(beta);
  }

  if (rs.betas.empty()) {
    const Classification cls = classify(d);
    if (cls.kind == Classification::Kind::GenericOdd)
      throw WindowTooSmall("odd data requires at least one resonance below beta_max=" +
                           std::to_string(beta_max));
  }
  return rs;
}

std::vector<int> allowed_N(const Classification& cls, int z) {
  std::vector<int> out;
  const int top = z + 1;
  switch (cls.kind) {
    case Classification::Kind::Exceptional:
      for (int n = 0; n <= top; ++n) out.push_back(n);
      break;
    case Classification::Kind::GenericEven:
      for (int n = 0; n <= top; n += 2) out.push_back(n);
      break;
    case Classification::Kind::GenericOdd:
      for (int n = 1; n <= top; n += 2) out.push_back(n);
      break;
  }
  return out;
}

std::vector<Candidate> enumerate_candidates(const ReflectionRatio& d, const ResonanceSet& rs,
                                            std::span<const int> allowed, double c0) {
  if (!(c0 >= 0.0)) throw BadInput("C0 must be nonnegative");
  std::vector<double> d_at(rs.betas.size());
  for (std::size_t m = 0; m < rs.betas.size(); ++m) d_at[m] = d.eval_imag_axis(rs.betas[m]);

  std::vector<Candidate> out;
  const int m = static_cast<int>(rs.betas.size());
  for (int n : allowed) {
    if (n < 0 || n > m) continue;
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      bool pass = true;
      for (int j = 1; j <= n && pass; ++j) {
        const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
        pass = sign * d_at[static_cast<std::size_t>(idx[static_cast<std::size_t>(j - 1)])] > 0.0;
      }
      if (pass) {
        Candidate c;
        c.n = n;
        double cume = c0 * c0;
        for (int j = 0; j < n; ++j) {
          const double kap = rs.betas[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
          c.kappas.push_back(kap);
          c.gammas.push_back(d_at[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]);
          cume += 16.0 / 3.0 * kap * kap * kap;
        }
        c.c_n = std::sqrt(cume);
        out.push_back(std::move(c));
      }
      // next combination
      int j = n - 1;
      while (j >= 0 && idx[static_cast<std::size_t>(j)] == m - n + j) --j;
      if (j < 0) break;
      ++idx[static_cast<std::size_t>(j)];
      for (int i = j + 1; i < n; ++i)
        idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
    if (x.c_n != y.c_n) return x.c_n < y.c_n;
    return x.n < y.n;
  });
  return out;
}

double c0_from_reference(const Potential& v_ref) {
  const BoundStateData bs = find_bound_states(v_ref, bound_state_ceiling(v_ref));
  const double l2 = norms(v_ref).l2;
  double disc = l2 * l2;
  for (double kap : bs.kappas) disc -= 16.0 / 3.0 * kap * kap * kap;
  if (disc < -1e-9 * l2 * l2)
    throw NegativeDiscriminant("reference norm below the bound-state ladder contribution");
  return std::sqrt(std::max(disc, 0.0));
}

Disambiguation disambiguate(std::span<const Candidate> candidates, double c_bound) {
  Disambiguation res;
  for (const Candidate& c : candidates)
    if (c.c_n <= c_bound) res.qualifying.push_back(c);
  std::sort(res.qualifying.begin(), res.qualifying.end(),
            [](const Candidate& x, const Candidate& y) { return x.c_n < y.c_n; });
  if (res.qualifying.empty())
    res.status = Disambiguation::Status::NoneBelow;
  else if (res.qualifying.size() == 1)
    res.status = Disambiguation::Status::Unique;
  else
    res.status = Disambiguation::Status::Ambiguous;
  return res;
}

namespace {

struct Clipped {
  Potential potential;
  double tail_max = 0.0;
};

Clipped clip_to_support(const Potential& v, double a, double b) {
  const auto* g = std::get_if<SampledGrid>(&v.form());
  if (!g) return {v, 0.0};
  SampledGrid out;
  out.dx = g->dx;
  double tail = 0.0;
  std::vector<double> inside;
  double x0 = 0.0;
  for (std::size_t i = 0; i < g->samples.size(); ++i) {
    const double x = g->x0 + g->dx * static_cast<double>(i);
    if (x < a - 1e-9 || x > b + 1e-9)
      tail = std::max(tail, std::abs(g->samples[i]));
    else {
      if (inside.empty()) x0 = x;
      inside.push_back(g->samples[i]);
    }
  }
  out.x0 = x0;
  out.samples = std::move(inside);
  return {Potential(std::move(out)), tail};
}

}  // namespace

CandidateVerification verify_candidate(const Candidate& cand, const ReflectionRatio& d,
                                       const Potential& v_ref,
                                       std::span<const double> check_kgrid) {
  const BoundStateData ref_states = find_bound_states(v_ref, bound_state_ceiling(v_ref));
  const int n_ref = static_cast<int>(ref_states.kappas.size());

  Potential v0 = v_ref;
  for (int level = n_ref; level >= 1; --level) v0 = remove_bound_state(v0, level);

  // additions flip the sign of D; an exceptional parity mismatch is fixed
  // by switching to the partner potential before re-adding
  if ((n_ref + cand.n) % 2 != 0) v0 = signflip_partner(v0);

  Potential built = std::move(v0);
  for (int j = 0; j < cand.n; ++j) {
    const double kap = cand.kappas[static_cast<std::size_t>(j)];
    const double gam = std::abs(d.eval_imag_axis(kap));
    built = add_bound_state(built, kap, gam).potential;
  }

  Clipped clip = clip_to_support(built, v_ref.support_min(), v_ref.support_max());

  CandidateVerification rep{cand, std::move(clip.potential)};
  rep.tail_max = clip.tail_max;
  const std::vector<Complex> d_rec = ratio_D(rep.reconstructed, check_kgrid);
  for (std::size_t i = 0; i < check_kgrid.size(); ++i)
    rep.d_max_err = std::max(rep.d_max_err, std::abs(d_rec[i] - d.eval_real(check_kgrid[i])));
  rep.norm = norms(rep.reconstructed).l2;
  rep.norm_rel_err = std::abs(rep.norm - cand.c_n) / std::max(1.0, cand.c_n);
  rep.bound_states_found = static_cast<int>(
      find_bound_states(rep.reconstructed, bound_state_ceiling(rep.reconstructed)).kappas.size());
  return rep;
}

}  // namespace scatter1d
