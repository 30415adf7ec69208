#include "scatter1d/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "scatter1d/errors.hpp"

namespace scatter1d {

double SampledGrid::value(double x) const {
  const double t = (x - x0) / dx;
  if (t <= 0.0 || t >= static_cast<double>(samples.size() - 1)) {
    // endpoints themselves belong to the support
    if (t == 0.0) return samples.front();
    if (t == static_cast<double>(samples.size() - 1)) return samples.back();
    return 0.0;
  }
  const auto i = static_cast<std::size_t>(t);
  const double w = t - static_cast<double>(i);
  return samples[i] * (1.0 - w) + samples[i + 1] * w;
}

Potential::Potential(PiecewiseConstant pc) : form_(std::move(pc)) {
  const auto& p = std::get<PiecewiseConstant>(form_);
  if (p.breakpoints.size() < 2)
    throw BadInput("piecewise potential needs at least two breakpoints");
  if (p.values.size() + 1 != p.breakpoints.size())
    throw BadInput("piecewise potential needs one value per cell");
  for (std::size_t i = 0; i + 1 < p.breakpoints.size(); ++i)
    if (!(p.breakpoints[i] < p.breakpoints[i + 1]))
      throw BadInput("piecewise breakpoints must be strictly increasing");
  a_ = p.breakpoints.front();
  b_ = p.breakpoints.back();
}

Potential::Potential(SampledGrid grid) : form_(std::move(grid)) {
  const auto& g = std::get<SampledGrid>(form_);
  if (g.samples.size() < 2) throw BadInput("sampled potential needs at least two samples");
  if (!(g.dx > 0.0)) throw BadInput("sampled potential needs dx > 0");
  a_ = g.x0;
  b_ = g.x_end();
}

Potential::Potential(SquareWell well) : form_(well) {
  if (!(well.depth > 0.0)) throw BadInput("square well needs depth > 0");
  a_ = 0.0;
  b_ = 1.0;
}

Potential Potential::zero(double a, double b) {
  return Potential(PiecewiseConstant{{a, b}, {0.0}});
}

double Potential::operator()(double x) const {
  if (x < a_ || x > b_) return 0.0;
  return std::visit(
      [x](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PiecewiseConstant>) {
          // cell lookup; the right edge belongs to the last cell
          auto it = std::upper_bound(f.breakpoints.begin(), f.breakpoints.end(), x);
          auto i = static_cast<std::size_t>(it - f.breakpoints.begin());
          if (i == 0) i = 1;
          if (i > f.values.size()) i = f.values.size();
          return f.values[i - 1];
        } else if constexpr (std::is_same_v<F, SampledGrid>) {
          return f.value(x);
        } else {
          return -f.depth;
        }
      },
      form_);
}

double Potential::max_abs() const {
  return std::visit(
      [](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PiecewiseConstant>) {
          double m = 0.0;
          for (double v : f.values) m = std::max(m, std::abs(v));
          return m;
        } else if constexpr (std::is_same_v<F, SampledGrid>) {
          double m = 0.0;
          for (double v : f.samples) m = std::max(m, std::abs(v));
          return m;
        } else {
          return f.depth;
        }
      },
      form_);
}

std::vector<double> Potential::interior_breakpoints() const {
  return std::visit(
      [this](const auto& f) -> std::vector<double> {
        using F = std::decay_t<decltype(f)>;
        std::vector<double> out;
        if constexpr (std::is_same_v<F, PiecewiseConstant>) {
          for (std::size_t i = 1; i + 1 < f.breakpoints.size(); ++i)
            out.push_back(f.breakpoints[i]);
        } else if constexpr (std::is_same_v<F, SampledGrid>) {
          out.reserve(f.samples.size());
          for (std::size_t i = 1; i + 1 < f.samples.size(); ++i)
            out.push_back(f.x0 + f.dx * static_cast<double>(i));
        }
        (void)this;
        return out;
      },
      form_);
}

namespace {

// int_{x0}^{x1} (1+|x|) dx
double weighted_cell(double x0, double x1) {
  auto prim = [](double x) { return x + 0.5 * x * std::abs(x); };
  return prim(x1) - prim(x0);
}

}  // namespace

NormReport norms(const Potential& v) {
  NormReport r;
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PiecewiseConstant>) {
          double l2sq = 0.0;
          for (std::size_t i = 0; i < f.values.size(); ++i) {
            const double w = f.breakpoints[i + 1] - f.breakpoints[i];
            const double val = f.values[i];
            l2sq += val * val * w;
            r.integral += val * w;
            r.l1_weighted += std::abs(val) * weighted_cell(f.breakpoints[i], f.breakpoints[i + 1]);
          }
          r.l2 = std::sqrt(l2sq);
        } else if constexpr (std::is_same_v<F, SquareWell>) {
          r.l2 = f.depth;
          r.integral = -f.depth;
          r.l1_weighted = f.depth * weighted_cell(0.0, 1.0);
        } else {
          // composite trapezoid on the sample grid
          double l2sq = 0.0, l1w = 0.0, in = 0.0;
          const std::size_t n = f.samples.size();
          for (std::size_t i = 0; i < n; ++i) {
            const double x = f.x0 + f.dx * static_cast<double>(i);
            const double val = f.samples[i];
            const double wq = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
            l2sq += wq * val * val;
            l1w += wq * (1.0 + std::abs(x)) * std::abs(val);
            in += wq * val;
          }
          r.l2 = std::sqrt(l2sq * f.dx);
          r.l1_weighted = l1w * f.dx;
          r.integral = in * f.dx;
        }
      },
      v.form());
  return r;
}

}  // namespace scatter1d
