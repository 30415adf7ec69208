#pragma once

#include <variant>
#include <vector>

namespace scatter1d {

// V(x) constant on each cell [breakpoints[i], breakpoints[i+1]).
struct PiecewiseConstant {
  std::vector<double> breakpoints;  // strictly increasing, size m+1
  std::vector<double> values;       // size m
};

// Linear interpolation between equally spaced samples, 0 outside.
struct SampledGrid {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<double> samples;

  double x_end() const { return x0 + dx * static_cast<double>(samples.size() - 1); }
  double value(double x) const;
};

// V(x) = -depth on [0,1], an attractive well (the sign that carries
// bound states).
struct SquareWell {
  double depth = 1.0;
};

/// A real, compactly supported potential.  Evaluation is exactly zero
/// outside [support_min, support_max]; values are immutable after
/// construction, so instances are safe to share across threads.
class Potential {
public:
  using Form = std::variant<PiecewiseConstant, SampledGrid, SquareWell>;

  explicit Potential(PiecewiseConstant pc);
  explicit Potential(SampledGrid grid);
  explicit Potential(SquareWell well);

  // V == 0 represented as a single zero-valued cell on [a,b]
  static Potential zero(double a = 0.0, double b = 1.0);

  double operator()(double x) const;

  double support_min() const { return a_; }
  double support_max() const { return b_; }
  double support_length() const { return b_ - a_; }

  // least upper bound for |V| (exact for cells, max sample for grids)
  double max_abs() const;

  // x-values strictly inside the support where V may be non-smooth;
  // integrators align their steps to these
  std::vector<double> interior_breakpoints() const;

  const Form& form() const { return form_; }
  bool is_grid() const { return std::holds_alternative<SampledGrid>(form_); }

private:
  Form form_;
  double a_ = 0.0, b_ = 0.0;
};

struct NormReport {
  double l2 = 0.0;           // sqrt(int V^2)
  double l1_weighted = 0.0;  // int (1+|x|) |V|
  double integral = 0.0;     // int V
};

// Closed-form for cell potentials, composite trapezoid on the sample
// grid otherwise.
NormReport norms(const Potential& v);

}  // namespace scatter1d
