#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace scatter1d {

double trapezoid(std::span<const double> y, double dx);

// Composite Simpson on a uniform grid; a 3/8 block absorbs an odd
// interval count.
double simpson_uniform(std::span<const double> y, double dx);

// Gauss-Legendre nodes/weights on [-1,1]
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_rule(int npoints);  // npoints in [1,8]

// Integrates f over [x0,x1] with an npoint Gauss rule per cell of the
// given uniform partition; exact for piecewise polynomials up to degree
// 2*npoints-1 aligned with the cells.
double gauss_cells(const std::function<double(double)>& f, double x0, double dx,
                   std::size_t ncells, int npoints);

// Adaptive Simpson; works for integrable endpoint singularities by deep
// subdivision.  abs_tol is the absolute target for the whole interval.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 48);
std::complex<double> adaptive_simpson_c(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double abs_tol, int max_depth = 48);

}  // namespace scatter1d
