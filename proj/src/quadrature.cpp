#include "scatter1d/quadrature.hpp"

#include <array>
#include <stdexcept>

namespace scatter1d {

double trapezoid(std::span<const double> y, double dx) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * dx;
}

double simpson_uniform(std::span<const double> y, double dx) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * dx * (y[0] + y[1]);
  std::size_t m = n - 1;  // interval count
  double total = 0.0;
  std::size_t start = 0;
  if (m % 2 == 1) {
    // 3/8 rule on the first three intervals
    if (m >= 3) {
      total += 3.0 * dx / 8.0 * (y[0] + 3.0 * y[1] + 3.0 * y[2] + y[3]);
      start = 3;
    } else {
      return trapezoid(y, dx);
    }
  }
  for (std::size_t i = start; i + 2 <= n - 1; i += 2)
    total += dx / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
  return total;
}

const GaussRule& gauss_rule(int npoints) {
  static const std::array<GaussRule, 9> rules = [] {
    std::array<GaussRule, 9> r;
    r[1] = {{0.0}, {2.0}};
    r[2] = {{-0.5773502691896257, 0.5773502691896257}, {1.0, 1.0}};
    r[3] = {{-0.7745966692414834, 0.0, 0.7745966692414834},
            {0.5555555555555556, 0.8888888888888888, 0.5555555555555556}};
    r[4] = {{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526},
            {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538}};
    r[5] = {{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
             0.9061798459386640},
            {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
             0.2369268850561891}};
    r[6] = {{-0.9324695142031521, -0.6612093864662645, -0.2386191860831969, 0.2386191860831969,
             0.6612093864662645, 0.9324695142031521},
            {0.1713244923791704, 0.3607615730481386, 0.4679139345726910, 0.4679139345726910,
             0.3607615730481386, 0.1713244923791704}};
    r[7] = {{-0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
             0.4058451513773972, 0.7415311855993945, 0.9491079123427585},
            {0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694,
             0.3818300505051189, 0.2797053914892766, 0.1294849661688697}};
    r[8] = {{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
             0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363},
            {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
             0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763}};
    return r;
  }();
  if (npoints < 1 || npoints > 8) throw std::invalid_argument("gauss_rule: npoints in [1,8]");
  return rules[static_cast<std::size_t>(npoints)];
}

double gauss_cells(const std::function<double(double)>& f, double x0, double dx,
                   std::size_t ncells, int npoints) {
  const GaussRule& rule = gauss_rule(npoints);
  double total = 0.0;
  for (std::size_t c = 0; c < ncells; ++c) {
    const double xl = x0 + dx * static_cast<double>(c);
    const double xc = xl + 0.5 * dx;
    double cell = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      cell += rule.weights[j] * f(xc + 0.5 * dx * rule.nodes[j]);
    total += cell * 0.5 * dx;
  }
  return total;
}

namespace {

template <typename T>
T simpson_once(const std::function<T(double)>& f, double a, double fa, double b, double fb,
               double m, T fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename T>
T adaptive_impl(const std::function<T(double)>& f, double a, T fa, double b, T fb, double m, T fm,
                T whole, double tol, int depth) {
  const double ml = 0.5 * (a + m), mr = 0.5 * (m + b);
  const T fml = f(ml), fmr = f(mr);
  const T left = (m - a) / 6.0 * (fa + 4.0 * fml + fm);
  const T right = (b - m) / 6.0 * (fm + 4.0 * fmr + fb);
  const T delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_impl<T>(f, a, fa, m, fm, ml, fml, left, 0.5 * tol, depth - 1) +
         adaptive_impl<T>(f, m, fm, b, fb, mr, fmr, right, 0.5 * tol, depth - 1);
}

template <typename T>
T adaptive_entry(const std::function<T(double)>& f, double a, double b, double abs_tol,
                 int max_depth) {
  if (!(b > a)) return T{};
  const double m = 0.5 * (a + b);
  const T fa = f(a), fb = f(b), fm = f(m);
  const T whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_impl<T>(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        int max_depth) {
  return adaptive_entry<double>(f, a, b, abs_tol, max_depth);
}

std::complex<double> adaptive_simpson_c(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double abs_tol, int max_depth) {
  return adaptive_entry<std::complex<double>>(f, a, b, abs_tol, max_depth);
}

}  // namespace scatter1d
