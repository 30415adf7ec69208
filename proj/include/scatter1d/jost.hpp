#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "scatter1d/potential.hpp"

namespace scatter1d {

using Complex = std::complex<double>;

// The potential pre-sampled for fixed-step 4th-order integration: nodes
// cover the support, every breakpoint of V is a node, and each interval
// carries the one-sided endpoint values so cell potentials are integrated
// without smearing their jumps.
struct SchrodingerMesh {
  std::vector<double> x;       // ascending nodes, first = support_min, last = support_max
  std::vector<double> v_left;  // V(x_i+)  per interval i
  std::vector<double> v_mid;   // V at interval midpoint
  std::vector<double> v_right; // V(x_{i+1}-)
  std::vector<std::size_t> uniform_idx;  // positions of the uniform target nodes
  double x0 = 0.0, dx_uniform = 0.0;     // the uniform sub-grid
  double max_step = 0.0;

  std::size_t size() const { return x.size(); }
  static SchrodingerMesh build(const Potential& v, double max_step);
};

// Jost solutions sampled on the mesh nodes.  Outside the support they
// continue as exact exponentials and are not stored.
struct JostPair {
  Complex k;
  std::vector<double> x;
  std::vector<Complex> fl, fl_prime, fr, fr_prime;

  // max relative spread of the Wronskian fl*fr' - fl'*fr over the nodes
  double wronskian_spread() const;
  Complex wronskian() const;  // at the left edge
};

// Integrates psi'' + k^2 psi = V psi from the exact exponential boundary
// values at the support edges (f_l right-to-left, f_r left-to-right).
// Valid for Im k >= 0; for compactly supported V the same integration
// continues the solutions to the entire k plane.
JostPair solve_jost(const Potential& v, Complex k, double x_grid_step);
JostPair solve_jost_on(const SchrodingerMesh& mesh, Complex k);

struct ScatteringEntry {
  Complex inv_t;      // 1/T(k)
  Complex l_over_t;   // L(k)/T(k)
  Complex r_over_t;   // R(k)/T(k)
};

ScatteringEntry scattering_entry(const JostPair& jp);

// One k with automatic step control: the step starts at
// support_length/4096 and is halved until two successive T values agree
// to 1e-8.
ScatteringEntry scattering_entry_controlled(const Potential& v, Complex k);

struct ScatteringCoefficients {
  std::vector<double> kgrid;
  std::vector<Complex> T, L, R;
};

// T, L, R on an ascending positive k grid; entries are independent and
// evaluated concurrently when threads != 1 (0 = hardware count).
ScatteringCoefficients scattering_coefficients(const Potential& v, std::vector<double> kgrid,
                                               int threads = 0);

// D(k) = L(k)/T(k)
std::vector<Complex> ratio_D(const Potential& v, std::span<const double> kgrid, int threads = 0);
Complex ratio_D_at(const Potential& v, Complex k);

struct BoundStateData {
  std::vector<double> kappas;  // ascending
  std::vector<double> gammas;  // dependency constants, (-1)^(N-j) gamma_j > 0
};

// All zeros of the Wronskian on i(0, kappa_max]: sign-change scan plus
// bisection to |dkappa| <= 1e-10.  gamma_j is the projection of f_l onto
// f_r over the support, which stays stable when the midpoint sits near a
// node of the wavefunction.
BoundStateData find_bound_states(const Potential& v, double kappa_max, int scan_points = 1024);

// kappa_max default covering every possible state
double bound_state_ceiling(const Potential& v);

// rho(x) = f_l'(0,x)/f_l(0,x) for an exceptional potential without bound
// states, sampled on the uniform mesh nodes.  step = 0 picks
// support_length/4096.
SampledGrid zero_energy_logderivative(const Potential& v, double step = 0.0);

// 1/T continued to arbitrary complex k (entire for compact support);
// real-valued on the imaginary axis.
Complex inverse_transmission_at(const Potential& v, Complex k, double step = 0.0);

}  // namespace scatter1d
