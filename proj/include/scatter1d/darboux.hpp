#pragma once

#include <span>

#include "scatter1d/jost.hpp"
#include "scatter1d/potential.hpp"

namespace scatter1d {

// One bound-state addition: chi = f_l(i kappa,.) + |gamma| f_r(i kappa,.)
// is strictly positive, mu = chi'/chi tends to +-kappa at the far ends.
struct DarbouxStep {
  double kappa = 0.0;
  double gamma_abs = 0.0;
  SampledGrid chi;
  SampledGrid mu;
};

struct DarbouxAddition {
  Potential potential;  // V - 2 mu', realized on a grid extended into the tails
  DarbouxStep step;
};

// Adds one bound state at kappa above every existing one.  The output
// grid extends to where |mu -+ kappa| <= tail_tol; past that the tails
// carry less than ~4*kappa*tail_tol of amplitude.
DarbouxAddition add_bound_state(const Potential& v, double kappa, double gamma_abs,
                                double step_hint = 0.0, double tail_tol = 1e-8);

// Removes the index-th bound state (1-based, kappas ascending).  The top
// state goes through the log-derivative of its own nodeless wavefunction;
// lower states cascade: peel down to the target, then re-add the peeled
// states with their recorded dependency-constant magnitudes.
Potential remove_bound_state(const Potential& v, int index);

struct IdentityReport {
  int n = 0;
  double lhs = 0.0;       // int (V_after - V_before)(V_after + V_before)^n
  double rhs = 0.0;       // (-1)^{n+1} 2^{2n+2} kappa^{2n+1} n!/(2n+1)!!
  double residual = 0.0;  // |lhs-rhs| / max(1,|rhs|)
};

IdentityReport integral_identity(const Potential& v_after, const Potential& v_before,
                                 double kappa, int n);

double identity_rhs(double kappa, int n);

struct NormShiftReport {
  double dl1 = 0.0, dl1_expected = 0.0, dl1_residual = 0.0;
  double dl2sq = 0.0, dl2sq_expected = 0.0, dl2sq_residual = 0.0;
};

// Aggregate first/second moment shifts after N additions at the given
// kappas: dl1 -> -4 sum kappa_j, dl2sq -> 16/3 sum kappa_j^3.
NormShiftReport norm_shift_report(const Potential& v0, const Potential& vn,
                                  std::span<const double> kappas);

// The exceptional partner V2 = 2 rho^2 - V1 sharing T and flipping the
// sign of L; an involution, support-preserving.
Potential signflip_partner(const Potential& v1);

}  // namespace scatter1d
