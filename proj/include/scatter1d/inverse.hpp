#pragma once

#include <span>
#include <string>
#include <vector>

#include "scatter1d/darboux.hpp"
#include "scatter1d/dispersion.hpp"
#include "scatter1d/potential.hpp"

namespace scatter1d {

struct ResonanceSet {
  std::vector<double> betas;  // ascending zeros of 1/T0 on the negative imaginary axis
  std::string source;
};

// Brackets sign changes of the real function beta -> 1/T0(-i beta) on
// (0, beta_max] and bisects each to |dbeta| <= 1e-8.  beta_max <= 0
// defaults to 2 sqrt(eps) for square-well data.  Near-degenerate pairs
// trigger scan doubling up to 2^16 points.
ResonanceSet find_resonances(const ReflectionRatio& d, double beta_max = 0.0,
                             int scan_points = 2048, double bisect_tol = 1e-8);

// Exceptional: every N in [0, Z+1]; generic: the parity cut of the same
// range (odd N starts at 1).
std::vector<int> allowed_N(const Classification& cls, int z);

struct Candidate {
  int n = 0;
  std::vector<double> kappas;  // ascending subset of the resonances
  std::vector<double> gammas;  // D(i kappa_j), sign-checked
  double c_n = 0.0;            // sqrt(C0^2 + 16/3 sum kappa^3)
};

// Every ascending N-subset of the resonances passing the sign rule
// (-1)^{N-j} D(i kappa_j) > 0, for every allowed N; sorted by c_n.
std::vector<Candidate> enumerate_candidates(const ReflectionRatio& d, const ResonanceSet& rs,
                                            std::span<const int> allowed, double c0);

// C0 = sqrt(||V_ref||^2 - 16/3 sum kappa_j^3) over the reference's own
// bound states.
double c0_from_reference(const Potential& v_ref);

struct Disambiguation {
  enum class Status { Unique, Ambiguous, NoneBelow };
  Status status = Status::NoneBelow;
  std::vector<Candidate> qualifying;  // c_n <= bound, ascending
};

Disambiguation disambiguate(std::span<const Candidate> candidates, double c_bound);

struct CandidateVerification {
  CandidateVerification(Candidate c, Potential p)
      : candidate(std::move(c)), reconstructed(std::move(p)) {}
  Candidate candidate;
  Potential reconstructed;  // clipped to the reference support
  double d_max_err = 0.0;       // max |D_reconstructed - D| over the check grid
  double norm = 0.0;            // quadrature L2 norm of the reconstruction
  double norm_rel_err = 0.0;    // vs the ladder value c_n
  double tail_max = 0.0;        // max |V| discarded outside the reference support
  int bound_states_found = 0;
};

// Full-stack check: strip the reference potential's bound states, re-add
// the candidate's states with |gamma_j| = |D(i kappa_j)| (flipping the
// exceptional sign branch when the parities differ), then compare the
// forward data and the L2 norm.
CandidateVerification verify_candidate(const Candidate& cand, const ReflectionRatio& d,
                                       const Potential& v_ref,
                                       std::span<const double> check_kgrid);

}  // namespace scatter1d
