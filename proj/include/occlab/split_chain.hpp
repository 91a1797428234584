#pragma once

#include <vector>

#include "occlab/chain.hpp"
#include "occlab/linalg.hpp"
#include "occlab/occupation.hpp"
#include "occlab/policy.hpp"

namespace occlab {

// Componentwise minimum of the kernel rows over the set C. C is 1-small
// exactly when the total mass is positive; the returned nu is the maximal
// minorizing measure, so mass 0 simply signals "not small" rather than an
// error.
struct Minorization {
  Vec nu;
  double mass = 0.0;
};
Minorization find_minorization(const Mat& p, const std::vector<int>& small_set);

// Split chain on 2n states. State (x, level) maps to index level*n + x.
// Level 1 restricted to C is the pseudo-atom: all of its rows equal the
// split of nu_hat = nu / mass(nu), so the dynamics there do not depend on
// the particular x. Transitions:
//   from (x,0), x in C:  residual kernel (P(.|x) - delta nu_hat)/(1 - delta),
//   from (x,1), x in C:  nu_hat,
//   from x outside C:    P(.|x)  (both levels),
// each followed by the landing split: a landing state y in C goes to level 1
// with probability delta and stays at level 0 otherwise; y outside C lands
// at level 0. Marginalizing the level bit with weights (1-delta, delta) on C
// reproduces P exactly, and the invariant measure of the split chain
// projects onto the invariant measure of P.
struct SplitChain {
  Mat base;                     // P
  std::vector<int> small_set;   // C, sorted
  Vec nu;
  double delta_mass = 0.0;
  Mat split_kernel;             // 2n x 2n

  int n_base() const { return static_cast<int>(base.size()); }
  int split_index(int x, int level) const { return level * n_base() + x; }

  // Reconstructs P from the split kernel; returns the largest absolute gap.
  double projection_gap() const;
  // Largest L-inf distance between rows of the pseudo-atom.
  double atom_row_gap() const;
};
SplitChain build_split_chain(const Mat& p, const std::vector<int>& small_set,
                             const Vec& nu, double delta_mass);

// Quotient of the split chain that merges the pseudo-atom into one state
// (index n), plus its return-time statistics and the Kac identity check at
// the atom. Also verifies that the split-chain invariant measure projects
// onto the invariant measure of the base chain.
struct AtomReport {
  Mat quotient;                  // (n+1) x (n+1); state n is the atom
  ReturnTimeStats stats;         // return times to the atom
  double atom_mass = 0.0;        // invariant mass of the atom
  double kac_gap_at_atom = 0.0;  // |atom_mass - 1/E[tau]|
  double projection_invariant_gap = 0.0;  // L1(projected split pi, base pi)
};
AtomReport atom_report(const SplitChain& sc);

// Return-time decomposition of a randomized policy (the two-policy split at
// a single randomizing state). The row of phi at a_state must be a two-point
// mixture theta * Dirac(u1) + (1-theta) * Dirac(u2) with u1 < u2; phi^1 and
// phi^2 take the Dirac choices and agree with phi elsewhere. With
// E_i = E_a[tau_a] under phi^i,
//   kappa = theta E_1 / (theta E_1 + (1-theta) E_2),
// and the occupation measure of phi decomposes as
// kappa mu_1 + (1-kappa) mu_2 up to the reported L1 defect.
struct PolicyDecomposition {
  double kappa = 0.0;
  OccupationMeasure mu1, mu2;
  double defect_l1 = 0.0;
  double expected_return_1 = 0.0;
  double expected_return_2 = 0.0;
  bool branches_identical = false;  // phi^1 and phi^2 induce the same chain
};
PolicyDecomposition decompose_randomized_policy(const FiniteMdp& m,
                                                const StationaryPolicy& phi,
                                                int a_state, double theta);

// Scales down whichever of the two measures has the larger total mass so
// both end up with the smaller of the two masses.
void equalize_masses(Vec& nu1, Vec& nu2);

// Verifier for the paired-minorization construction: given the two base
// policies phi1/phi2, per-state mixing weights kappa_x on C, equal-mass
// measures nu1/nu2, and a constant K, the target kernels on C are
//   kappa_x P1(.|x) + (1-kappa_x) P2(.|x) + K (nu1 - nu2)   (for psi1)
//   kappa_x P1(.|x) + (1-kappa_x) P2(.|x) - K (nu1 - nu2)   (for psi2).
// Candidate policies must realize these rows on C within 1e-9 and agree with
// the phi mixture outside C. Only the verification direction is provided;
// whether realizing policies exist at all is not decided here.
struct RealizationCheck {
  bool realized = false;
  double max_gap_1 = 0.0;  // worst row gap of psi1 against its target
  double max_gap_2 = 0.0;
};
RealizationCheck check_realization(const FiniteMdp& m,
                                   const StationaryPolicy& phi1,
                                   const StationaryPolicy& phi2,
                                   const Vec& kappa_x,
                                   const std::vector<int>& small_set,
                                   const Vec& nu1, const Vec& nu2, double K,
                                   const StationaryPolicy& psi1,
                                   const StationaryPolicy& psi2);

}  // namespace occlab
