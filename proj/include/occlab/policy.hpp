#pragma once

#include <vector>

#include "occlab/model.hpp"

namespace occlab {

struct OccupationMeasure;  // occupation.hpp

// A policy row counts as Dirac when its largest entry reaches this
// threshold. The simplex returns exact Diracs on nondegenerate instances;
// the slack absorbs floating error only.
inline constexpr double kDiracThreshold = 1.0 - 1e-9;

// Stationary (possibly randomized) policy: one probability row per state
// over that state's admissible actions (rows[x][i] weights admissible[x][i]).
// The model pointer is non-owning; the policy is only valid while the model
// it was built against is alive.
struct StationaryPolicy {
  const FiniteMdp* model = nullptr;
  Mat rows;

  bool row_is_dirac(int state) const;
  // True when every row is Dirac.
  bool is_deterministic() const;
  // For a Dirac row, the chosen action id; otherwise the argmax action.
  int chosen_action(int state) const;
};

// Dirac policy that selects actions[x] (action ids) at state x.
StationaryPolicy deterministic_policy(const FiniteMdp& m, const std::vector<int>& actions);

struct Disintegration {
  Vec state_marginal;        // pi(x) = sum_u mu(x, u)
  StationaryPolicy policy;   // gamma(u|x) = mu(x,u) / pi(x) where pi(x) > 0
  double determinism_fraction = 0.0;  // pi-mass of states with a Dirac row
};

// Factors mu(dx,du) = gamma(du|x) pi(dx). Where pi(x) = 0 the policy row is
// set to the Dirac at the first admissible action, which makes the
// completion canonical and runs reproducible.
Disintegration disintegrate(const OccupationMeasure& mu);

// Induced state-to-state kernel P(y|x) = sum_u gamma(u|x) T(y|x,u).
Mat policy_kernel(const FiniteMdp& m, const StationaryPolicy& gamma);

// Per-state convex combination: row x of the result is
// theta[x] * gamma1(.|x) + (1 - theta[x]) * gamma2(.|x).
StationaryPolicy mix_policies(const StationaryPolicy& gamma1,
                              const StationaryPolicy& gamma2, const Vec& theta);

// Piecewise-constant lift of a coarse-grid policy onto a model with k
// subcells per coarse cell: every subcell inherits its coarse cell's row.
StationaryPolicy lift_policy(const StationaryPolicy& coarse,
                             const FiniteMdp& fine_model, int k);

// Deterministic quantization of a randomized coarse-grid policy onto the
// k-fold refined grid. Per coarse cell, action counts follow largest-
// remainder apportionment of k * gamma(.|cell) (ties to the lower action
// index), so empirical frequencies match the row within 1/k per action.
// The counted actions are spread across the subcells by an even-stride
// schedule rather than in contiguous blocks: blocks would tie the action to
// the position inside the cell at every refinement, while the spread
// assignment pushes that dependence to the subcell scale, which is what
// makes the refined deterministic policies approach the randomized one.
StationaryPolicy quantize_policy(const StationaryPolicy& coarse,
                                 const FiniteMdp& fine_model, int k);

}  // namespace occlab
