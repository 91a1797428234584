#pragma once

#include <vector>

#include "occlab/lp.hpp"
#include "occlab/model.hpp"
#include "occlab/policy.hpp"

namespace occlab {

// Probability measure on the admissible state-action pairs, stored in the
// same jagged shape as the model kernel (values[x][i] is the mass of
// (x, admissible[x][i])). The model pointer is non-owning.
struct OccupationMeasure {
  const FiniteMdp* model = nullptr;
  Mat values;

  double total_mass() const;
  Vec flat() const;  // values in pair_offsets order
};

// Equality-form LP over the admissible pairs:
//   minimize  sum c(x,u) mu(x,u)
//   s.t.      sum_u mu(y,u) - sum_{(x,u)} mu(x,u) T(y|x,u) = 0   (balance, per y)
//             sum mu = 1                                          (normalization)
//             mu >= 0.
// The n balance rows always sum to the zero row, so the system carries one
// structural redundancy; phase I of the solver detects and drops it. The
// optimal value is the least long-run average cost over invariant
// occupation measures.
LpProblem build_occupation_lp(const FiniteMdp& m);

// Reads an LP solution vector back into measure shape.
OccupationMeasure occupation_from_flat(const FiniteMdp& m, const Vec& flat);

// mu(x,u) = pi(x) gamma(u|x). pi must be invariant for the policy kernel
// (checked: ||pi P - pi||_1 <= 1e-8); with an exact invariant pi the result
// has invariance residual at rounding level.
OccupationMeasure occupation_of_policy(const FiniteMdp& m, const StationaryPolicy& gamma,
                                       const Vec& pi);

// Total-variation defect between the state marginal of mu and its one-step
// image: (1/2) sum_y | sum_u mu(y,u) - sum_{(x,u)} mu(x,u) T(y|x,u) |.
// Zero exactly when mu is an invariant occupation measure. Reported in
// total variation so the 1/T Krylov-Bogoliubov bound on mean empirical
// measures applies verbatim.
double invariance_residual(const OccupationMeasure& mu);

// <mu, c> = sum c(x,u) mu(x,u).
double expected_cost(const OccupationMeasure& mu);

// kappa mu1 + (1-kappa) mu2 for kappa in (0,1); both measures must live on
// the same model. Mixtures of invariant measures stay invariant.
OccupationMeasure mix_occupations(const OccupationMeasure& mu1,
                                  const OccupationMeasure& mu2, double kappa);

double l1_distance(const OccupationMeasure& mu1, const OccupationMeasure& mu2);

}  // namespace occlab
