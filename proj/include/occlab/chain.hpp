#pragma once

#include <vector>

#include "occlab/linalg.hpp"
#include "occlab/occupation.hpp"

namespace occlab {

// Edges below this weight are treated as structural zeros when building the
// support graph; users steering kernel entries toward zero should know the
// cutoff.
inline constexpr double kSupportTol = 1e-12;

struct ChainReport {
  std::vector<std::vector<int>> recurrent_classes;  // each sorted ascending
  std::vector<int> transient_states;
  // One invariant distribution per recurrent class, as a full-length vector
  // supported exactly on its class; satisfies pi P = pi at solver precision.
  std::vector<Vec> invariant_dists;
  bool unichain = false;
  double dobrushin_alpha = 0.0;  // (1/2) max_{x,x'} L1(P(x,.), P(x',.))
};

// Recurrent classes are the closed strongly-connected components of the
// support graph; invariant distributions come from a direct linear solve
// with the normalization row replacing one balance row (power iteration is
// kept only as a test oracle). Throws on non-stochastic input.
ChainReport analyze_chain(const Mat& p);

double dobrushin_coefficient(const Mat& p);

// Expected return time to alpha_state and, per state, the expected number
// of visits before the return starting from alpha_state. The Kac identity
// pi(x) = visits(x) / E[tau] is evaluated on alpha's recurrent class and the
// largest gap is reported. Throws if alpha_state is transient.
struct ReturnTimeStats {
  double expected_return_time = 0.0;
  Vec expected_visits;        // full length; zero off alpha's class
  std::vector<int> the_class; // recurrent class containing alpha
  double kac_max_gap = 0.0;
};
ReturnTimeStats return_time_stats(const Mat& p, int alpha_state);

// Splits an invariant occupation measure into its per-class components:
// weight_i = mu(class_i), component_i = normalized restriction to class_i.
// Components are invariant measures themselves and reassemble mu exactly.
// Requires invariance_residual(mu) <= 1e-8.
struct ErgodicComponent {
  double weight = 0.0;
  OccupationMeasure measure;
};
std::vector<ErgodicComponent> ergodic_decomposition(const OccupationMeasure& mu);

}  // namespace occlab
