#pragma once

#include <cstdint>
#include <vector>

#include "occlab/model.hpp"
#include "occlab/occupation.hpp"
#include "occlab/policy.hpp"
#include "occlab/rng.hpp"

namespace occlab {

// One seeded sample path. Identical inputs and seed reproduce the run
// bit-for-bit; see rng.hpp for the generator and its reference outputs.
struct SimulationRun {
  std::uint64_t seed = 0;
  int horizon = 0;
  std::vector<int> states;   // X_0 .. X_{T-1}
  std::vector<int> actions;  // chosen action ids U_0 .. U_{T-1}
  Vec step_costs;
  Vec prefix_averages;            // (1/t) sum_{s<t} c_s for t = 1..T
  double average_cost = 0.0;      // prefix_averages.back()
  OccupationMeasure pathwise_occupation;  // v_T
};

// Actions are drawn by inverse-CDF on the policy row and successor states by
// inverse-CDF on the kernel row, consuming one uniform each. Degenerate rows
// (exactly one positive entry) consume no randomness, so deterministic
// policies on 0/1 kernels give seed-independent periodic paths.
SimulationRun simulate_path(const FiniteMdp& m, const StationaryPolicy& gamma,
                            int x0, int horizon, std::uint64_t seed);

// Mean empirical occupation measure over horizon T, computed by the exact
// forward recursion of state marginals (never by path averaging):
//   mu_T(x,u) = (1/T) sum_{t<T} nu_t(x) gamma(u|x),  nu_{t+1} = nu_t P.
// Its invariance residual is exactly TV(nu_0, nu_T)/T <= 1/T.
OccupationMeasure mean_empirical_occupation(const FiniteMdp& m,
                                            const StationaryPolicy& gamma,
                                            const Vec& nu0, int horizon);

// Exact expected average costs a_T = <mu_T, c> for every prefix T <= T_max,
// with the sup and inf over the last half of the horizon reported as
// limsup/liminf proxies. Per-prefix residuals are the Krylov-Bogoliubov
// defects TV(nu_0, nu_T)/T. When the induced kernel is unichain with
// Dobrushin coefficient alpha < 1, the per-step expected cost obeys
// |<nu_t, c_gamma> - <pi, c_gamma>| <= 2 ||c_gamma||_inf alpha^t TV(nu_0, pi),
// which bounds how fast the two proxies close.
struct CostLimits {
  Vec prefix_averages;   // index T-1 holds a_T
  Vec residuals;         // index T-1 holds TV(nu_0, nu_T)/T
  double tail_sup = 0.0;
  double tail_inf = 0.0;
  bool unichain = false;
  double alpha = 1.0;
  double stationary_average = 0.0;  // <pi, c_gamma> when unichain
  double per_step_bound_scale = 0.0;  // 2 ||c_gamma||_inf TV(nu_0, pi)
};
CostLimits cost_limits(const FiniteMdp& m, const StationaryPolicy& gamma,
                       const Vec& nu0, int horizon_max);

}  // namespace occlab
