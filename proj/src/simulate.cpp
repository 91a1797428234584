#include "occlab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "occlab/chain.hpp"

namespace occlab {
namespace {

// Inverse-CDF draw from a probability row. Rows with exactly one positive
// entry are degenerate and consume no randomness.
int draw_index(const Vec& row, SplitMix64& rng) {
  int positive = -1;
  int count = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] > 0.0) {
      positive = static_cast<int>(i);
      if (++count > 1) break;
    }
  }
  if (count == 1) return positive;
  const double v = rng.next_uniform();
  double cum = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    cum += row[i];
    if (v < cum) return static_cast<int>(i);
  }
  return static_cast<int>(row.size()) - 1;  // guard against rounding at 1.0
}

Vec mean_cost_per_state(const FiniteMdp& m, const StationaryPolicy& gamma) {
  Vec c(m.n_states, 0.0);
  for (int x = 0; x < m.n_states; ++x)
    for (std::size_t i = 0; i < m.admissible[x].size(); ++i)
      c[x] += gamma.rows[x][i] * m.cost[x][i];
  return c;
}

}  // namespace

SimulationRun simulate_path(const FiniteMdp& m, const StationaryPolicy& gamma,
                            int x0, int horizon, std::uint64_t seed) {
  if (gamma.model != &m)
    throw std::invalid_argument("simulate_path: policy built for a different model");
  if (x0 < 0 || x0 >= m.n_states) throw std::invalid_argument("simulate_path: bad x0");
  if (horizon < 1) throw std::invalid_argument("simulate_path: horizon must be >= 1");

  SplitMix64 rng(seed);
  SimulationRun run;
  run.seed = seed;
  run.horizon = horizon;
  run.states.reserve(horizon);
  run.actions.reserve(horizon);
  run.step_costs.reserve(horizon);
  run.prefix_averages.reserve(horizon);

  run.pathwise_occupation.model = &m;
  run.pathwise_occupation.values.assign(m.n_states, {});
  for (int x = 0; x < m.n_states; ++x)
    run.pathwise_occupation.values[x].assign(m.admissible[x].size(), 0.0);

  int x = x0;
  double cost_sum = 0.0;
  for (int t = 0; t < horizon; ++t) {
    const int slot = draw_index(gamma.rows[x], rng);
    run.states.push_back(x);
    run.actions.push_back(m.admissible[x][slot]);
    const double c = m.cost[x][slot];
    run.step_costs.push_back(c);
    cost_sum += c;
    run.prefix_averages.push_back(cost_sum / (t + 1));
    run.pathwise_occupation.values[x][slot] += 1.0;
    x = draw_index(m.kernel[x][slot], rng);
  }
  for (auto& row : run.pathwise_occupation.values)
    for (double& v : row) v /= horizon;
  run.average_cost = run.prefix_averages.back();
  return run;
}

OccupationMeasure mean_empirical_occupation(const FiniteMdp& m,
                                            const StationaryPolicy& gamma,
                                            const Vec& nu0, int horizon) {
  if (gamma.model != &m)
    throw std::invalid_argument("mean_empirical_occupation: policy built for a different model");
  if (horizon < 1) throw std::invalid_argument("mean_empirical_occupation: horizon must be >= 1");
  if (static_cast<int>(nu0.size()) != m.n_states)
    throw std::invalid_argument("mean_empirical_occupation: nu0 size mismatch");

  const Mat p = policy_kernel(m, gamma);
  Vec nu = nu0;
  Vec acc(m.n_states, 0.0);
  for (int t = 0; t < horizon; ++t) {
    for (int x = 0; x < m.n_states; ++x) acc[x] += nu[x];
    if (t + 1 < horizon) nu = vec_times_mat(nu, p);
  }
  OccupationMeasure mu;
  mu.model = &m;
  mu.values.assign(m.n_states, {});
  for (int x = 0; x < m.n_states; ++x) {
    const std::size_t na = m.admissible[x].size();
    mu.values[x].assign(na, 0.0);
    const double w = acc[x] / horizon;
    for (std::size_t i = 0; i < na; ++i) mu.values[x][i] = w * gamma.rows[x][i];
  }
  return mu;
}

CostLimits cost_limits(const FiniteMdp& m, const StationaryPolicy& gamma,
                       const Vec& nu0, int horizon_max) {
  if (horizon_max < 1) throw std::invalid_argument("cost_limits: horizon must be >= 1");
  const Mat p = policy_kernel(m, gamma);
  const Vec cbar = mean_cost_per_state(m, gamma);

  CostLimits out;
  out.prefix_averages.reserve(horizon_max);
  out.residuals.reserve(horizon_max);
  Vec nu = nu0;
  double cost_sum = 0.0;
  for (int t = 0; t < horizon_max; ++t) {
    double step = 0.0;
    for (int x = 0; x < m.n_states; ++x) step += nu[x] * cbar[x];
    cost_sum += step;
    out.prefix_averages.push_back(cost_sum / (t + 1));
    nu = vec_times_mat(nu, p);
    out.residuals.push_back(tv_dist(nu0, nu) / (t + 1));
  }

  const int tail_start = horizon_max / 2;  // last half of the horizon
  out.tail_sup = *std::max_element(out.prefix_averages.begin() + tail_start,
                                   out.prefix_averages.end());
  out.tail_inf = *std::min_element(out.prefix_averages.begin() + tail_start,
                                   out.prefix_averages.end());

  const ChainReport rep = analyze_chain(p);
  out.unichain = rep.unichain;
  out.alpha = rep.dobrushin_alpha;
  if (rep.unichain) {
    const Vec& pi = rep.invariant_dists[0];
    for (int x = 0; x < m.n_states; ++x) out.stationary_average += pi[x] * cbar[x];
    double cmax = 0.0;
    for (double c : cbar) cmax = std::max(cmax, std::fabs(c));
    out.per_step_bound_scale = 2.0 * cmax * tv_dist(nu0, pi);
  }
  return out;
}

}  // namespace occlab
