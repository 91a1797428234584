#include "occlab/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "occlab/occupation.hpp"

namespace occlab {

bool StationaryPolicy::row_is_dirac(int state) const {
  const Vec& row = rows[state];
  return *std::max_element(row.begin(), row.end()) >= kDiracThreshold;
}

bool StationaryPolicy::is_deterministic() const {
  for (int x = 0; x < model->n_states; ++x)
    if (!row_is_dirac(x)) return false;
  return true;
}

int StationaryPolicy::chosen_action(int state) const {
  const Vec& row = rows[state];
  const int slot = static_cast<int>(
      std::max_element(row.begin(), row.end()) - row.begin());
  return model->admissible[state][slot];
}

StationaryPolicy deterministic_policy(const FiniteMdp& m, const std::vector<int>& actions) {
  if (static_cast<int>(actions.size()) != m.n_states)
    throw std::invalid_argument("deterministic_policy: one action per state required");
  StationaryPolicy p;
  p.model = &m;
  p.rows.assign(m.n_states, {});
  for (int x = 0; x < m.n_states; ++x) {
    const int slot = m.action_slot(x, actions[x]);
    if (slot < 0)
      throw std::invalid_argument("deterministic_policy: action not admissible");
    p.rows[x].assign(m.admissible[x].size(), 0.0);
    p.rows[x][slot] = 1.0;
  }
  return p;
}

Disintegration disintegrate(const OccupationMeasure& mu) {
  const FiniteMdp& m = *mu.model;
  Disintegration out;
  out.state_marginal.assign(m.n_states, 0.0);
  out.policy.model = &m;
  out.policy.rows.assign(m.n_states, {});

  for (int x = 0; x < m.n_states; ++x)
    for (double v : mu.values[x]) out.state_marginal[x] += v;

  for (int x = 0; x < m.n_states; ++x) {
    const std::size_t na = m.admissible[x].size();
    Vec& row = out.policy.rows[x];
    row.assign(na, 0.0);
    if (out.state_marginal[x] > 0.0) {
      for (std::size_t i = 0; i < na; ++i)
        row[i] = mu.values[x][i] / out.state_marginal[x];
    } else {
      row[0] = 1.0;  // tie rule: first admissible action off the support
    }
    if (out.policy.row_is_dirac(x))
      out.determinism_fraction += out.state_marginal[x];
  }
  return out;
}

Mat policy_kernel(const FiniteMdp& m, const StationaryPolicy& gamma) {
  if (gamma.model != &m)
    throw std::invalid_argument("policy_kernel: policy built for a different model");
  Mat p(m.n_states, Vec(m.n_states, 0.0));
  for (int x = 0; x < m.n_states; ++x)
    for (std::size_t i = 0; i < m.admissible[x].size(); ++i) {
      const double w = gamma.rows[x][i];
      if (w == 0.0) continue;
      for (int y = 0; y < m.n_states; ++y) p[x][y] += w * m.kernel[x][i][y];
    }
  return p;
}

StationaryPolicy mix_policies(const StationaryPolicy& gamma1,
                              const StationaryPolicy& gamma2, const Vec& theta) {
  if (gamma1.model != gamma2.model)
    throw std::invalid_argument("mix_policies: policies on different models");
  const FiniteMdp& m = *gamma1.model;
  if (static_cast<int>(theta.size()) != m.n_states)
    throw std::invalid_argument("mix_policies: one weight per state required");
  for (double t : theta)
    if (t < 0.0 || t > 1.0)
      throw std::invalid_argument("mix_policies: weights must lie in [0,1]");
  StationaryPolicy out;
  out.model = &m;
  out.rows.assign(m.n_states, {});
  for (int x = 0; x < m.n_states; ++x) {
    const std::size_t na = m.admissible[x].size();
    out.rows[x].assign(na, 0.0);
    for (std::size_t i = 0; i < na; ++i)
      out.rows[x][i] = theta[x] * gamma1.rows[x][i] + (1.0 - theta[x]) * gamma2.rows[x][i];
  }
  return out;
}

namespace {

void check_grid_refinement(const FiniteMdp& coarse, const FiniteMdp& fine, int k) {
  if (k < 1) throw std::invalid_argument("refinement factor must be >= 1");
  if (fine.n_states != coarse.n_states * k)
    throw std::invalid_argument("model not grid-structured: state counts do not match the refinement");
  if (fine.n_actions != coarse.n_actions)
    throw std::invalid_argument("model not grid-structured: action sets differ");
  for (int x = 0; x < fine.n_states; ++x)
    if (fine.admissible[x] != coarse.admissible[x / k])
      throw std::invalid_argument("model not grid-structured: admissible sets differ");
}

// Largest-remainder apportionment of k seats to the weights in row;
// ties on the fractional part go to the lower action index.
std::vector<int> apportion(const Vec& row, int k) {
  const int na = static_cast<int>(row.size());
  std::vector<int> counts(na, 0);
  std::vector<std::pair<double, int>> rema(na);
  int assigned = 0;
  for (int i = 0; i < na; ++i) {
    const double quota = k * row[i];
    counts[i] = static_cast<int>(std::floor(quota));
    assigned += counts[i];
    rema[i] = {quota - counts[i], i};
  }
  std::stable_sort(rema.begin(), rema.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;  // stable: equal remainders keep index order
  });
  for (int r = 0; r < k - assigned; ++r) counts[rema[r].second] += 1;
  return counts;
}

}  // namespace

StationaryPolicy lift_policy(const StationaryPolicy& coarse,
                             const FiniteMdp& fine_model, int k) {
  check_grid_refinement(*coarse.model, fine_model, k);
  StationaryPolicy out;
  out.model = &fine_model;
  out.rows.assign(fine_model.n_states, {});
  for (int x = 0; x < fine_model.n_states; ++x) out.rows[x] = coarse.rows[x / k];
  return out;
}

StationaryPolicy quantize_policy(const StationaryPolicy& coarse,
                                 const FiniteMdp& fine_model, int k) {
  check_grid_refinement(*coarse.model, fine_model, k);
  const FiniteMdp& cm = *coarse.model;
  StationaryPolicy out;
  out.model = &fine_model;
  out.rows.assign(fine_model.n_states, {});

  for (int cx = 0; cx < cm.n_states; ++cx) {
    const Vec& row = coarse.rows[cx];
    const int na = static_cast<int>(row.size());
    const std::vector<int> counts = apportion(row, k);
    // Even-stride schedule: each subcell takes the action with the largest
    // accumulated credit, so equal counts interleave instead of clumping.
    Vec credit(na, 0.0);
    std::vector<int> remaining = counts;
    for (int j = 0; j < k; ++j) {
      int pick = -1;
      for (int i = 0; i < na; ++i) {
        credit[i] += static_cast<double>(counts[i]) / k;
        if (remaining[i] > 0 && (pick < 0 || credit[i] > credit[pick])) pick = i;
      }
      credit[pick] -= 1.0;
      remaining[pick] -= 1;
      Vec sub(na, 0.0);
      sub[pick] = 1.0;
      out.rows[cx * k + j] = std::move(sub);
    }
  }
  return out;
}

}  // namespace occlab
