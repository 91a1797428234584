#include "occlab/occupation.hpp"

#include <cmath>
#include <stdexcept>

namespace occlab {

double OccupationMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& row : values)
    for (double v : row) s += v;
  return s;
}

Vec OccupationMeasure::flat() const {
  Vec out;
  out.reserve(model->pair_count());
  for (const auto& row : values)
    for (double v : row) out.push_back(v);
  return out;
}

LpProblem build_occupation_lp(const FiniteMdp& m) {
  const auto violations = validate_model(m);
  if (!violations.empty())
    throw std::invalid_argument("build_occupation_lp: invalid model: " + violations.front());

  const int nv = m.pair_count();
  const auto off = m.pair_offsets();
  LpProblem p;
  p.objective.assign(nv, 0.0);
  p.a.assign(m.n_states + 1, Vec(nv, 0.0));
  p.rhs.assign(m.n_states + 1, 0.0);

  for (int x = 0; x < m.n_states; ++x) {
    for (std::size_t i = 0; i < m.admissible[x].size(); ++i) {
      const int col = off[x] + static_cast<int>(i);
      p.objective[col] = m.cost[x][i];
      p.a[x][col] += 1.0;  // marginal term of the balance row y = x
      for (int y = 0; y < m.n_states; ++y) p.a[y][col] -= m.kernel[x][i][y];
      p.a[m.n_states][col] = 1.0;  // normalization
    }
  }
  p.rhs[m.n_states] = 1.0;
  return p;
}

OccupationMeasure occupation_from_flat(const FiniteMdp& m, const Vec& flat) {
  if (static_cast<int>(flat.size()) != m.pair_count())
    throw std::invalid_argument("occupation_from_flat: size mismatch");
  OccupationMeasure mu;
  mu.model = &m;
  mu.values.assign(m.n_states, {});
  const auto off = m.pair_offsets();
  for (int x = 0; x < m.n_states; ++x)
    mu.values[x].assign(flat.begin() + off[x], flat.begin() + off[x + 1]);
  return mu;
}

OccupationMeasure occupation_of_policy(const FiniteMdp& m, const StationaryPolicy& gamma,
                                       const Vec& pi) {
  if (gamma.model != &m)
    throw std::invalid_argument("occupation_of_policy: policy built for a different model");
  if (static_cast<int>(pi.size()) != m.n_states)
    throw std::invalid_argument("occupation_of_policy: pi size mismatch");
  const Mat p = policy_kernel(m, gamma);
  const Vec image = vec_times_mat(pi, p);
  if (l1_dist(image, pi) > 1e-8)
    throw std::invalid_argument("occupation_of_policy: pi is not invariant for the policy");

  OccupationMeasure mu;
  mu.model = &m;
  mu.values.assign(m.n_states, {});
  for (int x = 0; x < m.n_states; ++x) {
    const std::size_t na = m.admissible[x].size();
    mu.values[x].assign(na, 0.0);
    for (std::size_t i = 0; i < na; ++i) mu.values[x][i] = pi[x] * gamma.rows[x][i];
  }
  return mu;
}

double invariance_residual(const OccupationMeasure& mu) {
  const FiniteMdp& m = *mu.model;
  Vec defect(m.n_states, 0.0);
  for (int x = 0; x < m.n_states; ++x) {
    for (std::size_t i = 0; i < m.admissible[x].size(); ++i) {
      const double v = mu.values[x][i];
      defect[x] += v;
      if (v == 0.0) continue;
      for (int y = 0; y < m.n_states; ++y) defect[y] -= v * m.kernel[x][i][y];
    }
  }
  double s = 0.0;
  for (double d : defect) s += std::fabs(d);
  return 0.5 * s;
}

double expected_cost(const OccupationMeasure& mu) {
  const FiniteMdp& m = *mu.model;
  double s = 0.0;
  for (int x = 0; x < m.n_states; ++x)
    for (std::size_t i = 0; i < m.admissible[x].size(); ++i)
      s += m.cost[x][i] * mu.values[x][i];
  return s;
}

OccupationMeasure mix_occupations(const OccupationMeasure& mu1,
                                  const OccupationMeasure& mu2, double kappa) {
  if (mu1.model != mu2.model)
    throw std::invalid_argument("mix_occupations: measures on different models");
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("mix_occupations: kappa must lie in (0,1)");
  OccupationMeasure out;
  out.model = mu1.model;
  out.values = mu1.values;
  for (std::size_t x = 0; x < out.values.size(); ++x)
    for (std::size_t i = 0; i < out.values[x].size(); ++i)
      out.values[x][i] = kappa * mu1.values[x][i] + (1.0 - kappa) * mu2.values[x][i];
  return out;
}

double l1_distance(const OccupationMeasure& mu1, const OccupationMeasure& mu2) {
  if (mu1.model != mu2.model)
    throw std::invalid_argument("l1_distance: measures on different models");
  double s = 0.0;
  for (std::size_t x = 0; x < mu1.values.size(); ++x)
    for (std::size_t i = 0; i < mu1.values[x].size(); ++i)
      s += std::fabs(mu1.values[x][i] - mu2.values[x][i]);
  return s;
}

}  // namespace occlab
