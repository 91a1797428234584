#include "occlab/split_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace occlab {
namespace {

std::vector<bool> membership(int n, const std::vector<int>& set) {
  std::vector<bool> in(n, false);
  for (int x : set) {
    if (x < 0 || x >= n) throw std::invalid_argument("small set index out of range");
    in[x] = true;
  }
  return in;
}

}  // namespace

Minorization find_minorization(const Mat& p, const std::vector<int>& small_set) {
  if (small_set.empty())
    throw std::invalid_argument("find_minorization: empty candidate set");
  const int n = static_cast<int>(p.size());
  membership(n, small_set);  // validates indices
  Minorization out;
  out.nu.assign(n, 0.0);
  for (int y = 0; y < n; ++y) {
    double v = 1.0;
    for (int x : small_set) v = std::min(v, p[x][y]);
    out.nu[y] = v;
    out.mass += v;
  }
  return out;
}

SplitChain build_split_chain(const Mat& p, const std::vector<int>& small_set,
                             const Vec& nu, double delta_mass) {
  const int n = static_cast<int>(p.size());
  const auto in_c = membership(n, small_set);
  double nu_mass = 0.0;
  for (double v : nu) {
    if (v < 0.0) throw std::invalid_argument("build_split_chain: nu must be nonnegative");
    nu_mass += v;
  }
  if (!(delta_mass > 0.0) || delta_mass > nu_mass + 1e-12)
    throw std::invalid_argument("build_split_chain: need 0 < delta_mass <= mass(nu)");
  for (int x : small_set)
    for (int y = 0; y < n; ++y)
      if (nu[y] > p[x][y] + 1e-12)
        throw std::invalid_argument("build_split_chain: nu does not minorize P on C");

  Vec nu_hat(n, 0.0);
  for (int y = 0; y < n; ++y) nu_hat[y] = nu[y] / nu_mass;

  const bool degenerate = delta_mass >= 1.0 - 1e-15;
  if (degenerate) {
    // Residual weight vanishes; only legal when every row of C equals nu_hat.
    for (int x : small_set)
      for (int y = 0; y < n; ++y)
        if (std::fabs(p[x][y] - nu_hat[y]) > 1e-12)
          throw std::invalid_argument(
              "build_split_chain: delta_mass = 1 requires P(.|x) = nu_hat on C");
  }

  SplitChain sc;
  sc.base = p;
  sc.small_set = small_set;
  std::sort(sc.small_set.begin(), sc.small_set.end());
  sc.nu = nu;
  sc.delta_mass = delta_mass;
  sc.split_kernel.assign(2 * n, Vec(2 * n, 0.0));

  // Landing split of a row: mass at y in C goes to level 1 with probability
  // delta_mass.
  auto emit = [&](int from, const Vec& row) {
    for (int y = 0; y < n; ++y) {
      if (in_c[y]) {
        sc.split_kernel[from][sc.split_index(y, 1)] = row[y] * delta_mass;
        sc.split_kernel[from][sc.split_index(y, 0)] = row[y] * (1.0 - delta_mass);
      } else {
        sc.split_kernel[from][sc.split_index(y, 0)] = row[y];
      }
    }
  };

  for (int x = 0; x < n; ++x) {
    if (in_c[x]) {
      Vec residual(n, 0.0);
      if (degenerate) {
        residual = nu_hat;
      } else {
        for (int y = 0; y < n; ++y)
          residual[y] = std::max(0.0, p[x][y] - delta_mass * nu_hat[y]) / (1.0 - delta_mass);
      }
      emit(sc.split_index(x, 0), residual);
      emit(sc.split_index(x, 1), nu_hat);
    } else {
      emit(sc.split_index(x, 0), p[x]);
      emit(sc.split_index(x, 1), p[x]);
    }
  }
  return sc;
}

double SplitChain::projection_gap() const {
  const int n = n_base();
  const auto in_c = membership(n, small_set);
  double gap = 0.0;
  for (int x = 0; x < n; ++x) {
    // The level-0 and level-1 rows of x mix with weights (1-delta, delta)
    // inside C and (1, 0) outside; the landing levels marginalize by plain
    // summation.
    const double w1 = in_c[x] ? delta_mass : 0.0;
    for (int y = 0; y < n; ++y) {
      const double m0 = split_kernel[split_index(x, 0)][split_index(y, 0)] +
                        split_kernel[split_index(x, 0)][split_index(y, 1)];
      const double m1 = split_kernel[split_index(x, 1)][split_index(y, 0)] +
                        split_kernel[split_index(x, 1)][split_index(y, 1)];
      const double reconstructed = (1.0 - w1) * m0 + w1 * m1;
      gap = std::max(gap, std::fabs(reconstructed - base[x][y]));
    }
  }
  return gap;
}

double SplitChain::atom_row_gap() const {
  double gap = 0.0;
  for (std::size_t i = 0; i < small_set.size(); ++i)
    for (std::size_t j = i + 1; j < small_set.size(); ++j)
      gap = std::max(gap, linf_dist(split_kernel[split_index(small_set[i], 1)],
                                    split_kernel[split_index(small_set[j], 1)]));
  return gap;
}

AtomReport atom_report(const SplitChain& sc) {
  const int n = sc.n_base();
  const auto in_c = membership(n, sc.small_set);
  AtomReport rep;

  // Quotient chain: level-0 copies of all states plus the merged atom.
  rep.quotient.assign(n + 1, Vec(n + 1, 0.0));
  auto fold = [&](Vec& qrow, int from) {
    for (int y = 0; y < n; ++y) {
      qrow[y] += sc.split_kernel[from][sc.split_index(y, 0)];
      qrow[n] += sc.split_kernel[from][sc.split_index(y, 1)];
    }
  };
  for (int x = 0; x < n; ++x) fold(rep.quotient[x], sc.split_index(x, 0));
  // All atom rows are identical; fold the first member.
  fold(rep.quotient[n], sc.split_index(sc.small_set.front(), 1));

  rep.stats = return_time_stats(rep.quotient, n);

  const ChainReport qrep = analyze_chain(rep.quotient);
  // Invariant distribution of the class containing the atom.
  const Vec* qpi = nullptr;
  for (std::size_t i = 0; i < qrep.recurrent_classes.size(); ++i)
    if (std::binary_search(qrep.recurrent_classes[i].begin(),
                           qrep.recurrent_classes[i].end(), n))
      qpi = &qrep.invariant_dists[i];
  if (qpi == nullptr)
    throw std::runtime_error("atom_report: pseudo-atom is not recurrent");
  rep.atom_mass = (*qpi)[n];
  rep.kac_gap_at_atom =
      std::fabs(rep.atom_mass - 1.0 / rep.stats.expected_return_time);

  // Projection of the quotient invariant measure onto the base states: the
  // atom mass returns to its members in proportion to the inflow nu_hat-split
  // stationary balance, which the full 2n-state chain resolves directly.
  const ChainReport srep = analyze_chain(sc.split_kernel);
  const Vec* spi = nullptr;
  for (std::size_t i = 0; i < srep.recurrent_classes.size(); ++i) {
    bool has_atom_member = false;
    for (int x : sc.small_set)
      if (std::binary_search(srep.recurrent_classes[i].begin(),
                             srep.recurrent_classes[i].end(), sc.split_index(x, 1)))
        has_atom_member = true;
    if (has_atom_member) spi = &srep.invariant_dists[i];
  }
  if (spi == nullptr)
    throw std::runtime_error("atom_report: split chain has no recurrent atom");
  Vec projected(n, 0.0);
  for (int x = 0; x < n; ++x)
    projected[x] = (*spi)[sc.split_index(x, 0)] + (*spi)[sc.split_index(x, 1)];

  const ChainReport brep = analyze_chain(sc.base);
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& bpi : brep.invariant_dists)
    best = std::min(best, l1_dist(projected, bpi));
  rep.projection_invariant_gap = best;
  return rep;
}

PolicyDecomposition decompose_randomized_policy(const FiniteMdp& m,
                                                const StationaryPolicy& phi,
                                                int a_state, double theta) {
  if (phi.model != &m)
    throw std::invalid_argument("decompose_randomized_policy: policy built for a different model");
  if (a_state < 0 || a_state >= m.n_states)
    throw std::invalid_argument("decompose_randomized_policy: bad state");
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("decompose_randomized_policy: theta must lie in (0,1)");

  const Vec& row = phi.rows[a_state];
  if (phi.row_is_dirac(a_state))
    throw std::invalid_argument(
        "decompose_randomized_policy: phi is Dirac at a_state, nothing to decompose");
  std::vector<int> support;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i] > kSupportTol) support.push_back(static_cast<int>(i));
  if (support.size() != 2)
    throw std::invalid_argument(
        "decompose_randomized_policy: row at a_state must mix exactly two actions");
  if (std::fabs(row[support[0]] - theta) > 1e-9)
    throw std::invalid_argument(
        "decompose_randomized_policy: theta does not match the row's mixture split");

  auto dirac_at = [&](int slot) {
    StationaryPolicy p = phi;
    Vec r(row.size(), 0.0);
    r[slot] = 1.0;
    p.rows[a_state] = std::move(r);
    return p;
  };
  const StationaryPolicy phi1 = dirac_at(support[0]);
  const StationaryPolicy phi2 = dirac_at(support[1]);

  const Mat p1 = policy_kernel(m, phi1);
  const Mat p2 = policy_kernel(m, phi2);
  const Mat pphi = policy_kernel(m, phi);

  // Throws if a_state is transient under either modified policy.
  const ReturnTimeStats rt1 = return_time_stats(p1, a_state);
  const ReturnTimeStats rt2 = return_time_stats(p2, a_state);

  auto invariant_at = [&](const Mat& p) {
    const ChainReport rep = analyze_chain(p);
    for (std::size_t i = 0; i < rep.recurrent_classes.size(); ++i)
      if (std::binary_search(rep.recurrent_classes[i].begin(),
                             rep.recurrent_classes[i].end(), a_state))
        return rep.invariant_dists[i];
    throw std::invalid_argument(
        "decompose_randomized_policy: a_state transient under the randomized policy");
  };

  PolicyDecomposition out;
  out.expected_return_1 = rt1.expected_return_time;
  out.expected_return_2 = rt2.expected_return_time;
  out.kappa = theta * rt1.expected_return_time /
              (theta * rt1.expected_return_time +
               (1.0 - theta) * rt2.expected_return_time);
  if (!(out.kappa > 0.0 && out.kappa < 1.0))
    throw std::runtime_error("decompose_randomized_policy: kappa left (0,1)");

  out.mu1 = occupation_of_policy(m, phi1, invariant_at(p1));
  out.mu2 = occupation_of_policy(m, phi2, invariant_at(p2));
  const OccupationMeasure mu_phi = occupation_of_policy(m, phi, invariant_at(pphi));

  const OccupationMeasure mix = mix_occupations(out.mu1, out.mu2, out.kappa);
  out.defect_l1 = l1_distance(mu_phi, mix);
  out.branches_identical = true;
  for (int x = 0; x < m.n_states && out.branches_identical; ++x)
    if (linf_dist(p1[x], p2[x]) > kSupportTol) out.branches_identical = false;
  return out;
}

void equalize_masses(Vec& nu1, Vec& nu2) {
  double m1 = 0.0, m2 = 0.0;
  for (double v : nu1) m1 += v;
  for (double v : nu2) m2 += v;
  if (m1 <= 0.0 || m2 <= 0.0)
    throw std::invalid_argument("equalize_masses: measures must have positive mass");
  if (m1 > m2) {
    const double f = m2 / m1;
    for (double& v : nu1) v *= f;
  } else if (m2 > m1) {
    const double f = m1 / m2;
    for (double& v : nu2) v *= f;
  }
}

RealizationCheck check_realization(const FiniteMdp& m,
                                   const StationaryPolicy& phi1,
                                   const StationaryPolicy& phi2,
                                   const Vec& kappa_x,
                                   const std::vector<int>& small_set,
                                   const Vec& nu1, const Vec& nu2, double K,
                                   const StationaryPolicy& psi1,
                                   const StationaryPolicy& psi2) {
  const int n = m.n_states;
  const auto in_c = membership(n, small_set);
  double mass1 = 0.0, mass2 = 0.0;
  for (double v : nu1) mass1 += v;
  for (double v : nu2) mass2 += v;
  if (std::fabs(mass1 - mass2) > 1e-9)
    throw std::invalid_argument("check_realization: nu1 and nu2 must have equal mass");

  const Mat p1 = policy_kernel(m, phi1);
  const Mat p2 = policy_kernel(m, phi2);
  const Mat q1 = policy_kernel(m, psi1);
  const Mat q2 = policy_kernel(m, psi2);

  RealizationCheck out;
  for (int x = 0; x < n; ++x) {
    if (in_c[x]) {
      for (int y = 0; y < n; ++y) {
        const double mixed = kappa_x[x] * p1[x][y] + (1.0 - kappa_x[x]) * p2[x][y];
        const double delta = K * (nu1[y] - nu2[y]);
        out.max_gap_1 = std::max(out.max_gap_1, std::fabs(q1[x][y] - (mixed + delta)));
        out.max_gap_2 = std::max(out.max_gap_2, std::fabs(q2[x][y] - (mixed - delta)));
      }
    } else {
      // Outside C both candidates must agree with the phi mixture.
      for (int y = 0; y < n; ++y) {
        const double mixed = kappa_x[x] * p1[x][y] + (1.0 - kappa_x[x]) * p2[x][y];
        out.max_gap_1 = std::max(out.max_gap_1, std::fabs(q1[x][y] - mixed));
        out.max_gap_2 = std::max(out.max_gap_2, std::fabs(q2[x][y] - mixed));
      }
    }
  }
  out.realized = out.max_gap_1 <= 1e-9 && out.max_gap_2 <= 1e-9;
  return out;
}

}  // namespace occlab
