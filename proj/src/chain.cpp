#include "occlab/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace occlab {
namespace {

void check_stochastic(const Mat& p) {
  const std::size_t n = p.size();
  for (const auto& row : p) {
    if (row.size() != n) throw std::invalid_argument("analyze_chain: matrix not square");
    double s = 0.0;
    for (double v : row) {
      if (!(v >= -kSupportTol) || !std::isfinite(v))
        throw std::invalid_argument("analyze_chain: negative or non-finite entry");
      s += v;
    }
    if (std::fabs(s - 1.0) > kRowSumTol)
      throw std::invalid_argument("analyze_chain: row does not sum to 1");
  }
}

// Iterative Tarjan SCC over the support graph. Components are emitted in
// reverse topological order; we renumber them by smallest member afterwards.
std::vector<std::vector<int>> strongly_connected_components(const Mat& p) {
  const int n = static_cast<int>(p.size());
  std::vector<int> index(n, -1), low(n, 0), on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int next_index = 0;

  struct Frame {
    int v;
    int child;
  };
  for (int start = 0; start < n; ++start) {
    if (index[start] >= 0) continue;
    std::vector<Frame> call;
    call.push_back({start, 0});
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < n) {
        const int w = f.child++;
        if (p[f.v][w] <= kSupportTol) continue;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          std::vector<int> comp;
          for (;;) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
            if (w == f.v) break;
          }
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
        const int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return comps;
}

bool component_is_closed(const Mat& p, const std::vector<int>& comp) {
  std::vector<bool> inside(p.size(), false);
  for (int x : comp) inside[x] = true;
  for (int x : comp)
    for (std::size_t y = 0; y < p.size(); ++y)
      if (!inside[y] && p[x][y] > kSupportTol) return false;
  return true;
}

// Invariant distribution of p restricted to a closed class, returned as a
// full-length vector. Solves pi (P_C - I) = 0 with the normalization row
// replacing the first balance column.
Vec class_invariant(const Mat& p, const std::vector<int>& comp) {
  const int k = static_cast<int>(comp.size());
  Mat a(k, Vec(k, 0.0));
  Vec b(k, 0.0);
  // Row r of the system: for r = 0, sum_i pi_i = 1; otherwise the balance
  // equation of comp[r]: sum_i pi_i (P(i->r) - [i==r]) = 0.
  for (int i = 0; i < k; ++i) a[0][i] = 1.0;
  b[0] = 1.0;
  for (int r = 1; r < k; ++r) {
    for (int i = 0; i < k; ++i)
      a[r][i] = p[comp[i]][comp[r]] - (i == r ? 1.0 : 0.0);
  }
  const Vec pi_c = solve_linear(a, b);
  Vec pi(p.size(), 0.0);
  for (int i = 0; i < k; ++i) pi[comp[i]] = pi_c[i];
  return pi;
}

}  // namespace

double dobrushin_coefficient(const Mat& p) {
  double alpha = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t z = x + 1; z < p.size(); ++z)
      alpha = std::max(alpha, tv_dist(p[x], p[z]));
  return alpha;
}

ChainReport analyze_chain(const Mat& p) {
  check_stochastic(p);
  ChainReport rep;
  const auto comps = strongly_connected_components(p);
  std::vector<bool> recurrent(p.size(), false);
  for (const auto& comp : comps) {
    if (component_is_closed(p, comp)) {
      rep.recurrent_classes.push_back(comp);
      for (int x : comp) recurrent[x] = true;
    }
  }
  std::sort(rep.recurrent_classes.begin(), rep.recurrent_classes.end());
  for (int x = 0; x < static_cast<int>(p.size()); ++x)
    if (!recurrent[x]) rep.transient_states.push_back(x);
  for (const auto& comp : rep.recurrent_classes)
    rep.invariant_dists.push_back(class_invariant(p, comp));
  rep.unichain = rep.recurrent_classes.size() == 1;
  rep.dobrushin_alpha = dobrushin_coefficient(p);
  return rep;
}

ReturnTimeStats return_time_stats(const Mat& p, int alpha_state) {
  const ChainReport rep = analyze_chain(p);
  const std::vector<int>* cls = nullptr;
  const Vec* pi = nullptr;
  for (std::size_t i = 0; i < rep.recurrent_classes.size(); ++i) {
    if (std::binary_search(rep.recurrent_classes[i].begin(),
                           rep.recurrent_classes[i].end(), alpha_state)) {
      cls = &rep.recurrent_classes[i];
      pi = &rep.invariant_dists[i];
      break;
    }
  }
  if (cls == nullptr)
    throw std::invalid_argument(
        "return_time_stats: alpha_state is transient (no finite return time)");

  ReturnTimeStats out;
  out.the_class = *cls;
  out.expected_visits.assign(p.size(), 0.0);

  // Members of the class other than alpha, in class order.
  std::vector<int> others;
  for (int x : *cls)
    if (x != alpha_state) others.push_back(x);
  const int k = static_cast<int>(others.size());

  if (k == 0) {
    out.expected_return_time = 1.0;
    out.expected_visits[alpha_state] = 1.0;
    out.kac_max_gap = std::fabs((*pi)[alpha_state] - 1.0);
    return out;
  }

  // Hitting times: (I - Q) h = 1 with Q the kernel restricted off alpha.
  Mat iq(k, Vec(k, 0.0));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      iq[r][c] = (r == c ? 1.0 : 0.0) - p[others[r]][others[c]];
  const Vec h = solve_linear(iq, Vec(k, 1.0));

  double expected_return = 1.0;
  for (int c = 0; c < k; ++c) expected_return += p[alpha_state][others[c]] * h[c];
  out.expected_return_time = expected_return;

  // Expected visits before return: n = r (I - Q)^{-1}, i.e. (I-Q)^T n = r
  // with r the alpha row restricted off alpha.
  Mat iqt(k, Vec(k, 0.0));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) iqt[r][c] = iq[c][r];
  Vec r_row(k, 0.0);
  for (int c = 0; c < k; ++c) r_row[c] = p[alpha_state][others[c]];
  const Vec visits = solve_linear(iqt, r_row);

  out.expected_visits[alpha_state] = 1.0;
  for (int c = 0; c < k; ++c) out.expected_visits[others[c]] = visits[c];

  for (int x : *cls)
    out.kac_max_gap = std::max(
        out.kac_max_gap,
        std::fabs((*pi)[x] - out.expected_visits[x] / out.expected_return_time));
  return out;
}

std::vector<ErgodicComponent> ergodic_decomposition(const OccupationMeasure& mu) {
  if (invariance_residual(mu) > 1e-8)
    throw std::invalid_argument("ergodic_decomposition: measure is not invariant");
  const FiniteMdp& m = *mu.model;
  const Disintegration dis = disintegrate(mu);
  const Mat p = policy_kernel(m, dis.policy);
  const ChainReport rep = analyze_chain(p);

  std::vector<ErgodicComponent> out;
  for (const auto& cls : rep.recurrent_classes) {
    double weight = 0.0;
    for (int x : cls)
      for (double v : mu.values[x]) weight += v;
    if (weight <= 1e-15) continue;
    ErgodicComponent comp;
    comp.weight = weight;
    comp.measure.model = &m;
    comp.measure.values.assign(m.n_states, {});
    for (int x = 0; x < m.n_states; ++x)
      comp.measure.values[x].assign(m.admissible[x].size(), 0.0);
    for (int x : cls)
      for (std::size_t i = 0; i < mu.values[x].size(); ++i)
        comp.measure.values[x][i] = mu.values[x][i] / weight;
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace occlab
