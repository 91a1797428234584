#include "occlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace occlab {

int FiniteMdp::pair_count() const {
  int n = 0;
  for (const auto& acts : admissible) n += static_cast<int>(acts.size());
  return n;
}

std::vector<int> FiniteMdp::pair_offsets() const {
  std::vector<int> off(n_states + 1, 0);
  for (int x = 0; x < n_states; ++x)
    off[x + 1] = off[x] + static_cast<int>(admissible[x].size());
  return off;
}

int FiniteMdp::action_slot(int state, int action) const {
  const auto& acts = admissible[state];
  for (int i = 0; i < static_cast<int>(acts.size()); ++i)
    if (acts[i] == action) return i;
  return -1;
}

std::vector<std::string> validate_model(const FiniteMdp& m) {
  std::vector<std::string> report;
  auto note = [&report](const std::string& s) { report.push_back(s); };

  if (m.n_states <= 0) note("n_states must be positive");
  if (m.n_actions <= 0) note("n_actions must be positive");
  if (static_cast<int>(m.admissible.size()) != m.n_states ||
      static_cast<int>(m.kernel.size()) != m.n_states ||
      static_cast<int>(m.cost.size()) != m.n_states) {
    note("per-state containers do not all have n_states entries");
    return report;
  }

  for (int x = 0; x < m.n_states; ++x) {
    const auto& acts = m.admissible[x];
    if (acts.empty()) {
      std::ostringstream os;
      os << "empty admissible set at x=" << x;
      note(os.str());
    }
    for (int a : acts) {
      if (a < 0 || a >= m.n_actions) {
        std::ostringstream os;
        os << "action id " << a << " out of range at x=" << x;
        note(os.str());
      }
    }
    if (m.kernel[x].size() != acts.size() || m.cost[x].size() != acts.size()) {
      std::ostringstream os;
      os << "kernel/cost arity mismatch at x=" << x;
      note(os.str());
      continue;
    }
    for (std::size_t i = 0; i < acts.size(); ++i) {
      const Vec& row = m.kernel[x][i];
      const int u = acts[i];
      if (static_cast<int>(row.size()) != m.n_states) {
        std::ostringstream os;
        os << "kernel row length " << row.size() << " at (x=" << x << ",u=" << u << ")";
        note(os.str());
        continue;
      }
      double sum = 0.0;
      for (double p : row) {
        if (!std::isfinite(p)) {
          std::ostringstream os;
          os << "non-finite kernel entry at (x=" << x << ",u=" << u << ")";
          note(os.str());
          sum = std::numeric_limits<double>::quiet_NaN();
          break;
        }
        if (p < 0.0) {
          std::ostringstream os;
          os << "negative kernel entry " << p << " at (x=" << x << ",u=" << u << ")";
          note(os.str());
        }
        sum += p;
      }
      if (std::isfinite(sum) && std::fabs(sum - 1.0) > kRowSumTol) {
        std::ostringstream os;
        os << "row sum " << sum << " at (x=" << x << ",u=" << u << ")";
        note(os.str());
      }
      const double c = m.cost[x][i];
      if (!std::isfinite(c)) {
        std::ostringstream os;
        os << "non-finite cost at (x=" << x << ",u=" << u << ")";
        note(os.str());
      } else if (c < 0.0) {
        std::ostringstream os;
        os << "negative cost " << c << " at (x=" << x << ",u=" << u << ")";
        note(os.str());
      }
    }
  }
  return report;
}

std::vector<double> ContinuousModel1D::midpoints() const {
  std::vector<double> mid(grid);
  const double w = cell_width();
  for (int j = 0; j < grid; ++j) mid[j] = x_lo + (j + 0.5) * w;
  return mid;
}

double ContinuousModel1D::noise_cdf(double w) const {
  if (family == NoiseFamily::LinearGaussian)
    return 0.5 * std::erfc(-w / (sigma * std::sqrt(2.0)));
  // Uniform on [-sigma, sigma].
  if (w <= -sigma) return 0.0;
  if (w >= sigma) return 1.0;
  return (w + sigma) / (2.0 * sigma);
}

double ContinuousModel1D::noise_density(double w) const {
  if (family == NoiseFamily::LinearGaussian) {
    const double z = w / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
  }
  return (w >= -sigma && w <= sigma) ? 1.0 / (2.0 * sigma) : 0.0;
}

FiniteMdp discretize(const ContinuousModel1D& cm) {
  if (cm.sigma <= 0.0) throw std::invalid_argument("discretize: sigma must be positive");
  if (!(cm.x_lo < cm.x_hi)) throw std::invalid_argument("discretize: x_lo < x_hi required");
  if (cm.grid < 2) throw std::invalid_argument("discretize: grid must be >= 2");
  if (cm.actions.empty()) throw std::invalid_argument("discretize: action list empty");

  const int n = cm.grid;
  const int na = static_cast<int>(cm.actions.size());
  const auto mids = cm.midpoints();
  const double w = cm.cell_width();

  FiniteMdp m;
  m.n_states = n;
  m.n_actions = na;
  m.admissible.assign(n, {});
  m.kernel.assign(n, {});
  m.cost.assign(n, {});
  for (int x = 0; x < n; ++x) {
    for (int u = 0; u < na; ++u) m.admissible[x].push_back(u);
    m.kernel[x].assign(na, Vec(n, 0.0));
    m.cost[x].assign(na, 0.0);
    for (int u = 0; u < na; ++u) {
      const double mean = cm.a * mids[x] + cm.b * cm.actions[u];
      Vec& row = m.kernel[x][u];
      // Interior mass per cell as a CDF difference; edges absorb the tails
      // so the row sums to 1 exactly by telescoping.
      double prev = 0.0;  // CDF at the lower boundary of the current cell
      for (int j = 0; j < n; ++j) {
        const double hi = (j == n - 1) ? 1.0
                                       : cm.noise_cdf(cm.x_lo + (j + 1) * w - mean);
        row[j] = hi - prev;
        prev = hi;
      }
      m.cost[x][u] = mids[x] * mids[x] + cm.actions[u] * cm.actions[u];
    }
  }
  return m;
}

MajorizationBound majorization_bound(const FiniteMdp& m) {
  MajorizationBound out;
  out.nu.assign(m.n_states, 0.0);
  for (int x = 0; x < m.n_states; ++x)
    for (std::size_t i = 0; i < m.admissible[x].size(); ++i)
      for (int y = 0; y < m.n_states; ++y)
        out.nu[y] = std::max(out.nu[y], m.kernel[x][i][y]);
  for (double v : out.nu) out.mass += v;
  return out;
}

}  // namespace occlab
