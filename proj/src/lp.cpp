#include "occlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace occlab {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kPhase1FeasTol = 1e-8;
constexpr double kArtificialLevel = 1e-10;
constexpr double kDegenerateStep = 1e-12;
constexpr int kDegeneratePivotLimit = 50;
constexpr int kRefactorInterval = 64;
constexpr int kMaxIterations = 200000;

// Revised simplex working state over a fixed column set. Artificial columns
// occupy indices >= n_structural.
class Simplex {
 public:
  Simplex(Mat cols, Vec rhs, int n_structural)
      : cols_(std::move(cols)),
        b_(std::move(rhs)),
        m_(static_cast<int>(b_.size())),
        n_structural_(n_structural) {}

  // Runs the simplex loop for the given costs starting from the current
  // basis. Returns true when optimal, false when unbounded.
  bool optimize(const Vec& cost) {
    cost_ = cost;
    refactor();
    for (;;) {
      if (iterations_ > kMaxIterations)
        throw std::runtime_error("solve_lp: iteration limit exceeded");
      const bool bland = degenerate_run_ > kDegeneratePivotLimit;
      const int entering = price(bland);
      if (entering < 0) return true;
      Vec w = ftran(cols_[entering]);
      const int leaving = ratio_test(w);
      if (leaving < 0) return false;
      pivot(entering, leaving, w);
    }
  }

  void set_basis(std::vector<int> basis) { basis_ = std::move(basis); }
  const std::vector<int>& basis() const { return basis_; }
  const Vec& basic_values() const { return xb_; }
  int iterations() const { return iterations_; }
  int rows() const { return m_; }

  double objective() const {
    double v = 0.0;
    for (int i = 0; i < m_; ++i) v += cost_[basis_[i]] * xb_[i];
    return v;
  }

  // Row r of B^{-1} A restricted to column j.
  double tableau_entry(int r, int j) const {
    double v = 0.0;
    for (int k = 0; k < m_; ++k) v += binv_[r][k] * cols_[j][k];
    return v;
  }

  // Replaces the basic variable in row r by column j (a degenerate exchange
  // used to drive artificials out after phase I).
  void force_pivot(int r, int j) {
    Vec w = ftran(cols_[j]);
    pivot(j, r, w);
  }

  // Removes the given rows (already detected as redundant) and the trailing
  // artificial columns, keeping the current structural basis.
  void drop_rows_and_artificials(const std::vector<int>& rows) {
    std::vector<bool> drop(m_, false);
    for (int r : rows) drop[r] = true;
    std::vector<int> new_basis;
    Vec new_b;
    for (int r = 0; r < m_; ++r) {
      if (drop[r]) continue;
      new_basis.push_back(basis_[r]);
      new_b.push_back(b_[r]);
    }
    for (auto& col : cols_) {
      Vec nc;
      nc.reserve(new_b.size());
      for (int r = 0; r < m_; ++r)
        if (!drop[r]) nc.push_back(col[r]);
      col = std::move(nc);
    }
    cols_.resize(n_structural_);
    b_ = std::move(new_b);
    basis_ = std::move(new_basis);
    m_ = static_cast<int>(b_.size());
  }

  void refactor() {
    // binv_ = inverse of the basis matrix, by Gauss-Jordan elimination with
    // partial pivoting on an augmented copy.
    Mat aug(m_, Vec(2 * m_, 0.0));
    for (int r = 0; r < m_; ++r) {
      for (int i = 0; i < m_; ++i) aug[r][i] = cols_[basis_[i]][r];
      aug[r][m_ + r] = 1.0;
    }
    for (int col = 0; col < m_; ++col) {
      int piv = col;
      for (int r = col + 1; r < m_; ++r)
        if (std::fabs(aug[r][col]) > std::fabs(aug[piv][col])) piv = r;
      if (std::fabs(aug[piv][col]) < 1e-13)
        throw std::runtime_error("solve_lp: singular basis");
      std::swap(aug[piv], aug[col]);
      const double d = aug[col][col];
      for (double& v : aug[col]) v /= d;
      for (int r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = aug[r][col];
        if (f == 0.0) continue;
        for (int c = col; c < 2 * m_; ++c) aug[r][c] -= f * aug[col][c];
      }
    }
    binv_.assign(m_, Vec(m_, 0.0));
    for (int r = 0; r < m_; ++r)
      for (int c = 0; c < m_; ++c) binv_[r][c] = aug[r][m_ + c];
    xb_ = mat_vec(binv_, b_);
    pivots_since_refactor_ = 0;
  }

 private:
  static Vec mat_vec(const Mat& a, const Vec& v) {
    Vec out(a.size(), 0.0);
    for (std::size_t r = 0; r < a.size(); ++r)
      for (std::size_t c = 0; c < v.size(); ++c) out[r] += a[r][c] * v[c];
    return out;
  }

  Vec ftran(const Vec& col) const { return mat_vec(binv_, col); }

  Vec btran_cost() const {
    Vec y(m_, 0.0);
    for (int c = 0; c < m_; ++c)
      for (int r = 0; r < m_; ++r) y[c] += cost_[basis_[r]] * binv_[r][c];
    return y;
  }

  // Entering column index, or -1 when all reduced costs are >= -tol.
  int price(bool bland) const {
    const Vec y = btran_cost();
    const int n = static_cast<int>(cols_.size());
    std::vector<bool> in_basis(n, false);
    for (int j : basis_) in_basis[j] = true;
    int best = -1;
    double best_d = -kPivotTol;
    for (int j = 0; j < n; ++j) {
      if (in_basis[j]) continue;
      double d = cost_[j];
      for (int r = 0; r < m_; ++r) d -= y[r] * cols_[j][r];
      if (d < best_d) {
        if (bland) return j;  // smallest index with negative reduced cost
        best_d = d;
        best = j;
      }
    }
    return best;
  }

  // Leaving row by the minimum-ratio test; ties go to the row whose basic
  // column index is smallest (compatible with Bland's rule). Returns -1 when
  // the entering direction is unbounded.
  int ratio_test(const Vec& w) const {
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m_; ++r) {
      if (w[r] <= kPivotTol) continue;
      const double ratio = std::max(0.0, xb_[r]) / w[r];
      if (ratio < best_ratio - 1e-15 ||
          (ratio <= best_ratio + 1e-15 &&
           (leave < 0 || basis_[r] < basis_[leave]))) {
        best_ratio = ratio;
        leave = r;
      }
    }
    return leave;
  }

  void pivot(int entering, int leaving_row, const Vec& w) {
    const double step = std::max(0.0, xb_[leaving_row]) / w[leaving_row];
    degenerate_run_ = (step <= kDegenerateStep) ? degenerate_run_ + 1 : 0;

    const double piv = w[leaving_row];
    for (double& v : binv_[leaving_row]) v /= piv;
    for (int r = 0; r < m_; ++r) {
      if (r == leaving_row) continue;
      const double f = w[r];
      if (f == 0.0) continue;
      for (int c = 0; c < m_; ++c) binv_[r][c] -= f * binv_[leaving_row][c];
      xb_[r] -= f * step;
    }
    xb_[leaving_row] = step;
    basis_[leaving_row] = entering;
    ++iterations_;
    if (++pivots_since_refactor_ >= kRefactorInterval) refactor();
  }

  Mat cols_;   // cols_[j] = column j, length m_
  Vec b_;
  int m_;
  int n_structural_;
  Vec cost_;
  std::vector<int> basis_;
  Mat binv_;
  Vec xb_;
  int pivots_since_refactor_ = 0;
  int degenerate_run_ = 0;
  int iterations_ = 0;
};

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  const int m = static_cast<int>(p.a.size());
  const int n = static_cast<int>(p.objective.size());
  if (static_cast<int>(p.rhs.size()) != m)
    throw std::invalid_argument("solve_lp: rhs size does not match row count");
  for (const auto& row : p.a)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("solve_lp: row length does not match objective size");
  for (double v : p.objective)
    if (!std::isfinite(v)) throw std::invalid_argument("solve_lp: non-finite objective");
  for (double v : p.rhs)
    if (!std::isfinite(v)) throw std::invalid_argument("solve_lp: non-finite rhs");
  for (const auto& row : p.a)
    for (double v : row)
      if (!std::isfinite(v)) throw std::invalid_argument("solve_lp: non-finite matrix entry");

  // Column-major copy with rows flipped so that rhs >= 0, plus one artificial
  // identity column per row.
  Vec sign(m, 1.0);
  for (int r = 0; r < m; ++r)
    if (p.rhs[r] < 0.0) sign[r] = -1.0;
  Mat cols(n + m, Vec(m, 0.0));
  Vec b(m, 0.0);
  for (int r = 0; r < m; ++r) {
    b[r] = sign[r] * p.rhs[r];
    for (int j = 0; j < n; ++j) cols[j][r] = sign[r] * p.a[r][j];
    cols[n + r][r] = 1.0;
  }

  Simplex spx(std::move(cols), std::move(b), n);
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) basis[r] = n + r;
  spx.set_basis(std::move(basis));

  // Phase I: minimize the sum of artificials.
  Vec phase1_cost(n + m, 0.0);
  for (int r = 0; r < m; ++r) phase1_cost[n + r] = 1.0;
  if (!spx.optimize(phase1_cost))
    throw std::runtime_error("solve_lp: phase I unbounded (internal error)");

  LpSolution sol;
  sol.iterations = spx.iterations();
  if (spx.objective() > kPhase1FeasTol) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }

  // Drive basic artificials out; rows where no structural column can enter
  // (all tableau entries structurally zero) are redundant equalities. The
  // replacement column is chosen with the largest pivot magnitude so the
  // degenerate exchange stays well conditioned.
  std::vector<int> redundant;
  for (int r = 0; r < spx.rows(); ++r) {
    if (spx.basis()[r] < n) continue;
    if (std::fabs(spx.basic_values()[r]) > kArtificialLevel)
      throw std::runtime_error("solve_lp: artificial basic above tolerance after phase I");
    std::vector<bool> in_basis(n, false);
    for (int bj : spx.basis())
      if (bj < n) in_basis[bj] = true;
    int entering = -1;
    double best = 1e-9;
    for (int j = 0; j < n; ++j) {
      if (in_basis[j]) continue;
      const double w = std::fabs(spx.tableau_entry(r, j));
      if (w > best) {
        best = w;
        entering = j;
      }
    }
    if (entering >= 0)
      spx.force_pivot(r, entering);
    else
      redundant.push_back(r);
  }
  if (!redundant.empty()) spx.drop_rows_and_artificials(redundant);
  sol.redundant_rows = redundant;

  // Phase II on the reduced system with the true objective. Artificial
  // columns are priced at +infinity effect by simply never letting them
  // enter: after the drop they are gone; if no row was dropped they remain
  // but with zero level and a cost high enough never to price in.
  Vec phase2_cost(n + (redundant.empty() ? m : 0), 0.0);
  for (int j = 0; j < n; ++j) phase2_cost[j] = p.objective[j];
  for (std::size_t j = n; j < phase2_cost.size(); ++j) phase2_cost[j] = 1e30;
  if (!spx.optimize(phase2_cost)) {
    sol.status = LpStatus::Unbounded;
    sol.iterations = spx.iterations();
    return sol;
  }

  sol.status = LpStatus::Optimal;
  sol.iterations = spx.iterations();
  sol.x.assign(n, 0.0);
  for (int r = 0; r < spx.rows(); ++r) {
    const int j = spx.basis()[r];
    if (j < n) sol.x[j] = spx.basic_values()[r];
  }
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += p.objective[j] * sol.x[j];
  sol.basis = spx.basis();
  return sol;
}

}  // namespace occlab
