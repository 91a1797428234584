#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace occlab {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // dense, row-major list of rows

// Solves A x = b by Gaussian elimination with partial pivoting.
// A must be square and nonsingular; throws std::runtime_error otherwise.
inline Vec solve_linear(Mat a, Vec b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("solve_linear: size mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (std::fabs(a[piv][col]) < 1e-14)
      throw std::runtime_error("solve_linear: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const double d = a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / d;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec x(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

inline double l1_dist(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("l1_dist: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

inline double linf_dist(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("linf_dist: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::fabs(a[i] - b[i]));
  return s;
}

// Total variation distance between probability vectors (half the L1 norm).
inline double tv_dist(const Vec& a, const Vec& b) { return 0.5 * l1_dist(a, b); }

inline Vec vec_times_mat(const Vec& v, const Mat& p) {
  if (p.empty()) return {};
  Vec out(p[0].size(), 0.0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (v[x] == 0.0) continue;
    for (std::size_t y = 0; y < p[x].size(); ++y) out[y] += v[x] * p[x][y];
  }
  return out;
}

}  // namespace occlab
