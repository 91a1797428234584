#pragma once

#include <string>
#include <vector>

#include "occlab/linalg.hpp"

namespace occlab {

// Row sums of transition kernels must match 1 within this tolerance. The
// CDF-difference construction in discretize() accumulates only on the order
// of grid-size rounding errors, so 1e-9 is comfortably loose.
inline constexpr double kRowSumTol = 1e-9;

// Finite controlled Markov chain.
//
// Admissible actions are stored as explicit per-state index lists (the sets
// U(x)); kernel[x][i] and cost[x][i] are indexed by the position i of the
// action in admissible[x], not by the raw action id. Iteration over the
// admissible pairs is the hot path everywhere, so the flat pair index
// (see pair_offsets) is the canonical variable ordering for LPs and
// occupation measures.
struct FiniteMdp {
  int n_states = 0;
  int n_actions = 0;
  std::vector<std::vector<int>> admissible;  // admissible[x] = allowed action ids
  std::vector<Mat> kernel;                   // kernel[x][i] = T(.|x, admissible[x][i])
  Mat cost;                                  // cost[x][i]  = c(x, admissible[x][i])

  int pair_count() const;
  // pair_offsets()[x] is the flat index of (x, admissible[x][0]); the flat
  // index of (x, i) is pair_offsets()[x] + i.
  std::vector<int> pair_offsets() const;
  // Position of `action` in admissible[state], or -1 if not admissible.
  int action_slot(int state, int action) const;
};

// Scalar stochastic-difference-equation model X_{t+1} = a X_t + b U_t + W_t
// on a bounded interval, with a finite action list and an N-cell grid.
//
// Noise families: LinearGaussian has W ~ N(0, sigma^2); LinearUniform has
// W ~ Uniform[-sigma, sigma]. The running cost is fixed to
// c(x, u) = x^2 + u^2, evaluated at cell midpoints after discretization.
enum class NoiseFamily { LinearGaussian, LinearUniform };

struct ContinuousModel1D {
  NoiseFamily family = NoiseFamily::LinearGaussian;
  double a = 0.0;
  double b = 0.0;
  double sigma = 1.0;
  double x_lo = -1.0;
  double x_hi = 1.0;
  std::vector<double> actions;
  int grid = 2;

  std::vector<double> midpoints() const;
  double cell_width() const { return (x_hi - x_lo) / grid; }
  // Noise CDF evaluated at w (distribution of W).
  double noise_cdf(double w) const;
  double noise_density(double w) const;
};

// Returns an empty list iff all FiniteMdp invariants hold; otherwise one
// human-readable violation per offending quantity, naming (x, u).
std::vector<std::string> validate_model(const FiniteMdp& m);

// Grid discretization: states are the N cell midpoints, each kernel row
// assigns cell j the noise-CDF mass of cell j's interval centered at
// a*x_i + b*u, with all out-of-range mass truncated onto the boundary
// cells. Rows are row-stochastic by construction (CDF telescoping).
// Deterministic: the same model yields a bit-identical FiniteMdp.
FiniteMdp discretize(const ContinuousModel1D& cm);

// Componentwise maximum of all kernel rows: the smallest measure nu with
// T(.|x,u) <= nu for every admissible pair, plus its total mass. The mass is
// a tightness diagnostic for the majorization hypothesis; it is always
// finite on a finite model and equals 1 exactly when all rows coincide.
struct MajorizationBound {
  Vec nu;
  double mass = 0.0;
};
MajorizationBound majorization_bound(const FiniteMdp& m);

}  // namespace occlab
