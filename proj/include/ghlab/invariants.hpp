#pragma once

#include <string>
#include <vector>

#include "ghlab/metric_space.hpp"

namespace ghlab {

enum class SolveMode { exact, greedy };

// Cap_eps witness: points pairwise at distance >= eps (tolerance kPointTol).
struct PackingResult {
  double epsilon = 0.0;
  int count = 0;
  std::vector<int> witness;
  bool exact = false;
};

// Cov_eps witness: open eps-balls at `centers` cover every point.
struct CoveringResult {
  double epsilon = 0.0;
  int count = 0;
  std::vector<int> centers;
  bool exact = false;
};

struct SandwichResult {
  double epsilon = 0.0;
  int cov = 0;       // Cov_eps
  int cap = 0;       // Cap_eps
  int cov_half = 0;  // Cov_{eps/2}
  bool pass = false; // cov <= cap <= cov_half
};

// Maximal eps-discrete set. Exact mode solves maximum independent set on the
// conflict graph (pairs at distance < eps) by branch and bound; the cap keeps
// instance sizes desk-scale. Greedy mode is a farthest-point traversal seeded
// at the base point (or the lexicographically first point id), deterministic
// tie-break by point id; it returns a valid witness, i.e. a lower bound.
PackingResult packing_number(const FiniteMetricSpace& space, double epsilon,
                             SolveMode mode, int exact_cap = 64);

// Least number of open eps-balls centered at points of the space that cover
// it. Exact mode is branch-and-bound set cover (cap default 32); greedy scans
// points in index order and opens a ball at the first uncovered point, which
// also yields an eps-separated center set.
CoveringResult covering_number(const FiniteMetricSpace& space, double epsilon,
                               SolveMode mode, int exact_cap = 32);

// Exact check of Cov_eps <= Cap_eps <= Cov_{eps/2}.
SandwichResult sandwich_check(const FiniteMetricSpace& space, double epsilon,
                              int exact_cap = 64);

// Greedy covering count over any graph-like space given by a distance
// functor: `dist_ball(center, eps)` must return pairs (vertex, distance) of
// the open eps-ball around `center` in the ambient metric. Scans `subset` in
// the given order, opening a ball at each uncovered member. Returns the
// number of centers; `centers_out` optional.
template <class DistBallFn>
int greedy_cover_count_fn(std::span<const int> subset, int n_total, double eps,
                          DistBallFn&& dist_ball,
                          std::vector<int>* centers_out = nullptr) {
  std::vector<char> covered(n_total, 0);
  int count = 0;
  for (int v : subset) {
    if (covered[v]) continue;
    ++count;
    if (centers_out) centers_out->push_back(v);
    dist_ball(v, eps, [&](int u, double d) {
      if (d < eps - kPointTol) covered[u] = 1;
    });
    covered[v] = 1;
  }
  return count;
}

// Exact maximum independent set size of a conflict graph given as bitset
// rows. Exposed for tests; packing_number uses it internally.
int max_independent_set(const std::vector<std::vector<unsigned long long>>& adj,
                        int n, std::vector<int>* witness = nullptr);

}  // namespace ghlab
