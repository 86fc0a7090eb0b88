#include "ghlab/invariants.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace ghlab {

namespace {

// --- small dynamic bitsets over uint64 words -------------------------------

using Words = std::vector<unsigned long long>;

int word_count(int n) { return (n + 63) / 64; }

void set_bit(Words& w, int i) { w[i >> 6] |= 1ULL << (i & 63); }
bool test_bit(const Words& w, int i) { return (w[i >> 6] >> (i & 63)) & 1ULL; }
void clear_bit(Words& w, int i) { w[i >> 6] &= ~(1ULL << (i & 63)); }

int popcount(const Words& w) {
  int c = 0;
  for (auto x : w) c += std::popcount(x);
  return c;
}

bool any(const Words& w) {
  for (auto x : w)
    if (x) return true;
  return false;
}

int first_bit(const Words& w) {
  for (int k = 0; k < static_cast<int>(w.size()); ++k)
    if (w[k]) return k * 64 + std::countr_zero(w[k]);
  return -1;
}

// --- exact maximum clique with greedy-coloring bound ------------------------
//
// packing_number reduces to maximum clique on the compatibility graph
// (pairs at distance >= eps). Classic branch and bound: candidates are
// greedily colored, processed in reverse color order, pruned when
// |R| + color <= best.

struct CliqueSolver {
  int n;
  const std::vector<Words>& adj;  // compatibility adjacency
  int best = 0;
  std::vector<int> best_set, cur;

  CliqueSolver(int n_, const std::vector<Words>& adj_) : n(n_), adj(adj_) {}

  void expand(Words P) {
    std::vector<int> order;
    std::vector<int> color;
    Words Q = P;
    int c = 0;
    while (any(Q)) {
      ++c;
      Words avail = Q;
      while (any(avail)) {
        int v = first_bit(avail);
        order.push_back(v);
        color.push_back(c);
        clear_bit(Q, v);
        clear_bit(avail, v);
        for (int k = 0; k < static_cast<int>(avail.size()); ++k)
          avail[k] &= ~adj[v][k];
      }
    }
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (static_cast<int>(cur.size()) + color[i] <= best) return;
      const int v = order[i];
      cur.push_back(v);
      Words P2 = P;
      for (int k = 0; k < static_cast<int>(P2.size()); ++k) P2[k] &= adj[v][k];
      if (!any(P2)) {
        if (static_cast<int>(cur.size()) > best) {
          best = static_cast<int>(cur.size());
          best_set = cur;
        }
      } else {
        expand(P2);
      }
      cur.pop_back();
      clear_bit(P, v);
    }
  }
};

// --- exact set cover with branch and bound ----------------------------------

struct SetCoverSolver {
  int n;
  const std::vector<Words>& sets;  // one candidate ball per point
  std::vector<int> set_sizes;
  int best;
  std::vector<int> best_pick, cur;

  SetCoverSolver(int n_, const std::vector<Words>& sets_)
      : n(n_), sets(sets_) {
    set_sizes.reserve(sets.size());
    for (const auto& s : sets) set_sizes.push_back(popcount(s));
    best = n + 1;
  }

  void solve(const Words& uncovered) {
    const int remaining = popcount(uncovered);
    if (remaining == 0) {
      if (static_cast<int>(cur.size()) < best) {
        best = static_cast<int>(cur.size());
        best_pick = cur;
      }
      return;
    }
    int max_size = 0;
    for (int s = 0; s < static_cast<int>(sets.size()); ++s) {
      int gain = 0;
      for (int k = 0; k < static_cast<int>(uncovered.size()); ++k)
        gain += std::popcount(sets[s][k] & uncovered[k]);
      max_size = std::max(max_size, gain);
    }
    if (max_size == 0) return;  // cannot finish (should not happen: self-cover)
    const int lb = (remaining + max_size - 1) / max_size;
    if (static_cast<int>(cur.size()) + lb >= best) return;

    // Branch on the uncovered element with the fewest candidate balls.
    int elem = -1, fewest = std::numeric_limits<int>::max();
    Words rem = uncovered;
    while (any(rem)) {
      const int e = first_bit(rem);
      clear_bit(rem, e);
      int cnt = 0;
      for (const auto& s : sets)
        if (test_bit(s, e)) ++cnt;
      if (cnt < fewest) {
        fewest = cnt;
        elem = e;
      }
    }
    std::vector<std::pair<int, int>> choices;  // (-gain, set index)
    for (int s = 0; s < static_cast<int>(sets.size()); ++s) {
      if (!test_bit(sets[s], elem)) continue;
      int gain = 0;
      for (int k = 0; k < static_cast<int>(uncovered.size()); ++k)
        gain += std::popcount(sets[s][k] & uncovered[k]);
      choices.emplace_back(-gain, s);
    }
    std::sort(choices.begin(), choices.end());
    for (auto [neg_gain, s] : choices) {
      (void)neg_gain;
      Words next = uncovered;
      for (int k = 0; k < static_cast<int>(next.size()); ++k)
        next[k] &= ~sets[s][k];
      cur.push_back(s);
      solve(next);
      cur.pop_back();
    }
  }
};

bool covers_all(const FiniteMetricSpace& space, const std::vector<int>& centers,
                double eps) {
  for (int p = 0; p < space.size(); ++p) {
    bool ok = false;
    for (int c : centers)
      if (in_ball(space.d(c, p), eps, BallMode::open)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

}  // namespace

int max_independent_set(const std::vector<std::vector<unsigned long long>>& adj,
                        int n, std::vector<int>* witness) {
  // Complement: clique in the complement of the conflict graph.
  const int wc = word_count(n);
  std::vector<Words> comp(n, Words(wc, 0ULL));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (j != i && !test_bit(adj[i], j)) set_bit(comp[i], j);
  }
  CliqueSolver solver(n, comp);
  Words all(wc, 0ULL);
  for (int i = 0; i < n; ++i) set_bit(all, i);
  solver.expand(all);
  if (witness) *witness = solver.best_set;
  return solver.best;
}

PackingResult packing_number(const FiniteMetricSpace& space, double epsilon,
                             SolveMode mode, int exact_cap) {
  if (!(epsilon > 0)) throw input_error("packing_number: epsilon must be > 0");
  const int n = space.size();
  PackingResult out;
  out.epsilon = epsilon;

  if (mode == SolveMode::exact) {
    if (n > exact_cap)
      throw computation_error(
          "packing_number: exact mode capped at " + std::to_string(exact_cap) +
          " points (" + std::to_string(n) + " given); use greedy mode");
    // Conflict graph: pairs strictly closer than eps (tolerance kPointTol).
    const int wc = word_count(n);
    std::vector<Words> conflict(n, Words(wc, 0ULL));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (space.d(i, j) < epsilon - kPointTol) {
          set_bit(conflict[i], j);
          set_bit(conflict[j], i);
        }
    std::vector<int> witness;
    out.count = max_independent_set(conflict, n, &witness);
    std::sort(witness.begin(), witness.end());
    out.witness = std::move(witness);
    out.exact = true;
    return out;
  }

  // Greedy: farthest-point traversal from the base point (or the
  // lexicographically first id), deterministic tie-break by point id.
  int start = space.basepoint.value_or(-1);
  if (start < 0) {
    start = 0;
    for (int i = 1; i < n; ++i)
      if (space.points[i] < space.points[start]) start = i;
  }
  std::vector<int> chosen{start};
  std::vector<double> min_dist(n);
  for (int i = 0; i < n; ++i) min_dist[i] = space.d(start, i);
  while (true) {
    int arg = -1;
    for (int i = 0; i < n; ++i) {
      if (min_dist[i] <= 0) continue;
      if (arg < 0 || min_dist[i] > min_dist[arg] + kPointTol ||
          (std::abs(min_dist[i] - min_dist[arg]) <= kPointTol &&
           space.points[i] < space.points[arg]))
        arg = i;
    }
    if (arg < 0 || min_dist[arg] < epsilon - kPointTol) break;
    chosen.push_back(arg);
    for (int i = 0; i < n; ++i)
      min_dist[i] = std::min(min_dist[i], space.d(arg, i));
  }
  std::sort(chosen.begin(), chosen.end());
  out.count = static_cast<int>(chosen.size());
  out.witness = std::move(chosen);
  out.exact = false;
  return out;
}

CoveringResult covering_number(const FiniteMetricSpace& space, double epsilon,
                               SolveMode mode, int exact_cap) {
  if (!(epsilon > 0)) throw input_error("covering_number: epsilon must be > 0");
  const int n = space.size();
  CoveringResult out;
  out.epsilon = epsilon;

  if (mode == SolveMode::exact) {
    if (n > exact_cap)
      throw computation_error(
          "covering_number: exact mode capped at " + std::to_string(exact_cap) +
          " points (" + std::to_string(n) + " given); use greedy mode");
    const int wc = word_count(n);
    std::vector<Words> balls(n, Words(wc, 0ULL));
    for (int c = 0; c < n; ++c)
      for (int p = 0; p < n; ++p)
        if (in_ball(space.d(c, p), epsilon, BallMode::open)) set_bit(balls[c], p);
    SetCoverSolver solver(n, balls);
    // Greedy incumbent keeps the branch and bound shallow.
    {
      Words uncovered(wc, 0ULL);
      for (int i = 0; i < n; ++i) set_bit(uncovered, i);
      std::vector<int> pick;
      while (any(uncovered)) {
        int bs = -1, bg = -1;
        for (int s = 0; s < n; ++s) {
          int gain = 0;
          for (int k = 0; k < wc; ++k)
            gain += std::popcount(balls[s][k] & uncovered[k]);
          if (gain > bg) {
            bg = gain;
            bs = s;
          }
        }
        pick.push_back(bs);
        for (int k = 0; k < wc; ++k) uncovered[k] &= ~balls[bs][k];
      }
      solver.best = static_cast<int>(pick.size());
      solver.best_pick = pick;
    }
    Words all(wc, 0ULL);
    for (int i = 0; i < n; ++i) set_bit(all, i);
    solver.solve(all);
    out.count = solver.best;
    out.centers = solver.best_pick;
    std::sort(out.centers.begin(), out.centers.end());
    out.exact = true;
    return out;
  }

  // Greedy: first uncovered point in index order becomes a center. The
  // resulting centers are also eps-separated.
  std::vector<char> covered(n, 0);
  for (int v = 0; v < n; ++v) {
    if (covered[v]) continue;
    out.centers.push_back(v);
    for (int p = 0; p < n; ++p)
      if (in_ball(space.d(v, p), epsilon, BallMode::open)) covered[p] = 1;
    covered[v] = 1;
  }
  out.count = static_cast<int>(out.centers.size());
  out.exact = false;
  if (!covers_all(space, out.centers, epsilon))
    throw computation_error("covering_number: internal error, invalid cover");
  return out;
}

SandwichResult sandwich_check(const FiniteMetricSpace& space, double epsilon,
                              int exact_cap) {
  SandwichResult r;
  r.epsilon = epsilon;
  r.cov = covering_number(space, epsilon, SolveMode::exact, exact_cap).count;
  r.cap = packing_number(space, epsilon, SolveMode::exact, exact_cap).count;
  r.cov_half =
      covering_number(space, epsilon / 2.0, SolveMode::exact, exact_cap).count;
  r.pass = r.cov <= r.cap && r.cap <= r.cov_half;
  return r;
}

}  // namespace ghlab
