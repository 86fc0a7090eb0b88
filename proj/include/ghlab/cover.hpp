#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ghlab/complex.hpp"
#include "ghlab/graph.hpp"

namespace ghlab {

// Open-addressing int64 -> int32 map sized for millions of entries.
class FlatMap64 {
 public:
  int32_t find(int64_t key) const;
  // Returns the existing value, or -1 after inserting the new pair.
  int32_t find_or_insert(int64_t key, int32_t value);
  size_t size() const { return used_; }

 private:
  void grow();
  std::vector<int64_t> keys_;
  std::vector<int32_t> vals_;
  size_t used_ = 0;
};

// Interned reduced words over free generators. Letters are signed 16-bit
// generator ids (+g forward, -g inverse); id 0 is the empty word.
class WordTable {
 public:
  WordTable() : words_(1) {}

  int32_t identity() const { return 0; }
  const std::vector<int16_t>& letters(int32_t w) const { return words_[w]; }
  int32_t size() const { return static_cast<int32_t>(words_.size()); }

  // Free reduction of w * (suffix letters).
  int32_t append(int32_t w, const std::vector<int16_t>& suffix);
  int32_t concat(int32_t a, int32_t b) { return append(a, words_[b]); }
  int32_t inverse(int32_t w);
  int32_t single(int16_t letter) { return append(0, {letter}); }

 private:
  std::vector<std::vector<int16_t>> words_;
  std::vector<int32_t> index_;  // open addressing into words_
  void rehash();
  int32_t lookup_or_insert(std::vector<int16_t>&& word);
};

// Group labels on the edges of a 2-complex whose fundamental group is free
// (bordered surface patches). Built by elementary collapse: repeatedly remove
// a face together with an edge lying on that face alone, then resolve the
// recorded relations backwards. Tree edges carry the identity; leftover
// uncollapsed non-tree edges become free generators; every face relation
// reduces to the identity by construction (verified at the end).
struct HomotopyLabels {
  int generator_count = 0;
  std::vector<int32_t> fwd, rev;  // per base edge id (edge stored u < v)
};

// `faces` are vertex triples into `space`'s graph. Throws when a face edge is
// missing from the graph, an edge lies on more than two faces, or the complex
// does not collapse (a closed patch: the fundamental group is not free).
HomotopyLabels homotopy_labels(const DiscretizedLengthSpace& space,
                               const std::vector<std::array<int, 3>>& faces,
                               int root, WordTable& words);

// Truncated universal cover of a ball subcomplex, built by Dijkstra over
// (vertex, word) states: the discrete developing map. States are created in
// lifted-distance order and cut at `r_trunc`. Traversal methods are
// non-const because word transitions are memoized lazily.
class TruncatedCover {
 public:
  DiscretizedLengthSpace base;       // the ball subcomplex length space
  std::vector<int> base_to_ambient;  // ball vertex -> ambient complex vertex
  std::vector<std::array<int, 3>> base_faces;
  WordTable words;
  HomotopyLabels labels;

  std::vector<int32_t> proj;   // per state: base vertex
  std::vector<int32_t> word;   // per state: word id
  std::vector<double> dist;    // per state: lifted distance to the root
  int32_t root = 0;
  double r_trunc = 0.0;
  bool truncated = false;      // frontier was still active at r_trunc
  FlatMap64 states;            // (word * n_base + vertex) -> state id

  int64_t state_count() const { return static_cast<int64_t>(proj.size()); }

  // Ball-local index of an ambient complex vertex, -1 if outside the ball.
  int base_index_of(int ambient_vertex) const;

  // -1 when the state does not exist (beyond truncation).
  int32_t state_of(int base_vertex, int32_t word_id) const {
    return states.find(static_cast<int64_t>(word_id) * base.size() + base_vertex);
  }

  // Word transition along an edge label (memoized).
  int32_t transition(int32_t w, int32_t label);

  // Lifted neighbors among existing states: f(state, weight).
  template <class F>
  void for_each_lifted_neighbor(int32_t s, F&& f) {
    const int v = proj[s];
    const int32_t w = word[s];
    base.graph.for_each_neighbor(v, [&](int u, double wt, int eid) {
      const auto& e = base.graph.edges()[eid];
      const int32_t lab = (v == e.u) ? labels.fwd[eid] : labels.rev[eid];
      const int32_t t = state_of(u, transition(w, lab));
      if (t >= 0) f(t, wt);
    });
  }

  // States projecting to a base vertex, in creation (distance-ish) order.
  std::vector<int32_t> fiber(int base_vertex) const;

  // Dijkstra over lifted states from the given sources. `nearest` (optional)
  // receives the source index owning each state's Voronoi cell.
  std::vector<double> lifted_dist(std::span<const int32_t> sources,
                                  double cutoff = kInf,
                                  std::vector<int32_t>* nearest = nullptr);

  // Minimum lifted distance between distinct source states (one Voronoi
  // sweep; exact within the truncated graph).
  double min_pairwise_distance(std::span<const int32_t> sources);

  // Greedy covering count of {states with root-distance < radius} by open
  // eps-balls centered at such states; deterministic first-uncovered order.
  int greedy_cover_count(double radius, double eps);

  double max_root_distance() const;

  // Max over base vertices of the distance to their nearest lift.
  double projection_radius() const;

 private:
  FlatMap64 transitions_;  // (word << 31 | label) -> word
};

// Universal cover of the open ball B_r(center) in the complex's length
// space, truncated at lifted distance r_trunc. `center` is a complex vertex.
TruncatedCover universal_cover_ball(const SurfaceComplex& cx, int center,
                                    double r, double r_trunc);

// Normal cover: the component through the lifted base point of the preimage
// of B_{r1}(p) inside the (truncated) universal cover of B_{r2}(p).
TruncatedCover normal_cover(const SurfaceComplex& cx, int p, double r1,
                            double r2, double r_trunc);

// --- experiments -------------------------------------------------------------

struct SwPackingRow {
  int k = 0;
  double mesh_h = 0.0;
  double r_k = 0.0;             // (1 + 1/cos(pi/2k)) / 2
  int base_vertices = 0;
  long long states = 0;
  bool truncated = false;
  int lift_count = 0;           // lifts of o_k inside the open ball B_4
  double min_pairwise = 0.0;    // min lifted distance between those lifts
  int cov1 = 0;                 // greedy Cov_1 of B_4 in the cover
  int cov_half = 0;             // greedy Cov_{1/2}
  long long normal_states = 0;  // normal cover B^(o, 1/2, r_k)
  int normal_cov1 = 0;
  int normal_cov_half = 0;
  double seconds = 0.0;
};

// Glued-polygon cover growth: for each k, unfolds the universal cover of
// B_{r_k}(o_k) truncated at 4 + 2h, counts lifts of o_k in B_4 and their
// minimum pairwise distance, measures covering numbers, and builds the
// contrasting normal cover over B_{1/2}(o_k).
std::vector<SwPackingRow> experiment_sw_packing(int k_min, int k_max,
                                                double mesh_h);

struct PetersenRow {
  double detour_scale = 0.0;
  double mesh_h = 0.0;      // requested resolution
  double h_actual = 0.0;    // realized max edge of the ball subcomplex
  long long states = 0;
  bool truncated = false;
  double max_lift_dist = 0.0;    // max over lifted vertices of d(., root)
  double bound = 0.0;            // pi + 2*pi*detour + 10*h_actual
  bool within_bound = false;     // max_lift_dist <= bound
  double projection_radius = 0;  // nearest-lift radius over base vertices
  int lifts_in_2pi = 0;          // lifts of o within the open 2*pi ball
};

// Glued-sphere cover: unfolds the universal cover of B_{pi/2}(o) (the space
// minus its two cone points) truncated at r_trunc for each detour scale.
std::vector<PetersenRow> experiment_petersen(double mesh_h,
                                             std::vector<double> detour_scales,
                                             double r_trunc);

}  // namespace ghlab
