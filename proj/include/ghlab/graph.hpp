#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghlab/metric_space.hpp"

namespace ghlab {

// Undirected edge-weighted graph in CSR form. Vertices are 0..n-1; parallel
// edges collapse to the shorter weight on finalize.
class WeightedGraph {
 public:
  struct Edge {
    int u, v;
    double w;
  };

  WeightedGraph() = default;
  explicit WeightedGraph(int n) : n_(n) {}

  int size() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  void add_vertex(int count = 1) { n_ += count; }
  void add_edge(int u, int v, double w);

  // Sorts and dedupes edges, builds adjacency. Must be called before queries.
  void finalize();
  bool finalized() const { return finalized_; }

  double max_edge_weight() const;

  // Neighbors of v as (neighbor, weight, edge id) triples via callback.
  template <class F>
  void for_each_neighbor(int v, F&& f) const {
    for (int k = offsets_[v]; k < offsets_[v + 1]; ++k)
      f(nbr_[k], wgt_[k], eid_[k]);
  }

  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }

  // Single- or multi-source Dijkstra. Unreached vertices get kInf. `cutoff`
  // prunes strictly beyond the given distance. `parent` (optional) receives
  // the predecessor vertex (-1 for sources/unreached).
  std::vector<double> dijkstra(std::span<const int> sources,
                               double cutoff = kInf,
                               std::vector<int>* parent = nullptr) const;
  std::vector<double> dijkstra(int source, double cutoff = kInf,
                               std::vector<int>* parent = nullptr) const;

  // Component label per vertex plus component count.
  std::pair<std::vector<int>, int> components() const;

 private:
  int n_ = 0;
  bool finalized_ = false;
  std::vector<Edge> edges_;
  std::vector<int> offsets_, nbr_, eid_;
  std::vector<double> wgt_;
};

// A finite graph discretization of a length space: the metric is the
// shortest-path metric of the edge-weighted graph, and `resolution` records
// the maximum edge length h. Full distance tables are only materialized on
// demand (they are quadratic); operations prefer per-source Dijkstra.
struct DiscretizedLengthSpace {
  std::string id;
  WeightedGraph graph;
  std::vector<std::string> names;  // vertex ids, size n
  double resolution = 0.0;
  std::optional<int> basepoint;
  std::vector<double> measure;  // empty = counting measure not materialized
  std::vector<int> boundary;    // sorted; empty = none

  int size() const { return graph.size(); }

  std::vector<double> dist_from(int src, double cutoff = kInf,
                                std::vector<int>* parent = nullptr) const {
    return graph.dijkstra(src, cutoff, parent);
  }
  std::vector<double> dist_from_set(std::span<const int> sources,
                                    double cutoff = kInf) const {
    return graph.dijkstra(sources, cutoff);
  }

  // Weight of one vertex under the space's measure (counting by default).
  double vertex_measure(int v) const {
    return measure.empty() ? 1.0 : measure[v];
  }

  // Sum of vertex measures over a ball given its distance row.
  double ball_measure(const std::vector<double>& dists, double r,
                      BallMode mode = BallMode::open) const;

  std::vector<int> ball(int center, double r, BallMode mode) const;

  // Materializes the full shortest-path table. Guarded: quadratic storage.
  FiniteMetricSpace to_metric_space(int cap = 4096) const;

  // Restricted (ambient shortest-path) distances between subset members,
  // as a FiniteMetricSpace on the subset. One Dijkstra per subset point.
  FiniteMetricSpace subset_metric(std::span<const int> subset,
                                  const std::string& suffix = "|subset") const;

  // Induced subgraph on a vertex subset, with its own length metric.
  // `back_map` (optional) receives original indices per new vertex.
  DiscretizedLengthSpace induced_subspace(std::span<const int> subset,
                                          const std::string& suffix,
                                          std::vector<int>* back_map = nullptr,
                                          bool require_connected = true) const;
};

// Validates and wraps a graph as a length space: positive weights, connected
// (the disconnected case is an error naming two unreachable vertices; split
// into components upstream instead of representing infinite distances).
DiscretizedLengthSpace length_metric(WeightedGraph graph,
                                     std::vector<std::string> names,
                                     std::string id);

// Convenience: names auto-generated as v0..v{n-1}.
DiscretizedLengthSpace length_metric(WeightedGraph graph, std::string id);

// Checks dist(u,v) == weight for every edge (no shortcut undercuts an edge).
// Linear in edges * Dijkstra; intended for tests and small spaces.
bool no_edge_shortcuts(const DiscretizedLengthSpace& space, double tol = kMetricTol);

// Common generators used by tests, experiments and the CLI.
DiscretizedLengthSpace path_space(int n, double edge_len = 1.0);
DiscretizedLengthSpace cycle_space(int n, double edge_len = 1.0);
// Axis-aligned grid graph on [0,w]x[0,h] with given spacing; diagonals
// optional. Boundary = outer ring when mark_boundary.
DiscretizedLengthSpace grid_space(int nx, int ny, double spacing,
                                  bool diagonals, bool mark_boundary,
                                  const std::string& id = "grid");

// Uniform distance oracle over either representation. Doubling and domain
// checks are written against this so tables and graphs share one code path.
class DistanceOracle {
 public:
  explicit DistanceOracle(const FiniteMetricSpace& fms);
  explicit DistanceOracle(const DiscretizedLengthSpace& dls);

  int size() const { return n_; }
  double resolution() const { return resolution_; }
  std::vector<double> dist_from(int v, double cutoff = kInf) const;
  double vertex_measure(int v) const;
  bool has_explicit_measure() const;
  const std::string& name(int v) const;
  std::optional<int> basepoint() const;

 private:
  const FiniteMetricSpace* fms_ = nullptr;
  const DiscretizedLengthSpace* dls_ = nullptr;
  int n_ = 0;
  double resolution_ = 0.0;
};

}  // namespace ghlab
