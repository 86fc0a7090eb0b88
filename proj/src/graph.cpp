#include "ghlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

namespace ghlab {

void WeightedGraph::add_edge(int u, int v, double w) {
  if (u == v) throw input_error("add_edge: self loop at " + std::to_string(u));
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw input_error("add_edge: vertex out of range");
  if (!(w > 0.0)) throw input_error("add_edge: nonpositive weight");
  if (u > v) std::swap(u, v);
  edges_.push_back({u, v, w});
  finalized_ = false;
}

void WeightedGraph::finalize() {
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : (a.v != b.v ? a.v < b.v : a.w < b.w);
  });
  // Parallel edges keep the minimum weight.
  std::vector<Edge> dedup;
  dedup.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (!dedup.empty() && dedup.back().u == e.u && dedup.back().v == e.v)
      continue;
    dedup.push_back(e);
  }
  edges_.swap(dedup);

  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (int i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
  nbr_.assign(offsets_[n_], 0);
  wgt_.assign(offsets_[n_], 0.0);
  eid_.assign(offsets_[n_], 0);
  std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
  for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
    const Edge& e = edges_[id];
    nbr_[cursor[e.u]] = e.v;
    wgt_[cursor[e.u]] = e.w;
    eid_[cursor[e.u]] = id;
    ++cursor[e.u];
    nbr_[cursor[e.v]] = e.u;
    wgt_[cursor[e.v]] = e.w;
    eid_[cursor[e.v]] = id;
    ++cursor[e.v];
  }
  finalized_ = true;
}

double WeightedGraph::max_edge_weight() const {
  double m = 0.0;
  for (const Edge& e : edges_) m = std::max(m, e.w);
  return m;
}

std::vector<double> WeightedGraph::dijkstra(std::span<const int> sources,
                                            double cutoff,
                                            std::vector<int>* parent) const {
  if (!finalized_) throw computation_error("dijkstra on non-finalized graph");
  std::vector<double> dist(n_, kInf);
  if (parent) parent->assign(n_, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (int s : sources) {
    if (s < 0 || s >= n_) throw input_error("dijkstra: source out of range");
    if (dist[s] > 0.0) {
      dist[s] = 0.0;
      heap.emplace(0.0, s);
    }
  }
  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u]) continue;
    for (int k = offsets_[u]; k < offsets_[u + 1]; ++k) {
      const int v = nbr_[k];
      const double dv = du + wgt_[k];
      if (dv > cutoff) continue;
      if (dv < dist[v]) {
        dist[v] = dv;
        if (parent) (*parent)[v] = u;
        heap.emplace(dv, v);
      }
    }
  }
  return dist;
}

std::vector<double> WeightedGraph::dijkstra(int source, double cutoff,
                                            std::vector<int>* parent) const {
  const int src[1] = {source};
  return dijkstra(std::span<const int>(src, 1), cutoff, parent);
}

std::pair<std::vector<int>, int> WeightedGraph::components() const {
  std::vector<int> label(n_, -1);
  int count = 0;
  std::vector<int> stack;
  for (int s = 0; s < n_; ++s) {
    if (label[s] >= 0) continue;
    label[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for_each_neighbor(u, [&](int v, double, int) {
        if (label[v] < 0) {
          label[v] = count;
          stack.push_back(v);
        }
      });
    }
    ++count;
  }
  return {std::move(label), count};
}

double DiscretizedLengthSpace::ball_measure(const std::vector<double>& dists,
                                            double r, BallMode mode) const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i)
    if (in_ball(dists[i], r, mode)) s += vertex_measure(i);
  return s;
}

std::vector<int> DiscretizedLengthSpace::ball(int center, double r,
                                              BallMode mode) const {
  auto dists = dist_from(center, r + 1.0);
  return ball_from_dists(dists, r, mode);
}

FiniteMetricSpace DiscretizedLengthSpace::to_metric_space(int cap) const {
  const int n = size();
  if (n > cap)
    throw computation_error(
        "to_metric_space: " + std::to_string(n) + " vertices exceeds table cap " +
        std::to_string(cap) + "; use per-source distances instead");
  FiniteMetricSpace out;
  out.id = id;
  out.points = names;
  out.basepoint = basepoint;
  out.measure = measure;
  out.boundary = boundary;
  out.dist.assign(static_cast<size_t>(n) * n, 0.0);
  for (int v = 0; v < n; ++v) {
    auto row = dist_from(v);
    for (int u = 0; u < n; ++u) out.dref(v, u) = row[u];
  }
  return out;
}

FiniteMetricSpace DiscretizedLengthSpace::subset_metric(
    std::span<const int> subset, const std::string& suffix) const {
  if (subset.empty()) throw input_error("subset_metric: empty subset");
  FiniteMetricSpace out;
  out.id = id + suffix;
  const int m = static_cast<int>(subset.size());
  out.points.reserve(m);
  for (int v : subset) out.points.push_back(names[v]);
  out.dist.assign(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    auto row = dist_from(subset[i]);
    for (int j = 0; j < m; ++j) out.dref(i, j) = row[subset[j]];
  }
  if (!measure.empty()) {
    out.measure.reserve(m);
    for (int v : subset) out.measure.push_back(measure[v]);
  }
  if (basepoint) {
    for (int i = 0; i < m; ++i)
      if (subset[i] == *basepoint) out.basepoint = i;
  }
  return out;
}

DiscretizedLengthSpace DiscretizedLengthSpace::induced_subspace(
    std::span<const int> subset, const std::string& suffix,
    std::vector<int>* back_map, bool require_connected) const {
  if (subset.empty()) throw input_error("induced_subspace: empty subset");
  std::vector<int> to_new(size(), -1);
  for (int i = 0; i < static_cast<int>(subset.size()); ++i) {
    if (to_new[subset[i]] >= 0)
      throw input_error("induced_subspace: duplicate vertex");
    to_new[subset[i]] = i;
  }
  WeightedGraph g(static_cast<int>(subset.size()));
  for (const auto& e : graph.edges()) {
    const int nu = to_new[e.u], nv = to_new[e.v];
    if (nu >= 0 && nv >= 0) g.add_edge(nu, nv, e.w);
  }
  g.finalize();
  if (require_connected) {
    auto [label, count] = g.components();
    if (count != 1) {
      int a = 0, b = 0;
      for (int i = 0; i < static_cast<int>(label.size()); ++i)
        if (label[i] != label[0]) {
          b = i;
          break;
        }
      throw input_error("induced_subspace: subgraph disconnected, e.g. " +
                        names[subset[a]] + " and " + names[subset[b]]);
    }
  }
  DiscretizedLengthSpace out;
  out.id = id + suffix;
  out.resolution = g.max_edge_weight();
  out.graph = std::move(g);
  out.names.reserve(subset.size());
  for (int v : subset) out.names.push_back(names[v]);
  if (!measure.empty()) {
    out.measure.reserve(subset.size());
    for (int v : subset) out.measure.push_back(measure[v]);
  }
  if (basepoint && to_new[*basepoint] >= 0) out.basepoint = to_new[*basepoint];
  if (!boundary.empty()) {
    for (int v : boundary)
      if (to_new[v] >= 0) out.boundary.push_back(to_new[v]);
    std::sort(out.boundary.begin(), out.boundary.end());
  }
  if (back_map) back_map->assign(subset.begin(), subset.end());
  return out;
}

DiscretizedLengthSpace length_metric(WeightedGraph graph,
                                     std::vector<std::string> names,
                                     std::string id) {
  if (graph.size() == 0) throw input_error("length_metric: empty graph");
  if (static_cast<int>(names.size()) != graph.size())
    throw input_error("length_metric: name count mismatch");
  if (!graph.finalized()) graph.finalize();
  auto [label, count] = graph.components();
  if (count != 1) {
    int a = 0, b = 0;
    for (int i = 0; i < static_cast<int>(label.size()); ++i)
      if (label[i] != label[0]) {
        b = i;
        break;
      }
    throw input_error("length_metric: graph disconnected; vertices " +
                      names[a] + " and " + names[b] +
                      " are mutually unreachable (split into components first)");
  }
  DiscretizedLengthSpace out;
  out.id = std::move(id);
  out.resolution = graph.max_edge_weight();
  out.graph = std::move(graph);
  out.names = std::move(names);
  return out;
}

DiscretizedLengthSpace length_metric(WeightedGraph graph, std::string id) {
  std::vector<std::string> names;
  names.reserve(graph.size());
  for (int i = 0; i < graph.size(); ++i) names.push_back("v" + std::to_string(i));
  return length_metric(std::move(graph), std::move(names), std::move(id));
}

bool no_edge_shortcuts(const DiscretizedLengthSpace& space, double tol) {
  for (const auto& e : space.graph.edges()) {
    auto row = space.dist_from(e.u, e.w + tol);
    if (row[e.v] < e.w - tol) return false;
  }
  return true;
}

DiscretizedLengthSpace path_space(int n, double edge_len) {
  WeightedGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, edge_len);
  g.finalize();
  auto s = length_metric(std::move(g), "path" + std::to_string(n));
  s.basepoint = 0;
  return s;
}

DiscretizedLengthSpace cycle_space(int n, double edge_len) {
  WeightedGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, edge_len);
  g.finalize();
  auto s = length_metric(std::move(g), "cycle" + std::to_string(n));
  s.basepoint = 0;
  return s;
}

DiscretizedLengthSpace grid_space(int nx, int ny, double spacing,
                                  bool diagonals, bool mark_boundary,
                                  const std::string& id) {
  if (nx < 2 || ny < 2) throw input_error("grid_space: need at least 2x2");
  WeightedGraph g(nx * ny);
  auto at = [nx](int i, int j) { return j * nx + i; };
  const double diag = spacing * std::sqrt(2.0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (i + 1 < nx) g.add_edge(at(i, j), at(i + 1, j), spacing);
      if (j + 1 < ny) g.add_edge(at(i, j), at(i, j + 1), spacing);
      if (diagonals && i + 1 < nx && j + 1 < ny) {
        g.add_edge(at(i, j), at(i + 1, j + 1), diag);
        g.add_edge(at(i + 1, j), at(i, j + 1), diag);
      }
    }
  g.finalize();
  auto s = length_metric(std::move(g), id);
  s.basepoint = at(nx / 2, ny / 2);
  if (mark_boundary) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1)
          s.boundary.push_back(at(i, j));
    std::sort(s.boundary.begin(), s.boundary.end());
  }
  return s;
}

DistanceOracle::DistanceOracle(const FiniteMetricSpace& fms)
    : fms_(&fms), n_(fms.size()), resolution_(0.0) {}

DistanceOracle::DistanceOracle(const DiscretizedLengthSpace& dls)
    : dls_(&dls), n_(dls.size()), resolution_(dls.resolution) {}

std::vector<double> DistanceOracle::dist_from(int v, double cutoff) const {
  if (fms_) {
    std::vector<double> row(n_);
    for (int i = 0; i < n_; ++i) row[i] = fms_->d(v, i);
    if (cutoff < kInf)
      for (double& x : row)
        if (x > cutoff) x = kInf;
    return row;
  }
  return dls_->dist_from(v, cutoff);
}

double DistanceOracle::vertex_measure(int v) const {
  if (fms_) return fms_->has_measure() ? fms_->measure[v] : 1.0;
  return dls_->vertex_measure(v);
}

bool DistanceOracle::has_explicit_measure() const {
  return fms_ ? fms_->has_measure() : !dls_->measure.empty();
}

const std::string& DistanceOracle::name(int v) const {
  return fms_ ? fms_->points[v] : dls_->names[v];
}

std::optional<int> DistanceOracle::basepoint() const {
  return fms_ ? fms_->basepoint : dls_->basepoint;
}

}  // namespace ghlab
