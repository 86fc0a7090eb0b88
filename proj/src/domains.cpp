#include "ghlab/domains.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace ghlab {

DomainInGraph::DomainInGraph(const DiscretizedLengthSpace& ambient,
                             std::vector<int> domain, std::vector<int> boundary) {
  if (domain.empty()) throw input_error("DomainInGraph: empty domain");
  std::sort(domain.begin(), domain.end());
  std::sort(boundary.begin(), boundary.end());
  for (int b : boundary)
    if (!std::binary_search(domain.begin(), domain.end(), b))
      throw input_error("DomainInGraph: boundary vertex outside domain");
  inner_ = ambient.induced_subspace(domain, "|domain", &back_map_,
                                    /*require_connected=*/true);
  std::map<int, int> to_local;
  for (int i = 0; i < static_cast<int>(back_map_.size()); ++i)
    to_local[back_map_[i]] = i;
  for (int b : boundary) boundary_local_.push_back(to_local.at(b));
  std::sort(boundary_local_.begin(), boundary_local_.end());
  inner_.boundary = boundary_local_;
}

DomainInGraph::DomainInGraph(const DiscretizedLengthSpace& ambient) {
  if (ambient.boundary.empty())
    throw input_error("DomainInGraph: space carries no boundary tags");
  std::vector<int> all(ambient.size());
  for (int i = 0; i < ambient.size(); ++i) all[i] = i;
  inner_ = ambient.induced_subspace(all, "|domain", &back_map_, true);
  boundary_local_ = ambient.boundary;
  inner_.boundary = boundary_local_;
}

const std::vector<double>& DomainInGraph::boundary_distance() const {
  if (boundary_dist_.empty()) {
    if (boundary_local_.empty())
      throw computation_error("DomainInGraph: no boundary vertices");
    boundary_dist_ = inner_.dist_from_set(boundary_local_);
  }
  return boundary_dist_;
}

std::vector<int> r_interior(const DomainInGraph& domain, double t) {
  if (t < 0) throw input_error("r_interior: negative t");
  const auto& bd = domain.boundary_distance();
  std::vector<int> out;
  for (int v = 0; v < domain.size(); ++v)
    if (bd[v] > t + kPointTol) out.push_back(v);
  return out;
}

UndistortednessCertificate undistortedness_certificate(
    const DomainInGraph& domain, const std::vector<double>& t_grid,
    const std::function<double(double)>& s_of_t, double tol_h_multiple) {
  const double h = domain.resolution();
  UndistortednessCertificate cert;
  cert.tolerance = tol_h_multiple * h;
  cert.pass = true;

  double tau_needed = 1.0;
  for (double t : t_grid) {
    if (!(t > 2.0 * h))
      throw input_error("undistortedness_certificate: grid t = " +
                        std::to_string(t) + " must exceed 2h = " +
                        std::to_string(2.0 * h));
    UndistortednessEntry e;
    e.t = t;
    e.s = s_of_t(t);
    auto interior = r_interior(domain, t);
    e.interior_size = static_cast<int>(interior.size());
    if (interior.empty()) {
      e.pass = false;
      e.reach = kInf;
      // Witness: the vertex farthest from the boundary (deepest failure).
      const auto& bd = domain.boundary_distance();
      e.worst_vertex = static_cast<int>(
          std::max_element(bd.begin(), bd.end()) - bd.begin());
      cert.pass = false;
      cert.entries.push_back(e);
      continue;
    }
    auto reach = domain.inner().dist_from_set(interior);
    e.reach = 0.0;
    for (int v = 0; v < domain.size(); ++v)
      if (reach[v] > e.reach) {
        e.reach = reach[v];
        e.worst_vertex = v;
      }
    e.pass = e.reach <= e.s + cert.tolerance + kPointTol;
    if (!e.pass) cert.pass = false;
    tau_needed = std::max(tau_needed, (e.reach - cert.tolerance) / t);
    cert.entries.push_back(e);
  }
  if (cert.pass) cert.lipschitz_tau = tau_needed;
  return cert;
}

FiniteMetricSpace delta_intrinsic_metric(const FiniteMetricSpace& ambient,
                                         std::span<const int> subset,
                                         double delta) {
  if (!(delta > 0)) throw input_error("delta_intrinsic_metric: delta must be > 0");
  if (subset.empty()) throw input_error("delta_intrinsic_metric: empty subset");
  const int m = static_cast<int>(subset.size());
  WeightedGraph chain(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double d = ambient.d(subset[i], subset[j]);
      if (d <= delta + kPointTol && d > 0) chain.add_edge(i, j, d);
    }
  chain.finalize();
  auto [label, count] = chain.components();
  if (count != 1) {
    std::string msg = "delta_intrinsic_metric: chain graph disconnected at delta = " +
                      std::to_string(delta) + "; components:";
    for (int c = 0; c < count && c < 8; ++c) {
      msg += " {";
      int emitted = 0;
      for (int i = 0; i < m && emitted < 4; ++i)
        if (label[i] == c) {
          msg += (emitted ? "," : "") + ambient.points[subset[i]];
          ++emitted;
        }
      msg += "}";
    }
    throw input_error(msg);
  }

  FiniteMetricSpace out;
  out.id = ambient.id + "|delta" ;
  out.points.reserve(m);
  for (int v : subset) out.points.push_back(ambient.points[v]);
  out.dist.assign(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    auto row = chain.dijkstra(i);
    for (int j = 0; j < m; ++j) out.dref(i, j) = row[j];
  }
  if (ambient.basepoint)
    for (int i = 0; i < m; ++i)
      if (subset[i] == *ambient.basepoint) out.basepoint = i;
  return out;
}

FiniteMetricSpace r_extrinsic_metric(const DiscretizedLengthSpace& ambient,
                                     std::span<const int> subset, double r) {
  if (!(r > 0)) throw input_error("r_extrinsic_metric: r must be > 0");
  if (subset.empty()) throw input_error("r_extrinsic_metric: empty subset");

  auto from_set = ambient.dist_from_set(subset, r + 1.0);
  std::vector<int> hood;
  for (int v = 0; v < ambient.size(); ++v)
    if (in_ball(from_set[v], r, BallMode::open)) hood.push_back(v);

  std::vector<int> back;
  auto sub = ambient.induced_subspace(hood, "|hood", &back,
                                      /*require_connected=*/false);
  std::vector<int> to_local(ambient.size(), -1);
  for (int i = 0; i < static_cast<int>(back.size()); ++i) to_local[back[i]] = i;

  const int m = static_cast<int>(subset.size());
  FiniteMetricSpace out;
  out.id = ambient.id + "|extrinsic";
  out.points.reserve(m);
  for (int v : subset) out.points.push_back(ambient.names[v]);
  out.dist.assign(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    const int li = to_local[subset[i]];
    auto row = sub.dist_from(li);
    for (int j = 0; j < m; ++j) {
      const double d = row[to_local[subset[j]]];
      if (d == kInf)
        throw input_error(
            "r_extrinsic_metric: r-neighborhood of the subset is disconnected "
            "between " + ambient.names[subset[i]] + " and " +
            ambient.names[subset[j]]);
      out.dref(i, j) = d;
    }
  }
  if (ambient.basepoint)
    for (int i = 0; i < m; ++i)
      if (subset[i] == *ambient.basepoint) out.basepoint = i;
  return out;
}

}  // namespace ghlab
