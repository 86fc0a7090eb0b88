#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ghlab/graph.hpp"

namespace ghlab {

// A domain inside a graph-discretized length space: a connected vertex subset
// W with a designated discrete boundary (tagged vertices, the stand-in for
// the intrinsic boundary), carrying the length metric d_W of its induced
// subgraph.
class DomainInGraph {
 public:
  // `domain` vertices of the ambient space; `boundary` must be a subset.
  DomainInGraph(const DiscretizedLengthSpace& ambient, std::vector<int> domain,
                std::vector<int> boundary);

  // Domain built from a whole space that already carries boundary tags.
  explicit DomainInGraph(const DiscretizedLengthSpace& ambient);

  const DiscretizedLengthSpace& inner() const { return inner_; }
  const std::vector<int>& boundary_local() const { return boundary_local_; }
  const std::vector<int>& to_ambient() const { return back_map_; }
  double resolution() const { return inner_.resolution; }
  int size() const { return inner_.size(); }

  // Distances d_W(x, boundary) for every domain vertex.
  const std::vector<double>& boundary_distance() const;

 private:
  DiscretizedLengthSpace inner_;
  std::vector<int> back_map_;
  std::vector<int> boundary_local_;
  mutable std::vector<double> boundary_dist_;  // computed on first use
};

// t-interior: domain vertices with d_W(x, boundary) > t. Indices are local to
// the domain subgraph. May be empty.
std::vector<int> r_interior(const DomainInGraph& domain, double t);

struct UndistortednessEntry {
  double t = 0.0;
  double s = 0.0;          // allowed neighborhood size s(t)
  double reach = 0.0;      // max over W of d_W(x, t-interior)
  bool pass = false;
  int worst_vertex = -1;   // local index; farthest from the interior
  int interior_size = 0;
};

struct UndistortednessCertificate {
  std::vector<UndistortednessEntry> entries;
  bool pass = false;               // all grid values pass
  double tolerance = 0.0;          // additive slack, a multiple of h
  // Present when the certificate passes: the minimal tau >= 1 such that the
  // linear form s(t) = tau * t also passes on the grid (with the same slack).
  std::optional<double> lipschitz_tau;
};

// Checks that every domain vertex lies within s(t) + tol of the t-interior
// (in d_W) for each grid t, where tol = tol_h_multiple * h. Grid values must
// exceed 2h; an empty interior makes that t fail with a witness.
UndistortednessCertificate undistortedness_certificate(
    const DomainInGraph& domain, const std::vector<double>& t_grid,
    const std::function<double(double)>& s_of_t, double tol_h_multiple = 1.0);

// delta-intrinsic metric on a subset Y of an ambient finite metric space:
// shortest chains through Y with steps of ambient length <= delta.
// Errors out (listing components) when the chain graph is disconnected.
FiniteMetricSpace delta_intrinsic_metric(const FiniteMetricSpace& ambient,
                                         std::span<const int> subset,
                                         double delta);

// r-extrinsic metric on a subset X of a graph length space: the length
// metric of the subgraph induced on the open r-neighborhood of X, restricted
// back to X.
FiniteMetricSpace r_extrinsic_metric(const DiscretizedLengthSpace& ambient,
                                     std::span<const int> subset, double r);

}  // namespace ghlab
