#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghlab/common.hpp"

namespace ghlab {

// A finite metric space given by an explicit symmetric distance table.
// Point ids are opaque strings; the table row order equals the order of
// `points`. Optional decorations: a base point, a strictly positive measure
// (one weight per point), and a designated boundary subset.
struct FiniteMetricSpace {
  std::string id;
  std::vector<std::string> points;
  std::vector<double> dist;  // row-major, points.size()^2
  std::optional<int> basepoint;
  std::vector<double> measure;  // empty = no measure
  std::vector<int> boundary;    // sorted indices; empty = none

  int size() const { return static_cast<int>(points.size()); }

  double d(int i, int j) const { return dist[static_cast<size_t>(i) * points.size() + j]; }
  double& dref(int i, int j) { return dist[static_cast<size_t>(i) * points.size() + j]; }

  bool has_measure() const { return !measure.empty(); }

  // -1 when the id is not present.
  int index_of(const std::string& point_id) const;

  double diameter() const;
  double measure_total() const;
};

enum class BallMode { open, closed };

struct MetricCheck {
  bool pass = true;
  std::string message;
  // Worst triangle-inequality triple (x,z via y), meaningful when !pass and
  // the failure is a triangle violation.
  int x = -1, y = -1, z = -1;
  double violation = 0.0;
};

// Checks symmetry, zero diagonal, nonnegativity and the triangle inequality
// (up to kMetricTol); reports the triple maximizing
// d(x,z) - d(x,y) - d(y,z) when it is positive beyond tolerance.
// Also validates measure positivity when a measure is present.
MetricCheck validate_metric(const FiniteMetricSpace& space,
                            double tol = kMetricTol);

// Builds a FiniteMetricSpace from points at generic positions with the
// Euclidean metric. Used by generators and tests.
FiniteMetricSpace euclidean_space(std::string id,
                                  const std::vector<std::vector<double>>& coords);

// Restriction to a subset: the distance table is the restriction of the
// ambient table; base point kept iff it lies in the subset; measure and
// boundary are restricted likewise. Indices must be distinct and nonempty.
FiniteMetricSpace restrict(const FiniteMetricSpace& space,
                           std::span<const int> subset);

// Open or closed metric ball around `center`. Closed balls include points at
// distance <= r + kPointTol; open balls require distance < r - kPointTol so
// that points at analytic distance exactly r stay out under roundoff.
std::vector<int> ball(const FiniteMetricSpace& space, int center, double r,
                      BallMode mode);

// Same membership rule applied to a precomputed distance row.
std::vector<int> ball_from_dists(const std::vector<double>& dists, double r,
                                 BallMode mode);

inline bool in_ball(double dist_value, double r, BallMode mode) {
  return mode == BallMode::open ? dist_value < r - kPointTol
                                : dist_value <= r + kPointTol;
}

// Deterministic seeded generator: n points uniform in the unit square with
// the Euclidean metric. Always a valid metric space.
FiniteMetricSpace random_euclidean_space(std::string id, int n,
                                         unsigned long long seed);

}  // namespace ghlab
