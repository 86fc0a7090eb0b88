#include "ghlab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace ghlab {

int FiniteMetricSpace::index_of(const std::string& point_id) const {
  for (int i = 0; i < size(); ++i)
    if (points[i] == point_id) return i;
  return -1;
}

double FiniteMetricSpace::diameter() const {
  double m = 0.0;
  for (double v : dist) m = std::max(m, v);
  return m;
}

double FiniteMetricSpace::measure_total() const {
  double s = 0.0;
  for (double v : measure) s += v;
  return s;
}

MetricCheck validate_metric(const FiniteMetricSpace& space, double tol) {
  const int n = space.size();
  MetricCheck out;
  if (space.dist.size() != static_cast<size_t>(n) * n)
    throw input_error("distance table size " + std::to_string(space.dist.size()) +
                      " does not match point count " + std::to_string(n));
  if (!space.measure.empty() && space.measure.size() != static_cast<size_t>(n))
    throw input_error("measure size does not match point count");

  for (int i = 0; i < n; ++i) {
    if (std::abs(space.d(i, i)) > tol) {
      out.pass = false;
      out.message = "nonzero self-distance at " + space.points[i];
      out.x = out.y = out.z = i;
      return out;
    }
    for (int j = i + 1; j < n; ++j) {
      if (space.d(i, j) < -tol) {
        out.pass = false;
        out.message = "negative distance " + space.points[i] + "," + space.points[j];
        out.x = i;
        out.z = j;
        return out;
      }
      if (std::abs(space.d(i, j) - space.d(j, i)) > tol) {
        out.pass = false;
        out.message = "asymmetric pair " + space.points[i] + "," + space.points[j];
        out.x = i;
        out.z = j;
        return out;
      }
    }
  }
  // Worst triple over all (x,y,z): d(x,z) - d(x,y) - d(y,z).
  double worst = 0.0;
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z) {
      if (x == z) continue;
      const double dxz = space.d(x, z);
      for (int y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        const double v = dxz - space.d(x, y) - space.d(y, z);
        if (v > worst) {
          worst = v;
          out.x = x;
          out.y = y;
          out.z = z;
        }
      }
    }
  if (worst > tol) {
    out.pass = false;
    out.violation = worst;
    out.message = "triangle inequality violated: d(" + space.points[out.x] + "," +
                  space.points[out.z] + ") exceeds the path through " +
                  space.points[out.y] + " by " + std::to_string(worst);
    return out;
  }
  for (int i = 0; i < n && space.has_measure(); ++i) {
    if (!(space.measure[i] > 0.0)) {
      out.pass = false;
      out.message = "nonpositive measure at " + space.points[i];
      out.x = i;
      return out;
    }
  }
  return out;
}

FiniteMetricSpace euclidean_space(std::string id,
                                  const std::vector<std::vector<double>>& coords) {
  FiniteMetricSpace s;
  s.id = std::move(id);
  const int n = static_cast<int>(coords.size());
  s.points.reserve(n);
  for (int i = 0; i < n; ++i) s.points.push_back("p" + std::to_string(i));
  s.dist.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (size_t c = 0; c < coords[i].size(); ++c) {
        const double dv = coords[i][c] - coords[j][c];
        acc += dv * dv;
      }
      const double dij = std::sqrt(acc);
      s.dref(i, j) = dij;
      s.dref(j, i) = dij;
    }
  return s;
}

FiniteMetricSpace restrict(const FiniteMetricSpace& space,
                           std::span<const int> subset) {
  if (subset.empty()) throw input_error("restrict: empty subset");
  std::set<int> seen;
  for (int v : subset) {
    if (v < 0 || v >= space.size())
      throw input_error("restrict: index out of range");
    if (!seen.insert(v).second) throw input_error("restrict: duplicate index");
  }
  FiniteMetricSpace out;
  out.id = space.id + "|restricted";
  const int m = static_cast<int>(subset.size());
  out.points.reserve(m);
  for (int v : subset) out.points.push_back(space.points[v]);
  out.dist.assign(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out.dref(i, j) = space.d(subset[i], subset[j]);
  if (space.basepoint) {
    for (int i = 0; i < m; ++i)
      if (subset[i] == *space.basepoint) out.basepoint = i;
  }
  if (space.has_measure()) {
    out.measure.reserve(m);
    for (int v : subset) out.measure.push_back(space.measure[v]);
  }
  if (!space.boundary.empty()) {
    for (int i = 0; i < m; ++i)
      if (std::binary_search(space.boundary.begin(), space.boundary.end(),
                             subset[i]))
        out.boundary.push_back(i);
  }
  return out;
}

std::vector<int> ball(const FiniteMetricSpace& space, int center, double r,
                      BallMode mode) {
  if (center < 0 || center >= space.size())
    throw input_error("ball: center out of range");
  if (r < 0) throw input_error("ball: negative radius");
  std::vector<int> out;
  for (int i = 0; i < space.size(); ++i)
    if (in_ball(space.d(center, i), r, mode)) out.push_back(i);
  return out;
}

std::vector<int> ball_from_dists(const std::vector<double>& dists, double r,
                                 BallMode mode) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(dists.size()); ++i)
    if (in_ball(dists[i], r, mode)) out.push_back(i);
  return out;
}

FiniteMetricSpace random_euclidean_space(std::string id, int n,
                                         unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<std::vector<double>> coords(n);
  for (auto& c : coords) c = {uni(rng), uni(rng)};
  FiniteMetricSpace s = euclidean_space(std::move(id), coords);
  return s;
}

}  // namespace ghlab
