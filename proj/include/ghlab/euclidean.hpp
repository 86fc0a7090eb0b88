#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ghlab/graph.hpp"

namespace ghlab {

// Regular lattice of inside/outside samples for a Euclidean domain in
// dimension 2 or 3. The membership oracle rounds a query point to the nearest
// lattice cell; queries outside the sampled box are outside the domain.
struct SampleGrid {
  int dim = 2;
  std::array<double, 3> origin{0, 0, 0};
  double spacing = 0.0;
  std::array<int, 3> dims{0, 0, 1};  // dims[2] == 1 in 2D
  std::vector<char> inside;          // x-fastest, then y, then z

  int cell_count() const { return dims[0] * dims[1] * dims[2]; }
  int at(int i, int j, int k = 0) const {
    return (k * dims[1] + j) * dims[0] + i;
  }
  std::array<double, 3> position(int idx) const;
  bool inside_cell(int i, int j, int k = 0) const {
    if (i < 0 || j < 0 || k < 0 || i >= dims[0] || j >= dims[1] || k >= dims[2])
      return false;
    return inside[at(i, j, k)] != 0;
  }
  bool contains(const std::array<double, 3>& p) const;

  // Indices of inside cells in row-major order.
  std::vector<int> inside_cells() const;
};

// Builds a grid by sampling a predicate over a box with the given spacing.
SampleGrid sample_grid_2d(std::function<bool(double, double)> inside_fn,
                          double x0, double y0, double x1, double y1,
                          double spacing);

// CSV rows "x,y[,z],flag"; coordinates must form a regular lattice.
SampleGrid load_sample_grid_csv(const std::string& path);
void save_sample_grid_csv(const SampleGrid& grid, const std::string& path);

// 8-connected (2D) lattice graph over inside cells, with boundary = inside
// cells having an outside 4-neighbor. Edges weighted by Euclidean step.
// back_map receives the cell index per graph vertex.
DiscretizedLengthSpace lattice_space(const SampleGrid& grid,
                                     std::vector<int>* back_map = nullptr,
                                     bool require_connected = false);

struct ConeCheckResult {
  bool pass = false;
  double theta = 0.0;
  double height = 0.0;
  double tau = 0.0;  // 1 / sin(theta), the implied Lipschitz slope
  int tested = 0;
  int failed = 0;
  std::vector<int> failure_cells;  // up to a few witnesses
};

// (theta, H)-cone condition on the sampled domain: every inside sample must
// carry some direction from a fixed grid (64 in 2D, 256 in 3D) whose spherical
// cone of half-angle theta and height H lies inside the domain. The cone is
// probed on 8 radial shells. Errors out when the direction grid cannot
// resolve theta.
ConeCheckResult cone_condition_check(const SampleGrid& grid, double theta,
                                     double height, int directions = 0);

struct JonesPairResult {
  std::array<double, 3> x{}, y{};
  double dist = 0.0;
  bool pass = false;
  double path_length = 0.0;  // 0 when no admissible path exists
};

struct JonesScaleResult {
  double r = 0.0;
  // Every inside cell lies within 450 r of a cell with clearance > r / 1801.
  bool pass = false;
  double worst_reach = 0.0;
};

struct JonesCheckResult {
  bool pass = false;
  double r0 = 0.0;
  int pairs_tested = 0;
  int pairs_failed = 0;
  std::vector<JonesPairResult> failures;  // capped
  std::vector<JonesScaleResult> scales;   // derived covering statements
};

// Jones flatness probe: for sampled inside pairs with |x-y| <= r0/7, look for
// a lattice path of length <= 450 |x-y| staying on cells z with
// clearance(z) >= |z-x||z-y| / (450 |x-y|). Also derives, per tested scale r,
// the covering statement "domain within 450r of the r/1801-deep set".
JonesCheckResult jones_flatness_check(const SampleGrid& grid, double r0,
                                      int pair_budget,
                                      unsigned long long seed = 1);

// Test shapes.
bool sine_curve_domain(double x, double y);  // bounded by sin(1/x), y-axis, y=-2
SampleGrid disk_grid(double radius, double spacing);
SampleGrid square_grid(double side, double spacing);
SampleGrid half_plane_grid(double spacing);
SampleGrid sine_curve_grid(double spacing);
SampleGrid corridor_grid(double corridor_width, double spacing);

}  // namespace ghlab
