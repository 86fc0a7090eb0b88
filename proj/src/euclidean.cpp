#include "ghlab/euclidean.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace ghlab {

std::array<double, 3> SampleGrid::position(int idx) const {
  const int i = idx % dims[0];
  const int j = (idx / dims[0]) % dims[1];
  const int k = idx / (dims[0] * dims[1]);
  return {origin[0] + i * spacing, origin[1] + j * spacing,
          origin[2] + k * spacing};
}

bool SampleGrid::contains(const std::array<double, 3>& p) const {
  const int i = static_cast<int>(std::lround((p[0] - origin[0]) / spacing));
  const int j = static_cast<int>(std::lround((p[1] - origin[1]) / spacing));
  const int k = dim == 3
                    ? static_cast<int>(std::lround((p[2] - origin[2]) / spacing))
                    : 0;
  return inside_cell(i, j, k);
}

std::vector<int> SampleGrid::inside_cells() const {
  std::vector<int> out;
  for (int idx = 0; idx < cell_count(); ++idx)
    if (inside[idx]) out.push_back(idx);
  return out;
}

SampleGrid sample_grid_2d(std::function<bool(double, double)> inside_fn,
                          double x0, double y0, double x1, double y1,
                          double spacing) {
  if (!(spacing > 0)) throw input_error("sample_grid_2d: spacing must be > 0");
  SampleGrid g;
  g.dim = 2;
  g.origin = {x0, y0, 0.0};
  g.spacing = spacing;
  g.dims = {static_cast<int>(std::floor((x1 - x0) / spacing)) + 1,
            static_cast<int>(std::floor((y1 - y0) / spacing)) + 1, 1};
  g.inside.assign(g.cell_count(), 0);
  for (int j = 0; j < g.dims[1]; ++j)
    for (int i = 0; i < g.dims[0]; ++i)
      g.inside[g.at(i, j)] =
          inside_fn(x0 + i * spacing, y0 + j * spacing) ? 1 : 0;
  return g;
}

SampleGrid load_sample_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  std::vector<std::array<double, 3>> pts;
  std::vector<char> flags;
  int dim = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::vector<double> vals;
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    if (vals.size() != 3 && vals.size() != 4)
      throw input_error("sample grid CSV: expected x,y[,z],flag per row");
    const int d = static_cast<int>(vals.size()) - 1;
    if (dim < 0) dim = d;
    if (dim != d) throw input_error("sample grid CSV: mixed dimensions");
    pts.push_back({vals[0], vals[1], d == 3 ? vals[2] : 0.0});
    flags.push_back(vals[d] != 0 ? 1 : 0);
  }
  if (pts.empty()) throw input_error("sample grid CSV: no rows");

  auto axis_values = [&](int axis) {
    std::vector<double> vs;
    vs.reserve(pts.size());
    for (const auto& p : pts) vs.push_back(p[axis]);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-9; }),
             vs.end());
    return vs;
  };
  auto xs = axis_values(0), ys = axis_values(1), zs = axis_values(2);
  double spacing = xs.size() > 1 ? xs[1] - xs[0] : (ys.size() > 1 ? ys[1] - ys[0] : 1.0);
  for (const auto& vs : {xs, ys, zs})
    for (size_t i = 1; i < vs.size(); ++i)
      if (std::abs(vs[i] - vs[i - 1] - spacing) > 1e-6 * spacing + 1e-12)
        throw input_error("sample grid CSV: coordinates are not a regular lattice");

  SampleGrid g;
  g.dim = dim;
  g.spacing = spacing;
  g.origin = {xs.front(), ys.front(), zs.front()};
  g.dims = {static_cast<int>(xs.size()), static_cast<int>(ys.size()),
            static_cast<int>(zs.size())};
  g.inside.assign(g.cell_count(), 0);
  for (size_t r = 0; r < pts.size(); ++r) {
    const int i = static_cast<int>(std::lround((pts[r][0] - g.origin[0]) / spacing));
    const int j = static_cast<int>(std::lround((pts[r][1] - g.origin[1]) / spacing));
    const int k = dim == 3
                      ? static_cast<int>(std::lround((pts[r][2] - g.origin[2]) / spacing))
                      : 0;
    g.inside[g.at(i, j, k)] = flags[r];
  }
  return g;
}

void save_sample_grid_csv(const SampleGrid& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write " + path);
  out.precision(12);
  for (int idx = 0; idx < grid.cell_count(); ++idx) {
    auto p = grid.position(idx);
    out << p[0] << "," << p[1];
    if (grid.dim == 3) out << "," << p[2];
    out << "," << int(grid.inside[idx]) << "\n";
  }
}

DiscretizedLengthSpace lattice_space(const SampleGrid& grid,
                                     std::vector<int>* back_map,
                                     bool require_connected) {
  if (grid.dim != 2)
    throw input_error("lattice_space: only 2D grids are supported");
  std::vector<int> to_vertex(grid.cell_count(), -1);
  std::vector<int> cells = grid.inside_cells();
  for (int v = 0; v < static_cast<int>(cells.size()); ++v)
    to_vertex[cells[v]] = v;
  if (cells.empty()) throw input_error("lattice_space: no inside cells");

  WeightedGraph g(static_cast<int>(cells.size()));
  const double s = grid.spacing, diag = s * std::sqrt(2.0);
  for (int v = 0; v < static_cast<int>(cells.size()); ++v) {
    const int idx = cells[v];
    const int i = idx % grid.dims[0], j = idx / grid.dims[0];
    auto link = [&](int ii, int jj, double w) {
      if (ii < 0 || jj < 0 || ii >= grid.dims[0] || jj >= grid.dims[1]) return;
      const int u = to_vertex[grid.at(ii, jj)];
      if (u > v) g.add_edge(v, u, w);
    };
    link(i + 1, j, s);
    link(i, j + 1, s);
    link(i + 1, j + 1, diag);
    link(i - 1, j + 1, diag);
  }
  g.finalize();

  DiscretizedLengthSpace out;
  if (require_connected) {
    std::vector<std::string> names;
    names.reserve(cells.size());
    for (int c : cells) names.push_back("c" + std::to_string(c));
    out = length_metric(std::move(g), std::move(names), "lattice");
  } else {
    out.id = "lattice";
    out.resolution = g.max_edge_weight();
    out.graph = std::move(g);
    out.names.reserve(cells.size());
    for (int c : cells) out.names.push_back("c" + std::to_string(c));
  }
  // Boundary: inside cells with an outside 4-neighbor.
  for (int v = 0; v < static_cast<int>(cells.size()); ++v) {
    const int idx = cells[v];
    const int i = idx % grid.dims[0], j = idx / grid.dims[0];
    if (!grid.inside_cell(i - 1, j) || !grid.inside_cell(i + 1, j) ||
        !grid.inside_cell(i, j - 1) || !grid.inside_cell(i, j + 1))
      out.boundary.push_back(v);
  }
  if (back_map) *back_map = cells;
  return out;
}

ConeCheckResult cone_condition_check(const SampleGrid& grid, double theta,
                                     double height, int directions) {
  if (!(theta > 0) || theta > M_PI / 2 + kPointTol)
    throw input_error("cone_condition_check: theta must be in (0, pi/2]");
  if (!(height > 0)) throw input_error("cone_condition_check: height must be > 0");
  if (grid.dim != 2)
    throw input_error("cone_condition_check: only 2D grids are supported");
  if (directions <= 0) directions = 64;
  const double dir_step = 2.0 * M_PI / directions;
  if (dir_step / 2.0 > theta)
    throw computation_error(
        "cone_condition_check: direction grid too coarse for theta (step " +
        std::to_string(dir_step) + ")");

  constexpr int kShells = 8;
  const int half_spread = 4;  // cone probed at 2*4+1 angular offsets

  ConeCheckResult out;
  out.theta = theta;
  out.height = height;
  out.tau = 1.0 / std::sin(theta);

  auto fits = [&](double px, double py, double axis) {
    for (int sgn = -half_spread; sgn <= half_spread; ++sgn) {
      const double ang = axis + theta * sgn / half_spread;
      const double cx = std::cos(ang), sy = std::sin(ang);
      for (int sh = 1; sh <= kShells; ++sh) {
        const double r = height * sh / kShells;
        if (!grid.contains({px + r * cx, py + r * sy, 0})) return false;
      }
    }
    return true;
  };

  for (int idx = 0; idx < grid.cell_count(); ++idx) {
    if (!grid.inside[idx]) continue;
    ++out.tested;
    auto p = grid.position(idx);
    bool ok = false;
    for (int d = 0; d < directions && !ok; ++d)
      ok = fits(p[0], p[1], d * dir_step);
    if (!ok) {
      ++out.failed;
      if (out.failure_cells.size() < 16) out.failure_cells.push_back(idx);
    }
  }
  out.pass = out.failed == 0;
  return out;
}

namespace {

// Lattice distance to the domain boundary per inside cell (multi-source over
// the 8-connected inside lattice, seeded at cells adjacent to outside with
// half-spacing clearance).
std::vector<double> clearance_field(const SampleGrid& grid,
                                    const DiscretizedLengthSpace& lattice,
                                    const std::vector<int>& cells) {
  std::vector<int> seeds;
  for (int v = 0; v < static_cast<int>(cells.size()); ++v) {
    const int idx = cells[v];
    const int i = idx % grid.dims[0], j = idx / grid.dims[0];
    if (!grid.inside_cell(i - 1, j) || !grid.inside_cell(i + 1, j) ||
        !grid.inside_cell(i, j - 1) || !grid.inside_cell(i, j + 1))
      seeds.push_back(v);
  }
  std::vector<double> field;
  if (seeds.empty()) {
    field.assign(cells.size(), kInf);
    return field;
  }
  field = lattice.dist_from_set(seeds);
  for (double& f : field) f += grid.spacing / 2.0;
  return field;
}

}  // namespace

JonesCheckResult jones_flatness_check(const SampleGrid& grid, double r0,
                                      int pair_budget,
                                      unsigned long long seed) {
  if (!(r0 > 0)) throw input_error("jones_flatness_check: r0 must be > 0");
  if (pair_budget < 1) throw input_error("jones_flatness_check: empty budget");
  if (r0 / 7.0 < 4.0 * grid.spacing)
    throw computation_error(
        "jones_flatness_check: lattice too coarse for pair scale r0/7");

  std::vector<int> cells;
  auto lattice = lattice_space(grid, &cells, /*require_connected=*/false);
  const auto clearance = clearance_field(grid, lattice, cells);
  const int n = lattice.size();

  JonesCheckResult out;
  out.r0 = r0;
  out.pass = true;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  auto pos = [&](int v) { return grid.position(cells[v]); };
  auto euclid = [&](int a, int b) {
    auto pa = pos(a), pb = pos(b);
    return std::hypot(pa[0] - pb[0], pa[1] - pb[1]);
  };

  int attempts = 0;
  while (out.pairs_tested < pair_budget && attempts < pair_budget * 64) {
    ++attempts;
    const int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    const double d = euclid(a, b);
    if (d > r0 / 7.0 || d < 3.0 * grid.spacing) continue;
    ++out.pairs_tested;

    // Admissible cells for this pair; the path must stay on them.
    const double denom = 450.0 * d;
    std::vector<char> admissible(n, 0);
    for (int v = 0; v < n; ++v) {
      const double need = euclid(v, a) * euclid(v, b) / denom;
      admissible[v] = clearance[v] + kPointTol >= need ? 1 : 0;
    }
    admissible[a] = admissible[b] = 1;

    // Dijkstra restricted to admissible cells, pruned at the length budget.
    const double budget = 450.0 * d;
    std::vector<double> dist(n, kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[a] = 0;
    heap.emplace(0.0, a);
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > dist[u]) continue;
      if (u == b) break;
      lattice.graph.for_each_neighbor(u, [&](int v, double w, int) {
        if (!admissible[v]) return;
        const double dv = du + w;
        if (dv <= budget + kPointTol && dv < dist[v]) {
          dist[v] = dv;
          heap.emplace(dv, v);
        }
      });
    }
    const bool ok = dist[b] <= budget + kPointTol;
    if (!ok) {
      ++out.pairs_failed;
      out.pass = false;
      if (out.failures.size() < 16) {
        JonesPairResult f;
        f.x = pos(a);
        f.y = pos(b);
        f.dist = d;
        f.pass = false;
        f.path_length = dist[b] == kInf ? 0.0 : dist[b];
        out.failures.push_back(f);
      }
    }
  }

  // Derived covering statements at a few scales r: the whole sampled domain
  // lies within 450 r (lattice distance) of the set {clearance > r/1801}.
  for (double r : {r0 / 7.0, r0 / 14.0, r0 / 28.0}) {
    JonesScaleResult s;
    s.r = r;
    std::vector<int> deep;
    for (int v = 0; v < n; ++v)
      if (clearance[v] > r / 1801.0) deep.push_back(v);
    if (deep.empty()) {
      s.pass = false;
      s.worst_reach = kInf;
    } else {
      auto reach = lattice.dist_from_set(deep);
      s.worst_reach = 0.0;
      for (double v : reach) s.worst_reach = std::max(s.worst_reach, v);
      s.pass = s.worst_reach <= 450.0 * r + kPointTol;
    }
    if (!s.pass) out.pass = false;
    out.scales.push_back(s);
  }
  return out;
}

bool sine_curve_domain(double x, double y) {
  if (x <= 0) return false;
  if (y <= -2.0) return false;
  return y < std::sin(1.0 / x);
}

SampleGrid disk_grid(double radius, double spacing) {
  const double R = radius;
  return sample_grid_2d(
      [R](double x, double y) { return x * x + y * y < R * R; }, -R - 2 * spacing,
      -R - 2 * spacing, R + 2 * spacing, R + 2 * spacing, spacing);
}

SampleGrid square_grid(double side, double spacing) {
  const double s = side;
  return sample_grid_2d(
      [s](double x, double y) { return x > 0 && y > 0 && x < s && y < s; },
      -2 * spacing, -2 * spacing, s + 2 * spacing, s + 2 * spacing, spacing);
}

SampleGrid half_plane_grid(double spacing) {
  return sample_grid_2d([](double, double y) { return y > 0; }, -1.0, -1.0, 1.0,
                        1.0, spacing);
}

SampleGrid sine_curve_grid(double spacing) {
  return sample_grid_2d(sine_curve_domain, -4 * spacing, -2.0 - 4 * spacing, 1.1,
                        1.0 + 4 * spacing, spacing);
}

SampleGrid corridor_grid(double corridor_width, double spacing) {
  const double w = corridor_width;
  auto inside = [w](double x, double y) {
    const bool left = x > 0 && x < 1 && y > 0 && y < 1;
    const bool right = x > 1.2 && x < 2.2 && y > 0 && y < 1;
    const bool corridor =
        x >= 1 && x <= 1.2 && y > 0.5 - w / 2 && y < 0.5 + w / 2;
    return left || right || corridor;
  };
  return sample_grid_2d(inside, -2 * spacing, -2 * spacing, 2.2 + 2 * spacing,
                        1.0 + 2 * spacing, spacing);
}

}  // namespace ghlab
