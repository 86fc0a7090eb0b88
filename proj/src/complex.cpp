#include "ghlab/complex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ghlab {

namespace {

double euclid(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) +
                   (a[1] - b[1]) * (a[1] - b[1]) +
                   (a[2] - b[2]) * (a[2] - b[2]));
}

// Great-circle distance on the unit sphere, stable near 0 and pi.
double spherical(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  const double cx = a[1] * b[2] - a[2] * b[1];
  const double cy = a[2] * b[0] - a[0] * b[2];
  const double cz = a[0] * b[1] - a[1] * b[0];
  return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
}

void add_face(SurfaceComplex& cx, int a, int b, int c,
              const std::function<double(int, int)>& length) {
  if (a == b || b == c || a == c)
    throw computation_error("degenerate face in mesh construction");
  cx.faces.push_back({a, b, c});
  for (auto [u, v] : {std::pair{a, b}, std::pair{b, c}, std::pair{a, c}}) {
    if (u > v) std::swap(u, v);
    auto it = cx.edge_lengths.find({u, v});
    const double w = length(u, v);
    if (it == cx.edge_lengths.end()) {
      cx.edge_lengths.emplace(std::pair{u, v}, w);
    } else if (std::abs(it->second - w) > 1e-9) {
      throw computation_error("glued edges of unequal length: " +
                              std::to_string(it->second) + " vs " +
                              std::to_string(w));
    }
  }
}

}  // namespace

DiscretizedLengthSpace SurfaceComplex::to_length_space() const {
  WeightedGraph g(vertex_count());
  for (const auto& [uv, w] : edge_lengths) g.add_edge(uv.first, uv.second, w);
  g.finalize();
  std::vector<std::string> names;
  names.reserve(vertex_count());
  for (int i = 0; i < vertex_count(); ++i) names.push_back("v" + std::to_string(i));
  auto s = length_metric(std::move(g), std::move(names), id);
  auto it = marked.find("o");
  if (it != marked.end()) s.basepoint = it->second;
  return s;
}

ComplexCheck validate_complex(const SurfaceComplex& cx) {
  ComplexCheck out;
  std::map<std::pair<int, int>, int> face_count;
  for (const auto& f : cx.faces) {
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
      out.pass = false;
      out.message = "degenerate face";
      return out;
    }
    for (auto [u, v] : {std::pair{f[0], f[1]}, std::pair{f[1], f[2]},
                        std::pair{f[0], f[2]}}) {
      if (u > v) std::swap(u, v);
      ++face_count[{u, v}];
    }
  }
  for (const auto& [uv, c] : face_count) {
    if (c > 2) {
      out.pass = false;
      out.message = "edge on more than two faces: " +
                    std::to_string(uv.first) + "-" + std::to_string(uv.second);
      return out;
    }
    if (c == 1)
      ++out.boundary_edges;
    else
      ++out.interior_edges;
    if (!cx.edge_lengths.count(uv)) {
      out.pass = false;
      out.message = "face edge missing a length";
      return out;
    }
  }
  return out;
}

SurfaceComplex build_polygon_rp2(int k, double mesh_h) {
  if (k < 2) throw input_error("build_polygon_rp2: k must be >= 2");
  if (!(mesh_h > 0) || mesh_h > 0.05 + kPointTol)
    throw input_error("build_polygon_rp2: mesh_h must be in (0, 0.05]");

  const double beta = M_PI / (2 * k);
  const double r_circ = 1.0 / std::cos(beta);
  const double step = mesh_h / std::sqrt(2.0);

  // Direction grid: c subdivisions per corner sector; even c keeps side
  // midpoints on the grid, and 2k*c directions keep the antipodal map a
  // shift by k*c. Every corner and side midpoint is a grid direction, so
  // radial mesh paths realize the center-to-side and center-to-corner
  // distances exactly.
  int c = static_cast<int>(std::ceil(2.0 * beta * r_circ / step));
  if (c % 2) ++c;
  const int m_total = 2 * k * c;
  const double dtheta = 2.0 * beta / c;

  // Per-direction boundary radius and uniform radial subdivision.
  std::vector<double> radius(m_total), delta(m_total);
  std::vector<int> rungs(m_total);
  for (int m = 0; m < m_total; ++m) {
    const int sector = m / c;
    const double offset = (m - sector * c) * dtheta - beta;
    radius[m] = 1.0 / std::cos(offset);
    rungs[m] = std::max(2, static_cast<int>(std::ceil(radius[m] / step - kPointTol)));
    delta[m] = radius[m] / rungs[m];
  }

  // Raw vertex ids: 0 = center, then per direction m its rungs j = 1..J_m.
  std::vector<int> first_id(m_total + 1);
  first_id[0] = 1;
  for (int m = 0; m < m_total; ++m) first_id[m + 1] = first_id[m] + rungs[m];
  const int raw_count = first_id[m_total];
  auto vid = [&](int m, int j) { return j == 0 ? 0 : first_id[m] + (j - 1); };

  std::vector<std::array<double, 3>> raw_pos(raw_count);
  raw_pos[0] = {0, 0, 0};
  for (int m = 0; m < m_total; ++m) {
    const double ct = std::cos(m * dtheta), st = std::sin(m * dtheta);
    for (int j = 1; j <= rungs[m]; ++j)
      raw_pos[vid(m, j)] = {j * delta[m] * ct, j * delta[m] * st, 0};
  }

  // Opposite-side reversed gluing = antipodal identification of the boundary
  // polyline: boundary vertex of direction m merges with direction m + k*c.
  std::vector<int> canon(raw_count);
  for (int i = 0; i < raw_count; ++i) canon[i] = i;
  for (int m = 0; m < m_total; ++m) {
    const int partner = (m + k * c) % m_total;
    if (partner < m) canon[vid(m, rungs[m])] = vid(partner, rungs[partner]);
  }
  std::vector<int> compact(raw_count, -1);
  int n = 0;
  for (int i = 0; i < raw_count; ++i)
    if (canon[i] == i) compact[i] = n++;
  auto final_id = [&](int raw) { return compact[canon[raw]]; };

  SurfaceComplex cx;
  cx.id = "rp2_k" + std::to_string(k);
  cx.pos.resize(n);
  for (int i = 0; i < raw_count; ++i)
    if (canon[i] == i) cx.pos[compact[i]] = raw_pos[i];

  // Lengths come from the raw chart positions so glued copies agree.
  std::vector<std::array<double, 3>>& P = raw_pos;
  auto emit = [&](int ra, int rb, int rc) {
    const int a = final_id(ra), b = final_id(rb), c2 = final_id(rc);
    // Length lookup must use the raw endpoints of *this* face copy.
    auto len = [&](int u, int v) -> double {
      auto pick = [&](int fin) {
        if (fin == a) return ra;
        if (fin == b) return rb;
        return rc;
      };
      return euclid(P[pick(u)], P[pick(v)]);
    };
    add_face(cx, a, b, c2, len);
  };

  // Ladder triangulation of each strip between consecutive directions.
  for (int m = 0; m < m_total; ++m) {
    const int m1 = (m + 1) % m_total;
    int a = 1, b = 1;
    emit(vid(m, 0), vid(m, 1), vid(m1, 1));
    while (a < rungs[m] || b < rungs[m1]) {
      const bool advance_a =
          b == rungs[m1] ||
          (a < rungs[m] && (a + 1) * delta[m] <= (b + 1) * delta[m1] + kPointTol);
      if (advance_a) {
        emit(vid(m, a), vid(m, a + 1), vid(m1, b));
        ++a;
      } else {
        emit(vid(m1, b), vid(m1, b + 1), vid(m, a));
        ++b;
      }
    }
  }

  cx.marked["o"] = final_id(0);
  cx.marked["side0"] = final_id(vid(c / 2, rungs[c / 2]));
  cx.marked["corner0"] = final_id(vid(0, rungs[0]));
  return cx;
}

SurfaceComplex build_glued_sphere(double mesh_h, double pole_clearance) {
  if (!(mesh_h > 0) || mesh_h > 0.05 + kPointTol)
    throw input_error("build_glued_sphere: mesh_h must be in (0, 0.05]");
  if (!(pole_clearance > 0) || pole_clearance > M_PI / 4)
    throw input_error("build_glued_sphere: pole_clearance out of range");

  const double step = mesh_h / std::sqrt(2.0);
  const double s = pole_clearance;
  const int n_half = static_cast<int>(std::ceil((M_PI / 2 - s) / step));
  const double dt = (M_PI / 2 - s) / n_half;
  const int n_rows = 2 * n_half + 1;  // t = s .. pi - s, row n_half at pi/2
  int n_psi = static_cast<int>(std::ceil((M_PI / 2) / step));
  const double dpsi = (M_PI / 2) / n_psi;

  // The chart is the quarter sphere t in [0,pi], psi in [0, pi/2]; gluing
  // identifies psi = 0 with psi = pi/2, so columns live modulo n_psi.
  SurfaceComplex cx;
  cx.id = "glued_sphere";
  const int pole_p = 0, pole_q = 1;
  auto row_t = [&](int i) {
    return i <= n_half ? s + i * dt : M_PI - (s + (n_rows - 1 - i) * dt);
  };
  auto grid_id = [&](int i, int j) { return 2 + i * n_psi + ((j % n_psi + n_psi) % n_psi); };
  cx.pos.resize(2 + n_rows * n_psi);
  cx.pos[pole_p] = {1, 0, 0};
  cx.pos[pole_q] = {-1, 0, 0};
  for (int i = 0; i < n_rows; ++i) {
    const double t = row_t(i);
    for (int j = 0; j < n_psi; ++j) {
      const double psi = j * dpsi;
      cx.pos[grid_id(i, j)] = {std::cos(t), std::sin(t) * std::cos(psi),
                               std::sin(t) * std::sin(psi)};
    }
  }

  // Meridian (same-column) edges get their exact arc length |dt| so paths
  // along the glued arc sum exactly. Edges crossing the glued seam (column
  // n_psi-1 to column 0) must measure through the seam, i.e. with the
  // psi = pi/2 representative of column 0, not the long way around the
  // chart. Everything else uses the spherical formula on chart positions.
  auto point = [&](int i, double psi) -> std::array<double, 3> {
    const double t = row_t(i);
    return {std::cos(t), std::sin(t) * std::cos(psi), std::sin(t) * std::sin(psi)};
  };
  auto len = [&](int u, int v) -> double {
    if (u > v) std::swap(u, v);
    if (u == pole_p || u == pole_q) return s;
    const int iu = (u - 2) / n_psi, ju = (u - 2) % n_psi;
    const int iv = (v - 2) / n_psi, jv = (v - 2) % n_psi;
    if (ju == jv && std::abs(iu - iv) == 1) return dt;
    const bool wrap = std::abs(ju - jv) == n_psi - 1;
    double psi_u = ju * dpsi, psi_v = jv * dpsi;
    if (wrap) {
      if (ju == 0)
        psi_u = M_PI / 2;
      else
        psi_v = M_PI / 2;
    }
    return spherical(point(iu, psi_u), point(iv, psi_v));
  };

  for (int j = 0; j < n_psi; ++j) {
    add_face(cx, pole_p, grid_id(0, j), grid_id(0, j + 1), len);
    add_face(cx, pole_q, grid_id(n_rows - 1, j), grid_id(n_rows - 1, j + 1), len);
  }
  for (int i = 0; i + 1 < n_rows; ++i)
    for (int j = 0; j < n_psi; ++j) {
      add_face(cx, grid_id(i, j), grid_id(i + 1, j), grid_id(i + 1, j + 1), len);
      add_face(cx, grid_id(i, j), grid_id(i + 1, j + 1), grid_id(i, j + 1), len);
    }

  cx.marked["o"] = grid_id(n_half, 0);
  cx.marked["p"] = pole_p;
  cx.marked["pstar"] = pole_q;
  return cx;
}

SurfaceComplex build_flat_torus(double a, double b, double mesh_h) {
  if (!(a > 0) || !(b > 0) || !(mesh_h > 0))
    throw input_error("build_flat_torus: positive sides and mesh_h required");
  const double step = mesh_h / std::sqrt(2.0);
  auto even_count = [&](double side) {
    int n = static_cast<int>(std::ceil(side / step));
    if (n % 2) ++n;
    return std::max(n, 4);
  };
  const int nx = even_count(a), ny = even_count(b);
  const double dx = a / nx, dy = b / ny;

  SurfaceComplex cx;
  cx.id = "torus";
  cx.pos.resize(nx * ny);
  auto at = [&](int i, int j) {
    return ((j % ny + ny) % ny) * nx + ((i % nx + nx) % nx);
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) cx.pos[at(i, j)] = {i * dx, j * dy, 0};

  const double diag = std::sqrt(dx * dx + dy * dy);
  auto len = [&](int u, int v) -> double {
    const int iu = u % nx, ju = u / nx, iv = v % nx, jv = v / nx;
    const int di = std::abs(iu - iv), dj = std::abs(ju - jv);
    const bool wrap_i = di == nx - 1, wrap_j = dj == ny - 1;
    const int ei = wrap_i ? 1 : di, ej = wrap_j ? 1 : dj;
    if (ei == 1 && ej == 0) return dx;
    if (ei == 0 && ej == 1) return dy;
    if (ei == 1 && ej == 1) return diag;
    throw computation_error("torus edge between non-adjacent vertices");
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      add_face(cx, at(i, j), at(i + 1, j), at(i + 1, j + 1), len);
      add_face(cx, at(i, j), at(i + 1, j + 1), at(i, j + 1), len);
    }
  cx.marked["o"] = at(0, 0);
  return cx;
}

}  // namespace ghlab
