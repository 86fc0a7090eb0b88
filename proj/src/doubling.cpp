#include "ghlab/doubling.hpp"

#include <algorithm>
#include <cmath>

namespace ghlab {

namespace {

double oracle_ball_measure(const DistanceOracle& space,
                           const std::vector<double>& dists, double r) {
  double s = 0.0;
  for (int i = 0; i < space.size(); ++i)
    if (in_ball(dists[i], r, BallMode::open)) s += space.vertex_measure(i);
  return s;
}

}  // namespace

LocalDoublingCertificate local_doubling_check(const DistanceOracle& space,
                                              double rho,
                                              std::vector<double> radius_grid) {
  if (!(rho > 0)) throw input_error("local_doubling_check: rho must be > 0");
  if (radius_grid.empty())
    throw input_error("local_doubling_check: empty radius grid");
  for (double r : radius_grid)
    if (!(r > 0) || r > rho + kPointTol)
      throw input_error("local_doubling_check: radius grid must lie in (0, rho]");
  std::sort(radius_grid.begin(), radius_grid.end());

  LocalDoublingCertificate cert;
  cert.rho = rho;
  cert.radius_grid = radius_grid;
  cert.pass = true;
  for (int x = 0; x < space.size(); ++x) {
    auto dists = space.dist_from(x, rho + kPointTol);
    for (double r : radius_grid) {
      const double full = oracle_ball_measure(space, dists, r);
      const double half = oracle_ball_measure(space, dists, r / 2.0);
      if (!(half > 0.0)) {
        cert.pass = false;
        cert.worst = {x, r, kInf};
        return cert;
      }
      const double ratio = full / half;
      if (ratio > cert.a0) {
        cert.a0 = ratio;
        cert.worst = {x, r, ratio};
      }
    }
  }
  return cert;
}

LocalDoublingCertificate local_doubling_check(const DistanceOracle& space,
                                              double rho) {
  return local_doubling_check(space, rho, {rho, rho / 2.0, rho / 4.0});
}

PropagationResult two_point_propagation_check(const DiscretizedLengthSpace& space,
                                              int x, double R, double rho,
                                              double a0) {
  if (x < 0 || x >= space.size())
    throw input_error("two_point_propagation_check: x out of range");
  if (!(R > 0) || !(rho > 0) || !(a0 >= 1.0))
    throw input_error("two_point_propagation_check: need R > 0, rho > 0, A0 >= 1");
  const double h = space.resolution;
  if (h > rho / 4.0 + kPointTol)
    throw computation_error(
        "two_point_propagation_check: resolution h = " + std::to_string(h) +
        " too coarse for the chain step rho/2 - h (need h <= rho/4)");

  PropagationResult out;
  out.ceil_exponent = static_cast<int>(std::ceil(2.0 * R / rho - kPointTol));
  out.bound_factor = std::pow(a0, out.ceil_exponent);

  auto from_x = space.dist_from(x);
  const double mu_x = space.ball_measure(from_x, rho / 2.0);
  if (!(mu_x > 0))
    throw computation_error("two_point_propagation_check: empty base ball");

  out.max_ratio = 0.0;
  for (int q = 0; q < space.size(); ++q) {
    if (!in_ball(from_x[q], R, BallMode::open)) continue;
    auto from_q = space.dist_from(q, rho / 2.0 + kPointTol);
    const double mu_q = space.ball_measure(from_q, rho / 2.0);
    const double ratio = mu_q / (out.bound_factor * mu_x);
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.worst_q = q;
    }
  }
  out.pass = out.max_ratio <= 1.0 + kMetricTol;
  return out;
}

PackingBoundResult packing_bound_check(const DiscretizedLengthSpace& space,
                                       int p, double rho, double a0, double eps,
                                       int exact_cap) {
  if (p < 0 || p >= space.size())
    throw input_error("packing_bound_check: p out of range");
  const double h = space.resolution;
  if (eps < h - kPointTol)
    throw computation_error(
        "packing_bound_check: eps = " + std::to_string(eps) +
        " below resolution h = " + std::to_string(h) +
        "; packing at sub-resolution scale is meaningless");
  if (!(eps < rho / 2.0 + kPointTol))
    throw input_error("packing_bound_check: need eps <= rho/2");

  PackingBoundResult out;
  out.exponent =
      static_cast<int>(std::ceil(1.0 + std::log2(rho) - std::log2(eps) - kPointTol));
  out.bound = std::pow(a0, out.exponent + 1);

  auto from_p = space.dist_from(p, rho);
  auto ball_pts = ball_from_dists(from_p, rho / 4.0, BallMode::closed);
  out.ball_size = static_cast<int>(ball_pts.size());
  if (ball_pts.empty())
    throw computation_error("packing_bound_check: empty ball");

  if (out.ball_size <= exact_cap) {
    auto sub = space.subset_metric(ball_pts, "|B_rho4");
    auto cap = packing_number(sub, eps, SolveMode::exact, exact_cap);
    out.cap = cap.count;
    out.cap_exact = true;
  } else {
    // Cap_eps <= Cov_{eps/2}: a greedy eps/2-cover certifies from above.
    auto sub = space.subset_metric(ball_pts, "|B_rho4");
    auto cov = covering_number(sub, eps / 2.0, SolveMode::greedy, exact_cap);
    out.cap = cov.count;
    out.cap_exact = false;
  }
  out.pass = out.cap <= out.bound + kMetricTol;
  return out;
}

GlobalDoublingProfile global_doubling_profile(const DiscretizedLengthSpace& space,
                                              double rho, double a0,
                                              std::vector<double> radii,
                                              int sample_stride) {
  if (radii.empty()) throw input_error("global_doubling_profile: empty radii");
  if (sample_stride < 1) sample_stride = 1;
  std::sort(radii.begin(), radii.end());

  GlobalDoublingProfile out;
  out.radii = radii;
  out.pass = true;

  // Empirical C(r): greedy count of open rho/2-balls covering the closed
  // ball B_r(x); maximized over the sampled centers.
  const int n = space.size();
  std::vector<int> c_vals(radii.size(), 0);
  for (int x = 0; x < n; x += sample_stride) {
    auto from_x = space.dist_from(x);
    for (size_t ri = 0; ri < radii.size(); ++ri) {
      auto members = ball_from_dists(from_x, radii[ri], BallMode::closed);
      int count = greedy_cover_count_fn(
          members, n, rho / 2.0, [&](int c, double eps, auto&& mark) {
            auto row = space.dist_from(c, eps + kPointTol);
            for (int u = 0; u < n; ++u)
              if (row[u] < kInf) mark(u, row[u]);
          });
      c_vals[ri] = std::max(c_vals[ri], count);
    }
  }
  out.c_values = c_vals;

  out.a_values.resize(radii.size());
  double running = 1.0;
  for (size_t ri = 0; ri < radii.size(); ++ri) {
    const int expo = static_cast<int>(std::ceil(2.0 * radii[ri] / rho - kPointTol));
    running = std::max(running, c_vals[ri] * std::pow(a0, expo));
    out.a_values[ri] = running;
  }

  // Pointwise verification of mu(B_r(x)) <= A(r) mu(B_{r/2}(x)).
  double worst_ratio = 0.0;
  for (int x = 0; x < n; ++x) {
    auto from_x = space.dist_from(x);
    for (size_t ri = 0; ri < radii.size(); ++ri) {
      const double full = space.ball_measure(from_x, radii[ri]);
      const double half = space.ball_measure(from_x, radii[ri] / 2.0);
      if (!(half > 0)) {
        out.pass = false;
        out.worst = {x, radii[ri], kInf};
        return out;
      }
      const double ratio = (full / half) / out.a_values[ri];
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        out.worst = {x, radii[ri], full / half};
      }
    }
  }
  if (worst_ratio > 1.0 + kMetricTol) out.pass = false;
  return out;
}

}  // namespace ghlab
