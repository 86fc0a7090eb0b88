#pragma once

#include <string>
#include <vector>

#include "ghlab/graph.hpp"
#include "ghlab/invariants.hpp"

namespace ghlab {

// Witness of the worst measured ratio mu(B_r(x)) / mu(B_{r/2}(x)).
struct DoublingWitness {
  int point = -1;
  double radius = 0.0;
  double ratio = 0.0;
};

// (rho, A0)-local doubling certificate over a radius grid in (0, rho].
// A0 is the smallest constant that works on the grid, i.e. the max ratio.
struct LocalDoublingCertificate {
  double rho = 0.0;
  double a0 = 1.0;
  bool pass = false;
  DoublingWitness worst;
  std::vector<double> radius_grid;
};

// mu(B_r(x)) <= A0 * mu(B_{r/2}(x)) for all x and r in the grid; returns the
// minimal feasible A0. Requires a strictly positive measure (counting measure
// is used when the space carries none).
LocalDoublingCertificate local_doubling_check(const DistanceOracle& space,
                                              double rho,
                                              std::vector<double> radius_grid);

// Default grid {rho, rho/2, rho/4}.
LocalDoublingCertificate local_doubling_check(const DistanceOracle& space,
                                              double rho);

struct PropagationResult {
  bool pass = false;
  double max_ratio = 0.0;   // worst mu(B_{rho/2}(q)) / (A0^N * mu(B_{rho/2}(x)))
  int worst_q = -1;
  int ceil_exponent = 0;    // N = ceil(2R/rho)
  double bound_factor = 0;  // A0^N
};

// Two-point measure propagation: mu(B_{rho/2}(q)) <= A0^{ceil(2R/rho)} *
// mu(B_{rho/2}(x)) for every q in the open ball B_R(x). The chain argument
// behind the bound steps along shortest paths at pace rho/2 - h, so the
// resolution must satisfy h <= rho/4.
PropagationResult two_point_propagation_check(const DiscretizedLengthSpace& space,
                                              int x, double R, double rho,
                                              double a0);

struct PackingBoundResult {
  bool pass = false;
  int cap = 0;          // Cap_eps of the closed ball B_{rho/4}(p)
  bool cap_exact = false;
  double bound = 0.0;   // A0^{N+1}
  int exponent = 0;     // N = ceil(1 + log2(rho/eps))
  int ball_size = 0;
};

// Packing bound for a ball: Cap_eps(closed B_{rho/4}(p)) <= A0^{N+1} with
// N = ceil(1 + log2 rho - log2 eps). Exact packing when the ball is within
// `exact_cap`; otherwise certified from above by a greedy eps/2-covering.
// eps below the resolution h is rejected (sub-resolution packing is noise).
PackingBoundResult packing_bound_check(const DiscretizedLengthSpace& space,
                                       int p, double rho, double a0, double eps,
                                       int exact_cap = 2048);

struct GlobalDoublingProfile {
  std::vector<double> radii;
  std::vector<double> a_values;   // A(r), monotone nondecreasing
  std::vector<int> c_values;      // empirical covering counts C(r)
  bool pass = false;
  DoublingWitness worst;
};

// Empirical global doubling function A(r) = C(r) * A0^{ceil(2r/rho)} where
// C(r) is the greedy count of rho/2-balls covering B_r(x), maximized over
// sample points x (all points when sample_stride == 1). A running maximum
// keeps A monotone. The profile is then verified pointwise:
// mu(B_r(x)) <= A(r) * mu(B_{r/2}(x)) for all x and grid r.
GlobalDoublingProfile global_doubling_profile(const DiscretizedLengthSpace& space,
                                              double rho, double a0,
                                              std::vector<double> radii,
                                              int sample_stride = 1);

}  // namespace ghlab
