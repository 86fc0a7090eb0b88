#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ghlab/graph.hpp"

namespace ghlab {

// An edge-glued triangle complex describing a piecewise-flat or
// piecewise-spherical surface. Gluings are applied at construction time:
// identified vertices share one index, so the complex is stored already
// glued. Positions are reference coordinates of one chart representative;
// the metric lives entirely in the edge lengths.
struct SurfaceComplex {
  std::string id;
  std::vector<std::array<double, 3>> pos;
  std::vector<std::array<int, 3>> faces;
  std::map<std::string, int> marked;  // named vertices (center, cone points)

  int vertex_count() const { return static_cast<int>(pos.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }

  // Length space of the 1-skeleton (edges = union of face edges, weighted by
  // their stored lengths). Base point = marked "o" when present.
  DiscretizedLengthSpace to_length_space() const;

  // Edge lengths keyed by vertex pair (u < v), deduped across faces.
  std::map<std::pair<int, int>, double> edge_lengths;
};

struct ComplexCheck {
  bool pass = true;
  std::string message;
  int boundary_edges = 0;   // edges on exactly one face
  int interior_edges = 0;   // edges on exactly two faces
  bool closed() const { return boundary_edges == 0; }
};

// Verifies that every edge lies on at most two faces, faces are
// non-degenerate, and glued edge lengths agree.
ComplexCheck validate_complex(const SurfaceComplex& cx);

// Real projective plane as a regular 2k-gon with opposite sides glued in
// reversed direction (boundary point identified with its antipode). The
// center o_k is at distance exactly 1 from each side and 1/cos(pi/2k) from
// each vertex class. Triangulated at resolution <= mesh_h on a polar mesh
// whose direction set contains every side midpoint and corner, so those
// distances are met exactly by radial paths. Marked: "o", "side0", "corner0".
SurfaceComplex build_polygon_rp2(int k, double mesh_h);

// Quarter-sphere (half of the northern hemisphere) with its two boundary
// great arcs glued by arc length, p and p* fixed: a sphere-like surface with
// cone angle pi/2 at p and p*. Marked: "o" (midpoint of the glued arc),
// "p", "pstar". `pole_clearance` sets the innermost mesh row radius around
// the cone points (the resolvable detour-circle scale).
SurfaceComplex build_glued_sphere(double mesh_h, double pole_clearance);

// Flat torus of side lengths a x b on an even grid (even counts keep the
// antipodal point representable, so balls of radius below the diameter stay
// bordered). Marked: "o" at the origin vertex.
SurfaceComplex build_flat_torus(double a, double b, double mesh_h);

}  // namespace ghlab
