#pragma once
// Bridge between the labeled triangle data and the historically named
// invariants and laws of the complex projective / complex hyperbolic plane
// (label triples (1; +-1, 1) only): vertex angle conversions, the classical
// sine and cosine theorems, sectional curvature, and the shape invariant.
#include <string>
#include <string_view>
#include <vector>

#include "ckd/group.hpp"
#include "ckd/laws.hpp"
#include "ckd/scalars.hpp"
#include "ckd/triangle.hpp"

namespace ckd {

// ---------------------------------------------------------------------------
// Vertex angular invariants
// ---------------------------------------------------------------------------

// The five classical angular invariants of a pair of unit tangent vectors
// u, v at one vertex.  Ranges: C in [0, pi/2], psi in (-pi, pi],
// fs_angle in [0, pi], incl in [0, pi], theta in [-pi/2, pi/2].
struct VertexAngles {
  double C = 0.0;         // hermitian angle: arccos |<u,v>|
  double psi = 0.0;       // pseudoangle (Kasner angle): arg <u,v>
  double fs_angle = 0.0;  // riemannian angle: arccos Re <u,v>
  double incl = 0.0;      // holomorphy (Kaehler) inclination of span{u, v}
  double theta = 0.0;     // minimal-angle companion: arcsin Im <u,v>
};

// Completes (C, psi) to the full set of vertex invariants.  The outputs
// satisfy, to machine precision,
//   cos fs_angle = cos C cos psi        cos incl sin fs_angle = cos C sin psi
//   sin C = sin fs_angle sin incl       sin theta = sin fs_angle cos incl
//   cos^2 C = cos^2 fs_angle + sin^2 fs_angle cos^2 incl
//   sin^2 fs_angle = sin^2 C + sin^2 theta.
// Throws errc::indeterminate when sin fs_angle vanishes (u, v parallel in
// the riemannian sense), where the inclination has no defined value.
VertexAngles convert_vertex(double C, double psi, double tol = default_tol());

// Vertex invariants of triangle vertex m (0 -> A, 1 -> B, 2 -> C) from the
// solved angle and angular phase.  Labels must be (1; +-1, 1).
// Throws errc::unsupported_labels, errc::indeterminate.
VertexAngles vertex_angles(const TriangleData& t, int m,
                           double tol = default_tol());

// Sectional curvature of the plane section with the given holomorphy
// inclination; sign +1 selects the projective family (range [1, 4]) and
// -1 the hyperbolic one (range [-4, -1]).
double sectional_curvature(double incl, int sign);

// ---------------------------------------------------------------------------
// Classical law evaluation
// ---------------------------------------------------------------------------

// One named classical law (or one vertex instance of it) with the same
// entry shape the general law reports use.
struct ClassicalReport {
  std::vector<std::pair<std::string, LawEntry>> entries;

  double max_residual() const;
  int pass_count() const;
  int fail_count() const;
  bool all_pass() const;
  const LawEntry* find(std::string_view id) const;
};

// Evaluates the classical law catalogue on a solved triangle with labels
// (1; +-1, 1): the ratio-form sine theorem, the two sine and two cosine
// theorems in riemannian-angle/inclination variables, the squared-cosine
// pair in angle/sector variables, and the three-equation set in
// mixed variables (curvature-matched forms for either sign).  Entries whose
// vertex inclination is indeterminate are reported inapplicable.
// Throws errc::unsupported_labels.
ClassicalReport check_classical(const TriangleData& t,
                                double tol = default_tol());

// ---------------------------------------------------------------------------
// Shape invariant
// ---------------------------------------------------------------------------

// The real triangle invariant completing sides to a full congruence set:
//   +cos a cos b cos c cos(omega)   for labels (1; +1, 1),
//   -cosh a cosh b cosh c cos(omega) for labels (1; -1, 1).
// Throws errc::unsupported_labels.
double shape_invariant(const TriangleData& t);

// The same invariant from three vertex rays: the real part of the cyclic
// triple product of pairwise vertex pairings, taken in the signature whose
// self-pairing convention matches the curvature sign.
// Throws errc::unsupported_labels, errc::cut_locus, errc::non_finite.
double shape_invariant(const Ray& zA, const Ray& zB, const Ray& zC,
                       const SpaceLabels& labels, double tol = default_tol());

}  // namespace ckd
