#pragma once

#include <array>

#include "ckd/group.hpp"

namespace ckd {

// The twelve invariants of a Hermitian triangle: three sides (label kappa1),
// three lateral phases (label eta), three angles (label kappa2) and three
// angular phases (label eta).  A valid instance satisfies the Cartan-sector
// relations and the twelve-factor closure identity within tolerance.
struct TriangleData {
  SpaceLabels labels;
  double a = 0.0, b = 0.0, c = 0.0;
  double phi_a = 0.0, phi_b = 0.0, phi_c = 0.0;
  double A = 0.0, B = 0.0, C = 0.0;
  double psi_A = 0.0, psi_B = 0.0, psi_C = 0.0;
};

// Signed cyclic embedding: index 0 carries the minus signs,
// x = (-a, b, c), X = (-A, B, C), phi = (-phi_a, phi_b, phi_c),
// psi = (-psi_A, psi_B, psi_C).  All cyclic law evaluations use this form.
struct CompactTriangle {
  SpaceLabels labels;
  std::array<double, 3> x{}, X{}, phi{}, psi{};
};

CompactTriangle compact(const TriangleData& t);

enum class InvariantStatus { finite, infinite, indeterminate };

// Scalar invariants computed from a triangle: mixed phase excesses, pure and
// phase excesses, symplectic area/coarea, renormalized Gramm determinants and
// the three symmetric quotient invariants (which may degenerate).
struct DerivedInvariants {
  double omega = 0.0, Omega = 0.0;
  double Delta = 0.0, delta = 0.0;
  double Delta_psi = 0.0, delta_phi = 0.0;
  double S = 0.0, s = 0.0;
  double gamma = 0.0, Gamma = 0.0;
  double tau = 0.0, xi = 0.0, Xi = 0.0;
  InvariantStatus tau_status = InvariantStatus::finite;
  InvariantStatus xi_status = InvariantStatus::finite;
  InvariantStatus Xi_status = InvariantStatus::finite;
};

// Margins of the four triangle existence inequalities; entries that do not
// apply for the given labels (zero curvature label, vanishing denominator)
// are reported as NaN and do not affect `pass`.
struct ExistenceReport {
  double margin_gramm = 0.0;       // gamma / kappa2
  double margin_gramm_dual = 0.0;  // Gamma / kappa1
  double margin_phase = 0.0;       // -S_{eta*k2^2}(2s) / prod_I S_eta(psi_I)
  double margin_phase_dual = 0.0;  // -S_{eta*k1^2}(2S) / prod_i S_eta(phi_i)
  bool pass = true;
};

enum class TriangleClass { generic, collinear, concurrent, purely_real };

const char* triangle_class_name(TriangleClass c);

// Output of the vertex-ray path (unit-eta labels with unit second curvature
// label only): side lengths, the triple-product phase invariant and shape
// invariant, squared angle cosines, and the gauge-dependent pair phases.
struct VertexPathResult {
  double a = 0.0, b = 0.0, c = 0.0;
  double omega = 0.0;
  double sigma = 0.0;
  double cos2_A = 0.0, cos2_B = 0.0, cos2_C = 0.0;
  double eps_a = 0.0, eps_b = 0.0, eps_c = 0.0;
};

// Constructs the full triangle from two complete sides and the complete
// included angle by factoring the six-factor group word
//   e^{-b P1} e^{-phi_b T1} e^{-C J} e^{-psi_C I} e^{a P1} e^{phi_a T1}
// into e^{-A J} e^{-psi_A I} e^{c P1} e^{phi_c T1} e^{B J} e^{psi_B I}.
// The factorization exists only when (phi_a, phi_b) are the lateral phases
// induced by (a, b, C, psi_C) up to half-period shifts; see lateral_phases.
// Throws: degenerate_triangle, no_real_argument, residual_too_large,
// non_finite.
TriangleData solve(double a, double phi_a, double b, double phi_b, double C,
                   double psi_C, const SpaceLabels& labels,
                   double tol = default_tol());

// The lateral phases {phi_a, phi_b} induced by two side moduli and the
// included complete angle.  A triangle has four free moduli (a, b, C, psi_C);
// the lateral phases of its two given sides are then fixed (up to the
// half-period flip absorbed by sign branches) by the requirement that the
// six-factor right product stays factorable:
//   phi_a =  arg( S_k1(a) C_k1(b) e^{i psi_C} - S_k1(b) C_k1(a) C_k2(C) )
//   phi_b = -arg( S_k1(b) C_k1(a) e^{i psi_C} - S_k1(a) C_k1(b) C_k2(C) )
// evaluated in the ring with label eta.  For periodic phase rings (eta > 0)
// the residual half-period flips are resolved by trial factorization: the
// returned representatives are the ones whose solved triangle aligns the
// Cartan sector.  Throws no_real_argument when a bracket has no positive
// ring modulus or no representative aligns (configuration not realizable)
// and degenerate_triangle when a bracket vanishes.
std::array<double, 2> lateral_phases(double a, double b, double C,
                                     double psi_C, const SpaceLabels& labels,
                                     double tol = default_tol());

DerivedInvariants derived(const TriangleData& t);

ExistenceReport existence_check(const TriangleData& t,
                                double tol = default_tol());

TriangleClass classify_special(const TriangleData& t,
                               double tol = default_tol());

// Sides<->angles, lateral<->angular phases, kappa1<->kappa2.  Involutive.
TriangleData dual_triangle(const TriangleData& t);

// Recovers sides, the triple-product invariants and squared angle cosines
// from three vertex rays.  a spans (zB,zC), b spans (zC,zA), c spans (zA,zB).
// Throws: unsupported_labels, cut_locus, non_finite.
VertexPathResult from_vertices(const Ray& zA, const Ray& zB, const Ray& zC,
                               const SpaceLabels& labels,
                               double tol = default_tol());

// -- helpers shared with the laws module -------------------------------------

// Complete translation e^{x P1} e^{phi T1} and complete rotation
// e^{X J} e^{psi I}; the two factors of each pair commute.
GroupElement side_flow(double x, double phi, const SpaceLabels& labels);
GroupElement turn_flow(double X, double psi, const SpaceLabels& labels);

// Left product e^{-A J} e^{-psi_A I} e^{c P1} e^{phi_c T1} e^{B J} e^{psi_B I}
// rebuilt from closed forms, and the six-factor right product that solve()
// factors.  Their max entry deviation is the factorization residual.
GroupElement left_product(const TriangleData& t);
GroupElement right_product(double a, double phi_a, double b, double phi_b,
                           double C, double psi_C, const SpaceLabels& labels);

// Max entry deviation of the twelve-factor closure word from the identity.
double closure_residual(const TriangleData& t);

}  // namespace ckd
