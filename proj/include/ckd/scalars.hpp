#pragma once
// Label-parametrized scalar layer: the commutative ring C_eta = R[i]/(i^2 = -eta)
// together with the label-graded circular/parabolic/hyperbolic functions that
// interpolate cos/1/cosh families as a real label crosses zero.
//
// Everything downstream (matrix groups, triangle solver, law evaluation) is
// written against these primitives, so their branch conventions are the single
// source of truth for the whole library:
//   * the degenerate branch of a labeled function is taken only when the label
//     is exactly 0.0; small nonzero labels use the generic branch,
//   * principal arguments for eta > 0 live in (-pi/sqrt(eta), +pi/sqrt(eta)],
//   * for eta <= 0 arguments are globally unique where they exist.

#include <stdexcept>
#include <string>

namespace ckd {

// ---------------------------------------------------------------------------
// Error reporting
// ---------------------------------------------------------------------------

enum class errc {
  not_unimodular,      // cd_arg input fails |u|^2 == 1
  no_real_argument,    // unimodular input on a branch no real argument reaches
  pole,                // tangent evaluated at (numerically) a pole
  inconsistent_pair,   // (cos, sin) pair violates its Pythagorean identity
  label_mismatch,      // binary operation on elements with different labels
  not_cartan,          // diagonal-combination query on a non-diagonal generator
  non_finite,          // NaN/Inf encountered where a finite value is required
  degenerate_triangle, // side extraction singular (vanishing side sine)
  residual_too_large,  // factorization found but reconstruction exceeds bound
  cut_locus,           // vertex pair at mutual cut locus, side undefined
  unsupported_labels,  // operation restricted to a sub-family of label triples
  not_special,         // special-case reduction requested on a generic triangle
  indeterminate,       // quantity has no defined value at this configuration
};

class error : public std::runtime_error {
public:
  errc code;
  error(errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// Default comparison tolerance. Reads the CKD_TOL environment variable once at
// first use; falls back to 1e-9. Interpreted as a relative tolerance against
// max(1, magnitude of the quantities compared).
double default_tol();

// ---------------------------------------------------------------------------
// Space labels
// ---------------------------------------------------------------------------

// (eta; kappa1, kappa2): eta grades the scalar ring, kappa1 is one quarter of
// the holomorphic sectional curvature, kappa2 the metric signature label.
// Arbitrary real values are accepted; sign-normalized triples select one of
// the 27 named geometries.
struct SpaceLabels {
  double eta = 1.0;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
};

// Maps each label to its sign in {-1, 0, +1}.
SpaceLabels normalize(const SpaceLabels& l);

// Human-readable geometry name for the sign-normalized triple, e.g.
// (1;1,1) -> "Complex Hermitian Elliptic",
// (0;0,0) -> "Parabolic Complex Hermitian Galilean".
std::string classify(const SpaceLabels& l);

// Side/angle duality swaps the two curvature-type labels: (eta; k2, k1).
SpaceLabels dual_labels(const SpaceLabels& l);

// ---------------------------------------------------------------------------
// C_eta arithmetic
// ---------------------------------------------------------------------------

// One element of C_eta = { re + i*im : i^2 = -eta }. The ring parameter eta is
// deliberately NOT stored per element; it is contextual and passed to the few
// operations that depend on it (mul, modulus, exp, arg). This keeps mixed-label
// bugs loud instead of silently blending different rings.
struct CDScalar {
  double re = 0.0;
  double im = 0.0;
};

inline CDScalar cd_add(CDScalar a, CDScalar b) { return {a.re + b.re, a.im + b.im}; }
inline CDScalar cd_sub(CDScalar a, CDScalar b) { return {a.re - b.re, a.im - b.im}; }
inline CDScalar cd_neg(CDScalar a) { return {-a.re, -a.im}; }
inline CDScalar cd_scale(double s, CDScalar a) { return {s * a.re, s * a.im}; }
inline CDScalar cd_conj(CDScalar a) { return {a.re, -a.im}; }

inline CDScalar cd_mul(CDScalar a, CDScalar b, double eta) {
  return {a.re * b.re - eta * a.im * b.im, a.re * b.im + a.im * b.re};
}

// Ring modulus z * conj(z) = re^2 + eta * im^2. Indefinite for eta < 0 and
// degenerate for eta == 0; use euclid_sq for error norms.
inline double cd_modulus_sq(CDScalar a, double eta) {
  return a.re * a.re + eta * a.im * a.im;
}

// Positive-definite size measure used for residuals and convergence checks.
inline double cd_euclid_sq(CDScalar a) { return a.re * a.re + a.im * a.im; }

// exp(i x) = Cos_eta(x) + i Sin_eta(x); one-parameter unimodular curve of the
// ring, reducing to the circle / dual-number line / split hyperbola.
CDScalar cd_exp_imag(double x, double eta);

// Inverse of cd_exp_imag on unimodular elements.
//   eta > 0 : principal value in (-pi/sqrt(eta), +pi/sqrt(eta)]
//   eta == 0: requires u.re == +1 (u.re == -1 raises no_real_argument)
//   eta < 0 : requires u.re >= 1 (the u.re <= -1 sheet raises no_real_argument)
// Raises not_unimodular when |u|^2 differs from 1 beyond tol.
double cd_arg(CDScalar u, double eta, double tol = default_tol());

// ---------------------------------------------------------------------------
// Label-graded trigonometry (real arguments, real label)
// ---------------------------------------------------------------------------

// cosk(k, x):   cos(sqrt(k) x)        | 1     | cosh(sqrt(-k) x)
// sink(k, x):   sin(sqrt(k) x)/sqrt(k)| x     | sinh(sqrt(-k) x)/sqrt(-k)
// versink(k,x): (1 - cosk(k,x))/k     | x^2/2 | (same formula, stable form)
// tank(k, x):   sink/cosk, raising errc::pole within ~1e-14 of a cosk zero.
// The middle branch is used only when k == 0.0 exactly.
// Identity maintained to machine precision: cosk^2 + k * sink^2 == 1.
double cosk(double label, double x);
double sink(double label, double x);
double versink(double label, double x);
double tank(double label, double x);

// Joint inverse of (cosk, sink): the unique x (principal for label > 0) with
// cosk(label, x) == c and sink(label, x) == s. Raises inconsistent_pair when
// (c, s) violates c^2 + label * s^2 == 1 beyond tol or lies on an unreachable
// branch (e.g. c < 0 with label < 0).
double arck(double label, double c, double s, double tol = default_tol());

// A real value tagged with the label under which it is to be interpreted
// trigonometrically (a side carries kappa1, an angle kappa2, a phase eta, ...).
struct LabeledAngle {
  double value = 0.0;
  double label = 0.0;
};

} // namespace ckd
