#pragma once
// Twelve-generator matrix realization of the label-parametrized unitary
// algebra acting on C_eta^3, preserving the form diag(1, k1, k1*k2) and the
// trace. Four of the twelve (T1, T2, H1, H2) are rational combinations of the
// diagonal pair (B, I), so the algebra itself is eight-dimensional; carrying
// all twelve named elements keeps the commutator table and the side/angle
// duality map literal.
//
// Two arithmetic paths share one entry table:
//   * rep()        — doubles, arbitrary real labels,
//   * rep_exact()  — int64 rationals, sign-normalized labels; powers the
//                    zero-error structure checks.

#include <array>
#include <cstdint>
#include <string>

#include "ckd/scalars.hpp"

namespace ckd {

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

enum class Gen : int { P1, P2, Q1, Q2, J, M, B, I, T1, T2, H1, H2 };

inline constexpr std::array<Gen, 12> all_generators = {
    Gen::P1, Gen::P2, Gen::Q1, Gen::Q2, Gen::J,  Gen::M,
    Gen::B,  Gen::I,  Gen::T1, Gen::T2, Gen::H1, Gen::H2};

const char* gen_name(Gen g);
Gen gen_from_name(const std::string& name); // throws unsupported_labels on unknown

// ---------------------------------------------------------------------------
// Dense 3x3 matrices over C_eta
// ---------------------------------------------------------------------------

struct Mat3 {
  std::array<CDScalar, 9> m{};
  CDScalar& at(int r, int c) { return m[static_cast<size_t>(3 * r + c)]; }
  const CDScalar& at(int r, int c) const { return m[static_cast<size_t>(3 * r + c)]; }
};

Mat3 mat_identity();
Mat3 mat_add(const Mat3& a, const Mat3& b);
Mat3 mat_sub(const Mat3& a, const Mat3& b);
Mat3 mat_scale(double s, const Mat3& a);
Mat3 mat_scale_cd(CDScalar s, const Mat3& a, double eta);
Mat3 mat_mul(const Mat3& a, const Mat3& b, double eta);
Mat3 mat_conj_transpose(const Mat3& a);
// Largest entry deviation in the positive-definite component norm.
double mat_max_abs(const Mat3& a);
double mat_max_dev(const Mat3& a, const Mat3& b);

// ---------------------------------------------------------------------------
// Algebra elements
// ---------------------------------------------------------------------------

struct AlgebraElement {
  Mat3 matrix;
  SpaceLabels labels;
};

// Matrix realization of one generator at the given (arbitrary real) labels.
AlgebraElement rep(Gen g, const SpaceLabels& labels);

// Commutator [a, b] = ab - ba. Raises label_mismatch unless the two elements
// carry identical label triples.
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

// Verifies every entry of the frozen 66-pair commutator table against matrix
// arithmetic. Exact (zero-error int64 rationals) when all three labels are
// integers; double-precision fallback otherwise.
bool check_commutation_table(const SpaceLabels& labels);

// Diagonal generators as combinations of the (B, I) pair: g = cb*B + ci*I.
// Only T1, T2, H1, H2 qualify; anything else raises not_cartan.
struct CartanCombo {
  double cb = 0.0;
  double ci = 0.0;
};
CartanCombo cartan_combination(Gen g);

// Quadratic invariant combination of squared generators; commutes with all
// twelve representation matrices at every label triple.
Mat3 casimir(const SpaceLabels& labels);
// Exact commutation check of casimir() against all twelve generators
// (integer labels only).
bool casimir_commutes(const SpaceLabels& labels);

// Side/angle duality on generators: X -> sign * image, with labels swapped
// (k1 <-> k2) on the image side. An involution on the twelve names.
struct DualityImage {
  Gen image;
  int sign; // +1 or -1
};
DualityImage duality_map(Gen g);

// Exact check that duality_map is a Lie algebra isomorphism onto the
// label-swapped algebra: [D(x), D(y)]_(k2,k1) == D([x, y]_(k1,k2)) for every
// pair, at integer labels.
bool check_duality_automorphism(const SpaceLabels& labels);

// ---------------------------------------------------------------------------
// Commuting involutions
// ---------------------------------------------------------------------------

// point        : fixes {J, M, B, I}            (stabilizer of a point)
// line_first   : fixes {P1, Q1, B, I}          (stabilizer of a first-kind line)
// line_second  : fixes {P2, Q2, B, I}          (stabilizer of a second-kind line)
// conjugation  : ring conjugation, fixes {P1, P2, J}, negates every
//                i-carrying generator; cuts out the purely real subspace.
enum class InvolutionKind { point, line_first, line_second, conjugation };

struct InvolutionTable {
  std::array<int, 12> sign{}; // indexed by Gen, each +1 (fixed) or -1 (negated)
  int of(Gen g) const { return sign[static_cast<size_t>(g)]; }
};
InvolutionTable involution(InvolutionKind k);

// Verifies that the sign table defines an algebra automorphism: consistent
// signs across the dependent diagonal generators, and sign(a)*sign(b) ==
// sign(target) for every nonvanishing bracket row.
bool check_involution_automorphism(InvolutionKind k);

// ---------------------------------------------------------------------------
// Exact-rational layer (public so structure tests can assert zero error)
// ---------------------------------------------------------------------------

struct Rat {
  long long n = 0, d = 1; // normalized: d > 0, gcd(|n|, d) == 1
};
Rat rat_make(long long n, long long d);
Rat rat_add(Rat a, Rat b);
Rat rat_sub(Rat a, Rat b);
Rat rat_mul(Rat a, Rat b);
Rat rat_neg(Rat a);
bool rat_eq(Rat a, Rat b);
inline bool rat_is_zero(Rat a) { return a.n == 0; }

struct RatCD {
  Rat re, im;
};
struct RatMat3 {
  std::array<RatCD, 9> m{};
  RatCD& at(int r, int c) { return m[static_cast<size_t>(3 * r + c)]; }
  const RatCD& at(int r, int c) const { return m[static_cast<size_t>(3 * r + c)]; }
};

struct IntLabels {
  int eta, k1, k2;
};

RatMat3 rep_exact(Gen g, IntLabels labels);
RatMat3 rmat_mul(const RatMat3& a, const RatMat3& b, int eta);
RatMat3 rmat_sub(const RatMat3& a, const RatMat3& b);
RatMat3 rmat_add(const RatMat3& a, const RatMat3& b);
RatMat3 rmat_scale(Rat s, const RatMat3& a);
bool rmat_is_zero(const RatMat3& a);
bool rmat_eq(const RatMat3& a, const RatMat3& b);

} // namespace ckd
