#pragma once

// Residual evaluation for the full catalogue of triangle laws on the labeled
// spaces: the group-word closure identity, the nine entry identities of the
// closure matrix, the cyclic equation set they split into, the derived named
// laws (squared cosine, double-argument, sine-quotient, tangent and product
// forms, Gramm identities), holonomy loop equations, label-robust contracted
// forms, special-configuration reductions, and the bookkeeping for a minimal
// independent equation set per label triple.
//
// Every law is evaluated as a residual: a set of real rows that vanish on
// solved triangles, plus a normalized scalar summary.  Quotient-form laws are
// cleared of denominators before evaluation and are marked inapplicable when
// an original denominator vanishes, so no entry ever divides by noise.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ckd/algebra.hpp"
#include "ckd/triangle.hpp"

namespace ckd {

// ---------------------------------------------------------------------------
// Law identities
// ---------------------------------------------------------------------------

enum class LawTag {
  // Group-word closure of the six oriented flows around the triangle.
  basic_identity,
  // The nine matrix-entry identities extracted from the closure word, in
  // their balanced (third-of-phase) form.
  nine_1,
  nine_2,
  nine_3,
  nine_4,
  nine_5,
  nine_6,
  nine_7,
  nine_8,
  nine_9,
  // Cyclic equation set: phase alignment, sector sums, and the complex
  // cosine/sine/mixed/clairaut equations.
  t0ij,         // (phi_i - psi_I) - (phi_j - psi_J) = 0
  omega_area,   // psi_I + psi_J + phi_k = 2 kappa1 S
  Omega_coarea, // phi_i + phi_j + psi_K = 2 kappa2 s
  t1i,          // complex side cosine law
  t1I,          // complex angle cosine law
  t2ij,         // sine quotient, pairwise cross form
  t3iJ,         // mixed sine-cosine law
  t3Ij,         // dual mixed sine-cosine law
  t4ij,         // balanced product law
  // Named derived laws.
  sr_cos,       // squared real side cosine law
  sr_cos2,      // double-argument side cosine law
  sr_dualcos,   // squared real angle cosine law
  sr_dualcos2,  // double-argument angle cosine law
  bt_cos,       // bi-quadratic side cosine law
  bt_dualcos,   // bi-quadratic angle cosine law
  sr_sin2,      // double-argument sine quotient
  sr_dualsin2,  // dual double-argument sine quotient
  ss,           // sine-product quotient
  cT,           // cosine-tangent quotient
  Ct,           // dual cosine-tangent quotient
  cc,           // cosine pair law
  CC,           // dual cosine pair law
  Tc,           // tangent-cosine transfer law
  Tc2,          // tangent-cosine transfer law, second form
  tC,           // dual tangent-cosine transfer law
  tC2,          // dual tangent-cosine transfer law, second form
  c_euler,      // squared cosine from sector phase sines
  C_euler,      // dual squared cosine from sector phase sines
  s_euler,      // squared sine from sector phase sines and area
  S_euler,      // dual squared sine from sector phase sines and coarea
  gramm_gamma,  // renormalized Gramm determinant vs. sine product
  gramm_Gamma,  // dual renormalized Gramm determinant vs. sine product
  // Holonomy loops and generator-transport compatibility.
  loop_point, // loop of three side flows closing into a vertex turn
  loop_line,  // loop of three turn flows closing into a side slide
  compat,     // transported generator pairs match their closed forms
  // Label-robust contracted forms (regular at vanishing curvature labels).
  t1i_prime,
  t1I_prime,
  // Five-equation sets for both curvature labels zero.
  zero_eta_nonzero,
  zero_eta_zero,
  // Special-configuration reductions.
  collinear_reduced,
  concurrent_reduced,
  purely_real_reduced,
};

// Every law has three cyclic variants, indexed 0..2; variant v reads the
// triangle through the cyclic rotation (i, j, k) = (v, v+1, v+2) mod 3 of the
// compact index set.
inline constexpr int kLawVariants = 3;

const char* law_tag_name(LawTag tag);
std::optional<LawTag> law_tag_from_name(const std::string& name);
std::vector<LawTag> all_law_tags();

struct LawId {
  LawTag tag;
  int variant = 0; // 0..2, cyclic base index

  friend bool operator==(const LawId&, const LawId&) = default;
};

// "<tag-name>_<i|j|k>" with the suffix naming the base of the cyclic variant.
std::string law_id_string(const LawId& id);
std::optional<LawId> law_id_from_string(const std::string& s);

// ---------------------------------------------------------------------------
// Fourteen-quantity state
// ---------------------------------------------------------------------------

// A triangle viewed as the fourteen quantities the laws relate: compact
// signed sides, angles, lateral and angular phases, and the symplectic area
// and coarea.  Laws evaluate on this state directly, so residuals and their
// derivatives make sense for arbitrary (not necessarily solved) values.
struct QuantState {
  SpaceLabels labels;
  std::array<double, 3> x{};   // compact sides
  std::array<double, 3> X{};   // compact angles
  std::array<double, 3> phi{}; // compact lateral phases
  std::array<double, 3> psi{}; // compact angular phases
  double S = 0.0;              // symplectic area
  double s = 0.0;              // symplectic coarea
};

// Embed a triangle: compact coordinates plus the derived area/coarea.
QuantState quant_state(const TriangleData& t);

// Rebuild plain triangle data from a fourteen-quantity state (inverse of the
// compact embedding; area and coarea are dropped).
TriangleData triangle_from_quant(const QuantState& q);

// ---------------------------------------------------------------------------
// Law evaluation
// ---------------------------------------------------------------------------

// Result of evaluating one law variant.
//   rows:       unnormalized residual rows (all vanish on solved triangles)
//   residual:   normalized scalar summary of the rows
//   applicable: false when a quotient-form law hit a vanishing denominator
//               or the law is restricted to other label/configuration types;
//               rows/residual are still reported but carry no pass verdict.
struct LawEval {
  std::vector<double> rows;
  double residual = 0.0;
  bool applicable = true;
};

// Evaluate one law variant on a fourteen-quantity state.  Matrix-valued laws
// (basic_identity, loop_point, loop_line, compat) rebuild the triangle from
// the state and evaluate the corresponding group words.
LawEval evaluate_law(const LawId& id, const QuantState& q);

struct LawEntry {
  double residual = 0.0;
  bool applicable = true;
  bool pass = true; // residual <= tol, or vacuously true when inapplicable
};

struct LawResidualReport {
  std::vector<std::pair<LawId, LawEntry>> entries;

  double max_residual() const; // over applicable entries; 0 if none
  int pass_count() const;      // applicable entries with pass
  int fail_count() const;      // applicable entries without pass
  bool all_pass() const { return fail_count() == 0; }
  const LawEntry* find(LawTag tag, int variant) const;
};

// Registry row: one evaluable law family with its cyclic variant count and
// an applicability predicate.
struct LawInfo {
  LawTag tag;
  const char* name;
  int variants;
  bool (*applicable)(const QuantState& q, int variant);
  double (*residual)(const QuantState& q, int variant);
};
const std::vector<LawInfo>& law_registry();

// ---------------------------------------------------------------------------
// Grouped residual operations
// ---------------------------------------------------------------------------

// Maximum entry deviation of the twelve-factor closure word from the
// identity (canonical variant).
double residual_basic(const TriangleData& t);

// The nine entry identities; entry n is the worst normalized residual of
// identity n+1 over its three cyclic variants.
std::array<double, 9> residual_nine(const TriangleData& t);

// Phase alignment, sector sums, and complex equations (t0ij, omega_area,
// Omega_coarea, t1i, t1I, t2ij, t3iJ, t3Ij, t4ij), all cyclic variants.
LawResidualReport residual_final(const TriangleData& t, double tol = default_tol());

// Named derived laws, all cyclic variants; quotient forms are cleared of
// denominators and marked inapplicable where a denominator vanishes.
LawResidualReport residual_named(const TriangleData& t, double tol = default_tol());

// Holonomy loops around each vertex and each line, plus the transported
// generator compatibility rows.
LawResidualReport residual_loops(const TriangleData& t, double tol = default_tol());

// Label-robust contracted forms; the five-equation zero-label sets are
// included when the labels select them.
LawResidualReport residual_contracted(const TriangleData& t, double tol = default_tol());

// Reduced laws for special configurations; throws errc::not_special when the
// triangle is generic.
LawResidualReport residual_special(const TriangleData& t, double tol = default_tol());

// Union of all law groups applicable to this triangle.
LawResidualReport evaluate_all(const TriangleData& t, double tol = default_tol());

// ---------------------------------------------------------------------------
// Transported generators
// ---------------------------------------------------------------------------

// The six canonical-pair generators attached to the triangle's vertices and
// sides: the base pair (P_a, T_a) and turn pair (J_C, I_C) are the canonical
// representation matrices; the remaining pairs are their conjugates by the
// partial flow words of the triangle.
struct ConjugatedGenerators {
  AlgebraElement P_a, T_a;
  AlgebraElement P_b, T_b;
  AlgebraElement P_c, T_c;
  AlgebraElement J_A, I_A;
  AlgebraElement J_B, I_B;
  AlgebraElement J_C, I_C;
};
ConjugatedGenerators conjugated_generators(const TriangleData& t);

// ---------------------------------------------------------------------------
// Independent equation set
// ---------------------------------------------------------------------------

// A minimal set of law variants whose rows cut out the solution variety of
// the given labels: ten independent rows among the fourteen quantities.
std::vector<LawId> independent_set(const SpaceLabels& labels);

// Stacked rows of every law in the independent set.
std::vector<double> independent_rows(const QuantState& q);

// Jacobian of the independent rows with respect to the fourteen quantities
// (x, X, phi, psi, S, s), by central differences; rows.size() x 14.
std::vector<std::array<double, 14>> independent_jacobian(const QuantState& q,
                                                         double step = 1e-6);

// Numerical rank: the number of singular values exceeding rel_cut times the
// largest singular value.
int numeric_rank(const std::vector<std::array<double, 14>>& rows,
                 double rel_cut = 1e-6);

} // namespace ckd
