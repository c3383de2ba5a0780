#pragma once
// Group layer over the matrix algebra: closed-form one-parameter subgroups,
// an independent scaling-and-squaring exponential used as an oracle against
// them, the invariant Hermitian form, and projective rays (points of the
// homogeneous space) with their gauge fixing.

#include <array>

#include "ckd/algebra.hpp"

namespace ckd {

struct GroupElement {
  Mat3 matrix;
  SpaceLabels labels;
};

// Closed-form exp(x * rep(g, labels)). P-type and J generators produce real
// label-graded rotation blocks, Q-type and M produce their i-twisted
// counterparts (block label acquires a factor eta), diagonal generators
// exponentiate entrywise through cd_exp_imag.
GroupElement one_param(Gen g, double x, const SpaceLabels& labels);

// Taylor exponential with scaling and squaring; independent of one_param and
// used to validate it. Raises non_finite on unrepresentable input.
GroupElement exp_series(const AlgebraElement& x);

// Invariant form Lambda = diag(1, k1, k1*k2).
Mat3 hermitian_form(const SpaceLabels& labels);

// Largest deviation of U^dagger Lambda U from Lambda, plus |det(U) - 1|.
double isometry_defect(const GroupElement& u);
bool is_isometry(const GroupElement& u, double tol = default_tol());

// Determinant by cofactor expansion: division-free, valid over the zero
// divisors of the eta == 0 ring.
CDScalar det3(const Mat3& a, double eta);

// Inverse via the adjugate; relies on det == 1 (group elements), so it is
// likewise division-free.
GroupElement group_inverse(const GroupElement& u);
GroupElement group_mul(const GroupElement& a, const GroupElement& b);
GroupElement group_identity(const SpaceLabels& labels);

// ---------------------------------------------------------------------------
// Points of the homogeneous space
// ---------------------------------------------------------------------------

// A projective ray: class of a C_eta^3 column modulo unimodular scalars
// (ring elements of modulus 1, including -1 for eta <= 0).
struct Ray {
  std::array<CDScalar, 3> z{};
  SpaceLabels labels;
};

// <u|v> = sum_i conj(u_i) Lambda_ii v_i. Always real when u == v.
CDScalar ray_inner(const Ray& u, const Ray& v);

// Gauge fixing: when <z|z> > 0 rescale it to 1; then rotate the leading
// component of positive ring modulus to a non-negative real.
Ray normalize_ray(const Ray& r);

// Fiducial base point O = (1, 0, 0).
Ray base_point(const SpaceLabels& labels);

// u.z -> normalize_ray(U z).
Ray act(const GroupElement& u, const Ray& r);

} // namespace ckd
