#include "ckd/group.hpp"

#include <cmath>

namespace ckd {

namespace {

// Rotation-type one-parameter block on rows/cols (r, c): the generic pattern
// covering P1, P2, J (real) and Q1, Q2, M (i-twisted; block label gains eta).
Mat3 block_rotation(int r, int c, double coef, double block_label, bool imag, double x) {
  Mat3 u = mat_identity();
  const double C = cosk(block_label, x);
  const double S = sink(block_label, x);
  u.at(r, r) = {C, 0.0};
  u.at(c, c) = {C, 0.0};
  if (imag) {
    u.at(r, c) = {0.0, coef * S};
    u.at(c, r) = {0.0, S};
  } else {
    u.at(r, c) = {-coef * S, 0.0};
    u.at(c, r) = {S, 0.0};
  }
  return u;
}

} // namespace

GroupElement one_param(Gen g, double x, const SpaceLabels& l) {
  if (!std::isfinite(x)) throw error(errc::non_finite, "one_param: non-finite parameter");
  GroupElement out;
  out.labels = l;
  const double k1 = l.kappa1, k2 = l.kappa2, eta = l.eta;
  switch (g) {
    case Gen::P1: out.matrix = block_rotation(0, 1, k1, k1, false, x); break;
    case Gen::P2: out.matrix = block_rotation(0, 2, k1 * k2, k1 * k2, false, x); break;
    case Gen::J: out.matrix = block_rotation(1, 2, k2, k2, false, x); break;
    case Gen::Q1: out.matrix = block_rotation(0, 1, k1, eta * k1, true, x); break;
    case Gen::Q2: out.matrix = block_rotation(0, 2, k1 * k2, eta * k1 * k2, true, x); break;
    case Gen::M: out.matrix = block_rotation(1, 2, k2, eta * k2, true, x); break;
    default: {
      // diagonal generators: entrywise unimodular exponentials
      static constexpr double diag_coef[6][3] = {
          {0.0, -1.0, 1.0},                    // B
          {-2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},  // I
          {-1.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0}, // T1
          {-1.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0}, // T2
          {-1.0, 1.0, 0.0},                    // H1
          {-1.0, 0.0, 1.0},                    // H2
      };
      const double* c = diag_coef[static_cast<size_t>(g) - static_cast<size_t>(Gen::B)];
      for (int i = 0; i < 3; ++i) out.matrix.at(i, i) = cd_exp_imag(c[i] * x, eta);
      break;
    }
  }
  return out;
}

GroupElement exp_series(const AlgebraElement& x) {
  const double eta = x.labels.eta;
  double norm = 0.0;
  for (const CDScalar& z : x.matrix.m) {
    if (!std::isfinite(z.re) || !std::isfinite(z.im))
      throw error(errc::non_finite, "exp_series: non-finite entry");
    norm = std::max(norm, std::abs(z.re) + std::abs(z.im));
  }
  int squarings = 0;
  Mat3 scaled = x.matrix;
  while (norm > 0.5 && squarings < 64) {
    scaled = mat_scale(0.5, scaled);
    norm *= 0.5;
    ++squarings;
  }
  if (norm > 0.5) throw error(errc::non_finite, "exp_series: entry magnitude overflow");

  Mat3 sum = mat_identity();
  Mat3 term = mat_identity();
  for (int n = 1; n <= 18; ++n) {
    term = mat_scale(1.0 / n, mat_mul(term, scaled, eta));
    sum = mat_add(sum, term);
  }
  for (int s = 0; s < squarings; ++s) sum = mat_mul(sum, sum, eta);
  return {sum, x.labels};
}

Mat3 hermitian_form(const SpaceLabels& l) {
  Mat3 g;
  g.at(0, 0) = {1.0, 0.0};
  g.at(1, 1) = {l.kappa1, 0.0};
  g.at(2, 2) = {l.kappa1 * l.kappa2, 0.0};
  return g;
}

CDScalar det3(const Mat3& a, double eta) {
  auto mul = [&](CDScalar p, CDScalar q) { return cd_mul(p, q, eta); };
  const CDScalar c0 = cd_sub(mul(a.at(1, 1), a.at(2, 2)), mul(a.at(1, 2), a.at(2, 1)));
  const CDScalar c1 = cd_sub(mul(a.at(1, 0), a.at(2, 2)), mul(a.at(1, 2), a.at(2, 0)));
  const CDScalar c2 = cd_sub(mul(a.at(1, 0), a.at(2, 1)), mul(a.at(1, 1), a.at(2, 0)));
  CDScalar d = mul(a.at(0, 0), c0);
  d = cd_sub(d, mul(a.at(0, 1), c1));
  d = cd_add(d, mul(a.at(0, 2), c2));
  return d;
}

double isometry_defect(const GroupElement& u) {
  const double eta = u.labels.eta;
  const Mat3 lambda = hermitian_form(u.labels);
  const Mat3 gram = mat_mul(mat_conj_transpose(u.matrix), mat_mul(lambda, u.matrix, eta), eta);
  const CDScalar d = det3(u.matrix, eta);
  const double det_dev = std::sqrt(cd_euclid_sq(cd_sub(d, {1.0, 0.0})));
  return std::max(mat_max_dev(gram, lambda), det_dev);
}

bool is_isometry(const GroupElement& u, double tol) {
  const double scale = std::max(1.0, mat_max_abs(u.matrix));
  return isometry_defect(u) <= tol * scale * scale;
}

GroupElement group_mul(const GroupElement& a, const GroupElement& b) {
  if (a.labels.eta != b.labels.eta || a.labels.kappa1 != b.labels.kappa1 ||
      a.labels.kappa2 != b.labels.kappa2)
    throw error(errc::label_mismatch, "group_mul: operands carry different label triples");
  return {mat_mul(a.matrix, b.matrix, a.labels.eta), a.labels};
}

GroupElement group_identity(const SpaceLabels& l) { return {mat_identity(), l}; }

GroupElement group_inverse(const GroupElement& u) {
  // adjugate; equals the inverse because det == 1 on the group
  const double eta = u.labels.eta;
  const Mat3& a = u.matrix;
  auto m2 = [&](int r0, int c0, int r1, int c1) { // 2x2 minor det
    return cd_sub(cd_mul(a.at(r0, c0), a.at(r1, c1), eta),
                  cd_mul(a.at(r0, c1), a.at(r1, c0), eta));
  };
  Mat3 inv;
  inv.at(0, 0) = m2(1, 1, 2, 2);
  inv.at(0, 1) = cd_neg(m2(0, 1, 2, 2));
  inv.at(0, 2) = m2(0, 1, 1, 2);
  inv.at(1, 0) = cd_neg(m2(1, 0, 2, 2));
  inv.at(1, 1) = m2(0, 0, 2, 2);
  inv.at(1, 2) = cd_neg(m2(0, 0, 1, 2));
  inv.at(2, 0) = m2(1, 0, 2, 1);
  inv.at(2, 1) = cd_neg(m2(0, 0, 2, 1));
  inv.at(2, 2) = m2(0, 0, 1, 1);
  return {inv, u.labels};
}

CDScalar ray_inner(const Ray& u, const Ray& v) {
  const double eta = u.labels.eta;
  const double lam[3] = {1.0, u.labels.kappa1, u.labels.kappa1 * u.labels.kappa2};
  CDScalar acc{0.0, 0.0};
  for (int i = 0; i < 3; ++i)
    acc = cd_add(acc, cd_scale(lam[i], cd_mul(cd_conj(u.z[i]), v.z[i], eta)));
  return acc;
}

Ray normalize_ray(const Ray& r) {
  Ray out = r;
  const double eta = r.labels.eta;
  const CDScalar nrm = ray_inner(out, out);
  if (nrm.re > default_tol()) {
    const double inv = 1.0 / std::sqrt(nrm.re);
    for (CDScalar& z : out.z) z = cd_scale(inv, z);
  }
  for (int i = 0; i < 3; ++i) {
    const double m2 = cd_modulus_sq(out.z[i], eta);
    if (m2 > default_tol()) {
      // unit-modulus representative of the component's phase; conjugating by
      // it rotates the component onto the non-negative real axis
      const double m = std::sqrt(m2);
      CDScalar u{out.z[i].re / m, out.z[i].im / m};
      if (u.re < 0.0) {
        u = cd_neg(u); // fold in the -1 gauge factor for the split/dual rings
        for (CDScalar& z : out.z) z = cd_neg(z);
      }
      const CDScalar ubar = cd_conj(u);
      for (CDScalar& z : out.z) z = cd_mul(ubar, z, eta);
      out.z[i].im = 0.0; // exact by construction; clear rounding residue
      break;
    }
  }
  return out;
}

Ray base_point(const SpaceLabels& l) {
  Ray r;
  r.labels = l;
  r.z[0] = {1.0, 0.0};
  return r;
}

Ray act(const GroupElement& u, const Ray& r) {
  Ray out;
  out.labels = r.labels;
  const double eta = r.labels.eta;
  for (int i = 0; i < 3; ++i) {
    CDScalar acc{0.0, 0.0};
    for (int j = 0; j < 3; ++j) acc = cd_add(acc, cd_mul(u.matrix.at(i, j), r.z[j], eta));
    out.z[i] = acc;
  }
  return normalize_ray(out);
}

} // namespace ckd
