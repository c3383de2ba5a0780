#include "ckd/classical.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ckd {

namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

void require_classical(const SpaceLabels& l, const char* who) {
  if (!(l.eta == 1.0 && l.kappa2 == 1.0 &&
        (l.kappa1 == 1.0 || l.kappa1 == -1.0))) {
    throw error(errc::unsupported_labels,
                std::string(who) + ": requires labels (1; +-1, 1)");
  }
}

}  // namespace

VertexAngles convert_vertex(double C, double psi, double tol) {
  VertexAngles v;
  v.C = C;
  v.psi = psi;
  const double cosC = std::cos(C), sinC = std::sin(C);
  const double re = cosC * std::cos(psi);
  const double im = cosC * std::sin(psi);
  // sin fs_angle = sqrt(1 - re^2) = hypot(sin C, Im): the riemannian angle
  // and the inclination share this hypotenuse exactly.
  const double sinF = std::hypot(sinC, im);
  v.fs_angle = std::atan2(sinF, re);
  if (sinF <= std::max(tol, 1e-15)) {
    throw error(errc::indeterminate,
                "convert_vertex: vanishing riemannian angle sine leaves the "
                "inclination undefined");
  }
  v.incl = std::atan2(sinC, im);
  v.theta = std::asin(clamp_unit(im));
  return v;
}

VertexAngles vertex_angles(const TriangleData& t, int m, double tol) {
  require_classical(t.labels, "vertex_angles");
  const double X[3] = {t.A, t.B, t.C};
  const double psi[3] = {t.psi_A, t.psi_B, t.psi_C};
  // Pairing of the two unit tangent vectors at the vertex.  The real part
  // carries the curvature sign, and the first vertex flips it once more:
  // the canonical hexagonal word traverses the opposite side of that vertex
  // backwards, so its stored angle is the supplement of the other two
  // vertices' convention.
  const double sign = (m == 0 ? -1.0 : 1.0) * t.labels.kappa1;
  const double re = sign * std::cos(X[m]) * std::cos(psi[m]);
  const double im = std::cos(X[m]) * std::sin(psi[m]);
  const double Cv = std::acos(clamp_unit(std::hypot(re, im)));
  const double pv = std::atan2(im, re);
  return convert_vertex(Cv, pv, tol);
}

double sectional_curvature(double incl, int sign) {
  const double c = std::cos(incl), s = std::sin(incl);
  return (sign < 0 ? -1.0 : 1.0) * (4.0 * c * c + s * s);
}

// ---------------------------------------------------------------------------
// ClassicalReport bookkeeping
// ---------------------------------------------------------------------------

double ClassicalReport::max_residual() const {
  double worst = 0.0;
  for (const auto& [id, e] : entries)
    if (e.applicable) worst = std::max(worst, e.residual);
  return worst;
}

int ClassicalReport::pass_count() const {
  int n = 0;
  for (const auto& [id, e] : entries)
    if (e.applicable && e.pass) ++n;
  return n;
}

int ClassicalReport::fail_count() const {
  int n = 0;
  for (const auto& [id, e] : entries)
    if (e.applicable && !e.pass) ++n;
  return n;
}

bool ClassicalReport::all_pass() const { return fail_count() == 0; }

const LawEntry* ClassicalReport::find(std::string_view id) const {
  for (const auto& [eid, e] : entries)
    if (eid == id) return &e;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Classical law catalogue
// ---------------------------------------------------------------------------

ClassicalReport check_classical(const TriangleData& t, double tol) {
  require_classical(t.labels, "check_classical");
  const SpaceLabels& l = t.labels;
  const double k1 = l.kappa1;

  const double x[3] = {t.a, t.b, t.c};
  const double X[3] = {t.A, t.B, t.C};
  const DerivedInvariants d = derived(t);

  VertexAngles va[3];
  bool have[3];
  for (int m = 0; m < 3; ++m) {
    try {
      va[m] = vertex_angles(t, m, tol);
      have[m] = true;
    } catch (const error&) {
      have[m] = false;
    }
  }
  const bool have_all = have[0] && have[1] && have[2];

  ClassicalReport rep;
  // Residual of lhs - rhs relative to max(1, largest participating term).
  const auto push = [&](std::string id, bool applicable, double delta,
                        double scale) {
    LawEntry e;
    e.applicable = applicable;
    e.residual = applicable ? std::abs(delta) / std::max(1.0, scale) : 0.0;
    e.pass = !applicable || e.residual <= tol;
    rep.entries.emplace_back(std::move(id), e);
  };
  // Equal-ratio chain p_m / q_m: worst cross-multiplied cyclic pair.
  const auto push_chain = [&](std::string id, bool applicable,
                              const double* p, const double* q) {
    double worst = 0.0;
    if (applicable) {
      for (int m = 0; m < 3; ++m) {
        const int n = (m + 1) % 3;
        const double lhs = p[m] * q[n], rhs = p[n] * q[m];
        const double r = std::abs(lhs - rhs) /
                         std::max({1.0, std::abs(lhs), std::abs(rhs)});
        worst = std::max(worst, r);
      }
    }
    push(std::move(id), applicable, worst, 1.0);
  };
  static const char* const side_name[3] = {"a", "b", "c"};

  double sinA[3], s1[3], c1[3], s2[3], c2[3];
  for (int m = 0; m < 3; ++m) {
    sinA[m] = std::sin(X[m]);
    s1[m] = sink(k1, x[m]);
    c1[m] = cosk(k1, x[m]);
    s2[m] = sink(k1, 2.0 * x[m]);
    c2[m] = cosk(k1, 2.0 * x[m]);
  }

  // Ratio-form sine theorem: side sine over angle sine.
  push_chain("coolidge_sine", true, s1, sinA);

  // Sine theorem in riemannian-angle / inclination variables.
  {
    double den[3] = {0.0, 0.0, 0.0};
    if (have_all)
      for (int m = 0; m < 3; ++m)
        den[m] = std::sin(va[m].fs_angle) * std::sin(va[m].incl);
    push_chain("sr_sine", have_all, s1, den);
  }
  // Doubled-side sine theorem against the inclination cosine.
  {
    double den[3] = {0.0, 0.0, 0.0};
    if (have_all)
      for (int m = 0; m < 3; ++m)
        den[m] = std::sin(va[m].fs_angle) * std::cos(va[m].incl);
    push_chain("sr_double_sine", have_all, s2, den);
  }

  for (int m = 0; m < 3; ++m) {
    const int j = (m + 1) % 3, k = (m + 2) % 3;
    const double cosF = have[m] ? std::cos(va[m].fs_angle) : 0.0;
    const double sinF = have[m] ? std::sin(va[m].fs_angle) : 0.0;
    const double cosI = have[m] ? std::cos(va[m].incl) : 0.0;
    const double sinI = have[m] ? std::sin(va[m].incl) : 0.0;

    // Squared-cosine law splitting the side cosine into riemannian and
    // inclination parts.
    {
      const double t1 = c1[j] * c1[k] + s1[j] * s1[k] * cosF;
      const double t2 = s1[j] * s1[k] * sinF * cosI;
      const double rhs = t1 * t1 + t2 * t2;
      push(std::string("sr_cos_") + side_name[m], have[m],
           c1[m] * c1[m] - rhs,
           std::max({std::abs(c1[m] * c1[m]), t1 * t1, t2 * t2}));
    }
    // Doubled-side cosine law; the inclination term carries the defect from
    // the totally real case.
    {
      const double t1 = c2[j] * c2[k];
      const double t2 = s2[j] * s2[k] * cosF;
      const double t3 = 2.0 * s1[j] * s1[j] * s1[k] * s1[k] * sinF * sinF *
                        sinI * sinI;
      push(std::string("sr_double_cos_") + side_name[m], have[m],
           c2[m] - (t1 + t2 - t3),
           std::max({std::abs(c2[m]), std::abs(t1), std::abs(t2),
                     std::abs(t3)}));
    }
    // Squared-cosine pair in angle / sector variables, cross-multiplied.
    {
      const double lhs = c1[m] * c1[m] * sinA[j] * sinA[j] * sinA[k] *
                         sinA[k];
      const double t1 = std::cos(X[m]) * std::cos(X[m]);
      const double t2 = std::cos(X[j]) * std::cos(X[j]) * std::cos(X[k]) *
                        std::cos(X[k]);
      const double t3 = 2.0 * std::cos(X[m]) * std::cos(X[j]) *
                        std::cos(X[k]) * std::cos(d.Omega);
      push(std::string("bt_cos_") + side_name[m], true,
           lhs - (t1 + t2 - t3),
           std::max({std::abs(lhs), t1, t2, std::abs(t3)}));
    }
    {
      const double lhs = std::cos(X[m]) * std::cos(X[m]) * s1[j] * s1[j] *
                         s1[k] * s1[k];
      const double t1 = c1[m] * c1[m];
      const double t2 = c1[j] * c1[j] * c1[k] * c1[k];
      const double t3 = 2.0 * c1[m] * c1[j] * c1[k] * std::cos(d.omega);
      push(std::string("bt_dualcos_") + side_name[m], true,
           lhs - (t1 + t2 - t3),
           std::max({std::abs(lhs), t1, t2, std::abs(t3)}));
    }
    // Mixed-variable doubled cosine law: riemannian angle against the plain
    // angle sine.
    {
      const double t1 = c2[j] * c2[k];
      const double t2 = s2[j] * s2[k] * cosF;
      const double t3 = 2.0 * s1[j] * s1[j] * s1[k] * s1[k] * sinA[m] *
                        sinA[m];
      push(std::string("brehm_cos_") + side_name[m], have[m],
           c2[m] - (t1 + t2 - t3),
           std::max({std::abs(c2[m]), std::abs(t1), std::abs(t2),
                     std::abs(t3)}));
    }
  }

  // The remaining two equations of the mixed-variable set: the ratio sine
  // theorem (shared with the first entry) and the doubled-side ratio against
  // the companion angle sine.
  push_chain("brehm_sine", true, s1, sinA);
  {
    double den[3] = {0.0, 0.0, 0.0};
    if (have_all)
      for (int m = 0; m < 3; ++m) den[m] = std::sin(va[m].theta);
    push_chain("brehm_double_sine", have_all, s2, den);
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Shape invariant
// ---------------------------------------------------------------------------

double shape_invariant(const TriangleData& t) {
  require_classical(t.labels, "shape_invariant");
  const double k1 = t.labels.kappa1;
  const double prod = cosk(k1, t.a) * cosk(k1, t.b) * cosk(k1, t.c) *
                      std::cos(derived(t).omega);
  return k1 > 0.0 ? prod : -prod;
}

double shape_invariant(const Ray& zA, const Ray& zB, const Ray& zC,
                       const SpaceLabels& labels, double tol) {
  require_classical(labels, "shape_invariant");
  const VertexPathResult v = from_vertices(zA, zB, zC, labels, tol);
  // The ray path normalizes every vertex to unit self-pairing; the
  // negative-curvature convention takes the opposite signature, which flips
  // each pairwise pairing and hence the cyclic triple product.
  return labels.kappa1 > 0.0 ? v.sigma : -v.sigma;
}

}  // namespace ckd
