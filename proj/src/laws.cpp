#include "ckd/laws.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ckd/group.hpp"

namespace ckd {

namespace {

// ---------------------------------------------------------------------------
// Tag table
// ---------------------------------------------------------------------------

#define CKD_LAW_LIST(X)                                                        \
  X(basic_identity)                                                            \
  X(nine_1)                                                                    \
  X(nine_2)                                                                    \
  X(nine_3)                                                                    \
  X(nine_4)                                                                    \
  X(nine_5)                                                                    \
  X(nine_6)                                                                    \
  X(nine_7)                                                                    \
  X(nine_8)                                                                    \
  X(nine_9)                                                                    \
  X(t0ij)                                                                      \
  X(omega_area)                                                                \
  X(Omega_coarea)                                                              \
  X(t1i)                                                                       \
  X(t1I)                                                                       \
  X(t2ij)                                                                      \
  X(t3iJ)                                                                      \
  X(t3Ij)                                                                      \
  X(t4ij)                                                                      \
  X(sr_cos)                                                                    \
  X(sr_cos2)                                                                   \
  X(sr_dualcos)                                                                \
  X(sr_dualcos2)                                                               \
  X(bt_cos)                                                                    \
  X(bt_dualcos)                                                                \
  X(sr_sin2)                                                                   \
  X(sr_dualsin2)                                                               \
  X(ss)                                                                        \
  X(cT)                                                                        \
  X(Ct)                                                                        \
  X(cc)                                                                        \
  X(CC)                                                                        \
  X(Tc)                                                                        \
  X(Tc2)                                                                       \
  X(tC)                                                                        \
  X(tC2)                                                                       \
  X(c_euler)                                                                   \
  X(C_euler)                                                                   \
  X(s_euler)                                                                   \
  X(S_euler)                                                                   \
  X(gramm_gamma)                                                               \
  X(gramm_Gamma)                                                               \
  X(loop_point)                                                                \
  X(loop_line)                                                                 \
  X(compat)                                                                    \
  X(t1i_prime)                                                                 \
  X(t1I_prime)                                                                 \
  X(zero_eta_nonzero)                                                          \
  X(zero_eta_zero)                                                             \
  X(collinear_reduced)                                                         \
  X(concurrent_reduced)                                                        \
  X(purely_real_reduced)

constexpr const char* kTagNames[] = {
#define CKD_LAW_NAME(t) #t,
    CKD_LAW_LIST(CKD_LAW_NAME)
#undef CKD_LAW_NAME
};

constexpr LawTag kTags[] = {
#define CKD_LAW_TAG(t) LawTag::t,
    CKD_LAW_LIST(CKD_LAW_TAG)
#undef CKD_LAW_TAG
};

constexpr int kTagCount = static_cast<int>(sizeof(kTags) / sizeof(kTags[0]));

// Denominator floor below which a quotient-form law is marked inapplicable.
constexpr double kDenFloor = 1e-9;

// ---------------------------------------------------------------------------
// Cached trigonometric context for one state
// ---------------------------------------------------------------------------

struct Ctx {
  const QuantState& q;
  double eta, k1, k2;
  std::array<double, 3> C1, S1, C2, S2;   // single-argument side/angle trig
  std::array<double, 3> C1d, S1d, C2d, S2d; // double-argument
  std::array<double, 3> V1, V2;           // versines
  double SO, VO;                          // routed area sine / versine
  double so, vo;                          // routed coarea sine / versine

  explicit Ctx(const QuantState& state)
      : q(state),
        eta(state.labels.eta),
        k1(state.labels.kappa1),
        k2(state.labels.kappa2) {
    for (int m = 0; m < 3; ++m) {
      C1[m] = cosk(k1, q.x[m]);
      S1[m] = sink(k1, q.x[m]);
      C2[m] = cosk(k2, q.X[m]);
      S2[m] = sink(k2, q.X[m]);
      C1d[m] = cosk(k1, 2.0 * q.x[m]);
      S1d[m] = sink(k1, 2.0 * q.x[m]);
      C2d[m] = cosk(k2, 2.0 * q.X[m]);
      S2d[m] = sink(k2, 2.0 * q.X[m]);
      V1[m] = versink(k1, q.x[m]);
      V2[m] = versink(k2, q.X[m]);
    }
    SO = sink(eta * k1 * k1, 2.0 * q.S);
    VO = versink(eta * k1 * k1, 2.0 * q.S);
    so = sink(eta * k2 * k2, 2.0 * q.s);
    vo = versink(eta * k2 * k2, 2.0 * q.s);
  }

  double Ce(double t) const { return cosk(eta, t); }
  double Se(double t) const { return sink(eta, t); }
  CDScalar E(double t) const { return cd_exp_imag(t, eta); }
  // Sector phase sums through the variant's cyclic base.
  double omega(int i, int j, int k) const {
    return q.psi[i] + q.psi[j] + q.phi[k];
  }
  double Omega(int i, int j, int k) const {
    return q.phi[i] + q.phi[j] + q.psi[k];
  }
};

// Residual accumulation helpers. Each row carries its own normalization
// scale; the summary residual is the worst |row| / max(1, scale).
void push_row(LawEval* e, double* worst, double value, double scale) {
  e->rows.push_back(value);
  *worst = std::max(*worst, std::abs(value) / std::max(1.0, scale));
}

// Complex equation LHS = RHS, summarized by the Euclidean norm of the
// difference against max(1, |RHS|).
void push_complex(LawEval* e, CDScalar lhs, CDScalar rhs) {
  const CDScalar d = cd_sub(lhs, rhs);
  e->rows.push_back(d.re);
  e->rows.push_back(d.im);
  const double num = std::sqrt(cd_euclid_sq(d));
  const double den = std::max(1.0, std::sqrt(cd_euclid_sq(rhs)));
  e->residual = std::max(e->residual, num / den);
}

// Complex equation split into separately normalized real and imaginary rows.
void push_complex_split(LawEval* e, CDScalar lhs, CDScalar rhs) {
  const CDScalar d = cd_sub(lhs, rhs);
  e->rows.push_back(d.re);
  e->rows.push_back(d.im);
  e->residual = std::max(
      e->residual, std::abs(d.re) / std::max(1.0, std::abs(rhs.re)));
  e->residual = std::max(
      e->residual, std::abs(d.im) / std::max(1.0, std::abs(rhs.im)));
}

double max_abs(std::initializer_list<double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

// Renormalized Gramm determinants through their versine polynomial, which is
// regular for every label value.
double gamma_poly(const Ctx& c) {
  const double V0 = c.V1[0], Va = c.V1[1], Vb = c.V1[2];
  return 2.0 * (V0 * Va + Va * Vb + Vb * V0) - V0 * V0 - Va * Va - Vb * Vb -
         2.0 * c.eta * c.C1[0] * c.C1[1] * c.C1[2] * c.VO -
         2.0 * c.k1 * V0 * Va * Vb;
}

double Gamma_poly(const Ctx& c) {
  const double V0 = c.V2[0], Va = c.V2[1], Vb = c.V2[2];
  return 2.0 * (V0 * Va + Va * Vb + Vb * V0) - V0 * V0 - Va * Va - Vb * Vb -
         2.0 * c.eta * c.C2[0] * c.C2[1] * c.C2[2] * c.vo -
         2.0 * c.k2 * V0 * Va * Vb;
}

// ---------------------------------------------------------------------------
// Scalar law evaluation
// ---------------------------------------------------------------------------

LawEval eval_nine(int n, int v, const Ctx& c) {
  LawEval e;
  const int i = v, j = (v + 1) % 3, k = (v + 2) % 3;
  const auto& q = c.q;
  const auto E3 = [&](double t) { return c.E(t / 3.0); };
  const double k1 = c.k1, k2 = c.k2;
  CDScalar lhs{}, rhs{};
  switch (n) {
    case 1:
      lhs = cd_scale(c.C1[k], E3(2 * q.psi[i] + 2 * q.psi[j] + q.phi[k]));
      rhs = cd_sub(
          cd_scale(c.C1[i] * c.C1[j],
                   E3(-q.phi[i] - q.phi[j] - 2 * q.psi[k])),
          cd_scale(k1 * c.S1[i] * c.S1[j] * c.C2[k],
                   E3(-q.phi[i] - q.phi[j] + q.psi[k])));
      break;
    case 2:
      lhs = cd_scale(c.C2[k], E3(2 * q.phi[i] + 2 * q.phi[j] + q.psi[k]));
      rhs = cd_sub(
          cd_scale(c.C2[i] * c.C2[j],
                   E3(-q.psi[i] - q.psi[j] - 2 * q.phi[k])),
          cd_scale(k2 * c.S2[i] * c.S2[j] * c.C1[k],
                   E3(-q.psi[i] - q.psi[j] + q.phi[k])));
      break;
    case 3:
      lhs = cd_scale(c.S1[k] * c.S2[i],
                     E3(-q.psi[i] + 2 * q.psi[j] + q.phi[k]));
      rhs = cd_scale(c.S1[i] * c.S2[k],
                     E3(-q.phi[i] + 2 * q.phi[j] + q.psi[k]));
      break;
    case 4:
      lhs = cd_scale(c.S1[k] * c.S2[j],
                     E3(2 * q.psi[i] - q.psi[j] + q.phi[k]));
      rhs = cd_scale(c.S1[j] * c.S2[k],
                     E3(2 * q.phi[i] - q.phi[j] + q.psi[k]));
      break;
    case 5:
      lhs = cd_scale(c.S1[k] * c.C2[i],
                     E3(-q.psi[i] + 2 * q.psi[j] + q.phi[k]));
      rhs = cd_sub(
          cd_scale(-c.C1[i] * c.S1[j],
                   E3(-q.phi[i] - q.phi[j] - 2 * q.psi[k])),
          cd_scale(c.S1[i] * c.C1[j] * c.C2[k],
                   E3(-q.phi[i] - q.phi[j] + q.psi[k])));
      break;
    case 6:
      lhs = cd_scale(c.S1[k] * c.C2[j],
                     E3(2 * q.psi[i] - q.psi[j] + q.phi[k]));
      rhs = cd_sub(
          cd_scale(-c.C1[j] * c.S1[i],
                   E3(-q.phi[i] - q.phi[j] - 2 * q.psi[k])),
          cd_scale(c.S1[j] * c.C1[i] * c.C2[k],
                   E3(-q.phi[i] - q.phi[j] + q.psi[k])));
      break;
    case 7:
      lhs = cd_scale(c.S2[k] * c.C1[i],
                     E3(-q.phi[i] + 2 * q.phi[j] + q.psi[k]));
      rhs = cd_sub(
          cd_scale(-c.C2[i] * c.S2[j],
                   E3(-q.psi[i] - q.psi[j] - 2 * q.phi[k])),
          cd_scale(c.S2[i] * c.C2[j] * c.C1[k],
                   E3(-q.psi[i] - q.psi[j] + q.phi[k])));
      break;
    case 8:
      lhs = cd_scale(c.S2[k] * c.C1[j],
                     E3(2 * q.phi[i] - q.phi[j] + q.psi[k]));
      rhs = cd_sub(
          cd_scale(-c.C2[j] * c.S2[i],
                   E3(-q.psi[i] - q.psi[j] - 2 * q.phi[k])),
          cd_scale(c.S2[j] * c.C2[i] * c.C1[k],
                   E3(-q.psi[i] - q.psi[j] + q.phi[k])));
      break;
    case 9:
      lhs = cd_add(
          cd_scale(-k2 * c.S2[i] * c.S2[j],
                   E3(-q.psi[i] - q.psi[j] - 2 * q.phi[k])),
          cd_scale(c.C2[i] * c.C2[j] * c.C1[k],
                   E3(-q.psi[i] - q.psi[j] + q.phi[k])));
      rhs = cd_add(
          cd_scale(-k1 * c.S1[i] * c.S1[j],
                   E3(-q.phi[i] - q.phi[j] - 2 * q.psi[k])),
          cd_scale(c.C1[i] * c.C1[j] * c.C2[k],
                   E3(-q.phi[i] - q.phi[j] + q.psi[k])));
      break;
  }
  push_complex(&e, lhs, rhs);
  return e;
}

LawEval eval_scalar(LawTag tag, int v, const Ctx& c) {
  LawEval e;
  const int i = v, j = (v + 1) % 3, k = (v + 2) % 3;
  const auto& q = c.q;
  const double k1 = c.k1, k2 = c.k2, eta = c.eta;
  const double om = c.omega(i, j, k), Om = c.Omega(i, j, k);
  double worst = 0.0;

  // Quotient-form laws: require all original denominator factors away from
  // zero, then evaluate the denominator-cleared difference.
  const auto require = [&](std::initializer_list<double> dens) {
    for (double d : dens)
      if (std::abs(d) <= kDenFloor) e.applicable = false;
  };

  switch (tag) {
    case LawTag::t0ij: {
      const double u = q.phi[i] - q.psi[i], w = q.phi[j] - q.psi[j];
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::omega_area:
      push_row(&e, &worst, om - 2.0 * k1 * q.S,
               max_abs({q.psi[i], q.psi[j], q.phi[k], 2.0 * k1 * q.S}));
      break;
    case LawTag::Omega_coarea:
      push_row(&e, &worst, Om - 2.0 * k2 * q.s,
               max_abs({q.phi[i], q.phi[j], q.psi[k], 2.0 * k2 * q.s}));
      break;
    case LawTag::t1i: {
      const CDScalar lhs = cd_scale(c.C1[i], c.E(om));
      const CDScalar rhs =
          cd_sub(CDScalar{c.C1[j] * c.C1[k], 0.0},
                 cd_scale(k1 * c.S1[j] * c.S1[k] * c.C2[i], c.E(q.psi[i])));
      push_complex_split(&e, lhs, rhs);
      return e;
    }
    case LawTag::t1I: {
      const CDScalar lhs = cd_scale(c.C2[i], c.E(Om));
      const CDScalar rhs =
          cd_sub(CDScalar{c.C2[j] * c.C2[k], 0.0},
                 cd_scale(k2 * c.S2[j] * c.S2[k] * c.C1[i], c.E(q.phi[i])));
      push_complex_split(&e, lhs, rhs);
      return e;
    }
    case LawTag::t2ij: {
      const double u = c.S1[i] * c.S2[j], w = c.S1[j] * c.S2[i];
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::t3iJ: {
      const CDScalar lhs = cd_scale(c.S1[i] * c.C2[j], c.E(q.phi[k]));
      const CDScalar rhs =
          cd_sub(cd_scale(-c.C1[j] * c.S1[k], c.E(-q.psi[i])),
                 CDScalar{c.S1[j] * c.C1[k] * c.C2[i], 0.0});
      push_complex(&e, lhs, rhs);
      return e;
    }
    case LawTag::t3Ij: {
      const CDScalar lhs = cd_scale(c.S2[i] * c.C1[j], c.E(q.psi[k]));
      const CDScalar rhs =
          cd_sub(cd_scale(-c.C2[j] * c.S2[k], c.E(-q.phi[i])),
                 CDScalar{c.S2[j] * c.C2[k] * c.C1[i], 0.0});
      push_complex(&e, lhs, rhs);
      return e;
    }
    case LawTag::t4ij: {
      const CDScalar lhs =
          cd_add(CDScalar{-k2 * c.S2[i] * c.S2[j], 0.0},
                 cd_scale(c.C2[i] * c.C2[j] * c.C1[k], c.E(q.phi[k])));
      const CDScalar rhs =
          cd_add(CDScalar{-k1 * c.S1[i] * c.S1[j], 0.0},
                 cd_scale(c.C1[i] * c.C1[j] * c.C2[k], c.E(q.psi[k])));
      push_complex(&e, lhs, rhs);
      return e;
    }
    case LawTag::sr_cos: {
      const double m = c.C1[j] * c.C1[k] -
                       k1 * c.S1[j] * c.S1[k] * c.C2[i] * c.Ce(q.psi[i]);
      const double w2 = eta * k1 * k1 * c.S1[j] * c.S1[j] * c.S1[k] *
                        c.S1[k] * c.C2[i] * c.C2[i] * c.Se(q.psi[i]) *
                        c.Se(q.psi[i]);
      const double lhs = c.C1[i] * c.C1[i];
      push_row(&e, &worst, lhs - (m * m + w2), max_abs({lhs, m * m, w2}));
      break;
    }
    case LawTag::sr_cos2: {
      const double t1 = c.C1d[j] * c.C1d[k];
      const double t2 =
          k1 * c.S1d[j] * c.S1d[k] * c.C2[i] * c.Ce(q.psi[i]);
      const double t3 = 2.0 * k1 * k1 * k2 * c.S1[j] * c.S1[j] * c.S1[k] *
                        c.S1[k] * c.S2[i] * c.S2[i];
      push_row(&e, &worst, c.C1d[i] - (t1 - t2 - t3),
               max_abs({c.C1d[i], t1, t2, t3}));
      break;
    }
    case LawTag::sr_dualcos: {
      const double m = c.C2[j] * c.C2[k] -
                       k2 * c.S2[j] * c.S2[k] * c.C1[i] * c.Ce(q.phi[i]);
      const double w2 = eta * k2 * k2 * c.S2[j] * c.S2[j] * c.S2[k] *
                        c.S2[k] * c.C1[i] * c.C1[i] * c.Se(q.phi[i]) *
                        c.Se(q.phi[i]);
      const double lhs = c.C2[i] * c.C2[i];
      push_row(&e, &worst, lhs - (m * m + w2), max_abs({lhs, m * m, w2}));
      break;
    }
    case LawTag::sr_dualcos2: {
      const double t1 = c.C2d[j] * c.C2d[k];
      const double t2 =
          k2 * c.S2d[j] * c.S2d[k] * c.C1[i] * c.Ce(q.phi[i]);
      const double t3 = 2.0 * k1 * k2 * k2 * c.S2[j] * c.S2[j] * c.S2[k] *
                        c.S2[k] * c.S1[i] * c.S1[i];
      push_row(&e, &worst, c.C2d[i] - (t1 - t2 - t3),
               max_abs({c.C2d[i], t1, t2, t3}));
      break;
    }
    case LawTag::bt_cos: {
      const double t1 = c.C1[j] * c.C1[j] * c.C1[k] * c.C1[k];
      const double t2 = k1 * k1 * c.S1[j] * c.S1[j] * c.S1[k] * c.S1[k] *
                        c.C2[i] * c.C2[i];
      const double t3 = 2.0 * c.C1[i] * c.C1[j] * c.C1[k] * c.Ce(om);
      const double lhs = c.C1[i] * c.C1[i];
      push_row(&e, &worst, lhs - (-t1 + t2 + t3), max_abs({lhs, t1, t2, t3}));
      break;
    }
    case LawTag::bt_dualcos: {
      const double t1 = c.C2[j] * c.C2[j] * c.C2[k] * c.C2[k];
      const double t2 = k2 * k2 * c.S2[j] * c.S2[j] * c.S2[k] * c.S2[k] *
                        c.C1[i] * c.C1[i];
      const double t3 = 2.0 * c.C2[i] * c.C2[j] * c.C2[k] * c.Ce(Om);
      const double lhs = c.C2[i] * c.C2[i];
      push_row(&e, &worst, lhs - (-t1 + t2 + t3), max_abs({lhs, t1, t2, t3}));
      break;
    }
    case LawTag::sr_sin2: {
      require({c.Se(q.psi[i]) * c.C2[i], c.Se(q.psi[j]) * c.C2[j]});
      const double u = c.S1d[i] * c.Se(q.psi[j]) * c.C2[j];
      const double w = c.S1d[j] * c.Se(q.psi[i]) * c.C2[i];
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::sr_dualsin2: {
      require({c.Se(q.phi[i]) * c.C1[i], c.Se(q.phi[j]) * c.C1[j]});
      const double u = c.S2d[i] * c.Se(q.phi[j]) * c.C1[j];
      const double w = c.S2d[j] * c.Se(q.phi[i]) * c.C1[i];
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::ss: {
      require({c.Se(q.phi[i]) * c.Se(q.psi[i]),
               c.Se(q.phi[j]) * c.Se(q.psi[j])});
      const double u = c.S1[i] * c.S2[i] * c.Se(q.phi[j]) * c.Se(q.psi[j]);
      const double w = c.S1[j] * c.S2[j] * c.Se(q.phi[i]) * c.Se(q.psi[i]);
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::cT: {
      require({c.Se(q.psi[i]), c.C2[i], c.Se(q.psi[j]), c.C2[j]});
      const double u = c.C1[i] * c.S2[i] * c.Se(q.psi[j]) * c.C2[j];
      const double w = c.C1[j] * c.S2[j] * c.Se(q.psi[i]) * c.C2[i];
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::Ct: {
      require({c.Se(q.phi[i]), c.C1[i], c.Se(q.phi[j]), c.C1[j]});
      const double u = c.C2[i] * c.S1[i] * c.Se(q.phi[j]) * c.C1[j];
      const double w = c.C2[j] * c.S1[j] * c.Se(q.phi[i]) * c.C1[i];
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::cc: {
      require({c.Se(q.psi[i]), c.Se(om - q.psi[i])});
      const double u = -c.C1[i] * c.Se(om - q.psi[i]);
      const double w = c.C1[j] * c.C1[k] * c.Se(q.psi[i]);
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::CC: {
      require({c.Se(q.phi[i]), c.Se(Om - q.phi[i])});
      const double u = -c.C2[i] * c.Se(Om - q.phi[i]);
      const double w = c.C2[j] * c.C2[k] * c.Se(q.phi[i]);
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::Tc: {
      require({c.C2[i], c.Se(q.psi[i]), c.C2[k], c.Se(om - q.psi[k])});
      const double u = -c.S2[i] * c.C2[k] * c.Se(om - q.psi[k]);
      const double w = c.S2[k] * c.C2[i] * c.C1[j] * c.Se(q.psi[i]);
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::Tc2: {
      require({c.C2[k], c.Se(q.psi[k]), c.C2[j], c.Se(om - q.psi[j])});
      const double u = -c.S2[k] * c.C2[j] * c.Se(om - q.psi[j]);
      const double w = c.S2[j] * c.C2[k] * c.C1[i] * c.Se(q.psi[k]);
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::tC: {
      require({c.C1[i], c.Se(q.phi[i]), c.C1[k], c.Se(Om - q.phi[k])});
      const double u = -c.S1[i] * c.C1[k] * c.Se(Om - q.phi[k]);
      const double w = c.S1[k] * c.C1[i] * c.C2[j] * c.Se(q.phi[i]);
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::tC2: {
      require({c.C1[k], c.Se(q.phi[k]), c.C1[j], c.Se(Om - q.phi[j])});
      const double u = -c.S1[k] * c.C1[j] * c.Se(Om - q.phi[j]);
      const double w = c.S1[j] * c.C1[k] * c.C2[i] * c.Se(q.phi[k]);
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::c_euler: {
      require({c.Se(q.psi[i]), c.Se(q.psi[j])});
      const double u =
          c.C1[k] * c.C1[k] * c.Se(q.psi[i]) * c.Se(q.psi[j]);
      const double w = c.Se(om - q.psi[i]) * c.Se(om - q.psi[j]);
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::C_euler: {
      require({c.Se(q.phi[i]), c.Se(q.phi[j])});
      const double u =
          c.C2[k] * c.C2[k] * c.Se(q.phi[i]) * c.Se(q.phi[j]);
      const double w = c.Se(Om - q.phi[i]) * c.Se(Om - q.phi[j]);
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::s_euler: {
      require({c.Se(q.psi[i]), c.Se(q.psi[j])});
      const double u =
          c.S1[k] * c.S1[k] * c.Se(q.psi[i]) * c.Se(q.psi[j]);
      const double w = -c.Se(q.phi[k]) * c.SO;
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::S_euler: {
      require({c.Se(q.phi[i]), c.Se(q.phi[j])});
      const double u =
          c.S2[k] * c.S2[k] * c.Se(q.phi[i]) * c.Se(q.phi[j]);
      const double w = -c.Se(q.psi[k]) * c.so;
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::gramm_gamma: {
      const double g = gamma_poly(c);
      const double p = k2 * c.S1[i] * c.S1[i] * c.S2[j] * c.S2[j] *
                       c.S1[k] * c.S1[k];
      push_row(&e, &worst, g - p, max_abs({g, p}));
      break;
    }
    case LawTag::gramm_Gamma: {
      const double g = Gamma_poly(c);
      const double p = k1 * c.S2[i] * c.S2[i] * c.S1[j] * c.S1[j] *
                       c.S2[k] * c.S2[k];
      push_row(&e, &worst, g - p, max_abs({g, p}));
      break;
    }
    case LawTag::t1i_prime: {
      const double lhs1 = c.V1[i] - versink(k1, q.x[j] + q.x[k]);
      const double t1 = c.S1[j] * c.S1[k] * (c.C2[i] * c.Ce(q.psi[i]) - 1.0);
      const double t2 = eta * k1 * c.VO * c.C1[i];
      push_row(&e, &worst, lhs1 - (t1 - t2), max_abs({lhs1, t1, t2}));
      const double u = c.C1[i] * c.SO;
      const double w = -c.S1[j] * c.S1[k] * c.C2[i] * c.Se(q.psi[i]);
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::t1I_prime: {
      const double lhs1 = c.V2[i] - versink(k2, q.X[j] + q.X[k]);
      const double t1 = c.S2[j] * c.S2[k] * (c.C1[i] * c.Ce(q.phi[i]) - 1.0);
      const double t2 = eta * k2 * c.vo * c.C2[i];
      push_row(&e, &worst, lhs1 - (t1 - t2), max_abs({lhs1, t1, t2}));
      const double u = c.C2[i] * c.so;
      const double w = -c.S2[j] * c.S2[k] * c.C1[i] * c.Se(q.phi[i]);
      push_row(&e, &worst, u - w, max_abs({u, w}));
      break;
    }
    case LawTag::zero_eta_nonzero: {
      e.applicable = (k1 == 0.0 && k2 == 0.0 && eta != 0.0);
      push_row(&e, &worst, q.psi[i] - q.phi[i],
               max_abs({q.psi[i], q.phi[i]}));
      push_row(&e, &worst, q.x[i] * q.X[j] - q.x[j] * q.X[i],
               max_abs({q.x[i] * q.X[j], q.x[j] * q.X[i]}));
      {
        const double t1 = q.x[j] * q.x[j] + q.x[k] * q.x[k];
        const double t2 = 2.0 * q.x[j] * q.x[k] * c.Ce(q.psi[i]);
        push_row(&e, &worst, q.x[i] * q.x[i] - t1 - t2,
                 max_abs({q.x[i] * q.x[i], t1, t2}));
      }
      {
        const double t1 = q.X[j] * q.X[j] + q.X[k] * q.X[k];
        const double t2 = 2.0 * q.X[j] * q.X[k] * c.Ce(q.phi[i]);
        push_row(&e, &worst, q.X[i] * q.X[i] - t1 - t2,
                 max_abs({q.X[i] * q.X[i], t1, t2}));
      }
      push_row(&e, &worst, 2.0 * q.S + q.x[j] * q.x[k] * c.Se(q.psi[i]),
               max_abs({2.0 * q.S, q.x[j] * q.x[k] * c.Se(q.psi[i])}));
      push_row(&e, &worst, 2.0 * q.s + q.X[j] * q.X[k] * c.Se(q.phi[i]),
               max_abs({2.0 * q.s, q.X[j] * q.X[k] * c.Se(q.phi[i])}));
      break;
    }
    case LawTag::zero_eta_zero: {
      e.applicable = (k1 == 0.0 && k2 == 0.0 && eta == 0.0);
      push_row(&e, &worst, q.psi[i] - q.phi[i],
               max_abs({q.psi[i], q.phi[i]}));
      push_row(&e, &worst, q.x[i] * q.X[j] - q.x[j] * q.X[i],
               max_abs({q.x[i] * q.X[j], q.x[j] * q.X[i]}));
      push_row(&e, &worst, q.x[0] + q.x[1] + q.x[2],
               max_abs({q.x[0], q.x[1], q.x[2]}));
      push_row(&e, &worst, q.X[0] + q.X[1] + q.X[2],
               max_abs({q.X[0], q.X[1], q.X[2]}));
      push_row(&e, &worst, q.x[i] * q.psi[j] - q.x[j] * q.psi[i],
               max_abs({q.x[i] * q.psi[j], q.x[j] * q.psi[i]}));
      push_row(&e, &worst, 2.0 * q.S + q.x[j] * q.x[k] * q.psi[i],
               max_abs({2.0 * q.S, q.x[j] * q.x[k] * q.psi[i]}));
      push_row(&e, &worst, 2.0 * q.s + q.X[j] * q.X[k] * q.phi[i],
               max_abs({2.0 * q.s, q.X[j] * q.X[k] * q.phi[i]}));
      break;
    }
    case LawTag::collinear_reduced: {
      const double t1 = c.C1d[i] * c.C1d[k];
      const double t2 = k1 * c.S1d[i] * c.S1d[k] * c.Ce(q.psi[j]);
      push_row(&e, &worst, c.C1d[j] - t1 + t2, max_abs({c.C1d[j], t1, t2}));
      const double u = c.S1d[i] * c.Se(q.psi[j]);
      const double w = c.S1d[j] * c.Se(q.psi[i]);
      push_row(&e, &worst, u - w, max_abs({u, w}));
      push_row(&e, &worst, Om, max_abs({q.phi[i], q.phi[j], q.psi[k]}));
      push_row(&e, &worst, (q.psi[i] - q.phi[i]) - om,
               max_abs({q.psi[i] - q.phi[i], om}));
      break;
    }
    case LawTag::concurrent_reduced: {
      const double t1 = c.C2d[i] * c.C2d[k];
      const double t2 = k2 * c.S2d[i] * c.S2d[k] * c.Ce(q.phi[j]);
      push_row(&e, &worst, c.C2d[j] - t1 + t2, max_abs({c.C2d[j], t1, t2}));
      const double u = c.S2d[i] * c.Se(q.phi[j]);
      const double w = c.S2d[j] * c.Se(q.phi[i]);
      push_row(&e, &worst, u - w, max_abs({u, w}));
      push_row(&e, &worst, om, max_abs({q.psi[i], q.psi[j], q.phi[k]}));
      push_row(&e, &worst, (q.phi[i] - q.psi[i]) - Om,
               max_abs({q.phi[i] - q.psi[i], Om}));
      break;
    }
    case LawTag::purely_real_reduced: {
      const double r_psi = std::copysign(1.0, c.Ce(q.psi[i]));
      const double r_phi = std::copysign(1.0, c.Ce(q.phi[i]));
      const double r_om = std::copysign(1.0, c.Ce(om));
      const double r_Om = std::copysign(1.0, c.Ce(Om));
      {
        const double t1 = c.C1[j] * c.C1[k];
        const double t2 = k1 * c.S1[j] * c.S1[k] * c.C2[i] * r_psi;
        push_row(&e, &worst, c.C1[i] * r_om - t1 + t2,
                 max_abs({c.C1[i], t1, t2}));
      }
      {
        const double t1 = c.C2[j] * c.C2[k];
        const double t2 = k2 * c.S2[j] * c.S2[k] * c.C1[i] * r_phi;
        push_row(&e, &worst, c.C2[i] * r_Om - t1 + t2,
                 max_abs({c.C2[i], t1, t2}));
      }
      push_row(&e, &worst, c.Se(q.psi[i]), 1.0);
      push_row(&e, &worst, c.Se(q.phi[i]), 1.0);
      break;
    }
    default:
      break;
  }
  e.residual = worst;
  return e;
}

// ---------------------------------------------------------------------------
// Matrix law evaluation
// ---------------------------------------------------------------------------

GroupElement conj_flow(const GroupElement& w, const GroupElement& g) {
  return group_mul(group_mul(w, g), group_inverse(w));
}

Mat3 conj_alg(const GroupElement& w, const Mat3& g) {
  const double eta = w.labels.eta;
  return mat_mul(w.matrix, mat_mul(g, group_inverse(w).matrix, eta), eta);
}

// Partial flow words of the triangle: the prefixes of the closure word that
// transport the canonical generator pairs to the other vertices and sides.
struct FlowChain {
  GroupElement W1, W2, W3, W4;
};

FlowChain flow_chain(const TriangleData& t) {
  FlowChain f;
  f.W1 = turn_flow(t.C, t.psi_C, t.labels);
  f.W2 = group_mul(f.W1, side_flow(t.b, t.phi_b, t.labels));
  f.W3 = group_mul(f.W2, turn_flow(-t.A, -t.psi_A, t.labels));
  f.W4 = group_mul(f.W3, side_flow(t.c, t.phi_c, t.labels));
  return f;
}

void push_mat_dev(LawEval* e, const Mat3& got, const Mat3& want) {
  const Mat3 d = mat_sub(got, want);
  for (int m = 0; m < 9; ++m) {
    e->rows.push_back(d.m[static_cast<size_t>(m)].re);
    e->rows.push_back(d.m[static_cast<size_t>(m)].im);
  }
  e->residual = std::max(
      e->residual, mat_max_dev(got, want) / std::max(1.0, mat_max_abs(want)));
}

LawEval eval_matrix(LawTag tag, int v, const TriangleData& t) {
  LawEval e;
  const SpaceLabels& L = t.labels;

  if (tag == LawTag::basic_identity) {
    const CompactTriangle q = compact(t);
    const int i = v, j = (v + 1) % 3, k = (v + 2) % 3;
    GroupElement M = side_flow(q.x[i], q.phi[i], L);
    M = group_mul(M, turn_flow(q.X[k], q.psi[k], L));
    M = group_mul(M, side_flow(q.x[j], q.phi[j], L));
    M = group_mul(M, turn_flow(q.X[i], q.psi[i], L));
    M = group_mul(M, side_flow(q.x[k], q.phi[k], L));
    M = group_mul(M, turn_flow(q.X[j], q.psi[j], L));
    push_mat_dev(&e, M.matrix, mat_identity());
    e.residual = mat_max_dev(M.matrix, mat_identity()) /
                 std::max(1.0, mat_max_abs(M.matrix));
    return e;
  }

  const FlowChain f = flow_chain(t);

  if (tag == LawTag::loop_point) {
    const double D = -t.A + t.B + t.C;
    const double Dpsi = -t.psi_A + t.psi_B + t.psi_C;
    const GroupElement Fa = side_flow(-t.a, -t.phi_a, L);
    const GroupElement Fb = conj_flow(f.W1, side_flow(t.b, t.phi_b, L));
    const GroupElement Fc = conj_flow(f.W3, side_flow(t.c, t.phi_c, L));
    const GroupElement TD = turn_flow(D, Dpsi, L);
    GroupElement M = group_identity(L);
    if (v == 0)
      M = group_mul(group_mul(group_mul(Fa, Fc), Fb), TD);
    else if (v == 1)
      M = group_mul(group_mul(group_mul(Fb, Fa), Fc), conj_flow(f.W2, TD));
    else
      M = group_mul(group_mul(group_mul(Fc, Fb), Fa), conj_flow(f.W4, TD));
    push_mat_dev(&e, M.matrix, mat_identity());
    e.residual = mat_max_dev(M.matrix, mat_identity()) /
                 std::max(1.0, mat_max_abs(M.matrix));
    return e;
  }

  if (tag == LawTag::loop_line) {
    const double d = -t.a + t.b + t.c;
    const double dphi = -t.phi_a + t.phi_b + t.phi_c;
    const GroupElement TA = conj_flow(f.W2, turn_flow(-t.A, -t.psi_A, L));
    const GroupElement TB = conj_flow(f.W4, turn_flow(t.B, t.psi_B, L));
    const GroupElement TC = turn_flow(t.C, t.psi_C, L);
    const GroupElement SD = side_flow(d, dphi, L);
    GroupElement M = group_identity(L);
    if (v == 0)
      M = group_mul(group_mul(group_mul(TA, TC), TB), conj_flow(f.W3, SD));
    else if (v == 1)
      M = group_mul(group_mul(group_mul(TB, TA), TC), SD);
    else
      M = group_mul(group_mul(group_mul(TC, TB), TA), conj_flow(f.W1, SD));
    push_mat_dev(&e, M.matrix, mat_identity());
    e.residual = mat_max_dev(M.matrix, mat_identity()) /
                 std::max(1.0, mat_max_abs(M.matrix));
    return e;
  }

  // compat: transported generator pairs match their closed-form transports.
  const ConjugatedGenerators g = conjugated_generators(t);
  const GroupElement FC = turn_flow(t.C, t.psi_C, L);
  const GroupElement FcC = conj_flow(f.W3, side_flow(t.c, t.phi_c, L));
  const GroupElement FA = conj_flow(f.W2, turn_flow(-t.A, -t.psi_A, L));
  const GroupElement Fa = side_flow(-t.a, -t.phi_a, L);
  const GroupElement FB = conj_flow(f.W4, turn_flow(t.B, t.psi_B, L));
  const GroupElement Fb = conj_flow(f.W1, side_flow(t.b, t.phi_b, L));
  if (v == 0) {
    push_mat_dev(&e, g.P_b.matrix, conj_alg(FC, g.P_a.matrix));
    push_mat_dev(&e, g.T_b.matrix, conj_alg(FC, g.T_a.matrix));
    push_mat_dev(&e, g.J_B.matrix, conj_alg(FcC, g.J_A.matrix));
    push_mat_dev(&e, g.I_B.matrix, conj_alg(FcC, g.I_A.matrix));
  } else if (v == 1) {
    push_mat_dev(&e, g.P_c.matrix, conj_alg(FA, g.P_b.matrix));
    push_mat_dev(&e, g.T_c.matrix, conj_alg(FA, g.T_b.matrix));
    push_mat_dev(&e, g.J_C.matrix, conj_alg(Fa, g.J_B.matrix));
    push_mat_dev(&e, g.I_C.matrix, conj_alg(Fa, g.I_B.matrix));
  } else {
    push_mat_dev(&e, g.P_a.matrix, conj_alg(FB, g.P_c.matrix));
    push_mat_dev(&e, g.T_a.matrix, conj_alg(FB, g.T_c.matrix));
    push_mat_dev(&e, g.J_A.matrix, conj_alg(Fb, g.J_C.matrix));
    push_mat_dev(&e, g.I_A.matrix, conj_alg(Fb, g.I_C.matrix));
  }
  return e;
}

bool is_matrix_tag(LawTag tag) {
  return tag == LawTag::basic_identity || tag == LawTag::loop_point ||
         tag == LawTag::loop_line || tag == LawTag::compat;
}

bool is_special_tag(LawTag tag) {
  return tag == LawTag::collinear_reduced ||
         tag == LawTag::concurrent_reduced ||
         tag == LawTag::purely_real_reduced;
}

TriangleClass tag_class(LawTag tag) {
  switch (tag) {
    case LawTag::collinear_reduced:
      return TriangleClass::collinear;
    case LawTag::concurrent_reduced:
      return TriangleClass::concurrent;
    case LawTag::purely_real_reduced:
      return TriangleClass::purely_real;
    default:
      return TriangleClass::generic;
  }
}

// Registry function-pointer shims.
template <int N>
double registry_residual(const QuantState& q, int v) {
  return evaluate_law(LawId{kTags[N], v}, q).residual;
}
template <int N>
bool registry_applicable(const QuantState& q, int v) {
  return evaluate_law(LawId{kTags[N], v}, q).applicable;
}

template <int... Ns>
std::vector<LawInfo> make_registry(std::integer_sequence<int, Ns...>) {
  return {LawInfo{kTags[Ns], kTagNames[Ns], kLawVariants,
                  &registry_applicable<Ns>, &registry_residual<Ns>}...};
}

void append_tag(LawResidualReport* r, LawTag tag, const QuantState& q,
                double tol) {
  for (int v = 0; v < kLawVariants; ++v) {
    const LawEval e = evaluate_law(LawId{tag, v}, q);
    LawEntry entry;
    entry.residual = e.residual;
    entry.applicable = e.applicable;
    entry.pass = !e.applicable || e.residual <= tol;
    r->entries.push_back({LawId{tag, v}, entry});
  }
}

} // namespace

// ---------------------------------------------------------------------------
// Names and ids
// ---------------------------------------------------------------------------

const char* law_tag_name(LawTag tag) {
  return kTagNames[static_cast<int>(tag)];
}

std::optional<LawTag> law_tag_from_name(const std::string& name) {
  for (int m = 0; m < kTagCount; ++m)
    if (name == kTagNames[m]) return kTags[m];
  return std::nullopt;
}

std::vector<LawTag> all_law_tags() {
  return std::vector<LawTag>(kTags, kTags + kTagCount);
}

std::string law_id_string(const LawId& id) {
  static const char* suffix[3] = {"i", "j", "k"};
  return std::string(law_tag_name(id.tag)) + "_" + suffix[id.variant % 3];
}

std::optional<LawId> law_id_from_string(const std::string& s) {
  const auto pos = s.rfind('_');
  if (pos != std::string::npos && pos + 2 == s.size()) {
    const char c = s[pos + 1];
    const int v = (c == 'i') ? 0 : (c == 'j') ? 1 : (c == 'k') ? 2 : -1;
    if (v >= 0) {
      if (auto tag = law_tag_from_name(s.substr(0, pos)))
        return LawId{*tag, v};
    }
  }
  if (auto tag = law_tag_from_name(s)) return LawId{*tag, 0};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// State embedding
// ---------------------------------------------------------------------------

QuantState quant_state(const TriangleData& t) {
  const CompactTriangle c = compact(t);
  const DerivedInvariants d = derived(t);
  QuantState q;
  q.labels = t.labels;
  q.x = c.x;
  q.X = c.X;
  q.phi = c.phi;
  q.psi = c.psi;
  q.S = d.S;
  q.s = d.s;
  return q;
}

TriangleData triangle_from_quant(const QuantState& q) {
  TriangleData t;
  t.labels = q.labels;
  t.a = -q.x[0];
  t.b = q.x[1];
  t.c = q.x[2];
  t.phi_a = -q.phi[0];
  t.phi_b = q.phi[1];
  t.phi_c = q.phi[2];
  t.A = -q.X[0];
  t.B = q.X[1];
  t.C = q.X[2];
  t.psi_A = -q.psi[0];
  t.psi_B = q.psi[1];
  t.psi_C = q.psi[2];
  return t;
}

// ---------------------------------------------------------------------------
// Evaluation dispatch
// ---------------------------------------------------------------------------

LawEval evaluate_law(const LawId& id, const QuantState& q) {
  const int v = ((id.variant % 3) + 3) % 3;
  if (is_matrix_tag(id.tag)) return eval_matrix(id.tag, v, triangle_from_quant(q));
  const Ctx c(q);
  const int tag_index = static_cast<int>(id.tag);
  const int nine_first = static_cast<int>(LawTag::nine_1);
  const int nine_last = static_cast<int>(LawTag::nine_9);
  if (tag_index >= nine_first && tag_index <= nine_last)
    return eval_nine(tag_index - nine_first + 1, v, c);
  LawEval e = eval_scalar(id.tag, v, c);
  if (is_special_tag(id.tag)) {
    const TriangleClass tc = classify_special(triangle_from_quant(q));
    e.applicable = (tc == tag_class(id.tag));
  }
  return e;
}

const std::vector<LawInfo>& law_registry() {
  static const std::vector<LawInfo> table =
      make_registry(std::make_integer_sequence<int, kTagCount>{});
  return table;
}

// ---------------------------------------------------------------------------
// Report helpers
// ---------------------------------------------------------------------------

double LawResidualReport::max_residual() const {
  double m = 0.0;
  for (const auto& [id, entry] : entries)
    if (entry.applicable) m = std::max(m, entry.residual);
  return m;
}

int LawResidualReport::pass_count() const {
  int n = 0;
  for (const auto& [id, entry] : entries)
    if (entry.applicable && entry.pass) ++n;
  return n;
}

int LawResidualReport::fail_count() const {
  int n = 0;
  for (const auto& [id, entry] : entries)
    if (entry.applicable && !entry.pass) ++n;
  return n;
}

const LawEntry* LawResidualReport::find(LawTag tag, int variant) const {
  for (const auto& [id, entry] : entries)
    if (id.tag == tag && id.variant == variant) return &entry;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Grouped operations
// ---------------------------------------------------------------------------

double residual_basic(const TriangleData& t) { return closure_residual(t); }

std::array<double, 9> residual_nine(const TriangleData& t) {
  const QuantState q = quant_state(t);
  std::array<double, 9> out{};
  for (int n = 0; n < 9; ++n) {
    const LawTag tag =
        static_cast<LawTag>(static_cast<int>(LawTag::nine_1) + n);
    for (int v = 0; v < kLawVariants; ++v)
      out[n] = std::max(out[n], evaluate_law(LawId{tag, v}, q).residual);
  }
  return out;
}

LawResidualReport residual_final(const TriangleData& t, double tol) {
  const QuantState q = quant_state(t);
  LawResidualReport r;
  for (LawTag tag : {LawTag::t0ij, LawTag::omega_area, LawTag::Omega_coarea,
                     LawTag::t1i, LawTag::t1I, LawTag::t2ij, LawTag::t3iJ,
                     LawTag::t3Ij, LawTag::t4ij})
    append_tag(&r, tag, q, tol);
  return r;
}

LawResidualReport residual_named(const TriangleData& t, double tol) {
  const QuantState q = quant_state(t);
  LawResidualReport r;
  for (LawTag tag :
       {LawTag::sr_cos, LawTag::sr_cos2, LawTag::sr_dualcos,
        LawTag::sr_dualcos2, LawTag::bt_cos, LawTag::bt_dualcos,
        LawTag::sr_sin2, LawTag::sr_dualsin2, LawTag::ss, LawTag::cT,
        LawTag::Ct, LawTag::cc, LawTag::CC, LawTag::Tc, LawTag::Tc2,
        LawTag::tC, LawTag::tC2, LawTag::c_euler, LawTag::C_euler,
        LawTag::s_euler, LawTag::S_euler, LawTag::gramm_gamma,
        LawTag::gramm_Gamma})
    append_tag(&r, tag, q, tol);
  return r;
}

LawResidualReport residual_loops(const TriangleData& t, double tol) {
  const QuantState q = quant_state(t);
  LawResidualReport r;
  for (LawTag tag : {LawTag::loop_point, LawTag::loop_line, LawTag::compat})
    append_tag(&r, tag, q, tol);
  return r;
}

LawResidualReport residual_contracted(const TriangleData& t, double tol) {
  const QuantState q = quant_state(t);
  LawResidualReport r;
  for (LawTag tag : {LawTag::t1i_prime, LawTag::t1I_prime,
                     LawTag::zero_eta_nonzero, LawTag::zero_eta_zero})
    append_tag(&r, tag, q, tol);
  return r;
}

LawResidualReport residual_special(const TriangleData& t, double tol) {
  const TriangleClass tc = classify_special(t);
  if (tc == TriangleClass::generic)
    throw error(errc::not_special,
                "special-configuration laws require a collinear, concurrent, "
                "or purely real triangle");
  const QuantState q = quant_state(t);
  LawResidualReport r;
  LawTag tag = LawTag::collinear_reduced;
  if (tc == TriangleClass::concurrent) tag = LawTag::concurrent_reduced;
  if (tc == TriangleClass::purely_real) tag = LawTag::purely_real_reduced;
  append_tag(&r, tag, q, tol);
  return r;
}

LawResidualReport evaluate_all(const TriangleData& t, double tol) {
  const QuantState q = quant_state(t);
  LawResidualReport r;
  append_tag(&r, LawTag::basic_identity, q, tol);
  for (int n = 0; n < 9; ++n)
    append_tag(&r,
               static_cast<LawTag>(static_cast<int>(LawTag::nine_1) + n), q,
               tol);
  for (const auto& part :
       {residual_final(t, tol), residual_named(t, tol), residual_loops(t, tol),
        residual_contracted(t, tol)})
    r.entries.insert(r.entries.end(), part.entries.begin(),
                     part.entries.end());
  if (classify_special(t) != TriangleClass::generic) {
    const LawResidualReport sp = residual_special(t, tol);
    r.entries.insert(r.entries.end(), sp.entries.begin(), sp.entries.end());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Transported generators
// ---------------------------------------------------------------------------

ConjugatedGenerators conjugated_generators(const TriangleData& t) {
  const SpaceLabels& L = t.labels;
  const FlowChain f = flow_chain(t);
  ConjugatedGenerators g{
      rep(Gen::P1, L), rep(Gen::T1, L), rep(Gen::P1, L), rep(Gen::T1, L),
      rep(Gen::P1, L), rep(Gen::T1, L), rep(Gen::J, L),  rep(Gen::I, L),
      rep(Gen::J, L),  rep(Gen::I, L),  rep(Gen::J, L),  rep(Gen::I, L)};
  g.P_b.matrix = conj_alg(f.W1, g.P_a.matrix);
  g.T_b.matrix = conj_alg(f.W1, g.T_a.matrix);
  g.J_A.matrix = conj_alg(f.W2, g.J_C.matrix);
  g.I_A.matrix = conj_alg(f.W2, g.I_C.matrix);
  g.P_c.matrix = conj_alg(f.W3, g.P_a.matrix);
  g.T_c.matrix = conj_alg(f.W3, g.T_a.matrix);
  g.J_B.matrix = conj_alg(f.W4, g.J_C.matrix);
  g.I_B.matrix = conj_alg(f.W4, g.I_C.matrix);
  return g;
}

// ---------------------------------------------------------------------------
// Independent equation set
// ---------------------------------------------------------------------------

std::vector<LawId> independent_set(const SpaceLabels& labels) {
  const bool z1 = labels.kappa1 == 0.0, z2 = labels.kappa2 == 0.0;
  std::vector<LawId> out;
  if (!z1 || !z2) {
    out.push_back({LawTag::t0ij, 0});
    out.push_back({LawTag::t0ij, 1});
    out.push_back({LawTag::omega_area, 0});
    out.push_back({LawTag::Omega_coarea, 0});
    const LawTag six = (!z1 && !z2)  ? LawTag::t1i
                       : z1          ? LawTag::t1i_prime
                                     : LawTag::t1I_prime;
    for (int v = 0; v < 3; ++v) out.push_back({six, v});
    return out;
  }
  const LawTag tag = (labels.eta != 0.0) ? LawTag::zero_eta_nonzero
                                         : LawTag::zero_eta_zero;
  for (int v = 0; v < 3; ++v) out.push_back({tag, v});
  return out;
}

std::vector<double> independent_rows(const QuantState& q) {
  std::vector<double> rows;
  for (const LawId& id : independent_set(q.labels)) {
    const LawEval e = evaluate_law(id, q);
    rows.insert(rows.end(), e.rows.begin(), e.rows.end());
  }
  return rows;
}

std::vector<std::array<double, 14>> independent_jacobian(const QuantState& q,
                                                         double step) {
  // Variable order: x0..x2, X0..X2, phi0..phi2, psi0..psi2, S, s.
  const auto get_var = [](QuantState& s, int m) -> double& {
    if (m < 3) return s.x[m];
    if (m < 6) return s.X[m - 3];
    if (m < 9) return s.phi[m - 6];
    if (m < 12) return s.psi[m - 9];
    return (m == 12) ? s.S : s.s;
  };
  const std::vector<double> base = independent_rows(q);
  std::vector<std::array<double, 14>> jac(base.size());
  for (auto& row : jac) row.fill(0.0);
  for (int m = 0; m < 14; ++m) {
    QuantState qp = q, qm = q;
    const double v0 = get_var(qp, m);
    const double h = step * std::max(1.0, std::abs(v0));
    get_var(qp, m) = v0 + h;
    get_var(qm, m) = v0 - h;
    const std::vector<double> fp = independent_rows(qp);
    const std::vector<double> fm = independent_rows(qm);
    for (size_t r = 0; r < base.size(); ++r)
      jac[r][m] = (fp[r] - fm[r]) / (2.0 * h);
  }
  return jac;
}

int numeric_rank(const std::vector<std::array<double, 14>>& rows,
                 double rel_cut) {
  // Singular values via a cyclic Jacobi eigensolve of the 14x14 Gram matrix.
  constexpr int n = 14;
  double g[n][n] = {};
  for (const auto& row : rows)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) g[a][b] += row[a] * row[b];

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int r = p + 1; r < n; ++r) off += g[p][r] * g[p][r];
    if (off < 1e-300) break;
    for (int p = 0; p < n; ++p) {
      for (int r = p + 1; r < n; ++r) {
        if (g[p][r] == 0.0) continue;
        const double theta = 0.5 * std::atan2(2.0 * g[p][r], g[r][r] - g[p][p]);
        const double cs = std::cos(theta), sn = std::sin(theta);
        for (int m = 0; m < n; ++m) {
          const double gp = g[p][m], gr = g[r][m];
          g[p][m] = cs * gp - sn * gr;
          g[r][m] = sn * gp + cs * gr;
        }
        for (int m = 0; m < n; ++m) {
          const double gp = g[m][p], gr = g[m][r];
          g[m][p] = cs * gp - sn * gr;
          g[m][r] = sn * gp + cs * gr;
        }
      }
    }
  }
  double max_ev = 0.0;
  for (int m = 0; m < n; ++m) max_ev = std::max(max_ev, g[m][m]);
  if (max_ev <= 0.0) return 0;
  const double cut = rel_cut * rel_cut * max_ev; // eigenvalues = sigma^2
  int rank = 0;
  for (int m = 0; m < n; ++m)
    if (g[m][m] > cut) ++rank;
  return rank;
}

} // namespace ckd
