#include "ckd/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ckd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Relative factor below which a side sine/cosine counts as numerically zero
// and the factorization becomes singular.
constexpr double kDegenerateFactor = 1e-7;

double clamp0(double v) { return v < 0.0 ? 0.0 : v; }

// Carrier phases of the left product in the order they multiply onto the
// magnitude skeleton: alpha on the (0,0) entry, beta on the first column pair,
// gamma on the first row pair.
struct LeftPhases {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
};

// Closed form of e^{-A J} e^{-psi_A I} e^{c P1} e^{phi_c T1} e^{B J}
// e^{psi_B I} in terms of the magnitude skeleton (Cc, Sc) = (C1(c), S1(c)),
// (CA, SA) = (C2(A), S2(A)), (CB, SB) = (C2(B), S2(B)) and the carrier
// phases; used both to score candidate factorizations cheaply and as a
// cross-check against the six-factor product.
Mat3 rebuild_left(double Cc, double Sc, double CA, double SA, double CB,
                  double SB, const LeftPhases& ph, const SpaceLabels& l) {
  const double eta = l.eta, k1 = l.kappa1, k2 = l.kappa2;
  const CDScalar ea = cd_exp_imag(ph.alpha, eta);
  const CDScalar eb = cd_exp_imag(ph.beta, eta);
  const CDScalar eg = cd_exp_imag(ph.gamma, eta);
  const CDScalar e1 = cd_exp_imag(ph.beta + ph.gamma - ph.alpha, eta);
  const CDScalar e2 = cd_exp_imag(-(ph.beta + ph.gamma), eta);
  Mat3 L;
  L.at(0, 0) = cd_scale(Cc, ea);
  L.at(0, 1) = cd_scale(-k1 * Sc * CB, eg);
  L.at(0, 2) = cd_scale(k1 * k2 * Sc * SB, eg);
  L.at(1, 0) = cd_scale(CA * Sc, eb);
  L.at(2, 0) = cd_scale(-SA * Sc, eb);
  L.at(1, 1) = cd_add(cd_scale(CA * Cc * CB, e1), cd_scale(k2 * SA * SB, e2));
  L.at(1, 2) =
      cd_add(cd_scale(-k2 * CA * Cc * SB, e1), cd_scale(k2 * SA * CB, e2));
  L.at(2, 1) = cd_add(cd_scale(-SA * Cc * CB, e1), cd_scale(CA * SB, e2));
  L.at(2, 2) = cd_add(cd_scale(k2 * SA * Cc * SB, e1), cd_scale(CA * CB, e2));
  return L;
}

// Argument of a ring element expected to be unimodular up to rounding.
// Renormalizes mild modulus drift; genuine branch failures (negative real
// part for eta <= 0, non-positive modulus) still throw.
double unimodular_arg(CDScalar u, double eta) {
  const double m2 = cd_modulus_sq(u, eta);
  if (m2 > 0.25) u = cd_scale(1.0 / std::sqrt(m2), u);
  return cd_arg(u, eta, 1e-6);
}

}  // namespace

CompactTriangle compact(const TriangleData& t) {
  CompactTriangle q;
  q.labels = t.labels;
  q.x = {-t.a, t.b, t.c};
  q.X = {-t.A, t.B, t.C};
  q.phi = {-t.phi_a, t.phi_b, t.phi_c};
  q.psi = {-t.psi_A, t.psi_B, t.psi_C};
  return q;
}

const char* triangle_class_name(TriangleClass c) {
  switch (c) {
    case TriangleClass::generic: return "generic";
    case TriangleClass::collinear: return "collinear";
    case TriangleClass::concurrent: return "concurrent";
    case TriangleClass::purely_real: return "purely_real";
  }
  return "generic";
}

GroupElement side_flow(double x, double phi, const SpaceLabels& labels) {
  return group_mul(one_param(Gen::P1, x, labels),
                   one_param(Gen::T1, phi, labels));
}

GroupElement turn_flow(double X, double psi, const SpaceLabels& labels) {
  return group_mul(one_param(Gen::J, X, labels),
                   one_param(Gen::I, psi, labels));
}

GroupElement left_product(const TriangleData& t) {
  const SpaceLabels& l = t.labels;
  return group_mul(turn_flow(-t.A, -t.psi_A, l),
                   group_mul(side_flow(t.c, t.phi_c, l),
                             turn_flow(t.B, t.psi_B, l)));
}

GroupElement right_product(double a, double phi_a, double b, double phi_b,
                           double C, double psi_C, const SpaceLabels& labels) {
  return group_mul(side_flow(-b, -phi_b, labels),
                   group_mul(turn_flow(-C, -psi_C, labels),
                             side_flow(a, phi_a, labels)));
}

double closure_residual(const TriangleData& t) {
  const SpaceLabels& l = t.labels;
  GroupElement w = side_flow(-t.a, -t.phi_a, l);
  w = group_mul(w, turn_flow(t.C, t.psi_C, l));
  w = group_mul(w, side_flow(t.b, t.phi_b, l));
  w = group_mul(w, turn_flow(-t.A, -t.psi_A, l));
  w = group_mul(w, side_flow(t.c, t.phi_c, l));
  w = group_mul(w, turn_flow(t.B, t.psi_B, l));
  return mat_max_dev(w.matrix, mat_identity());
}

TriangleData solve(double a, double phi_a, double b, double phi_b, double C,
                   double psi_C, const SpaceLabels& labels, double tol) {
  for (double v : {a, phi_a, b, phi_b, C, psi_C, labels.eta, labels.kappa1,
                   labels.kappa2, tol}) {
    if (!std::isfinite(v))
      throw error(errc::non_finite, "solve: non-finite input");
  }
  const double eta = labels.eta, k1 = labels.kappa1, k2 = labels.kappa2;

  const GroupElement Mg = right_product(a, phi_a, b, phi_b, C, psi_C, labels);
  const Mat3& M = Mg.matrix;
  const double scale = std::max(1.0, mat_max_abs(M));

  TriangleData out;
  out.labels = labels;
  out.a = a;
  out.phi_a = phi_a;
  out.b = b;
  out.phi_b = phi_b;
  out.C = C;
  out.psi_C = psi_C;

  // Trivial factorization: the three right factors already cancel.
  if (mat_max_dev(M, mat_identity()) <= 0.5 * tol * scale) return out;

  // Magnitude skeleton.  Column-0 entries carry (C1(c), C2(A) S1(c),
  // -S2(A) S1(c)); the corresponding adjugate entries carry the B pair with
  // the side sine on the conjugate carrier phase.
  const double cc2 = clamp0(cd_modulus_sq(M.at(0, 0), eta));
  const CDScalar pA = M.at(1, 0);
  const CDScalar qA = cd_neg(M.at(2, 0));
  const CDScalar pB = cd_sub(cd_mul(M.at(1, 0), M.at(2, 2), eta),
                             cd_mul(M.at(1, 2), M.at(2, 0), eta));
  const CDScalar qB = cd_sub(cd_mul(M.at(1, 0), M.at(2, 1), eta),
                             cd_mul(M.at(1, 1), M.at(2, 0), eta));
  const double sc2_a =
      clamp0(cd_modulus_sq(pA, eta) + k2 * cd_modulus_sq(qA, eta));
  const double sc2_b =
      clamp0(cd_modulus_sq(pB, eta) + k2 * cd_modulus_sq(qB, eta));
  const double sc2 = 0.5 * (sc2_a + sc2_b);

  const double deg = kDegenerateFactor * scale;
  if (sc2 <= deg * deg) {
    throw error(errc::degenerate_triangle,
                "solve: vanishing side sine, side/angle split is singular");
  }
  if (k1 > 0.0 && cc2 <= deg * deg) {
    throw error(errc::degenerate_triangle,
                "solve: vanishing side cosine, phase split is singular");
  }
  const double Sc = std::sqrt(sc2);
  const double Cc0 = std::sqrt(cc2);

  // Sign-canonical representative of a (cos-like, sin-like) pair sharing one
  // carrier phase; the relative sign comes from the eta-real cross product.
  struct PairChannels {
    CDScalar p, q;
    double C0 = 0.0, S0 = 0.0;
  };
  const auto make_pair = [&](CDScalar p, CDScalar q) {
    PairChannels pc;
    pc.p = p;
    pc.q = q;
    const double c2 = clamp0(cd_modulus_sq(p, eta)) / sc2;
    const double s2 = clamp0(cd_modulus_sq(q, eta)) / sc2;
    const double cross = cd_mul(cd_conj(p), q, eta).re;
    const double sgn = cross >= 0.0 ? 1.0 : -1.0;
    if (k2 > 0.0) {
      pc.S0 = std::sqrt(s2);
      pc.C0 = sgn * std::sqrt(c2);
    } else {
      pc.C0 = std::sqrt(c2);
      pc.S0 = sgn * std::sqrt(s2);
    }
    return pc;
  };
  const PairChannels prA = make_pair(pA, qA);
  const PairChannels prB = make_pair(pB, qB);

  // Carrier phase through whichever channel has the larger magnitude.
  const auto carrier_arg = [&](const PairChannels& pc, double Cv, double Sv) {
    const CDScalar u = std::abs(Cv) >= std::abs(Sv)
                           ? cd_scale(1.0 / (Sc * Cv), pc.p)
                           : cd_scale(1.0 / (Sc * Sv), pc.q);
    return unimodular_arg(u, eta);
  };

  const double atol = std::max(tol, 1e-12);
  const double half = eta > 0.0 ? std::numbers::pi / std::sqrt(eta) : 0.0;
  const double full = 2.0 * half;

  struct Candidate {
    bool found = false;
    double res = kInf, cartan = kInf, sumsq = kInf;
    double c = 0, phi_c = 0, A = 0, psi_A = 0, B = 0, psi_B = 0;
  } best;

  // Deviation from the Cartan-sector alignment: for a canonical
  // factorization the three differences lateral-minus-angular phase agree
  // as exact reals,
  //   (phi_a - psi_A) = (psi_B - phi_b) = (psi_C - phi_c).
  // Alternate sign branches rebuild the same matrix but sit half a period
  // off, and whole-turn carrier shifts move the differences by full
  // periods; this score picks the aligned representative.
  const auto cartan_dev = [&](double psA, double psB, double phc) {
    if (eta <= 0.0) return 0.0;
    const double g1 = phi_a - psA, g2 = psB - phi_b, g3 = psi_C - phc;
    return std::abs(g1 - g2) + std::abs(g2 - g3);
  };

  // Enumerate the discrete sign branches.  All surviving combinations are
  // gauge-equivalent factorizations (they rebuild the same matrix); the
  // canonical one aligns the Cartan sector and minimizes the phase norm.
  // Branches whose inversions have no real argument for these labels throw
  // and are skipped.
  const double tie = std::max(1e-11, 0.01 * tol) * scale;
  for (int sc_sign : {+1, -1}) {
    for (int sA : {+1, -1}) {
      for (int sB : {+1, -1}) {
        const double Cc = sc_sign * Cc0;
        const double CA = sA * prA.C0, SA = sA * prA.S0;
        const double CB = sB * prB.C0, SB = sB * prB.S0;
        double cv, Av, Bv, alpha, beta, gammap;
        try {
          cv = arck(k1, Cc, Sc, atol);
          Av = arck(k2, CA, SA, atol);
          Bv = arck(k2, CB, SB, atol);
          alpha = unimodular_arg(cd_scale(1.0 / Cc, M.at(0, 0)), eta);
          beta = carrier_arg(prA, CA, SA);
          gammap = -carrier_arg(prB, CB, SB);
        } catch (const error&) {
          continue;
        }
        const Mat3 L =
            rebuild_left(Cc, Sc, CA, SA, CB, SB, {alpha, beta, gammap}, labels);
        const double res = mat_max_dev(L, M);

        // Canonical phases: over whole-turn shifts of the three carriers
        // (eta > 0 only; unique otherwise), align the Cartan sector first,
        // then minimize the phase norm.
        double bcart = kInf, bss = kInf, bpsA = 0, bpsB = 0, bphc = 0;
        const int mrange = eta > 0.0 ? 2 : 0;
        const double cart_tie = 1e-7;
        for (int ma = -mrange; ma <= mrange; ++ma) {
          for (int mb = -mrange; mb <= mrange; ++mb) {
            for (int mg = -mrange; mg <= mrange; ++mg) {
              const double al = alpha + ma * full;
              const double be = beta + mb * full;
              const double ga = gammap + mg * full;
              const double psA = al - be;
              const double psB = ga - al;
              const double phc = al - 2.0 * be - 2.0 * ga;
              const double cd = cartan_dev(psA, psB, phc);
              const double ss = psA * psA + psB * psB + phc * phc;
              if (cd < bcart - cart_tie ||
                  (cd <= bcart + cart_tie && ss < bss)) {
                bcart = cd;
                bss = ss;
                bpsA = psA;
                bpsB = psB;
                bphc = phc;
              }
            }
          }
        }

        const double cart = bcart;
        const bool better =
            res < best.res - tie ||
            (res <= best.res + tie &&
             (cart < best.cartan - cart_tie ||
              (cart <= best.cartan + cart_tie && bss < best.sumsq - 1e-9)));
        if (!best.found || better) {
          best.found = true;
          best.res = res;
          best.cartan = cart;
          best.sumsq = bss;
          best.c = cv;
          best.phi_c = bphc;
          best.A = Av;
          best.psi_A = bpsA;
          best.B = Bv;
          best.psi_B = bpsB;
        }
      }
    }
  }

  if (!best.found) {
    throw error(errc::no_real_argument,
                "solve: no sign branch admits real side/angle arguments");
  }

  out.c = best.c;
  out.phi_c = best.phi_c;
  out.A = best.A;
  out.psi_A = best.psi_A;
  out.B = best.B;
  out.psi_B = best.psi_B;

  const double res_true = mat_max_dev(left_product(out).matrix, M);
  if (res_true > tol * scale) {
    throw error(errc::residual_too_large,
                "solve: reconstruction residual " + std::to_string(res_true) +
                    " exceeds bound " + std::to_string(tol * scale));
  }
  return out;
}

std::array<double, 2> lateral_phases(double a, double b, double C,
                                     double psi_C, const SpaceLabels& labels,
                                     double tol) {
  for (double v : {a, b, C, psi_C, labels.eta, labels.kappa1, labels.kappa2,
                   tol}) {
    if (!std::isfinite(v))
      throw error(errc::non_finite, "lateral_phases: non-finite input");
  }
  const double eta = labels.eta, k1 = labels.kappa1, k2 = labels.kappa2;
  const CDScalar E = cd_exp_imag(psi_C, eta);
  const double sa = sink(k1, a), ca = cosk(k1, a);
  const double sb = sink(k1, b), cb = cosk(k1, b);
  const double cC = cosk(k2, C);

  // Shared alignment bracket S1(u) C1(v) e^{i psi_C} - S1(v) C1(u) C2(C):
  // its ring argument is the unique lateral phase (modulo the half-period
  // flip that solve's sign branches absorb) keeping the right product
  // factorable.
  const auto bracket_arg = [&](double su, double cv, double sv, double cu,
                               const char* which) {
    CDScalar u = cd_sub(cd_scale(su * cv, E), CDScalar{sv * cu * cC, 0.0});
    const double mag =
        std::abs(su * cv) * std::sqrt(cd_euclid_sq(E)) + std::abs(sv * cu * cC);
    const double floor_sq = kDegenerateFactor * kDegenerateFactor *
                            std::max(1.0, mag) * std::max(1.0, mag);
    if (cd_euclid_sq(u) <= floor_sq) {
      throw error(errc::degenerate_triangle,
                  std::string("lateral_phases: alignment bracket for ") +
                      which + " vanishes");
    }
    // Canonical half-period representative: positive real part.  The
    // opposite representative differs by a half-period flip the
    // factorization absorbs in a sign branch; the positive one makes the
    // lateral excess of degenerate families vanish where it should.
    if (u.re < 0.0) u = cd_neg(u);
    const double m2 = cd_modulus_sq(u, eta);
    if (!(m2 > 0.0)) {
      throw error(errc::no_real_argument,
                  std::string("lateral_phases: alignment bracket for ") +
                      which +
                      " has no positive ring modulus; the side/angle moduli "
                      "are not realizable");
    }
    u = cd_scale(1.0 / std::sqrt(m2), u);
    return cd_arg(u, eta, std::max(tol, 1e-6));
  };

  const double phi_a = bracket_arg(sa, cb, sb, ca, "phi_a");
  const double phi_b = -bracket_arg(sb, ca, sa, cb, "phi_b");
  if (eta <= 0.0) return {phi_a, phi_b};

  // Periodic phase ring: each bracket determines its phase only up to a
  // half-period flip, and both representatives admit an exact
  // factorization — they are different triangles over the same moduli.
  // The geometric one aligns the Cartan sector; trial-factor the four
  // representative pairs and keep the aligned one.
  const double half = std::numbers::pi / std::sqrt(eta);
  const auto principal = [&](double x) {
    const double full = 2.0 * half;
    double w = x - full * std::round(x / full);
    if (w <= -half) w += full;  // window (-half, half]
    return w;
  };
  const double trial_tol = std::max(tol, 1e-7);
  double best_cart = kInf, best_norm = kInf;
  std::array<double, 2> best{phi_a, phi_b};
  for (int da = 0; da < 2; ++da) {
    for (int db = 0; db < 2; ++db) {
      const double pa = principal(phi_a + da * half);
      const double pb = principal(phi_b + db * half);
      TriangleData t;
      try {
        t = solve(a, pa, b, pb, C, psi_C, labels, trial_tol);
      } catch (const error&) {
        continue;
      }
      const double g1 = pa - t.psi_A;
      const double g2 = t.psi_B - pb;
      const double g3 = psi_C - t.phi_c;
      const double cart = std::abs(g1 - g2) + std::abs(g2 - g3);
      // Degenerate families align for several representatives at once;
      // break ties towards the small-phase (short third side) one.
      const double norm = pa * pa + pb * pb;
      if (cart < best_cart - 1e-9 ||
          (cart <= best_cart + 1e-9 && norm < best_norm)) {
        best_cart = cart;
        best_norm = norm;
        best = {pa, pb};
      }
    }
  }
  if (!(best_cart <= 1e-6)) {
    throw error(errc::no_real_argument,
                "lateral_phases: no half-period representative aligns the "
                "factorization; the side/angle moduli are not realizable");
  }
  return best;
}

DerivedInvariants derived(const TriangleData& t) {
  const CompactTriangle q = compact(t);
  const double eta = q.labels.eta, k1 = q.labels.kappa1, k2 = q.labels.kappa2;

  std::array<double, 3> Cx{}, Sx{}, CX{}, SX{}, Sphi{}, Spsi{};
  for (int i = 0; i < 3; ++i) {
    Cx[i] = cosk(k1, q.x[i]);
    Sx[i] = sink(k1, q.x[i]);
    CX[i] = cosk(k2, q.X[i]);
    SX[i] = sink(k2, q.X[i]);
    Sphi[i] = sink(eta, q.phi[i]);
    Spsi[i] = sink(eta, q.psi[i]);
  }

  DerivedInvariants d;
  d.omega = q.psi[0] + q.psi[1] + q.phi[2];
  d.Omega = q.phi[0] + q.phi[1] + q.psi[2];
  d.Delta = q.X[0] + q.X[1] + q.X[2];
  d.delta = q.x[0] + q.x[1] + q.x[2];
  d.Delta_psi = q.psi[0] + q.psi[1] + q.psi[2];
  d.delta_phi = q.phi[0] + q.phi[1] + q.phi[2];

  // Symplectic area and coarea; the flat-label limits replace omega/(2 k1)
  // by the product form it converges to.
  if (k1 != 0.0) {
    d.S = d.omega / (2.0 * k1);
  } else {
    d.S = -0.5 * Sx[1] * Sx[2] * CX[0] * Spsi[0] / Cx[0];
  }
  if (k2 != 0.0) {
    d.s = d.Omega / (2.0 * k2);
  } else {
    d.s = -0.5 * SX[1] * SX[2] * Cx[0] * Sphi[0] / CX[0];
  }

  // Renormalized Gramm determinants; at a vanishing curvature label the
  // quotient is replaced by its versine polynomial expansion.
  const double Com = cosk(eta, d.omega);
  if (k1 != 0.0) {
    const double Dg = 1.0 - Cx[0] * Cx[0] - Cx[1] * Cx[1] - Cx[2] * Cx[2] +
                      2.0 * Cx[0] * Cx[1] * Cx[2] * Com;
    d.gamma = Dg / (k1 * k1);
  } else {
    const double V0 = versink(k1, q.x[0]), V1 = versink(k1, q.x[1]),
                 V2 = versink(k1, q.x[2]);
    d.gamma = 2.0 * (V0 * V1 + V1 * V2 + V2 * V0) - V0 * V0 - V1 * V1 -
              V2 * V2 -
              2.0 * eta * Cx[0] * Cx[1] * Cx[2] *
                  versink(eta * k1 * k1, 2.0 * d.S) -
              2.0 * k1 * V0 * V1 * V2;
  }
  const double COm = cosk(eta, d.Omega);
  if (k2 != 0.0) {
    const double DG = 1.0 - CX[0] * CX[0] - CX[1] * CX[1] - CX[2] * CX[2] +
                      2.0 * CX[0] * CX[1] * CX[2] * COm;
    d.Gamma = DG / (k2 * k2);
  } else {
    const double V0 = versink(k2, q.X[0]), V1 = versink(k2, q.X[1]),
                 V2 = versink(k2, q.X[2]);
    d.Gamma = 2.0 * (V0 * V1 + V1 * V2 + V2 * V0) - V0 * V0 - V1 * V1 -
              V2 * V2 -
              2.0 * eta * CX[0] * CX[1] * CX[2] *
                  versink(eta * k2 * k2, 2.0 * d.s) -
              2.0 * k2 * V0 * V1 * V2;
  }

  // Quotient invariants with a max-denominator representative; degenerate
  // configurations are flagged instead of silently dividing by noise.
  const auto quotient = [](double num, double den, double* value,
                           InvariantStatus* status) {
    const double tiny = 1e-12 * std::max(1.0, std::abs(num));
    if (std::abs(den) <= tiny) {
      if (std::abs(num) <= 1e-12) {
        *value = 0.0;
        *status = InvariantStatus::indeterminate;
      } else {
        *value = std::copysign(kInf, den != 0.0 ? num / den : num);
        *status = InvariantStatus::infinite;
      }
    } else {
      *value = num / den;
      *status = InvariantStatus::finite;
    }
  };

  int it = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(SX[i]) > std::abs(SX[it])) it = i;
  quotient(Sx[it], SX[it], &d.tau, &d.tau_status);

  int ix = 0;
  std::array<double, 3> xden{}, xnum{};
  for (int i = 0; i < 3; ++i) {
    xnum[i] = sink(k1, 2.0 * q.x[i]);
    xden[i] = Spsi[i] * CX[i];
    if (std::abs(xden[i]) > std::abs(xden[ix])) ix = i;
  }
  quotient(xnum[ix], xden[ix], &d.xi, &d.xi_status);

  int iX = 0;
  std::array<double, 3> Xden{}, Xnum{};
  for (int i = 0; i < 3; ++i) {
    Xnum[i] = sink(k2, 2.0 * q.X[i]);
    Xden[i] = Sphi[i] * Cx[i];
    if (std::abs(Xden[i]) > std::abs(Xden[iX])) iX = i;
  }
  quotient(Xnum[iX], Xden[iX], &d.Xi, &d.Xi_status);

  return d;
}

ExistenceReport existence_check(const TriangleData& t, double tol) {
  const CompactTriangle q = compact(t);
  const double eta = q.labels.eta, k1 = q.labels.kappa1, k2 = q.labels.kappa2;
  const DerivedInvariants d = derived(t);

  ExistenceReport r;
  r.margin_gramm = k2 != 0.0 ? d.gamma / k2 : kNaN;
  r.margin_gramm_dual = k1 != 0.0 ? d.Gamma / k1 : kNaN;

  const double ppsi =
      sink(eta, q.psi[0]) * sink(eta, q.psi[1]) * sink(eta, q.psi[2]);
  const double pphi =
      sink(eta, q.phi[0]) * sink(eta, q.phi[1]) * sink(eta, q.phi[2]);
  r.margin_phase =
      std::abs(ppsi) > 1e-12 ? -sink(eta * k2 * k2, 2.0 * d.s) / ppsi : kNaN;
  r.margin_phase_dual =
      std::abs(pphi) > 1e-12 ? -sink(eta * k1 * k1, 2.0 * d.S) / pphi : kNaN;

  r.pass = true;
  for (double m : {r.margin_gramm, r.margin_gramm_dual, r.margin_phase,
                   r.margin_phase_dual}) {
    if (std::isfinite(m) && m < -tol) r.pass = false;
  }
  return r;
}

TriangleClass classify_special(const TriangleData& t, double tol) {
  const CompactTriangle q = compact(t);
  const double eta = q.labels.eta, k1 = q.labels.kappa1, k2 = q.labels.kappa2;
  const double thr = std::max(tol, 64.0 * std::numeric_limits<double>::epsilon());

  bool collinear = true, concurrent = true, purely_real = true;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(sink(k2, q.X[i])) > thr) collinear = false;
    if (std::abs(sink(k1, q.x[i])) > thr) concurrent = false;
    if (std::abs(sink(eta, q.phi[i])) > thr ||
        std::abs(sink(eta, q.psi[i])) > thr) {
      purely_real = false;
    }
  }
  if (collinear) return TriangleClass::collinear;
  if (concurrent) return TriangleClass::concurrent;
  if (purely_real) return TriangleClass::purely_real;
  return TriangleClass::generic;
}

TriangleData dual_triangle(const TriangleData& t) {
  TriangleData d;
  d.labels = dual_labels(t.labels);
  d.a = t.A;
  d.b = t.B;
  d.c = t.C;
  d.A = t.a;
  d.B = t.b;
  d.C = t.c;
  d.phi_a = t.psi_A;
  d.phi_b = t.psi_B;
  d.phi_c = t.psi_C;
  d.psi_A = t.phi_a;
  d.psi_B = t.phi_b;
  d.psi_C = t.phi_c;
  return d;
}

VertexPathResult from_vertices(const Ray& zA, const Ray& zB, const Ray& zC,
                               const SpaceLabels& labels, double tol) {
  const double eta = labels.eta, k1 = labels.kappa1, k2 = labels.kappa2;
  if (!(eta == 1.0 && k2 == 1.0 && k1 != 0.0)) {
    throw error(errc::unsupported_labels,
                "from_vertices: requires labels (1; k1 != 0, 1)");
  }

  const auto unit = [&](const Ray& r) {
    Ray n = normalize_ray(r);
    const double nn = ray_inner(n, n).re;
    if (!(std::abs(nn - 1.0) <= 1e-6)) {
      throw error(errc::non_finite,
                  "from_vertices: vertex ray is not normalizable");
    }
    return n;
  };
  const Ray nA = unit(zA), nB = unit(zB), nC = unit(zC);

  // Pairings conjugate-linear in the SECOND slot: with this orientation the
  // gauge-invariant triple product carries e^{+i omega} on the cosine
  // product, matching the phase-excess sign of the factorization path.
  const CDScalar gbc = ray_inner(nC, nB);
  const CDScalar gca = ray_inner(nA, nC);
  const CDScalar gab = ray_inner(nB, nA);

  const auto side_from = [&](CDScalar g, const char* which) {
    const double m2 = clamp0(cd_modulus_sq(g, eta));
    const double m = std::sqrt(m2);
    if (k1 > 0.0 && m <= std::max(tol, 1e-12)) {
      throw error(errc::cut_locus, std::string("from_vertices: vertices of "
                                               "side ") +
                                       which + " are at mutual cut locus");
    }
    const double s2 = clamp0((1.0 - m2) / k1);
    return arck(k1, m, std::sqrt(s2), std::max(tol, 1e-9));
  };

  VertexPathResult r;
  r.a = side_from(gbc, "a");
  r.b = side_from(gca, "b");
  r.c = side_from(gab, "c");

  const CDScalar triple = cd_mul(cd_mul(gab, gbc, eta), gca, eta);
  r.sigma = triple.re;

  // Coincident vertices: the point triangle, all phases and angles trivial.
  if (std::max({std::abs(sink(k1, r.a)), std::abs(sink(k1, r.b)),
                std::abs(sink(k1, r.c))}) <= 1e-8) {
    r.a = r.b = r.c = 0.0;
    r.cos2_A = r.cos2_B = r.cos2_C = 1.0;
    return r;
  }

  r.omega = std::atan2(triple.im, triple.re);
  r.eps_a = std::atan2(gbc.im, gbc.re);
  r.eps_b = std::atan2(gca.im, gca.re);
  r.eps_c = std::atan2(gab.im, gab.re);

  const double Ca = cosk(k1, r.a), Cb = cosk(k1, r.b), Cc = cosk(k1, r.c);
  const double Sa = sink(k1, r.a), Sb = sink(k1, r.b), Sc = sink(k1, r.c);
  const double Com = std::cos(r.omega);
  const auto angle_cos2 = [&](double Ci, double Cj, double Ck, double Sj,
                              double Sk) {
    const double den = k1 * k1 * Sj * Sj * Sk * Sk;
    if (den <= 1e-13) {
      throw error(errc::degenerate_triangle,
                  "from_vertices: side sine vanishes, angle is undefined");
    }
    const double num = Ci * Ci + Cj * Cj * Ck * Ck - 2.0 * Ci * Cj * Ck * Com;
    return std::min(1.0, clamp0(num / den));
  };
  r.cos2_A = angle_cos2(Ca, Cb, Cc, Sb, Sc);
  r.cos2_B = angle_cos2(Cb, Cc, Ca, Sc, Sa);
  r.cos2_C = angle_cos2(Cc, Ca, Cb, Sa, Sb);
  return r;
}

}  // namespace ckd
