#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ckd/group.hpp"
#include "ckd/laws.hpp"

using namespace ckd;

namespace {

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_double(rng);
}

const int signs[3] = {1, 0, -1};

double wrap_phase(double x, double eta) {
  if (eta <= 0.0) return x;
  const double full = 2.0 * std::numbers::pi / std::sqrt(eta);
  return x - full * std::round(x / full);
}

bool sample_triangle(std::mt19937_64& rng, const SpaceLabels& l,
                     TriangleData* out) {
  const double a = uniform(rng, 0.2, 1.2);
  const double b = uniform(rng, 0.2, 1.2);
  const double C = uniform(rng, 0.2, 1.2);
  const double psi_C = uniform(rng, -0.8, 0.8);
  try {
    const auto ph = lateral_phases(a, b, C, psi_C, l);
    *out = solve(a, ph[0], b, ph[1], C, psi_C, l, 1e-9);
    return true;
  } catch (const error&) {
    return false;
  }
}

TriangleData must_sample(std::mt19937_64& rng, const SpaceLabels& l) {
  TriangleData t;
  for (int k = 0; k < 20000; ++k)
    if (sample_triangle(rng, l, &t)) return t;
  REQUIRE_MESSAGE(false, "no realizable sample found");
  return t;
}

// Every law entry evaluated on a state, skipping the inapplicable ones.
double worst_applicable(const QuantState& q) {
  double worst = 0.0;
  for (LawTag tag : all_law_tags())
    for (int v = 0; v < kLawVariants; ++v) {
      const LawEval e = evaluate_law(LawId{tag, v}, q);
      if (e.applicable) worst = std::max(worst, e.residual);
    }
  return worst;
}

}  // namespace

TEST_CASE("closure word residual vanishes on solutions and reacts to error") {
  std::mt19937_64 rng(0x1a35);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = must_sample(rng, l);
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(residual_basic(t) <= 1e-9);
      }

  SUBCASE("zero triangle closes exactly") {
    TriangleData t;
    t.labels = {1.0, 1.0, 1.0};
    CHECK(residual_basic(t) == 0.0);
  }

  SUBCASE("a third-side error of 1e-3 is clearly visible") {
    const SpaceLabels l{1.0, 1.0, 1.0};
    TriangleData t = must_sample(rng, l);
    t.c += 1e-3;
    CHECK(residual_basic(t) >= 1e-4);
  }
}

TEST_CASE("nine entry identities hold on every label triple") {
  std::mt19937_64 rng(0x91de);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = must_sample(rng, l);
        const auto nine = residual_nine(t);
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        for (int n = 0; n < 9; ++n) {
          CAPTURE(n);
          CHECK(nine[n] <= 1e-9);
        }
      }
}

TEST_CASE("identity three swaps into identity four under an index swap") {
  std::mt19937_64 rng(0x34);
  const SpaceLabels l{1.0, 1.0, 1.0};
  const QuantState q = quant_state(must_sample(rng, l));
  QuantState swapped = q;
  std::swap(swapped.x[0], swapped.x[1]);
  std::swap(swapped.X[0], swapped.X[1]);
  std::swap(swapped.phi[0], swapped.phi[1]);
  std::swap(swapped.psi[0], swapped.psi[1]);
  const double r3s = evaluate_law({LawTag::nine_3, 0}, swapped).residual;
  const double r4 = evaluate_law({LawTag::nine_4, 0}, q).residual;
  CHECK(std::abs(r3s - r4) <= 1e-15);
}

TEST_CASE("first identity degenerates to a pure sector residual at k1 = 0") {
  std::mt19937_64 rng(0xf1a7);
  const SpaceLabels l{1.0, 0.0, 1.0};
  const TriangleData t = must_sample(rng, l);
  const DerivedInvariants d = derived(t);

  // On the solution the sector phase sum is a full period, so the residual
  // vanishes together with |e^{i omega} - 1|.
  CHECK(std::abs(wrap_phase(d.omega, l.eta)) <= 1e-9);
  CHECK(residual_nine(t)[0] <= 1e-9);

  // Detuning one angular phase leaves exactly the sector mismatch
  // |e^{i (2 Delta_psi + delta_phi) / 3} - 1| as the residual.
  QuantState q = quant_state(t);
  q.psi[0] += 0.3;
  const double mismatch = (2.0 * (q.psi[0] + q.psi[1] + q.psi[2]) +
                           (q.phi[0] + q.phi[1] + q.phi[2])) /
                          3.0;
  const double expected = std::sqrt(
      cd_euclid_sq(cd_sub(cd_exp_imag(mismatch, l.eta), CDScalar{1.0, 0.0})));
  for (int v = 0; v < 3; ++v) {
    CAPTURE(v);
    CHECK(evaluate_law({LawTag::nine_1, v}, q).residual ==
          doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("cyclic equation set closes with split normalization") {
  std::mt19937_64 rng(0xf17a);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = must_sample(rng, l);
        const LawResidualReport r = residual_final(t, 1e-8);
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(r.fail_count() == 0);
        CHECK(r.max_residual() <= 1e-8);
        for (int v = 0; v < 3; ++v)
          CHECK(r.find(LawTag::t2ij, v)->residual <= 1e-9);

        // The common lateral-minus-angular phase gap is the sector
        // difference of the two mixed excesses.
        const CompactTriangle q = compact(t);
        const DerivedInvariants d = derived(t);
        for (int i = 0; i < 3; ++i)
          CHECK(std::abs(wrap_phase(
                    (q.phi[i] - q.psi[i]) - (d.Omega - d.omega), l.eta)) <=
                1e-10);
      }
}

TEST_CASE("named laws hold; quotient forms skip vanishing denominators") {
  std::mt19937_64 rng(0x7a3d);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = must_sample(rng, l);
        const LawResidualReport r = residual_named(t, 1e-8);
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(r.fail_count() == 0);
        for (int v = 0; v < 3; ++v) {
          CHECK(r.find(LawTag::bt_cos, v)->residual <= 1e-9);
          CHECK(r.find(LawTag::bt_dualcos, v)->residual <= 1e-9);
        }
      }

  SUBCASE("cross-multiplied paired-cosine law evaluates directly") {
    const SpaceLabels l{1.0, 1.0, 1.0};
    const TriangleData t = must_sample(rng, l);
    const CompactTriangle q = compact(t);
    const DerivedInvariants d = derived(t);
    const double lhs = cosk(l.kappa1, q.x[2]) * cosk(l.kappa1, q.x[2]) *
                       sink(l.eta, q.psi[0]) * sink(l.eta, q.psi[1]);
    const double rhs = sink(l.eta, d.omega - q.psi[0]) *
                       sink(l.eta, d.omega - q.psi[1]);
    CHECK(std::abs(lhs - rhs) <= 1e-9);
    const LawResidualReport r = residual_named(t, 1e-8);
    CHECK(r.find(LawTag::c_euler, 0)->residual <= 1e-9);
  }

  SUBCASE("area-routed sine law stays applicable at k1 = 0") {
    const SpaceLabels l{1.0, 0.0, 1.0};
    const TriangleData t = must_sample(rng, l);
    const LawResidualReport r = residual_named(t, 1e-8);
    for (int v = 0; v < 3; ++v) {
      const LawEntry* entry = r.find(LawTag::s_euler, v);
      CHECK(entry->applicable);
      CHECK(entry->residual <= 1e-9);
    }
  }

  SUBCASE("vanishing phase sines mark quotient laws inapplicable") {
    const SpaceLabels l{1.0, 1.0, 1.0};
    const TriangleData t = solve(0.6, 0.0, 0.8, 0.0, 0.9, 0.0, l);
    const LawResidualReport r = residual_named(t, 1e-8);
    for (LawTag tag : {LawTag::ss, LawTag::cT, LawTag::cc, LawTag::c_euler,
                       LawTag::s_euler})
      for (int v = 0; v < 3; ++v) {
        CAPTURE(law_tag_name(tag));
        CHECK_FALSE(r.find(tag, v)->applicable);
      }
    // Denominator-free named laws still apply and pass.
    for (int v = 0; v < 3; ++v) {
      CHECK(r.find(LawTag::bt_cos, v)->applicable);
      CHECK(r.find(LawTag::bt_cos, v)->residual <= 1e-9);
      CHECK(r.find(LawTag::gramm_gamma, v)->applicable);
    }
  }
}

TEST_CASE("transported generator pairs keep their algebraic character") {
  std::mt19937_64 rng(0x6e4e);
  for (const SpaceLabels& l : {SpaceLabels{1.0, 1.0, 1.0},
                               SpaceLabels{-1.0, 1.0, -1.0},
                               SpaceLabels{1.0, 0.0, 1.0}}) {
    const TriangleData t = must_sample(rng, l);
    const ConjugatedGenerators g = conjugated_generators(t);
    CAPTURE(l.eta);
    CAPTURE(l.kappa1);
    CAPTURE(l.kappa2);

    // The two members of every transported pair commute.
    for (const auto& [x, y] :
         {std::pair{&g.P_a, &g.T_a}, {&g.P_b, &g.T_b}, {&g.P_c, &g.T_c},
          {&g.J_A, &g.I_A}, {&g.J_B, &g.I_B}, {&g.J_C, &g.I_C}})
      CHECK(mat_max_abs(bracket(*x, *y).matrix) <= 1e-12);

    // Anti-Hermiticity with respect to the invariant form is preserved.
    const Mat3 lam = hermitian_form(l);
    for (const AlgebraElement* x :
         {&g.P_a, &g.T_a, &g.P_b, &g.T_b, &g.P_c, &g.T_c, &g.J_A, &g.I_A,
          &g.J_B, &g.I_B, &g.J_C, &g.I_C}) {
      const Mat3 defect =
          mat_add(mat_mul(mat_conj_transpose(x->matrix), lam, l.eta),
                  mat_mul(lam, x->matrix, l.eta));
      CHECK(mat_max_abs(defect) <= 1e-12);
    }
  }

  SUBCASE("zero triangle transports generators trivially") {
    TriangleData t;
    t.labels = {1.0, 1.0, 1.0};
    const ConjugatedGenerators g = conjugated_generators(t);
    CHECK(mat_max_dev(g.P_b.matrix, g.P_a.matrix) == 0.0);
    CHECK(mat_max_dev(g.J_A.matrix, g.J_C.matrix) == 0.0);
  }

  SUBCASE("base pair is recovered around the loop") {
    const SpaceLabels l{1.0, 1.0, 1.0};
    const TriangleData t = must_sample(rng, l);
    const LawResidualReport r = residual_loops(t, 1e-8);
    for (int v = 0; v < 3; ++v) CHECK(r.find(LawTag::compat, v)->residual <= 1e-10);
  }
}

TEST_CASE("holonomy loops close on every label triple") {
  std::mt19937_64 rng(0x100b);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = must_sample(rng, l);
        const LawResidualReport r = residual_loops(t, 1e-8);
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(r.fail_count() == 0);
        CHECK(r.max_residual() <= 1e-8);
      }

  SUBCASE("zero triangle loops are exactly closed") {
    TriangleData t;
    t.labels = {1.0, 1.0, 1.0};
    const LawResidualReport r = residual_loops(t, 1e-8);
    CHECK(r.max_residual() == 0.0);
  }

  SUBCASE("angular excess matches the sector combination") {
    const SpaceLabels l{1.0, 1.0, 1.0};
    const TriangleData t = must_sample(rng, l);
    const DerivedInvariants d = derived(t);
    CHECK(std::abs(wrap_phase(d.Delta_psi - (2.0 * d.omega - d.Omega),
                              l.eta)) <= 1e-10);
  }
}

TEST_CASE("contracted forms are regular across label degenerations") {
  std::mt19937_64 rng(0xc0e7);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = must_sample(rng, l);
        const LawResidualReport r = residual_contracted(t, 1e-8);
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(r.fail_count() == 0);
        for (int v = 0; v < 3; ++v) {
          CHECK(r.find(LawTag::t1i_prime, v)->applicable);
          CHECK(r.find(LawTag::t1i_prime, v)->residual <= 1e-8);
          CHECK(r.find(LawTag::t1I_prime, v)->residual <= 1e-8);
        }
      }

  SUBCASE("flat sides keep area content where the cosine law collapses") {
    const SpaceLabels l{1.0, 0.0, 1.0};
    const TriangleData t = must_sample(rng, l);
    const LawResidualReport r = residual_contracted(t, 1e-8);
    for (int v = 0; v < 3; ++v)
      CHECK(r.find(LawTag::t1i_prime, v)->residual <= 1e-9);
  }

  SUBCASE("doubly flat labels activate the five-equation sets") {
    const SpaceLabels ln{1.0, 0.0, 0.0};
    const TriangleData tn = must_sample(rng, ln);
    const LawResidualReport rn = residual_contracted(tn, 1e-8);
    for (int v = 0; v < 3; ++v) {
      CHECK(rn.find(LawTag::zero_eta_nonzero, v)->applicable);
      CHECK(rn.find(LawTag::zero_eta_nonzero, v)->residual <= 1e-9);
      CHECK_FALSE(rn.find(LawTag::zero_eta_zero, v)->applicable);
    }

    const SpaceLabels lz{0.0, 0.0, 0.0};
    const TriangleData tz = must_sample(rng, lz);
    const LawResidualReport rz = residual_contracted(tz, 1e-8);
    for (int v = 0; v < 3; ++v) {
      CHECK(rz.find(LawTag::zero_eta_zero, v)->applicable);
      CHECK(rz.find(LawTag::zero_eta_zero, v)->residual <= 1e-9);
    }
    const CompactTriangle q = compact(tz);
    CHECK(std::abs(q.x[0] + q.x[1] + q.x[2]) <= 1e-9);
    CHECK(std::abs(q.X[0] + q.X[1] + q.X[2]) <= 1e-9);
  }

  SUBCASE("near-flat labels agree with the flat limit") {
    const SpaceLabels l{1.0, 1e-6, 1.0};
    const TriangleData t = must_sample(rng, l);
    const LawResidualReport r = residual_contracted(t, 1e-8);
    for (int v = 0; v < 3; ++v)
      CHECK(r.find(LawTag::t1i_prime, v)->residual <= 1e-9);
    CHECK(residual_basic(t) <= 1e-9);
  }
}

TEST_CASE("special-configuration laws") {
  std::mt19937_64 rng(0x59ec);
  const SpaceLabels l{1.0, 1.0, 1.0};

  SUBCASE("generic triangles are rejected") {
    const TriangleData t = must_sample(rng, l);
    CHECK_THROWS_AS((void)residual_special(t, 1e-8), error);
  }

  SUBCASE("collinear: doubled-side laws, flat coarea sector, aux excess") {
    const auto ph = lateral_phases(0.7, 0.4, 0.0, 0.3, l);
    const TriangleData t = solve(0.7, ph[0], 0.4, ph[1], 0.0, 0.3, l);
    REQUIRE(classify_special(t, 1e-7) == TriangleClass::collinear);
    const LawResidualReport r = residual_special(t, 1e-8);
    CHECK(r.fail_count() == 0);
    for (int v = 0; v < 3; ++v)
      CHECK(r.find(LawTag::collinear_reduced, v)->residual <= 1e-10);
    const DerivedInvariants d = derived(t);
    CHECK(std::abs(wrap_phase(d.Omega, l.eta)) <= 1e-9);
    CHECK(std::abs(wrap_phase(d.Delta_psi - 2.0 * d.omega, l.eta)) <= 1e-9);
    const CompactTriangle q = compact(t);
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(wrap_phase(q.psi[i] - q.phi[i] - d.omega, l.eta)) <=
            1e-9);
  }

  SUBCASE("concurrent: the dual reduction") {
    const auto ph = lateral_phases(0.7, 0.4, 0.0, 0.3, l);
    const TriangleData t =
        dual_triangle(solve(0.7, ph[0], 0.4, ph[1], 0.0, 0.3, l));
    REQUIRE(classify_special(t, 1e-7) == TriangleClass::concurrent);
    const LawResidualReport r = residual_special(t, 1e-8);
    CHECK(r.fail_count() == 0);
    const DerivedInvariants d = derived(t);
    CHECK(std::abs(wrap_phase(d.omega, l.eta)) <= 1e-9);
  }

  SUBCASE("purely real: discrete cosine factors") {
    const TriangleData t = solve(0.6, 0.0, 0.8, 0.0, 0.9, 0.0, l);
    REQUIRE(classify_special(t, 1e-9) == TriangleClass::purely_real);
    const LawResidualReport r = residual_special(t, 1e-8);
    CHECK(r.fail_count() == 0);
    const CompactTriangle q = compact(t);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(std::abs(cosk(l.eta, q.phi[i])) - 1.0) <= 1e-9);
      CHECK(std::abs(std::abs(cosk(l.eta, q.psi[i])) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("independent sets per label class") {
  const auto has = [](const std::vector<LawId>& ids, LawTag tag, int v) {
    for (const LawId& id : ids)
      if (id.tag == tag && id.variant == v) return true;
    return false;
  };

  SUBCASE("generic labels take the complex cosine laws") {
    const auto ids = independent_set({1.0, 1.0, 1.0});
    REQUIRE(ids.size() == 7);
    CHECK(has(ids, LawTag::t0ij, 0));
    CHECK(has(ids, LawTag::t0ij, 1));
    CHECK(has(ids, LawTag::omega_area, 0));
    CHECK(has(ids, LawTag::Omega_coarea, 0));
    for (int v = 0; v < 3; ++v) CHECK(has(ids, LawTag::t1i, v));
  }

  SUBCASE("one flat curvature label swaps in the contracted law") {
    const auto ids1 = independent_set({1.0, 0.0, 1.0});
    REQUIRE(ids1.size() == 7);
    for (int v = 0; v < 3; ++v) CHECK(has(ids1, LawTag::t1i_prime, v));
    const auto ids2 = independent_set({1.0, 1.0, 0.0});
    for (int v = 0; v < 3; ++v) CHECK(has(ids2, LawTag::t1I_prime, v));
  }

  SUBCASE("doubly flat labels use the five-equation sets") {
    const auto idn = independent_set({1.0, 0.0, 0.0});
    REQUIRE(idn.size() == 3);
    for (int v = 0; v < 3; ++v) CHECK(has(idn, LawTag::zero_eta_nonzero, v));
    const auto idz = independent_set({0.0, 0.0, 0.0});
    REQUIRE(idz.size() == 3);
    for (int v = 0; v < 3; ++v) CHECK(has(idz, LawTag::zero_eta_zero, v));
  }
}

TEST_CASE("independent rows have rank exactly ten at solved points") {
  std::mt19937_64 rng(0x4a2c);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = must_sample(rng, l);
        const QuantState q = quant_state(t);
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(numeric_rank(independent_jacobian(q)) == 10);
      }
}

TEST_CASE("independent residuals control the full catalogue") {
  std::mt19937_64 rng(0x1a91c);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = must_sample(rng, l);
        QuantState q = quant_state(t);
        // Nudge all fourteen quantities without leaving the 1e-10 band of
        // the independent set.
        for (int m = 0; m < 3; ++m) {
          q.x[m] += uniform(rng, -1e-11, 1e-11);
          q.X[m] += uniform(rng, -1e-11, 1e-11);
          q.phi[m] += uniform(rng, -1e-11, 1e-11);
          q.psi[m] += uniform(rng, -1e-11, 1e-11);
        }
        q.S += uniform(rng, -1e-11, 1e-11);
        q.s += uniform(rng, -1e-11, 1e-11);

        double indep = 0.0;
        for (const LawId& id : independent_set(l))
          indep = std::max(indep, evaluate_law(id, q).residual);
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        REQUIRE(indep <= 1e-10);
        CHECK(worst_applicable(q) <= 1e-7);
      }
}

TEST_CASE("Gramm determinant factorizations") {
  std::mt19937_64 rng(0x6a33);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = must_sample(rng, l);
        const LawResidualReport r = residual_named(t, 1e-8);
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        for (int v = 0; v < 3; ++v) {
          CHECK(r.find(LawTag::gramm_gamma, v)->residual <= 1e-9);
          CHECK(r.find(LawTag::gramm_Gamma, v)->residual <= 1e-9);
        }
        if (l.kappa2 != 0.0) {
          const CompactTriangle q = compact(t);
          const DerivedInvariants d = derived(t);
          const double prod = sink(l.kappa1, q.x[0]) * sink(l.kappa1, q.x[0]) *
                              sink(l.kappa2, q.X[1]) * sink(l.kappa2, q.X[1]) *
                              sink(l.kappa1, q.x[2]) * sink(l.kappa1, q.x[2]);
          CHECK(std::abs(d.gamma / l.kappa2 - prod) <= 1e-9);
        }
      }
}

TEST_CASE("full catalogue closes on every label triple") {
  std::mt19937_64 rng(0xa11);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = must_sample(rng, l);
        const LawResidualReport r = evaluate_all(t, 1e-8);
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(r.fail_count() == 0);
        CHECK(r.max_residual() <= 1e-8);
        CHECK(r.pass_count() > 0);
      }
}

TEST_CASE("law registry and id round-trips") {
  const auto& table = law_registry();
  const auto tags = all_law_tags();
  REQUIRE(table.size() == tags.size());
  for (size_t m = 0; m < table.size(); ++m) {
    CHECK(table[m].tag == tags[m]);
    CHECK(std::string(table[m].name) == law_tag_name(tags[m]));
    CHECK(table[m].variants == kLawVariants);
  }

  for (LawTag tag : tags)
    for (int v = 0; v < kLawVariants; ++v) {
      const LawId id{tag, v};
      const auto parsed = law_id_from_string(law_id_string(id));
      REQUIRE(parsed.has_value());
      CHECK(parsed->tag == tag);
      CHECK(parsed->variant == v);
    }

  CHECK(law_tag_from_name("nine_3") == LawTag::nine_3);
  CHECK_FALSE(law_tag_from_name("no_such_law").has_value());
  const auto bare = law_id_from_string("bt_cos");
  REQUIRE(bare.has_value());
  CHECK(bare->tag == LawTag::bt_cos);
  CHECK(bare->variant == 0);

  // Registry evaluators agree with direct evaluation.
  std::mt19937_64 rng(0x7e6);
  const QuantState q = quant_state(must_sample(rng, {1.0, 1.0, 1.0}));
  for (const LawInfo& row : law_registry()) {
    const LawEval direct = evaluate_law({row.tag, 1}, q);
    CHECK(row.residual(q, 1) == direct.residual);
    CHECK(row.applicable(q, 1) == direct.applicable);
  }
}
