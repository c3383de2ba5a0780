#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ckd/triangle.hpp"

using namespace ckd;

namespace {

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_double(rng);
}

const int signs[3] = {1, 0, -1};

// Principal-window representative of a phase difference: phases with a
// positive ring label live on a circle of circumference 2*pi/sqrt(eta).
double wrap_phase(double x, double eta) {
  if (eta <= 0.0) return x;
  const double full = 2.0 * std::numbers::pi / std::sqrt(eta);
  return x - full * std::round(x / full);
}

// Draws the four free moduli, derives the induced lateral phases and solves;
// returns false when the sample is rejected (not realizable / degenerate).
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

}  // namespace

TEST_CASE("factorization round trip across all label triples") {
  std::mt19937_64 rng(0x7712);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        int done = 0;
        for (int trial = 0; trial < 4000 && done < 25; ++trial) {
          TriangleData t;
          if (!sample_triangle(rng, l, &t)) continue;
          ++done;
          const GroupElement M = right_product(t.a, t.phi_a, t.b, t.phi_b,
                                               t.C, t.psi_C, l);
          const double scale = std::max(1.0, mat_max_abs(M.matrix));
          CAPTURE(e);
          CAPTURE(k1);
          CAPTURE(k2);
          CHECK(mat_max_dev(left_product(t).matrix, M.matrix) <=
                1e-10 * scale);
          CHECK(closure_residual(t) <= 1e-9 * scale);
          // Cartan sector: the three phase differences agree on the circle.
          const double d1 = (t.phi_a - t.psi_A) - (t.psi_B - t.phi_b);
          const double d2 = (t.psi_B - t.phi_b) - (t.psi_C - t.phi_c);
          CHECK(std::abs(wrap_phase(d1, l.eta)) <= 1e-9);
          CHECK(std::abs(wrap_phase(d2, l.eta)) <= 1e-9);
        }
        CHECK(done > 0);
      }
}

TEST_CASE("solve is deterministic") {
  const SpaceLabels l{1.0, 1.0, 1.0};
  const auto ph = lateral_phases(0.8, 0.5, 0.9, 0.25, l);
  const TriangleData t1 = solve(0.8, ph[0], 0.5, ph[1], 0.9, 0.25, l);
  const TriangleData t2 = solve(0.8, ph[0], 0.5, ph[1], 0.9, 0.25, l);
  CHECK(t1.c == t2.c);
  CHECK(t1.phi_c == t2.phi_c);
  CHECK(t1.A == t2.A);
  CHECK(t1.psi_A == t2.psi_A);
  CHECK(t1.B == t2.B);
  CHECK(t1.psi_B == t2.psi_B);
}

TEST_CASE("spherical right triangle with zero phases") {
  const SpaceLabels l{1.0, 1.0, 1.0};
  const double a = 0.5, b = 0.5, C = std::numbers::pi / 2.0;
  const TriangleData t = solve(a, 0.0, b, 0.0, C, 0.0, l);
  const double expected_c = std::acos(std::cos(a) * std::cos(b));
  CHECK(t.c == doctest::Approx(expected_c).epsilon(1e-12));
  CHECK(std::abs(t.phi_c) <= 1e-12);
  CHECK(std::abs(t.psi_A) <= 1e-12);
  CHECK(std::abs(t.psi_B) <= 1e-12);
  CHECK(classify_special(t, 1e-9) == TriangleClass::purely_real);
  // frozen third-party value of acos(cos^2 1/2)
  CHECK(expected_c == doctest::Approx(0.6917).epsilon(1e-4));
}

TEST_CASE("vanishing second side returns the passthrough factorization") {
  std::mt19937_64 rng(0xb0);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const double a = uniform(rng, 0.3, 0.9);
        const double phi_a = uniform(rng, -0.6, 0.6);
        const double C = uniform(rng, 0.3, 0.9);
        const double psi_C = uniform(rng, -0.6, 0.6);
        const TriangleData t = solve(a, phi_a, 0.0, 0.0, C, psi_C, l);
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(t.c == doctest::Approx(a).epsilon(1e-10));
        CHECK(std::abs(wrap_phase(t.phi_c - phi_a, l.eta)) <= 1e-9);
        CHECK(t.A == doctest::Approx(C).epsilon(1e-10));
        CHECK(std::abs(wrap_phase(t.psi_A - psi_C, l.eta)) <= 1e-9);
        CHECK(std::abs(t.B) <= 1e-10);
        CHECK(std::abs(wrap_phase(t.psi_B, l.eta)) <= 1e-9);
      }
}

TEST_CASE("zero inputs give the zero triangle") {
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = solve(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, l);
        CHECK(t.c == 0.0);
        CHECK(t.phi_c == 0.0);
        CHECK(t.A == 0.0);
        CHECK(t.psi_A == 0.0);
        CHECK(t.B == 0.0);
        CHECK(t.psi_B == 0.0);
      }
}

TEST_CASE("degenerate configurations throw") {
  const SpaceLabels l{1.0, 1.0, 1.0};
  // Both given sides vanish but the angle does not: the third side collapses
  // and the angle split is singular.
  CHECK_THROWS_AS(solve(0.0, 0.0, 0.0, 0.0, 0.9, 0.2, l), error);
  // Third side at the quadrant: the diagonal carrier loses its modulus.
  CHECK_THROWS_AS(solve(std::numbers::pi / 2.0, 0.0, 0.0, 0.0, 0.7, 0.3, l),
                  error);
  CHECK_THROWS_AS(
      solve(std::numeric_limits<double>::quiet_NaN(), 0, 0, 0, 0, 0, l),
      error);
}

TEST_CASE("hyperbolic phase labels reject unrealizable moduli cleanly") {
  std::mt19937_64 rng(0x5eed);
  const SpaceLabels l{-1.0, -1.0, -1.0};
  int ok = 0, no_arg = 0, degenerate = 0, residual = 0, other = 0;
  for (int trial = 0; trial < 800; ++trial) {
    const double a = uniform(rng, 0.2, 1.2);
    const double b = uniform(rng, 0.2, 1.2);
    const double C = uniform(rng, 0.2, 1.2);
    const double psi_C = uniform(rng, -0.8, 0.8);
    try {
      const auto ph = lateral_phases(a, b, C, psi_C, l);
      (void)solve(a, ph[0], b, ph[1], C, psi_C, l, 1e-9);
      ++ok;
    } catch (const error& err) {
      switch (err.code) {
        case errc::no_real_argument: ++no_arg; break;
        case errc::degenerate_triangle: ++degenerate; break;
        case errc::residual_too_large: ++residual; break;
        default: ++other; break;
      }
    }
  }
  CHECK(ok > 0);
  CHECK(no_arg > 0);
  CHECK(residual == 0);
  CHECK(other == 0);
}

TEST_CASE("misaligned lateral phases are rejected, not mis-factored") {
  const SpaceLabels l{1.0, 1.0, 1.0};
  const auto ph = lateral_phases(0.5, 0.7, 1.1, 0.4, l);
  // The induced value differs measurably from an arbitrary guess.
  CHECK(std::abs(wrap_phase(ph[1] - (-0.3), l.eta)) > 1e-2);
  CHECK_THROWS_AS(solve(0.5, 0.2, 0.7, -0.3, 1.1, 0.4, l), error);
  try {
    solve(0.5, 0.2, 0.7, -0.3, 1.1, 0.4, l);
  } catch (const error& err) {
    CHECK(err.code == errc::residual_too_large);
  }
}

TEST_CASE("duality is an exact involution and preserves closure") {
  std::mt19937_64 rng(0xd0a1);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = must_sample(rng, l);
        const TriangleData d = dual_triangle(t);
        const TriangleData dd = dual_triangle(d);
        CHECK(dd.a == t.a);
        CHECK(dd.phi_a == t.phi_a);
        CHECK(dd.A == t.A);
        CHECK(dd.psi_A == t.psi_A);
        CHECK(dd.labels.kappa1 == t.labels.kappa1);
        CHECK(dd.labels.kappa2 == t.labels.kappa2);
        // The swapped data is itself a triangle of the swapped space.
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(closure_residual(d) <= 1e-9);
      }
}

TEST_CASE("derived invariants satisfy the excess and area relations") {
  std::mt19937_64 rng(0xde51);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = must_sample(rng, l);
        const DerivedInvariants d = derived(t);
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(d.Delta_psi ==
              doctest::Approx(2.0 * d.omega - d.Omega).epsilon(1e-10));
        CHECK(d.delta_phi ==
              doctest::Approx(2.0 * d.Omega - d.omega).epsilon(1e-10));
        if (l.kappa1 != 0.0)
          CHECK(d.omega == doctest::Approx(2.0 * l.kappa1 * d.S).epsilon(1e-10));
        if (l.kappa2 != 0.0)
          CHECK(d.Omega == doctest::Approx(2.0 * l.kappa2 * d.s).epsilon(1e-10));
      }
}

TEST_CASE("gramm determinant quotient matches its versine polynomial") {
  std::mt19937_64 rng(0x9a33);
  for (double k1 : {1.0, -1.0}) {
    const SpaceLabels l{1.0, k1, 1.0};
    const TriangleData t = must_sample(rng, l);
    const DerivedInvariants d = derived(t);
    const CompactTriangle q = compact(t);
    double V[3], Cx[3];
    for (int i = 0; i < 3; ++i) {
      V[i] = versink(k1, q.x[i]);
      Cx[i] = cosk(k1, q.x[i]);
    }
    const double poly =
        2.0 * (V[0] * V[1] + V[1] * V[2] + V[2] * V[0]) - V[0] * V[0] -
        V[1] * V[1] - V[2] * V[2] -
        2.0 * l.eta * Cx[0] * Cx[1] * Cx[2] *
            versink(l.eta * k1 * k1, 2.0 * d.S) -
        2.0 * k1 * V[0] * V[1] * V[2];
    CAPTURE(k1);
    CHECK(d.gamma == doctest::Approx(poly).epsilon(1e-9));
  }
}

TEST_CASE("quotient invariants agree across their three representatives") {
  std::mt19937_64 rng(0x3b);
  const SpaceLabels l{1.0, 1.0, 1.0};
  const TriangleData t = must_sample(rng, l);
  const DerivedInvariants d = derived(t);
  const CompactTriangle q = compact(t);
  REQUIRE(d.tau_status == InvariantStatus::finite);
  REQUIRE(d.xi_status == InvariantStatus::finite);
  for (int i = 0; i < 3; ++i) {
    const double denom_tau = sink(l.kappa2, q.X[i]);
    if (std::abs(denom_tau) > 1e-6)
      CHECK(sink(l.kappa1, q.x[i]) / denom_tau ==
            doctest::Approx(d.tau).epsilon(1e-8));
    const double denom_xi = sink(l.eta, q.psi[i]) * cosk(l.kappa2, q.X[i]);
    if (std::abs(denom_xi) > 1e-6)
      CHECK(sink(l.kappa1, 2.0 * q.x[i]) / denom_xi ==
            doctest::Approx(d.xi).epsilon(1e-8));
    const double denom_Xi = sink(l.eta, q.phi[i]) * cosk(l.kappa1, q.x[i]);
    if (std::abs(denom_Xi) > 1e-6)
      CHECK(sink(l.kappa2, 2.0 * q.X[i]) / denom_Xi ==
            doctest::Approx(d.Xi).epsilon(1e-8));
  }
  // Product form of the same invariant.
  const double s2S = sink(l.eta * l.kappa1 * l.kappa1, 2.0 * d.S);
  if (std::abs(s2S) > 1e-6) {
    const double prod = -2.0 * sink(l.kappa1, q.x[0]) * sink(l.kappa1, q.x[1]) *
                        sink(l.kappa1, q.x[2]) / s2S;
    CHECK(prod == doctest::Approx(d.xi).epsilon(1e-8));
  }
}

TEST_CASE("existence report passes for solved triangles") {
  std::mt19937_64 rng(0xe715);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const TriangleData t = must_sample(rng, l);
        const ExistenceReport r = existence_check(t, 1e-9);
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(r.pass);
      }
}

TEST_CASE("hand-forged mixed excess fails the existence inequalities") {
  TriangleData t;
  t.labels = {1.0, 1.0, 1.0};
  t.a = t.b = t.c = 0.5;
  t.psi_B = std::numbers::pi;  // omega = pi while the sides stay short
  const DerivedInvariants d = derived(t);
  const double c5 = std::cos(0.5);
  CHECK(d.gamma ==
        doctest::Approx(1.0 - 3.0 * c5 * c5 - 2.0 * c5 * c5 * c5).epsilon(1e-12));
  CHECK(d.gamma < 0.0);
  const ExistenceReport r = existence_check(t, 1e-9);
  CHECK_FALSE(r.pass);
}

TEST_CASE("zero triangle existence margins vanish") {
  TriangleData t;
  t.labels = {1.0, 1.0, 1.0};
  const ExistenceReport r = existence_check(t, 1e-9);
  CHECK(r.pass);
  CHECK(r.margin_gramm == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r.margin_gramm_dual == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("special-class taxonomy") {
  const SpaceLabels l{1.0, 1.0, 1.0};
  std::mt19937_64 rng(0xc1a5);

  SUBCASE("vanishing included angle gives a collinear triangle") {
    const auto ph = lateral_phases(0.7, 0.4, 0.0, 0.3, l);
    const TriangleData t = solve(0.7, ph[0], 0.4, ph[1], 0.0, 0.3, l);
    CHECK(classify_special(t, 1e-7) == TriangleClass::collinear);
    const DerivedInvariants d = derived(t);
    CHECK(std::abs(wrap_phase(d.Omega, l.eta)) <= 1e-8);
    // All angular-minus-lateral phase gaps collapse onto the mixed excess.
    const CompactTriangle q = compact(t);
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(wrap_phase(q.psi[i] - q.phi[i] - d.omega, l.eta)) <=
            1e-8);
  }

  SUBCASE("dual of collinear classifies as concurrent") {
    const auto ph = lateral_phases(0.7, 0.4, 0.0, 0.3, l);
    const TriangleData t = solve(0.7, ph[0], 0.4, ph[1], 0.0, 0.3, l);
    CHECK(classify_special(dual_triangle(t), 1e-7) ==
          TriangleClass::concurrent);
  }

  SUBCASE("zero phases give a purely real triangle") {
    const TriangleData t = solve(0.6, 0.0, 0.8, 0.0, 0.9, 0.0, l);
    CHECK(classify_special(t, 1e-9) == TriangleClass::purely_real);
  }

  SUBCASE("zero triangle is collinear by the priority order") {
    TriangleData t;
    t.labels = l;
    CHECK(classify_special(t, 1e-9) == TriangleClass::collinear);
  }

  SUBCASE("generic samples are generic") {
    const TriangleData t = must_sample(rng, l);
    CHECK(classify_special(t, 1e-9) == TriangleClass::generic);
  }
}

TEST_CASE("vertex-ray path agrees with the factorization path") {
  for (double k1 : {1.0, -1.0}) {
    const SpaceLabels l{1.0, k1, 1.0};
    std::mt19937_64 rng(k1 > 0 ? 0xabc1 : 0xabc2);
    // Keep all sides strictly inside the first quadrant in the elliptic
    // case, where side moduli determine lengths uniquely.
    TriangleData t;
    for (;;) {
      const double a = uniform(rng, 0.2, 0.7);
      const double b = uniform(rng, 0.2, 0.7);
      const double C = uniform(rng, 0.2, 0.9);
      const double psi_C = uniform(rng, -0.5, 0.5);
      try {
        const auto ph = lateral_phases(a, b, C, psi_C, l);
        t = solve(a, ph[0], b, ph[1], C, psi_C, l, 1e-9);
      } catch (const error&) {
        continue;
      }
      if (k1 < 0.0 || t.c < 1.4) break;
    }
    const Ray O = base_point(l);
    // Vertex layout: the first given side spans (zB, zC) from the origin
    // along the fiducial geodesic; the rotated second side reaches zA.
    const Ray zC = O;
    const Ray zB = act(side_flow(t.a, t.phi_a, l), O);
    const Ray zA = act(group_mul(turn_flow(t.C, t.psi_C, l),
                                 side_flow(t.b, t.phi_b, l)),
                       O);
    const VertexPathResult v = from_vertices(zA, zB, zC, l);
    CAPTURE(k1);
    CHECK(v.a == doctest::Approx(t.a).epsilon(1e-9));
    CHECK(v.b == doctest::Approx(t.b).epsilon(1e-9));
    CHECK(v.c == doctest::Approx(t.c).epsilon(1e-9));
    const DerivedInvariants d = derived(t);
    CHECK(std::abs(wrap_phase(v.omega - d.omega, 1.0)) <= 1e-8);
    // Triple-product phases compose: the pair phases sum to the invariant.
    CHECK(std::abs(wrap_phase(v.eps_a + v.eps_b + v.eps_c - v.omega, 1.0)) <=
          1e-8);
    // Shape invariant against its cosine product form (vertex rays are
    // normalized to unit self-pairing for either curvature sign).
    const double prod = cosk(k1, v.a) * cosk(k1, v.b) * cosk(k1, v.c) *
                        std::cos(v.omega);
    CHECK(v.sigma == doctest::Approx(prod).epsilon(1e-9));
    // Squared cosines of the angles match the solved angles.
    CHECK(v.cos2_C ==
          doctest::Approx(cosk(1.0, t.C) * cosk(1.0, t.C)).epsilon(1e-7));
    CHECK(v.cos2_A ==
          doctest::Approx(cosk(1.0, t.A) * cosk(1.0, t.A)).epsilon(1e-7));
    CHECK(v.cos2_B ==
          doctest::Approx(cosk(1.0, t.B) * cosk(1.0, t.B)).epsilon(1e-7));
  }
}

TEST_CASE("vertex-ray path error taxonomy") {
  const SpaceLabels l{1.0, 1.0, 1.0};
  const Ray O = base_point(l);
  SUBCASE("coincident vertices give the zero triangle") {
    const VertexPathResult v = from_vertices(O, O, O, l);
    CHECK(v.a == 0.0);
    CHECK(v.b == 0.0);
    CHECK(v.c == 0.0);
    CHECK(v.omega == 0.0);
    CHECK(v.sigma == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("unsupported label pattern") {
    const SpaceLabels bad{0.0, 1.0, 1.0};
    CHECK_THROWS_AS(from_vertices(base_point(bad), base_point(bad),
                                  base_point(bad), bad),
                    error);
  }
  SUBCASE("quadrant separation hits the cut locus") {
    const Ray far = act(one_param(Gen::P1, std::numbers::pi / 2.0, l), O);
    CHECK_THROWS_AS(from_vertices(O, far, O, l), error);
  }
}

TEST_CASE("arbitrary label magnitudes factor as well") {
  const SpaceLabels l{2.0, 0.5, -1.5};
  std::mt19937_64 rng(0xfade);
  int done = 0;
  for (int trial = 0; trial < 4000 && done < 10; ++trial) {
    TriangleData t;
    if (!sample_triangle(rng, l, &t)) continue;
    ++done;
    const GroupElement M =
        right_product(t.a, t.phi_a, t.b, t.phi_b, t.C, t.psi_C, l);
    CHECK(mat_max_dev(left_product(t).matrix, M.matrix) <=
          1e-9 * std::max(1.0, mat_max_abs(M.matrix)));
  }
  CHECK(done > 0);
}
