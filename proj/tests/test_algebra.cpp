#include <doctest.h>

#include <cmath>

#include "ckd/algebra.hpp"

using namespace ckd;

namespace {

const int signs[3] = {1, 0, -1};

RatMat3 rmat_conj_transpose(const RatMat3& a) {
  RatMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.at(i, j) = {a.at(j, i).re, rat_neg(a.at(j, i).im)};
  return r;
}

RatMat3 metric_form(IntLabels l) {
  RatMat3 g;
  g.at(0, 0).re = rat_make(1, 1);
  g.at(1, 1).re = rat_make(l.k1, 1);
  g.at(2, 2).re = rat_make(static_cast<long long>(l.k1) * l.k2, 1);
  return g;
}

} // namespace

TEST_CASE("representation matrices are metric-compatible and traceless, exactly") {
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const IntLabels il{e, k1, k2};
        const RatMat3 lambda = metric_form(il);
        for (Gen g : all_generators) {
          const RatMat3 x = rep_exact(g, il);
          // X^dagger Lambda + Lambda X == 0
          const RatMat3 comp =
              rmat_add(rmat_mul(rmat_conj_transpose(x), lambda, e), rmat_mul(lambda, x, e));
          CHECK(rmat_is_zero(comp));
          // traceless
          RatCD tr{};
          for (int i = 0; i < 3; ++i)
            tr = {rat_add(tr.re, x.at(i, i).re), rat_add(tr.im, x.at(i, i).im)};
          CHECK(rat_is_zero(tr.re));
          CHECK(rat_is_zero(tr.im));
        }
      }
}

TEST_CASE("commutator table closes exactly on all 27 sign triples") {
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(check_commutation_table(l));
      }
}

TEST_CASE("commutator table holds at generic real labels (double path)") {
  CHECK(check_commutation_table({0.7, -1.3, 2.4}));
  CHECK(check_commutation_table({-0.2, 0.0, 1.9}));
}

TEST_CASE("bracket rejects mismatched labels and matches the table in doubles") {
  const SpaceLabels l{1.0, 0.37, -1.0};
  const AlgebraElement lhs = bracket(rep(Gen::P1, l), rep(Gen::Q1, l));
  const Mat3 rhs = mat_scale(2.0 * l.kappa1, rep(Gen::H1, l).matrix);
  CHECK(mat_max_dev(lhs.matrix, rhs) <= 1e-15);

  const AlgebraElement other = rep(Gen::Q1, {1.0, 0.37, 1.0});
  try {
    static_cast<void>(bracket(rep(Gen::P1, l), other));
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code == errc::label_mismatch);
  }
}

TEST_CASE("diagonal generators decompose over the (B, I) pair") {
  for (Gen g : {Gen::T1, Gen::T2, Gen::H1, Gen::H2}) {
    const CartanCombo c = cartan_combination(g);
    // exact check: coefficients are half-integers, so scale by 2
    const auto to2 = [](double v) { return rat_make(static_cast<long long>(2.0 * v), 2); };
    const IntLabels il{1, -1, 1}; // labels do not enter the diagonal sector
    const RatMat3 want = rmat_add(rmat_scale(to2(c.cb), rep_exact(Gen::B, il)),
                                  rmat_scale(to2(c.ci), rep_exact(Gen::I, il)));
    CHECK(rmat_eq(rep_exact(g, il), want));
  }
  for (Gen g : {Gen::B, Gen::I, Gen::P1, Gen::J}) {
    try {
      static_cast<void>(cartan_combination(g));
      CHECK(false);
    } catch (const error& e) {
      CHECK(e.code == errc::not_cartan);
    }
  }
}

TEST_CASE("quadratic invariant commutes with every generator, exactly, on all 27") {
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(casimir_commutes({double(e), double(k1), double(k2)}));
      }
}

TEST_CASE("duality is an involution and an exact isomorphism onto the swapped algebra") {
  for (Gen g : all_generators) {
    const DualityImage once = duality_map(g);
    const DualityImage twice = duality_map(once.image);
    CHECK(twice.image == g);
    CHECK(once.sign * twice.sign == 1);
  }
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        CAPTURE(e);
        CAPTURE(k1);
        CAPTURE(k2);
        CHECK(check_duality_automorphism({double(e), double(k1), double(k2)}));
      }
}

TEST_CASE("involutions: automorphisms, mutually commuting, expected fixed sets") {
  const InvolutionKind kinds[] = {InvolutionKind::point, InvolutionKind::line_first,
                                  InvolutionKind::line_second, InvolutionKind::conjugation};

  // automorphism sign condition: for every nonzero bracket [a,b] = c * g,
  // sign(a) * sign(b) must equal sign(g), and the dependent diagonal
  // generators must carry the common diagonal-sector sign
  for (InvolutionKind k : kinds) CHECK(check_involution_automorphism(k));

  // pairwise commuting (diagonal sign tables): composite signs multiply
  for (InvolutionKind k1 : kinds)
    for (InvolutionKind k2 : kinds) {
      const InvolutionTable a = involution(k1), b = involution(k2);
      for (Gen g : all_generators) CHECK(a.of(g) * b.of(g) == b.of(g) * a.of(g));
    }

  const InvolutionTable pt = involution(InvolutionKind::point);
  for (Gen g : {Gen::J, Gen::M, Gen::B, Gen::I}) CHECK(pt.of(g) == 1);
  for (Gen g : {Gen::P1, Gen::P2, Gen::Q1, Gen::Q2}) CHECK(pt.of(g) == -1);

  const InvolutionTable l1 = involution(InvolutionKind::line_first);
  for (Gen g : {Gen::T1, Gen::P1, Gen::Q1, Gen::H1}) CHECK(l1.of(g) == 1);

  const InvolutionTable l2 = involution(InvolutionKind::line_second);
  for (Gen g : {Gen::T2, Gen::P2, Gen::Q2, Gen::H2}) CHECK(l2.of(g) == 1);

  const InvolutionTable cj = involution(InvolutionKind::conjugation);
  for (Gen g : {Gen::P1, Gen::P2, Gen::J}) CHECK(cj.of(g) == 1);
  for (Gen g : {Gen::Q1, Gen::Q2, Gen::M, Gen::B, Gen::I, Gen::T1, Gen::T2, Gen::H1, Gen::H2})
    CHECK(cj.of(g) == -1);
}

TEST_CASE("generator names round-trip") {
  for (Gen g : all_generators) CHECK(gen_from_name(gen_name(g)) == g);
  CHECK_THROWS_AS(static_cast<void>(gen_from_name("X9")), error);
}
