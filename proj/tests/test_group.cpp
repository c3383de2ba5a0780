#include <doctest.h>

#include <cmath>
#include <random>

#include "ckd/group.hpp"

using namespace ckd;

namespace {

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_double(rng);
}

const int signs[3] = {1, 0, -1};

} // namespace

TEST_CASE("closed-form one-parameter subgroups match the series exponential") {
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        for (Gen g : all_generators)
          for (double t : {-1.7, -0.4, 0.0, 0.9, 2.0}) {
            const GroupElement closed = one_param(g, t, l);
            AlgebraElement x = rep(g, l);
            x.matrix = mat_scale(t, x.matrix);
            const GroupElement series = exp_series(x);
            CAPTURE(e);
            CAPTURE(k1);
            CAPTURE(k2);
            CAPTURE(gen_name(g));
            CAPTURE(t);
            CHECK(mat_max_dev(closed.matrix, series.matrix) <=
                  1e-12 * std::max(1.0, mat_max_abs(series.matrix)));
          }
      }
}

TEST_CASE("one-parameter subgroups at generic real labels") {
  const SpaceLabels l{-0.6, 1.7, -2.2};
  for (Gen g : all_generators)
    for (double t : {-1.1, 0.7}) {
      AlgebraElement x = rep(g, l);
      x.matrix = mat_scale(t, x.matrix);
      CHECK(mat_max_dev(one_param(g, t, l).matrix, exp_series(x).matrix) <=
            1e-12 * std::max(1.0, mat_max_abs(one_param(g, t, l).matrix)));
    }
}

TEST_CASE("additivity along each subgroup") {
  std::mt19937_64 rng(0x0a11);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        for (Gen g : all_generators) {
          const double x = uniform(rng, -1.5, 1.5), y = uniform(rng, -1.5, 1.5);
          const Mat3 prod = group_mul(one_param(g, x, l), one_param(g, y, l)).matrix;
          const Mat3 sum = one_param(g, x + y, l).matrix;
          CHECK(mat_max_dev(prod, sum) <= 1e-12 * std::max(1.0, mat_max_abs(sum)));
        }
      }
}

TEST_CASE("group elements preserve the form and have unit determinant") {
  std::mt19937_64 rng(0x15c3);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        // random word in the generators
        GroupElement u = group_identity(l);
        for (int step = 0; step < 6; ++step) {
          const Gen g = all_generators[rng() % 12];
          u = group_mul(u, one_param(g, uniform(rng, -1.0, 1.0), l));
        }
        CHECK(is_isometry(u, 1e-11));
        const CDScalar d = det3(u.matrix, l.eta);
        CHECK(std::abs(d.re - 1.0) <= 1e-12 * std::max(1.0, mat_max_abs(u.matrix)));
        CHECK(std::abs(d.im) <= 1e-12 * std::max(1.0, mat_max_abs(u.matrix)));

        // division-free inverse works across zero-divisor rings
        const GroupElement inv = group_inverse(u);
        CHECK(mat_max_dev(group_mul(u, inv).matrix, mat_identity()) <=
              1e-11 * std::max(1.0, mat_max_abs(u.matrix)));
      }
}

TEST_CASE("designated commuting pairs") {
  std::mt19937_64 rng(0xc033);
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const double x = uniform(rng, -1.2, 1.2), y = uniform(rng, -1.2, 1.2);
        for (auto [g1, g2] : {std::pair{Gen::P1, Gen::T1}, std::pair{Gen::J, Gen::I}}) {
          const Mat3 ab = group_mul(one_param(g1, x, l), one_param(g2, y, l)).matrix;
          const Mat3 ba = group_mul(one_param(g2, y, l), one_param(g1, x, l)).matrix;
          CHECK(mat_max_dev(ab, ba) <= 1e-13 * std::max(1.0, mat_max_abs(ab)));
        }
      }
}

TEST_CASE("action on the base point traces the first geodesic") {
  for (int e : signs)
    for (int k1 : signs)
      for (int k2 : signs) {
        const SpaceLabels l{double(e), double(k1), double(k2)};
        const double a = 0.8;
        const Ray p = act(one_param(Gen::P1, a, l), base_point(l));
        CHECK(p.z[0].re == doctest::Approx(cosk(l.kappa1, a)).epsilon(1e-12));
        CHECK(p.z[0].im == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(p.z[1].re == doctest::Approx(sink(l.kappa1, a)).epsilon(1e-12));
        CHECK(p.z[1].im == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(std::sqrt(cd_euclid_sq(p.z[2])) <= 1e-12);
      }
}

TEST_CASE("ray gauge is invariant under unimodular rescaling") {
  std::mt19937_64 rng(0x6a06e);
  for (double eta : {1.0, 0.0, -1.0}) {
    const SpaceLabels l{eta, 1.0, 1.0};
    for (int trial = 0; trial < 200; ++trial) {
      Ray r;
      r.labels = l;
      for (int i = 0; i < 3; ++i) r.z[i] = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
      if (ray_inner(r, r).re <= 0.1) continue; // keep positive-norm gauge branch
      CDScalar u = cd_exp_imag(uniform(rng, -1.0, 1.0), eta);
      if (eta > 0.0 && (rng() & 1)) u = cd_neg(u); // -1 is unimodular
      Ray s = r;
      for (int i = 0; i < 3; ++i) s.z[i] = cd_mul(u, r.z[i], eta);
      const Ray nr = normalize_ray(r), ns = normalize_ray(s);
      for (int i = 0; i < 3; ++i) {
        CHECK(nr.z[i].re == doctest::Approx(ns.z[i].re).epsilon(1e-10));
        CHECK(nr.z[i].im == doctest::Approx(ns.z[i].im).epsilon(1e-10));
      }
    }
  }
}
