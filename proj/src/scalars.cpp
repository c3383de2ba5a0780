#include "ckd/scalars.hpp"

#include <cmath>
#include <cstdlib>

namespace ckd {

double default_tol() {
  static const double tol = [] {
    if (const char* env = std::getenv("CKD_TOL")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && std::isfinite(v) && v > 0.0) return v;
    }
    return 1e-9;
  }();
  return tol;
}

static double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

SpaceLabels normalize(const SpaceLabels& l) {
  return {sign_of(l.eta), sign_of(l.kappa1), sign_of(l.kappa2)};
}

SpaceLabels dual_labels(const SpaceLabels& l) { return {l.eta, l.kappa2, l.kappa1}; }

std::string classify(const SpaceLabels& l) {
  const SpaceLabels n = normalize(l);
  std::string name;
  if (n.eta > 0) name = "Complex Hermitian";
  else if (n.eta == 0) name = "Parabolic Complex Hermitian";
  else name = "Split Complex Hermitian";
  name += ' ';

  const int k1 = static_cast<int>(n.kappa1), k2 = static_cast<int>(n.kappa2);
  if (k2 > 0) {
    name += (k1 > 0) ? "Elliptic" : (k1 == 0) ? "Euclidean" : "Hyperbolic";
  } else if (k2 == 0) {
    name += (k1 > 0)    ? "Co-Euclidean (Oscillating Newton-Hooke)"
            : (k1 == 0) ? "Galilean"
                        : "Co-Minkowskian (Expanding Newton-Hooke)";
  } else {
    name += (k1 > 0)    ? "Co-Hyperbolic (Anti-de Sitter)"
            : (k1 == 0) ? "Minkowskian"
                        : "Doubly Hyperbolic (De Sitter)";
  }
  return name;
}

double cosk(double label, double x) {
  if (label > 0.0) return std::cos(std::sqrt(label) * x);
  if (label < 0.0) return std::cosh(std::sqrt(-label) * x);
  return 1.0;
}

double sink(double label, double x) {
  if (label > 0.0) {
    const double r = std::sqrt(label);
    return std::sin(r * x) / r;
  }
  if (label < 0.0) {
    const double r = std::sqrt(-label);
    return std::sinh(r * x) / r;
  }
  return x;
}

double versink(double label, double x) {
  // (1 - cosk)/label in the cancellation-free half-angle form; both branches
  // agree with the direct quotient and extend continuously to x^2/2 at 0.
  if (label > 0.0) {
    const double h = std::sin(0.5 * std::sqrt(label) * x);
    return 2.0 * h * h / label;
  }
  if (label < 0.0) {
    const double h = std::sinh(0.5 * std::sqrt(-label) * x);
    return -2.0 * h * h / label;
  }
  return 0.5 * x * x;
}

double tank(double label, double x) {
  const double c = cosk(label, x);
  const double s = sink(label, x);
  if (std::abs(c) <= 1e-14 * (1.0 + std::abs(s)))
    throw error(errc::pole, "tank: argument within 1e-14 of a cosine zero");
  return s / c;
}

CDScalar cd_exp_imag(double x, double eta) { return {cosk(eta, x), sink(eta, x)}; }

double cd_arg(CDScalar u, double eta, double tol) {
  if (!std::isfinite(u.re) || !std::isfinite(u.im))
    throw error(errc::non_finite, "cd_arg: non-finite input");
  const double m = cd_modulus_sq(u, eta);
  const double scale = std::max(1.0, std::max(u.re * u.re, std::abs(eta) * u.im * u.im));
  if (std::abs(m - 1.0) > std::max(tol, 64.0 * 2.220446049250313e-16) * scale)
    throw error(errc::not_unimodular, "cd_arg: ring modulus differs from 1");
  if (eta > 0.0) {
    const double r = std::sqrt(eta);
    return std::atan2(r * u.im, u.re) / r;
  }
  if (eta == 0.0) {
    if (u.re < 0.0)
      throw error(errc::no_real_argument,
                  "cd_arg: real part -1 is not reached by exp(i x) at parabolic ring label");
    return u.im;
  }
  const double r = std::sqrt(-eta);
  if (u.re < 0.0)
    throw error(errc::no_real_argument,
                "cd_arg: lower hyperbola sheet is not reached by exp(i x)");
  return std::asinh(r * u.im) / r;
}

double arck(double label, double c, double s, double tol) {
  if (!std::isfinite(c) || !std::isfinite(s))
    throw error(errc::non_finite, "arck: non-finite input");
  const double scale = std::max(1.0, std::max(c * c, std::abs(label) * s * s));
  if (std::abs(c * c + label * s * s - 1.0) > std::max(tol, 64.0 * 2.220446049250313e-16) * scale)
    throw error(errc::inconsistent_pair, "arck: pair violates cosk^2 + label*sink^2 = 1");
  if (label > 0.0) {
    const double r = std::sqrt(label);
    return std::atan2(r * s, c) / r;
  }
  if (label == 0.0) {
    if (c < 0.0)
      throw error(errc::inconsistent_pair, "arck: cosine branch -1 unreachable at label 0");
    return s;
  }
  const double r = std::sqrt(-label);
  if (c < 0.0)
    throw error(errc::inconsistent_pair, "arck: negative cosine unreachable at negative label");
  return std::asinh(r * s) / r;
}

} // namespace ckd
