#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "errors.hpp"

namespace tortoise {

struct ComplexValue {
  double re = 0.0;
  double im = 0.0;

  ComplexValue() = default;
  ComplexValue(double r, double i = 0.0) : re(r), im(i) {}
  ComplexValue(std::complex<double> z) : re(z.real()), im(z.imag()) {}
  std::complex<double> c() const { return {re, im}; }
  double abs() const { return std::hypot(re, im); }
  double arg() const { return std::atan2(im, re); }
};

// log Gamma by upward shift and Stirling. Logs of the shift factors are
// principal, so the result is the usual analytic log-gamma.
inline ComplexValue log_gamma(ComplexValue zin) {
  using C = std::complex<double>;
  C z = zin.c();
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(ErrorKind::InvalidArgument, "log_gamma of non-finite value");
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    fail(ErrorKind::GammaPole, "Gamma has a pole at " + std::to_string(z.real()));

  C shift = 0.0;
  while (std::abs(z) < 10.0 || z.real() <= 0.0) {
    shift += std::log(z);
    z += 1.0;
  }
  // Bernoulli numbers B_2 .. B_20.
  static constexpr double B[] = {1.0 / 6,         -1.0 / 30,   1.0 / 42,       -1.0 / 30,        5.0 / 66,
                                 -691.0 / 2730,   7.0 / 6,     -3617.0 / 510,  43867.0 / 798,    -174611.0 / 330};
  C s = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi);
  C zz = 1.0 / (z * z);
  C p = 1.0 / z;
  for (int n = 1; n <= 10; ++n) {
    s += B[n - 1] / (2.0 * n * (2.0 * n - 1.0)) * p;
    p *= zz;
  }
  return s - shift;
}

namespace detail {

using mp = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<120>, boost::multiprecision::et_off>;

struct mpc {
  mp re, im;
};
inline mpc mul(const mpc& a, const mpc& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline mpc div(const mpc& a, const mpc& b) {
  mp d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline mp norm2(const mpc& a) { return a.re * a.re + a.im * a.im; }

}  // namespace detail

// Kummer M(a, b, z) by direct series, carried in 120-digit arithmetic so the
// cancellation at |z| up to 200 stays harmless.
inline ComplexValue kummer_m(ComplexValue a, ComplexValue b, ComplexValue z) {
  using detail::mp;
  using detail::mpc;
  if (!(z.abs() <= 200.0)) fail(ErrorKind::SeriesDomain, "kummer_m series needs |z| <= 200");
  if (b.im == 0.0 && b.re <= 0.0 && b.re == std::floor(b.re)) fail(ErrorKind::SeriesDomain, "kummer_m needs b not a nonpositive integer");

  mpc A{a.re, a.im}, Bv{b.re, b.im}, Z{z.re, z.im};
  mpc term{1, 0}, sum{1, 0};
  const mp eps2 = mp(1e-40);  // (1e-20)^2 relative, well below double precision
  const double peak = z.abs() + std::hypot(a.re, a.im);
  for (int n = 0; n < 20000; ++n) {
    mpc num = mul(term, mpc{A.re + n, A.im});
    num = mul(num, Z);
    term = div(num, mul(mpc{Bv.re + n, Bv.im}, mpc{mp(n + 1), 0}));
    sum.re += term.re;
    sum.im += term.im;
    if (n > peak && norm2(term) <= eps2 * norm2(sum)) break;
    if (norm2(term) == 0) break;
  }
  return {static_cast<double>(sum.re), static_cast<double>(sum.im)};
}

// M_{mu,nu}(z) = e^{-z/2} z^{nu+1/2} M(nu - mu + 1/2, 1 + 2 nu, z), principal power.
inline ComplexValue whittaker_m(ComplexValue mu, ComplexValue nu, ComplexValue z) {
  using C = std::complex<double>;
  C m = mu.c(), n = nu.c(), x = z.c();
  C km = kummer_m(n - m + 0.5, 1.0 + 2.0 * n, z).c();
  return std::exp(-x / 2.0) * std::pow(x, n + 0.5) * km;
}

inline ComplexValue coulomb_exact(int l, double alpha, double k, double r) {
  if (l < 0) fail(ErrorKind::InvalidArgument, "l must be nonnegative");
  if (!(k > 0.0) || !(r > 0.0)) fail(ErrorKind::InvalidArgument, "k and r must be positive");
  if (2.0 * k * r > 200.0) fail(ErrorKind::SeriesDomain, "coulomb_exact needs 2kr <= 200");
  return whittaker_m({0.0, alpha / (2.0 * k)}, {l + 0.5, 0.0}, {0.0, 2.0 * k * r});
}

// Real regular Coulomb solution: coulomb_exact with the factor i^{l+1} removed.
inline double coulomb_regular(int l, double alpha, double k, double r) {
  std::complex<double> v = coulomb_exact(l, alpha, k, r).c();
  std::complex<double> ip = std::pow(std::complex<double>(0.0, 1.0), l + 1);
  return (v / ip).real();
}

inline double oscillator_exact(int l, double omega, double k, double r) {
  if (l < 0) fail(ErrorKind::InvalidArgument, "l must be nonnegative");
  if (!(omega > 0.0) || !(k > 0.0) || !(r > 0.0)) fail(ErrorKind::InvalidArgument, "omega, k and r must be positive");
  double z = omega * r * r;
  if (z > 200.0) fail(ErrorKind::SeriesDomain, "oscillator_exact needs omega r^2 <= 200");
  ComplexValue w = whittaker_m({-k * k / (4.0 * omega), 0.0}, {(2.0 * l + 1.0) / 4.0, 0.0}, {z, 0.0});
  return w.re / std::sqrt(r);
}

}  // namespace tortoise
