#include <algorithm>
#include <cmath>

#include "kernels_internal.hpp"

namespace blowup::kernels::detail {
namespace {

void multiply(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br - ai * bi, ai * br + ar * bi};
  }
}

void power_nonlinearity(std::span<const Complex> u, int sigma, std::span<Complex> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double ur = u[i].real(), ui = u[i].imag();
    const double p = int_pow(ur * ur + ui * ui, sigma);
    out[i] = {p * ur, p * ui};
  }
}

void linearized_power(std::span<const Complex> u, std::span<const Complex> w, int sigma,
                      std::span<Complex> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double ur = u[i].real(), ui = u[i].imag();
    const double wr = w[i].real(), wi = w[i].imag();
    const double m = ur * ur + ui * ui;
    const double pm1 = int_pow(m, sigma - 1);
    const double c1 = (sigma + 1) * (pm1 * m);
    const double c2 = sigma * pm1;
    // u^2 conj(w)
    const double sr = ur * ur - ui * ui, si = 2.0 * ur * ui;
    const double tr = sr * wr + si * wi, ti = si * wr - sr * wi;
    out[i] = {c1 * wr + c2 * tr, c1 * wi + c2 * ti};
  }
}

Pair rate_pair(std::span<const Complex> r, std::span<const Complex> u) {
  Pair acc;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double re = r[i].real() * u[i].real() + r[i].imag() * u[i].imag();
    const double m = u[i].real() * u[i].real() + u[i].imag() * u[i].imag();
    acc.first += 2.0 * re;
    acc.second += 4.0 * re * m;
  }
  return acc;
}

Pair moments(std::span<const Complex> u) {
  Pair acc;
  for (const Complex& z : u) {
    const double m = z.real() * z.real() + z.imag() * z.imag();
    acc.first += m;
    acc.second += m * m;
  }
  return acc;
}

double max_abs(std::span<const Complex> u) {
  double best = 0.0;
  for (const Complex& z : u) best = std::max(best, z.real() * z.real() + z.imag() * z.imag());
  return std::sqrt(best);
}

void axpy(double h, std::span<const Complex> x, std::span<const Complex> y, std::span<Complex> out) {
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = {y[i].real() + h * x[i].real(), y[i].imag() + h * x[i].imag()};
}

}  // namespace

const KernelTable kScalarTable{
    "scalar", multiply, power_nonlinearity, linearized_power, rate_pair, moments, max_abs, axpy,
};

}  // namespace blowup::kernels::detail
