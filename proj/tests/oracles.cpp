#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace oracle {

using blowup::Level;
using blowup::ModelKind;
using blowup::ModelSpec;
using blowup::Partition;

namespace {

// Finite Laurent polynomial sum c_k e^{ikx}.
struct Poly {
  int lo = 0;
  std::vector<Complex> c;
  int hi() const { return lo + static_cast<int>(c.size()) - 1; }
  Complex at(int k) const { return (k < lo || k > hi()) ? Complex{} : c[static_cast<std::size_t>(k - lo)]; }
};

Poly from_field(const SpectralField& u, ModeRange in) {
  in = blowup::intersect(in, u.range());
  Poly p{in.lo, {}};
  for (int k = in.lo; k <= in.hi; ++k) p.c.push_back(u[k]);
  if (p.c.empty()) p = Poly{0, {Complex{}}};
  return p;
}

// Coefficients of conj(u(x)): conj(u_{-k}).
Poly conj_poly(const Poly& p) {
  Poly q{-p.hi(), {}};
  for (int k = q.lo; k <= -p.lo; ++k) q.c.push_back(std::conj(p.at(-k)));
  return q;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly r{a.lo + b.lo, std::vector<Complex>(a.c.size() + b.c.size() - 1)};
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

Poly power(const Poly& u, int n) {
  Poly r{0, {Complex(1.0, 0.0)}};
  for (int i = 0; i < n; ++i) r = multiply(r, u);
  return r;
}

SpectralField to_field(const Poly& p, ModeRange out, double time) {
  SpectralField f(out, time);
  for (int k = out.lo; k <= out.hi; ++k) f[k] = p.at(k);
  return f;
}

SpectralField restrict_field(const SpectralField& u, ModeRange r) {
  SpectralField f(r, u.time());
  for (int k = r.lo; k <= r.hi; ++k) f[k] = u.at_or_zero(k);
  return f;
}

}  // namespace

SpectralField random_field(ModeRange range, std::uint64_t seed, bool real_field, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, scale);
  SpectralField u(range);
  for (int k = range.lo; k <= range.hi; ++k) {
    const double re = g(rng);
    const double im = g(rng);
    u[k] = Complex(re, im);
  }
  if (real_field) {
    for (int k = range.lo; k <= range.hi; ++k) {
      if (!range.contains(-k)) {
        u[k] = 0.0;
      } else if (k > 0) {
        u[-k] = std::conj(u[k]);
      }
    }
    if (range.contains(0)) u[0] = u[0].real();
  }
  return u;
}

SpectralField convolution(const SpectralField& u, const SpectralField& v, ModeRange P, ModeRange Q, ModeRange out) {
  SpectralField w(out, u.time());
  for (int k = out.lo; k <= out.hi; ++k)
    for (int p = P.lo; p <= P.hi; ++p) {
      const int q = k - p;
      if (Q.contains(q)) w[k] += u.at_or_zero(p) * v.at_or_zero(q);
    }
  return w;
}

SpectralField convolution_magnitude(const SpectralField& u, const SpectralField& v, ModeRange P, ModeRange Q,
                                    ModeRange out) {
  SpectralField w(out, u.time());
  for (int k = out.lo; k <= out.hi; ++k)
    for (int p = P.lo; p <= P.hi; ++p) {
      const int q = k - p;
      if (Q.contains(q)) w[k] += std::abs(u.at_or_zero(p)) * std::abs(v.at_or_zero(q));
    }
  return w;
}

SpectralField burgers_galerkin(const SpectralField& u, ModeRange range) {
  SpectralField w(range, u.time());
  for (int k = range.lo; k <= range.hi; ++k) {
    Complex s;
    for (int p = range.lo; p <= range.hi; ++p)
      if (range.contains(k - p)) s += u.at_or_zero(p) * u.at_or_zero(k - p);
    w[k] = Complex(0.0, -0.5 * k) * s;
  }
  return w;
}

SpectralField burgers_tmodel(const SpectralField& u, double t, ModeRange R, ModeRange O) {
  SpectralField w(R, u.time());
  for (int k = R.lo; k <= R.hi; ++k) {
    Complex s;
    for (int p = R.lo; p <= R.hi; ++p) {
      const int q = k - p;
      if (!O.contains(q) || R.contains(q)) continue;
      Complex inner;
      for (int r = R.lo; r <= R.hi; ++r)
        if (R.contains(q - r)) inner += u.at_or_zero(r) * u.at_or_zero(q - r);
      s += u.at_or_zero(p) * (-t * Complex(0.0, 0.5 * q) * inner);
    }
    w[k] = -Complex(0.0, 0.5 * k) * 2.0 * s;
  }
  return w;
}

SpectralField nls_power(const SpectralField& u, int sigma, ModeRange in, ModeRange out) {
  const Poly p = from_field(u, in);
  const Poly prod = multiply(power(p, sigma + 1), power(conj_poly(p), sigma));
  return to_field(prod, out, u.time());
}

SpectralField nls_galerkin(const SpectralField& u, int sigma, ModeRange in, ModeRange out) {
  SpectralField w = oracle::nls_power(u, sigma, in, out);
  for (int k = out.lo; k <= out.hi; ++k) {
    const Complex uk = in.contains(k) ? u.at_or_zero(k) : Complex{};
    w[k] = Complex(0.0, -1.0 * k * k) * uk + Complex(0.0, 1.0) * w[k];
  }
  return w;
}

SpectralField nls_tmodel(const SpectralField& u, double t, int sigma, ModeRange R, ModeRange O) {
  SpectralField g = oracle::nls_galerkin(u, sigma, R, O);
  for (int k = R.lo; k <= R.hi; ++k) g[k] = 0.0;  // keep the unresolved part only
  const Poly pu = from_field(u, R);
  const Poly pw = from_field(g, O);
  const Poly cu = conj_poly(pu);
  const Poly mod = multiply(power(pu, sigma), power(cu, sigma));              // |u|^{2 sigma}
  const Poly mod1 = multiply(power(pu, sigma - 1), power(cu, sigma - 1));     // |u|^{2 sigma - 2}
  const Poly first = multiply(mod, pw);
  const Poly second = multiply(multiply(mod1, multiply(pu, pu)), conj_poly(pw));
  SpectralField out(R, u.time());
  for (int k = R.lo; k <= R.hi; ++k)
    out[k] = t * Complex(0.0, 1.0) * (double(sigma + 1) * first.at(k) + double(sigma) * second.at(k));
  return out;
}

SpectralField term(const ModelSpec& model, int j, const SpectralField& u, double t, const Partition& p, Level level) {
  ModeRange R = level == Level::reduced ? p.resolved : p.full;
  const ModeRange O = level == Level::reduced ? p.full : p.augmented;
  const ModeRange container = R;
  const SpectralField state = level == Level::reduced ? restrict_field(u, p.resolved) : u;
  SpectralField v;
  if (model.kind == ModelKind::burgers) {
    R = R.paired();
    v = j == 0 ? oracle::burgers_galerkin(state, R) : oracle::burgers_tmodel(state, t, R, O);
  } else {
    const int s = static_cast<int>(model.sigma);
    v = j == 0 ? oracle::nls_galerkin(state, s, R, R) : oracle::nls_tmodel(state, t, s, R, O);
  }
  return restrict_field(v, container);
}

namespace {

Matrix2 rates(const SpectralField& u, double t, const ModelSpec& model, const Partition& p, Level level) {
  ModeRange F = p.resolved;
  if (model.kind == ModelKind::burgers) F = F.paired();
  Matrix2 m = Matrix2::Zero();
  for (int j = 0; j < 2; ++j) {
    const SpectralField r = term(model, j, u, t, p, level);
    for (int k = F.lo; k <= F.hi; ++k) {
      const double re = (r.at_or_zero(k) * std::conj(u.at_or_zero(k))).real();
      m(0, j) += 2.0 * re;
      m(1, j) += 4.0 * re * std::norm(u.at_or_zero(k));
    }
  }
  return m;
}

}  // namespace

Matrix2 B(const SpectralField& u, double t, const ModelSpec& model, const Partition& p) {
  return rates(u, t, model, p, Level::reduced);
}

Matrix2 A(const SpectralField& u, double t, const ModelSpec& model, const Partition& p) {
  return rates(u, t, model, p, Level::full);
}

double max_diff(const SpectralField& a, const SpectralField& b) {
  const int lo = std::min(a.range().lo, b.range().lo);
  const int hi = std::max(a.range().hi, b.range().hi);
  double m = 0.0;
  for (int k = lo; k <= hi; ++k) m = std::max(m, std::abs(a.at_or_zero(k) - b.at_or_zero(k)));
  return m;
}

double max_abs(const SpectralField& a) {
  double m = 0.0;
  for (const Complex& z : a.coeffs()) m = std::max(m, std::abs(z));
  return m;
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
  const double scale = max_abs(b);
  const double d = max_diff(a, b);
  return scale > 0.0 ? d / scale : d;
}

double rel_diff(const Matrix2& a, const Matrix2& b) {
  const double scale = b.cwiseAbs().maxCoeff();
  const double d = (a - b).cwiseAbs().maxCoeff();
  return scale > 0.0 ? d / scale : d;
}

Complex evaluate(const SpectralField& u, double x) {
  Complex s;
  for (int k = u.range().lo; k <= u.range().hi; ++k) s += u[k] * std::exp(Complex(0.0, k * x));
  return s;
}

double burgers_characteristics(double x, double t) {
  // Newton on g(v) = v - sin(x - v t); g' = 1 + t cos(x - v t) > 0 for t < 1.
  double v = std::sin(x);
  for (int it = 0; it < 100; ++it) {
    const double g = v - std::sin(x - v * t);
    const double dg = 1.0 + t * std::cos(x - v * t);
    const double step = g / dg;
    v -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return v;
}

}  // namespace oracle
