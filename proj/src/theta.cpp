#include "nct/theta.hpp"

#include <cmath>
#include <stdexcept>

namespace nct {

namespace {

// Neumaier summation.
struct Compensated {
  Complex sum{}, carry{};
  void add(Complex x) {
    auto part = [](double& s, double& c, double v) {
      double t = s + v;
      c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
      s = t;
    };
    double sr = sum.real(), si = sum.imag(), cr = carry.real(), ci = carry.imag();
    part(sr, cr, x.real());
    part(si, ci, x.imag());
    sum = {sr, si};
    carry = {cr, ci};
  }
  Complex value() const { return sum + carry; }
};

void require_upper(Complex m) {
  if (!(m.imag() > 0.0)) throw std::domain_error("theta series needs Im m > 0");
}

constexpr Int kMaxTerms = 10'000'000;

Int terms_for(double r, double t, double tol) {
  for (Int N = 1; N < kMaxTerms; ++N)
    if (tail_bound(N, r, t) <= tol) return N;
  throw std::runtime_error("theta series: tolerance unreachable");
}

// Σ_{|k|<=N} exp(πi (k + s)^2 m + 2πi (k + s) z), increasing |k|.
Complex centred_sum(double s, Complex z, Complex m, Int N) {
  Compensated acc;
  auto term = [&](double x) { return std::exp(Complex{0.0, kPi} * (x * x * m + 2.0 * x * z)); };
  acc.add(term(s));
  for (Int k = 1; k <= N; ++k) {
    acc.add(term(static_cast<double>(k) + s));
    acc.add(term(s - static_cast<double>(k)));
  }
  return acc.value();
}

}  // namespace

Rational reduce_characteristic(const Rational& r) { return r.frac(); }

double tail_bound(Int N, double r, double t) {
  if (!(t > 0.0)) throw std::domain_error("tail bound needs t > 0");
  if (N < 1) throw std::domain_error("tail bound needs N >= 1");
  double u = static_cast<double>(N) + 1.0 - std::abs(r);
  return 2.0 * std::exp(-kPi * t * u * u) / (1.0 - std::exp(-2.0 * kPi * t * u));
}

double tail_bound(Int N, const Rational& r, double t) { return tail_bound(N, reduce_characteristic(r).to_double(), t); }

Complex theta_partial(const Rational& r, Complex m, Int N) {
  require_upper(m);
  return centred_sum(reduce_characteristic(r).to_double(), 0.0, m, N);
}

ThetaValue theta_const(const Rational& r, Complex m, double tol) {
  require_upper(m);
  double rr = reduce_characteristic(r).to_double();
  Int N = terms_for(rr, m.imag(), tol);
  return {centred_sum(rr, 0.0, m, N), tail_bound(N, rr, m.imag()), N};
}

ThetaValue theta_fn(const Rational& r, Complex z, Complex m, double tol) {
  require_upper(m);
  const double t = m.imag();
  const double rr = reduce_characteristic(r).to_double();
  // |term| = exp(π (Im z)^2 / t) exp(-π t (n + r + Im z / t)^2)
  const double peak = -z.imag() / t;
  const double n0 = std::round(peak - rr);
  const double s = n0 + rr;
  const double offset = s - peak;  // in [-1/2, 1/2]
  const double scale = std::exp(kPi * z.imag() * z.imag() / t);
  Int N = 1;
  while (scale * tail_bound(N, offset, t) > tol) {
    if (++N >= kMaxTerms) throw std::runtime_error("theta series: tolerance unreachable");
  }
  return {centred_sum(s, z, m, N), scale * tail_bound(N, offset, t), N};
}

}  // namespace nct
