#include "nct/torus.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace nct {

Precision parse_precision(std::string_view name) {
  if (name == "double" || name == "standard") return Precision::standard;
  if (name == "extended") return Precision::extended;
  throw std::invalid_argument("unknown precision '" + std::string(name) + "' (expected double or extended)");
}

std::string_view to_string(Precision p) { return p == Precision::extended ? "extended" : "double"; }

Precision precision_from_env(Precision fallback) {
  const char* env = std::getenv("NCT_PRECISION");
  if (env == nullptr || *env == '\0') return fallback;
  return parse_precision(env);
}

Complex twist_phase(const QuadIrr& theta, Int k, Precision precision) {
  if (k == 0) return 1.0;
  double frac = 0.0;
  if (precision == Precision::extended) {
    using Big = boost::multiprecision::cpp_bin_float_50;
    // θk = (p k + q k sqrtD) / r, reduced mod 1 at 50 digits
    Big num = Big(checked::mul(theta.p(), k) % theta.r());
    if (theta.q() != 0) num += Big(theta.q()) * Big(k) * boost::multiprecision::sqrt(Big(theta.radicand()));
    Big x = num / Big(theta.r());
    x -= boost::multiprecision::floor(x);
    frac = static_cast<double>(x);
  } else {
    double x = theta.to_double() * static_cast<double>(k);
    frac = x - std::floor(x);
  }
  return std::polar(1.0, 2.0 * kPi * frac);
}

TorusElement::TorusElement(QuadIrr theta, Precision precision) : theta_(std::move(theta)), precision_(precision) {}

TorusElement TorusElement::monomial(const QuadIrr& theta, Int n, Int m, Complex coeff, Precision precision) {
  TorusElement x(theta, precision);
  x.add_term(n, m, coeff);
  return x;
}

Complex TorusElement::coeff(Int n, Int m) const {
  auto it = coeffs_.find({n, m});
  return it == coeffs_.end() ? Complex{} : it->second;
}

void TorusElement::add_term(Int n, Int m, Complex c) {
  if (c == Complex{}) return;
  auto [it, inserted] = coeffs_.try_emplace({n, m}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) coeffs_.erase(it);
  }
}

namespace {

void require_same_theta(const TorusElement& x, const TorusElement& y) {
  if (!(x.theta() == y.theta()))
    throw std::domain_error("torus elements over different θ: " + x.theta().to_string() + " vs " +
                            y.theta().to_string());
}

}  // namespace

TorusElement& TorusElement::operator+=(const TorusElement& other) {
  require_same_theta(*this, other);
  for (const auto& [mono, c] : other.coeffs_) add_term(mono.n, mono.m, c);
  return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& other) {
  require_same_theta(*this, other);
  for (const auto& [mono, c] : other.coeffs_) add_term(mono.n, mono.m, -c);
  return *this;
}

TorusElement& TorusElement::operator*=(Complex s) {
  if (s == Complex{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [mono, c] : coeffs_) c *= s;
  return *this;
}

TorusElement multiply(const TorusElement& x, const TorusElement& y) {
  require_same_theta(x, y);
  TorusElement out(x.theta(), x.precision());
  // U^n V^m U^p V^q = ē(θ m p) U^{n+p} V^{m+q}
  for (const auto& [a, ca] : x.coeffs()) {
    for (const auto& [b, cb] : y.coeffs()) {
      Complex phase = std::conj(twist_phase(x.theta(), checked::mul(a.m, b.n), x.precision()));
      out.add_term(checked::add(a.n, b.n), checked::add(a.m, b.m), ca * cb * phase);
    }
  }
  return out;
}

TorusElement star(const TorusElement& x) {
  TorusElement out(x.theta(), x.precision());
  // (U^n V^m)* = V^{-m} U^{-n} = ē(θ n m) U^{-n} V^{-m}
  for (const auto& [a, c] : x.coeffs()) {
    Complex phase = std::conj(twist_phase(x.theta(), checked::mul(a.n, a.m), x.precision()));
    out.add_term(checked::neg(a.n), checked::neg(a.m), std::conj(c) * phase);
  }
  return out;
}

Complex trace(const TorusElement& x) { return x.coeff(0, 0); }

TorusElement derive(const TorusElement& x, Derivation which, Complex tau) {
  TorusElement out(x.theta(), x.precision());
  for (const auto& [a, c] : x.coeffs()) {
    Complex eigen;
    switch (which) {
      case Derivation::delta1:
        eigen = kTwoPiI * static_cast<double>(a.n);
        break;
      case Derivation::delta2:
        eigen = kTwoPiI * static_cast<double>(a.m);
        break;
      case Derivation::delta_tau:
        eigen = kTwoPiI * (tau * static_cast<double>(a.n) + static_cast<double>(a.m));
        break;
    }
    out.add_term(a.n, a.m, eigen * c);
  }
  return out;
}

double max_abs_difference(const TorusElement& x, const TorusElement& y) {
  require_same_theta(x, y);
  double worst = 0.0;
  const TorusElement diff = x - y;
  for (const auto& [mono, c] : diff.coeffs()) worst = std::max(worst, std::abs(c));
  return worst;
}

}  // namespace nct
