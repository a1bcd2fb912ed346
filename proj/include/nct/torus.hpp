#pragma once

// The smooth noncommutative torus: finitely supported sums
//   x = sum a_{n,m} U^n V^m,   UV = e(θ) VU,   e(z) = exp(2πi z)
// with product, involution, the normalized trace and the derivations δ1, δ2,
// δτ = τ δ1 + δ2.

#include <complex>
#include <map>
#include <string_view>
#include <utility>

#include "nct/qfield.hpp"

namespace nct {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kTwoPiI{0.0, 2.0 * kPi};

enum class Precision { standard, extended };

Precision parse_precision(std::string_view name);
std::string_view to_string(Precision p);
// Reads NCT_PRECISION ("double" / "extended"); falls back when unset.
Precision precision_from_env(Precision fallback = Precision::standard);

// e(θ k) for exact θ. Extended precision reduces θk mod 1 with a 50-digit
// square root before rounding to double.
Complex twist_phase(const QuadIrr& theta, Int k, Precision precision = Precision::standard);

struct Monomial {
  Int n = 0;  // power of U
  Int m = 0;  // power of V
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

class TorusElement {
 public:
  using Coefficients = std::map<Monomial, Complex>;

  explicit TorusElement(QuadIrr theta, Precision precision = Precision::standard);

  static TorusElement unit(const QuadIrr& theta, Precision precision = Precision::standard) {
    return monomial(theta, 0, 0, 1.0, precision);
  }
  static TorusElement monomial(const QuadIrr& theta, Int n, Int m, Complex coeff = 1.0,
                               Precision precision = Precision::standard);
  static TorusElement U(const QuadIrr& theta, Precision precision = Precision::standard) {
    return monomial(theta, 1, 0, 1.0, precision);
  }
  static TorusElement V(const QuadIrr& theta, Precision precision = Precision::standard) {
    return monomial(theta, 0, 1, 1.0, precision);
  }

  const QuadIrr& theta() const { return theta_; }
  Precision precision() const { return precision_; }
  const Coefficients& coeffs() const { return coeffs_; }
  Complex coeff(Int n, Int m) const;
  std::size_t support_size() const { return coeffs_.size(); }

  // Adds c U^n V^m; exact zeros are removed from the support.
  void add_term(Int n, Int m, Complex c);

  TorusElement& operator+=(const TorusElement& other);
  TorusElement& operator-=(const TorusElement& other);
  TorusElement& operator*=(Complex s);

  friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
  friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
  friend TorusElement operator*(Complex s, TorusElement a) { return a *= s; }

 private:
  QuadIrr theta_;
  Precision precision_;
  Coefficients coeffs_;
};

// Throws std::domain_error when the two elements carry different θ.
TorusElement multiply(const TorusElement& x, const TorusElement& y);
inline TorusElement operator*(const TorusElement& x, const TorusElement& y) { return multiply(x, y); }

TorusElement star(const TorusElement& x);
Complex trace(const TorusElement& x);

enum class Derivation { delta1, delta2, delta_tau };
// δτ uses the supplied τ; the other two ignore it.
TorusElement derive(const TorusElement& x, Derivation which, Complex tau = {});

// Largest coefficient modulus of x - y.
double max_abs_difference(const TorusElement& x, const TorusElement& y);

}  // namespace nct
