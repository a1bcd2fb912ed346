#pragma once

// Exact arithmetic in real quadratic fields Q(sqrt D), the fractional linear
// action of SL2(Z), and the fixing matrices / lattice data that come with a
// quadratic irrationality theta.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nct {

using Int = std::int64_t;

// Overflow-checked integer helpers. All throw std::overflow_error.
namespace checked {
Int add(Int a, Int b);
Int sub(Int a, Int b);
Int mul(Int a, Int b);
Int neg(Int a);
}  // namespace checked

Int gcd(Int a, Int b);
// Floor of the square root of n >= 0.
Int isqrt(Int n);
bool is_square(Int n);
// Floor division and non-negative remainder for positive divisors.
Int floor_div(Int a, Int b);
Int mod(Int a, Int b);

class Rational {
 public:
  Rational() = default;
  Rational(Int n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(Int num, Int den);

  Int num() const { return num_; }
  Int den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Representative in [0, 1).
  Rational frac() const;
  Int floor() const { return floor_div(num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(checked::neg(num_), den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string to_string() const;
  // Accepts "p", "p/q" with optional sign.
  static Rational parse(std::string_view text);

 private:
  Int num_ = 0;
  Int den_ = 1;
};

// (p + q*sqrt(D)) / r, canonical: D squarefree, r > 0, gcd(p, q, r) = 1.
// Rational values have q == 0; D is then only a field tag and is ignored by
// equality.
class QuadIrr {
 public:
  QuadIrr() = default;
  QuadIrr(Int p, Int q, Int r, Int D);

  static QuadIrr from_int(Int n, Int D = 1) { return QuadIrr(n, 0, 1, D); }
  static QuadIrr from_rational(const Rational& x, Int D = 1) { return QuadIrr(x.num(), 0, x.den(), D); }
  // Parses "(p+q*sqrtD)/r" and the obvious shorthands: "sqrt2", "1+sqrt2",
  // "-sqrt5", "(1+sqrt5)/2", "(-5+sqrt5)/10", "3/4", "7".
  static QuadIrr parse(std::string_view text);

  Int p() const { return p_; }
  Int q() const { return q_; }
  Int r() const { return r_; }
  Int radicand() const { return d_; }
  bool is_rational() const { return q_ == 0; }
  Rational rational_part() const { return Rational(p_, r_); }
  Rational irrational_part() const { return Rational(q_, r_); }

  QuadIrr conj() const { return QuadIrr(p_, checked::neg(q_), r_, d_); }
  Rational norm() const;
  Rational trace() const;

  int sign() const;
  Int floor() const;
  double to_double() const;
  long double to_long_double() const;

  QuadIrr operator-() const { return QuadIrr(checked::neg(p_), checked::neg(q_), r_, d_); }
  friend QuadIrr operator+(const QuadIrr& a, const QuadIrr& b);
  friend QuadIrr operator-(const QuadIrr& a, const QuadIrr& b);
  friend QuadIrr operator*(const QuadIrr& a, const QuadIrr& b);
  friend QuadIrr operator/(const QuadIrr& a, const QuadIrr& b);
  QuadIrr pow(unsigned n) const;

  friend bool operator==(const QuadIrr& a, const QuadIrr& b);
  friend std::strong_ordering operator<=>(const QuadIrr& a, const QuadIrr& b);

  // Primitive integer polynomial A x^2 + B x + C with A > 0 vanishing at an
  // irrational value.
  struct MinimalPolynomial {
    Int a, b, c;
    Int discriminant() const;
  };
  MinimalPolynomial minimal_polynomial() const;

  std::string to_string() const;

 private:
  Int p_ = 0;
  Int q_ = 0;
  Int r_ = 1;
  Int d_ = 1;
};

struct SL2Matrix {
  Int a = 1, b = 0, c = 0, d = 1;

  static SL2Matrix identity() { return {}; }
  // Throws std::domain_error unless ad - bc = 1.
  static SL2Matrix make(Int a, Int b, Int c, Int d);

  Int det() const;
  Int trace() const { return checked::add(a, d); }
  SL2Matrix inverse() const { return {d, checked::neg(b), checked::neg(c), a}; }
  SL2Matrix pow(unsigned n) const;

  friend SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y);
  friend bool operator==(const SL2Matrix&, const SL2Matrix&) = default;
  std::string to_string() const;
};

// g.t = (a t + b) / (c t + d). Throws std::domain_error at the pole.
QuadIrr moebius_act(const SL2Matrix& g, const QuadIrr& t);

struct ContinuedFraction {
  std::vector<Int> terms;           // partial quotients a0, a1, ...
  std::size_t preperiod = 0;        // terms[preperiod..] repeat
  std::vector<Int> period;          // empty if no repetition within max_terms
  bool periodic() const { return !period.empty(); }
};

// Exact floor/invert expansion; the period is found by repetition of the
// complete quotient. Throws std::domain_error on rational input.
ContinuedFraction cf_expand(const QuadIrr& t, std::size_t max_terms = 256);

struct Convergent {
  Int p, q;
};
std::vector<Convergent> convergents(const std::vector<Int>& terms);

// Minimal-trace matrix with g.t = t, c > 0, c t + d > 0, trace > 2.
SL2Matrix fixing_matrix(const QuadIrr& t);
// The same matrix assembled from the continued fraction period.
SL2Matrix fixing_matrix_from_cf(const QuadIrr& t);

// c_n t + d_n where g^n = (a_n b_n; c_n d_n). Throws std::domain_error if g
// does not fix t.
QuadIrr rank_value(const SL2Matrix& g, unsigned n, const QuadIrr& t);

// m + n*theta.
struct LatticeElement {
  Int m = 0, n = 0;
  QuadIrr value(const QuadIrr& theta) const;
  friend LatticeElement operator+(const LatticeElement& x, const LatticeElement& y) {
    return {checked::add(x.m, y.m), checked::add(x.n, y.n)};
  }
  friend bool operator==(const LatticeElement&, const LatticeElement&) = default;
};

// Coordinates of x in Z + theta Z, if x lies in that lattice.
std::optional<LatticeElement> lattice_coordinates(const QuadIrr& x, const QuadIrr& theta);

// {alpha : alpha * (Z + theta Z) in Z + theta Z} = Z + f O_k.
class MultiplierRing {
 public:
  explicit MultiplierRing(const QuadIrr& theta);
  Int conductor() const { return conductor_; }
  const QuadIrr& theta() const { return theta_; }
  bool contains(const QuadIrr& alpha) const;

 private:
  QuadIrr theta_;
  Int conductor_;
};

MultiplierRing multiplier_ring(const QuadIrr& theta);

// Discriminant of the maximal order of Q(sqrt D).
Int field_discriminant(Int D);

// theta, a fixing matrix g and epsilon = (c theta + d) / c.
class RMData {
 public:
  // Validates gθ = θ, c > 0, cθ + d > 0. Throws std::domain_error.
  RMData(const QuadIrr& theta, const SL2Matrix& g);
  static RMData from_theta(const QuadIrr& theta) { return RMData(theta, fixing_matrix(theta)); }

  const QuadIrr& theta() const { return theta_; }
  const SL2Matrix& g() const { return g_; }
  const QuadIrr& epsilon() const { return epsilon_; }

  SL2Matrix power(unsigned n) const { return g_.pow(n); }
  // (c_n θ + d_n) / c_n, n >= 1.
  QuadIrr epsilon_at(unsigned n) const;

  friend bool operator==(const RMData& x, const RMData& y) { return x.theta_ == y.theta_ && x.g_ == y.g_; }

 private:
  QuadIrr theta_;
  SL2Matrix g_;
  QuadIrr epsilon_;
};

}  // namespace nct
