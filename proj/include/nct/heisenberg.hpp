#pragma once

// Heisenberg groups over R^2 (parameter ε) and (Z/cZ)^2, the Heisenberg
// representation on a closed family of Schwartz functions
//   poly(x) · e(α x^2 + β x),   Im α > 0,
// the finite representation on C(Z/cZ), Lie derivatives and the holomorphic
// vector f_τ = e(τ x^2 / (2ε)).

#include <array>
#include <span>
#include <vector>

#include "nct/qfield.hpp"
#include "nct/torus.hpp"

namespace nct {

// e(z) = exp(2πi z).
Complex e(Complex z);
inline Complex e(double x) { return e(Complex{x}); }
// e(x) for rational x, reduced mod 1 before exponentiation.
Complex e(const Rational& x);

// Dense polynomial, coefficient i multiplies x^i.
using Poly = std::vector<Complex>;

namespace poly {
Complex eval(const Poly& p, Complex x);
Poly derivative(const Poly& p);
Poly times_x(const Poly& p);
// p(x + shift)
Poly shift(const Poly& p, Complex shift);
Poly add(const Poly& a, const Poly& b);
Poly scale(const Poly& p, Complex s);
Poly mul(const Poly& a, const Poly& b);
// Drops trailing exact zeros.
void trim(Poly& p);
}  // namespace poly

struct GaussianAtom {
  Poly poly{1.0};
  Complex alpha;
  Complex beta;

  Complex operator()(double x) const;
  bool is_zero() const;
  std::size_t degree() const { return poly.empty() ? 0 : poly.size() - 1; }
};

// Finite sum of atoms; atoms with identical (α, β) are merged.
class SchwartzVector {
 public:
  SchwartzVector() = default;
  SchwartzVector(GaussianAtom atom) { add(std::move(atom)); }  // NOLINT(google-explicit-constructor)

  const std::vector<GaussianAtom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  // Throws std::domain_error if Im α <= 0.
  void add(GaussianAtom atom);

  SchwartzVector& operator+=(const SchwartzVector& other);
  SchwartzVector& operator*=(Complex s);
  friend SchwartzVector operator+(SchwartzVector a, const SchwartzVector& b) { return a += b; }
  friend SchwartzVector operator*(Complex s, SchwartzVector a) { return a *= s; }

  Complex operator()(double x) const;

 private:
  std::vector<GaussianAtom> atoms_;
};

Complex eval(const SchwartzVector& f, double x);

// Elementary operators on the atom family; all exact at the atom level.
SchwartzVector translate(const SchwartzVector& f, Complex shift);  // x -> f(x + shift)
SchwartzVector modulate(const SchwartzVector& f, Complex freq);    // e(freq x) f(x)
SchwartzVector differentiate(const SchwartzVector& f);
SchwartzVector multiply_by_x(const SchwartzVector& f);

// Sample points covering every atom envelope to ±width standard deviations.
std::vector<double> envelope_grid(std::span<const GaussianAtom> atoms, std::size_t count, double width = 6.0);

// max |f - g| / max(|f|, |g|) over envelope_grid of both.
double relative_residual(const SchwartzVector& f, const SchwartzVector& g);

class FiniteVector {
 public:
  FiniteVector() = default;
  explicit FiniteVector(Int modulus);
  FiniteVector(Int modulus, std::vector<Complex> entries);
  static FiniteVector delta(Int modulus, Int index);

  Int modulus() const { return modulus_; }
  const std::vector<Complex>& entries() const { return entries_; }
  std::vector<Complex>& entries() { return entries_; }
  // Index taken mod c.
  Complex operator[](Int n) const { return entries_[static_cast<std::size_t>(mod(n, modulus_))]; }

  FiniteVector& operator+=(const FiniteVector& other);
  FiniteVector& operator*=(Complex s);
  friend FiniteVector operator+(FiniteVector a, const FiniteVector& b) { return a += b; }
  friend FiniteVector operator*(Complex s, FiniteVector a) { return a *= s; }

 private:
  Int modulus_ = 1;
  std::vector<Complex> entries_{Complex{}};
};

double max_abs_difference(const FiniteVector& a, const FiniteVector& b);

// ---------------------------------------------------------------- groups

struct RealHeisElement {
  Complex lambda{1.0};
  std::array<double, 2> y{};
  double eps = 1.0;
};

// Integer lifts of classes in (Z/cZ)^2; the half-integer phase in the cocycle
// is evaluated on the lift.
struct FiniteHeisElement {
  Complex lambda{1.0};
  std::array<Int, 2> m{};
  Int c = 1;
};

// ψ(x, y) = e((x1 y2 - y1 x2) / (2ε)) and e(x, y) = ψ(x, y) / ψ(y, x).
Complex real_cocycle(const std::array<double, 2>& x, const std::array<double, 2>& y, double eps);
Complex real_pairing(const std::array<double, 2>& x, const std::array<double, 2>& y, double eps);
// Exponents in Q/Z of the finite cocycle (1/(2c)) and pairing (1/c).
Rational finite_cocycle_exponent(const std::array<Int, 2>& x, const std::array<Int, 2>& y, Int c);
Rational finite_pairing_exponent(const std::array<Int, 2>& x, const std::array<Int, 2>& y, Int c);

// Group laws; throw std::domain_error if the parameters (ε or c) differ.
RealHeisElement group_mul(const RealHeisElement& h1, const RealHeisElement& h2);
FiniteHeisElement group_mul(const FiniteHeisElement& h1, const FiniteHeisElement& h2);
Complex pairing(const RealHeisElement& h1, const RealHeisElement& h2);
Complex pairing(const FiniteHeisElement& h1, const FiniteHeisElement& h2);

// U_(λ,y) f(x) = λ e((x y2 + y1 y2 / 2) / ε) f(x + y1)
SchwartzVector act_real(const RealHeisElement& h, const SchwartzVector& f, double eps);
// U_(λ,m) φ(n) = λ e((n m2 + m1 m2 / 2) / c) φ(n + m1)
FiniteVector act_finite(const FiniteHeisElement& h, const FiniteVector& phi, Int c);

// The finite action as a monomial matrix: out(n) = λ · e(phase[n]) · in(n + shift).
struct FiniteMonomialOperator {
  Int c;
  Complex lambda;
  Int shift;
  std::vector<Rational> phase;
};
FiniteMonomialOperator finite_operator(const FiniteHeisElement& h);
// Composition a∘b, exact in the rational phases.
FiniteMonomialOperator compose(const FiniteMonomialOperator& a, const FiniteMonomialOperator& b);

enum class Isotropy { isotropic, maximal_isotropic, neither };
// Subgroup of (Z/cZ)^2 generated by the given elements.
std::vector<std::array<Int, 2>> subgroup_closure(Int c, std::span<const std::array<Int, 2>> generators);
std::vector<std::array<Int, 2>> orthogonal_complement(Int c, std::span<const std::array<Int, 2>> subgroup);
Isotropy isotropic_check(Int c, std::span<const std::array<Int, 2>> generators);
// x -> e(x, .) is a bijection onto the character group (checked by exhaustion).
bool pairing_nondegenerate(Int c);

// exp(tA) = (1,(t,0)), exp(tB) = (1,(0,t)), exp(tC) = (e(t),(0,0)).
enum class LieGenerator { A, B, C };
SchwartzVector lie_derivative(LieGenerator X, const SchwartzVector& f, double eps);
// a δU_A + b δU_B, computed atom-wise with the x-coefficient 2α a + b/ε
// assembled before scaling by 2πi.
SchwartzVector lie_combination(Complex a, Complex b, const SchwartzVector& f, double eps);

// f_τ = e(τ x^2 / (2ε)). Throws std::domain_error unless Im τ > 0 and ε > 0.
GaussianAtom holomorphic_vector(Complex tau, double eps);

}  // namespace nct
