#pragma once

// Theta constants with rational characteristic
//   ϑ_r(m) = Σ_n exp(πi (n + r)^2 m),   Im m > 0,
// summed with a certified truncation bound, and the two-variable version
//   ϑ_r(z, m) = Σ_n exp(πi (n + r)^2 m + 2πi (n + r) z).
// Bounds cover truncation only; rounding is not part of the bound.

#include "nct/qfield.hpp"
#include "nct/torus.hpp"

namespace nct {

struct ThetaValue {
  Complex value;
  double bound = 0.0;  // truncation error bound
  Int terms = 0;       // N: the sum runs over |n| <= N
};

// r reduced to [0, 1).
Rational reduce_characteristic(const Rational& r);

// Bound on Σ_{|n|>N} exp(-π t (n + r)^2) for r reduced to [0, 1).
// Throws std::domain_error for t <= 0 or N < 1.
double tail_bound(Int N, const Rational& r, double t);
// Same with a real offset |r| < 1.
double tail_bound(Int N, double r, double t);

// Partial sum over |n| <= N in order of increasing |n|, compensated.
Complex theta_partial(const Rational& r, Complex m, Int N);

// Smallest N >= 1 whose tail bound is below tol. Throws for Im m <= 0.
ThetaValue theta_const(const Rational& r, Complex m, double tol = 1e-15);

// Sum recentred at the peak n + r ≈ -Im z / Im m. Throws for Im m <= 0.
ThetaValue theta_fn(const Rational& r, Complex z, Complex m, double tol = 1e-15);

}  // namespace nct
