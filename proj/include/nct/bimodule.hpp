#pragma once

// Heisenberg bimodules E_{g^n} = S(R) ⊗ C(Z/c_n Z) over the torus algebra,
// with g^n = (a_n b_n; c_n d_n) and ε_n = (c_n θ + d_n) / c_n.
//
// Right action:  ξ·U = (Ǔ ⊗ ǔ) ξ,  ξ·V = (V̌ ⊗ v̌) ξ
//   (Ǔf)(x) = f(x - ε)     (ǔφ)[k] = φ[k - 1]
//   (V̌f)(x) = e(x) f(x)    (v̌φ)[k] = ē(d k / c) φ[k]
// Left action:   U·ξ = (Û ⊗ û) ξ,  V·ξ = (V̂ ⊗ v̂) ξ
//   (Ûf)(x) = f(x - 1/c)   (ûφ)[k] = φ[k - a]
//   (V̂f)(x) = e(x/(cε)) f(x)  (v̂φ)[k] = ē(k / c) φ[k]
//
// Products of algebra elements act by ξ·(ab) = (ξ·a)·b and (ab)·ξ = a·(b·ξ).

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nct/heisenberg.hpp"
#include "nct/qfield.hpp"
#include "nct/torus.hpp"

namespace nct {

struct ModuleTerm {
  SchwartzVector schwartz;
  FiniteVector finite;
};

class ModuleElement {
 public:
  // Degree n >= 1.
  ModuleElement(RMData data, unsigned degree);
  static ModuleElement pure(RMData data, unsigned degree, SchwartzVector f, FiniteVector phi);

  const RMData& data() const { return data_; }
  unsigned degree() const { return degree_; }
  const SL2Matrix& matrix() const { return gn_; }
  Int modulus() const { return gn_.c; }
  double epsilon() const { return eps_; }
  QuadIrr epsilon_exact() const { return data_.epsilon_at(degree_); }
  const std::vector<ModuleTerm>& terms() const { return terms_; }

  // Throws std::domain_error if the finite modulus is not c_n.
  void add_term(SchwartzVector f, FiniteVector phi);

  ModuleElement& operator+=(const ModuleElement& other);
  ModuleElement& operator*=(Complex s);
  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a += (-1.0) * b; }
  friend ModuleElement operator*(Complex s, ModuleElement a) { return a *= s; }

  // (Σ f ⊗ φ)(x, [k])
  Complex operator()(double x, Int k) const;
  std::vector<GaussianAtom> atoms() const;

 private:
  RMData data_;
  unsigned degree_;
  SL2Matrix gn_;
  double eps_;
  std::vector<ModuleTerm> terms_;
};

void require_compatible(const ModuleElement& a, const ModuleElement& b);

// max |a - b| / max(|a|, |b|) over a sample grid covering every atom and
// every finite index.
double relative_residual(const ModuleElement& a, const ModuleElement& b);

enum class Generator { U, V, U_inv, V_inv };

ModuleElement right_act(const ModuleElement& xi, Generator a);
ModuleElement left_act(Generator a, const ModuleElement& xi);
// Linear extension to finitely supported algebra elements.
ModuleElement right_act(const ModuleElement& xi, const TorusElement& a);
ModuleElement left_act(const TorusElement& a, const ModuleElement& xi);

// ∇1 multiplies the Schwartz factor by 2πi x / ε_n, ∇2 differentiates it.
ModuleElement connection(int direction, const ModuleElement& xi);

// c_n θ + d_n.
QuadIrr rank(const ModuleElement& xi);
QuadIrr rank(const RMData& data, unsigned n);

// ---------------------------------------------------------- tensor product

class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double condition, std::vector<double> grid)
      : std::runtime_error(what), condition_(condition), grid_(std::move(grid)) {}
  double condition() const { return condition_; }
  const std::vector<double>& grid() const { return grid_; }

 private:
  double condition_;
  std::vector<double> grid_;
};

struct BalancedOptions {
  // Target accuracy; the lattice sums are truncated at 1e-3 of this.
  double tolerance = 1e-10;
  // Column-equilibrated condition number above which the solve is refused.
  double max_condition = 1e10;
  // Discard singular values below 1 / max_condition (truncated SVD) instead
  // of refusing the solve.
  bool prune = true;
  // When set, expand in {f_{τ,m+n} ⊗ δ_l} only; otherwise the basis is built
  // from the input atoms (polynomial × Gaussian with the induced α, β).
  std::optional<Complex> holomorphic_tau;
};

struct BalancedResult {
  ModuleElement product;
  double residual = 0.0;       // relative least-squares residual
  double condition = 0.0;      // of the equilibrated design matrix, over the retained singular values
  std::size_t grid_points = 0;
  std::size_t basis_size = 0;  // per finite index
  std::size_t pruned = 0;      // singular values discarded by the truncated solve
  Int truncation_radius = 0;   // largest lattice radius used
};

// Orbit data identifying the relation-invariant part of E_{g^m} ⊗ E_{g^n}
// with E_{g^{m+n}}: each orbit of the finite indices under the relation group
// carries one label in Z/c_{m+n}Z.
struct ProductOrbit {
  Int M;      // lattice offset w0 = M / c_{m+n}
  Int j0;     // finite index in the first factor
  Int k0;     // finite index in the second factor
  Int label;  // target index
};

struct ProductGeometry {
  SL2Matrix g1, g2, g3;
  double eps1 = 0.0, eps2 = 0.0, eps3 = 0.0;
  double slope = 0.0;  // 1 / (c2 ε2): x-coordinate per unit of the target variable
  std::vector<ProductOrbit> orbits;  // indexed by label
};

ProductGeometry product_geometry(const RMData& data, unsigned m, unsigned n);

// Lattice-averaged value of ξ ⊗ η at target coordinates (z, [label]).
Complex averaged_value(const ProductGeometry& geo, const ModuleElement& xi, const ModuleElement& eta, double z,
                       Int label, double tolerance, Int* radius_used = nullptr);

// ξ ⊗_A η ∈ E_{g^{m+n}}. Throws ConditioningError for ill-conditioned solves.
BalancedResult balanced_product(const ModuleElement& xi, const ModuleElement& eta, const BalancedOptions& options = {});

}  // namespace nct
