#pragma once

// The graded ring B = ⊕_{n>=0} R_n with R_n = {f_{τ,n} ⊗ φ : φ ∈ C(Z/c_n Z)}
// for n >= 1 and R_0 = C·1. Products go through the balanced tensor product.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "nct/bimodule.hpp"
#include "nct/qfield.hpp"

namespace nct {

struct RingOptions {
  double tolerance = 1e-10;       // balanced-product truncation target
  double max_condition = 1e10;
  double rank_threshold = 1e-8;   // relative singular-value cutoff for generation
  double quad_threshold = 1e-7;   // relative cutoff for the degree-3 comparison
  // Diagnostic theta grid: r = k / theta_r_den, l = 1 .. theta_l_max.
  // Zero picks L = lcm(c_m, c_n), r_den = c_{m+n} L, l_max = ceil(c_{m+n} L^2 / (c_m c_n)).
  bool theta_diagnostics = false;
  Int theta_l_max = 0;
  Int theta_r_den = 0;
  std::size_t threads = 1;        // basis-pair products computed concurrently
};

// c_n for n >= 1, 1 for n = 0.
Int piece_dim(unsigned n, const RMData& data);

// Degree -> coefficient vector in the basis f_{τ,n} ⊗ δ_j.
using RingElement = std::map<unsigned, std::vector<Complex>>;

class GradedRing {
 public:
  // Throws std::domain_error unless Im τ > 0.
  GradedRing(RMData data, Complex tau, RingOptions options = {});

  const RMData& data() const { return data_; }
  Complex tau() const { return tau_; }
  const RingOptions& options() const { return options_; }
  Int dim(unsigned n) const { return piece_dim(n, data_); }

  // f_{τ,n} ⊗ φ as a module element (n >= 1).
  ModuleElement embed(unsigned n, const std::vector<Complex>& coeffs) const;
  RingElement unit() const { return {{0u, {Complex{1.0}}}}; }
  RingElement basis(unsigned n, Int j) const;

 private:
  RMData data_;
  Complex tau_;
  RingOptions options_;
};

// Coefficients of an element of R_n in the basis f_{τ,n} ⊗ δ_j.
std::vector<Complex> holomorphic_coefficients(const ModuleElement& xi);

struct ProductReport {
  RingElement value;
  double residual = 0.0;  // worst least-squares residual over degree pairs
};

// Degreewise balanced products; degree 0 acts as scalars.
ProductReport mult(const GradedRing& ring, const RingElement& u, const RingElement& v);

double max_abs_difference(const RingElement& u, const RingElement& v);
double max_abs(const RingElement& u);

struct ThetaMatch {
  Int label = 0;     // target index ℓ for the (0, 0) basis pair
  Complex entry;
  Rational r;
  Int l = 0;
  Complex theta;
  double gap = 0.0;  // |entry - ϑ_r(l τ)|
};

struct StructureTensor {
  unsigned m = 0, n = 0;
  Int cm = 0, cn = 0, cmn = 0;
  std::vector<Complex> entries;    // (ℓ, i, j) row-major, ℓ slowest
  std::vector<double> residuals;   // per basis pair (i, j)
  std::vector<bool> flagged;       // conditioning failure or residual above tolerance
  double max_residual = 0.0;
  std::vector<ThetaMatch> theta_table;

  Complex at(Int l, Int i, Int j) const {
    return entries[static_cast<std::size_t>((l * cm + i) * cn + j)];
  }
  // Coefficient matrix of R_m ⊗ R_n -> R_{m+n}, columns indexed by i*cn + j.
  std::vector<std::vector<Complex>> matrix() const;
};

// Products of all basis pairs. Pairs whose solve fails or whose residual
// exceeds tolerance are flagged rather than thrown.
StructureTensor structure_tensor(const GradedRing& ring, unsigned m, unsigned n, double tolerance = 1e-8);

// Index-shift symmetry: T[ℓ + c_{m+n} Δi / c_m][i + Δi][j + Δj] = T[ℓ][i][j]
// whenever the shift preserves the product orbits. Returns the largest
// deviation relative to max |T| over every admissible shift with Δi ≤ c_m.
double shift_symmetry_residual(const StructureTensor& T, const RMData& data);

// Contraction with coefficient vectors.
std::vector<Complex> contract(const StructureTensor& T, const std::vector<Complex>& u, const std::vector<Complex>& v);

// Numerical rank: singular values above threshold × the largest.
Int numerical_rank(const std::vector<std::vector<Complex>>& columns, Int rows, double threshold);

struct GenerationReport {
  std::vector<bool> generated;  // entry n-1: R_1 ⊗ R_n -> R_{n+1} onto
  std::vector<Int> ranks;
  std::vector<Int> targets;
  bool all() const;
};

// Degrees n = 1 .. max_degree - 1. max_degree <= 1 is vacuous.
GenerationReport check_generation(const GradedRing& ring, unsigned max_degree);

enum class QuadStatus { quadratic, not_quadratic, inconclusive, not_applicable };
std::string_view to_string(QuadStatus s);

struct QuadraticReport {
  QuadStatus status = QuadStatus::not_applicable;
  Int kernel2 = 0;       // dim ker(R1⊗R1 -> R2)
  Int kernel3 = 0;       // dim ker(R1⊗R1⊗R1 -> R3)
  Int relations3 = 0;    // rank of K⊗R1 + R1⊗K
  double containment = 0.0;  // |μ3(K⊗R1 + R1⊗K)| relative to |μ3|
  std::string note;
};

QuadraticReport check_quadratic(const GradedRing& ring);

}  // namespace nct
