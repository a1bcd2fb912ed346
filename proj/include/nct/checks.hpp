#pragma once

// Batch property suites over random inputs. Every residual is reported with
// the tolerance it is judged against.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nct/bimodule.hpp"
#include "nct/torus.hpp"

namespace nct {

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass() const { return value <= tolerance; }
};

struct SuiteReport {
  std::vector<Check> checks;
  bool pass() const;
  double worst(const std::string& name) const;
};

// Uniform coefficients in the unit square, support in [-span, span]^2.
TorusElement random_torus_element(const QuadIrr& theta, std::size_t max_support, std::mt19937_64& rng,
                                  Precision precision = Precision::standard, Int span = 6);

// max |x - y| / max(1, max |x|, max |y|)
double scaled_difference(const TorusElement& x, const TorusElement& y);

struct AlgebraSuiteOptions {
  std::size_t samples = 100;
  std::size_t max_support = 20;
  std::uint64_t seed = 1;
  Complex tau{0.3, 1.1};
  Precision precision = Precision::standard;
  double tolerance = 1e-12;
};

SuiteReport algebra_suite(const QuadIrr& theta, const AlgebraSuiteOptions& options = {});

struct ModuleSuiteOptions {
  std::uint64_t seed = 1;
  unsigned max_degree = 2;     // relation checks run on degrees 1 .. max_degree
  double tolerance = 1e-12;    // action, connection and phase identities
  double product_tolerance = 1e-8;  // balanced-product identities
  bool products = true;
};

// A fixed-shape test vector of degree n: f_τ ⊗ φ plus a translated,
// modulated, polynomial-weighted atom ⊗ ψ with random φ, ψ. Unless
// common_alpha, the second atom also gets a wider Gaussian.
ModuleElement sample_module_element(const RMData& data, unsigned n, Complex tau, std::mt19937_64& rng,
                                    bool common_alpha = false);

SuiteReport module_suite(const RMData& data, Complex tau, const ModuleSuiteOptions& options = {});

}  // namespace nct
