#include "nct/bimodule.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace nct {

ModuleElement::ModuleElement(RMData data, unsigned degree) : data_(std::move(data)), degree_(degree) {
  if (degree == 0) throw std::domain_error("module elements have degree >= 1");
  gn_ = data_.power(degree);
  eps_ = data_.epsilon_at(degree).to_double();
}

ModuleElement ModuleElement::pure(RMData data, unsigned degree, SchwartzVector f, FiniteVector phi) {
  ModuleElement xi(std::move(data), degree);
  xi.add_term(std::move(f), std::move(phi));
  return xi;
}

void ModuleElement::add_term(SchwartzVector f, FiniteVector phi) {
  if (phi.modulus() != modulus())
    throw std::domain_error("finite factor has modulus " + std::to_string(phi.modulus()) + ", degree " +
                            std::to_string(degree_) + " needs " + std::to_string(modulus()));
  if (f.empty()) return;
  terms_.push_back({std::move(f), std::move(phi)});
}

void require_compatible(const ModuleElement& a, const ModuleElement& b) {
  if (!(a.data() == b.data()) || a.degree() != b.degree())
    throw std::domain_error("module elements live in different bimodules");
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& other) {
  require_compatible(*this, other);
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

ModuleElement& ModuleElement::operator*=(Complex s) {
  for (auto& t : terms_) t.finite *= s;
  return *this;
}

Complex ModuleElement::operator()(double x, Int k) const {
  Complex sum{};
  for (const auto& t : terms_) sum += t.schwartz(x) * t.finite[k];
  return sum;
}

std::vector<GaussianAtom> ModuleElement::atoms() const {
  std::vector<GaussianAtom> out;
  for (const auto& t : terms_) out.insert(out.end(), t.schwartz.atoms().begin(), t.schwartz.atoms().end());
  return out;
}

double relative_residual(const ModuleElement& a, const ModuleElement& b) {
  require_compatible(a, b);
  auto all = a.atoms();
  auto more = b.atoms();
  all.insert(all.end(), more.begin(), more.end());
  if (all.empty()) return 0.0;
  double diff = 0.0, scale = 0.0;
  for (double x : envelope_grid(all, 129)) {
    for (Int k = 0; k < a.modulus(); ++k) {
      Complex u = a(x, k), v = b(x, k);
      diff = std::max(diff, std::abs(u - v));
      scale = std::max({scale, std::abs(u), std::abs(v)});
    }
  }
  return scale == 0.0 ? 0.0 : diff / scale;
}

namespace {

// out[k] = e(phase(k)) φ[k - shift]
template <class Phase>
FiniteVector finite_op(const FiniteVector& phi, Int shift, Phase phase) {
  Int c = phi.modulus();
  FiniteVector out(c);
  for (Int k = 0; k < c; ++k) out.entries()[static_cast<std::size_t>(k)] = e(phase(k)) * phi[k - shift];
  return out;
}

template <class F>
ModuleElement map_terms(const ModuleElement& xi, F op) {
  ModuleElement out(xi.data(), xi.degree());
  for (const auto& t : xi.terms()) {
    auto [f, phi] = op(t.schwartz, t.finite);
    out.add_term(std::move(f), std::move(phi));
  }
  return out;
}

}  // namespace

ModuleElement right_act(const ModuleElement& xi, Generator a) {
  const Int c = xi.modulus();
  const Int d = xi.matrix().d;
  const double eps = xi.epsilon();
  return map_terms(xi, [&](const SchwartzVector& f, const FiniteVector& phi) {
    switch (a) {
      case Generator::U:
        return std::pair{translate(f, -eps), finite_op(phi, 1, [](Int) { return Rational(0); })};
      case Generator::U_inv:
        return std::pair{translate(f, eps), finite_op(phi, -1, [](Int) { return Rational(0); })};
      case Generator::V:
        return std::pair{modulate(f, 1.0), finite_op(phi, 0, [&](Int k) { return Rational(-d * k, c); })};
      case Generator::V_inv:
        return std::pair{modulate(f, -1.0), finite_op(phi, 0, [&](Int k) { return Rational(d * k, c); })};
    }
    throw std::logic_error("bad generator");
  });
}

ModuleElement left_act(Generator a, const ModuleElement& xi) {
  const Int c = xi.modulus();
  const Int an = xi.matrix().a;
  const double freq = 1.0 / (static_cast<double>(c) * xi.epsilon());
  const double step = 1.0 / static_cast<double>(c);
  return map_terms(xi, [&](const SchwartzVector& f, const FiniteVector& phi) {
    switch (a) {
      case Generator::U:
        return std::pair{translate(f, -step), finite_op(phi, an, [](Int) { return Rational(0); })};
      case Generator::U_inv:
        return std::pair{translate(f, step), finite_op(phi, -an, [](Int) { return Rational(0); })};
      case Generator::V:
        return std::pair{modulate(f, freq), finite_op(phi, 0, [&](Int k) { return Rational(-k, c); })};
      case Generator::V_inv:
        return std::pair{modulate(f, -freq), finite_op(phi, 0, [&](Int k) { return Rational(k, c); })};
    }
    throw std::logic_error("bad generator");
  });
}

namespace {

void require_theta(const ModuleElement& xi, const TorusElement& a) {
  if (!(xi.data().theta() == a.theta()))
    throw std::domain_error("algebra element over θ = " + a.theta().to_string() + " acting on module over θ = " +
                            xi.data().theta().to_string());
}

ModuleElement right_power(ModuleElement xi, Generator g, Generator g_inv, Int n) {
  for (Int i = 0; i < std::abs(n); ++i) xi = right_act(xi, n > 0 ? g : g_inv);
  return xi;
}

ModuleElement left_power(Generator g, Generator g_inv, Int n, ModuleElement xi) {
  for (Int i = 0; i < std::abs(n); ++i) xi = left_act(n > 0 ? g : g_inv, xi);
  return xi;
}

}  // namespace

ModuleElement right_act(const ModuleElement& xi, const TorusElement& a) {
  require_theta(xi, a);
  ModuleElement out(xi.data(), xi.degree());
  for (const auto& [mono, coeff] : a.coeffs()) {
    auto t = right_power(right_power(xi, Generator::U, Generator::U_inv, mono.n), Generator::V, Generator::V_inv, mono.m);
    out += coeff * std::move(t);
  }
  return out;
}

ModuleElement left_act(const TorusElement& a, const ModuleElement& xi) {
  require_theta(xi, a);
  ModuleElement out(xi.data(), xi.degree());
  for (const auto& [mono, coeff] : a.coeffs()) {
    auto t = left_power(Generator::U, Generator::U_inv, mono.n, left_power(Generator::V, Generator::V_inv, mono.m, xi));
    out += coeff * std::move(t);
  }
  return out;
}

ModuleElement connection(int direction, const ModuleElement& xi) {
  if (direction != 1 && direction != 2) throw std::invalid_argument("connection direction must be 1 or 2");
  const double eps = xi.epsilon();
  return map_terms(xi, [&](const SchwartzVector& f, const FiniteVector& phi) {
    return std::pair{direction == 1 ? lie_derivative(LieGenerator::B, f, eps) : differentiate(f), phi};
  });
}

QuadIrr rank(const RMData& data, unsigned n) { return rank_value(data.g(), n, data.theta()); }
QuadIrr rank(const ModuleElement& xi) { return rank(xi.data(), xi.degree()); }

// ------------------------------------------------------------ tensor product
//
// Coordinates on the relation-invariant section: a point (z, w) of the target
// sits at x = z/(c2 ε2) - w ε1 in the first factor and y = z + w/c2 in the
// second. W_U moves w by one step and the finite indices by (j, k) -> (j - 1,
// k + a2); W_V cuts out w ∈ (M + c1 c2 Z)/c3 with M ≡ k c1 - d1 j c2.

ProductGeometry product_geometry(const RMData& data, unsigned m, unsigned n) {
  ProductGeometry geo;
  geo.g1 = data.power(m);
  geo.g2 = data.power(n);
  geo.g3 = data.power(m + n);
  geo.eps1 = data.epsilon_at(m).to_double();
  geo.eps2 = data.epsilon_at(n).to_double();
  geo.eps3 = data.epsilon_at(m + n).to_double();
  geo.slope = 1.0 / rank(data, n).to_double();

  const Int c1 = geo.g1.c, c2 = geo.g2.c, c3 = geo.g3.c, d1 = geo.g1.d;
  const Int c12 = checked::mul(c1, c2);
  geo.orbits.assign(static_cast<std::size_t>(c3), ProductOrbit{-1, 0, 0, -1});
  Int found = 0;
  for (Int j = 0; j < c1; ++j) {
    for (Int k = 0; k < c2; ++k) {
      Int residue = mod(checked::sub(checked::mul(k, c1), checked::mul(checked::mul(d1, j), c2)), c12);
      for (Int M = residue; M < c3; M += c12) {
        Int numer = checked::add(M, checked::mul(c3, j));
        if (numer % c1 != 0) throw std::logic_error("product label is not integral");
        Int label = mod(numer / c1, c3);
        auto& slot = geo.orbits[static_cast<std::size_t>(label)];
        if (slot.label >= 0) throw std::logic_error("product labels collide");
        slot = ProductOrbit{M, j, k, label};
        ++found;
      }
    }
  }
  if (found != c3) throw std::logic_error("product orbits do not cover the target indices");
  return geo;
}

namespace {

struct PairWindow {
  double qa;   // Im part of the w^2 coefficient
  Int radius;  // truncation radius in lattice steps
  const GaussianAtom* a1;
  const GaussianAtom* a2;
};

// Smallest R with 2 e^{-2π q u^2} (1 + u)^D / (1 - e^{-4π q u}) below target, u = R + 1/2.
Int truncation_radius(double qa, std::size_t total_degree, double target) {
  for (Int R = 0; R < 100000; ++R) {
    double u = static_cast<double>(R) + 0.5;
    double bound = 2.0 * std::exp(-2.0 * kPi * qa * u * u) * std::pow(1.0 + u, static_cast<double>(total_degree)) /
                   (1.0 - std::exp(-4.0 * kPi * qa * u));
    if (bound < target) return R;
  }
  throw std::runtime_error("lattice sum does not converge to the requested tolerance");
}

std::vector<PairWindow> pair_windows(const ProductGeometry& geo, const ModuleElement& xi, const ModuleElement& eta,
                                     const std::vector<GaussianAtom>& atoms1, const std::vector<GaussianAtom>& atoms2,
                                     double tolerance) {
  (void)xi;
  (void)eta;
  const double inv_c2 = 1.0 / static_cast<double>(geo.g2.c);
  std::vector<PairWindow> out;
  for (const auto& a1 : atoms1) {
    for (const auto& a2 : atoms2) {
      double qa = a1.alpha.imag() * geo.eps1 * geo.eps1 + a2.alpha.imag() * inv_c2 * inv_c2;
      out.push_back({qa, truncation_radius(qa, a1.degree() + a2.degree(), 1e-3 * tolerance), &a1, &a2});
    }
  }
  return out;
}

// Range of lattice steps p (relative to w0) that carries the pair's mass at z.
std::pair<Int, Int> window_range(const ProductGeometry& geo, const PairWindow& pw, double z, double w0) {
  const double inv_c2 = 1.0 / static_cast<double>(geo.g2.c);
  const double a1 = pw.a1->alpha.imag(), b1 = pw.a1->beta.imag();
  const double a2 = pw.a2->alpha.imag(), b2 = pw.a2->beta.imag();
  // d/dw of the Im-exponent at w = 0
  double qb = -2.0 * a1 * z * geo.slope * geo.eps1 - b1 * geo.eps1 + 2.0 * a2 * z * inv_c2 + b2 * inv_c2;
  double center = -qb / (2.0 * pw.qa);
  auto pc = static_cast<Int>(std::llround(center - w0));
  return {pc - pw.radius, pc + pw.radius};
}

Complex orbit_sum(const ProductGeometry& geo, const ModuleTerm& t1, const ModuleTerm& t2,
                  const std::vector<PairWindow>& windows, const ProductOrbit& orbit, double z, Int* radius_used) {
  const double c3 = static_cast<double>(geo.g3.c);
  const double inv_c2 = 1.0 / static_cast<double>(geo.g2.c);
  const double w0 = static_cast<double>(orbit.M) / c3;
  Int lo = 0, hi = -1;
  for (const auto& pw : windows) {
    auto [a, b] = window_range(geo, pw, z, w0);
    if (hi < lo) {
      lo = a;
      hi = b;
    } else {
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
    if (radius_used != nullptr) *radius_used = std::max(*radius_used, pw.radius);
  }
  const Int a2 = geo.g2.a;
  Complex sum{};
  for (Int p = lo; p <= hi; ++p) {
    double w = w0 + static_cast<double>(p);
    double x = z * geo.slope - w * geo.eps1;
    double y = z + w * inv_c2;
    Complex fin = t1.finite[orbit.j0 - p] * t2.finite[orbit.k0 + p * a2];
    if (fin == Complex{}) continue;
    sum += t1.schwartz(x) * t2.schwartz(y) * fin;
  }
  return sum;
}

struct BasisKey {
  Complex alpha;
  Complex beta;
  std::size_t degree;
};

bool close(Complex a, Complex b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

std::vector<BasisKey> basis_keys(const ProductGeometry& geo, const ModuleElement& xi, const ModuleElement& eta,
                                 const BalancedOptions& options) {
  std::vector<BasisKey> keys;
  if (options.holomorphic_tau) {
    keys.push_back({holomorphic_vector(*options.holomorphic_tau, geo.eps3).alpha, 0.0, 0});
    return keys;
  }
  const double v = geo.slope;
  for (const auto& a1 : xi.atoms()) {
    for (const auto& a2 : eta.atoms()) {
      BasisKey key{a1.alpha * v * v + a2.alpha, a1.beta * v + a2.beta, a1.degree() + a2.degree()};
      auto it = std::find_if(keys.begin(), keys.end(),
                             [&](const BasisKey& k) { return close(k.alpha, key.alpha, 1e-12) && close(k.beta, key.beta, 1e-12); });
      if (it == keys.end())
        keys.push_back(key);
      else
        it->degree = std::max(it->degree, key.degree);
    }
  }
  return keys;
}

}  // namespace

Complex averaged_value(const ProductGeometry& geo, const ModuleElement& xi, const ModuleElement& eta, double z,
                       Int label, double tolerance, Int* radius_used) {
  const auto& orbit = geo.orbits.at(static_cast<std::size_t>(mod(label, geo.g3.c)));
  Complex sum{};
  for (const auto& t1 : xi.terms()) {
    for (const auto& t2 : eta.terms()) {
      auto windows = pair_windows(geo, xi, eta, t1.schwartz.atoms(), t2.schwartz.atoms(), tolerance);
      sum += orbit_sum(geo, t1, t2, windows, orbit, z, radius_used);
    }
  }
  return sum;
}

BalancedResult balanced_product(const ModuleElement& xi, const ModuleElement& eta, const BalancedOptions& options) {
  if (!(xi.data() == eta.data())) throw std::domain_error("balanced product of modules over different data");
  const unsigned m = xi.degree(), n = eta.degree();
  const auto geo = product_geometry(xi.data(), m, n);
  const Int c3 = geo.g3.c;

  auto keys = basis_keys(geo, xi, eta, options);
  std::size_t basis_size = 0;
  for (const auto& k : keys) basis_size += k.degree + 1;

  ModuleElement product(xi.data(), m + n);
  BalancedResult result{product};
  result.basis_size = basis_size;
  if (keys.empty()) return result;

  // grid: ±4σ of the widest output Gaussian around the spread of centers
  double lo = INFINITY, hi = -INFINITY, sigma = 0.0;
  for (const auto& k : keys) {
    double center = -k.beta.imag() / (2.0 * k.alpha.imag());
    lo = std::min(lo, center);
    hi = std::max(hi, center);
    sigma = std::max(sigma, 1.0 / std::sqrt(4.0 * kPi * k.alpha.imag()));
  }
  lo -= 4.0 * sigma;
  hi += 4.0 * sigma;
  const std::size_t count = 4 * basis_size * static_cast<std::size_t>(c3);
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  result.grid_points = count;

  // design matrix with unit-norm columns
  Eigen::MatrixXcd A(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(basis_size));
  std::vector<GaussianAtom> columns;
  // polynomial factors ((z - z0) / σ)^k around each Gaussian's peak
  for (const auto& k : keys) {
    const double center = -k.beta.imag() / (2.0 * k.alpha.imag());
    const double width = 1.0 / std::sqrt(4.0 * kPi * k.alpha.imag());
    for (std::size_t deg = 0; deg <= k.degree; ++deg) {
      GaussianAtom atom;
      Poly mono(deg + 1, Complex{});
      mono[deg] = std::pow(width, -static_cast<double>(deg));
      atom.poly = poly::shift(mono, -center);
      atom.alpha = k.alpha;
      atom.beta = k.beta;
      columns.push_back(atom);
    }
  }
  for (std::size_t col = 0; col < columns.size(); ++col) {
    for (std::size_t i = 0; i < count; ++i) A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) = columns[col](grid[i]);
    double norm = A.col(static_cast<Eigen::Index>(col)).norm();
    if (norm == 0.0) throw ConditioningError("basis column vanishes on the evaluation grid", INFINITY, grid);
    A.col(static_cast<Eigen::Index>(col)) /= norm;
    for (auto& c : columns[col].poly) c /= norm;
  }

  // With pruning, singular values below 1 / max_condition are discarded
  // (minimum-norm solution); the residual still certifies the fit.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::Index used = sv.size();
  if (options.prune) {
    svd.setThreshold(1.0 / options.max_condition);
    used = std::max<Eigen::Index>(svd.rank(), 1);
  }
  result.pruned = static_cast<std::size_t>(sv.size() - used);
  result.condition = sv(used - 1) > 0.0 ? sv(0) / sv(used - 1) : INFINITY;
  if (!(result.condition <= options.max_condition))
    throw ConditioningError("least-squares design matrix has condition " + std::to_string(result.condition) +
                                " above " + std::to_string(options.max_condition),
                            result.condition, grid);

  // right-hand sides, one column per target label
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(c3));
  Int radius = 0;
  for (const auto& t1 : xi.terms()) {
    for (const auto& t2 : eta.terms()) {
      auto windows = pair_windows(geo, xi, eta, t1.schwartz.atoms(), t2.schwartz.atoms(), options.tolerance);
      for (Int label = 0; label < c3; ++label) {
        const auto& orbit = geo.orbits[static_cast<std::size_t>(label)];
        for (std::size_t i = 0; i < count; ++i)
          G(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(label)) +=
              orbit_sum(geo, t1, t2, windows, orbit, grid[i], &radius);
      }
    }
  }
  result.truncation_radius = radius;

  Eigen::MatrixXcd X = svd.solve(G);
  double gnorm = G.norm();
  result.residual = gnorm == 0.0 ? 0.0 : (A * X - G).norm() / gnorm;

  for (std::size_t col = 0; col < columns.size(); ++col) {
    std::vector<Complex> coeffs(static_cast<std::size_t>(c3));
    for (Int label = 0; label < c3; ++label)
      coeffs[static_cast<std::size_t>(label)] = X(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(label));
    result.product.add_term(SchwartzVector(columns[col]), FiniteVector(c3, std::move(coeffs)));
  }
  return result;
}

}  // namespace nct
