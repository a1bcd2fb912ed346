#include "nct/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace nct {

Complex e(Complex z) {
  double re = z.real() - std::floor(z.real());
  return std::polar(std::exp(-2.0 * kPi * z.imag()), 2.0 * kPi * re);
}

Complex e(const Rational& x) {
  Rational f = x.frac();
  if (f.num() == 0) return 1.0;
  return std::polar(1.0, 2.0 * kPi * f.to_double());
}

// -------------------------------------------------------------- polynomials

namespace poly {

Complex eval(const Poly& p, Complex x) {
  Complex acc{};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<double>(i);
  trim(out);
  return out;
}

Poly times_x(const Poly& p) {
  if (p.empty()) return {};
  Poly out(p.size() + 1);
  std::copy(p.begin(), p.end(), out.begin() + 1);
  return out;
}

Poly shift(const Poly& p, Complex s) {
  // Horner in the shifted variable: q(x) = p(x + s)
  Poly out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    // out <- out * (x + s) + c
    Poly next(out.size() + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i + 1] += out[i];
      next[i] += out[i] * s;
    }
    next[0] += *it;
    out = std::move(next);
  }
  trim(out);
  return out;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

Poly scale(const Poly& p, Complex s) {
  Poly out(p);
  for (auto& c : out) c *= s;
  trim(out);
  return out;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

void trim(Poly& p) {
  while (!p.empty() && p.back() == Complex{}) p.pop_back();
}

}  // namespace poly

// ---------------------------------------------------------- atoms / vectors

Complex GaussianAtom::operator()(double x) const { return poly::eval(poly, x) * e(alpha * (x * x) + beta * x); }

bool GaussianAtom::is_zero() const {
  return std::all_of(poly.begin(), poly.end(), [](Complex c) { return c == Complex{}; });
}

void SchwartzVector::add(GaussianAtom atom) {
  if (!(atom.alpha.imag() > 0.0))
    throw std::domain_error("Gaussian atom needs Im(alpha) > 0, got " + std::to_string(atom.alpha.imag()));
  poly::trim(atom.poly);
  if (atom.poly.empty()) return;
  for (auto it = atoms_.begin(); it != atoms_.end(); ++it) {
    if (it->alpha == atom.alpha && it->beta == atom.beta) {
      it->poly = poly::add(it->poly, atom.poly);
      if (it->poly.empty()) atoms_.erase(it);
      return;
    }
  }
  atoms_.push_back(std::move(atom));
}

SchwartzVector& SchwartzVector::operator+=(const SchwartzVector& other) {
  for (const auto& atom : other.atoms_) add(atom);
  return *this;
}

SchwartzVector& SchwartzVector::operator*=(Complex s) {
  std::vector<GaussianAtom> kept;
  for (auto& atom : atoms_) {
    atom.poly = poly::scale(atom.poly, s);
    if (!atom.poly.empty()) kept.push_back(std::move(atom));
  }
  atoms_ = std::move(kept);
  return *this;
}

Complex SchwartzVector::operator()(double x) const {
  Complex acc{};
  for (const auto& atom : atoms_) acc += atom(x);
  return acc;
}

Complex eval(const SchwartzVector& f, double x) { return f(x); }

SchwartzVector translate(const SchwartzVector& f, Complex s) {
  SchwartzVector out;
  for (const auto& atom : f.atoms()) {
    // P(x+s) e(α(x+s)^2 + β(x+s)) = P(x+s) e(αs^2 + βs) e(αx^2 + (β + 2αs)x)
    GaussianAtom moved;
    moved.alpha = atom.alpha;
    moved.beta = atom.beta + 2.0 * atom.alpha * s;
    moved.poly = poly::scale(poly::shift(atom.poly, s), e(atom.alpha * s * s + atom.beta * s));
    out.add(std::move(moved));
  }
  return out;
}

SchwartzVector modulate(const SchwartzVector& f, Complex freq) {
  SchwartzVector out;
  for (auto atom : f.atoms()) {
    atom.beta += freq;
    out.add(std::move(atom));
  }
  return out;
}

SchwartzVector differentiate(const SchwartzVector& f) { return lie_combination(1.0, 0.0, f, 1.0); }

SchwartzVector multiply_by_x(const SchwartzVector& f) {
  SchwartzVector out;
  for (auto atom : f.atoms()) {
    atom.poly = poly::times_x(atom.poly);
    out.add(std::move(atom));
  }
  return out;
}

std::vector<double> envelope_grid(std::span<const GaussianAtom> atoms, std::size_t count, double width) {
  if (atoms.empty() || count < 2) return {0.0};
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& atom : atoms) {
    double center = -atom.beta.imag() / (2.0 * atom.alpha.imag());
    double sigma = 1.0 / std::sqrt(4.0 * kPi * atom.alpha.imag());
    double reach = sigma * (width + std::sqrt(static_cast<double>(atom.degree())));
    lo = std::min(lo, center - reach);
    hi = std::max(hi, center + reach);
  }
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return grid;
}

double relative_residual(const SchwartzVector& f, const SchwartzVector& g) {
  std::vector<GaussianAtom> all(f.atoms());
  all.insert(all.end(), g.atoms().begin(), g.atoms().end());
  if (all.empty()) return 0.0;
  double diff = 0.0, scale = 0.0;
  for (double x : envelope_grid(all, 257)) {
    Complex a = f(x), b = g(x);
    diff = std::max(diff, std::abs(a - b));
    scale = std::max({scale, std::abs(a), std::abs(b)});
  }
  return scale == 0.0 ? 0.0 : diff / scale;
}

// ------------------------------------------------------------ finite vectors

FiniteVector::FiniteVector(Int modulus) : FiniteVector(modulus, std::vector<Complex>(static_cast<std::size_t>(std::max<Int>(modulus, 0)))) {}

FiniteVector::FiniteVector(Int modulus, std::vector<Complex> entries) : modulus_(modulus), entries_(std::move(entries)) {
  if (modulus < 1) throw std::domain_error("finite vector modulus must be positive");
  if (static_cast<Int>(entries_.size()) != modulus)
    throw std::domain_error("finite vector has " + std::to_string(entries_.size()) + " entries for modulus " +
                            std::to_string(modulus));
}

FiniteVector FiniteVector::delta(Int modulus, Int index) {
  FiniteVector v(modulus);
  v.entries_[static_cast<std::size_t>(mod(index, modulus))] = 1.0;
  return v;
}

FiniteVector& FiniteVector::operator+=(const FiniteVector& other) {
  if (other.modulus_ != modulus_) throw std::domain_error("finite vectors with different moduli");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

FiniteVector& FiniteVector::operator*=(Complex s) {
  for (auto& v : entries_) v *= s;
  return *this;
}

double max_abs_difference(const FiniteVector& a, const FiniteVector& b) {
  if (a.modulus() != b.modulus()) throw std::domain_error("finite vectors with different moduli");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

// ------------------------------------------------------------------ groups

Complex real_cocycle(const std::array<double, 2>& x, const std::array<double, 2>& y, double eps) {
  return e((x[0] * y[1] - y[0] * x[1]) / (2.0 * eps));
}

Complex real_pairing(const std::array<double, 2>& x, const std::array<double, 2>& y, double eps) {
  return e((x[0] * y[1] - y[0] * x[1]) / eps);
}

Rational finite_cocycle_exponent(const std::array<Int, 2>& x, const std::array<Int, 2>& y, Int c) {
  return Rational(checked::sub(checked::mul(x[0], y[1]), checked::mul(y[0], x[1])), checked::mul(2, c)).frac();
}

Rational finite_pairing_exponent(const std::array<Int, 2>& x, const std::array<Int, 2>& y, Int c) {
  return Rational(checked::sub(checked::mul(x[0], y[1]), checked::mul(y[0], x[1])), c).frac();
}

RealHeisElement group_mul(const RealHeisElement& h1, const RealHeisElement& h2) {
  if (h1.eps != h2.eps) throw std::domain_error("Heisenberg elements over R^2 with different epsilon");
  return {h1.lambda * h2.lambda * real_cocycle(h1.y, h2.y, h1.eps), {h1.y[0] + h2.y[0], h1.y[1] + h2.y[1]}, h1.eps};
}

FiniteHeisElement group_mul(const FiniteHeisElement& h1, const FiniteHeisElement& h2) {
  if (h1.c != h2.c) throw std::domain_error("Heisenberg elements over (Z/cZ)^2 with different c");
  return {h1.lambda * h2.lambda * e(finite_cocycle_exponent(h1.m, h2.m, h1.c)),
          {checked::add(h1.m[0], h2.m[0]), checked::add(h1.m[1], h2.m[1])},
          h1.c};
}

Complex pairing(const RealHeisElement& h1, const RealHeisElement& h2) {
  if (h1.eps != h2.eps) throw std::domain_error("Heisenberg elements over R^2 with different epsilon");
  return real_pairing(h1.y, h2.y, h1.eps);
}

Complex pairing(const FiniteHeisElement& h1, const FiniteHeisElement& h2) {
  if (h1.c != h2.c) throw std::domain_error("Heisenberg elements over (Z/cZ)^2 with different c");
  return e(finite_pairing_exponent(h1.m, h2.m, h1.c));
}

SchwartzVector act_real(const RealHeisElement& h, const SchwartzVector& f, double eps) {
  if (h.eps != eps) throw std::domain_error("Heisenberg element epsilon does not match the representation");
  SchwartzVector out = modulate(translate(f, h.y[0]), h.y[1] / eps);
  out *= h.lambda * e(h.y[0] * h.y[1] / (2.0 * eps));
  return out;
}

FiniteMonomialOperator finite_operator(const FiniteHeisElement& h) {
  FiniteMonomialOperator op{h.c, h.lambda, h.m[0], {}};
  op.phase.reserve(static_cast<std::size_t>(h.c));
  const Int m1m2 = checked::mul(h.m[0], h.m[1]);
  for (Int n = 0; n < h.c; ++n)
    op.phase.push_back(Rational(checked::add(checked::mul(2, checked::mul(n, h.m[1])), m1m2), checked::mul(2, h.c)).frac());
  return op;
}

FiniteMonomialOperator compose(const FiniteMonomialOperator& a, const FiniteMonomialOperator& b) {
  if (a.c != b.c) throw std::domain_error("finite operators with different moduli");
  FiniteMonomialOperator out{a.c, a.lambda * b.lambda, checked::add(a.shift, b.shift), {}};
  out.phase.reserve(a.phase.size());
  for (Int n = 0; n < a.c; ++n)
    out.phase.push_back((a.phase[static_cast<std::size_t>(n)] +
                         b.phase[static_cast<std::size_t>(mod(checked::add(n, a.shift), a.c))])
                            .frac());
  return out;
}

FiniteVector act_finite(const FiniteHeisElement& h, const FiniteVector& phi, Int c) {
  if (h.c != c || phi.modulus() != c) throw std::domain_error("finite Heisenberg action with mismatched modulus");
  auto op = finite_operator(h);
  FiniteVector out(c);
  for (Int n = 0; n < c; ++n)
    out.entries()[static_cast<std::size_t>(n)] =
        h.lambda * e(op.phase[static_cast<std::size_t>(n)]) * phi[checked::add(n, h.m[0])];
  return out;
}

std::vector<std::array<Int, 2>> subgroup_closure(Int c, std::span<const std::array<Int, 2>> generators) {
  std::set<std::array<Int, 2>> seen{{0, 0}};
  std::vector<std::array<Int, 2>> frontier{{0, 0}};
  while (!frontier.empty()) {
    auto x = frontier.back();
    frontier.pop_back();
    for (const auto& g : generators) {
      std::array<Int, 2> y{mod(x[0] + g[0], c), mod(x[1] + g[1], c)};
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::array<Int, 2>> orthogonal_complement(Int c, std::span<const std::array<Int, 2>> subgroup) {
  std::vector<std::array<Int, 2>> out;
  for (Int a = 0; a < c; ++a)
    for (Int b = 0; b < c; ++b) {
      std::array<Int, 2> x{a, b};
      bool orth = std::all_of(subgroup.begin(), subgroup.end(),
                              [&](const auto& h) { return finite_pairing_exponent(x, h, c).num() == 0; });
      if (orth) out.push_back(x);
    }
  return out;
}

Isotropy isotropic_check(Int c, std::span<const std::array<Int, 2>> generators) {
  if (c < 1) throw std::domain_error("modulus must be positive");
  auto H = subgroup_closure(c, generators);
  for (const auto& x : H)
    for (const auto& y : H)
      if (finite_pairing_exponent(x, y, c).num() != 0) return Isotropy::neither;
  auto perp = orthogonal_complement(c, H);
  return perp.size() == H.size() ? Isotropy::maximal_isotropic : Isotropy::isotropic;
}

bool pairing_nondegenerate(Int c) {
  std::set<std::vector<Int>> characters;
  for (Int a = 0; a < c; ++a)
    for (Int b = 0; b < c; ++b) {
      std::vector<Int> chi;
      chi.reserve(static_cast<std::size_t>(c * c));
      for (Int u = 0; u < c; ++u)
        for (Int v = 0; v < c; ++v) chi.push_back(finite_pairing_exponent({a, b}, {u, v}, c).num());
      if (!characters.insert(std::move(chi)).second) return false;
    }
  return static_cast<Int>(characters.size()) == c * c;
}

// ------------------------------------------------------- Lie derivatives

SchwartzVector lie_combination(Complex a, Complex b, const SchwartzVector& f, double eps) {
  SchwartzVector out;
  for (const auto& atom : f.atoms()) {
    // a P' + 2πi [ (2α a + b/ε) x + a β ] P
    Complex slope = 2.0 * atom.alpha * a + b / eps;
    Complex offset = a * atom.beta;
    Poly linear{offset, slope};
    poly::trim(linear);
    GaussianAtom next{poly::add(poly::scale(poly::derivative(atom.poly), a),
                                poly::scale(poly::mul(linear, atom.poly), kTwoPiI)),
                      atom.alpha, atom.beta};
    out.add(std::move(next));
  }
  return out;
}

SchwartzVector lie_derivative(LieGenerator X, const SchwartzVector& f, double eps) {
  switch (X) {
    case LieGenerator::A:
      return lie_combination(1.0, 0.0, f, eps);
    case LieGenerator::B:
      return lie_combination(0.0, 1.0, f, eps);
    case LieGenerator::C:
      return kTwoPiI * f;
  }
  throw std::logic_error("unknown Lie generator");
}

GaussianAtom holomorphic_vector(Complex tau, double eps) {
  if (!(tau.imag() > 0.0)) throw std::domain_error("holomorphic vector needs Im(tau) > 0");
  if (!(eps > 0.0)) throw std::domain_error("holomorphic vector needs epsilon > 0");
  return GaussianAtom{{1.0}, tau / (2.0 * eps), 0.0};
}

}  // namespace nct
