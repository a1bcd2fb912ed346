#include "nct/checks.hpp"

#include <algorithm>
#include <cmath>

namespace nct {

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

double SuiteReport::worst(const std::string& name) const {
  double w = 0.0;
  for (const auto& c : checks)
    if (c.name == name) w = std::max(w, c.value);
  return w;
}

TorusElement random_torus_element(const QuadIrr& theta, std::size_t max_support, std::mt19937_64& rng,
                                  Precision precision, Int span) {
  std::uniform_int_distribution<std::size_t> size(1, std::max<std::size_t>(1, max_support));
  std::uniform_int_distribution<Int> index(-span, span);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  TorusElement x(theta, precision);
  std::size_t target = size(rng);
  while (x.support_size() < target) {
    Int n = index(rng), m = index(rng);
    if (x.coeff(n, m) != Complex{}) continue;
    double re = coeff(rng), im = coeff(rng);
    x.add_term(n, m, {re, im});
  }
  return x;
}

namespace {

double max_coeff(const TorusElement& x) {
  double w = 0.0;
  for (const auto& [mono, c] : x.coeffs()) w = std::max(w, std::abs(c));
  return w;
}

}  // namespace

double scaled_difference(const TorusElement& x, const TorusElement& y) {
  return max_abs_difference(x, y) / std::max({1.0, max_coeff(x), max_coeff(y)});
}

SuiteReport algebra_suite(const QuadIrr& theta, const AlgebraSuiteOptions& o) {
  std::mt19937_64 rng(o.seed);
  double assoc = 0, tracial = 0, pos_re = 0, pos_im = 0, star_anti = 0, invol = 0, commute = 0;
  double leib[3] = {0, 0, 0};
  const Derivation ds[3] = {Derivation::delta1, Derivation::delta2, Derivation::delta_tau};
  for (std::size_t s = 0; s < o.samples; ++s) {
    auto x = random_torus_element(theta, o.max_support, rng, o.precision);
    auto y = random_torus_element(theta, o.max_support, rng, o.precision);
    auto z = random_torus_element(theta, o.max_support, rng, o.precision);
    auto xy = x * y;
    assoc = std::max(assoc, scaled_difference(xy * z, x * (y * z)));
    tracial = std::max(tracial, std::abs(trace(xy) - trace(y * x)) / std::max(1.0, std::abs(trace(xy))));
    Complex p = trace(x * star(x));
    pos_re = std::max(pos_re, -p.real());
    pos_im = std::max(pos_im, std::abs(p.imag()) / std::max(1.0, std::abs(p)));
    star_anti = std::max(star_anti, scaled_difference(star(xy), star(y) * star(x)));
    invol = std::max(invol, scaled_difference(star(star(x)), x));
    for (int k = 0; k < 3; ++k) {
      auto lhs = derive(xy, ds[k], o.tau);
      auto rhs = derive(x, ds[k], o.tau) * y + x * derive(y, ds[k], o.tau);
      leib[k] = std::max(leib[k], scaled_difference(lhs, rhs));
    }
    commute = std::max(commute, max_abs_difference(derive(derive(x, Derivation::delta1), Derivation::delta2),
                                                   derive(derive(x, Derivation::delta2), Derivation::delta1)));
  }
  const double t = o.tolerance;
  return {{{"associativity", assoc, t},
           {"tracial", tracial, t},
           {"positivity_negative_part", pos_re, t},
           {"positivity_imaginary_part", pos_im, t},
           {"star_anti_automorphism", star_anti, t},
           {"involution", invol, t},
           {"leibniz_delta1", leib[0], t},
           {"leibniz_delta2", leib[1], t},
           {"leibniz_delta_tau", leib[2], t},
           {"derivations_commute", commute, t}}};
}

ModuleElement sample_module_element(const RMData& data, unsigned n, Complex tau, std::mt19937_64& rng,
                                    bool common_alpha) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ModuleElement xi(data, n);
  auto random_finite = [&] {
    std::vector<Complex> v(static_cast<std::size_t>(xi.modulus()));
    for (auto& c : v) c = {u(rng), u(rng)};
    return FiniteVector(xi.modulus(), std::move(v));
  };
  GaussianAtom f = holomorphic_vector(tau, xi.epsilon());
  xi.add_term(SchwartzVector(f), random_finite());
  GaussianAtom g = f;
  g.poly = {Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)}};
  if (!common_alpha) g.alpha += Complex{0.0, 0.25};
  SchwartzVector h = modulate(translate(SchwartzVector(g), 0.5 * u(rng)), u(rng));
  xi.add_term(h, random_finite());
  return xi;
}

namespace {

ModuleElement curvature(const ModuleElement& xi) { return connection(1, connection(2, xi)) - connection(2, connection(1, xi)); }

}  // namespace

SuiteReport module_suite(const RMData& data, Complex tau, const ModuleSuiteOptions& o) {
  std::mt19937_64 rng(o.seed);
  const auto& theta = data.theta();
  const Complex e_theta = twist_phase(theta, 1, Precision::extended);
  const auto U = TorusElement::U(theta), V = TorusElement::V(theta);
  const Generator gens[4] = {Generator::U, Generator::V, Generator::U_inv, Generator::V_inv};
  const Generator inverse[4] = {Generator::U_inv, Generator::V_inv, Generator::U, Generator::V};

  double right_rel = 0, left_rel = 0, commute = 0, inv = 0, leibniz = 0, curv = 0, curv_central = 0;
  for (unsigned n = 1; n <= o.max_degree; ++n) {
    auto xi = sample_module_element(data, n, tau, rng);
    // ξ·(UV) = e(θ) ξ·(VU)
    right_rel = std::max(right_rel, relative_residual(right_act(right_act(xi, Generator::U), Generator::V),
                                                      e_theta * right_act(right_act(xi, Generator::V), Generator::U)));
    left_rel = std::max(left_rel, relative_residual(left_act(Generator::U, left_act(Generator::V, xi)),
                                                    e_theta * left_act(Generator::V, left_act(Generator::U, xi))));
    for (int a = 0; a < 4; ++a) {
      inv = std::max(inv, relative_residual(right_act(right_act(xi, gens[a]), inverse[a]), xi));
      inv = std::max(inv, relative_residual(left_act(inverse[a], left_act(gens[a], xi)), xi));
      for (auto b : gens)
        commute = std::max(commute, relative_residual(right_act(left_act(gens[a], xi), b), left_act(gens[a], right_act(xi, b))));
    }
    const Derivation ds[2] = {Derivation::delta1, Derivation::delta2};
    for (int i = 1; i <= 2; ++i) {
      for (const auto* a : {&U, &V}) {
        auto lhs = connection(i, right_act(xi, *a));
        auto rhs = right_act(connection(i, xi), *a) + right_act(xi, derive(*a, ds[i - 1]));
        leibniz = std::max(leibniz, relative_residual(lhs, rhs));
      }
    }
    Complex k = -kTwoPiI / xi.epsilon();
    curv = std::max(curv, relative_residual(curvature(xi), k * xi));
    for (auto g : gens) {
      curv_central = std::max(curv_central, relative_residual(curvature(right_act(xi, g)), right_act(curvature(xi), g)));
      curv_central = std::max(curv_central, relative_residual(curvature(left_act(g, xi)), left_act(g, curvature(xi))));
    }
  }

  // (δU_A - τ δU_B) f_τ vanishes atom by atom
  double holo = 0.0;
  for (unsigned n = 1; n <= o.max_degree; ++n) {
    double eps = data.epsilon_at(n).to_double();
    auto w = lie_combination(1.0, -tau, SchwartzVector(holomorphic_vector(tau, eps)), eps);
    for (const auto& atom : w.atoms())
      for (auto c : atom.poly) holo = std::max(holo, std::abs(c));
  }

  // exact bookkeeping
  double rank_ok = 0.0, eps_ok = 0.0;
  const auto lambda = rank(data, 1);
  for (unsigned n = 0; n <= 10; ++n)
    if (!(rank(data, n) == lambda.pow(n))) rank_ok = 1.0;
  const auto& g = data.g();
  const auto eps2 = data.epsilon_at(2);
  const auto recursion = QuadIrr::from_int(g.c) * data.epsilon() * data.epsilon() / QuadIrr::from_int(g.trace());
  if (!(eps2 == recursion)) eps_ok = 1.0;

  const double t = o.tolerance;
  SuiteReport rep{{{"right_relation", right_rel, t},
                   {"left_relation", left_rel, t},
                   {"bimodule_commutation", commute, t},
                   {"inverses", inv, t},
                   {"connection_leibniz", leibniz, t},
                   {"curvature", curv, t},
                   {"curvature_central", curv_central, t},
                   {"holomorphic_annihilation", holo, 0.0},
                   {"rank_identity_failures", rank_ok, 0.0},
                   {"epsilon_recursion_failures", eps_ok, 0.0}}};

  if (o.products) {
    // the lattice sum stays in the atom span when every α is τ/(2ε)
    auto xi = sample_module_element(data, 1, tau, rng, true);
    auto eta = sample_module_element(data, 1, tau, rng, true);
    auto zeta = sample_module_element(data, 1, tau, rng, true);
    double balance = 0.0, fit = 0.0, bilinear = 0.0;
    auto P = [&](const ModuleElement& a, const ModuleElement& b) {
      auto r = balanced_product(a, b);
      fit = std::max(fit, r.residual);
      return r.product;
    };
    for (auto gen : gens) balance = std::max(balance, relative_residual(P(right_act(xi, gen), eta), P(xi, left_act(gen, eta))));
    Complex s{0.7, -0.4};
    bilinear = relative_residual(P(xi + s * zeta, eta), P(xi, eta) + s * P(zeta, eta));

    BalancedOptions holo_opt;
    holo_opt.holomorphic_tau = tau;
    auto f = holomorphic_vector(tau, data.epsilon().to_double());
    auto d0 = ModuleElement::pure(data, 1, SchwartzVector(f), FiniteVector::delta(data.g().c, 0));
    double closure = balanced_product(d0, d0, holo_opt).residual;
    const double pt = o.product_tolerance;
    rep.checks.push_back({"balanced_balancing", balance, pt});
    rep.checks.push_back({"balanced_fit", fit, pt});
    rep.checks.push_back({"balanced_bilinearity", bilinear, pt});
    rep.checks.push_back({"holomorphic_closure", closure, pt});
  }
  return rep;
}

}  // namespace nct
