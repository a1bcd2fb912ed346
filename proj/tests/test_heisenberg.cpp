#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "nct/heisenberg.hpp"

using namespace nct;

namespace {

GaussianAtom random_atom(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GaussianAtom a;
  a.poly = {Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)}};
  a.alpha = {u(rng), 0.3 + 0.5 * (u(rng) + 1.0)};
  a.beta = {u(rng), 0.5 * u(rng)};
  return a;
}

// direct evaluation, independent of the atom code
Complex eval_direct(const GaussianAtom& a, double x) {
  Complex p{}, xn{1.0};
  for (auto c : a.poly) {
    p += c * xn;
    xn *= x;
  }
  return p * std::exp(Complex{0.0, 2.0 * kPi} * (a.alpha * x * x + a.beta * x));
}

}  // namespace

TEST_CASE("real group law") {
  RealHeisElement h1{1.0, {1.0, 0.0}, 1.0}, h2{1.0, {0.0, 1.0}, 1.0};
  auto h = group_mul(h1, h2);
  CHECK(std::abs(h.lambda - Complex{-1.0}) < 1e-15);
  CHECK(h.y[0] == 1.0);
  CHECK(h.y[1] == 1.0);

  Complex l = std::polar(1.0, 0.3), m = std::polar(1.0, -1.1);
  auto central = group_mul(RealHeisElement{l, {0, 0}, 1.0}, RealHeisElement{m, {0, 0}, 1.0});
  CHECK(std::abs(central.lambda - l * m) < 1e-15);
  CHECK_THROWS_AS(group_mul(RealHeisElement{1.0, {0, 0}, 1.0}, RealHeisElement{1.0, {0, 0}, 2.0}), std::domain_error);
}

TEST_CASE("cocycle identity and pairing skew symmetry") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    double eps = 0.2 + std::abs(u(rng));
    std::array<double, 2> x{u(rng), u(rng)}, y{u(rng), u(rng)}, z{u(rng), u(rng)};
    std::array<double, 2> xy{x[0] + y[0], x[1] + y[1]}, yz{y[0] + z[0], y[1] + z[1]};
    Complex lhs = real_cocycle(x, y, eps) * real_cocycle(xy, z, eps);
    Complex rhs = real_cocycle(y, z, eps) * real_cocycle(x, yz, eps);
    CHECK(std::abs(lhs - rhs) < 1e-12);
    CHECK(std::abs(real_pairing(x, y, eps) * real_pairing(y, x, eps) - 1.0) < 1e-12);
  }
  for (Int c = 1; c <= 7; ++c)
    for (Int a = 0; a < c; ++a)
      for (Int b = 0; b < c; ++b)
        for (Int p = 0; p < c; ++p)
          for (Int q = 0; q < c; ++q) {
            std::array<Int, 2> x{a, b}, y{p, q}, z{(a + q) % c, (b * p + 1) % c};
            std::array<Int, 2> xy{x[0] + y[0], x[1] + y[1]}, yz{y[0] + z[0], y[1] + z[1]};
            Rational lhs = finite_cocycle_exponent(x, y, c) + finite_cocycle_exponent(xy, z, c);
            Rational rhs = finite_cocycle_exponent(y, z, c) + finite_cocycle_exponent(x, yz, c);
            CHECK((lhs - rhs).frac() == Rational(0));
          }
}

TEST_CASE("real representation property") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 100; ++i) {
    double eps = 0.3 + std::abs(u(rng));
    RealHeisElement h1{std::polar(1.0, u(rng)), {u(rng), u(rng)}, eps};
    RealHeisElement h2{std::polar(1.0, u(rng)), {u(rng), u(rng)}, eps};
    SchwartzVector f = random_atom(rng);
    f.add(random_atom(rng));
    auto lhs = act_real(h1, act_real(h2, f, eps), eps);
    auto rhs = act_real(group_mul(h1, h2), f, eps);
    CHECK(relative_residual(lhs, rhs) < 1e-12);
    // α never changes
    for (const auto& a : lhs.atoms()) {
      bool found = false;
      for (const auto& b : f.atoms()) found = found || a.alpha == b.alpha;
      CHECK(found);
    }
  }
}

TEST_CASE("real action formulas") {
  std::mt19937_64 rng(5);
  SchwartzVector f = random_atom(rng);
  double eps = 0.7;
  auto shifted = act_real({1.0, {0.4, 0.0}, eps}, f, eps);
  auto central = act_real({std::polar(1.0, 0.9), {0.0, 0.0}, eps}, f, eps);
  for (double x : {-1.3, -0.2, 0.0, 0.6, 1.7}) {
    CHECK(std::abs(shifted(x) - f(x + 0.4)) < 1e-12);
    CHECK(std::abs(central(x) - std::polar(1.0, 0.9) * f(x)) < 1e-12);
  }
  // U_(1,(y1,y2)) f(x) = e((x y2 + y1 y2/2)/ε) f(x + y1)
  RealHeisElement h{1.0, {0.3, -0.8}, eps};
  auto g = act_real(h, f, eps);
  for (double x : {-1.0, 0.1, 0.9}) {
    Complex want = e((x * h.y[1] + h.y[0] * h.y[1] / 2.0) / eps) * f(x + h.y[0]);
    CHECK(std::abs(g(x) - want) < 1e-12);
  }
}

TEST_CASE("finite representation property, exhaustive") {
  for (Int c = 1; c <= 6; ++c) {
    for (Int a = 0; a < c; ++a)
      for (Int b = 0; b < c; ++b)
        for (Int p = 0; p < c; ++p)
          for (Int q = 0; q < c; ++q) {
            FiniteHeisElement h1{1.0, {a, b}, c}, h2{1.0, {p, q}, c};
            auto composed = compose(finite_operator(h1), finite_operator(h2));
            auto product = finite_operator(FiniteHeisElement{1.0, {a + p, b + q}, c});
            Rational cocycle = finite_cocycle_exponent(h1.m, h2.m, c);
            CHECK(mod(composed.shift, c) == mod(product.shift, c));
            for (Int n = 0; n < c; ++n)
              CHECK(composed.phase[static_cast<std::size_t>(n)] ==
                    (product.phase[static_cast<std::size_t>(n)] + cocycle).frac());
          }
  }
}

TEST_CASE("finite action formulas") {
  const Int c = 5;
  FiniteVector phi(c, {1.0, 2.0, Complex{0, 3}, 4.0, 5.0});
  auto shifted = act_finite({1.0, {2, 0}, c}, phi, c);
  for (Int n = 0; n < c; ++n) CHECK(shifted[n] == phi[n + 2]);
  Complex lam = std::polar(1.0, 0.4);
  auto central = act_finite({lam, {0, 0}, c}, phi, c);
  CHECK(max_abs_difference(central, lam * phi) < 1e-15);
  // c-fold shift by one is the identity
  FiniteVector cur = phi;
  for (Int i = 0; i < c; ++i) cur = act_finite({1.0, {1, 0}, c}, cur, c);
  CHECK(max_abs_difference(cur, phi) == 0.0);
  CHECK_THROWS_AS(act_finite({1.0, {1, 0}, 4}, phi, c), std::domain_error);
  // U_(1,(0,m2)) φ(n) = e(n m2 / c) φ(n)
  auto mod2 = act_finite({1.0, {0, 2}, c}, phi, c);
  for (Int n = 0; n < c; ++n) CHECK(std::abs(mod2[n] - std::polar(1.0, 2 * kPi * n * 2.0 / c) * phi[n]) < 1e-14);
}

TEST_CASE("isotropic subgroups") {
  const Int c = 6;
  std::array<Int, 2> e1{1, 0}, zero{0, 0}, e2{0, 1};
  CHECK(isotropic_check(c, std::span(&e1, 1)) == Isotropy::maximal_isotropic);
  CHECK(isotropic_check(c, std::span(&zero, 1)) == Isotropy::isotropic);
  std::array<std::array<Int, 2>, 2> both{e1, e2};
  CHECK(isotropic_check(c, both) == Isotropy::neither);
  // the diagonal is maximal isotropic as well
  std::array<Int, 2> diag{1, 1};
  CHECK(isotropic_check(c, std::span(&diag, 1)) == Isotropy::maximal_isotropic);
  // {0} x 2Z/6Z is isotropic but not maximal
  std::array<Int, 2> half{0, 2};
  CHECK(isotropic_check(c, std::span(&half, 1)) == Isotropy::isotropic);
}

TEST_CASE("pairing nondegenerate") {
  for (Int c = 1; c <= 12; ++c) CHECK(pairing_nondegenerate(c));
}

TEST_CASE("lie derivatives") {
  double eps = 0.8;
  GaussianAtom a{{1.0}, Complex{0.2, 0.6}, 0.0};
  SchwartzVector f(a);
  auto dc = lie_derivative(LieGenerator::C, f, eps);
  REQUIRE(dc.atoms().size() == 1);
  CHECK(dc.atoms()[0].poly.size() == 1);
  CHECK(std::abs(dc.atoms()[0].poly[0] - kTwoPiI) < 1e-15);

  // δU_A e(αx^2) = 2πi 2α x e(αx^2)
  auto da = lie_derivative(LieGenerator::A, f, eps);
  REQUIRE(da.atoms().size() == 1);
  const auto& p = da.atoms()[0].poly;
  REQUIRE(p.size() == 2);
  CHECK(std::abs(p[0]) == 0.0);
  CHECK(std::abs(p[1] - kTwoPiI * 2.0 * a.alpha) < 1e-15);

  // δU_B = 2πi x / ε, checked pointwise
  auto db = lie_derivative(LieGenerator::B, f, eps);
  for (double x : {-0.7, 0.3, 1.2}) CHECK(std::abs(db(x) - kTwoPiI * x / eps * f(x)) < 1e-13);

  // d/dx by central difference on a generic atom
  std::mt19937_64 rng(2);
  auto g = random_atom(rng);
  auto dg = differentiate(SchwartzVector(g));
  for (double x : {-0.5, 0.25, 0.8}) {
    double h = 1e-5;
    Complex fd = (eval_direct(g, x + h) - eval_direct(g, x - h)) / (2 * h);
    CHECK(std::abs(dg(x) - fd) < 1e-6);
  }
}

TEST_CASE("lie bracket") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    double eps = 0.3 + i * 0.1;
    SchwartzVector f = random_atom(rng);
    auto ab = lie_derivative(LieGenerator::A, lie_derivative(LieGenerator::B, f, eps), eps);
    auto ba = lie_derivative(LieGenerator::B, lie_derivative(LieGenerator::A, f, eps), eps);
    SchwartzVector bracket = ab;
    bracket += Complex{-1.0} * ba;
    auto want = (1.0 / eps) * lie_derivative(LieGenerator::C, f, eps);
    CHECK(relative_residual(bracket, want) < 1e-12);
  }
}

TEST_CASE("holomorphic vector") {
  auto f = holomorphic_vector({0.0, 1.0}, 1.0);
  CHECK(std::abs(f(1.0) - std::exp(-kPi)) < 1e-16);
  CHECK(std::abs(f(1.0) - 0.0432139182637723) < 1e-15);
  CHECK(f(0.0) == Complex{1.0});
  CHECK(holomorphic_vector({0.4, 2.0}, 3.0)(0.0) == Complex{1.0});
  CHECK_THROWS_AS(holomorphic_vector({0.0, -1.0}, 1.0), std::domain_error);
  CHECK_THROWS_AS(holomorphic_vector({0.0, 1.0}, -1.0), std::domain_error);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    Complex tau{u(rng), 0.1 + std::abs(u(rng))};
    double eps = 0.1 + std::abs(u(rng));
    auto w = lie_combination(1.0, -tau, SchwartzVector(holomorphic_vector(tau, eps)), eps);
    CHECK(w.empty());
  }

  // kernel of δU_A - τ δU_B at fixed α: the operator maps p e(αx^2) to p' e(αx^2)
  Complex tau{0.3, 1.1};
  double eps = 0.9;
  for (std::size_t deg = 1; deg <= 4; ++deg) {
    GaussianAtom a = holomorphic_vector(tau, eps);
    a.poly.assign(deg + 1, Complex{});
    a.poly[deg] = 1.0;
    auto w = lie_combination(1.0, -tau, SchwartzVector(a), eps);
    REQUIRE(w.atoms().size() == 1);
    const auto& p = w.atoms()[0].poly;
    for (std::size_t k = 0; k < p.size(); ++k) {
      Complex want = k + 1 == deg ? Complex{static_cast<double>(deg)} : Complex{};
      CHECK(std::abs(p[k] - want) < 1e-12);
    }
  }
}

TEST_CASE("evaluation") {
  std::mt19937_64 rng(17);
  auto a = random_atom(rng), b = random_atom(rng);
  SchwartzVector f(a), g(b);
  auto s = f + g;
  for (double x : {-1.0, 0.0, 0.5}) {
    CHECK(std::abs(s(x) - (f(x) + g(x))) < 1e-14);
    CHECK(std::abs(f(x) - eval_direct(a, x)) < 1e-13);
  }
  CHECK_THROWS_AS(SchwartzVector(GaussianAtom{{1.0}, Complex{1.0, -0.1}, 0.0}), std::domain_error);
}

TEST_CASE("translation and modulation are exact on atoms") {
  std::mt19937_64 rng(21);
  auto a = random_atom(rng);
  SchwartzVector f(a);
  auto t = translate(f, 0.37);
  auto m = modulate(f, -1.3);
  auto x1 = multiply_by_x(f);
  for (double x : {-1.1, 0.2, 0.9}) {
    CHECK(std::abs(t(x) - eval_direct(a, x + 0.37)) < 1e-12);
    CHECK(std::abs(m(x) - e(-1.3 * x) * eval_direct(a, x)) < 1e-12);
    CHECK(std::abs(x1(x) - x * eval_direct(a, x)) < 1e-12);
  }
}
