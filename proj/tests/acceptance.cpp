// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "nct/checks.hpp"
#include "nct/coord_ring.hpp"
#include "nct/heisenberg.hpp"
#include "nct/theta.hpp"

using namespace nct;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double time_limit, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& ex) {
    o = {false, std::string("exception: ") + ex.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool timely = time_limit <= 0.0 || secs < time_limit;
  bool ok = o.pass && timely;
  if (!ok) ++failures;
  std::printf("[%s] criterion %d: %s | %s | %.3fs", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  if (time_limit > 0.0) std::printf(" (limit %.0fs)", time_limit);
  std::printf("\n");
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const char* kThetas[] = {"(1+sqrt5)/2", "sqrt2", "(-5+sqrt5)/10"};
const Complex kTau{0.3, 1.1};

}  // namespace

int main() {
  criterion(1, "fixing matrices", 1.0, [] {
    std::ostringstream d;
    bool ok = true;
    for (const char* s : kThetas) {
      auto t = QuadIrr::parse(s);
      auto g = fixing_matrix(t);
      bool good = moebius_act(g, t) == t && g.det() == 1 && g.c > 0 &&
                  (QuadIrr::from_int(g.c) * t + QuadIrr::from_int(g.d)).sign() > 0;
      ok = ok && good;
      d << s << "->" << g.to_string() << " ";
    }
    return Outcome{ok, d.str()};
  });

  criterion(2, "rank lattice c_n θ + d_n = (cθ + d)^n, n <= 10", 1.0, [] {
    bool ok = true;
    int checked = 0;
    for (const char* s : kThetas) {
      auto t = QuadIrr::parse(s);
      auto g = fixing_matrix(t);
      auto base = QuadIrr::from_int(g.c) * t + QuadIrr::from_int(g.d);
      for (unsigned n = 1; n <= 10; ++n) {
        auto gn = g.pow(n);
        ok = ok && QuadIrr::from_int(gn.c) * t + QuadIrr::from_int(gn.d) == base.pow(n) &&
             rank_value(g, n, t) == base.pow(n);
        ++checked;
      }
    }
    return Outcome{ok, std::to_string(checked) + " exact identities"};
  });

  criterion(3, "algebra suite, 100 samples, support <= 20", 5.0, [] {
    AlgebraSuiteOptions o;
    o.samples = 100;
    o.max_support = 20;
    double worst = 0.0;
    bool ok = true;
    std::string worst_name;
    for (const char* s : kThetas) {
      auto rep = algebra_suite(QuadIrr::parse(s), o);
      ok = ok && rep.pass();
      for (const auto& c : rep.checks)
        if (c.value > worst) {
          worst = c.value;
          worst_name = c.name;
        }
    }
    return Outcome{ok && worst < 1e-12, "max residual " + fmt(worst) + " (" + worst_name + ") < 1e-12"};
  });

  criterion(4, "Heisenberg representation property", 0.0, [] {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double real_worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      double eps = 0.3 + std::abs(u(rng));
      RealHeisElement h1{std::polar(1.0, u(rng)), {u(rng), u(rng)}, eps};
      RealHeisElement h2{std::polar(1.0, u(rng)), {u(rng), u(rng)}, eps};
      GaussianAtom a{{Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)}}, Complex{u(rng), 0.4 + std::abs(u(rng))},
                     Complex{u(rng), u(rng) / 3.0}};
      SchwartzVector f(a);
      real_worst = std::max(real_worst, relative_residual(act_real(h1, act_real(h2, f, eps), eps),
                                                          act_real(group_mul(h1, h2), f, eps)));
    }
    long finite_bad = 0, finite_total = 0;
    for (Int c = 1; c <= 6; ++c)
      for (Int m1 = 0; m1 < c; ++m1)
        for (Int m2 = 0; m2 < c; ++m2)
          for (Int k1 = 0; k1 < c; ++k1)
            for (Int k2 = 0; k2 < c; ++k2) {
              FiniteHeisElement h1{1.0, {m1, m2}, c}, h2{1.0, {k1, k2}, c};
              auto lhs = compose(finite_operator(h1), finite_operator(h2));
              auto rhs = finite_operator(FiniteHeisElement{1.0, {m1 + k1, m2 + k2}, c});
              Rational cocycle = finite_cocycle_exponent(h1.m, h2.m, c);
              bool same = mod(lhs.shift, c) == mod(rhs.shift, c);
              for (Int n = 0; n < c; ++n)
                same = same && lhs.phase[static_cast<std::size_t>(n)] ==
                                   (rhs.phase[static_cast<std::size_t>(n)] + cocycle).frac();
              finite_bad += same ? 0 : 1;
              ++finite_total;
            }
    bool nondeg = true;
    for (Int c = 1; c <= 12; ++c) nondeg = nondeg && pairing_nondegenerate(c);
    bool ok = real_worst < 1e-12 && finite_bad == 0 && nondeg;
    return Outcome{ok, "real residual " + fmt(real_worst) + " < 1e-12; finite " + std::to_string(finite_total - finite_bad) +
                           "/" + std::to_string(finite_total) + " exact; nondegenerate c<=12: " + (nondeg ? "yes" : "no")};
  });

  criterion(5, "holomorphic vector annihilated, 20 random τ", 0.0, [] {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int zero = 0;
    for (int i = 0; i < 20; ++i) {
      Complex tau{u(rng), 0.05 + std::abs(u(rng))};
      double eps = 0.1 + std::abs(u(rng));
      auto w = lie_combination(1.0, -tau, SchwartzVector(holomorphic_vector(tau, eps)), eps);
      zero += w.empty() ? 1 : 0;
    }
    return Outcome{zero == 20, std::to_string(zero) + "/20 exactly zero at the atom level"};
  });

  criterion(6, "bimodule phases and commutation", 0.0, [] {
    double worst = 0.0;
    for (const char* s : kThetas) {
      auto data = RMData::from_theta(QuadIrr::parse(s));
      ModuleSuiteOptions o;
      o.max_degree = 3;
      o.products = false;
      auto rep = module_suite(data, kTau, o);
      for (const char* name : {"right_relation", "left_relation", "bimodule_commutation"})
        worst = std::max(worst, rep.worst(name));
    }
    return Outcome{worst < 1e-12, "max residual " + fmt(worst) + " < 1e-12"};
  });

  criterion(7, "connection Leibniz and curvature", 0.0, [] {
    double leib = 0.0, curv = 0.0;
    for (const char* s : kThetas) {
      auto data = RMData::from_theta(QuadIrr::parse(s));
      ModuleSuiteOptions o;
      o.max_degree = 3;
      o.products = false;
      auto rep = module_suite(data, kTau, o);
      leib = std::max(leib, rep.worst("connection_leibniz"));
      curv = std::max({curv, rep.worst("curvature"), rep.worst("curvature_central")});
    }
    return Outcome{leib < 1e-12 && curv < 1e-12,
                   "Leibniz " + fmt(leib) + " < 1e-12; curvature + (2πi/ε) id " + fmt(curv) + " < 1e-12"};
  });

  criterion(8, "theta certification", 5.0, [] {
    auto v = theta_const(Rational(0), Complex{0.0, 1.0});
    double gap = std::abs(v.value - 1.086434811213308);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int good = 0;
    for (int i = 0; i < 100; ++i) {
      Int q = std::uniform_int_distribution<Int>(1, 12)(rng);
      Rational r(std::uniform_int_distribution<Int>(0, q - 1)(rng), q);
      Complex m{4.0 * u(rng) - 2.0, 0.05 + 2.0 * u(rng)};
      Int N = std::uniform_int_distribution<Int>(1, 12)(rng);
      double diff = std::abs(theta_partial(r, m, N) - theta_partial(r, m, N + 10));
      good += diff <= tail_bound(N, r, m.imag()) + 1e-15 ? 1 : 0;
    }
    return Outcome{gap < 1e-12 && good == 100,
                   "|ϑ_0(i) - 1.086434811213308| = " + fmt(gap) + " < 1e-12; bound holds " + std::to_string(good) + "/100"};
  });

  criterion(9, "ring g=[[-1,-1],[5,4]], θ=(-5+sqrt5)/10, τ=0.3+1.1i", 120.0, [] {
    RMData data(QuadIrr::parse("(-5+sqrt5)/10"), SL2Matrix{-1, -1, 5, 4});
    GradedRing ring(data, kTau);
    std::vector<Int> dims;
    for (unsigned n = 0; n <= 3; ++n) dims.push_back(ring.dim(n));
    auto gen = check_generation(ring, 2);
    auto q = check_quadratic(ring);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto random_deg1 = [&] {
      std::vector<Complex> v(5);
      for (auto& c : v) c = {u(rng), u(rng)};
      return RingElement{{1u, v}};
    };
    double assoc = 0.0;
    for (int t = 0; t < 20; ++t) {
      auto a = random_deg1(), b = random_deg1(), c = random_deg1();
      auto l = mult(ring, mult(ring, a, b).value, c).value;
      auto r = mult(ring, a, mult(ring, b, c).value).value;
      assoc = std::max(assoc, max_abs_difference(l, r) / max_abs(l));
    }
    bool ok = dims == std::vector<Int>{1, 5, 15, 40} && gen.ranks.at(0) == 15 && q.status == QuadStatus::quadratic &&
              assoc < 1e-8;
    std::ostringstream d;
    d << "dims [" << dims[0] << "," << dims[1] << "," << dims[2] << "," << dims[3] << "]; rank R1⊗R1->R2 "
      << gen.ranks.at(0) << "/15; quadratic: " << to_string(q.status) << " (K2=" << q.kernel2 << ", K3=" << q.kernel3
      << ", relations " << q.relations3 << ", containment " << fmt(q.containment) << "); associativity " << fmt(assoc)
      << " < 1e-8";
    return Outcome{ok, d.str()};
  });

  criterion(10, "negative control g=[[2,1],[1,1]]", 0.0, [] {
    RMData data(QuadIrr::parse("(1+sqrt5)/2"), SL2Matrix{2, 1, 1, 1});
    GradedRing ring(data, kTau);
    auto gen = check_generation(ring, 2);
    bool ok = !gen.generated.at(0) && ring.dim(1) * ring.dim(1) < ring.dim(2);
    return Outcome{ok, "dim R1⊗R1 = " + std::to_string(ring.dim(1) * ring.dim(1)) + " < dim R2 = " +
                           std::to_string(ring.dim(2)) + "; generation " + (gen.generated.at(0) ? "holds" : "fails")};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
