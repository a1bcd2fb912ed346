#include "nct/coord_ring.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "nct/theta.hpp"

namespace nct {

Int piece_dim(unsigned n, const RMData& data) { return n == 0 ? 1 : data.power(n).c; }

GradedRing::GradedRing(RMData data, Complex tau, RingOptions options)
    : data_(std::move(data)), tau_(tau), options_(options) {
  if (!(tau.imag() > 0.0)) throw std::domain_error("τ must lie in the upper half plane");
}

ModuleElement GradedRing::embed(unsigned n, const std::vector<Complex>& coeffs) const {
  ModuleElement xi(data_, n);
  xi.add_term(SchwartzVector(holomorphic_vector(tau_, xi.epsilon())), FiniteVector(xi.modulus(), coeffs));
  return xi;
}

RingElement GradedRing::basis(unsigned n, Int j) const {
  std::vector<Complex> v(static_cast<std::size_t>(dim(n)));
  v.at(static_cast<std::size_t>(j)) = 1.0;
  return {{n, std::move(v)}};
}

std::vector<Complex> holomorphic_coefficients(const ModuleElement& xi) {
  std::vector<Complex> out(static_cast<std::size_t>(xi.modulus()));
  for (const auto& t : xi.terms()) {
    for (const auto& atom : t.schwartz.atoms()) {
      if (atom.degree() != 0) throw std::domain_error("element is not in the holomorphic piece");
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += atom.poly[0] * t.finite.entries()[j];
    }
  }
  return out;
}

namespace {

void accumulate(RingElement& into, unsigned degree, const std::vector<Complex>& v) {
  auto& slot = into[degree];
  if (slot.empty()) slot.assign(v.size(), Complex{});
  for (std::size_t i = 0; i < v.size(); ++i) slot[i] += v[i];
}

BalancedOptions balanced_options(const GradedRing& ring) {
  BalancedOptions opt;
  opt.tolerance = ring.options().tolerance;
  opt.max_condition = ring.options().max_condition;
  opt.holomorphic_tau = ring.tau();
  return opt;
}

}  // namespace

ProductReport mult(const GradedRing& ring, const RingElement& u, const RingElement& v) {
  ProductReport out;
  for (const auto& [p, a] : u) {
    if (static_cast<Int>(a.size()) != ring.dim(p)) throw std::domain_error("coefficient vector has the wrong length");
    for (const auto& [q, b] : v) {
      if (static_cast<Int>(b.size()) != ring.dim(q)) throw std::domain_error("coefficient vector has the wrong length");
      if (p == 0 || q == 0) {
        Complex s = p == 0 ? a[0] : b[0];
        const auto& w = p == 0 ? b : a;
        std::vector<Complex> scaled(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) scaled[i] = s * w[i];
        accumulate(out.value, p + q, scaled);
        continue;
      }
      auto res = balanced_product(ring.embed(p, a), ring.embed(q, b), balanced_options(ring));
      out.residual = std::max(out.residual, res.residual);
      accumulate(out.value, p + q, holomorphic_coefficients(res.product));
    }
  }
  return out;
}

double max_abs_difference(const RingElement& u, const RingElement& v) {
  double worst = 0.0;
  auto scan = [&](const RingElement& x, const RingElement& y) {
    for (const auto& [deg, a] : x) {
      auto it = y.find(deg);
      for (std::size_t i = 0; i < a.size(); ++i) {
        Complex b = it == y.end() ? Complex{} : it->second.at(i);
        worst = std::max(worst, std::abs(a[i] - b));
      }
    }
  };
  scan(u, v);
  scan(v, u);
  return worst;
}

double max_abs(const RingElement& u) {
  double worst = 0.0;
  for (const auto& [deg, a] : u)
    for (auto x : a) worst = std::max(worst, std::abs(x));
  return worst;
}

// ---------------------------------------------------------- structure tensors

std::vector<std::vector<Complex>> StructureTensor::matrix() const {
  std::vector<std::vector<Complex>> cols(static_cast<std::size_t>(cm * cn), std::vector<Complex>(static_cast<std::size_t>(cmn)));
  for (Int l = 0; l < cmn; ++l)
    for (Int i = 0; i < cm; ++i)
      for (Int j = 0; j < cn; ++j) cols[static_cast<std::size_t>(i * cn + j)][static_cast<std::size_t>(l)] = at(l, i, j);
  return cols;
}

namespace {

Int lcm(Int a, Int b) { return a / gcd(a, b) * b; }

std::vector<ThetaMatch> theta_table(const StructureTensor& T, const GradedRing& ring) {
  const auto& opt = ring.options();
  const Int L = lcm(T.cm, T.cn);
  const Int r_den = opt.theta_r_den > 0 ? opt.theta_r_den : checked::mul(T.cmn, L);
  const Int l_max = opt.theta_l_max > 0 ? opt.theta_l_max
                                        : (checked::mul(T.cmn, checked::mul(L, L)) + T.cm * T.cn - 1) / (T.cm * T.cn);
  double top = 0.0;
  for (Int l = 0; l < T.cmn; ++l) top = std::max(top, std::abs(T.at(l, 0, 0)));
  std::vector<ThetaMatch> out;
  if (top == 0.0) return out;

  std::vector<ThetaMatch> targets;
  for (Int l = 0; l < T.cmn; ++l) {
    Complex entry = T.at(l, 0, 0);
    if (std::abs(entry) > 1e-12 * top) targets.push_back({l, entry, Rational(0), 0, {}, INFINITY});
  }
  for (Int l = 1; l <= l_max; ++l) {
    Complex m = static_cast<double>(l) * ring.tau();
    for (Int k = 0; k < r_den; ++k) {
      Rational r(k, r_den);
      Complex value = theta_const(r, m, 1e-16).value;
      for (auto& t : targets) {
        double gap = std::abs(t.entry - value);
        if (gap < t.gap) {
          t.gap = gap;
          t.r = r;
          t.l = l;
          t.theta = value;
        }
      }
    }
  }
  return targets;
}

}  // namespace

StructureTensor structure_tensor(const GradedRing& ring, unsigned m, unsigned n, double tolerance) {
  if (m == 0 || n == 0) throw std::domain_error("structure tensors need degrees >= 1");
  StructureTensor T;
  T.m = m;
  T.n = n;
  T.cm = ring.dim(m);
  T.cn = ring.dim(n);
  T.cmn = ring.dim(m + n);
  const auto pairs = static_cast<std::size_t>(T.cm * T.cn);
  T.entries.assign(static_cast<std::size_t>(T.cmn) * pairs, Complex{});
  T.residuals.assign(pairs, 0.0);
  std::vector<char> flagged(pairs, 0);

  auto work = [&](std::size_t pair) {
    Int i = static_cast<Int>(pair) / T.cn, j = static_cast<Int>(pair) % T.cn;
    std::vector<Complex> ei(static_cast<std::size_t>(T.cm)), ej(static_cast<std::size_t>(T.cn));
    ei[static_cast<std::size_t>(i)] = 1.0;
    ej[static_cast<std::size_t>(j)] = 1.0;
    try {
      auto res = balanced_product(ring.embed(m, ei), ring.embed(n, ej), balanced_options(ring));
      auto coeffs = holomorphic_coefficients(res.product);
      for (Int l = 0; l < T.cmn; ++l)
        T.entries[static_cast<std::size_t>((l * T.cm + i) * T.cn + j)] = coeffs[static_cast<std::size_t>(l)];
      T.residuals[pair] = res.residual;
      flagged[pair] = res.residual > tolerance ? 1 : 0;
    } catch (const ConditioningError&) {
      T.residuals[pair] = INFINITY;
      flagged[pair] = 1;
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(ring.options().threads, pairs));
  if (threads == 1) {
    for (std::size_t p = 0; p < pairs; ++p) work(p);
  } else {
    // each worker owns a disjoint set of output slots
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t p = t; p < pairs; p += threads) work(p);
      });
    for (auto& th : pool) th.join();
  }

  T.flagged.assign(flagged.begin(), flagged.end());
  T.max_residual = *std::max_element(T.residuals.begin(), T.residuals.end());
  if (ring.options().theta_diagnostics) T.theta_table = theta_table(T, ring);
  return T;
}

double shift_symmetry_residual(const StructureTensor& T, const RMData& data) {
  const Int dm = data.power(T.m).d;
  const Int cmcn = checked::mul(T.cm, T.cn);
  double top = 0.0;
  for (auto x : T.entries) top = std::max(top, std::abs(x));
  if (top == 0.0) return 0.0;
  double worst = 0.0;
  for (Int di = 1; di <= T.cm; ++di) {
    if (checked::mul(T.cmn, di) % T.cm != 0) continue;
    const Int dl = T.cmn * di / T.cm;
    for (Int dj = 0; dj < T.cn; ++dj) {
      if (mod(dj * T.cm - dm * di * T.cn, cmcn) != 0) continue;
      for (Int l = 0; l < T.cmn; ++l)
        for (Int i = 0; i < T.cm; ++i)
          for (Int j = 0; j < T.cn; ++j) {
            Complex a = T.at(l, i, j);
            Complex b = T.at(mod(l + dl, T.cmn), mod(i + di, T.cm), mod(j + dj, T.cn));
            worst = std::max(worst, std::abs(a - b) / top);
          }
    }
  }
  return worst;
}

std::vector<Complex> contract(const StructureTensor& T, const std::vector<Complex>& u, const std::vector<Complex>& v) {
  if (static_cast<Int>(u.size()) != T.cm || static_cast<Int>(v.size()) != T.cn)
    throw std::domain_error("contraction vectors have the wrong length");
  std::vector<Complex> out(static_cast<std::size_t>(T.cmn));
  for (Int l = 0; l < T.cmn; ++l)
    for (Int i = 0; i < T.cm; ++i)
      for (Int j = 0; j < T.cn; ++j)
        out[static_cast<std::size_t>(l)] += T.at(l, i, j) * u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
  return out;
}

// ---------------------------------------------------------- rank checks

namespace {

Eigen::MatrixXcd to_matrix(const std::vector<std::vector<Complex>>& columns, Int rows) {
  Eigen::MatrixXcd A(rows, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (Int r = 0; r < rows; ++r) A(r, static_cast<Eigen::Index>(c)) = columns[c].at(static_cast<std::size_t>(r));
  return A;
}

Int rank_of(const Eigen::VectorXd& sv, double threshold) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  Int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > threshold * sv(0)) ++r;
  return r;
}

}  // namespace

Int numerical_rank(const std::vector<std::vector<Complex>>& columns, Int rows, double threshold) {
  if (columns.empty() || rows == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_matrix(columns, rows));
  return rank_of(svd.singularValues(), threshold);
}

bool GenerationReport::all() const { return std::all_of(generated.begin(), generated.end(), [](bool b) { return b; }); }

GenerationReport check_generation(const GradedRing& ring, unsigned max_degree) {
  GenerationReport rep;
  for (unsigned n = 1; n < max_degree; ++n) {
    Int target = ring.dim(n + 1);
    Int rank = numerical_rank(structure_tensor(ring, 1, n).matrix(), target, ring.options().rank_threshold);
    // a dimension shortfall decides it regardless of the numerics
    rep.generated.push_back(ring.dim(1) * ring.dim(n) >= target && rank == target);
    rep.ranks.push_back(rank);
    rep.targets.push_back(target);
  }
  return rep;
}

std::string_view to_string(QuadStatus s) {
  switch (s) {
    case QuadStatus::quadratic:
      return "quadratic";
    case QuadStatus::not_quadratic:
      return "not_quadratic";
    case QuadStatus::inconclusive:
      return "inconclusive";
    case QuadStatus::not_applicable:
      return "not_applicable";
  }
  return "unknown";
}

QuadraticReport check_quadratic(const GradedRing& ring) {
  QuadraticReport rep;
  const Int c1 = ring.dim(1), c2 = ring.dim(2), c3 = ring.dim(3);
  const double thr = ring.options().quad_threshold;

  auto T11 = structure_tensor(ring, 1, 1);
  if (std::any_of(T11.flagged.begin(), T11.flagged.end(), [](bool b) { return b; })) {
    rep.status = QuadStatus::inconclusive;
    rep.note = "degree-2 products did not solve to tolerance";
    return rep;
  }
  Eigen::MatrixXcd mu2 = to_matrix(T11.matrix(), c2);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd2(mu2, Eigen::ComputeFullV);
  Int rank2 = rank_of(svd2.singularValues(), ring.options().rank_threshold);
  if (rank2 != c2) {
    rep.status = QuadStatus::not_applicable;
    rep.note = "R1 ⊗ R1 -> R2 is not onto";
    return rep;
  }
  rep.kernel2 = c1 * c1 - rank2;
  Eigen::MatrixXcd K = svd2.matrixV().rightCols(rep.kernel2);

  auto T21 = structure_tensor(ring, 2, 1);
  if (std::any_of(T21.flagged.begin(), T21.flagged.end(), [](bool b) { return b; })) {
    rep.status = QuadStatus::inconclusive;
    rep.note = "degree-3 products did not solve to tolerance";
    return rep;
  }
  // μ3(e_i ⊗ e_j ⊗ e_k) = (e_i e_j) e_k, column index (i c1 + j) c1 + k
  const Int n3 = c1 * c1 * c1;
  Eigen::MatrixXcd mu3 = Eigen::MatrixXcd::Zero(c3, n3);
  for (Int i = 0; i < c1; ++i)
    for (Int j = 0; j < c1; ++j)
      for (Int k = 0; k < c1; ++k)
        for (Int L = 0; L < c3; ++L) {
          Complex s{};
          for (Int l = 0; l < c2; ++l) s += T11.at(l, i, j) * T21.at(L, l, k);
          mu3(L, (i * c1 + j) * c1 + k) = s;
        }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd3(mu3);
  rep.kernel3 = n3 - rank_of(svd3.singularValues(), thr);

  Eigen::MatrixXcd rel = Eigen::MatrixXcd::Zero(n3, 2 * rep.kernel2 * c1);
  Eigen::Index col = 0;
  for (Int q = 0; q < rep.kernel2; ++q) {
    for (Int t = 0; t < c1; ++t, ++col) {
      for (Int a = 0; a < c1; ++a)
        for (Int b = 0; b < c1; ++b) {
          rel((a * c1 + b) * c1 + t, col) = K(a * c1 + b, q);  // κ ⊗ e_t
          rel((t * c1 + a) * c1 + b, col + rep.kernel2 * c1) = K(a * c1 + b, q);  // e_t ⊗ κ
        }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svdr(rel);
  rep.relations3 = rank_of(svdr.singularValues(), thr);
  double norm3 = svd3.singularValues()(0);
  rep.containment = norm3 == 0.0 ? 0.0 : (mu3 * rel).colwise().norm().maxCoeff() / norm3;
  bool ok = rep.relations3 == rep.kernel3 && rep.containment < thr;
  rep.status = ok ? QuadStatus::quadratic : QuadStatus::not_quadratic;
  return rep;
}

}  // namespace nct
