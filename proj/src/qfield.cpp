#include "nct/qfield.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace nct {

namespace checked {

Int add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow in addition");
  return out;
}

Int sub(Int a, Int b) {
  Int out;
  if (__builtin_sub_overflow(a, b, &out)) throw std::overflow_error("integer overflow in subtraction");
  return out;
}

Int mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow in multiplication");
  return out;
}

Int neg(Int a) { return sub(0, a); }

}  // namespace checked

namespace {

using Wide = __int128;

Int narrow(Wide w) {
  if (w > static_cast<Wide>(INT64_MAX) || w < static_cast<Wide>(INT64_MIN))
    throw std::overflow_error("integer overflow narrowing 128-bit intermediate");
  return static_cast<Int>(w);
}

Wide isqrt_wide(Wide n) {
  if (n < 0) throw std::domain_error("isqrt of negative number");
  if (n < 2) return n;
  auto x = static_cast<Wide>(std::sqrt(static_cast<long double>(n)));
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

// Splits D = s^2 * core with core squarefree; returns {s, core}.
std::pair<Int, Int> square_split(Int D) {
  Int s = 1;
  Int core = D;
  for (Int f = 2; f * f <= core; ++f) {
    while (core % (f * f) == 0) {
      core /= f * f;
      s = checked::mul(s, f);
    }
  }
  return {s, core};
}

bool squarefree(Int D) {
  if (D < 2) return false;
  return square_split(D).first == 1;
}

Int merge_radicand(const QuadIrr& a, const QuadIrr& b) {
  if (!a.is_rational() && !b.is_rational() && a.radicand() != b.radicand())
    throw std::domain_error("quadratic numbers from different fields: sqrt" + std::to_string(a.radicand()) +
                            " vs sqrt" + std::to_string(b.radicand()));
  if (!a.is_rational()) return a.radicand();
  if (!b.is_rational()) return b.radicand();
  return a.radicand() != 1 ? a.radicand() : b.radicand();
}

}  // namespace

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int isqrt(Int n) { return narrow(isqrt_wide(n)); }

bool is_square(Int n) {
  if (n < 0) return false;
  Int s = isqrt(n);
  return static_cast<Wide>(s) * s == n;
}

Int floor_div(Int a, Int b) {
  if (b == 0) throw std::domain_error("division by zero");
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int mod(Int a, Int b) {
  Int m = a % b;
  return m < 0 ? m + b : m;
}

// ---------------------------------------------------------------- Rational

Rational::Rational(Int num, Int den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = checked::neg(num);
    den = checked::neg(den);
  }
  Int g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::frac() const { return Rational(mod(num_, den_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
  Int g = std::gcd(a.den_, b.den_);
  Int l = checked::mul(a.den_ / g, b.den_);
  return Rational(checked::add(checked::mul(a.num_, l / a.den_), checked::mul(b.num_, l / b.den_)), l);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  Int g1 = std::gcd(a.num_, b.den_);
  Int g2 = std::gcd(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked::mul(a.num_ / g1, b.num_ / g2), checked::mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  return lhs <=> rhs;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

Int parse_int(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("expected integer literal");
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("expected digits in integer literal '" + std::string(s) + "'");
  Int v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("invalid integer literal '" + std::string(s) + "'");
    v = checked::add(checked::mul(v, 10), s[i] - '0');
  }
  return negative ? -v : v;
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string s = strip_spaces(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s));
  return Rational(parse_int(std::string_view(s).substr(0, slash)), parse_int(std::string_view(s).substr(slash + 1)));
}

// ----------------------------------------------------------------- QuadIrr

QuadIrr::QuadIrr(Int p, Int q, Int r, Int D) {
  if (r == 0) throw std::domain_error("quadratic number with zero denominator");
  if (q != 0) {
    if (D < 0) throw std::domain_error("radicand must be non-negative for a real quadratic field");
    if (D == 0) {
      q = 0;
      D = 1;
    } else {
      auto [s, core] = square_split(D);
      q = checked::mul(q, s);
      D = core;
      if (D == 1) {
        p = checked::add(p, q);
        q = 0;
      }
    }
  }
  if (q == 0 && !squarefree(D)) D = 1;
  if (r < 0) {
    p = checked::neg(p);
    q = checked::neg(q);
    r = checked::neg(r);
  }
  Int g = std::gcd(std::gcd(p, q), r);
  p_ = p / g;
  q_ = q / g;
  r_ = r / g;
  d_ = D;
}

Rational QuadIrr::norm() const {
  Wide n = static_cast<Wide>(p_) * p_ - static_cast<Wide>(q_) * q_ * d_;
  Wide d = static_cast<Wide>(r_) * r_;
  // reduce in wide arithmetic before narrowing
  Wide a = n < 0 ? -n : n;
  Wide b = d;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  return Rational(narrow(n / a), narrow(d / a));
}

Rational QuadIrr::trace() const { return Rational(checked::mul(2, p_), r_); }

int QuadIrr::sign() const {
  auto sgn = [](Int v) { return (v > 0) - (v < 0); };
  if (q_ == 0) return sgn(p_);
  if (p_ == 0 || sgn(p_) == sgn(q_)) return sgn(q_);
  Wide pp = static_cast<Wide>(p_) * p_;
  Wide qq = static_cast<Wide>(q_) * q_ * d_;
  // p and q have opposite signs; p dominates iff p^2 > q^2 D (never equal: D squarefree > 1)
  return pp > qq ? sgn(p_) : sgn(q_);
}

Int QuadIrr::floor() const {
  if (q_ == 0) return floor_div(p_, r_);
  Wide s = isqrt_wide(static_cast<Wide>(q_) * q_ * d_);
  Wide fl = q_ > 0 ? s : -s - 1;
  Wide num = static_cast<Wide>(p_) + fl;
  Wide quo = num / r_;
  if (num % r_ != 0 && num < 0) --quo;
  return narrow(quo);
}

double QuadIrr::to_double() const { return static_cast<double>(to_long_double()); }

long double QuadIrr::to_long_double() const {
  long double root = q_ == 0 ? 0.0L : std::sqrt(static_cast<long double>(d_));
  return (static_cast<long double>(p_) + static_cast<long double>(q_) * root) / static_cast<long double>(r_);
}

QuadIrr operator+(const QuadIrr& a, const QuadIrr& b) {
  Int D = merge_radicand(a, b);
  Int g = std::gcd(a.r_, b.r_);
  Int ra = a.r_ / g;
  Int rb = b.r_ / g;
  return QuadIrr(checked::add(checked::mul(a.p_, rb), checked::mul(b.p_, ra)),
                 checked::add(checked::mul(a.q_, rb), checked::mul(b.q_, ra)), checked::mul(ra, b.r_), D);
}

QuadIrr operator-(const QuadIrr& a, const QuadIrr& b) { return a + (-b); }

QuadIrr operator*(const QuadIrr& a, const QuadIrr& b) {
  Int D = merge_radicand(a, b);
  Wide p = static_cast<Wide>(a.p_) * b.p_ + static_cast<Wide>(a.q_) * b.q_ * D;
  Wide q = static_cast<Wide>(a.p_) * b.q_ + static_cast<Wide>(a.q_) * b.p_;
  Wide r = static_cast<Wide>(a.r_) * b.r_;
  Wide g = 0;
  for (Wide v : {p, q, r}) {
    Wide x = v < 0 ? -v : v;
    Wide y = g;
    while (y != 0) {
      Wide t = x % y;
      x = y;
      y = t;
    }
    g = x;
  }
  if (g == 0) g = 1;
  return QuadIrr(narrow(p / g), narrow(q / g), narrow(r / g), D);
}

QuadIrr operator/(const QuadIrr& a, const QuadIrr& b) {
  if (b.p_ == 0 && b.q_ == 0) throw std::domain_error("division by zero in quadratic field");
  Int D = merge_radicand(a, b);
  // 1/b = r (p - q sqrtD) / (p^2 - q^2 D)
  Rational n = b.norm();  // (p^2 - q^2 D) / r^2
  QuadIrr inv_num(b.p_, checked::neg(b.q_), b.r_, D);  // conj(b)
  // 1/b = conj(b) / N(b)
  QuadIrr inv = inv_num * QuadIrr(n.den(), 0, n.num(), D);
  return a * inv;
}

QuadIrr QuadIrr::pow(unsigned n) const {
  QuadIrr result = QuadIrr::from_int(1, d_);
  QuadIrr base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

bool operator==(const QuadIrr& a, const QuadIrr& b) {
  return a.p_ == b.p_ && a.q_ == b.q_ && a.r_ == b.r_ && (a.q_ == 0 || a.d_ == b.d_);
}

std::strong_ordering operator<=>(const QuadIrr& a, const QuadIrr& b) {
  int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Int QuadIrr::MinimalPolynomial::discriminant() const {
  return checked::sub(checked::mul(b, b), checked::mul(4, checked::mul(a, c)));
}

QuadIrr::MinimalPolynomial QuadIrr::minimal_polynomial() const {
  if (q_ == 0) throw std::domain_error("minimal polynomial requested for a rational number");
  // r x - p = q sqrtD  =>  r^2 x^2 - 2 p r x + p^2 - q^2 D = 0
  Int A = checked::mul(r_, r_);
  Int B = checked::neg(checked::mul(2, checked::mul(p_, r_)));
  Int C = checked::sub(checked::mul(p_, p_), checked::mul(checked::mul(q_, q_), d_));
  Int g = std::gcd(std::gcd(A, B), C);
  return {A / g, B / g, C / g};
}

std::string QuadIrr::to_string() const {
  std::ostringstream os;
  if (q_ == 0) {
    os << p_;
    if (r_ != 1) os << "/" << r_;
    return os.str();
  }
  std::ostringstream num;
  if (p_ != 0) num << p_;
  if (q_ < 0)
    num << "-";
  else if (p_ != 0)
    num << "+";
  Int aq = q_ < 0 ? -q_ : q_;
  if (aq != 1) num << aq << "*";
  num << "sqrt" << d_;
  if (r_ == 1) return num.str();
  os << "(" << num.str() << ")/" << r_;
  return os.str();
}

QuadIrr QuadIrr::parse(std::string_view text) {
  std::string s = strip_spaces(text);
  if (s.empty()) throw std::invalid_argument("empty quadratic number");
  std::string body = s;
  Int r = 1;
  // trailing "/r" outside of any parenthesis
  auto close = s.rfind(')');
  auto slash = s.rfind('/');
  if (slash != std::string::npos && (close == std::string::npos || slash > close)) {
    r = parse_int(std::string_view(s).substr(slash + 1));
    body = s.substr(0, slash);
  }
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') throw std::invalid_argument("unbalanced parenthesis in '" + s + "'");
    body = body.substr(1, body.size() - 2);
  }
  if (body.find_first_of("()") != std::string::npos) throw std::invalid_argument("unexpected parenthesis in '" + s + "'");

  Int p = 0, q = 0, D = 1;
  std::size_t i = 0;
  bool any = false;
  while (i < body.size()) {
    std::size_t j = i + 1;
    while (j < body.size() && body[j] != '+' && body[j] != '-') ++j;
    std::string term = body.substr(i, j - i);
    i = j;
    any = true;
    int sgn = 1;
    if (term[0] == '+' || term[0] == '-') {
      sgn = term[0] == '-' ? -1 : 1;
      term = term.substr(1);
    }
    auto root = term.find("sqrt");
    if (root == std::string::npos) {
      p = checked::add(p, sgn * parse_int(term));
      continue;
    }
    Int coeff = 1;
    if (root > 0) {
      std::string c = term.substr(0, root);
      if (c.back() == '*') c.pop_back();
      coeff = parse_int(c);
    }
    Int rad = parse_int(term.substr(root + 4));
    if (rad <= 0) throw std::invalid_argument("radicand must be positive in '" + s + "'");
    if (q != 0 && rad != D) throw std::invalid_argument("mixed radicands in '" + s + "'");
    D = rad;
    q = checked::add(q, sgn * coeff);
  }
  if (!any) throw std::invalid_argument("empty quadratic number");
  if (r == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return QuadIrr(p, q, r, D);
}

// --------------------------------------------------------------- SL2Matrix

SL2Matrix SL2Matrix::make(Int a, Int b, Int c, Int d) {
  SL2Matrix g{a, b, c, d};
  if (g.det() != 1) throw std::domain_error("matrix " + g.to_string() + " has determinant " + std::to_string(g.det()));
  return g;
}

Int SL2Matrix::det() const { return checked::sub(checked::mul(a, d), checked::mul(b, c)); }

SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y) {
  using checked::add;
  using checked::mul;
  return {add(mul(x.a, y.a), mul(x.b, y.c)), add(mul(x.a, y.b), mul(x.b, y.d)), add(mul(x.c, y.a), mul(x.d, y.c)),
          add(mul(x.c, y.b), mul(x.d, y.d))};
}

SL2Matrix SL2Matrix::pow(unsigned n) const {
  SL2Matrix result;
  SL2Matrix base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

std::string SL2Matrix::to_string() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

QuadIrr moebius_act(const SL2Matrix& g, const QuadIrr& t) {
  Int D = t.radicand();
  QuadIrr den = QuadIrr::from_int(g.c, D) * t + QuadIrr::from_int(g.d, D);
  if (den.sign() == 0) throw std::domain_error("fractional linear action hits the pole c t + d = 0");
  return (QuadIrr::from_int(g.a, D) * t + QuadIrr::from_int(g.b, D)) / den;
}

// ---------------------------------------------------- continued fractions

ContinuedFraction cf_expand(const QuadIrr& t, std::size_t max_terms) {
  if (t.is_rational()) throw std::domain_error("continued fraction period requested for rational " + t.to_string());
  ContinuedFraction out;
  std::map<std::tuple<Int, Int, Int>, std::size_t> seen;
  QuadIrr x = t;
  const Int D = t.radicand();
  for (std::size_t k = 0; k < max_terms; ++k) {
    auto key = std::make_tuple(x.p(), x.q(), x.r());
    if (auto it = seen.find(key); it != seen.end()) {
      out.preperiod = it->second;
      out.period.assign(out.terms.begin() + static_cast<std::ptrdiff_t>(it->second), out.terms.end());
      return out;
    }
    seen.emplace(key, k);
    Int a = x.floor();
    out.terms.push_back(a);
    x = QuadIrr::from_int(1, D) / (x - QuadIrr::from_int(a, D));
  }
  return out;
}

std::vector<Convergent> convergents(const std::vector<Int>& terms) {
  std::vector<Convergent> out;
  Int p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  for (Int a : terms) {
    Int p = checked::add(checked::mul(a, p_prev), p_prev2);
    Int q = checked::add(checked::mul(a, q_prev), q_prev2);
    out.push_back({p, q});
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
  }
  return out;
}

// ---------------------------------------------------------- fixing matrices

namespace {

bool admissible(const SL2Matrix& g, const QuadIrr& t) {
  if (g.det() != 1 || g.c <= 0) return false;
  const Int D = t.radicand();
  if ((QuadIrr::from_int(g.c, D) * t + QuadIrr::from_int(g.d, D)).sign() <= 0) return false;
  return moebius_act(g, t) == t;
}

constexpr Int kEnumerationLimit = 2'000'000;

}  // namespace

SL2Matrix fixing_matrix(const QuadIrr& t) {
  if (t.is_rational()) throw std::domain_error("no fixing matrix for rational " + t.to_string());
  // g.t = t  <=>  c t^2 + (d - a) t - b = 0, so (c, d - a, -b) = k (A, B, C) with
  // k > 0 (c > 0). Then trace T satisfies T^2 - disc k^2 = 4; T grows with k.
  auto mp = t.minimal_polynomial();
  const Int disc = mp.discriminant();
  for (Int k = 1; k <= kEnumerationLimit; ++k) {
    Wide tt = static_cast<Wide>(disc) * k * k + 4;
    Wide T = isqrt_wide(tt);
    if (T * T != tt) continue;
    Int trace = narrow(T);
    Int kb = checked::mul(k, mp.b);
    SL2Matrix g{(trace - kb) / 2, checked::neg(checked::mul(k, mp.c)), checked::mul(k, mp.a), (trace + kb) / 2};
    if (admissible(g, t)) return g;
  }
  return fixing_matrix_from_cf(t);
}

SL2Matrix fixing_matrix_from_cf(const QuadIrr& t) {
  auto cf = cf_expand(t, 4096);
  if (!cf.periodic()) throw std::runtime_error("continued fraction period not found for " + t.to_string());
  auto step = [](Int a) { return SL2Matrix{a, 1, 1, 0}; };  // det -1, kept as a plain 2x2 product
  auto mul = [](const SL2Matrix& x, const SL2Matrix& y) { return x * y; };
  SL2Matrix pre = SL2Matrix::identity();
  for (std::size_t i = 0; i < cf.preperiod; ++i) pre = mul(pre, step(cf.terms[i]));
  SL2Matrix per = SL2Matrix::identity();
  for (Int a : cf.period) per = mul(per, step(a));
  if (cf.period.size() % 2 == 1) per = mul(per, per);
  // pre^{-1} for a matrix of determinant +-1
  Int det = pre.det();
  SL2Matrix pre_inv{checked::mul(det, pre.d), checked::mul(det, checked::neg(pre.b)),
                    checked::mul(det, checked::neg(pre.c)), checked::mul(det, pre.a)};
  SL2Matrix g = mul(mul(pre, per), pre_inv);
  const SL2Matrix candidates[] = {g, SL2Matrix{-g.a, -g.b, -g.c, -g.d}, g.inverse(),
                                  SL2Matrix{-g.d, g.b, g.c, -g.a}};
  for (const auto& cand : candidates)
    if (admissible(cand, t)) return cand;
  throw std::logic_error("continued fraction period matrix does not fix " + t.to_string());
}

QuadIrr rank_value(const SL2Matrix& g, unsigned n, const QuadIrr& t) {
  if (g.det() != 1) throw std::domain_error("matrix " + g.to_string() + " is not in SL2(Z)");
  if (moebius_act(g, t) != t) throw std::domain_error(g.to_string() + " does not fix " + t.to_string());
  SL2Matrix gn = g.pow(n);
  const Int D = t.radicand();
  return QuadIrr::from_int(gn.c, D) * t + QuadIrr::from_int(gn.d, D);
}

// ------------------------------------------------------ lattice, multipliers

QuadIrr LatticeElement::value(const QuadIrr& theta) const {
  const Int D = theta.radicand();
  return QuadIrr::from_int(m, D) + QuadIrr::from_int(n, D) * theta;
}

std::optional<LatticeElement> lattice_coordinates(const QuadIrr& x, const QuadIrr& theta) {
  if (theta.is_rational()) throw std::domain_error("lattice Z + theta Z needs irrational theta");
  if (!x.is_rational() && x.radicand() != theta.radicand()) return std::nullopt;
  Rational n = x.irrational_part() / theta.irrational_part();
  if (n.den() != 1) return std::nullopt;
  QuadIrr rest = x - QuadIrr::from_int(n.num(), theta.radicand()) * theta;
  if (!rest.is_rational() || rest.r() != 1) return std::nullopt;
  return LatticeElement{rest.p(), n.num()};
}

Int field_discriminant(Int D) { return mod(D, 4) == 1 ? D : checked::mul(4, D); }

MultiplierRing::MultiplierRing(const QuadIrr& theta) : theta_(theta) {
  if (theta.is_rational()) throw std::domain_error("multiplier ring needs irrational theta, got " + theta.to_string());
  Int disc = theta.minimal_polynomial().discriminant();
  Int dk = field_discriminant(theta.radicand());
  if (disc % dk != 0 || !is_square(disc / dk)) throw std::logic_error("discriminant is not f^2 times the field discriminant");
  conductor_ = isqrt(disc / dk);
}

bool MultiplierRing::contains(const QuadIrr& alpha) const {
  if (!alpha.is_rational() && alpha.radicand() != theta_.radicand()) return false;
  return lattice_coordinates(alpha, theta_).has_value() && lattice_coordinates(alpha * theta_, theta_).has_value();
}

MultiplierRing multiplier_ring(const QuadIrr& theta) { return MultiplierRing(theta); }

// ------------------------------------------------------------------ RMData

RMData::RMData(const QuadIrr& theta, const SL2Matrix& g) : theta_(theta), g_(g) {
  if (theta.is_rational()) throw std::domain_error("theta must be irrational, got " + theta.to_string());
  if (g.det() != 1) throw std::domain_error("matrix " + g.to_string() + " has determinant " + std::to_string(g.det()));
  if (moebius_act(g, theta) != theta) throw std::domain_error(g.to_string() + " does not fix " + theta.to_string());
  if (g.c <= 0) throw std::domain_error("fixing matrix needs c > 0");
  const Int D = theta.radicand();
  QuadIrr rk = QuadIrr::from_int(g.c, D) * theta + QuadIrr::from_int(g.d, D);
  if (rk.sign() <= 0) throw std::domain_error("fixing matrix needs c theta + d > 0");
  epsilon_ = rk / QuadIrr::from_int(g.c, D);
}

QuadIrr RMData::epsilon_at(unsigned n) const {
  if (n == 0) throw std::domain_error("epsilon is defined for degree >= 1");
  SL2Matrix gn = power(n);
  const Int D = theta_.radicand();
  return (QuadIrr::from_int(gn.c, D) * theta_ + QuadIrr::from_int(gn.d, D)) / QuadIrr::from_int(gn.c, D);
}

}  // namespace nct
