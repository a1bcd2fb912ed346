#include "nct/serialize.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>

namespace nct {

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  std::string buf(s);
  if (buf.front() == '+') buf.erase(0, 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(buf, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != buf.size()) throw std::invalid_argument("cannot parse complex number '" + std::string(whole) + "'");
  return v;
}

template <class F>
auto wrap(const Json& j, const char* what, F f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("malformed ") + what + ": " + ex.what() + " in " + j.dump());
  }
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
  s.pop_back();
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_real(s, text)};
  return {parse_real(std::string_view(s).substr(0, split), text), parse_real(std::string_view(s).substr(split), text)};
}

std::string format_complex(Complex z) {
  auto fmt = [](double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
  };
  std::string im = fmt(z.imag());
  if (im.front() != '-') im = "+" + im;
  return fmt(z.real()) + im + "i";
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }
Json to_json(const Rational& x) { return x.to_string(); }
Json to_json(const QuadIrr& x) { return {{"p", x.p()}, {"q", x.q()}, {"r", x.r()}, {"D", x.radicand()}}; }
Json to_json(const SL2Matrix& g) { return Json::array({Json::array({g.a, g.b}), Json::array({g.c, g.d})}); }

Json to_json(const GaussianAtom& atom) {
  Json poly = Json::array();
  for (auto c : atom.poly) poly.push_back(to_json(c));
  return {{"poly", poly}, {"alpha", to_json(atom.alpha)}, {"beta", to_json(atom.beta)}};
}

Json to_json(const SchwartzVector& f) {
  Json out = Json::array();
  for (const auto& a : f.atoms()) out.push_back(to_json(a));
  return out;
}

Json to_json(const FiniteVector& phi) {
  Json out = Json::array();
  for (auto c : phi.entries()) out.push_back(to_json(c));
  return out;
}

Json to_json(const TorusElement& x) {
  Json terms = Json::array();
  for (const auto& [mono, c] : x.coeffs()) terms.push_back({{"n", mono.n}, {"m", mono.m}, {"re", c.real()}, {"im", c.imag()}});
  return {{"theta", to_json(x.theta())}, {"terms", terms}};
}

Json to_json(const RMData& data) {
  return {{"theta", to_json(data.theta())}, {"g", to_json(data.g())}, {"epsilon", to_json(data.epsilon())}};
}

Json to_json(const ModuleElement& xi) {
  Json terms = Json::array();
  for (const auto& t : xi.terms()) terms.push_back({{"schwartz", to_json(t.schwartz)}, {"finite", to_json(t.finite)}});
  return {{"theta", to_json(xi.data().theta())}, {"g", to_json(xi.data().g())}, {"degree", xi.degree()}, {"terms", terms}};
}

Json to_json(const RingElement& u) {
  Json out = Json::object();
  for (const auto& [deg, v] : u) {
    Json coeffs = Json::array();
    for (auto c : v) coeffs.push_back(to_json(c));
    out[std::to_string(deg)] = coeffs;
  }
  return out;
}

Complex complex_from_json(const Json& j) {
  return wrap(j, "complex", [&] {
    if (j.is_string()) return parse_complex(j.get<std::string>());
    if (j.is_number()) return Complex{j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex must be [re, im]: " + j.dump());
    return Complex{j.at(0).get<double>(), j.at(1).get<double>()};
  });
}

QuadIrr quad_from_json(const Json& j) {
  return wrap(j, "quadratic irrationality", [&] {
    if (j.is_string()) return QuadIrr::parse(j.get<std::string>());
    return QuadIrr(j.at("p").get<Int>(), j.at("q").get<Int>(), j.at("r").get<Int>(), j.at("D").get<Int>());
  });
}

SL2Matrix matrix_from_json(const Json& j) {
  return wrap(j, "matrix", [&] {
    if (j.is_string()) return matrix_from_json(Json::parse(j.get<std::string>()));
    if (!j.is_array() || j.size() != 2 || j.at(0).size() != 2 || j.at(1).size() != 2)
      throw std::invalid_argument("matrix must be [[a,b],[c,d]]: " + j.dump());
    try {
      return SL2Matrix::make(j[0][0].get<Int>(), j[0][1].get<Int>(), j[1][0].get<Int>(), j[1][1].get<Int>());
    } catch (const std::domain_error& ex) {
      throw std::invalid_argument(ex.what());
    }
  });
}

GaussianAtom atom_from_json(const Json& j) {
  return wrap(j, "atom", [&] {
    GaussianAtom atom;
    atom.poly.clear();
    for (const auto& c : j.at("poly")) atom.poly.push_back(complex_from_json(c));
    atom.alpha = complex_from_json(j.at("alpha"));
    atom.beta = complex_from_json(j.at("beta"));
    if (!(atom.alpha.imag() > 0.0)) throw std::invalid_argument("atom needs Im alpha > 0");
    return atom;
  });
}

TorusElement torus_from_json(const Json& j, Precision precision) {
  return wrap(j, "torus element", [&] {
    TorusElement x(quad_from_json(j.at("theta")), precision);
    for (const auto& t : j.at("terms")) x.add_term(t.at("n").get<Int>(), t.at("m").get<Int>(), {t.at("re").get<double>(), t.at("im").get<double>()});
    return x;
  });
}

ModuleElement module_from_json(const Json& j) {
  return wrap(j, "module element", [&] {
    RMData data(quad_from_json(j.at("theta")), matrix_from_json(j.at("g")));
    ModuleElement xi(data, j.at("degree").get<unsigned>());
    for (const auto& t : j.at("terms")) {
      SchwartzVector f;
      for (const auto& a : t.at("schwartz")) f.add(atom_from_json(a));
      std::vector<Complex> entries;
      for (const auto& c : t.at("finite")) entries.push_back(complex_from_json(c));
      const auto c = static_cast<Int>(entries.size());
      xi.add_term(std::move(f), FiniteVector(c, std::move(entries)));
    }
    return xi;
  });
}

}  // namespace nct
