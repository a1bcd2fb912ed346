#pragma once

// JSON forms:
//   complex        [re, im]
//   QuadIrr        {"p", "q", "r", "D"}
//   SL2Matrix      [[a, b], [c, d]]
//   GaussianAtom   {"poly": [complex...], "alpha": complex, "beta": complex}
//   TorusElement   {"theta": QuadIrr, "terms": [{"n", "m", "re", "im"}...]}
//   ModuleElement  {"theta", "g", "degree", "terms": [{"schwartz": [atom...], "finite": [complex...]}]}

#include <json.hpp>
#include <string_view>

#include "nct/bimodule.hpp"
#include "nct/coord_ring.hpp"
#include "nct/qfield.hpp"
#include "nct/torus.hpp"

namespace nct {

using Json = nlohmann::json;

// "a+bi", "a-bi", "bi", "a", "i", "-i"; whitespace ignored.
// Throws std::invalid_argument.
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

Json to_json(Complex z);
Json to_json(const Rational& x);
Json to_json(const QuadIrr& x);
Json to_json(const SL2Matrix& g);
Json to_json(const GaussianAtom& atom);
Json to_json(const SchwartzVector& f);
Json to_json(const FiniteVector& phi);
Json to_json(const TorusElement& x);
Json to_json(const RMData& data);
Json to_json(const ModuleElement& xi);
Json to_json(const RingElement& u);

// Inverses; all throw std::invalid_argument on malformed input.
Complex complex_from_json(const Json& j);
QuadIrr quad_from_json(const Json& j);
SL2Matrix matrix_from_json(const Json& j);
GaussianAtom atom_from_json(const Json& j);
TorusElement torus_from_json(const Json& j, Precision precision = Precision::standard);
ModuleElement module_from_json(const Json& j);

}  // namespace nct
