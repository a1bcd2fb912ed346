#include "nct/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "nct/checks.hpp"
#include "nct/coord_ring.hpp"
#include "nct/serialize.hpp"
#include "nct/theta.hpp"

namespace nct::cli {

namespace {

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One option of a subcommand. A null default marks an optional value with no
// default; required options must come from the flags or the config file.
struct Spec {
  std::string name;
  Json fallback;
  std::string help;
  bool required = false;
};

struct Command {
  CLI::App* app = nullptr;
  std::vector<Spec> specs;
  std::map<std::string, std::string> raw;
  std::map<std::string, bool> flags;
};

void declare(Command& cmd, const Spec& s) {
  cmd.specs.push_back(s);
  if (s.fallback.is_boolean())
    cmd.app->add_flag("--" + s.name, cmd.flags[s.name], s.help);
  else
    cmd.app->add_option("--" + s.name, cmd.raw[s.name], s.help);
}

Json convert(const Spec& s, const std::string& text) {
  try {
    if (s.fallback.is_number_integer()) {
      std::size_t used = 0;
      long long v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
      return v;
    }
    if (s.fallback.is_number_float()) {
      std::size_t used = 0;
      double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
      return v;
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("--" + s.name + ": cannot parse '" + text + "'");
  }
  return text;
}

Json resolve(const Command& cmd, const Json& config) {
  Json out = Json::object();
  for (const auto& s : cmd.specs) {
    auto* opt = cmd.app->get_option("--" + s.name);
    if (opt->count() > 0) {
      out[s.name] = s.fallback.is_boolean() ? Json(cmd.flags.at(s.name)) : convert(s, cmd.raw.at(s.name));
    } else if (config.contains(s.name)) {
      const Json& v = config.at(s.name);
      if (s.fallback.is_number() && !v.is_number()) throw std::invalid_argument("config '" + s.name + "' must be a number");
      if (s.fallback.is_boolean() && !v.is_boolean()) throw std::invalid_argument("config '" + s.name + "' must be a boolean");
      out[s.name] = v;
    } else if (s.required) {
      throw std::invalid_argument("missing required option --" + s.name);
    } else {
      out[s.name] = s.fallback;
    }
  }
  return out;
}

std::string as_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

QuadIrr theta_of(const Json& cfg) {
  auto t = quad_from_json(cfg.at("theta"));
  if (t.is_rational()) throw std::invalid_argument("θ must be irrational, got " + t.to_string());
  return t;
}

RMData data_of(const Json& cfg) {
  auto t = theta_of(cfg);
  if (cfg.at("g").is_null()) return RMData::from_theta(t);
  try {
    return RMData(t, matrix_from_json(cfg.at("g")));
  } catch (const std::domain_error& ex) {
    throw std::invalid_argument(ex.what());
  }
}

Complex tau_of(const Json& cfg, const char* key = "tau") {
  Complex tau = complex_from_json(cfg.at(key));
  if (!(tau.imag() > 0.0)) throw std::invalid_argument(std::string(key) + " must have positive imaginary part");
  return tau;
}

double positive(const Json& cfg, const char* key) {
  double v = cfg.at(key).get<double>();
  if (!(v > 0.0)) throw std::invalid_argument(std::string("--") + key + " must be positive");
  return v;
}

Int count_of(const Json& cfg, const char* key, Int lo) {
  Int v = cfg.at(key).get<Int>();
  if (v < lo) throw std::invalid_argument(std::string("--") + key + " must be at least " + std::to_string(lo));
  return v;
}

Json header(const std::string& command, const Json& cfg, Precision precision) {
  Json h = cfg;
  h["command"] = command;
  h["precision"] = std::string(to_string(precision));
  return h;
}

Json data_json(const RMData& data) {
  Json j = to_json(data);
  j["theta_text"] = data.theta().to_string();
  j["epsilon_text"] = data.epsilon().to_string();
  j["epsilon_value"] = data.epsilon().to_double();
  return j;
}

Json conditions(const SL2Matrix& g) {
  Int t = g.trace();
  return {{"gen", g.c >= t}, {"quad", g.c >= t + 1}, {"koszul", g.c >= t + 2}};
}

Json suite_json(const SuiteReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass()}});
  return {{"checks", checks}, {"pass", rep.pass()}};
}

// ------------------------------------------------------------ subcommands

Json do_fix(const Json& cfg) {
  auto t = theta_of(cfg);
  auto g = fixing_matrix(t);
  RMData data(t, g);
  auto cf = cf_expand(t);
  Json period = Json::array();
  for (auto a : cf.period) period.push_back(a);
  Json pre = Json::array();
  for (std::size_t i = 0; i < cf.preperiod && i < cf.terms.size(); ++i) pre.push_back(cf.terms[i]);
  return {{"data", data_json(data)},
          {"g", to_json(g)},
          {"epsilon", to_json(data.epsilon())},
          {"rank", to_json(rank_value(g, 1, t))},
          {"trace", g.trace()},
          {"conductor", multiplier_ring(t).conductor()},
          {"continued_fraction", {{"preperiod", pre}, {"period", period}}},
          {"conditions", conditions(g)}};
}

Json do_algebra(const Json& cfg, Precision precision) {
  AlgebraSuiteOptions o;
  o.samples = static_cast<std::size_t>(count_of(cfg, "samples", 1));
  o.max_support = static_cast<std::size_t>(count_of(cfg, "support", 1));
  o.seed = static_cast<std::uint64_t>(count_of(cfg, "seed", 0));
  o.tau = complex_from_json(cfg.at("tau"));
  o.tolerance = positive(cfg, "tolerance");
  o.precision = precision;
  auto rep = algebra_suite(theta_of(cfg), o);
  Json out = suite_json(rep);
  if (!rep.pass()) throw NumericalFailure(out.dump());
  return out;
}

Json do_module_check(const Json& cfg) {
  auto data = data_of(cfg);
  ModuleSuiteOptions o;
  o.seed = static_cast<std::uint64_t>(count_of(cfg, "seed", 0));
  o.max_degree = static_cast<unsigned>(count_of(cfg, "max-degree", 1));
  o.tolerance = positive(cfg, "tolerance");
  o.product_tolerance = positive(cfg, "product-tolerance");
  o.products = !cfg.at("skip-products").get<bool>();
  auto rep = module_suite(data, tau_of(cfg), o);
  Json out = suite_json(rep);
  out["data"] = data_json(data);
  if (!rep.pass()) throw NumericalFailure(out.dump());
  return out;
}

Json do_theta(const Json& cfg) {
  Rational r;
  try {
    r = Rational::parse(as_text(cfg.at("r")));
  } catch (const std::exception& ex) {
    throw std::invalid_argument(std::string("--r: ") + ex.what());
  }
  Complex m = tau_of(cfg, "m");
  double tol = positive(cfg, "tol");
  ThetaValue v = cfg.at("z").is_null() ? theta_const(r, m, tol) : theta_fn(r, complex_from_json(cfg.at("z")), m, tol);
  return {{"r_reduced", reduce_characteristic(r).to_string()},
          {"value", to_json(v.value)},
          {"bound", v.bound},
          {"terms", v.terms}};
}

Json tensor_json(const StructureTensor& T, const RMData& data, bool entries) {
  Json j = {{"m", T.m},
            {"n", T.n},
            {"shape", {T.cmn, T.cm, T.cn}},
            {"max_residual", T.max_residual},
            {"flagged", std::count(T.flagged.begin(), T.flagged.end(), true)},
            {"shift_symmetry_residual", shift_symmetry_residual(T, data)}};
  if (entries) {
    Json e = Json::array();
    for (auto c : T.entries) e.push_back(to_json(c));
    j["entries"] = e;
  }
  if (!T.theta_table.empty()) {
    Json table = Json::array();
    for (const auto& t : T.theta_table)
      table.push_back({{"label", t.label},
                       {"entry", to_json(t.entry)},
                       {"r", t.r.to_string()},
                       {"l", t.l},
                       {"theta", to_json(t.theta)},
                       {"gap", t.gap}});
    j["theta_diagnostics"] = table;
  }
  return j;
}

Json do_ring(const Json& cfg) {
  auto data = data_of(cfg);
  RingOptions opt;
  opt.tolerance = positive(cfg, "tolerance");
  opt.rank_threshold = positive(cfg, "rank-threshold");
  opt.quad_threshold = positive(cfg, "quad-threshold");
  opt.max_condition = positive(cfg, "max-condition");
  opt.threads = static_cast<std::size_t>(count_of(cfg, "threads", 1));
  opt.theta_diagnostics = !cfg.at("skip-theta-diagnostics").get<bool>();
  const auto max_degree = static_cast<unsigned>(count_of(cfg, "max-degree", 1));
  const auto triples = static_cast<std::size_t>(count_of(cfg, "triples", 0));
  const double assoc_tol = positive(cfg, "assoc-tolerance");
  GradedRing ring(data, tau_of(cfg), opt);

  Json dims = Json::array();
  for (unsigned n = 0; n <= max_degree; ++n) dims.push_back(ring.dim(n));

  auto gen = check_generation(ring, max_degree);
  Json generation = Json::array(), ranks = Json::array();
  for (std::size_t i = 0; i < gen.generated.size(); ++i) {
    generation.push_back(gen.generated[i]);
    ranks.push_back({{"degree", i + 1}, {"rank", gen.ranks[i]}, {"target", gen.targets[i]}});
  }

  Json quadratic = nullptr, quad_report = nullptr;
  if (max_degree >= 3) {
    auto q = check_quadratic(ring);
    if (q.status == QuadStatus::quadratic || q.status == QuadStatus::not_quadratic)
      quadratic = q.status == QuadStatus::quadratic;
    quad_report = {{"status", std::string(to_string(q.status))},
                   {"kernel2", q.kernel2},
                   {"kernel3", q.kernel3},
                   {"relations3", q.relations3},
                   {"containment", q.containment},
                   {"note", q.note}};
  }

  // associativity on random degree-1 triples
  std::mt19937_64 rng(static_cast<std::uint64_t>(count_of(cfg, "seed", 0)));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_deg1 = [&] {
    std::vector<Complex> v(static_cast<std::size_t>(ring.dim(1)));
    for (auto& c : v) c = {u(rng), u(rng)};
    return RingElement{{1u, v}};
  };
  double assoc = 0.0, fit = 0.0;
  for (std::size_t t = 0; t < triples && max_degree >= 3; ++t) {
    auto a = random_deg1(), b = random_deg1(), c = random_deg1();
    auto ab = mult(ring, a, b), bc = mult(ring, b, c);
    auto left = mult(ring, ab.value, c), right = mult(ring, a, bc.value);
    fit = std::max({fit, ab.residual, bc.residual, left.residual, right.residual});
    assoc = std::max(assoc, max_abs_difference(left.value, right.value) / std::max(1e-300, max_abs(left.value)));
  }

  Json tensors = Json::array();
  for (unsigned n = 1; n < max_degree; ++n) {
    RingOptions topt = opt;
    topt.theta_diagnostics = opt.theta_diagnostics && n == 1;
    GradedRing r2(data, ring.tau(), topt);
    tensors.push_back(tensor_json(structure_tensor(r2, 1, n), data, cfg.at("tensor-entries").get<bool>()));
  }

  Json out = {{"data", data_json(data)},
              {"conditions", conditions(data.g())},
              {"dims", dims},
              {"generation", generation},
              {"ranks", ranks},
              {"quadratic", quadratic},
              {"quadratic_report", quad_report},
              {"assoc_residual", assoc},
              {"assoc_triples", triples},
              {"fit_residual", fit},
              {"tensors", tensors}};
  if (assoc > assoc_tol) throw NumericalFailure("associativity residual " + std::to_string(assoc) + " above tolerance\n" + out.dump());
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computations on noncommutative tori with real multiplication"};
  app.require_subcommand(1);
  std::string precision_flag, config_path;
  app.add_option("--precision", precision_flag, "double or extended (env NCT_PRECISION)");
  app.add_option("--config", config_path, "JSON file with option defaults; flags win");
  app.fallthrough();

  std::map<std::string, Command> commands;
  auto sub = [&](const std::string& name, const std::string& help) -> Command& {
    auto& cmd = commands[name];
    cmd.app = app.add_subcommand(name, help);
    return cmd;
  };
  const Json none = nullptr;

  auto& fix = sub("fix", "minimal fixing matrix and ring conditions");
  declare(fix, {"theta", none, "quadratic irrationality, e.g. (1+sqrt5)/2", true});

  auto& algebra = sub("algebra", "property suite for the torus algebra");
  declare(algebra, {"theta", none, "quadratic irrationality", true});
  declare(algebra, {"samples", 100, "random triples"});
  declare(algebra, {"support", 20, "maximum support size"});
  declare(algebra, {"seed", 1, "random seed"});
  declare(algebra, {"tau", "0.3+1.1i", "τ for the derivation δτ"});
  declare(algebra, {"tolerance", 1e-12, "residual tolerance"});

  auto& module = sub("module-check", "bimodule, connection and product suite");
  declare(module, {"theta", none, "quadratic irrationality", true});
  declare(module, {"g", none, "fixing matrix [[a,b],[c,d]]; minimal one if omitted"});
  declare(module, {"tau", none, "complex structure a+bi, Im > 0", true});
  declare(module, {"seed", 1, "random seed"});
  declare(module, {"max-degree", 2, "degrees for the relation checks"});
  declare(module, {"tolerance", 1e-12, "tolerance for action and connection identities"});
  declare(module, {"product-tolerance", 1e-8, "tolerance for balanced-product identities"});
  declare(module, {"skip-products", false, "skip balanced-product checks"});

  auto& theta = sub("theta", "theta constant / function with rational characteristic");
  declare(theta, {"r", "0", "characteristic p/q"});
  declare(theta, {"m", none, "modular argument a+bi, Im > 0", true});
  declare(theta, {"z", none, "optional elliptic argument a+bi"});
  declare(theta, {"tol", 1e-15, "truncation tolerance"});

  auto& ring = sub("ring", "graded coordinate ring checks");
  declare(ring, {"theta", none, "quadratic irrationality", true});
  declare(ring, {"g", none, "fixing matrix [[a,b],[c,d]]; minimal one if omitted"});
  declare(ring, {"tau", none, "complex structure a+bi, Im > 0", true});
  declare(ring, {"max-degree", 3, "highest degree"});
  declare(ring, {"triples", 20, "random triples for associativity"});
  declare(ring, {"seed", 1, "random seed"});
  declare(ring, {"tolerance", 1e-10, "lattice-sum truncation target"});
  declare(ring, {"rank-threshold", 1e-8, "relative singular-value cutoff"});
  declare(ring, {"quad-threshold", 1e-7, "cutoff for the degree-3 comparison"});
  declare(ring, {"max-condition", 1e10, "largest accepted condition number"});
  declare(ring, {"assoc-tolerance", 1e-8, "associativity tolerance"});
  declare(ring, {"threads", 1, "worker threads for structure tensors"});
  declare(ring, {"tensor-entries", false, "include full tensor entries"});
  declare(ring, {"skip-theta-diagnostics", false, "omit the theta comparison table"});

  std::string active;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    for (auto& [name, cmd] : commands)
      if (cmd.app->parsed()) active = name;

    Json config = Json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot open config file " + config_path);
      config = Json::parse(in);
      if (!config.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    }
    Precision precision = Precision::standard;
    if (config.contains("precision")) precision = parse_precision(config.at("precision").get<std::string>());
    precision = precision_from_env(precision);
    if (!precision_flag.empty()) precision = parse_precision(precision_flag);

    Json cfg = resolve(commands.at(active), config);
    Json report = {{"config", header(active, cfg, precision)}};
    Json body;
    if (active == "fix") body = do_fix(cfg);
    else if (active == "algebra") body = do_algebra(cfg, precision);
    else if (active == "module-check") body = do_module_check(cfg);
    else if (active == "theta") body = do_theta(cfg);
    else body = do_ring(cfg);
    for (auto it = body.begin(); it != body.end(); ++it) report[it.key()] = it.value();
    out << report.dump(2) << '\n';
    return kOk;
  } catch (const CLI::CallForHelp&) {
    out << (active.empty() ? app.help() : commands.at(active).app->help());
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kInvalidInput;
  } catch (const NumericalFailure& ex) {
    err << "numerical failure: " << ex.what() << '\n';
    return kNumericalFailure;
  } catch (const ConditioningError& ex) {
    err << "conditioning failure: " << ex.what() << " (grid of " << ex.grid().size() << " points)\n";
    return kNumericalFailure;
  } catch (const nlohmann::json::exception& ex) {
    err << "invalid input: " << ex.what() << '\n';
    return kInvalidInput;
  } catch (const std::invalid_argument& ex) {
    err << "invalid input: " << ex.what() << '\n';
    return kInvalidInput;
  } catch (const std::domain_error& ex) {
    err << "invalid input: " << ex.what() << '\n';
    return kInvalidInput;
  } catch (const std::overflow_error& ex) {
    err << "numerical failure: " << ex.what() << '\n';
    return kNumericalFailure;
  } catch (const std::runtime_error& ex) {
    err << "numerical failure: " << ex.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace nct::cli
