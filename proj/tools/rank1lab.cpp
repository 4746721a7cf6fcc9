#include "rank1lab/rank1lab.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace rank1lab;

namespace {

enum ExitCode { kHolds = 0, kFails = 1, kInconclusive = 2, kUsage = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string format = "text";
  std::string report_path;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string part; std::getline(in, part, sep);) out.push_back(detail::trim(part));
  return out;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid " + what + " '" + s + "'");
  }
}

// gen:coords:height, coords comma separated and optionally parenthesized.
LevelRef parse_level(const Construction& c, const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("level '" + text + "' is not of the form gen:color:height");
  std::string coords = parts[1];
  if (!coords.empty() && coords.front() == '(') coords = coords.substr(1);
  if (!coords.empty() && coords.back() == ')') coords.pop_back();
  std::vector<BigInt> g;
  if (!detail::trim(coords).empty())
    for (const auto& x : split(coords, ',')) g.push_back(parse_int(x, "color coordinate"));
  if (g.size() != c.group().dimension())
    throw UsageError("level '" + text + "' has " + std::to_string(g.size()) + " color coordinates, " +
                     c.group().to_string() + " needs " + std::to_string(c.group().dimension()));
  const auto gen = parse_int(parts[0], "generation");
  const auto h = parse_int(parts[2], "height");
  if (gen < 0) throw UsageError("negative generation in '" + text + "'");
  LevelRef l{static_cast<std::size_t>(gen), c.group().element(g), h};
  if (h < 0 || BigInt(h) >= c.height(l.generation))
    throw UsageError("height " + std::to_string(h) + " is outside column " + std::to_string(gen) + " of height " +
                     c.height(l.generation).str());
  return l;
}

LevelSet parse_levels(const Construction& c, const std::string& text) {
  LevelSet s;
  for (const auto& t : split(text, ';'))
    if (!t.empty()) s.levels.push_back(parse_level(c, t));
  if (s.empty()) throw UsageError("no levels given");
  return s;
}

std::vector<std::int64_t> parse_ints(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> out;
  for (const auto& t : split(text, ',')) out.push_back(parse_int(t, what));
  if (out.empty()) throw UsageError("empty " + what + " list");
  return out;
}

std::string rational_text(const Rational& r) { return to_string(r) + " (" + to_decimal(r) + ")"; }

int exit_for(const std::vector<Value>& values) {
  bool inconclusive = false;
  for (auto v : values) {
    if (v == Value::fails) return kFails;
    if (v == Value::inconclusive) inconclusive = true;
  }
  return inconclusive ? kInconclusive : kHolds;
}

void emit(const Output& out, const Json& report, const std::string& text) {
  if (out.format == "json")
    std::cout << report.dump(2) << "\n";
  else
    std::cout << text;
  if (!out.report_path.empty()) {
    std::ofstream f(out.report_path);
    if (!f) throw UsageError("cannot write report to '" + out.report_path + "'");
    f << report.dump(2) << "\n";
  }
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream s;
  s << "  " << to_string(v.property) << ": " << to_string(v.value) << "  (" << v.reason << ")\n";
  if (v.condition2) {
    for (const auto& p : v.condition2->positions) {
      s << "    position " << p.position << ": D = " << p.line_generator;
      if (!p.residues.empty()) {
        s << ", residues";
        for (const auto& r : p.residues) s << ' ' << r.residue << (r.certificate ? "" : "!");
      }
      s << "\n";
    }
    if (v.condition2->failing_generation)
      s << "    fails at N = " << *v.condition2->failing_generation << ", span meets Z x 0 in "
        << v.condition2->obstruction << "Z\n";
  }
  for (const auto& n : v.notes) s << "    note: " << n << "\n";
  return s.str();
}

int cmd_check(const std::string& path, const std::string& properties, const Output& out) {
  const Construction c = load_config(path);
  std::vector<Verdict> verdicts;
  for (const auto& p : split(properties, ',')) {
    if (p == "ergodic")
      verdicts.push_back(check_condition1(c));
    else if (p == "pwm")
      verdicts.push_back(check_pwm(c));
    else if (p == "total-ergodicity")
      verdicts.push_back(check_total_ergodicity(c));
    else if (p == "condition2-simple") {
      try {
        verdicts.push_back(check_condition2_simple(c));
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("condition2-simple: ") + e.what());
      }
    } else {
      throw UsageError("unknown property '" + p + "' (expected ergodic, pwm, total-ergodicity, condition2-simple)");
    }
  }
  Json params;
  params["config"] = path;
  params["properties"] = properties;
  Json results = Json::array();
  std::ostringstream text;
  text << c.name() << " over " << c.group().to_string() << " (" << to_string(c.schedule().kind) << " schedule)\n";
  std::vector<Value> values;
  for (const auto& v : verdicts) {
    results.push_back(to_json(v));
    text << verdict_text(v);
    values.push_back(v.value);
  }
  emit(out, make_report(c.name(), "check", params, results), text.str());
  return exit_for(values);
}

struct SimulateArgs {
  std::string config;
  std::string query;
  std::string i_levels, j_levels;
  std::int64_t n_min = 1, n_max = 100, n_step = 1;
  std::size_t resolution = 6;
  std::size_t depth = 2;
  std::string powers;
  std::int64_t modulus = 2;
};

int cmd_simulate(const SimulateArgs& a, const Output& out) {
  const Construction c = load_config(a.config);
  Json params;
  params["config"] = a.config;
  params["query"] = a.query;
  params["resolution"] = a.resolution;
  std::ostringstream text;
  Json results;
  int code = kHolds;

  if (a.query == "measure") {
    const LevelSet i = parse_levels(c, a.i_levels), j = parse_levels(c, a.j_levels);
    if (a.n_step == 0) throw UsageError("--step must be nonzero");
    params["i"] = a.i_levels;
    params["j"] = a.j_levels;
    params["n_min"] = a.n_min;
    params["n_max"] = a.n_max;
    params["step"] = a.n_step;
    Json rows = Json::array();
    std::size_t positive = 0;
    Rational max_unresolved = 0;
    text << "mu(T^n I cap J) at resolution " << a.resolution << "\n";
    for (std::int64_t n = a.n_min; n <= a.n_max; n += a.n_step) {
      const auto m = measure_intersection(c, n, i, j, a.resolution);
      Json r;
      r["n"] = n;
      r["estimate"] = to_json(m);
      rows.push_back(r);
      if (m.resolved > 0) ++positive;
      if (m.unresolved > max_unresolved) max_unresolved = m.unresolved;
      text << "  n=" << n << "  resolved " << rational_text(m.resolved) << "  unresolved "
           << rational_text(m.unresolved) << "\n";
    }
    results["rows"] = rows;
    results["positive_count"] = positive;
    results["max_unresolved"] = rational_json(max_unresolved);
    text << positive << " of " << rows.size() << " shifts have positive resolved mass\n";
  } else if (a.query == "witness") {
    const LevelSet i = parse_levels(c, a.i_levels);
    params["i"] = a.i_levels;
    params["n_max"] = a.n_max;
    if (a.powers.empty()) {
      params["depth"] = a.depth;
      const auto w = recurrence_witness(c, i, a.depth, a.n_max, a.resolution);
      results["found"] = w.has_value();
      if (w) {
        results["n"] = w->n;
        results["estimate"] = to_json(w->measure);
        text << "recurrence witness n = " << w->n << ", resolved " << rational_text(w->measure.resolved)
             << ", unresolved " << rational_text(w->measure.unresolved) << "\n";
      } else {
        text << "no recurrence witness with n <= " << a.n_max << "\n";
        code = kInconclusive;
      }
    } else {
      const auto ks = parse_ints(a.powers, "power");
      const LevelSet j = a.j_levels.empty() ? i : parse_levels(c, a.j_levels);
      if (i.levels.size() != 1 || j.levels.size() != 1) throw UsageError("product witnesses take single levels");
      params["j"] = a.j_levels.empty() ? a.i_levels : a.j_levels;
      params["powers"] = ks;
      std::vector<LevelPair> pairs(ks.size(), LevelPair{i.levels[0], j.levels[0]});
      const auto n = product_orbit_witness(c, pairs, ks, a.n_max, a.resolution);
      results["found"] = n.has_value();
      if (n) {
        results["n"] = *n;
        text << "product orbit witness n = " << *n << "\n";
      } else {
        text << "no product orbit witness with n <= " << a.n_max << "\n";
        code = kInconclusive;
      }
    }
  } else if (a.query == "parity") {
    const LevelSet i = parse_levels(c, a.i_levels), j = parse_levels(c, a.j_levels);
    if (i.levels.size() != 1 || j.levels.size() != 1) throw UsageError("parity probes take single levels");
    params["i"] = a.i_levels;
    params["j"] = a.j_levels;
    params["modulus"] = a.modulus;
    const Verdict v = parity_obstruction(c, a.modulus, i.levels[0], j.levels[0], a.resolution);
    results = to_json(v);
    text << verdict_text(v);
    code = exit_for({v.value});
  } else {
    throw UsageError("unknown query '" + a.query + "' (expected measure, witness, parity)");
  }
  emit(out, make_report(c.name(), "simulate", params, results), text.str());
  return code;
}

struct ProductsArgs {
  std::string family;
  std::size_t d = 2;
  std::size_t n_max = 5;
  std::int64_t heights = 0;
  std::string powers;
};

RankOneFamily resolve_family(const std::string& name) {
  if (name == "staircase-2pow2pow") return staircase_2pow2pow();
  if (name == "staircase-even") return staircase_even_variant();
  try {
    return family_from(load_config(name));
  } catch (const ConfigError& e) {
    throw UsageError("unknown family '" + name + "' (expected staircase-2pow2pow, staircase-even or a config path): " +
                     e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_products(const ProductsArgs& a, const Output& out) {
  if (a.family.empty() && a.heights == 0) throw UsageError("give a family or --heights with --k");
  Json params;
  Json results;
  std::ostringstream text;
  std::vector<Value> values;
  std::string name = a.family.empty() ? "classes" : a.family;
  if (!a.family.empty()) {
    const RankOneFamily f = resolve_family(a.family);
    name = f.name;
    params["family"] = f.name;
    params["d"] = a.d;
    params["n_max"] = a.n_max;
    if (a.d < 1) throw UsageError("--d must be at least 1");
    const Verdict v = product_criterion(f, a.d, a.n_max);
    results["criterion"] = to_json(v);
    values.push_back(v.value);
    text << f.description << ", d = " << a.d << "\n";
    for (const auto& r : v.criterion->rows)
      text << "  v_" << r.n << " = " << rational_text(r.value) << "   h = " << r.height << "\n";
    if (v.criterion->hook)
      for (const auto& l : v.criterion->hook->lines) text << "  hook: " << l << "\n";
    text << verdict_text(v);
  }
  if (a.heights != 0) {
    if (a.powers.empty()) throw UsageError("--heights needs --k");
    const auto ks = parse_ints(a.powers, "power");
    params["heights"] = a.heights;
    params["k"] = ks;
    EquivClassReport r;
    try {
      r = enumerate_product_classes(a.heights, ks);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    } catch (const GuardError& e) {
      throw UsageError(e.what());
    }
    results["classes"] = to_json(r);
    text << "classes of [0," << a.heights << ")^" << ks.size() << " under shifts by (" << a.powers << "): " << r.count
         << " <= bound " << r.bound << (r.count <= r.bound ? "" : "  VIOLATED") << "\n";
    values.push_back(r.count <= r.bound ? Value::holds : Value::fails);
  }
  emit(out, make_report(name, "products", params, results), text.str());
  return exit_for(values);
}

int cmd_examples(const std::string& action, const Output& out) {
  const auto reg = builtin_registry();
  Json results = Json::array();
  std::ostringstream text;
  if (action == "list") {
    for (const auto& e : reg) {
      Json j;
      j["name"] = e.name;
      j["provenance"] = e.provenance;
      results.push_back(j);
      text << e.name << "  " << e.provenance << "\n";
    }
    emit(out, make_report("registry", "examples-list", Json::object(), results), text.str());
    return kHolds;
  }
  if (action != "run-all") throw UsageError("unknown examples action '" + action + "' (expected list, run-all)");
  bool all = true;
  for (const auto& o : run_registry(reg)) {
    results.push_back(to_json(o));
    text << (o.matches() ? "ok        " : "MISMATCH  ") << o.name << "\n";
    for (const auto& x : o.outcomes) {
      text << "    " << to_string(x.expectation.property) << ": " << to_string(x.verdict.value);
      if (!x.matches) text << "   <- " << x.mismatch;
      text << "\n";
    }
    all = all && o.matches();
  }
  emit(out, make_report("registry", "examples-run-all", Json::object(), results), text.str());
  return all ? kHolds : kFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank1lab: rank-one group extensions, decision procedures and simulation"};
  app.require_subcommand(1);
  Output out;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--report", out.report_path, "write the JSON report to this path");
    sub->add_option("--format", out.format, "stdout format")->check(CLI::IsMember({"text", "json"}));
  };

  std::string check_config, properties = "ergodic,pwm";
  auto* check = app.add_subcommand("check", "decide ergodicity / power weak mixing for a config");
  check->add_option("config", check_config, "construction config")->required();
  check->add_option("--properties", properties, "comma list of ergodic, pwm, total-ergodicity, condition2-simple");
  add_output(check);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "explicit column queries");
  simulate->add_option("config", sim.config, "construction config")->required();
  simulate->add_option("query", sim.query, "measure | witness | parity")->required();
  simulate->add_option("--i", sim.i_levels, "level(s) gen:color:height, ';' separated");
  simulate->add_option("--j", sim.j_levels, "target level(s)");
  simulate->add_option("--n-min", sim.n_min, "first shift (measure)");
  simulate->add_option("--n-max", sim.n_max, "last shift / search bound");
  simulate->add_option("--step", sim.n_step, "shift step (measure)");
  simulate->add_option("--resolution,-M", sim.resolution, "generation of the explicit columns");
  simulate->add_option("--depth,-d", sim.depth, "recurrence depth (witness)");
  simulate->add_option("--k", sim.powers, "comma list of product powers (witness)");
  simulate->add_option("--q", sim.modulus, "modulus (parity)");
  add_output(simulate);

  ProductsArgs prod;
  auto* products = app.add_subcommand("products", "product-conservativity criterion and class counts");
  products->add_option("family", prod.family, "staircase-2pow2pow | staircase-even | config path");
  products->add_option("--d", prod.d, "product dimension");
  products->add_option("--nmax", prod.n_max, "last generation of the value table");
  products->add_option("--heights", prod.heights, "column height for class enumeration");
  products->add_option("--k", prod.powers, "comma list of positive powers");
  add_output(products);

  std::string action;
  auto* examples = app.add_subcommand("examples", "built-in registry");
  examples->add_option("action", action, "list | run-all")->required();
  add_output(examples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kUsage;
  try {
    if (*check)
      code = cmd_check(check_config, properties, out);
    else if (*simulate)
      code = cmd_simulate(sim, out);
    else if (*products)
      code = cmd_products(prod, out);
    else
      code = cmd_examples(action, out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  std::cerr << "elapsed " << elapsed.count() << " s\n";
  return code;
}
