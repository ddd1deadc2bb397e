#include "rtf/acceptance.hpp"
#include "rtf/cones.hpp"
#include "rtf/config.hpp"
#include "rtf/expansion.hpp"
#include "rtf/tori.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

using nlohmann::json;
using namespace rtf;

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  json doc;
  Table table;
  bool ok = true;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string render_csv(const Table& t) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
    out << "\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out.str();
}

// Shortest round-trip text for doubles, matching the JSON output.
std::string num(double v) { return json(v).dump(); }

// Runs fn(i) for i < n on up to `jobs` threads; results land by index.
template <class R>
std::vector<R> parallel_map(size_t n, int jobs, const std::function<R(size_t)>& fn) {
  std::vector<R> out(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) out[i] = fn(i);
  };
  const int k = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < k; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

json datum_json(const GeomDatum& d, const QuadAlg& E) {
  json j{{"t0", to_string(d.t0)}, {"class", to_string(d.cls)}, {"spl", d.spl.name()}, {"E", E.name()}};
  j["cayley_sign"] = cayley_sign(d.t0);
  if (d.cls == DatumClass::elliptic || d.cls == DatumClass::rss_nonelliptic)
    j["descendant"] = descendant(d, E).name();
  return j;
}

json error_json(const std::exception& e) {
  json j{{"message", e.what()}};
  if (auto* a = dynamic_cast<const AccuracyError*>(&e)) j["achieved_bound"] = a->achieved_bound;
  return j;
}

// ---- cones -------------------------------------------------------------------

Output run_cones(const RunConfig& cfg) {
  const ConesRequest& q = cfg.cones;
  const ParabolicLabel P = q.P == "B" ? label_B() : label_G();
  const ParabolicLabel Q = q.Q == "B" ? label_B() : label_G();
  std::vector<Rational> grid;
  for (int i = 0; i <= q.steps; ++i) grid.push_back(q.lo + (q.hi - q.lo) * Rational(i) / Rational(q.steps));

  Output out;
  const bool two = q.function == "gamma";
  out.table.header = two ? std::vector<std::string>{"function", "P", "Q", "H", "X", "value"}
                         : std::vector<std::string>{"function", "P", "Q", "H", "value"};
  json values = json::array();
  auto emit = [&](const Rational& H, const Rational* X, int v) {
    std::vector<std::string> row{q.function, q.P, q.Q, to_string(H)};
    json e{{"H", to_string(H)}, {"value", v}};
    if (X) row.push_back(to_string(*X)), e["X"] = to_string(*X);
    row.push_back(std::to_string(v));
    out.table.rows.push_back(row);
    values.push_back(e);
  };
  if (two) {
    const IndicatorDifferenceFn g = gamma(P, Q);
    for (const auto& H : grid)
      for (const auto& X : grid) emit(H, &X, g({H}, {X}));
  } else {
    IndicatorFn fn;
    if (q.function == "rint") fn = rint_indicator(P.closed_chamber);
    else if (q.function == "epsilon") fn = [e = epsilon(P, Q)](const Vec&) { return e; };
    else if (q.function == "tau") fn = tau(P, Q);
    else if (q.function == "tau_hat") fn = tau_hat(P, Q);
    else fn = sigma(P, Q);
    for (const auto& H : grid) emit(H, nullptr, fn({H}));
  }
  out.doc = {{"command", "cones"}, {"function", q.function}, {"P", q.P}, {"Q", q.Q}, {"values", values},
             {"provenance", {{"module", "chambers-truncation"}, {"arithmetic", "exact rational"}}}};
  return out;
}

// ---- classify ------------------------------------------------------------------

Output run_classify(const RunConfig& cfg) {
  const QuadAlg E = cfg.field();
  Output out;
  out.table.header = {"t0", "class", "spl", "cayley_sign", "descendant"};
  json data = json::array();
  for (const auto& t0 : cfg.t0s) {
    const json j = datum_json(classify(t0, E), E);
    data.push_back(j);
    out.table.rows.push_back({j["t0"], j["class"], j["spl"], std::to_string(j["cayley_sign"].get<int>()),
                              j.contains("descendant") ? j["descendant"].get<std::string>() : ""});
  }
  out.doc = {{"command", "classify"}, {"field_discriminant", cfg.discriminant}, {"data", data}};
  return out;
}

// ---- zeta ----------------------------------------------------------------------

Output run_zeta(const RunConfig& cfg, int jobs) {
  const GlobalTestFn f = cfg.test_function();
  const int sign = cfg.zeta.sign;
  std::vector<long long> discs{1};
  for (long long D : fundamental_discriminants_over(f.S_extended())) discs.push_back(D);

  Output out;
  out.table.header = {"kappa", "s", "value", "error"};
  auto one = [&](size_t i) -> json {
    const QuadraticCharacter kappa(discs[i]);
    json j{{"kappa", discs[i]}};
    try {
      const GlobalLineData h = unipotent_line_data(f, sign, kappa);
      std::vector<double> ss = cfg.zeta.s;
      if (!kappa.trivial()) ss.insert(ss.begin(), 1.0);
      json vals = json::array();
      for (double s : ss) {
        const ZetaValue z = tate_zeta_global(h, kappa, s);
        vals.push_back({{"s", s}, {"Z", numeric(z.value, "integrals", cfg.tolerance, z.error)}});
      }
      j["values"] = vals;
      if (kappa.trivial()) {
        double err = 0;
        const double r = line_mass(h, &err);
        const DerivativeResult c0 = zeta_sderivative(h);
        j["residue"] = numeric(r, "integrals", cfg.tolerance, err);
        j["s_derivative_at_0"] = numeric(c0.value, "integrals", cfg.tolerance, c0.error);
        j["s_derivative_laurent"] = zeta_sderivative_laurent(h);
        json br = json::array();
        for (double T : cfg.Ts) {
          const DerivativeResult b = unipotent_bracket(h, r, T);
          br.push_back({{"T", T}, {"bracket", numeric(b.value, "fine-expansion", cfg.tolerance, b.error)}});
        }
        j["bracket"] = br;
      }
    } catch (const std::exception& e) {
      j["error"] = error_json(e);
    }
    return j;
  };
  const auto rows = parallel_map<json>(discs.size(), jobs, one);
  for (const auto& j : rows) {
    if (j.contains("error")) {
      out.ok = false;
      continue;
    }
    for (const auto& v : j["values"])
      out.table.rows.push_back({std::to_string(j["kappa"].get<long long>()), num(v["s"]),
                                num(v["Z"]["value"]), num(v["Z"]["tolerance_achieved"])});
  }
  out.doc = {{"command", "zeta"}, {"sign", sign}, {"characters", rows}};
  return out;
}

// ---- orbital -------------------------------------------------------------------

json local_orbitals(const GlobalTestFn& f, const QPoint& eta, const std::vector<long long>& places,
                    const RunConfig& cfg, bool* stable, Table& table, const std::string& tag) {
  json locals = json::array();
  double product = 1;
  for (long long p : places) {
    const OrbitalResult o = orbital_local(f.at(p), eta, f.E.core, cfg.depth);
    *stable = *stable && o.stabilized;
    product *= o.value;
    locals.push_back({{"place", p},
                      {"method", o.method},
                      {"exact", to_string(o.exact)},
                      {"value", numeric(o.value, "integrals", 0, 0)},
                      {"depth", o.depth},
                      {"stabilized", o.stabilized}});
    table.rows.push_back({tag, std::to_string(p), o.method, num(o.value), o.stabilized ? "yes" : "no"});
  }
  const RPoint x{to_double(eta.alpha), to_double(eta.beta), to_double(eta.b), to_double(eta.c)};
  const RealIntegral r = orbital_real(f.at_infinity(), x, cfg.tolerance);
  locals.push_back({{"place", "infinity"}, {"value", numeric(r.value, "integrals", cfg.tolerance, r.error)}});
  const bool central = eta.beta == 0 && eta.b == 0 && eta.c == 0;
  table.rows.push_back({tag, "infinity", central ? "point" : "quadrature", num(r.value), "n/a"});
  product *= r.value;
  const double finite_part = r.value == 0 ? 0 : product / r.value;
  return {{"local", locals}, {"product", numeric(product, "integrals", cfg.tolerance, std::abs(finite_part) * r.error)}};
}

Output run_orbital(const RunConfig& cfg, int jobs) {
  const GlobalTestFn f = cfg.test_function();
  const QuadAlg E = f.E;
  Output out;
  out.table.header = {"point", "place", "method", "value", "stabilized"};
  struct Item {
    json doc;
    Table table;
    bool stable = true;
  };
  auto one = [&](size_t i) -> Item {
    Item it;
    const GeomDatum d = classify(cfg.t0s[i], E);
    it.doc = {{"datum", datum_json(d, E)}};
    try {
      json pts = json::array();
      const std::vector<long long> places = datum_places(d, f);
      std::vector<QPoint> reps;
      if (d.cls == DatumClass::elliptic) reps = elliptic_classes(d, f).reps;
      else for (const auto& x : iota_fiber(d, E)) reps.push_back(QPoint::from(x));
      for (const auto& eta : reps) {
        const std::string tag = "t0=" + to_string(d.t0) + " (" + to_string(eta.beta) + "," + to_string(eta.b) +
                                "," + to_string(eta.c) + ")";
        json p = local_orbitals(f, eta, places, cfg, &it.stable, it.table, tag);
        p["point"] = {to_string(eta.alpha), to_string(eta.beta), to_string(eta.b), to_string(eta.c)};
        pts.push_back(p);
      }
      it.doc["points"] = pts;
    } catch (const std::exception& e) {
      it.doc["error"] = error_json(e);
      it.stable = false;
    }
    return it;
  };
  json data = json::array();
  for (auto& it : parallel_map<Item>(cfg.t0s.size(), jobs, one)) {
    out.ok = out.ok && it.stable;
    data.push_back(it.doc);
    for (auto& r : it.table.rows) out.table.rows.push_back(std::move(r));
  }
  out.doc = {{"command", "orbital"}, {"depth", cfg.depth}, {"data", data}};
  return out;
}

// ---- expand --------------------------------------------------------------------

Output run_expand(const RunConfig& cfg, int jobs) {
  const GlobalTestFn f = cfg.test_function();
  const ExpansionOptions opt = cfg.expansion_options();
  Output out;
  out.table.header = {"datum", "term", "volume", "numeric", "slope"};
  auto one = [&](size_t i) -> json {
    const GeomDatum d = classify(cfg.t0s[i], f.E);
    json j{{"datum", datum_json(d, f.E)}};
    try {
      const ExpansionReport rep = expand(cfg.t0s[i], f, opt);
      json terms = json::array();
      double err = 0;
      for (const auto& t : rep.terms) {
        err += t.error;
        terms.push_back({{"label", t.label},
                         {"volume", t.volume},
                         {"constant", numeric(t.numeric, "fine-expansion", cfg.tolerance, t.error)},
                         {"slope", numeric(t.slope, "fine-expansion", cfg.tolerance, t.error)}});
      }
      j["terms"] = terms;
      j["line"] = {{"constant", numeric(rep.line.constant, "fine-expansion", cfg.tolerance, err)},
                   {"slope", numeric(rep.line.slope, "fine-expansion", cfg.tolerance, err)}};
      json at = json::array();
      for (double T : cfg.Ts) at.push_back({{"T", T}, {"value", numeric(rep.line.at(T), "fine-expansion", cfg.tolerance, err)}});
      j["at_T"] = at;
      j["diagnostics"] = rep.diagnostics;
    } catch (const std::exception& e) {
      j["error"] = error_json(e);
    }
    return j;
  };
  const auto reports = parallel_map<json>(cfg.t0s.size(), jobs, one);
  for (const auto& j : reports) {
    if (j.contains("error")) {
      out.ok = false;
      continue;
    }
    const std::string datum = j["datum"]["t0"].get<std::string>() + " " + j["datum"]["class"].get<std::string>();
    for (const auto& t : j["terms"])
      out.table.rows.push_back({datum, t["label"], t["volume"], num(t["constant"]["value"]), num(t["slope"]["value"])});
  }
  out.doc = {{"command", "expand"}, {"field_discriminant", cfg.discriminant}, {"reports", reports}};
  return out;
}

// ---- tori ----------------------------------------------------------------------

Output run_tori(const RunConfig& cfg, int jobs) {
  Output out;
  json table = json::array();
  std::vector<long long> Ls = cfg.tori_cores;
  Ls.push_back(1);
  for (long long e : cfg.tori_cores) {
    for (long long l : Ls) {
      const BiquadraticData b = BiquadraticData::make(QuadAlg(e), QuadAlg(l));
      json structures = json::array();
      for (const auto& s : classify_structures(b))
        structures.push_back({{"pair", s.label()}, {"symmetric_space", symmetric_space_of(s).name()}});
      table.push_back({{"E", b.E.name()}, {"L", b.L.name()}, {"L_reflected", b.Lp.name()}, {"tag", b.tag()},
                       {"structures", structures}});
    }
  }
  out.table.header = {"N", "d", "order", "cosets", "geometric", "spectral_rational", "equal_pullback", "equal_section"};
  auto one = [&](size_t i) -> json {
    const ToriModelSpec& s = cfg.tori_models[i];
    std::mt19937_64 rng(cfg.seed + i);
    try {
      const FiniteTorusModel m = FiniteTorusModel::build(s.N, s.d, rng);
      std::uniform_int_distribution<int> val(-5, 5), dv(1, 4);
      QuotientFn f(m.coset_count);
      for (auto& v : f) v = Rational(val(rng), dv(rng));
      const PoissonSides a = finite_poisson(m, f), b = finite_poisson(m, f, true);
      Rational spec_value;
      const bool rational = Cyclotomic::is_rational(a.spec, &spec_value);
      return {{"N", s.N},
              {"d", s.d},
              {"order", m.size()},
              {"H_order", m.H.size()},
              {"cosets", m.coset_count},
              {"exponent", m.exponent},
              {"consistent", m.check_consistency()},
              {"geometric", to_string(a.geom)},
              {"spectral", rational ? json(to_string(spec_value)) : json(nullptr)},
              {"equal_pullback", a.equal},
              {"equal_section", b.equal}};
    } catch (const std::exception& e) {
      return {{"N", s.N}, {"d", s.d}, {"error", error_json(e)}};
    }
  };
  const auto models = parallel_map<json>(cfg.tori_models.size(), jobs, one);
  for (const auto& j : models) {
    if (j.contains("error")) {
      out.ok = false;
      continue;
    }
    out.ok = out.ok && j["consistent"] && j["equal_pullback"] && j["equal_section"];
    out.table.rows.push_back({std::to_string(j["N"].get<long long>()), std::to_string(j["d"].get<long long>()),
                              std::to_string(j["order"].get<int>()), std::to_string(j["cosets"].get<int>()),
                              j["geometric"], j["spectral"].is_null() ? "" : j["spectral"].get<std::string>(),
                              j["equal_pullback"] ? "yes" : "no", j["equal_section"] ? "yes" : "no"});
  }
  out.doc = {{"command", "tori"}, {"classification", table}, {"finite_poisson", models}};
  return out;
}

// ---- verify --------------------------------------------------------------------

Output run_verify(const RunConfig& cfg, int jobs, const std::vector<int>& only, bool allow_documented) {
  std::vector<int> ids = only;
  if (ids.empty())
    for (int i = 1; i <= 12; ++i) ids.push_back(i);
  const auto results = parallel_map<CriterionResult>(
      ids.size(), jobs, [&](size_t i) { return run_acceptance(cfg.seed, {ids[i]}).front(); });
  Output out;
  out.table.header = {"id", "name", "passed", "seconds", "budget", "detail"};
  json list = json::array();
  for (const auto& r : results) {
    const bool documented = !r.passed && is_known_discrepancy(r.id);
    out.ok = out.ok && (r.passed || (allow_documented && documented));
    list.push_back({{"id", r.id},
                    {"name", r.name},
                    {"passed", r.passed},
                    {"documented_discrepancy", documented},
                    {"budget_seconds", r.budget_seconds},
                    {"detail", r.detail}});
    out.table.rows.push_back({std::to_string(r.id), r.name, r.passed ? "PASS" : "FAIL", num(r.seconds),
                              num(r.budget_seconds), r.detail});
    std::cerr << format_line(r) << "\n";
  }
  // Timings stay out of the JSON so identical (config, seed) gives identical bytes.
  out.doc = {{"command", "verify"}, {"seed", cfg.seed}, {"criteria", list}, {"all_passed", out.ok}};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative trace formula geometric side: truncation, orbital integrals, fine expansion"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path, format = "json";
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "override the configured seed");
  app.add_option("--out", out_path, "write output here instead of stdout");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* cones = app.add_subcommand("cones", "tabulate an indicator function on a rational grid");
  auto* classify_cmd = app.add_subcommand("classify", "classify t0 against E");
  std::vector<std::string> t0_args;
  std::optional<long long> disc_arg;
  classify_cmd->add_option("--t0", t0_args, "t0 values (override data.t0)");
  classify_cmd->add_option("--disc", disc_arg, "field discriminant (override field.discriminant)");
  auto* zeta = app.add_subcommand("zeta", "global zeta integrals of the unipotent line data");
  auto* orbital = app.add_subcommand("orbital", "local orbital integrals at each datum");
  auto* expand_cmd = app.add_subcommand("expand", "fine geometric expansion at each datum");
  auto* tori = app.add_subcommand("tori", "tori classification table and finite Poisson suite");
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  std::vector<int> only;
  bool allow_documented = false;
  verify->add_option("--only", only, "criterion ids");
  verify->add_flag("--allow-documented", allow_documented, "do not fail on documented discrepancies");

  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (disc_arg) {
      cfg = parse_config([&] {
        json j = to_json(cfg);
        j["field"]["discriminant"] = *disc_arg;
        return j;
      }());
    }
    if (!t0_args.empty()) {
      cfg.t0s.clear();
      for (size_t i = 0; i < t0_args.size(); ++i)
        cfg.t0s.push_back(parse_rational(json(t0_args[i]), "--t0[" + std::to_string(i) + "]"));
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error at " << e.what() << "\n";
    return 2;
  }

  Output out;
  try {
    if (*cones) out = run_cones(cfg);
    else if (*classify_cmd) out = run_classify(cfg);
    else if (*zeta) out = run_zeta(cfg, jobs);
    else if (*orbital) out = run_orbital(cfg, jobs);
    else if (*expand_cmd) out = run_expand(cfg, jobs);
    else if (*tori) out = run_tori(cfg, jobs);
    else out = run_verify(cfg, jobs, only, allow_documented);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  out.doc["config"] = to_json(cfg);

  const std::string text = format == "csv" ? render_csv(out.table) : out.doc.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return 3;
    }
    f << text;
  }
  return out.ok ? 0 : 1;
}
