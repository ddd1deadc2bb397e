#include "rtf/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace rtf {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys{"field", "test_function", "data", "T", "tolerance", "depth",
                                     "volumes", "seed", "cones", "zeta", "tori"};

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError(path.empty() ? k : path + "." + k, "unknown key");
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  return j;
}

const json& require_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected a list");
  return j;
}

double get_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

long long get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<long long>();
}

double positive(double v, const std::string& path) {
  if (!(v > 0)) throw ConfigError(path, "must be positive");
  return v;
}

std::string idx(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

RPoint parse_center(const json& j, const std::string& path) {
  require_array(j, path);
  if (j.size() != 4) throw ConfigError(path, "expected [alpha, beta, b, c]");
  return {get_double(j[0], idx(path, 0)), get_double(j[1], idx(path, 1)), get_double(j[2], idx(path, 2)),
          get_double(j[3], idx(path, 3))};
}

FinitePlaceSpec parse_place(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, {"prime", "basic", "level", "balls"}, path);
  FinitePlaceSpec s;
  if (!j.contains("prime")) throw ConfigError(path + ".prime", "missing");
  s.prime = get_int(j["prime"], path + ".prime");
  if (!is_prime(s.prime)) throw ConfigError(path + ".prime", "not a prime");
  if (j.contains("basic")) {
    if (!j["basic"].is_boolean()) throw ConfigError(path + ".basic", "expected true or false");
    s.basic = j["basic"].get<bool>();
  } else {
    s.basic = !j.contains("balls");
  }
  if (s.basic) {
    if (j.contains("balls")) throw ConfigError(path + ".balls", "a basic place takes no balls");
    return s;
  }
  if (j.contains("level")) s.level = static_cast<int>(get_int(j["level"], path + ".level"));
  if (s.level < 1 || s.level > 4) throw ConfigError(path + ".level", "must lie in 1..4");
  if (!j.contains("balls")) throw ConfigError(path + ".balls", "missing");
  const json& balls = require_array(j["balls"], path + ".balls");
  for (size_t i = 0; i < balls.size(); ++i) {
    const std::string bp = idx(path + ".balls", i);
    require_object(balls[i], bp);
    reject_unknown(balls[i], {"center", "value"}, bp);
    if (!balls[i].contains("center")) throw ConfigError(bp + ".center", "missing");
    const json& c = require_array(balls[i]["center"], bp + ".center");
    if (c.size() != 4) throw ConfigError(bp + ".center", "expected [alpha, beta, b, c]");
    Ball b;
    b.alpha = parse_rational(c[0], idx(bp + ".center", 0));
    b.beta = parse_rational(c[1], idx(bp + ".center", 1));
    b.b = parse_rational(c[2], idx(bp + ".center", 2));
    b.c = parse_rational(c[3], idx(bp + ".center", 3));
    for (const Rational* q : {&b.alpha, &b.beta, &b.b, &b.c})
      if (*q != 0 && valuation(*q, s.prime) < 0)
        throw ConfigError(bp + ".center", "coordinates must be " + std::to_string(s.prime) + "-integral");
    b.value = balls[i].contains("value") ? parse_rational(balls[i]["value"], bp + ".value") : Rational(1);
    s.balls.push_back(b);
  }
  return s;
}

template <class T, class F>
std::vector<T> parse_list(const json& j, const std::string& path, F&& each) {
  require_array(j, path);
  std::vector<T> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(each(j[i], idx(path, i)));
  return out;
}

}  // namespace

long long core_of_discriminant(long long disc) {
  if (disc == 1 || !is_fundamental_discriminant(disc)) throw DomainError("not a fundamental discriminant");
  return disc % 4 == 0 ? disc / 4 : disc;
}

Rational parse_rational(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception&) {
      throw ConfigError(path, "not a rational: " + v.get<std::string>());
    }
  }
  throw ConfigError(path, "expected an integer or a \"p/q\" string");
}

QuadAlg RunConfig::field() const { return QuadAlg(core_of_discriminant(discriminant)); }

GlobalTestFn RunConfig::test_function() const {
  GlobalTestFn f(field(), LocalTestFn::bump(center, radius, profile, amplitude));
  for (const auto& s : finite)
    f.set(s.basic ? LocalTestFn::basic(s.prime) : LocalTestFn::ball_sum(s.prime, s.level, s.balls));
  return f;
}

ExpansionOptions RunConfig::expansion_options() const {
  ExpansionOptions o;
  o.vol = vol;
  o.depth = depth;
  o.tol = tolerance;
  return o;
}

RunConfig parse_config(const json& j) {
  RunConfig c;
  require_object(j, "<root>");
  reject_unknown(j, kTopKeys, "");

  if (j.contains("field")) {
    const json& f = require_object(j["field"], "field");
    reject_unknown(f, {"discriminant"}, "field");
    if (f.contains("discriminant")) {
      c.discriminant = get_int(f["discriminant"], "field.discriminant");
      try {
        core_of_discriminant(c.discriminant);
      } catch (const DomainError&) {
        throw ConfigError("field.discriminant", "not the discriminant of a quadratic field");
      }
    }
  }

  if (j.contains("test_function")) {
    const json& t = require_object(j["test_function"], "test_function");
    reject_unknown(t, {"infinity", "finite"}, "test_function");
    if (t.contains("infinity")) {
      const std::string p = "test_function.infinity";
      const json& a = require_object(t["infinity"], p);
      reject_unknown(a, {"center", "radius", "profile", "amplitude"}, p);
      if (a.contains("center")) c.center = parse_center(a["center"], p + ".center");
      if (a.contains("radius")) c.radius = positive(get_double(a["radius"], p + ".radius"), p + ".radius");
      if (a.contains("amplitude")) c.amplitude = get_double(a["amplitude"], p + ".amplitude");
      if (a.contains("profile")) {
        if (!a["profile"].is_string()) throw ConfigError(p + ".profile", "expected a string");
        try {
          c.profile = parse_profile(a["profile"].get<std::string>());
        } catch (const std::exception&) {
          throw ConfigError(p + ".profile", "expected bump, cubic or gaussian");
        }
      }
    }
    if (t.contains("finite")) {
      c.finite = parse_list<FinitePlaceSpec>(t["finite"], "test_function.finite", parse_place);
      std::set<long long> seen;
      for (size_t i = 0; i < c.finite.size(); ++i)
        if (!seen.insert(c.finite[i].prime).second)
          throw ConfigError(idx("test_function.finite", i) + ".prime", "duplicate prime");
    }
  }

  if (j.contains("data")) {
    const json& d = require_object(j["data"], "data");
    reject_unknown(d, {"t0"}, "data");
    if (d.contains("t0"))
      c.t0s = parse_list<Rational>(d["t0"], "data.t0",
                                   [](const json& v, const std::string& p) { return parse_rational(v, p); });
  }
  if (j.contains("T")) c.Ts = parse_list<double>(j["T"], "T", get_double);
  if (j.contains("tolerance")) c.tolerance = positive(get_double(j["tolerance"], "tolerance"), "tolerance");
  if (j.contains("depth")) {
    c.depth = static_cast<int>(get_int(j["depth"], "depth"));
    if (c.depth < 2 || c.depth > 10 || c.depth % 2) throw ConfigError("depth", "must be even and within 2..10");
  }
  if (j.contains("volumes")) {
    const json& v = require_object(j["volumes"], "volumes");
    reject_unknown(v, {"sl2", "gm", "mb", "torus"}, "volumes");
    if (v.contains("sl2")) c.vol.sl2 = positive(get_double(v["sl2"], "volumes.sl2"), "volumes.sl2");
    if (v.contains("gm")) c.vol.gm = positive(get_double(v["gm"], "volumes.gm"), "volumes.gm");
    if (v.contains("mb")) c.vol.mb = positive(get_double(v["mb"], "volumes.mb"), "volumes.mb");
    if (v.contains("torus")) c.vol.torus = positive(get_double(v["torus"], "volumes.torus"), "volumes.torus");
  }
  if (j.contains("seed")) {
    const long long s = get_int(j["seed"], "seed");
    if (s < 0) throw ConfigError("seed", "must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  }

  if (j.contains("cones")) {
    const json& k = require_object(j["cones"], "cones");
    reject_unknown(k, {"function", "P", "Q", "lo", "hi", "steps"}, "cones");
    static const std::set<std::string> fns{"rint", "epsilon", "tau", "tau_hat", "sigma", "gamma"};
    if (k.contains("function")) {
      if (!k["function"].is_string() || !fns.count(k["function"].get<std::string>()))
        throw ConfigError("cones.function", "expected one of rint, epsilon, tau, tau_hat, sigma, gamma");
      c.cones.function = k["function"].get<std::string>();
    }
    for (const char* key : {"P", "Q"}) {
      if (!k.contains(key)) continue;
      const std::string p = std::string("cones.") + key;
      if (!k[key].is_string() || (k[key] != "B" && k[key] != "G")) throw ConfigError(p, "expected \"B\" or \"G\"");
      (key[0] == 'P' ? c.cones.P : c.cones.Q) = k[key].get<std::string>();
    }
    if (c.cones.P == "G" && c.cones.Q == "B") throw ConfigError("cones.P", "P must be contained in Q");
    if (k.contains("lo")) c.cones.lo = parse_rational(k["lo"], "cones.lo");
    if (k.contains("hi")) c.cones.hi = parse_rational(k["hi"], "cones.hi");
    if (c.cones.hi < c.cones.lo) throw ConfigError("cones.hi", "must not be below cones.lo");
    if (k.contains("steps")) c.cones.steps = static_cast<int>(get_int(k["steps"], "cones.steps"));
    if (c.cones.steps < 1 || c.cones.steps > 2000) throw ConfigError("cones.steps", "must lie in 1..2000");
  }

  if (j.contains("zeta")) {
    const json& z = require_object(j["zeta"], "zeta");
    reject_unknown(z, {"sign", "s"}, "zeta");
    if (z.contains("sign")) {
      c.zeta.sign = static_cast<int>(get_int(z["sign"], "zeta.sign"));
      if (c.zeta.sign != 1 && c.zeta.sign != -1) throw ConfigError("zeta.sign", "expected 1 or -1");
    }
    if (z.contains("s")) {
      c.zeta.s = parse_list<double>(z["s"], "zeta.s", get_double);
      for (size_t i = 0; i < c.zeta.s.size(); ++i)
        if (c.zeta.s[i] <= 1) throw ConfigError(idx("zeta.s", i), "must exceed 1");
    }
  }

  if (j.contains("tori")) {
    const json& t = require_object(j["tori"], "tori");
    reject_unknown(t, {"models", "cores"}, "tori");
    if (t.contains("models"))
      c.tori_models = parse_list<ToriModelSpec>(t["models"], "tori.models", [](const json& m, const std::string& p) {
        require_object(m, p);
        reject_unknown(m, {"N", "d"}, p);
        if (!m.contains("N") || !m.contains("d")) throw ConfigError(p, "needs N and d");
        ToriModelSpec s{get_int(m["N"], p + ".N"), get_int(m["d"], p + ".d")};
        if (s.N < 2 || s.N > 60) throw ConfigError(p + ".N", "must lie in 2..60");
        if (s.d == 1 || squarefree_part(s.d) != s.d) throw ConfigError(p + ".d", "must be squarefree and not 1");
        return s;
      });
    if (t.contains("cores")) {
      c.tori_cores = parse_list<long long>(t["cores"], "tori.cores", get_int);
      for (size_t i = 0; i < c.tori_cores.size(); ++i)
        if (c.tori_cores[i] == 0 || squarefree_part(c.tori_cores[i]) != c.tori_cores[i])
          throw ConfigError(idx("tori.cores", i), "must be a squarefree integer");
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json places = json::array();
  for (const auto& s : c.finite) {
    json p{{"prime", s.prime}, {"basic", s.basic}};
    if (!s.basic) {
      p["level"] = s.level;
      json balls = json::array();
      for (const auto& b : s.balls)
        balls.push_back({{"center", {to_string(b.alpha), to_string(b.beta), to_string(b.b), to_string(b.c)}},
                         {"value", to_string(b.value)}});
      p["balls"] = balls;
    }
    places.push_back(p);
  }
  json t0 = json::array();
  for (const auto& q : c.t0s) t0.push_back(to_string(q));
  json models = json::array();
  for (const auto& m : c.tori_models) models.push_back({{"N", m.N}, {"d", m.d}});
  return {
      {"field", {{"discriminant", c.discriminant}}},
      {"test_function",
       {{"infinity",
         {{"center", {c.center.alpha, c.center.beta, c.center.b, c.center.c}},
          {"radius", c.radius},
          {"profile", to_string(c.profile)},
          {"amplitude", c.amplitude}}},
        {"finite", places}}},
      {"data", {{"t0", t0}}},
      {"T", c.Ts},
      {"tolerance", c.tolerance},
      {"depth", c.depth},
      {"volumes", {{"sl2", c.vol.sl2}, {"gm", c.vol.gm}, {"mb", c.vol.mb}, {"torus", c.vol.torus}}},
      {"seed", c.seed},
      {"cones",
       {{"function", c.cones.function},
        {"P", c.cones.P},
        {"Q", c.cones.Q},
        {"lo", to_string(c.cones.lo)},
        {"hi", to_string(c.cones.hi)},
        {"steps", c.cones.steps}}},
      {"zeta", {{"sign", c.zeta.sign}, {"s", c.zeta.s}}},
      {"tori", {{"models", models}, {"cores", c.tori_cores}}},
  };
}

json numeric(double value, const std::string& module, double requested, double achieved) {
  return {{"value", value}, {"module", module}, {"tolerance_requested", requested}, {"tolerance_achieved", achieved}};
}

}  // namespace rtf
