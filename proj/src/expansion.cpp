#include "rtf/expansion.hpp"
#include "rtf/padic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <set>
#include <sstream>

namespace rtf {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

Rational rational_sqrt(const Rational& q) {
  Integer n = sqrt(numer(q)), d = sqrt(denom(q));
  return Rational(n) / Rational(d);
}

std::set<long long> merge_primes(std::vector<long long> base, std::initializer_list<Rational> extra) {
  std::set<long long> s(base.begin(), base.end());
  for (const auto& q : extra)
    if (q != 0)
      for (long long p : prime_divisors(q)) s.insert(p);
  return s;
}

// Pieces of the unipotent expansion that do not depend on T.
struct UnipotentParts {
  double f_at = 0;
  std::vector<std::pair<long long, double>> kappa_terms;
  std::vector<double> kappa_errors;
  GlobalLineData h;
  double residue = 0;
};

UnipotentParts unipotent_parts(int sign, const GlobalTestFn& f) {
  UnipotentParts u;
  const QuadAlg& E = f.E;
  u.f_at = f.eval(XPoint(E, QuadElem(E, sign), 0, 0));
  for (long long D : fundamental_discriminants_over(f.S_extended())) {
    QuadraticCharacter kappa(D);
    GlobalLineData hk = unipotent_line_data(f, sign, kappa);
    bool vanishes = false;
    for (const auto& [p, g] : hk.finite) {
      bool all_zero = true;
      for (const auto& v : g.values) all_zero = all_zero && v == 0;
      vanishes = vanishes || all_zero;
    }
    if (vanishes) {
      u.kappa_terms.emplace_back(D, 0.0);
      u.kappa_errors.push_back(0);
      continue;
    }
    ZetaValue z = tate_zeta_global(hk, kappa, 1);
    u.kappa_terms.emplace_back(D, z.value);
    u.kappa_errors.push_back(z.error);
  }
  u.h = unipotent_line_data(f, sign, QuadraticCharacter());
  u.residue = line_mass(u.h);
  return u;
}

// Per-place data of the split orbit of a regular semisimple datum.
struct RssParts {
  Rational m;  // sqrt of the discriminant
  std::map<long long, SplitAtoms> finite;
  double O_inf = 0, W_inf = 0, err_inf = 0;
  std::function<double(double)> g_inf;
  double reach = 0;
  bool stabilized = true;
};

RssParts rss_parts(const GeomDatum& d, const GlobalTestFn& f, const ExpansionOptions& opt) {
  RssParts r;
  const long long tau = f.E.core;
  const Rational delta = (d.t0 * d.t0 - 1) / Rational(tau);
  if (!is_square(delta) || delta == 0) throw DomainError("rss datum needs a nonzero square discriminant");
  r.m = rational_sqrt(delta);
  for (long long p : merge_primes(f.S_extended(), {r.m, Rational(denom(d.t0))})) {
    SplitAtoms a = split_integral_finite_stable(f.at(p), d.t0, r.m, r.m, tau, opt.depth);
    r.stabilized = r.stabilized && a.stabilized;
    r.finite[p] = a;
  }
  const LocalTestFn& finf = f.at_infinity();
  const double t0 = to_double(d.t0), m = to_double(r.m);
  RealIntegral o = split_integral_real(finf, t0, m, m, nullptr, opt.tol);
  RealIntegral w = split_integral_real(finf, t0, m, m, weight_real, opt.tol);
  r.O_inf = o.value;
  r.W_inf = w.value;
  r.err_inf = o.error + w.error;
  r.g_inf = split_integrand_real(finf, t0, m, m);
  r.reach = split_reach_real(finf, m);
  return r;
}

}  // namespace

double ExpansionReport::total_constant() const {
  double s = 0;
  for (const auto& t : terms) s += t.numeric;
  return s;
}

double ExpansionReport::total_slope() const {
  double s = 0;
  for (const auto& t : terms) s += t.slope;
  return s;
}

std::vector<XPoint> iota_fiber(const GeomDatum& d, const QuadAlg& E) {
  switch (d.cls) {
    case DatumClass::unipotent_plus:
      return {XPoint(E, QuadElem(E, 1), 0, 0)};
    case DatumClass::unipotent_minus:
      return {XPoint(E, QuadElem(E, -1), 0, 0)};
    case DatumClass::elliptic:
      return {};
    case DatumClass::rss_nonelliptic: {
      const Rational m = rational_sqrt((d.t0 * d.t0 - 1) / Rational(E.core));
      return {XPoint(E, QuadElem(E, d.t0, m), 0, 0), XPoint(E, QuadElem(E, d.t0, -m), 0, 0)};
    }
  }
  return {};
}

GlobalLineData unipotent_line_data(const GlobalTestFn& f, int sign, const QuadraticCharacter& kappa,
                                   CompactGroup group) {
  const long long tau = f.E.core;
  const LineChart chart = sign > 0 ? LineChart::plus() : LineChart::minus(tau);
  std::set<long long> primes;
  for (long long p : f.S_extended()) primes.insert(p);
  for (long long p : kappa.ramified_primes()) primes.insert(p);
  GlobalLineData h;
  for (long long p : primes) h.finite[p] = kappa_average(f.at(p), kappa, tau, group, chart);
  h.infinity = kappa_average_real(f.at_infinity(), kappa, group, chart);
  return h;
}

DerivativeResult unipotent_bracket(const GlobalLineData& h, double residue, double T) {
  QuadraticCharacter one;
  auto G = [&](double s) { return tate_zeta_global(h, one, 1 + s).value - residue * std::exp(-s * T) / s; };
  return removable_limit(G, 0.05, 1e-7);
}

ExpansionReport assemble_unipotent(int sign, const GlobalTestFn& f, const ExpansionOptions& opt) {
  ExpansionReport rep;
  rep.datum = classify(Rational(sign), f.E);
  UnipotentParts u = unipotent_parts(sign, f);
  rep.terms.push_back({"identity term", "vol([SL2])", opt.vol.sl2 * u.f_at, 0, 0});
  for (size_t i = 0; i < u.kappa_terms.size(); ++i) {
    const auto& [D, z] = u.kappa_terms[i];
    rep.terms.push_back({"Z(f_K, kappa_" + std::to_string(D) + ", 1)", "", z, 0, u.kappa_errors[i]});
  }
  DerivativeResult c0 = zeta_sderivative(u.h);
  rep.terms.push_back({"d/ds s Z(f_K, |.|^{1+s}) at 0", "vol([G_m]^1)", c0.value, opt.vol.gm * u.residue, c0.error});
  rep.line = {rep.total_constant(), rep.total_slope()};
  rep.diagnostics.push_back("residue hat h(0) = " + fmt(u.residue));
  rep.diagnostics.push_back("Laurent route for the s-derivative = " + fmt(zeta_sderivative_laurent(u.h)));
  rep.diagnostics.push_back("characters enumerated: " + std::to_string(u.kappa_terms.size()));
  return rep;
}

ExpansionReport assemble_rss(const GeomDatum& d, const GlobalTestFn& f, const ExpansionOptions& opt) {
  if (d.cls != DatumClass::rss_nonelliptic) throw DomainError("assemble_rss needs a split datum");
  ExpansionReport rep;
  rep.datum = d;
  RssParts r = rss_parts(d, f, opt);
  // O = prod O_v, W = sum_v W_v prod_{w != v} O_w
  std::vector<std::pair<double, double>> ow;
  for (const auto& [p, a] : r.finite) ow.emplace_back(to_double(a.total()), a.weighted(p));
  ow.emplace_back(r.O_inf, r.W_inf);
  double O = 1, W = 0;
  for (size_t i = 0; i < ow.size(); ++i) {
    O *= ow[i].first;
    double prod = ow[i].second;
    for (size_t j = 0; j < ow.size(); ++j)
      if (j != i) prod *= ow[j].first;
    W += prod;
  }
  const double vol = opt.vol.mb;
  rep.terms.push_back({"weighted orbital integral", "vol([M_B']^1)", -vol * W, 0, r.err_inf});
  rep.terms.push_back({"orbital integral", "vol([M_B']^1)", 0, 2 * vol * O, r.err_inf});
  rep.line = {rep.total_constant(), rep.total_slope()};
  rep.diagnostics.push_back("O = " + fmt(O) + ", W = " + fmt(W));
  rep.diagnostics.push_back("printed-shape line: constant " + fmt(-2 * vol * W) + ", slope " + fmt(4 * vol * O));
  if (!r.stabilized) rep.diagnostics.push_back("finite split integrals did not stabilize at depth " +
                                               std::to_string(opt.depth));
  return rep;
}

namespace {

// Nonzero rational xi up to the norm group of Q(sqrt delta), represented by
// +- products of primes from V, deduplicated by local symbols.
std::vector<Rational> elliptic_xis(const Rational& delta, std::set<long long> V) {
  // A few small primes split in Q(sqrt delta) widen the reachable symbol vectors.
  int added = 0;
  for (long long q = 3; added < 3 && q < 200; q += 2) {
    if (!is_prime(q) || V.count(q) || valuation(delta, q) != 0) continue;
    if (hilbert_symbol(Rational(q), delta, q) == 1) {
      V.insert(q);
      ++added;
    }
  }
  std::vector<long long> primes(V.begin(), V.end());
  std::vector<Place> places(primes.begin(), primes.end());
  places.push_back(kInfinity);
  std::set<std::vector<int>> seen;
  std::vector<Rational> out;
  const size_t n = primes.size();
  for (int sgn : {1, -1}) {
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
      Rational xi = sgn;
      for (size_t i = 0; i < n; ++i)
        if (mask >> i & 1) xi *= primes[i];
      std::vector<int> sym;
      for (Place v : places) sym.push_back(hilbert_symbol(xi, delta, v));
      if (seen.insert(sym).second) out.push_back(xi);
    }
  }
  return out;
}

}  // namespace

std::vector<long long> datum_places(const GeomDatum& d, const GlobalTestFn& f) {
  std::set<long long> V;
  switch (d.cls) {
    case DatumClass::unipotent_plus:
    case DatumClass::unipotent_minus:
      return f.S_extended();
    case DatumClass::rss_nonelliptic:
      V = merge_primes(f.S_extended(), {rational_sqrt((d.t0 * d.t0 - 1) / Rational(f.E.core)), Rational(denom(d.t0))});
      break;
    case DatumClass::elliptic:
      V = merge_primes(f.S_extended(), {(d.t0 * d.t0 - 1) / Rational(f.E.core), Rational(denom(d.t0))});
      break;
  }
  return {V.begin(), V.end()};
}

EllipticClasses elliptic_classes(const GeomDatum& d, const GlobalTestFn& f) {
  if (d.cls != DatumClass::elliptic) throw DomainError("elliptic_classes needs an elliptic datum");
  const Rational delta = (d.t0 * d.t0 - 1) / Rational(f.E.core);
  EllipticClasses out;
  out.places = datum_places(d, f);
  for (const Rational& xi : elliptic_xis(delta, {out.places.begin(), out.places.end()})) out.reps.push_back({d.t0, 0, xi, delta / xi});
  return out;
}

ExpansionReport assemble_elliptic(const GeomDatum& d, const GlobalTestFn& f, const ExpansionOptions& opt) {
  if (d.cls != DatumClass::elliptic) throw DomainError("assemble_elliptic needs an elliptic datum");
  ExpansionReport rep;
  rep.datum = d;
  const long long tau = f.E.core;
  const EllipticClasses classes = elliptic_classes(d, f);
  int visited = 0;
  for (const QPoint& eta : classes.reps) {
    ++visited;
    const Rational& xi = eta.b;
    double prod = 1;
    bool stable = true;
    for (long long p : classes.places) {
      OrbitalResult o = orbital_local(f.at(p), eta, tau, opt.depth);
      stable = stable && o.stabilized;
      prod *= o.value;
      if (prod == 0) break;
    }
    double err = 0;
    if (prod != 0) {
      RealIntegral o =
          orbital_real(f.at_infinity(), RPoint{to_double(d.t0), 0, to_double(xi), to_double(eta.c)}, opt.tol);
      err = std::abs(prod) * o.error;
      prod *= o.value;
    }
    if (prod == 0) continue;
    rep.terms.push_back({"elliptic class xi = " + to_string(xi), "vol([T'])", opt.vol.torus * prod, 0, err});
    if (!stable) rep.diagnostics.push_back("class xi = " + to_string(xi) + " did not stabilize");
  }
  rep.line = {rep.total_constant(), 0};
  rep.diagnostics.push_back("classes visited: " + std::to_string(visited) + ", contributing: " +
                            std::to_string(rep.terms.size()));
  return rep;
}

ExpansionReport expand(const Rational& t0, const GlobalTestFn& f, const ExpansionOptions& opt) {
  GeomDatum d = classify(t0, f.E);
  switch (d.cls) {
    case DatumClass::unipotent_plus:
      return assemble_unipotent(1, f, opt);
    case DatumClass::unipotent_minus:
      return assemble_unipotent(-1, f, opt);
    case DatumClass::rss_nonelliptic:
      return assemble_rss(d, f, opt);
    case DatumClass::elliptic:
      return assemble_elliptic(d, f, opt);
  }
  throw DomainError("unknown datum class");
}

std::vector<double> truncated_unipotent(int sign, const GlobalTestFn& f, const std::vector<double>& Ts,
                                        const ExpansionOptions& opt) {
  UnipotentParts u = unipotent_parts(sign, f);
  double base = opt.vol.sl2 * u.f_at;
  for (const auto& [D, z] : u.kappa_terms) base += z;
  std::vector<double> out;
  for (double T : Ts) out.push_back(base + unipotent_bracket(u.h, u.residue, T).value);
  return out;
}

std::vector<double> truncated_rss(const GeomDatum& d, const GlobalTestFn& f, const std::vector<double>& Ts,
                                  const ExpansionOptions& opt) {
  RssParts r = rss_parts(d, f, opt);
  // Every combination of finite atoms: (sum of finite weights, product of masses).
  std::vector<std::pair<double, double>> combos{{0.0, 1.0}};
  for (const auto& [p, a] : r.finite) {
    std::vector<std::pair<double, double>> next;
    const double lp = std::log(static_cast<double>(p));
    for (const auto& [c, w] : combos)
      for (const auto& [key, mass] : a.mass)
        if (mass != 0) next.emplace_back(c + key * lp, w * to_double(mass));
    combos = std::move(next);
  }
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  std::vector<double> out;
  for (double T : Ts) {
    double total = 0;
    for (const auto& [c, w] : combos) {
      auto integrand = [&](double u) {
        const double g = r.g_inf(u);
        if (g == 0) return 0.0;
        return g * psi_T_quadrature(0, weight_real(u) + c, T);
      };
      total += w * GK::integrate(integrand, -r.reach, r.reach, 12, 1e-11);
    }
    out.push_back(opt.vol.mb * total);
  }
  return out;
}

std::vector<double> truncated_elliptic(const GeomDatum& d, const GlobalTestFn& f, const std::vector<double>& Ts,
                                       const ExpansionOptions& opt) {
  const double v = assemble_elliptic(d, f, opt).total_constant();
  return std::vector<double>(Ts.size(), v);
}

double levi_descend_local(const GlobalTestFn& f, const XPoint& eta, const QuadElem& y, Place v,
                          const ExpansionOptions& opt) {
  const Rational coef = y.norm();
  if (coef == 0) throw DomainError("levi_descend_local: y has norm zero");
  const Rational t0 = eta.a.x, r = eta.a.y;
  if (v == kInfinity) {
    const double c = to_double(coef);
    return split_integral_real(f.at_infinity(), to_double(t0), to_double(r), c, nullptr, opt.tol).value /
           std::abs(c);
  }
  SplitAtoms a = split_integral_finite_stable(f.at(v), t0, r, coef, f.E.core, opt.depth);
  return to_double(a.total() / padic_abs(coef, v));
}

double levi_descend(const GlobalTestFn& f, const XPoint& eta, const ExpansionOptions& opt) {
  if (eta.b != 0 || eta.c != 0) throw DomainError("levi_descend expects a diagonal point");
  if (eta.a.y == 0) {
    const int sign = eta.a.x > 0 ? 1 : -1;
    return line_mass(unipotent_line_data(f, sign, QuadraticCharacter(), CompactGroup::SL2));
  }
  const QuadElem y = hilbert90(eta.a);
  const Rational N = y.norm();
  double prod = 1;
  for (long long p : merge_primes(f.S_extended(), {eta.a.y, Rational(denom(eta.a.x)), N})) {
    prod *= levi_descend_local(f, eta, y, p, opt);
    if (prod == 0) return 0;
  }
  return prod * levi_descend_local(f, eta, y, kInfinity, opt);
}

SlopeCheck slope_crosscheck(const GeomDatum& d, const GlobalTestFn& f, const ExpansionOptions& opt) {
  SlopeCheck s;
  switch (d.cls) {
    case DatumClass::elliptic:
      s.inconclusive = true;
      return s;
    case DatumClass::unipotent_plus:
    case DatumClass::unipotent_minus: {
      const int sign = d.cls == DatumClass::unipotent_plus ? 1 : -1;
      s.slope = opt.vol.gm * line_mass(unipotent_line_data(f, sign, QuadraticCharacter()));
      for (const XPoint& eta : iota_fiber(d, f.E)) s.descent_sum += opt.vol.gm * levi_descend(f, eta, opt);
      break;
    }
    case DatumClass::rss_nonelliptic: {
      s.slope = assemble_rss(d, f, opt).total_slope();
      for (const XPoint& eta : iota_fiber(d, f.E)) s.descent_sum += opt.vol.mb * levi_descend(f, eta, opt);
      break;
    }
  }
  s.inconclusive = std::abs(s.descent_sum) < 1e-14;
  s.ratio = s.inconclusive ? 0 : s.slope / s.descent_sum;
  return s;
}

}  // namespace rtf
