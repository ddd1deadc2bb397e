#include "rtf/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rtf {

QPoint QPoint::conjugate(const Mat2Q& g) const { return conjugate(g, inverse_exact(g)); }

QPoint QPoint::conjugate(const Mat2Q& g, const Mat2Q& gi) const {
  Mat2Q z = g * Mat2Q{beta, b, c, -beta} * gi;
  return {alpha, z.a, z.b, z.c};
}

std::string to_string(Profile p) {
  switch (p) {
    case Profile::bump: return "bump";
    case Profile::cubic: return "cubic";
    case Profile::gaussian: return "gaussian";
  }
  return "?";
}

Profile parse_profile(const std::string& s) {
  if (s == "bump") return Profile::bump;
  if (s == "cubic") return Profile::cubic;
  if (s == "gaussian") return Profile::gaussian;
  throw DomainError("unknown profile '" + s + "'");
}

double profile_value(Profile p, double s) {
  switch (p) {
    case Profile::bump: return s < 1 ? std::exp(1 - 1 / (1 - s)) : 0.0;
    case Profile::cubic: return s < 1 ? (1 - s) * (1 - s) * (1 - s) : 0.0;
    case Profile::gaussian: return std::exp(-M_PI * s);
  }
  return 0;
}

double profile_cutoff(Profile p) { return p == Profile::gaussian ? 13.0 : 1.0; }

LocalTestFn LocalTestFn::basic(long long p) {
  if (!is_prime(p)) throw DomainError("basic function needs a prime place");
  LocalTestFn f;
  f.place = p;
  f.kind = Kind::basic;
  f.level = 1;
  return f;
}

LocalTestFn LocalTestFn::ball_sum(long long p, int level, std::vector<Ball> balls) {
  if (!is_prime(p)) throw DomainError("ball function needs a prime place");
  if (level < 1) throw DomainError("ball level must be >= 1");
  for (const auto& b : balls)
    for (const Rational* q : {&b.alpha, &b.beta, &b.b, &b.c})
      if (*q != 0 && valuation(*q, p) < 0) throw DomainError("ball center must be p-integral");
  LocalTestFn f;
  f.place = p;
  f.kind = Kind::balls;
  f.level = level;
  f.balls = std::move(balls);
  return f;
}

LocalTestFn LocalTestFn::bump(RPoint center, double radius, Profile profile, double amplitude) {
  if (!(radius > 0)) throw DomainError("bump radius must be positive");
  LocalTestFn f;
  f.place = kInfinity;
  f.kind = Kind::archimedean;
  f.center = center;
  f.radius = radius;
  f.profile = profile;
  f.amplitude = amplitude;
  return f;
}

LocalTestFn LocalTestFn::composed_with(const Mat2Q& g) const {
  LocalTestFn f = *this;
  f.twist = twist * g;
  return f;
}

namespace {

int min_val(const Mat2Q& g, long long p) {
  int m = 1 << 20;
  for (const Rational* q : {&g.a, &g.b, &g.c, &g.d})
    if (*q != 0) m = std::min(m, valuation(*q, p));
  return m;
}

bool integral(const Rational& q, long long p) { return q == 0 || valuation(q, p) >= 0; }

bool congruent(const Rational& x, const Rational& y, long long p, int level) {
  Rational d = x - y;
  return d == 0 || valuation(d, p) >= level;
}

}  // namespace

int LocalTestFn::effective_level() const {
  if (place == kInfinity) throw DomainError("effective_level at the archimedean place");
  int base = kind == Kind::basic ? 1 : level;
  int shift = -(min_val(twist, place) + min_val(inverse_exact(twist), place));
  return base + std::max(0, shift);
}

bool is_basic_point(const QPoint& x, long long p, long long tau) {
  if (!integral(x.b, p) || !integral(x.c, p)) return false;
  if (p == 2 && ((tau % 4) + 4) % 4 == 1) {
    Rational a2 = 2 * x.alpha, b2 = 2 * x.beta;
    return integral(a2, 2) && integral(b2, 2) && integral(x.alpha - x.beta, 2);
  }
  return integral(x.alpha, p) && integral(x.beta, p);
}

Rational LocalTestFn::eval(const QPoint& x0, long long tau) const {
  if (place == kInfinity) throw DomainError("rational evaluation at the archimedean place");
  const QPoint x = twist == Mat2Q{1, 0, 0, 1} ? x0 : x0.conjugate(twist);
  const long long p = place;
  if (kind == Kind::basic) return is_basic_point(x, p, tau) ? 1 : 0;
  if (!integral(x.alpha, p) || !integral(x.beta, p) || !integral(x.b, p) || !integral(x.c, p)) return 0;
  Rational v = 0;
  for (const auto& bl : balls)
    if (congruent(x.alpha, bl.alpha, p, level) && congruent(x.beta, bl.beta, p, level) &&
        congruent(x.b, bl.b, p, level) && congruent(x.c, bl.c, p, level))
      v += bl.value;
  return v;
}

double LocalTestFn::eval(const RPoint& x0) const {
  if (place != kInfinity) throw DomainError("real evaluation at a finite place");
  const RPoint x = twist == Mat2Q{1, 0, 0, 1} ? x0 : x0.conjugate(to_real(twist));
  const double da = x.alpha - center.alpha, db = x.beta - center.beta, dbb = x.b - center.b,
               dc = x.c - center.c;
  const double s = (da * da + db * db + dbb * dbb + dc * dc) / (radius * radius);
  return amplitude * profile_value(profile, s);
}

double LocalTestFn::support_box() const {
  const double reach = radius * std::sqrt(profile_cutoff(profile));
  double z = std::sqrt(2 * center.beta * center.beta + center.b * center.b + center.c * center.c) +
             std::sqrt(2.0) * reach;
  Mat2R g = to_real(twist), gi = to_real(inverse_exact(twist));
  auto fro = [](const Mat2R& m) { return std::sqrt(m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d); };
  z *= fro(g) * fro(gi);
  return std::max(std::abs(center.alpha) + reach, z);
}

GlobalTestFn::GlobalTestFn(QuadAlg field, LocalTestFn arch) : E(field) {
  if (arch.place != kInfinity) throw DomainError("global test function needs an archimedean component");
  local[kInfinity] = std::move(arch);
}

void GlobalTestFn::set(LocalTestFn f) { local[f.place] = std::move(f); }

LocalTestFn GlobalTestFn::at(long long p) const {
  auto it = local.find(p);
  return it == local.end() ? LocalTestFn::basic(p) : it->second;
}

std::vector<long long> GlobalTestFn::S() const {
  std::vector<long long> out;
  for (const auto& [v, f] : local)
    if (v != kInfinity && !f.is_basic()) out.push_back(v);
  return out;
}

std::vector<long long> GlobalTestFn::S_extended() const {
  std::set<long long> s;
  for (const auto& [v, f] : local)
    if (v != kInfinity) s.insert(v);
  s.insert(2);
  for (long long p : prime_divisors(Rational(E.core))) s.insert(p);
  return {s.begin(), s.end()};
}

double GlobalTestFn::eval(const XPoint& x) const {
  const QPoint q = QPoint::from(x);
  const long long tau = E.core;
  std::set<long long> places;
  for (const auto& [v, f] : local)
    if (v != kInfinity) places.insert(v);
  for (const Rational* r : {&q.alpha, &q.beta, &q.b, &q.c})
    for (long long p : prime_divisors(Rational(denom(*r)))) places.insert(p);
  double val = at_infinity().eval(RPoint::from(x));
  if (val == 0) return 0;
  for (long long p : places) {
    Rational lv = at(p).eval(q, tau);
    if (lv == 0) return 0;
    val *= to_double(lv);
  }
  return val;
}

GlobalTestFn GlobalTestFn::scaled(double c) const {
  GlobalTestFn g = *this;
  g.local[kInfinity].amplitude *= c;
  return g;
}

GlobalTestFn default_test_function(const QuadAlg& E) {
  return GlobalTestFn(E, LocalTestFn::bump(RPoint{1, 0, 0, 0}, 1.5, Profile::bump));
}

Ball ball_at(const QPoint& x, const Rational& value) { return {x.alpha, x.beta, x.b, x.c, value}; }

}  // namespace rtf
