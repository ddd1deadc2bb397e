#pragma once

#include "rtf/symspace.hpp"

#include <map>
#include <optional>
#include <vector>

namespace rtf {

// Coordinates (alpha, beta, b, c) of alpha + sqrt(tau) [[beta, b], [c, -beta]]
// without the norm check; used on hot paths.
struct QPoint {
  Rational alpha, beta, b, c;

  static QPoint from(const XPoint& x) { return {x.a.x, x.a.y, x.b, x.c}; }
  // Z -> g Z g^{-1}
  QPoint conjugate(const Mat2Q& g) const;
  QPoint conjugate(const Mat2Q& g, const Mat2Q& g_inv) const;
};

enum class Profile { bump, cubic, gaussian };
std::string to_string(Profile p);
Profile parse_profile(const std::string& s);
// Profile value at squared normalized distance s >= 0.
double profile_value(Profile p, double s);
// Squared normalized distance beyond which the profile is zero (or negligible
// below 1e-300 for the Gaussian).
double profile_cutoff(Profile p);

struct Ball {
  Rational alpha, beta, b, c;  // center, p-integral
  Rational value;
};

// Local component of a factorizable test function.
struct LocalTestFn {
  enum class Kind { basic, balls, archimedean };

  Place place = kInfinity;
  Kind kind = Kind::basic;
  // Finite places.
  int level = 0;
  std::vector<Ball> balls;
  // Archimedean place.
  RPoint center;
  double radius = 1;
  Profile profile = Profile::bump;
  double amplitude = 1;
  // The function actually evaluated is x -> base(twist x twist^{-1}).
  Mat2Q twist{1, 0, 0, 1};

  static LocalTestFn basic(long long p);
  static LocalTestFn ball_sum(long long p, int level, std::vector<Ball> balls);
  static LocalTestFn bump(RPoint center, double radius, Profile profile, double amplitude = 1);

  bool is_basic() const { return kind == Kind::basic && twist == Mat2Q{1, 0, 0, 1}; }
  // f o Ad(g)
  LocalTestFn composed_with(const Mat2Q& g) const;
  // Level at which a finite-place function is locally constant (>= 1).
  int effective_level() const;

  Rational eval(const QPoint& x, long long tau) const;
  double eval(const RPoint& x) const;
  // Upper bound on |alpha|, |beta|, |b|, |c| over the support (archimedean).
  double support_box() const;
};

// Membership of alpha + beta sqrt(tau) in the maximal order of E_p and of b, c in Z_p.
bool is_basic_point(const QPoint& x, long long p, long long tau);

struct GlobalTestFn {
  QuadAlg E;
  std::map<Place, LocalTestFn> local;  // infinity and the ramified primes

  GlobalTestFn() = default;
  GlobalTestFn(QuadAlg field, LocalTestFn arch);

  void set(LocalTestFn f);
  const LocalTestFn& at_infinity() const { return local.at(kInfinity); }
  // Local component, BASIC outside the listed primes.
  LocalTestFn at(long long p) const;
  // Ramified primes, ascending.
  std::vector<long long> S() const;
  // S together with 2 and the primes dividing tau.
  std::vector<long long> S_extended() const;

  double eval(const XPoint& x) const;
  GlobalTestFn scaled(double c) const;
};

// Canned functions used by the CLI default config and the acceptance suite.
GlobalTestFn default_test_function(const QuadAlg& E);
// Ball around a rational point at level m at p.
Ball ball_at(const QPoint& x, const Rational& value);

}  // namespace rtf
