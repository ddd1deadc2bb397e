#pragma once

#include "rtf/heights.hpp"
#include "rtf/linefn.hpp"

#include <functional>
#include <map>

namespace rtf {

struct OrbitalResult {
  Rational exact = 0;
  double value = 0;
  bool exact_valid = false;
  bool stabilized = true;
  int depth = 0;
  double error = 0;
  std::string method;
};

// Discriminant delta of eta: Z^2 = delta * 1.
Rational orbit_discriminant(const QPoint& eta);

// Finite place, fixed truncation depth (even): the torus is compact or split at p.
Rational orbital_finite_at_depth(const LocalTestFn& f, const QPoint& eta, long long tau, int depth);
// Value at `depth` with a stabilization check against depth + 2.
OrbitalResult orbital_local(const LocalTestFn& f, const QPoint& eta, long long tau, int depth = 4);

// Mass of u -> int_K f(k^{-1} (t0, [[r, 2 coef u], [0, -r]]) k) dk on Q_p,
// split by the weight exponent min(0, v_p(u)).
struct SplitAtoms {
  std::map<int, Rational> mass;
  int depth = 0;
  bool stabilized = true;

  Rational total() const;
  // int (-log max(1, |u|_p)) * integrand
  double weighted(long long p) const;
};
SplitAtoms split_integral_finite(const LocalTestFn& f, const Rational& t0, const Rational& r, const Rational& coef,
                                 long long tau, int depth);
SplitAtoms split_integral_finite_stable(const LocalTestFn& f, const Rational& t0, const Rational& r,
                                        const Rational& coef, long long tau, int depth);

struct RealIntegral {
  double value = 0;
  double error = 0;
};

// u -> int_{SO(2)} f(k^{-1} (t0, [[r, 2 coef u], [0, -r]]) k) dk
std::function<double(double)> split_integrand_real(const LocalTestFn& f, double t0, double r, double coef,
                                                   int nodes = 128);
double split_reach_real(const LocalTestFn& f, double coef);
RealIntegral split_integral_real(const LocalTestFn& f, double t0, double r, double coef,
                                 const std::function<double(double)>& weight = nullptr, double tol = 1e-11);

// Archimedean orbital integral over the stabilizer torus.
RealIntegral orbital_real(const LocalTestFn& f, const RPoint& eta, double tol = 1e-10);

// Eigenvector matrix in SL2 with g^{-1} Z g = diag(r, -r).
Mat2Q split_conjugator(const QPoint& eta, const Rational& r);
// p-adic square root of delta as a rational approximation (exact when delta is a rational square).
Rational padic_sqrt_approx(const Rational& delta, long long p, int precision = 40);

// Real weight v_infinity(n(u)).
double weight_real(double u);

}  // namespace rtf
