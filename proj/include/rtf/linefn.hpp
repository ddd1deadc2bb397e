#pragma once

#include "rtf/testfn.hpp"

#include <complex>
#include <functional>

namespace rtf {

// b -> (alpha0, [[0, scale * b], [0, 0]]) in XPoint coordinates.
struct LineChart {
  Rational alpha0 = 1;
  Rational scale = 2;

  // n(sqrt(tau) b) theta(n(sqrt(tau) b))^{-1}
  static LineChart plus() { return {1, 2}; }
  // gamma0 * (the plus line) * theta(gamma0)^{-1}, gamma0 = diag(sqrt tau, 1/sqrt tau)
  static LineChart minus(long long tau) { return {-1, Rational(-2 * tau)}; }
  QPoint point(const Rational& b) const { return {alpha0, 0, scale * b, 0}; }
  RPoint point(double b) const { return {to_double(alpha0), 0, to_double(scale) * b, 0}; }
};

// b mod p^k for p-integral b, as an integer in [0, p^k).
long long residue(const Rational& b, long long p, int k);

// Locally constant function on Q_p, supported on p^lo Z_p and constant on
// cosets of p^hi Z_p.  values[n] is the value on n p^lo + p^hi Z_p.
template <class V>
struct PadicTable {
  long long p = 2;
  int lo = 0, hi = 1;
  std::vector<V> values{V(1)};

  long long size() const { return static_cast<long long>(values.size()); }
  V at(const Rational& b) const;
  V at_zero() const { return values[0]; }
  PadicTable refined(int new_lo, int new_hi) const;
};

using FiniteLine = PadicTable<Rational>;
using FiniteSpectrum = PadicTable<std::complex<double>>;

FiniteLine indicator_line(long long p, int lo);
Rational integral(const FiniteLine& g);
FiniteLine add(const FiniteLine& a, const FiniteLine& b);
FiniteLine scale(const FiniteLine& a, const Rational& c);
bool same_function(const FiniteLine& a, const FiniteLine& b);

FiniteSpectrum to_complex(const FiniteLine& g);
// Fourier transform for the character exp(-2 pi i {x}_p), self-dual measure.
FiniteSpectrum fourier_line(const FiniteSpectrum& g);
inline FiniteSpectrum fourier_line(const FiniteLine& g) { return fourier_line(to_complex(g)); }

// Function on R with a bound outside of which it vanishes (or is below 1e-17).
struct RealLine {
  std::function<double(double)> fn;
  double reach = 1;

  double operator()(double b) const { return fn(b); }
};

struct FourierValue {
  std::complex<double> value;
  double error = 0;
};

// hat g(xi) = int g(b) e^{2 pi i b xi} db by adaptive Gauss-Kronrod.
FourierValue fourier_real(const RealLine& g, double xi, double tol = 1e-12);
double integral(const RealLine& g, double tol = 1e-12, double* error = nullptr);

// b -> f(x^{-1} chart(b) x)
FiniteLine derive_fx(const LocalTestFn& f, const Mat2Q& x, long long tau,
                     const LineChart& chart = LineChart::plus());
RealLine derive_fx(const LocalTestFn& f, const Mat2R& x, const LineChart& chart = LineChart::plus());

enum class CompactGroup { SL2, GL2 };

// Representatives of SL2(Z/p^e) or GL2(Z/p^e) as integer matrices.
std::vector<Mat2Q> compact_representatives(long long p, int e, CompactGroup group);

// int_K kappa(det k) f_k(b) dk at a finite place (kappa ignored for SL2).
FiniteLine kappa_average(const LocalTestFn& f, const QuadraticCharacter& kappa, long long tau,
                         CompactGroup group = CompactGroup::GL2, const LineChart& chart = LineChart::plus());
// Same at infinity: SO(2) for SL2, O(2) for GL2; trapezoid rule with `nodes` angles.
RealLine kappa_average_real(const LocalTestFn& f, const QuadraticCharacter& kappa,
                            CompactGroup group = CompactGroup::GL2, const LineChart& chart = LineChart::plus(),
                            int nodes = 96);

struct PoissonResult {
  double lhs = 0, rhs = 0;
  long long terms_lhs = 0, terms_rhs = 0;
  double tail_bound = 0;
};

// sum_n g(n) against sum_n hat g(n).
PoissonResult poisson_check(const RealLine& g, double tail_tol = 1e-12, long long max_terms = 4000);

}  // namespace rtf
