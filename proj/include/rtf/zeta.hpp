#pragma once

#include "rtf/linefn.hpp"

#include <functional>
#include <map>

namespace rtf {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243104215933593992;

struct ZetaValue {
  double s = 0;
  double value = 0;
  bool pole = false;
  double residue = 0;
  double error = 0;
};

// Local zeta integrals with d^x t normalized by vol(Z_p^x) = 1 and dt/|t| at infinity.
Rational tate_zeta_local_exact(const FiniteLine& g, const QuadraticCharacter& kappa, int s);
double tate_zeta_local(const FiniteLine& g, const QuadraticCharacter& kappa, double s);
double tate_zeta_local_ds(const FiniteLine& g, const QuadraticCharacter& kappa, double s);
double tate_zeta_real(const RealLine& g, const QuadraticCharacter& kappa, double s, double* error = nullptr);
double tate_zeta_real_ds(const RealLine& g, const QuadraticCharacter& kappa, double s, double* error = nullptr);

// zeta(s, q) - 1/(s - 1), finite at s = 1 (Euler-Maclaurin).
double hurwitz_regular(double s, double q);
double riemann_zeta(double s);
// Completed-at-nothing Dirichlet L-function of the Kronecker character (D/.),
// D a fundamental discriminant != 1.
double dirichlet_L(double s, long long D);

// Per-place line data: listed primes carry the given function, every other
// prime carries 1_{Z_p}.
struct GlobalLineData {
  std::map<long long, FiniteLine> finite;
  RealLine infinity;
};

ZetaValue tate_zeta_global(const GlobalLineData& h, const QuadraticCharacter& kappa, double s);
// hat h(0) = prod_v int h_v.
double line_mass(const GlobalLineData& h, double* error = nullptr);

struct DerivativeResult {
  double value = 0;
  double error = 0;
};

// d/ds [s F(s)] at s = 0 for F with at most a simple pole at 0; central
// differences with Richardson extrapolation.
DerivativeResult sderivative(const std::function<double(double)>& F, double h0 = 0.05, double tol = 1e-6);
// lim_{s->0} G(s) for G analytic at 0 but only evaluable off 0.
DerivativeResult removable_limit(const std::function<double(double)>& G, double h0 = 0.05, double tol = 1e-8);

// d/ds s Z(h, |.|^{1+s}) at s = 0: numeric route and Laurent route.
DerivativeResult zeta_sderivative(const GlobalLineData& h);
double zeta_sderivative_laurent(const GlobalLineData& h);

}  // namespace rtf
