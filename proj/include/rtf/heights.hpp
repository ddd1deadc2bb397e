#pragma once

#include "rtf/symspace.hpp"

#include <map>

namespace rtf {

// g = n(u) diag(t, 1/t) k with k in the standard maximal compact.
struct IwasawaReal {
  double u = 0, t = 1, height = 0;
  Mat2R k{1, 0, 0, 1};
};

struct IwasawaPadic {
  long long p = 2;
  Rational u, t;
  int log_units = 0;  // height / log p
  double height = 0;
  Mat2Q k{1, 0, 0, 1};
};

IwasawaReal iwasawa_real(const Mat2R& g, double tol = 1e-9);
IwasawaPadic iwasawa_padic(const Mat2Q& g, long long p);

// Element of SL2(A): a real component and finitely many rational p-components;
// every other place carries the identity.
struct AdelicPoint {
  Mat2R infinity{1, 0, 0, 1};
  std::map<long long, Mat2Q> finite;

  AdelicPoint left_multiply(const Mat2Q& g) const;  // diagonal embedding of g
};

double height_at(const AdelicPoint& x, Place v);
double height_adelic(const AdelicPoint& x);
double weight_v(const AdelicPoint& x);

// Height of a matrix of SL2(E_v) computed with the normalized absolute value
// of E_v (sums over both factors when E_v splits).
double height_over_E(const Mat2E& g, Place v);

// Value of 1 - sum_w tau_hat(H(w a x) - T) with X = H(a), given H(x) and H(wx).
int psi_T_value(double X, double h_x, double h_wx, double T);
// Closed form of the A-integral of psi^T in its printed shape.
double psi_T_printed(double v, double T);
// Closed form obtained by integrating the two indicator regions directly.
double psi_T_direct(double v, double T);
// Adaptive Gauss-Kronrod integral of X -> psi^T.
double psi_T_quadrature(double h_x, double h_wx, double T, double* error = nullptr);

}  // namespace rtf
