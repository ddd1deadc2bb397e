#pragma once

#include "rtf/heights.hpp"
#include "rtf/linefn.hpp"

namespace rtf {

// f(x^{-1} eta x) for an adelic x; places outside f and x are basic.
double eval_conjugated(const GlobalTestFn& f, const QPoint& eta, const AdelicPoint& x);

// Denominator and real box containing every nilpotent Z with
// f(x^{-1} (1 + sqrt(tau) Z) x) != 0.
struct NilpotentBounds {
  long long denominator = 1;
  double box = 0;
};
NilpotentBounds nilpotent_bounds(const GlobalTestFn& f, const AdelicPoint& x);

struct KernelComparison {
  double direct = 0;
  double unfolded = 0;
  long long terms_direct = 0;
  long long terms_unfolded = 0;
  NilpotentBounds bounds;
};

// Sum of f(x^{-1} eta x) over the plus unipotent orbit, once by enumerating
// nilpotent lattice points and once as f(1) plus the sum over P^1(Q) and b.
KernelComparison unipotent_kernel_check(const GlobalTestFn& f, const AdelicPoint& x);

}  // namespace rtf
