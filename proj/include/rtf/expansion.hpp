#pragma once

#include "rtf/orbital.hpp"
#include "rtf/zeta.hpp"

#include <string>
#include <vector>

namespace rtf {

// Named global volumes; numeric defaults 1, user-overridable.
struct VolumeSymbols {
  double sl2 = 1;  // vol([SL2])
  double gm = 1;   // vol([G_m]^1)
  double mb = 1;   // vol([M_B']^1)
  double torus = 1;  // vol([T'])
};

struct AffineInT {
  double constant = 0;
  double slope = 0;
  double at(double T) const { return constant + slope * T; }
};

struct Term {
  std::string label;
  std::string volume;  // symbolic factor, "" when none
  double numeric = 0;  // contribution to the constant, volume included
  double slope = 0;    // contribution to the T-slope, volume included
  double error = 0;
};

struct ExpansionReport {
  GeomDatum datum;
  std::vector<Term> terms;
  AffineInT line;
  std::vector<std::string> diagnostics;

  double total_constant() const;
  double total_slope() const;
};

struct ExpansionOptions {
  VolumeSymbols vol;
  int depth = 4;
  double tol = 1e-10;
};

std::vector<XPoint> iota_fiber(const GeomDatum& d, const QuadAlg& E);

// Finite places where f or the datum is not basic.
std::vector<long long> datum_places(const GeomDatum& d, const GlobalTestFn& f);

// Representatives (t0, [[0, xi], [delta / xi, 0]]) of the classes summed for an
// elliptic datum.
struct EllipticClasses {
  std::vector<long long> places;
  std::vector<QPoint> reps;
};
EllipticClasses elliptic_classes(const GeomDatum& d, const GlobalTestFn& f);

ExpansionReport assemble_elliptic(const GeomDatum& d, const GlobalTestFn& f, const ExpansionOptions& opt = {});
ExpansionReport assemble_rss(const GeomDatum& d, const GlobalTestFn& f, const ExpansionOptions& opt = {});
ExpansionReport assemble_unipotent(int sign, const GlobalTestFn& f, const ExpansionOptions& opt = {});
ExpansionReport expand(const Rational& t0, const GlobalTestFn& f, const ExpansionOptions& opt = {});

// Line data of f_{K~} (trivial character, projective compact) or of
// int_{K'} f_k (SL2 compact) on the chart of the given sign.
GlobalLineData unipotent_line_data(const GlobalTestFn& f, int sign, const QuadraticCharacter& kappa,
                                   CompactGroup group = CompactGroup::GL2);
// lim_{s->0} [Z(f_K~, |.|^{1+s}) - r e^{-sT}/s], computed numerically.
DerivativeResult unipotent_bracket(const GlobalLineData& h, double residue, double T);

// Truncated values computed without the closed forms for the T-dependence.
std::vector<double> truncated_unipotent(int sign, const GlobalTestFn& f, const std::vector<double>& Ts,
                                        const ExpansionOptions& opt = {});
std::vector<double> truncated_rss(const GeomDatum& d, const GlobalTestFn& f, const std::vector<double>& Ts,
                                  const ExpansionOptions& opt = {});
std::vector<double> truncated_elliptic(const GeomDatum& d, const GlobalTestFn& f, const std::vector<double>& Ts,
                                       const ExpansionOptions& opt = {});

// f_M at a point of the fiber, as a product of local descents.
double levi_descend(const GlobalTestFn& f, const XPoint& eta, const ExpansionOptions& opt = {});
// Local descent at one place with an explicit Hilbert-90 choice y (x = y / conj y).
double levi_descend_local(const GlobalTestFn& f, const XPoint& eta, const QuadElem& y, Place v,
                          const ExpansionOptions& opt = {});

struct SlopeCheck {
  double slope = 0;
  double descent_sum = 0;
  double ratio = 0;
  bool inconclusive = false;
};
SlopeCheck slope_crosscheck(const GeomDatum& d, const GlobalTestFn& f, const ExpansionOptions& opt = {});

}  // namespace rtf
