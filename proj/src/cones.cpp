#include "rtf/cones.hpp"

#include <algorithm>
#include <sstream>

namespace rtf {

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DomainError("dimension mismatch");
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a);
  for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a);
  for (size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

Vec operator*(const Rational& s, const Vec& a) {
  Vec r(a);
  for (auto& x : r) x *= s;
  return r;
}

namespace {

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// Positive multiples are identified.
bool same_ray(const Vec& a, const Vec& b) {
  if (a.size() == 1) return (a[0] > 0) == (b[0] > 0);
  return a[0] * b[1] == a[1] * b[0] && dot(a, b) > 0;
}

Vec unit_vec(int n, int i, int sign) {
  Vec v(n, Rational(0));
  v[i] = sign;
  return v;
}

int rank_of(const std::vector<Vec>& gens, int n) {
  if (gens.empty()) return 0;
  if (n == 1) return 1;
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i][0] * gens[j][1] - gens[i][1] * gens[j][0] != 0) return 2;
  return 1;
}

}  // namespace

Cone::Cone(int ambient_dim, std::vector<Vec> generators) : n_(ambient_dim) {
  if (n_ < 1 || n_ > 2) throw DomainError("cones are supported in dimension 1 or 2");
  for (auto& g : generators) {
    if (static_cast<int>(g.size()) != n_) throw DomainError("generator of wrong dimension");
    if (is_zero(g)) continue;
    bool dup = std::any_of(gens_.begin(), gens_.end(), [&](const Vec& h) { return same_ray(g, h); });
    if (!dup) gens_.push_back(g);
  }
  // Dual generators by candidate filtering; in dimension <= 2 every extreme
  // ray of the dual lies on some g-perp or the dual is spanned by +-e_i.
  std::vector<Vec> cand;
  for (int i = 0; i < n_; ++i)
    for (int s : {1, -1}) cand.push_back(unit_vec(n_, i, s));
  if (n_ == 2)
    for (const auto& g : gens_) {
      cand.push_back({-g[1], g[0]});
      cand.push_back({g[1], -g[0]});
    }
  for (const auto& v : cand) {
    bool ok = std::all_of(gens_.begin(), gens_.end(), [&](const Vec& g) { return dot(v, g) >= 0; });
    if (!ok) continue;
    bool dup = std::any_of(dual_.begin(), dual_.end(), [&](const Vec& h) { return same_ray(v, h); });
    if (!dup) dual_.push_back(v);
  }
}

Cone Cone::origin(int n) { return Cone(n, {}); }

Cone Cone::whole(int n) {
  std::vector<Vec> g;
  for (int i = 0; i < n; ++i)
    for (int s : {1, -1}) g.push_back(unit_vec(n, i, s));
  return Cone(n, g);
}

int Cone::dim() const { return rank_of(gens_, n_); }

bool Cone::contains(const Vec& x) const {
  return std::all_of(dual_.begin(), dual_.end(), [&](const Vec& v) { return dot(v, x) >= 0; });
}

bool Cone::in_relative_interior(const Vec& x) const {
  if (!contains(x)) return false;
  for (const auto& v : dual_) {
    bool implicit = std::all_of(gens_.begin(), gens_.end(), [&](const Vec& g) { return dot(v, g) == 0; });
    if (!implicit && dot(v, x) <= 0) return false;
  }
  return true;
}

bool Cone::contains(const Cone& other) const {
  return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const Vec& g) { return contains(g); });
}

std::vector<Cone> Cone::faces() const {
  std::vector<Cone> out;
  const size_t m = dual_.size();
  for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
    Vec v(n_, Rational(0));
    for (size_t i = 0; i < m; ++i)
      if (mask & (size_t{1} << i)) v = v + dual_[i];
    std::vector<Vec> fg;
    for (const auto& g : gens_)
      if (dot(v, g) == 0) fg.push_back(g);
    Cone F(n_, fg);
    bool dup = std::any_of(out.begin(), out.end(), [&](const Cone& G) { return G.same_set(F); });
    if (!dup) out.push_back(F);
  }
  std::stable_sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) { return a.dim() < b.dim(); });
  return out;
}

bool Cone::is_face_of(const Cone& C) const {
  auto fs = C.faces();
  return std::any_of(fs.begin(), fs.end(), [&](const Cone& F) { return F.same_set(*this); });
}

Cone Cone::minimal_face() const { return faces().front(); }

Vec Cone::project_to_span(const Vec& x) const {
  std::vector<Vec> basis;
  for (const auto& g : gens_) {
    Vec w = g;
    for (const auto& b : basis) w = w - (dot(w, b) / dot(b, b)) * b;
    if (!is_zero(w)) basis.push_back(w);
    if (static_cast<int>(basis.size()) == n_) break;
  }
  Vec r(n_, Rational(0));
  for (const auto& b : basis) r = r + (dot(x, b) / dot(b, b)) * b;
  return r;
}

std::string Cone::str() const {
  std::ostringstream os;
  os << "cone{";
  for (size_t i = 0; i < gens_.size(); ++i) {
    os << (i ? ", " : "") << "(";
    for (int j = 0; j < n_; ++j) os << (j ? "," : "") << gens_[i][j];
    os << ")";
  }
  os << "}";
  return os.str();
}

Cone dual_cone(const Cone& C) { return Cone(C.ambient_dim(), C.dual_generators()); }

Cone angle_cone(const Cone& F, const Cone& C) {
  if (!F.is_face_of(C)) throw DomainError("angle_cone: first argument is not a face of the second");
  std::vector<Vec> g = C.generators();
  for (const auto& f : F.generators()) {
    g.push_back(f);
    g.push_back(Rational(-1) * f);
  }
  return Cone(C.ambient_dim(), g);
}

IndicatorFn rint_indicator(const Cone& C) {
  return [C](const Vec& x) { return C.in_relative_interior(x) ? 1 : 0; };
}

bool ParabolicLabel::contained_in(const ParabolicLabel& Q) const {
  return Q.closed_chamber.is_face_of(closed_chamber);
}

ParabolicLabel label_B() { return {"B", Cone(1, {{Rational(1)}})}; }
ParabolicLabel label_G() { return {"G", Cone::origin(1)}; }
std::vector<ParabolicLabel> rank_one_labels() { return {label_B(), label_G()}; }

static void require_contained(const ParabolicLabel& P, const ParabolicLabel& Q) {
  if (!P.contained_in(Q)) throw DomainError(P.tag + " is not contained in " + Q.tag);
}

int epsilon(const ParabolicLabel& P, const ParabolicLabel& Q) {
  require_contained(P, Q);
  return ((P.split_rank() - Q.split_rank()) % 2) ? -1 : 1;
}

IndicatorFn tau(const ParabolicLabel& P, const ParabolicLabel& Q) {
  require_contained(P, Q);
  return rint_indicator(angle_cone(Q.closed_chamber, P.closed_chamber));
}

IndicatorFn tau_hat(const ParabolicLabel& P, const ParabolicLabel& Q) {
  require_contained(P, Q);
  return rint_indicator(dual_cone(angle_cone(Q.closed_chamber, P.closed_chamber)));
}

namespace {

// One signed term [rint A](H) * [rint D](H - shift) of a face sum.
struct FaceTerm {
  int sign;
  Cone angle;
  Cone dual;
};

std::vector<FaceTerm> sigma_terms(const Cone& F, const Cone& C) {
  std::vector<FaceTerm> out;
  for (const Cone& E : F.faces())
    out.push_back({((F.dim() - E.dim()) % 2) ? -1 : 1, angle_cone(E, C), dual_cone(E)});
  return out;
}

std::vector<FaceTerm> gamma_terms(const Cone& C) {
  const int d0 = C.minimal_face().dim();
  std::vector<FaceTerm> out;
  for (const Cone& F : C.faces())
    out.push_back({((F.dim() - d0) % 2) ? -1 : 1, angle_cone(F, C), dual_cone(F)});
  return out;
}

int eval_terms(const std::vector<FaceTerm>& terms, const Vec& H, const Vec& HX) {
  int total = 0;
  for (const auto& t : terms)
    if (t.angle.in_relative_interior(H) && t.dual.in_relative_interior(HX)) total += t.sign;
  return total;
}

}  // namespace

int sigma_cone(const Cone& F, const Cone& C, const Vec& H) {
  return eval_terms(sigma_terms(F, C), H, H);
}

int gamma_cone(const Cone& C, const Vec& H, const Vec& X) {
  return eval_terms(gamma_terms(C), H, H - X);
}

IndicatorFn sigma(const ParabolicLabel& P1, const ParabolicLabel& P2) {
  require_contained(P1, P2);
  auto terms = sigma_terms(P2.closed_chamber, P1.closed_chamber);
  return [terms](const Vec& H) { return eval_terms(terms, H, H); };
}

IndicatorDifferenceFn gamma(const ParabolicLabel& P, const ParabolicLabel& Q) {
  require_contained(P, Q);
  auto terms = gamma_terms(angle_cone(Q.closed_chamber, P.closed_chamber));
  return [terms](const Vec& H, const Vec& X) { return eval_terms(terms, H, H - X); };
}

}  // namespace rtf
