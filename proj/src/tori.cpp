#include "rtf/tori.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace rtf {

BiquadraticData BiquadraticData::make(const QuadAlg& E, const QuadAlg& L) {
  if (E.is_split()) throw DomainError("biquadratic data needs E to be a field");
  return {E, L, reflect(L, E)};
}

std::string BiquadraticData::tag() const {
  const bool distinct = !(E == L) && !(E == Lp) && !(L == Lp);
  return distinct && !L.is_split() && !Lp.is_split() ? "field" : "split-type";
}

std::string ToriPair::label() const {
  const std::string stab = L.is_split() ? "G_m" : "Nm^1_{" + L.name() + "/Q}";
  return "(Res_{" + E.name() + "/Q} G_m, " + stab + ")";
}

std::vector<ToriPair> classify_structures(const BiquadraticData& m) {
  return {{m.E, m.L}, {m.E, m.Lp}};
}

QuadAlg symmetric_space_of(const ToriPair& pair) { return reflect(pair.L, pair.E); }

namespace {

using Poly = std::vector<Integer>;  // ascending

Poly divide_exact(Poly num, const Poly& den) {
  const size_t dn = den.size() - 1;
  Poly q(num.size() - dn, 0);
  for (size_t i = num.size(); i-- > dn;) {
    const Integer c = num[i] / den[dn];
    q[i - dn] = c;
    for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

Poly cyclotomic_poly(int M) {
  static std::map<int, Poly> memo;
  static std::recursive_mutex lock;
  std::lock_guard guard(lock);
  if (auto it = memo.find(M); it != memo.end()) return it->second;
  Poly p(M + 1, 0);
  p[0] = -1, p[M] = 1;
  for (int d = 1; d < M; ++d)
    if (M % d == 0) p = divide_exact(p, cyclotomic_poly(d));
  return memo[M] = p;
}

}  // namespace

Cyclotomic::Cyclotomic(int M) : M_(M), phi_(cyclotomic_poly(M)) {}

std::vector<Rational> Cyclotomic::reduce(const std::vector<Rational>& by_exponent) const {
  const int deg = degree();
  std::vector<Rational> r(std::max<int>(M_, deg), 0);
  for (size_t e = 0; e < by_exponent.size(); ++e) r[e % M_] += by_exponent[e];
  for (int i = static_cast<int>(r.size()) - 1; i >= deg; --i) {
    const Rational c = r[i];
    if (c == 0) continue;
    for (int j = 0; j <= deg; ++j) r[i - deg + j] -= c * Rational(phi_[j]);
  }
  r.resize(deg);
  return r;
}

bool Cyclotomic::is_rational(const std::vector<Rational>& v, Rational* value) {
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] != 0) return false;
  if (value) *value = v.empty() ? Rational(0) : v[0];
  return true;
}

int FiniteTorusModel::mul(int a, int b) const {
  const auto [x1, y1] = elements[a];
  const auto [x2, y2] = elements[b];
  const long long dm = ((d % N) + N) % N;
  const long long x = (x1 * x2 + dm * (y1 * y2 % N)) % N, y = (x1 * y2 + x2 * y1) % N;
  return index[x * N + y];
}

int FiniteTorusModel::pairing(int chi, int a) const {
  long long s = 0;
  for (size_t i = 0; i < basis.size(); ++i) s += static_cast<long long>(coords[a][i]) * characters[chi][i];
  return static_cast<int>(s % exponent);
}

namespace {

std::vector<int> closure(const FiniteTorusModel& m, int identity, const std::vector<int>& gens) {
  std::vector<int> out{identity};
  std::vector<char> seen(m.size(), 0);
  seen[identity] = 1;
  for (size_t i = 0; i < out.size(); ++i)
    for (int g : gens) {
      const int h = m.mul(out[i], g);
      if (!seen[h]) seen[h] = 1, out.push_back(h);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FiniteTorusModel FiniteTorusModel::build(long long N, long long d, std::mt19937_64& rng, int gamma_generators) {
  if (N < 2) throw DomainError("finite torus model needs N >= 2");
  FiniteTorusModel m;
  m.N = N, m.d = d;
  m.index.assign(N * N, -1);
  const long long dm = ((d % N) + N) % N;
  for (long long x = 0; x < N; ++x)
    for (long long y = 0; y < N; ++y) {
      const long long nm = ((x * x - dm * (y * y % N)) % N + N) % N;
      if (std::gcd(nm, N) == 1) {
        m.index[x * N + y] = static_cast<int>(m.elements.size());
        m.elements.emplace_back(x, y);
      }
    }
  const int n = m.size(), one = m.index[1 * N + 0];

  // Triangular basis: each new generator's first power landing in the span.
  m.coords.assign(n, {});
  std::vector<char> in_span(n, 0);
  std::vector<int> span{one};
  in_span[one] = 1;
  while (static_cast<int>(span.size()) < n) {
    int g = 0;
    while (in_span[g]) ++g;
    const size_t k = m.basis.size();
    for (int s : span) m.coords[s].push_back(0);
    int pw = g, order = 1;
    while (!in_span[pw]) pw = m.mul(pw, g), ++order;
    std::vector<int> rel(m.coords[pw].begin(), m.coords[pw].begin() + k);
    m.basis.push_back(g);
    m.orders.push_back(order);
    m.relations.push_back(rel);
    std::vector<int> grown;
    for (int s : span) {
      int cur = s;
      for (int j = 1; j < order; ++j) {
        cur = m.mul(cur, g);
        m.coords[cur] = m.coords[s];
        m.coords[cur][k] = j;
        in_span[cur] = 1;
        grown.push_back(cur);
      }
    }
    span.insert(span.end(), grown.begin(), grown.end());
  }

  for (int a = 0; a < n; ++a) {
    int pw = a, order = 1;
    while (pw != one) pw = m.mul(pw, a), ++order;
    m.exponent = std::lcm(m.exponent, order);
  }

  // Characters by backtracking on n_i c_i = sum_j r_ij c_j (mod M).
  const int M = m.exponent, k = static_cast<int>(m.basis.size());
  std::vector<int> c(k, 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == k) {
      m.characters.push_back(c);
      return;
    }
    long long rhs = 0;
    for (int j = 0; j < i; ++j) rhs += static_cast<long long>(m.relations[i][j]) * c[j];
    for (int ci = 0; ci < M; ++ci) {
      if ((static_cast<long long>(m.orders[i]) * ci - rhs) % M != 0) continue;
      c[i] = ci;
      self(self, i + 1);
    }
  };
  rec(rec, 0);

  for (int a = 0; a < n; ++a)
    if (m.elements[a].second == 0) m.H.push_back(a);

  std::uniform_int_distribution<long long> coef(-60, 60);
  while (static_cast<int>(m.gamma_gens.size()) < gamma_generators) {
    const long long x = coef(rng), y = coef(rng);
    const long long nm = x * x - d * y * y;
    if (nm == 0 || std::gcd(std::llabs(nm), N) != 1) continue;
    m.gamma_gens.push_back(m.index[((x % N + N) % N) * N + (y % N + N) % N]);
  }
  std::vector<int> gens = m.H;
  gens.insert(gens.end(), m.gamma_gens.begin(), m.gamma_gens.end());
  m.gamma_H = closure(m, one, gens);

  m.coset.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (m.coset[a] >= 0) continue;
    for (int h : m.H) m.coset[m.mul(a, h)] = m.coset_count;
    ++m.coset_count;
  }
  return m;
}

bool FiniteTorusModel::check_consistency() const {
  if (static_cast<int>(characters.size()) != size()) return false;
  long long prod = 1;
  for (int o : orders) prod *= o;
  if (prod != size()) return false;
  // Spot-check multiplicativity on the basis against every element.
  for (size_t chi = 0; chi < characters.size(); chi += std::max<size_t>(1, characters.size() / 8))
    for (int a = 0; a < size(); ++a)
      for (int g : basis)
        if ((pairing(chi, a) + pairing(chi, g)) % exponent != pairing(chi, mul(a, g))) return false;
  return size() % static_cast<int>(H.size()) == 0 && size() % static_cast<int>(gamma_H.size()) == 0;
}

std::vector<Rational> match_test_function(const FiniteTorusModel& m, const QuotientFn& f, bool section) {
  if (static_cast<int>(f.size()) != m.coset_count) throw DomainError("function size does not match the quotient");
  std::vector<Rational> phi(m.size(), 0);
  const Rational inv_h = Rational(1) / static_cast<long long>(m.H.size());
  std::vector<char> taken(m.coset_count, 0);
  for (int a = 0; a < m.size(); ++a) {
    const int c = m.coset[a];
    if (!section) {
      phi[a] = f[c] * inv_h;
    } else if (!taken[c]) {
      taken[c] = 1;
      phi[a] = f[c];
    }
  }
  return phi;
}

std::vector<Rational> average_over_H(const FiniteTorusModel& m, const std::vector<Rational>& phi) {
  std::vector<Rational> f(m.coset_count, 0);
  for (int a = 0; a < m.size(); ++a) f[m.coset[a]] += phi[a];
  return f;
}

PoissonSides finite_poisson(const FiniteTorusModel& m, const QuotientFn& f, bool section) {
  PoissonSides out;
  std::set<int> rational_cosets;
  for (int g : m.gamma_H) rational_cosets.insert(m.coset[g]);
  out.geom = 0;
  for (int c : rational_cosets) out.geom += f[c];

  const std::vector<Rational> phi = match_test_function(m, f, section);
  const int M = m.exponent;
  std::vector<Rational> by_exp(M, 0);
  for (size_t chi = 0; chi < m.characters.size(); ++chi) {
    bool orthogonal = true;
    for (int g : m.gamma_H)
      if (m.pairing(chi, g) != 0) {
        orthogonal = false;
        break;
      }
    if (!orthogonal) continue;
    for (int a = 0; a < m.size(); ++a)
      if (phi[a] != 0) by_exp[(M - m.pairing(chi, a)) % M] += phi[a];
  }
  const Rational scale = Rational(static_cast<long long>(m.gamma_H.size())) / static_cast<long long>(m.size());
  for (auto& v : by_exp) v *= scale;
  out.spec = Cyclotomic(M).reduce(by_exp);
  Rational s;
  out.equal = Cyclotomic::is_rational(out.spec, &s) && s == out.geom;
  return out;
}

}  // namespace rtf
