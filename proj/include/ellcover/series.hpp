#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "covers.hpp"
#include "cyclo.hpp"
#include "error.hpp"
#include "field.hpp"
#include "numeric.hpp"
#include "places.hpp"

namespace ellcover {

// Integer power series helpers (coefficients of u^0..u^N).
using IntSeries = std::vector<BigInt>;

inline IntSeries int_one(unsigned N) {
  IntSeries s(N + 1);
  s[0] = 1;
  return s;
}

inline IntSeries int_mul(const IntSeries& a, const IntSeries& b) {
  IntSeries r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < r.size(); ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

/// a / b for b with constant term +-1.
inline IntSeries int_div(const IntSeries& a, const IntSeries& b) {
  if (b[0] != 1 && b[0] != -1) throw ValidationError("series division needs a unit constant term");
  IntSeries r(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    BigInt acc = a[n];
    for (std::size_t k = 1; k <= n && k < b.size(); ++k) acc -= b[k] * r[n - k];
    r[n] = acc * b[0];
  }
  return r;
}

/// Multiplies s in place by (1 + b u^d)^e; e may be negative.
inline void int_mul_binomial(IntSeries& s, const BigInt& b, unsigned d, const BigInt& e) {
  const unsigned N = static_cast<unsigned>(s.size()) - 1;
  if (d == 0 || d > N || b == 0 || e == 0) return;
  IntSeries f(N + 1);
  f[0] = 1;
  BigInt coef = 1;  // binomial(e, k) or binomial(m+k-1, k) for e = -m
  BigInt bk = 1;
  const bool neg = e < 0;
  const BigInt m = neg ? BigInt(-e) : e;
  for (unsigned k = 1; k * d <= N; ++k) {
    if (neg) {
      coef = coef * (m + k - 1) / k;
      bk *= -b;
    } else {
      if (k > m) break;
      coef = coef * (m - k + 1) / k;
      bk *= b;
    }
    f[k * d] = coef * bk;
  }
  s = int_mul(s, f);
}

/// prod_{d=1..N} (1 + b(d) u^d)^{pi(d)} with pi(1) including infinity.
template <class Coef>
IntSeries grouped_euler_product(std::uint32_t q, unsigned N, Coef b_of_degree) {
  IntSeries s = int_one(N);
  for (unsigned d = 1; d <= N; ++d) int_mul_binomial(s, BigInt(b_of_degree(d)), d, count_places_of_degree(q, d));
  return s;
}

/// sum_{i=1}^{ell-1} xi^{i t}: ell-1 when ell | t, otherwise -1.
inline long long root_sum(long long t, unsigned ell) {
  long long m = t % static_cast<long long>(ell);
  return m == 0 ? static_cast<long long>(ell) - 1 : -1;
}

inline CycloSeries series_A(const Field& F, unsigned N) {
  const unsigned ell = F.ell();
  return CycloSeries::from_integers(ell, grouped_euler_product(F.q(), N, [&](unsigned) { return ell - 1; }));
}

inline CycloSeries series_B(const Field& F, unsigned N) {
  const unsigned ell = F.ell();
  return CycloSeries::from_integers(ell, grouped_euler_product(F.q(), N, [&](unsigned d) { return root_sum(d, ell); }));
}

/// A + (ell-1) B with the constant term reduced by ell (trivial and constant-field
/// classes); the u^n coefficient counts characters of conductor degree n.
inline CycloSeries character_count_series(const Field& F, unsigned N) {
  CycloSeries s = series_A(F, N);
  CycloSeries b = series_B(F, N);
  b *= BigInt(F.ell() - 1);
  s += b;
  s[0] -= Cyclo(F.ell(), F.ell());
  if (!s.is_rational()) throw InternalError("character count series has irrational coefficients");
  return s;
}

// ---------------------------------------------------------------------------
// Conditioned series

struct SeriesOptions {
  /// Cap on N for the place-enumerated (character-twisted) path.
  unsigned max_place_degree = 14;
};

struct ConditionedSeries {
  CycloSeries series;       // constant term adjusted to 0
  BigInt raw_constant;      // u^0 coefficient before adjustment
  bool place_enumerated = false;
};

namespace detail {

/// Number of constant-field classes beta (including the trivial one) meeting the
/// conditions; these are unramified everywhere and take the value beta*deg w at w.
inline BigInt constant_classes_meeting(const Field& F, const Conditions& cs) {
  BigInt n = 0;
  for (unsigned b = 0; b < F.ell(); ++b) {
    bool ok = true;
    for (const auto& c : cs) {
      if (c.type == LocalType::Ramified) ok = false;
      const bool split = (static_cast<unsigned long long>(b) * c.place.degree()) % F.ell() == 0;
      if (c.type == LocalType::Split && !split) ok = false;
      if (c.type == LocalType::Inert && split) ok = false;
    }
    if (ok) n += 1;
  }
  return n;
}

/// Places of degree <= N outside `excluded`, grouped by (degree, E-vector) where
/// E_h is the residue exponent of the h-th split-candidate place modulo the place.
struct PlaceHistogram {
  std::map<std::pair<unsigned, std::vector<unsigned>>, BigInt> counts;
  std::vector<std::pair<unsigned, std::vector<unsigned>>> ramified;  // one entry per R place
};

inline std::vector<unsigned> e_vector(const Field& F, const Place& v, const std::vector<Place>& hs) {
  std::vector<unsigned> e(hs.size(), 0);
  if (v.infinite) return e;
  for (std::size_t h = 0; h < hs.size(); ++h) {
    if (hs[h].infinite) continue;
    const CharValue c = residue_symbol(F, hs[h].poly, v);
    if (c.zero) throw InternalError("condition place divides a place outside the exclusion set");
    e[h] = c.k;
  }
  return e;
}

inline PlaceHistogram build_histogram(const Field& F, unsigned N, const std::vector<Place>& hs,
                                      const std::vector<Place>& excluded, const std::vector<Place>& ramified) {
  PlaceHistogram out;
  auto is_in = [](const std::vector<Place>& set, const Place& v) {
    for (const auto& p : set)
      if (p == v) return true;
    return false;
  };
  auto visit = [&](const Place& v) {
    if (v.degree() > N || is_in(excluded, v)) return;
    auto key = std::make_pair(v.degree(), e_vector(F, v, hs));
    if (is_in(ramified, v))
      out.ramified.push_back(key);
    else
      out.counts[key] += 1;
  };
  visit(Place::infinity());
  IrreducibleTable lower(F, N / 2);
  for (unsigned d = 1; d <= N; ++d)
    for_each_irreducible(F, d, lower, [&](const Poly& g) { visit(Place::finite(g)); });
  return out;
}

}  // namespace detail

/// Exact truncated series whose u^n coefficient (n >= 1) counts characters of
/// conductor degree n meeting every condition. Inert conditions are expanded by
/// inclusion-exclusion over split conditions with the place held unramified.
inline ConditionedSeries conditioned_series(const Field& F, unsigned N, const Conditions& conds,
                                            const SeriesOptions& opts = {}) {
  validate_conditions(F, conds);
  const unsigned ell = F.ell();
  std::vector<Place> R, S, I;
  for (const auto& c : conds) {
    if (c.type == LocalType::Ramified) R.push_back(c.place);
    if (c.type == LocalType::Split) S.push_back(c.place);
    if (c.type == LocalType::Inert) I.push_back(c.place);
  }
  // Candidate places for split indicators: S then I.
  std::vector<Place> H = S;
  H.insert(H.end(), I.begin(), I.end());
  std::vector<Place> U = H;  // held unramified

  // k-vectors over H; a vector contributes only when sum k_h deg v_h = 0 mod ell.
  const std::size_t nh = H.size();
  std::vector<std::vector<unsigned>> kvecs;
  {
    std::vector<unsigned> k(nh, 0);
    for (;;) {
      unsigned long long K = 0;
      for (std::size_t h = 0; h < nh; ++h) K += static_cast<unsigned long long>(k[h]) * H[h].degree();
      if (K % ell == 0) kvecs.push_back(k);
      std::size_t h = 0;
      while (h < nh && ++k[h] == ell) k[h++] = 0;
      if (h == nh) break;
    }
  }
  const bool only_trivial_k = kvecs.size() == 1;

  ConditionedSeries out;
  out.place_enumerated = !only_trivial_k;
  if (!only_trivial_k && N > opts.max_place_degree)
    throw BudgetError("twisted Euler products need places up to degree " + std::to_string(N) +
                      ", above the cap of " + std::to_string(opts.max_place_degree));

  std::optional<detail::PlaceHistogram> hist;
  if (!only_trivial_k) hist = detail::build_histogram(F, N, H, U, R);

  // G_{j,k}: Euler product with place factors 1 + sum_i xi^{i t} u^{deg v},
  // t = j deg v + sum_h k_h E_h(v); R places drop the 1, U places are omitted.
  auto twisted = [&](unsigned j, const std::vector<unsigned>& k, const std::vector<bool>& active) {
    IntSeries s = int_one(N);
    auto t_of = [&](unsigned d, const std::vector<unsigned>& e) {
      unsigned long long t = static_cast<unsigned long long>(j) * d;
      for (std::size_t h = 0; h < nh; ++h)
        if (active[h]) t += static_cast<unsigned long long>(k[h]) * e[h];
      return static_cast<long long>(t % ell);
    };
    if (!hist) {
      s = grouped_euler_product(F.q(), N, [&](unsigned d) { return root_sum(static_cast<long long>(j) * d, ell); });
      for (const auto& v : R) {
        const BigInt b = root_sum(static_cast<long long>(j) * v.degree(), ell);
        IntSeries num(N + 1), den = int_one(N);
        if (v.degree() <= N) {
          num[v.degree()] = b;
          den[v.degree()] = b;
        }
        s = int_div(int_mul(s, num), den);
      }
      for (const auto& v : U) {
        IntSeries den = int_one(N);
        if (v.degree() <= N) den[v.degree()] = root_sum(static_cast<long long>(j) * v.degree(), ell);
        s = int_div(s, den);
      }
      return s;
    }
    std::map<unsigned, std::pair<BigInt, BigInt>> by_degree;  // (t = 0, t != 0)
    for (const auto& [key, cnt] : hist->counts) {
      auto& slot = by_degree[key.first];
      (t_of(key.first, key.second) == 0 ? slot.first : slot.second) += cnt;
    }
    for (const auto& [d, ab] : by_degree) {
      int_mul_binomial(s, BigInt(ell - 1), d, ab.first);
      int_mul_binomial(s, BigInt(-1), d, ab.second);
    }
    for (const auto& key : hist->ramified) {
      IntSeries mono(N + 1);
      if (key.first <= N) mono[key.first] = root_sum(t_of(key.first, key.second), ell);
      s = int_mul(s, mono);
    }
    return s;
  };

  // G(R, S', U) for the split set S' = active subset of H.
  auto G = [&](const std::vector<bool>& active) {
    std::size_t ns = 0;
    for (bool a : active) ns += a ? 1 : 0;
    CycloSeries acc(ell, N);
    for (const auto& k : kvecs) {
      bool fits = true;  // k must vanish off the active set
      for (std::size_t h = 0; h < nh; ++h)
        if (!active[h] && k[h] != 0) fits = false;
      if (!fits) continue;
      // beta-sum weight sum_r prod_h xi^{-r k_h deg v_h}
      Cyclo w(ell);
      for (unsigned r = 0; r < ell; ++r) {
        long long e = 0;
        for (std::size_t h = 0; h < nh; ++h) e -= static_cast<long long>(r) * k[h] * H[h].degree();
        w += Cyclo::root(ell, e);
      }
      if (!w.is_rational()) throw InternalError("beta-sum weight is not rational");
      for (unsigned j = 0; j < ell; ++j) {
        CycloSeries g = CycloSeries::from_integers(ell, twisted(j, k, active));
        g *= w;
        acc += g;
      }
    }
    const BigInt denom = ipow(BigInt(ell), static_cast<unsigned>(1 + ns));
    std::vector<BigInt> ints = acc.integers();
    for (auto& x : ints) {
      if (x % denom != 0) throw InternalError("conditioned series coefficient not divisible by ell^{1+|S|}");
      x /= denom;
    }
    return ints;
  };

  // Inclusion-exclusion over subsets T of the inert places.
  IntSeries total(N + 1);
  const std::size_t ni = I.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ni); ++mask) {
    std::vector<bool> active(nh, false);
    for (std::size_t h = 0; h < S.size(); ++h) active[h] = true;
    int sign = 1;
    for (std::size_t i = 0; i < ni; ++i)
      if (mask >> i & 1) {
        active[S.size() + i] = true;
        sign = -sign;
      }
    const IntSeries g = G(active);
    for (unsigned n = 0; n <= N; ++n) total[n] += sign * g[n];
  }

  out.raw_constant = total[0];
  if (total[0] != detail::constant_classes_meeting(F, conds))
    throw InternalError("conditioned series constant term disagrees with the constant-field classes");
  total[0] = 0;
  out.series = CycloSeries::from_integers(ell, total);
  return out;
}

/// Per-n defect inert_n - (ell-1) split_n for a single place.
inline std::vector<BigInt> split_inert_defect(const Field& F, const Place& v, unsigned N,
                                              const SeriesOptions& opts = {}) {
  const auto s = conditioned_series(F, N, {{v, LocalType::Split}}, opts).series.integers();
  const auto i = conditioned_series(F, N, {{v, LocalType::Inert}}, opts).series.integers();
  std::vector<BigInt> out(N + 1);
  for (unsigned n = 0; n <= N; ++n) out[n] = i[n] - BigInt(F.ell() - 1) * s[n];
  return out;
}

// ---------------------------------------------------------------------------
// ell = 2 closed forms

namespace detail {

inline void require_quadratic(const Field& F) {
  if (F.ell() != 2) throw ValidationError("closed forms are only available for ell = 2");
}

/// (1 - q u^2)(1 + s u)/(1 - s q u), s = +-1: A(u) for s = 1, A(-u) for s = -1.
inline IntSeries quadratic_A(std::uint32_t q, unsigned N, int s) {
  IntSeries num(N + 1), den = int_one(N);
  num[0] = 1;
  if (N >= 1) {
    num[1] = s;
    den[1] = -BigInt(s) * q;
  }
  if (N >= 2) num[2] = -BigInt(q);
  if (N >= 3) num[3] = -BigInt(s) * q;
  return int_div(num, den);
}

}  // namespace detail

/// Expansion of A(u) + A(-u) - 2, the exact ell = 2 counting function.
inline IntSeries quadratic_exact_series(const Field& F, unsigned N) {
  detail::require_quadratic(F);
  IntSeries a = detail::quadratic_A(F.q(), N, 1), b = detail::quadratic_A(F.q(), N, -1);
  for (unsigned n = 0; n <= N; ++n) a[n] += b[n];
  a[0] -= 2;
  return a;
}

inline BigInt quadratic_exact(const Field& F, unsigned n) { return quadratic_exact_series(F, n)[n]; }

/// The piecewise closed form: 0 for odd n, 2q^2 at n = 2, 2(q^n - q^{n-2}) for even n > 2.
inline BigInt quadratic_piecewise(std::uint32_t q, unsigned n) {
  if (n % 2 == 1 || n == 0) return 0;
  if (n == 2) return 2 * ipow(BigInt(q), 2);
  return 2 * (ipow(BigInt(q), n) - ipow(BigInt(q), n - 2));
}

/// Exact rational-function expansion of the series counting characters
/// ramified at a place of degree delta: sum over j of A_j(u) b_j u^delta/(1 + b_j u^delta).
inline IntSeries quadratic_ramified_series(const Field& F, unsigned delta, unsigned N) {
  detail::require_quadratic(F);
  IntSeries total(N + 1);
  for (int j = 0; j < 2; ++j) {
    const IntSeries a = detail::quadratic_A(F.q(), N, j == 0 ? 1 : -1);
    const BigInt b = root_sum(static_cast<long long>(j) * delta, 2);
    IntSeries num(N + 1), den = int_one(N);
    if (delta <= N) {
      num[delta] = b;
      den[delta] = b;
    }
    const IntSeries g = int_div(int_mul(a, num), den);
    for (unsigned n = 0; n <= N; ++n) total[n] += g[n];
  }
  return total;
}

/// The displayed main term (1 - q^{-2})/(1 + q^{-delta}) q^{n - delta}.
inline Rational quadratic_ramified_displayed(std::uint32_t q, unsigned delta, unsigned n) {
  const Rational Q(q);
  Rational qpow = 1;
  for (unsigned i = 0; i < delta; ++i) qpow /= Q;
  Rational main = (1 - 1 / (Q * Q)) / (1 + qpow);
  if (n >= delta) {
    for (unsigned i = 0; i < n - delta; ++i) main *= Q;
  } else {
    for (unsigned i = 0; i < delta - n; ++i) main /= Q;
  }
  return main;
}

// ---------------------------------------------------------------------------
// Constants and densities

/// Ramified, split and inert densities at a place of degree d.
inline Rational local_density(std::uint32_t q, unsigned ell, unsigned d, LocalType t) {
  Rational x = 1;
  for (unsigned i = 0; i < d; ++i) x /= q;
  const Rational den = 1 + Rational(ell - 1) * x;
  switch (t) {
    case LocalType::Ramified: return Rational(ell - 1) * x / den;
    case LocalType::Split: return 1 / (Rational(ell) * den);
    case LocalType::Inert: return Rational(ell - 1) / (Rational(ell) * den);
  }
  throw InternalError("bad LocalType");
}

inline Rational local_density(const Field& F, const Place& v, LocalType t) {
  return local_density(F.q(), F.ell(), v.degree(), t);
}

struct ConstantReport {
  unsigned D = 0;
  BigFloat value;                  // C(D)
  std::optional<Rational> exact;   // available when the j-product is empty (ell = 2)
  BigFloat next;                   // C(D+2)
  BigFloat defect;                 // |C(D) - C(D+2)|
  BigFloat tail_bound;             // C(D) sum_j j sum_{d>D} pi(d) q^{-2d}/(1-q^{-d})^2
};

/// Truncation of the leading constant to places of degree <= D. For ell >= 3 the
/// factors carry exponents pi(d) ~ q^d/d, so the product is evaluated in 100-digit
/// binary floating point via exp(pi log(.)); ell = 2 is also returned exactly.
inline BigFloat constant_C_value(std::uint32_t q, unsigned ell, unsigned D) {
  const BigFloat Q(q);
  BigFloat c = pow(1 - 1 / (Q * Q), static_cast<int>(ell - 1));
  for (unsigned k = 2; k + 2 <= ell; ++k) c /= k;
  for (unsigned j = 1; j + 2 <= ell; ++j) {
    for (unsigned d = 1; d <= D; ++d) {
      const BigFloat x = pow(Q, -static_cast<int>(d));
      const BigFloat y = BigFloat(j) * x * x / ((1 + x) * (1 + BigFloat(j) * x));
      c *= exp(BigFloat(count_places_of_degree(q, d)) * log(1 - y));
    }
  }
  return c;
}

inline ConstantReport constant_C(std::uint32_t q, unsigned ell, unsigned D) {
  if (D < 1) throw ValidationError("constant_C needs D >= 1");
  ConstantReport r;
  r.D = D;
  r.value = constant_C_value(q, ell, D);
  r.next = constant_C_value(q, ell, D + 2);
  r.defect = abs(r.value - r.next);
  if (ell == 2) r.exact = 1 - Rational(1, static_cast<long long>(q) * q);
  const BigFloat Q(q);
  BigFloat tail = 0;
  constexpr unsigned kTerms = 400;
  for (unsigned d = D + 1; d <= D + kTerms; ++d) {
    const BigFloat x = pow(Q, -static_cast<int>(d));
    tail += BigFloat(count_places_of_degree(q, d)) * x * x / ((1 - x) * (1 - x));
  }
  // pi(d) q^{-2d}/(1-q^{-d})^2 <= 4 q^{-d} beyond the summed range
  tail += 4 * pow(Q, -static_cast<int>(D + kTerms)) / (Q - 1);
  BigFloat jsum = 0;
  for (unsigned j = 1; j + 2 <= ell; ++j) jsum += j;
  r.tail_bound = r.value * jsum * tail;
  return r;
}

inline ConstantReport constant_C(const Field& F, unsigned D) { return constant_C(F.q(), F.ell(), D); }

/// Coefficient of u^n divided by C(D) q^n n^{ell-2}.
inline BigFloat main_term_ratio(const Field& F, unsigned n, unsigned D, const CycloSeries* precomputed = nullptr) {
  BigInt coef;
  if (precomputed && precomputed->N() >= n)
    coef = (*precomputed)[n].rational();
  else
    coef = character_count_series(F, n)[n].rational();
  const BigFloat main = constant_C_value(F.q(), F.ell(), D) * pow(BigFloat(F.q()), static_cast<int>(n)) *
                        pow(BigFloat(n), static_cast<int>(F.ell() - 2));
  return BigFloat(coef) / main;
}

// ---------------------------------------------------------------------------
// Series dump format

struct SeriesDump {
  std::uint32_t q = 0;
  unsigned ell = 0;
  std::string construction;
  CycloSeries series;
};

/// "ellcover-series 1", then q/ell/N/construction lines, one "<n> <c_0> ... <c_{ell-2}>"
/// line per coefficient, and a closing "end".
inline void write_series(std::ostream& os, const SeriesDump& d) {
  os << "ellcover-series 1\n";
  os << "q " << d.q << "\n";
  os << "ell " << d.ell << "\n";
  os << "N " << d.series.N() << "\n";
  os << "construction " << d.construction << "\n";
  for (unsigned n = 0; n <= d.series.N(); ++n) {
    os << n;
    for (const auto& c : d.series[n].coeffs()) os << " " << c.str();
    os << "\n";
  }
  os << "end\n";
}

inline SeriesDump read_series(std::istream& is) {
  auto fail = [](const std::string& why) -> SeriesDump { throw ValidationError("bad series dump: " + why); };
  std::string line;
  if (!std::getline(is, line) || line != "ellcover-series 1") return fail("missing or unsupported header");
  SeriesDump d;
  unsigned N = 0;
  auto field = [&](const std::string& key) {
    if (!std::getline(is, line) || line.rfind(key + " ", 0) != 0) fail("expected '" + key + "' line");
    return line.substr(key.size() + 1);
  };
  try {
    d.q = static_cast<std::uint32_t>(std::stoul(field("q")));
    d.ell = static_cast<unsigned>(std::stoul(field("ell")));
    N = static_cast<unsigned>(std::stoul(field("N")));
  } catch (const std::logic_error&) {
    return fail("non-numeric header value");
  }
  if (d.ell < 2) return fail("ell must be >= 2");
  d.construction = field("construction");
  d.series = CycloSeries(d.ell, N);
  for (unsigned n = 0; n <= N; ++n) {
    if (!std::getline(is, line)) return fail("truncated coefficient list");
    std::istringstream ls(line);
    unsigned idx = 0;
    if (!(ls >> idx) || idx != n) return fail("coefficient index mismatch at line for u^" + std::to_string(n));
    std::vector<BigInt> c;
    std::string tok;
    while (ls >> tok) {
      try {
        c.emplace_back(tok);
      } catch (const std::exception&) {
        return fail("non-integer coefficient '" + tok + "'");
      }
    }
    if (c.size() != d.ell - 1) return fail("wrong number of components for u^" + std::to_string(n));
    d.series[n] = Cyclo(d.ell, std::move(c));
  }
  if (!std::getline(is, line) || line != "end") return fail("missing end marker");
  return d;
}

}  // namespace ellcover
