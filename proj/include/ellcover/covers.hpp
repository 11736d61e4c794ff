#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "numeric.hpp"
#include "places.hpp"
#include "poly.hpp"

namespace ellcover {

/// beta * f_1 f_2^2 ... f_{ell-1}^{ell-1} modulo ell-th powers, with beta = mu^beta_exp
/// and the f_i monic, square-free and pairwise coprime (unused slots hold 1).
struct KummerClass {
  unsigned beta_exp = 0;
  std::vector<Poly> factors;

  friend bool operator==(const KummerClass& a, const KummerClass& b) {
    return a.beta_exp == b.beta_exp && a.factors == b.factors;
  }
  /// (beta_exp, f_1, ..., f_{ell-1}) compared lexicographically in place order.
  friend bool operator<(const KummerClass& a, const KummerClass& b) {
    if (a.beta_exp != b.beta_exp) return a.beta_exp < b.beta_exp;
    for (std::size_t i = 0; i < a.factors.size() && i < b.factors.size(); ++i) {
      if (a.factors[i] < b.factors[i]) return true;
      if (b.factors[i] < a.factors[i]) return false;
    }
    return a.factors.size() < b.factors.size();
  }
};

inline std::string to_string(const Field& F, const KummerClass& c) {
  std::string s = "beta=mu^" + std::to_string(c.beta_exp) + " [";
  for (std::size_t i = 0; i < c.factors.size(); ++i) s += (i ? ", " : "") + to_string(F, c.factors[i]);
  return s + "]";
}

inline std::vector<unsigned> factor_degrees(const KummerClass& c) {
  std::vector<unsigned> d;
  for (const auto& f : c.factors) d.push_back(static_cast<unsigned>(f.degree()));
  return d;
}

inline bool is_trivial(const KummerClass& c) {
  if (c.beta_exp != 0) return false;
  for (const auto& f : c.factors)
    if (!f.is_one()) return false;
  return true;
}

inline void validate_class(const Field& F, const KummerClass& c) {
  if (c.factors.size() != F.ell() - 1)
    throw ValidationError("Kummer class needs exactly ell-1 factors, got " + std::to_string(c.factors.size()));
  if (c.beta_exp >= F.ell()) throw ValidationError("beta exponent must lie in [0, ell)");
  for (const auto& f : c.factors) {
    if (!f.is_monic()) throw ValidationError("Kummer factor " + to_string(F, f) + " is not monic");
    if (!is_squarefree(F, f)) throw ValidationError("Kummer factor " + to_string(F, f) + " is not square-free");
  }
  for (std::size_t i = 0; i < c.factors.size(); ++i)
    for (std::size_t j = i + 1; j < c.factors.size(); ++j)
      if (gcd(F, c.factors[i], c.factors[j]).degree() > 0)
        throw ValidationError("Kummer factors are not pairwise coprime");
}

inline KummerClass make_class(const Field& F, unsigned beta_exp, std::vector<Poly> factors) {
  KummerClass c{beta_exp, std::move(factors)};
  validate_class(F, c);
  return c;
}

/// The polynomial beta * prod f_i^i.
inline Poly representative(const Field& F, const KummerClass& c) {
  Poly r = Poly::constant(F.exp(c.beta_exp));
  for (std::size_t i = 0; i < c.factors.size(); ++i) r = mul(F, r, pow(F, c.factors[i], static_cast<unsigned>(i + 1)));
  return r;
}

/// F^k reduced to normal form: f_i moves to slot i*k mod ell, beta_exp becomes beta_exp*k.
inline KummerClass power(const KummerClass& c, unsigned k, unsigned ell) {
  if (k % ell == 0) throw ValidationError("power must be prime to ell");
  KummerClass r;
  r.beta_exp = static_cast<unsigned>((static_cast<unsigned long long>(c.beta_exp) * k) % ell);
  r.factors.assign(ell - 1, Poly::one());
  for (unsigned i = 1; i < ell; ++i) r.factors[(static_cast<unsigned long long>(i) * k) % ell - 1] = c.factors[i - 1];
  return r;
}

/// Smallest class in the orbit {F^k : 1 <= k < ell}; one per extension field.
inline KummerClass canonical(const KummerClass& c, unsigned ell) {
  KummerClass best = c;
  for (unsigned k = 2; k < ell; ++k) {
    KummerClass p = power(c, k, ell);
    if (p < best) best = std::move(p);
  }
  return best;
}

inline bool is_canonical(const KummerClass& c, unsigned ell) {
  for (unsigned k = 2; k < ell; ++k)
    if (power(c, k, ell) < c) return false;
  return true;
}

/// Conductor degree from the factor degrees: sum d_i, plus one when infinity ramifies.
inline unsigned conductor_degree(const std::vector<unsigned>& d, unsigned ell) {
  unsigned s = 0, w = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    s += d[i];
    w = static_cast<unsigned>((w + static_cast<unsigned long long>(i + 1) * d[i]) % ell);
  }
  return s + (w != 0 ? 1u : 0u);
}

struct Conductor {
  std::vector<Place> finite_support;
  bool infinity_ramified = false;
  unsigned degree = 0;
  unsigned disc_degree = 0;
};

inline Conductor conductor_of(const Field& F, const KummerClass& c) {
  // Constant-field classes (all f_i = 1) are unramified everywhere.
  bool constant = true;
  for (const auto& f : c.factors) constant = constant && f.is_one();
  if (constant) throw ValidationError("no conductor for trivial class");
  Conductor out;
  for (const auto& f : c.factors)
    for (const auto& [g, m] : poly_factor(F, f).factors) out.finite_support.push_back(Place::finite(g));
  std::sort(out.finite_support.begin(), out.finite_support.end());
  const auto d = factor_degrees(c);
  unsigned w = 0;
  for (std::size_t i = 0; i < d.size(); ++i) w = (w + static_cast<unsigned>(i + 1) * d[i]) % F.ell();
  out.infinity_ramified = w != 0;
  out.degree = conductor_degree(d, F.ell());
  out.disc_degree = (F.ell() - 1) * out.degree;
  return out;
}

inline unsigned genus_from_conductor(unsigned ell, unsigned n) {
  if (n < 2) throw ValidationError("conductor degree below 2 has no genus");
  const unsigned twice = (ell - 1) * (n - 2);
  if (twice % 2 != 0) throw InternalError("non-integral genus");
  return twice / 2;
}

/// n = 2g/(ell-1) + 2; rejects genera for which this is not an integer.
inline unsigned conductor_from_genus(unsigned ell, unsigned g) {
  if ((2 * g) % (ell - 1) != 0)
    throw ValidationError("genus " + std::to_string(g) + " is not attained for ell=" + std::to_string(ell));
  return 2 * g / (ell - 1) + 2;
}

inline unsigned genus_of(const Field& F, const KummerClass& c) {
  return genus_from_conductor(F.ell(), conductor_of(F, c).degree);
}

/// Character of the class at a place: Zero when ramified, else the residue
/// exponent of beta * prod f_i^i (at infinity, the class of beta).
inline CharValue class_character(const Field& F, const KummerClass& c, const Place& v) {
  const unsigned ell = F.ell();
  if (v.infinite) {
    unsigned w = 0;
    for (std::size_t i = 0; i < c.factors.size(); ++i)
      w = (w + static_cast<unsigned>(i + 1) * static_cast<unsigned>(c.factors[i].degree())) % ell;
    if (w != 0) return CharValue::Zero();
    return CharValue::Exp(c.beta_exp, ell);
  }
  const unsigned dv = v.degree();
  const CharValue beta = CharValue::Exp(static_cast<long long>(c.beta_exp) * dv, ell);
  if (dv == 1) {
    const Elem x0 = F.neg(v.poly.c[0]);
    Elem val = 1;
    for (std::size_t i = 0; i < c.factors.size(); ++i) val = F.mul(val, F.pow(eval(F, c.factors[i], x0), i + 1));
    return constant_symbol(F, val).times(beta, ell);
  }
  Poly a = Poly::one();
  for (std::size_t i = 0; i < c.factors.size(); ++i) {
    if (c.factors[i].is_one()) continue;
    const Poly r = mod(F, c.factors[i], v.poly);
    if (r.is_zero()) return CharValue::Zero();
    for (std::size_t k = 0; k <= i; ++k) a = mulmod(F, a, r, v.poly);
  }
  return constant_symbol(F, resultant(F, v.poly, a)).times(beta, ell);
}

inline SplittingType splitting_type(const Field& F, const KummerClass& c, const Place& v) {
  return SplittingType::from_char(class_character(F, c, v), F.ell());
}

/// #C(F_{q^m}) = sum of r(v) f(v) deg v over places with f(v) deg v dividing m.
inline std::uint64_t point_count(const Field& F, const KummerClass& c, unsigned m, const PlaceTable& table) {
  if (m < 1) throw ValidationError("point_count needs m >= 1");
  if (table.max_degree() < m) throw ValidationError("place table too small for point_count");
  std::uint64_t total = 0;
  for (const Place& v : table.places()) {
    const unsigned d = v.degree();
    if (d > m || m % d != 0) continue;
    const SplittingType st = splitting_type(F, c, v);
    if (m % (st.f * d) == 0) total += static_cast<std::uint64_t>(st.r) * st.f * d;
  }
  return total;
}

inline std::uint64_t point_count(const Field& F, const KummerClass& c, unsigned m) {
  return point_count(F, c, m, PlaceTable(F, m));
}

/// Coefficients a_0..a_{2g} of P_C(u), where Z_C(u) = P_C(u)/((1-u)(1-qu)).
inline std::vector<BigInt> zeta_numerator(const Field& F, const KummerClass& c, unsigned max_genus = 8) {
  const unsigned g = genus_of(F, c);
  if (g > max_genus) throw BudgetError("zeta_numerator: genus " + std::to_string(g) + " exceeds budget");
  if (g == 0) return {BigInt(1)};
  const PlaceTable table(F, 2 * g);
  std::vector<BigInt> S(2 * g + 1);
  for (unsigned m = 1; m <= 2 * g; ++m)
    S[m] = BigInt(point_count(F, c, m, table)) - 1 - ipow(BigInt(F.q()), m);
  std::vector<BigInt> a(2 * g + 1);
  a[0] = 1;
  for (unsigned m = 1; m <= 2 * g; ++m) {
    BigInt acc = 0;
    for (unsigned i = 1; i <= m; ++i) acc += S[i] * a[m - i];
    if (acc % m != 0) throw InternalError("zeta_numerator: non-integral coefficient");
    a[m] = acc / m;
  }
  return a;
}

// ---------------------------------------------------------------------------
// Enumeration

struct EnumOptions {
  unsigned shards = 1;
  bool force_budget = false;
  std::uint64_t budget = 1000000000ULL;
};

/// Degree tuples (d_1..d_{ell-1}) of conductor degree exactly n.
inline std::vector<std::vector<unsigned>> degree_tuples(unsigned ell, unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> d(ell - 1, 0);
  auto rec = [&](auto&& self, std::size_t slot, unsigned left) -> void {
    if (slot + 1 == d.size()) {
      d[slot] = left;
      if (conductor_degree(d, ell) == n) out.push_back(d);
      return;
    }
    for (unsigned x = 0; x <= left; ++x) {
      d[slot] = x;
      self(self, slot + 1, left - x);
    }
  };
  for (unsigned total : {n - 1, n}) {
    if (n == 0 && total != 0) continue;
    rec(rec, 0, total);
  }
  return out;
}

/// Size of the nested-loop candidate space prod q^{d_i}, summed over degree tuples.
inline BigInt candidate_space(const Field& F, unsigned n) {
  BigInt total = 0;
  for (const auto& d : degree_tuples(F.ell(), n)) {
    BigInt t = 1;
    for (unsigned x : d) t *= ipow(BigInt(F.q()), x);
    total += t;
  }
  return total;
}

inline void check_budget(const Field& F, unsigned n, const EnumOptions& opts) {
  if (opts.force_budget) return;
  const BigInt space = candidate_space(F, n);
  if (space > opts.budget)
    throw BudgetError("enumeration of conductor degree " + std::to_string(n) + " needs " + space.str() +
                      " candidates, above the budget of " + std::to_string(opts.budget) + " (use --force-budget)");
}

namespace detail {

struct SquarefreeList {
  std::vector<std::uint64_t> index;
  std::vector<Poly> polys;
};

/// Monic square-free polynomials by degree, shared read-only by all workers.
class SquarefreeCache {
 public:
  SquarefreeCache(const Field& F, const std::vector<std::vector<unsigned>>& tuples) {
    unsigned maxd = 0;
    for (const auto& t : tuples)
      for (unsigned x : t) maxd = std::max(maxd, x);
    lists_.resize(maxd + 1);
    std::vector<bool> need(maxd + 1, false);
    for (const auto& t : tuples)
      for (unsigned x : t) need[x] = true;
    for (unsigned d = 0; d <= maxd; ++d) {
      if (!need[d]) continue;
      const std::uint64_t total = monic_count(F, d);
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        Poly f = monic_from_index(F, d, idx);
        if (is_squarefree(F, f)) {
          lists_[d].index.push_back(idx);
          lists_[d].polys.push_back(std::move(f));
        }
      }
    }
  }
  const SquarefreeList& of_degree(unsigned d) const { return lists_.at(d); }

 private:
  std::vector<SquarefreeList> lists_;
};

}  // namespace detail

/// A shard of the enumeration: one degree tuple, with the first nonconstant
/// factor restricted to a range of monic indices (one top coefficient).
struct WorkUnit {
  std::vector<unsigned> dvec;
  std::size_t slot = 0;
  std::uint64_t begin = 0, end = 0;
};

inline std::vector<WorkUnit> work_units(const Field& F, const std::vector<std::vector<unsigned>>& tuples) {
  std::vector<WorkUnit> units;
  for (const auto& d : tuples) {
    std::size_t slot = 0;
    while (slot < d.size() && d[slot] == 0) ++slot;
    if (slot == d.size()) {
      units.push_back({d, 0, 0, 1});
      continue;
    }
    const std::uint64_t total = monic_count(F, d[slot]);
    const std::uint64_t chunk = total / F.q();
    for (std::uint32_t top = 0; top < F.q(); ++top) units.push_back({d, slot, top * chunk, (top + 1) * chunk});
  }
  return units;
}

/// Visits every square-free pairwise-coprime tuple of one work unit.
template <class Fn>
void enumerate_unit(const Field& F, const detail::SquarefreeCache& sf, const WorkUnit& u, Fn&& fn) {
  const std::size_t slots = u.dvec.size();
  std::vector<Poly> cur(slots, Poly::one());
  auto rec = [&](auto&& self, std::size_t slot) -> void {
    if (slot == slots) {
      fn(static_cast<const std::vector<Poly>&>(cur));
      return;
    }
    const unsigned d = u.dvec[slot];
    if (d == 0) {
      cur[slot] = Poly::one();
      self(self, slot + 1);
      return;
    }
    const auto& list = sf.of_degree(d);
    std::size_t lo = 0, hi = list.polys.size();
    if (slot == u.slot) {
      lo = static_cast<std::size_t>(std::lower_bound(list.index.begin(), list.index.end(), u.begin) - list.index.begin());
      hi = static_cast<std::size_t>(std::lower_bound(list.index.begin(), list.index.end(), u.end) - list.index.begin());
    }
    for (std::size_t i = lo; i < hi; ++i) {
      const Poly& f = list.polys[i];
      bool ok = true;
      for (std::size_t j = 0; j < slot && ok; ++j)
        if (!cur[j].is_one() && gcd(F, cur[j], f).degree() > 0) ok = false;
      if (!ok) continue;
      cur[slot] = f;
      self(self, slot + 1);
    }
    cur[slot] = Poly::one();
  };
  rec(rec, 0);
}

/// Runs `visit(acc, factors)` over all tuples of conductor degree n, one
/// accumulator per work unit, and returns the accumulators in unit order so that
/// any associative merge is independent of the shard count.
template <class Acc, class Visit>
std::vector<Acc> run_enumeration(const Field& F, unsigned n, const EnumOptions& opts, const Acc& proto, Visit visit) {
  if (n < 1) throw ValidationError("conductor degree must be >= 1");
  check_budget(F, n, opts);
  const auto tuples = degree_tuples(F.ell(), n);
  const detail::SquarefreeCache sf(F, tuples);
  const auto units = work_units(F, tuples);
  std::vector<Acc> accs(units.size(), proto);
  const unsigned shards = std::max(1u, opts.shards);
  if (shards == 1) {
    for (std::size_t i = 0; i < units.size(); ++i)
      enumerate_unit(F, sf, units[i], [&](const std::vector<Poly>& fs) { visit(accs[i], fs); });
    return accs;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < shards; ++t) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < units.size(); i = next++)
          enumerate_unit(F, sf, units[i], [&](const std::vector<Poly>& fs) { visit(accs[i], fs); });
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return accs;
}

/// |{(f_1..f_{ell-1}) monic, square-free, pairwise coprime, deg f_i = d_i}|.
inline std::uint64_t count_tuples(const Field& F, const std::vector<unsigned>& dvec) {
  if (dvec.size() != F.ell() - 1) throw ValidationError("degree tuple must have ell-1 entries");
  const std::vector<std::vector<unsigned>> tuples{dvec};
  const detail::SquarefreeCache sf(F, tuples);
  std::uint64_t count = 0;
  for (const auto& u : work_units(F, tuples)) enumerate_unit(F, sf, u, [&](const std::vector<Poly>&) { ++count; });
  return count;
}

/// Calls fn(const KummerClass&) for every nontrivial class of conductor degree n
/// (all ell beta twists of every tuple), sequentially and in enumeration order.
template <class Fn>
void for_each_class(const Field& F, unsigned n, const EnumOptions& opts, Fn&& fn) {
  struct Nothing {};
  EnumOptions serial = opts;
  serial.shards = 1;
  run_enumeration(F, n, serial, Nothing{}, [&](Nothing&, const std::vector<Poly>& fs) {
    KummerClass c{0, fs};
    for (unsigned b = 0; b < F.ell(); ++b) {
      c.beta_exp = b;
      fn(static_cast<const KummerClass&>(c));
    }
  });
}

/// One canonical class per extension field of conductor degree n.
inline std::vector<KummerClass> enumerate_extensions(const Field& F, unsigned n, const EnumOptions& opts = {}) {
  std::vector<KummerClass> out;
  for_each_class(F, n, opts, [&](const KummerClass& c) {
    if (is_canonical(c, F.ell())) out.push_back(c);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Conditions and summaries

struct Condition {
  Place place;
  LocalType type;
};
using Conditions = std::vector<Condition>;

inline void validate_conditions(const Field& F, const Conditions& cs) {
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (cs[i].place == cs[j].place)
        throw ValidationError("overlapping conditions at place " + to_string(F, cs[i].place));
}

inline std::string to_string(const Field& F, const Conditions& cs) {
  std::string s;
  for (std::size_t i = 0; i < cs.size(); ++i)
    s += (i ? "," : "") + to_string(F, cs[i].place) + ":" + to_string(cs[i].type);
  return s;
}

/// Aggregated counters for one conductor degree. Per-field quantities count one
/// canonical class per extension; character counts include every class.
struct EnumerationSummary {
  unsigned n = 0;
  std::uint64_t fields = 0;
  std::uint64_t characters = 0;
  std::vector<std::uint64_t> cond_fields;
  std::vector<std::uint64_t> cond_characters;
  /// Fields by #C(F_q), indexed 0..ell(q+1).
  std::vector<std::uint64_t> point_hist;
  /// Per rational place (infinity first): fields that are {ramified, split, inert}.
  std::vector<std::array<std::uint64_t, 3>> marginals;

  void merge(const EnumerationSummary& o) {
    fields += o.fields;
    characters += o.characters;
    for (std::size_t i = 0; i < cond_fields.size(); ++i) {
      cond_fields[i] += o.cond_fields[i];
      cond_characters[i] += o.cond_characters[i];
    }
    for (std::size_t i = 0; i < point_hist.size(); ++i) point_hist[i] += o.point_hist[i];
    for (std::size_t i = 0; i < marginals.size(); ++i)
      for (int k = 0; k < 3; ++k) marginals[i][k] += o.marginals[i][k];
  }
  friend bool operator==(const EnumerationSummary& a, const EnumerationSummary& b) {
    return a.n == b.n && a.fields == b.fields && a.characters == b.characters && a.cond_fields == b.cond_fields &&
           a.cond_characters == b.cond_characters && a.point_hist == b.point_hist && a.marginals == b.marginals;
  }
};

inline EnumerationSummary empty_summary(const Field& F, unsigned n, std::size_t condition_sets) {
  EnumerationSummary s;
  s.n = n;
  s.cond_fields.assign(condition_sets, 0);
  s.cond_characters.assign(condition_sets, 0);
  s.point_hist.assign(static_cast<std::size_t>(F.ell()) * (F.q() + 1) + 1, 0);
  s.marginals.assign(F.q() + 1, {0, 0, 0});
  return s;
}

/// Line written to the enumeration cache for one extension field:
/// "<beta_exp> <d:idx>,... <n> <types> <points> <mask>" where each factor is
/// its degree and monic index, types has one of R/S/I per rational place
/// (infinity first) and mask has one 0/1 per condition set.
struct OrbitRecord {
  KummerClass canonical;
  unsigned conductor_degree = 0;
  std::string types;
  std::uint64_t points = 0;
  std::string mask;
};

inline std::string encode_record(const Field& F, const OrbitRecord& r) {
  std::string s = std::to_string(r.canonical.beta_exp) + " ";
  for (std::size_t i = 0; i < r.canonical.factors.size(); ++i) {
    const Poly& f = r.canonical.factors[i];
    s += (i ? "," : "") + std::to_string(f.degree()) + ":" + std::to_string(monic_index(F, f));
  }
  s += " " + std::to_string(r.conductor_degree) + " " + r.types + " " + std::to_string(r.points) + " " +
       (r.mask.empty() ? "-" : r.mask);
  return s;
}

namespace detail {

inline std::size_t type_slot(LocalType t) {
  return t == LocalType::Ramified ? 0 : (t == LocalType::Split ? 1 : 2);
}

struct SummaryAcc {
  EnumerationSummary summary;
  std::vector<std::string> records;
};

}  // namespace detail

/// Single pass over all classes of conductor degree n computing counts,
/// conditioned counts for each condition set, the point-count histogram and
/// per-place marginals. When `records` is non-null, one encoded OrbitRecord per
/// field is appended in enumeration order.
inline EnumerationSummary enumerate_summary(const Field& F, unsigned n, const std::vector<Conditions>& sets,
                                            const EnumOptions& opts, std::vector<std::string>* records = nullptr) {
  for (const auto& cs : sets) validate_conditions(F, cs);
  const unsigned ell = F.ell();
  const auto rational = places_up_to(F, 1);
  detail::SummaryAcc proto{empty_summary(F, n, sets.size()), {}};
  const bool keep = records != nullptr;

  auto accs = run_enumeration(F, n, opts, proto, [&](detail::SummaryAcc& acc, const std::vector<Poly>& fs) {
    KummerClass c{0, fs};
    // beta-free characters at rational places and condition places
    std::vector<CharValue> base(rational.size());
    for (std::size_t i = 0; i < rational.size(); ++i) base[i] = class_character(F, c, rational[i]);
    std::vector<std::vector<CharValue>> cond_base(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s)
      for (const auto& cd : sets[s]) cond_base[s].push_back(class_character(F, c, cd.place));
    const unsigned cdeg = conductor_degree(factor_degrees(c), ell);

    for (unsigned b = 0; b < ell; ++b) {
      c.beta_exp = b;
      auto twist = [&](const CharValue& v, const Place& p) {
        if (v.zero) return v;
        // infinity already reads beta directly from the class
        if (p.infinite) return CharValue::Exp(static_cast<long long>(v.k) + b, ell);
        return v.times(CharValue::Exp(static_cast<long long>(b) * p.degree(), ell), ell);
      };
      const bool canon = ell == 2 || is_canonical(c, ell);
      acc.summary.characters += 1;
      std::string mask;
      for (std::size_t s = 0; s < sets.size(); ++s) {
        bool ok = true;
        for (std::size_t h = 0; h < sets[s].size() && ok; ++h) {
          const auto st = SplittingType::from_char(twist(cond_base[s][h], sets[s][h].place), ell);
          ok = st.kind == sets[s][h].type;
        }
        if (ok) {
          acc.summary.cond_characters[s] += 1;
          if (canon) acc.summary.cond_fields[s] += 1;
        }
        mask += ok ? '1' : '0';
      }
      if (!canon) continue;
      acc.summary.fields += 1;
      std::uint64_t points = 0;
      std::string types;
      for (std::size_t i = 0; i < rational.size(); ++i) {
        const auto st = SplittingType::from_char(twist(base[i], rational[i]), ell);
        if (st.f == 1) points += st.r;
        acc.summary.marginals[i][detail::type_slot(st.kind)] += 1;
        if (keep) types += st.kind == LocalType::Ramified ? 'R' : (st.kind == LocalType::Split ? 'S' : 'I');
      }
      acc.summary.point_hist[points] += 1;
      if (keep) acc.records.push_back(encode_record(F, OrbitRecord{c, cdeg, types, points, mask}));
    }
  });

  EnumerationSummary total = empty_summary(F, n, sets.size());
  for (auto& a : accs) {
    total.merge(a.summary);
    if (keep)
      for (auto& r : a.records) records->push_back(std::move(r));
  }
  return total;
}

struct ConditionedCount {
  std::uint64_t fields = 0, characters = 0;
  std::uint64_t total_fields = 0, total_characters = 0;
  Rational density;
};

inline ConditionedCount count_conditioned(const Field& F, unsigned n, const Conditions& cs,
                                          const EnumOptions& opts = {}) {
  const auto s = enumerate_summary(F, n, {cs}, opts);
  ConditionedCount out;
  out.fields = s.cond_fields[0];
  out.characters = s.cond_characters[0];
  out.total_fields = s.fields;
  out.total_characters = s.characters;
  out.density = s.characters == 0 ? Rational(0) : Rational(out.characters, s.characters);
  return out;
}

/// Exact frequency vector of #C(F_q) over the fields of genus g (equal weights).
inline std::vector<Rational> point_distribution(const Field& F, unsigned g, const EnumOptions& opts = {}) {
  const unsigned n = conductor_from_genus(F.ell(), g);
  const auto s = enumerate_summary(F, n, {}, opts);
  std::vector<Rational> out(s.point_hist.size());
  if (s.fields == 0) throw ValidationError("no fields of genus " + std::to_string(g));
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = Rational(s.point_hist[m], s.fields);
  return out;
}

}  // namespace ellcover
