#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "covers.hpp"
#include "error.hpp"
#include "field.hpp"
#include "places.hpp"
#include "poly.hpp"

namespace ellcover {

/// Generator g_v of (F_q[X]/v)^x with g_v^{(Nv-1)/(q-1)} = mu, plus its discrete-log table.
/// Residues are encoded as sum c_i q^i over their coefficients.
class ResidueLog {
 public:
  static constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

  ResidueLog(const Field& F, const Place& v, std::uint64_t budget = kDefaultBudget) : F_(&F), v_(v) {
    if (v.infinite) throw ValidationError("residue generator needs a finite place");
    const unsigned d = v.degree();
    norm_ = monic_count(F, d);
    if (norm_ > budget) throw BudgetError("residue field of size " + std::to_string(norm_) + " exceeds the table budget");
    const std::uint64_t order = norm_ - 1;
    const auto primes = detail::prime_factors(order);
    const std::uint64_t to_base = order / (F.q() - 1);
    for (std::uint64_t code = 1; code < norm_; ++code) {
      const Poly a = decode(code);
      if (pow_mod(F, a, to_base, v.poly) != Poly::constant(F.mu())) continue;
      bool gen = true;
      for (auto r : primes)
        if (pow_mod(F, a, order / r, v.poly).is_one()) {
          gen = false;
          break;
        }
      if (gen) {
        gen_ = a;
        break;
      }
    }
    if (gen_.is_zero()) throw InternalError("no residue generator found");
    log_.assign(norm_, 0);
    Poly x = Poly::one();
    for (std::uint64_t k = 0; k < order; ++k) {
      log_[encode(x)] = static_cast<std::uint32_t>(k);
      x = mulmod(F, x, gen_, v.poly);
    }
    if (!x.is_one()) throw InternalError("residue generator does not have full order");
  }

  const Poly& generator() const { return gen_; }
  std::uint64_t norm() const { return norm_; }
  /// n with a = g_v^n mod v; a must be a unit at v.
  std::uint64_t log(const Poly& a) const {
    const Poly r = mod(*F_, a, v_.poly);
    if (r.is_zero()) throw ValidationError("discrete log of a non-unit");
    return log_[encode(r)];
  }

 private:
  std::uint64_t encode(const Poly& r) const {
    std::uint64_t code = 0;
    for (std::size_t i = r.c.size(); i-- > 0;) code = code * F_->q() + r.c[i];
    return code;
  }
  Poly decode(std::uint64_t code) const {
    std::vector<Elem> c(v_.degree(), 0);
    for (auto& x : c) {
      x = static_cast<Elem>(code % F_->q());
      code /= F_->q();
    }
    return Poly(std::move(c));
  }

  const Field* F_;
  Place v_;
  Poly gen_;
  std::uint64_t norm_ = 0;
  std::vector<std::uint32_t> log_;
};

inline Poly residue_generator(const Field& F, const Place& v) { return ResidueLog(F, v).generator(); }

/// Local data of a character: the ramified places (infinity allowed) with values
/// r_v = phi_v(g_v) in 1..ell-1, and psi = psi_inf(pi_inf) in Z/ell.
struct IdeleMap {
  std::vector<Place> support;
  std::vector<unsigned> values;
  unsigned psi = 0;
};

inline unsigned support_degree(const IdeleMap& m) {
  unsigned d = 0;
  for (const auto& v : m.support) d += v.degree();
  return d;
}

inline bool is_compatible(const IdeleMap& m, unsigned ell) {
  unsigned long long s = 0;
  for (std::size_t i = 0; i < m.support.size(); ++i) s += static_cast<unsigned long long>(m.values[i]) * m.support[i].degree();
  return s % ell == 0;
}

/// Visits every compatible map whose support has total degree n.
template <class Fn>
void enumerate_maps(const Field& F, unsigned n, Fn&& fn) {
  if (n < 1) throw ValidationError("conductor degree must be >= 1");
  const unsigned ell = F.ell();
  const PlaceTable table(F, n);
  const auto& places = table.places();
  IdeleMap m;
  auto assign = [&](auto&& self, std::size_t i, unsigned long long acc) -> void {
    if (i == m.support.size()) {
      if (acc % ell != 0) return;
      for (unsigned psi = 0; psi < ell; ++psi) {
        m.psi = psi;
        fn(static_cast<const IdeleMap&>(m));
      }
      return;
    }
    for (unsigned r = 1; r < ell; ++r) {
      m.values[i] = r;
      self(self, i + 1, acc + static_cast<unsigned long long>(r) * m.support[i].degree());
    }
  };
  auto choose = [&](auto&& self, std::size_t start, unsigned left) -> void {
    if (left == 0) {
      m.values.assign(m.support.size(), 0);
      assign(assign, 0, 0);
      return;
    }
    for (std::size_t i = start; i < places.size(); ++i) {
      const unsigned d = places[i].degree();
      if (d > left) {
        if (!places[i].infinite) break;  // finite places are sorted by degree
        continue;
      }
      m.support.push_back(places[i]);
      self(self, i + 1, left - d);
      m.support.pop_back();
    }
  };
  choose(choose, 0, n);
}

inline std::uint64_t count_maps(const Field& F, unsigned n) {
  std::uint64_t c = 0;
  enumerate_maps(F, n, [&](const IdeleMap&) { ++c; });
  return c;
}

/// Residue generators and log tables, built on first use. Not thread-safe.
class OracleContext {
 public:
  explicit OracleContext(const Field& F) : F_(F) {}
  const Field& field() const { return F_; }
  const ResidueLog& residue_log(const Place& v) {
    auto it = logs_.find(v.poly.c);
    if (it == logs_.end()) it = logs_.emplace(v.poly.c, ResidueLog(F_, v)).first;
    return it->second;
  }

 private:
  const Field& F_;
  std::map<std::vector<Elem>, ResidueLog> logs_;
};

inline bool in_support(const IdeleMap& m, const Place& v) {
  for (const auto& p : m.support)
    if (p == v) return true;
  return false;
}

/// Splitting of v0 under the map: ramified on the support; at infinity split iff
/// psi = 0; at finite v0 split iff -deg(v0) psi + sum_v r_v n_v = 0 (mod ell), where
/// v0 = g_v^{n_v} in the residue field at v.
inline SplittingType map_splitting_type(OracleContext& ctx, const IdeleMap& m, const Place& v0) {
  const unsigned ell = ctx.field().ell();
  if (in_support(m, v0)) return SplittingType::make(LocalType::Ramified, ell);
  if (v0.infinite) return SplittingType::make(m.psi == 0 ? LocalType::Split : LocalType::Inert, ell);
  long long s = -static_cast<long long>(v0.degree()) * m.psi;
  for (std::size_t i = 0; i < m.support.size(); ++i) {
    if (m.support[i].infinite) continue;
    const std::uint64_t nv = ctx.residue_log(m.support[i]).log(v0.poly) % ell;
    s += static_cast<long long>(m.values[i]) * static_cast<long long>(nv);
  }
  s %= static_cast<long long>(ell);
  return SplittingType::make(s == 0 ? LocalType::Split : LocalType::Inert, ell);
}

/// Frobenius exponent at v0: Zero on the support, psi at infinity, and
/// deg(v0) psi - sum_v r_v n_v at finite places.
inline CharValue frobenius_exponent(OracleContext& ctx, const IdeleMap& m, const Place& v0) {
  const unsigned ell = ctx.field().ell();
  if (in_support(m, v0)) return CharValue::Zero();
  if (v0.infinite) return CharValue::Exp(m.psi, ell);
  long long s = static_cast<long long>(v0.degree()) * m.psi;
  for (std::size_t i = 0; i < m.support.size(); ++i) {
    if (m.support[i].infinite) continue;
    const std::uint64_t nv = ctx.residue_log(m.support[i]).log(v0.poly) % ell;
    s -= static_cast<long long>(m.values[i]) * static_cast<long long>(nv);
  }
  return CharValue::Exp(s, ell);
}

/// Orbit signature: support plus character values on places of degree <= B,
/// scaled so the first nonzero exponent is 1 (identifies the extension field).
inline std::string signature(const Field& F, const std::vector<Place>& support, const std::vector<CharValue>& vals) {
  const unsigned ell = F.ell();
  unsigned scale = 1;
  for (const auto& v : vals)
    if (!v.zero && v.k != 0) {
      for (unsigned s = 1; s < ell; ++s)
        if ((static_cast<unsigned long long>(s) * v.k) % ell == 1) scale = s;
      break;
    }
  std::string key;
  for (const auto& p : support) key += to_string(F, p) + ";";
  key += "|";
  for (const auto& v : vals) key += v.zero ? "z," : std::to_string((static_cast<unsigned long long>(v.k) * scale) % ell) + ",";
  return key;
}

inline std::vector<Place> class_support(const Field& F, const KummerClass& c) {
  const Conductor cond = conductor_of(F, c);
  std::vector<Place> s;
  if (cond.infinity_ramified) s.push_back(Place::infinity());
  s.insert(s.end(), cond.finite_support.begin(), cond.finite_support.end());
  return s;
}

struct CrosscheckReport {
  unsigned n = 0;
  std::uint64_t covers_characters = 0;
  std::uint64_t map_count = 0;
  bool match = false;
};

/// Conditioned character count from the Kummer enumeration versus the map-side count.
inline CrosscheckReport crosscheck_counts(const Field& F, unsigned n, const Conditions& cs, const EnumOptions& opts = {}) {
  validate_conditions(F, cs);
  CrosscheckReport r;
  r.n = n;
  r.covers_characters = count_conditioned(F, n, cs, opts).characters;
  OracleContext ctx(F);
  enumerate_maps(F, n, [&](const IdeleMap& m) {
    for (const auto& c : cs)
      if (map_splitting_type(ctx, m, c.place).kind != c.type) return;
    ++r.map_count;
  });
  r.match = r.covers_characters == r.map_count;
  return r;
}

struct AgreementReport {
  unsigned bound = 0;          // signature place-degree bound actually used
  std::uint64_t checked = 0;   // (map, place) pairs compared
  std::uint64_t agreed = 0;
  std::uint64_t unmatched = 0; // maps whose signature matched no class
};

/// Samples (map, place) pairs with deg place <= 2, matches each map to its
/// extension by signature, and compares the two splitting classifications.
inline AgreementReport splitting_agreement(const Field& F, unsigned n, unsigned samples, std::uint64_t seed = 1) {
  AgreementReport rep;
  std::vector<KummerClass> fields = enumerate_extensions(F, n);
  std::vector<IdeleMap> maps;
  enumerate_maps(F, n, [&](const IdeleMap& m) { maps.push_back(m); });
  if (maps.empty()) return rep;

  std::map<std::string, std::size_t> by_sig;
  std::vector<Place> sig_places;
  for (unsigned bound = 3;; ++bound) {
    if (bound > 5) throw InternalError("signatures do not separate the enumerated fields");
    sig_places = places_up_to(F, bound);
    by_sig.clear();
    bool unique = true;
    for (std::size_t i = 0; i < fields.size() && unique; ++i) {
      std::vector<CharValue> vals;
      for (const auto& p : sig_places) vals.push_back(class_character(F, fields[i], p));
      unique = by_sig.emplace(signature(F, class_support(F, fields[i]), vals), i).second;
    }
    if (unique) {
      rep.bound = bound;
      break;
    }
  }

  OracleContext ctx(F);
  const auto test_places = places_up_to(F, 2);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_map(0, maps.size() - 1), pick_place(0, test_places.size() - 1);
  for (unsigned s = 0; s < samples; ++s) {
    const IdeleMap& m = maps[pick_map(rng)];
    const Place& v0 = test_places[pick_place(rng)];
    std::vector<CharValue> vals;
    for (const auto& p : sig_places) vals.push_back(frobenius_exponent(ctx, m, p));
    const auto it = by_sig.find(signature(F, m.support, vals));
    if (it == by_sig.end()) {
      ++rep.unmatched;
      continue;
    }
    ++rep.checked;
    if (map_splitting_type(ctx, m, v0) == splitting_type(F, fields[it->second], v0)) ++rep.agreed;
  }
  return rep;
}

}  // namespace ellcover
