#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclo.hpp"
#include "error.hpp"
#include "field.hpp"
#include "numeric.hpp"
#include "poly.hpp"

namespace ellcover {

/// A place of F_q(X): a monic irreducible v(X), or the place at infinity.
struct Place {
  bool infinite = false;
  Poly poly;  // empty for infinity

  static Place infinity() { return Place{true, {}}; }
  static Place finite(Poly v) { return Place{false, std::move(v)}; }

  unsigned degree() const { return infinite ? 1u : static_cast<unsigned>(poly.degree()); }
  BigInt norm(const Field& F) const { return ipow(BigInt(F.q()), degree()); }

  friend bool operator==(const Place& a, const Place& b) { return a.infinite == b.infinite && a.poly == b.poly; }
  friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }
  /// Infinity first, then finite places by degree and coefficients from the top.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.infinite != b.infinite) return a.infinite;
    return a.poly < b.poly;
  }
};

inline std::string to_string(const Field& F, const Place& v) { return v.infinite ? "inf" : to_string(F, v.poly); }

/// Checked constructor for a finite place.
inline Place make_place(const Field& F, const Poly& v) {
  if (!v.is_monic() || v.degree() < 1) throw ValidationError("place polynomial must be monic of degree >= 1");
  if (!is_irreducible(F, v)) throw ValidationError("place polynomial " + to_string(F, v) + " is not irreducible");
  return Place::finite(v);
}

/// Number of places of degree d; degree 1 includes infinity.
inline BigInt count_places_of_degree(std::uint32_t q, unsigned d) {
  if (d == 0) throw ValidationError("place degree must be >= 1");
  if (d == 1) return BigInt(q) + 1;
  BigInt s = 0;
  for (unsigned e = 1; e <= d; ++e)
    if (d % e == 0) s += moebius(e) * ipow(BigInt(q), d / e);
  return s / d;
}

inline BigInt count_places_of_degree(const Field& F, unsigned d) { return count_places_of_degree(F.q(), d); }

/// Every place of degree <= D: infinity, then finite places in place order.
class PlaceTable {
 public:
  PlaceTable(const Field& F, unsigned D) : irr_(F, D) {
    if (D < 1) throw ValidationError("places_up_to needs D >= 1");
    all_.push_back(Place::infinity());
    for (unsigned d = 1; d <= D; ++d)
      for (const Poly& v : irr_.of_degree(d)) all_.push_back(Place::finite(v));
  }

  unsigned max_degree() const { return irr_.max_degree(); }
  const std::vector<Place>& places() const { return all_; }
  const std::vector<Poly>& finite_of_degree(unsigned d) const { return irr_.of_degree(d); }
  const IrreducibleTable& irreducibles() const { return irr_; }

 private:
  IrreducibleTable irr_;
  std::vector<Place> all_;
};

inline std::vector<Place> places_up_to(const Field& F, unsigned D) { return PlaceTable(F, D).places(); }

/// Value of an ell-th power character: Zero, or rho^k recorded as the exponent k.
struct CharValue {
  bool zero = false;
  unsigned k = 0;

  static CharValue Zero() { return {true, 0}; }
  static CharValue Exp(long long k, unsigned ell) {
    long long m = k % static_cast<long long>(ell);
    if (m < 0) m += ell;
    return {false, static_cast<unsigned>(m)};
  }

  CharValue times(const CharValue& o, unsigned ell) const {
    if (zero || o.zero) return Zero();
    return Exp(static_cast<long long>(k) + o.k, ell);
  }
  CharValue power(unsigned e, unsigned ell) const {
    if (zero) return e == 0 ? Exp(0, ell) : Zero();
    return Exp(static_cast<long long>(k) * e, ell);
  }
  friend bool operator==(const CharValue& a, const CharValue& b) { return a.zero == b.zero && a.k == b.k; }
  friend bool operator!=(const CharValue& a, const CharValue& b) { return !(a == b); }
};

/// Res(v, a) for monic v, which is the norm from F_q[X]/(v) to F_q of a mod v.
inline Elem resultant(const Field& F, Poly A, Poly B) {
  if (A.is_zero() || B.is_zero()) return 0;
  Elem acc = 1;
  for (;;) {
    const int m = A.degree(), n = B.degree();
    if (n == 0) return F.mul(acc, F.pow(B.lead(), static_cast<std::uint64_t>(m)));
    Poly R = mod(F, A, B);
    if (R.is_zero()) return 0;
    if ((static_cast<long long>(m) * n) % 2 == 1) acc = F.neg(acc);
    acc = F.mul(acc, F.pow(B.lead(), static_cast<std::uint64_t>(m - R.degree())));
    A = std::move(B);
    B = std::move(R);
  }
}

/// Exponent k with c^{(q-1)/ell} = b_ell^k for a nonzero constant c.
inline CharValue constant_symbol(const Field& F, Elem c) {
  if (c == 0) return CharValue::Zero();
  return CharValue::Exp(F.log(c) % F.ell(), F.ell());
}

/// (f/v)_ell = f^{(Nv-1)/ell} mod v, as an exponent of b_ell. Uses the identity
/// f^{(Nv-1)/ell} = Norm(f mod v)^{(q-1)/ell}.
inline CharValue residue_symbol(const Field& F, const Poly& f, const Place& v) {
  if (v.infinite) throw ValidationError("residue_symbol needs a finite place");
  if (v.poly.degree() == 1) return constant_symbol(F, eval(F, f, F.neg(v.poly.c[0])));
  return constant_symbol(F, resultant(F, v.poly, mod(F, f, v.poly)));
}

/// Character at infinity: Zero unless ell | deg f, else the class of the leading coefficient.
inline CharValue char_infinity(const Field& F, const Poly& f) {
  if (f.is_zero()) throw ValidationError("char_infinity: zero polynomial");
  if (static_cast<unsigned>(f.degree()) % F.ell() != 0) return CharValue::Zero();
  return constant_symbol(F, f.lead());
}

/// Exponent s with (-1)^{(q-1)/ell} = b_ell^s; the reciprocity sign is
/// b_ell^{s deg v deg w}. Nonzero only for ell = 2 and q = 3 mod 4.
inline unsigned reciprocity_sign_exponent(const Field& F) { return constant_symbol(F, F.neg(1)).k; }

enum class LocalType { Ramified, Split, Inert };

inline std::string to_string(LocalType t) {
  switch (t) {
    case LocalType::Ramified: return "ram";
    case LocalType::Split: return "split";
    case LocalType::Inert: return "inert";
  }
  return "?";
}

/// Decomposition data of a place in a degree-ell cyclic extension; e*f*r = ell.
struct SplittingType {
  LocalType kind = LocalType::Split;
  unsigned e = 1, f = 1, r = 1;

  static SplittingType make(LocalType kind, unsigned ell) {
    switch (kind) {
      case LocalType::Ramified: return {kind, ell, 1, 1};
      case LocalType::Split: return {kind, 1, 1, ell};
      case LocalType::Inert: return {kind, 1, ell, 1};
    }
    throw InternalError("bad LocalType");
  }
  /// Zero means ramified; exponent 0 split; anything else inert.
  static SplittingType from_char(const CharValue& c, unsigned ell) {
    if (c.zero) return make(LocalType::Ramified, ell);
    return make(c.k == 0 ? LocalType::Split : LocalType::Inert, ell);
  }
  friend bool operator==(const SplittingType& a, const SplittingType& b) {
    return a.kind == b.kind && a.e == b.e && a.f == b.f && a.r == b.r;
  }
};

/// A(n, chi) = sum over monic f of degree n of chi(f), where chi = (./v)_ell^power.
inline Cyclo character_sum(const Field& F, const Place& v, unsigned power, unsigned n) {
  const unsigned ell = F.ell();
  std::vector<BigInt> hits(ell);
  const std::uint64_t total = monic_count(F, n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const CharValue c = residue_symbol(F, monic_from_index(F, n, idx), v);
    if (!c.zero) hits[(static_cast<std::uint64_t>(c.k) * power) % ell] += 1;
  }
  Cyclo out(ell);
  for (unsigned k = 0; k < ell; ++k) out += Cyclo::root(ell, k) * hits[k];
  return out;
}

/// Coefficients of L(u, chi) for chi = (./v)_ell^power, computed by direct character
/// sums for n = 0..deg v and trimmed of trailing zeros.
inline std::vector<Cyclo> l_polynomial(const Field& F, const Place& v, unsigned power) {
  if (v.infinite) throw ValidationError("l_polynomial needs a finite place");
  if (power % F.ell() == 0) throw ValidationError("trivial character: L-series not a polynomial");
  std::vector<Cyclo> out;
  for (unsigned n = 0; n <= v.degree(); ++n) out.push_back(character_sum(F, v, power % F.ell(), n));
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

}  // namespace ellcover
