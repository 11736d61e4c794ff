#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"

namespace ellcover {

/// Dense polynomial over F_q, lowest degree first, with no trailing zero
/// coefficients (the zero polynomial has no coefficients at all).
struct Poly {
  std::vector<Elem> c;

  Poly() = default;
  explicit Poly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { trim(); }

  static Poly constant(Elem a) { return a == 0 ? Poly() : Poly(std::vector<Elem>{a}); }
  static Poly one() { return constant(1); }
  static Poly x() { return Poly(std::vector<Elem>{0, 1}); }
  /// X + a
  static Poly linear(Elem a) { return Poly(std::vector<Elem>{a, 1}); }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_constant() const { return c.size() <= 1; }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }
  Elem lead() const { return c.empty() ? 0 : c.back(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  Elem operator[](std::size_t i) const { return i < c.size() ? c[i] : 0; }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
  friend bool operator!=(const Poly& a, const Poly& b) { return a.c != b.c; }
  /// Place order: by degree, then coefficients compared from the top down.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
    for (std::size_t i = a.c.size(); i-- > 0;)
      if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
  }
};

inline Poly add(const Field& F, const Poly& a, const Poly& b) {
  std::vector<Elem> r(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(a[i], b[i]);
  return Poly(std::move(r));
}

inline Poly neg(const Field& F, const Poly& a) {
  std::vector<Elem> r(a.c.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.neg(a.c[i]);
  return Poly(std::move(r));
}

inline Poly sub(const Field& F, const Poly& a, const Poly& b) {
  std::vector<Elem> r(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(a[i], b[i]);
  return Poly(std::move(r));
}

inline Poly scale(const Field& F, const Poly& a, Elem s) {
  std::vector<Elem> r(a.c.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.mul(a.c[i], s);
  return Poly(std::move(r));
}

inline Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Elem> r(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a.c[i], b.c[j]));
  }
  return Poly(std::move(r));
}

/// Quotient and remainder; the divisor must be nonzero.
inline std::pair<Poly, Poly> divmod(const Field& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw ValidationError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Elem> rem = a.c;
  std::vector<Elem> quot(a.c.size() - b.c.size() + 1, 0);
  const Elem inv_lead = F.inv(b.lead());
  const std::size_t db = b.c.size() - 1;
  for (std::size_t top = rem.size(); top-- > db;) {
    const Elem coef = F.mul(rem[top], inv_lead);
    if (coef == 0) continue;
    const std::size_t shift = top - db;
    quot[shift] = coef;
    for (std::size_t i = 0; i <= db; ++i) rem[shift + i] = F.sub(rem[shift + i], F.mul(coef, b.c[i]));
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

inline Poly mod(const Field& F, const Poly& a, const Poly& m) {
  if (a.degree() < m.degree()) return a;
  return divmod(F, a, m).second;
}

inline bool divides(const Field& F, const Poly& d, const Poly& a) { return mod(F, a, d).is_zero(); }

inline Poly make_monic(const Field& F, const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return scale(F, a, F.inv(a.lead()));
}

/// Monic gcd (zero only when both inputs are zero).
inline Poly gcd(const Field& F, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(F, a);
}

inline Poly derivative(const Field& F, const Poly& a) {
  if (a.c.size() <= 1) return {};
  std::vector<Elem> r(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) r[i - 1] = F.mul(F.from_int(static_cast<long long>(i)), a.c[i]);
  return Poly(std::move(r));
}

inline Elem eval(const Field& F, const Poly& a, Elem x) {
  Elem r = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), a.c[i]);
  return r;
}

inline Poly mulmod(const Field& F, const Poly& a, const Poly& b, const Poly& m) {
  return mod(F, mul(F, a, b), m);
}

inline Poly pow_mod(const Field& F, Poly base, std::uint64_t exp, const Poly& m) {
  Poly r = mod(F, Poly::one(), m);
  base = mod(F, base, m);
  while (exp) {
    if (exp & 1) r = mulmod(F, r, base, m);
    exp >>= 1;
    if (exp) base = mulmod(F, base, base, m);
  }
  return r;
}

inline Poly pow(const Field& F, const Poly& base, unsigned exp) {
  Poly r = Poly::one();
  for (unsigned i = 0; i < exp; ++i) r = mul(F, r, base);
  return r;
}

inline std::string to_string(const Field& F, const Poly& a, char var = 'X') {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = a.c.size(); i-- > 0;) {
    const Elem coef = a.c[i];
    if (coef == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || coef != 1) os << F.to_string(coef);
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

/// Number of monic polynomials of degree d, q^d; throws if it overflows 64 bits.
inline std::uint64_t monic_count(const Field& F, unsigned d) {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < d; ++i) {
    if (n > (~std::uint64_t{0}) / F.q()) throw BudgetError("monic polynomial space overflows 64 bits");
    n *= F.q();
  }
  return n;
}

/// Monic polynomial of degree d whose lower coefficients are the base-q digits of
/// idx, with the X^{d-1} coefficient as the most significant digit. Index order is
/// therefore the place order among monic polynomials of equal degree.
inline Poly monic_from_index(const Field& F, unsigned d, std::uint64_t idx) {
  std::vector<Elem> c(d + 1, 0);
  for (unsigned i = 0; i < d; ++i, idx /= F.q()) c[i] = static_cast<Elem>(idx % F.q());
  c[d] = 1;
  return Poly(std::move(c));
}

inline std::uint64_t monic_index(const Field& F, const Poly& f) {
  std::uint64_t idx = 0;
  for (std::size_t i = f.c.size() - 1; i-- > 0;) idx = idx * F.q() + f.c[i];
  return idx;
}

inline bool is_squarefree(const Field& F, const Poly& f) {
  if (f.is_zero()) throw ValidationError("is_squarefree: zero polynomial");
  if (f.degree() <= 0) return true;
  const Poly d = derivative(F, f);
  if (d.is_zero()) return false;
  return gcd(F, f, d).degree() == 0;
}

/// Number of monic square-free polynomials of degree d: 1, q, q^d - q^{d-1}.
inline std::uint64_t squarefree_count(const Field& F, unsigned d) {
  if (d == 0) return 1;
  if (d == 1) return F.q();
  return monic_count(F, d) - monic_count(F, d - 1);
}

/// Visits every monic square-free polynomial of degree d with monic index in
/// [begin, end), in index order.
inline void for_each_squarefree(const Field& F, unsigned d, std::uint64_t begin, std::uint64_t end,
                                const std::function<void(const Poly&)>& fn) {
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    Poly f = monic_from_index(F, d, idx);
    if (is_squarefree(F, f)) fn(f);
  }
}

/// All monic square-free polynomials of degree d in lexicographic (index) order.
inline std::vector<Poly> enumerate_monic_squarefree(const Field& F, unsigned d) {
  std::vector<Poly> out;
  out.reserve(static_cast<std::size_t>(squarefree_count(F, d)));
  for_each_squarefree(F, d, 0, monic_count(F, d), [&](const Poly& f) { out.push_back(f); });
  return out;
}

class IrreducibleTable;

/// Visits the monic irreducibles of degree d in index order. `lower` must hold
/// every irreducible of degree <= d/2; composites are marked by a sieve.
template <class Fn>
void for_each_irreducible(const Field& F, unsigned d, const IrreducibleTable& lower, Fn&& fn);

/// Monic irreducibles by degree, computed with a multiplicative sieve over the
/// monic polynomials of each degree.
class IrreducibleTable {
 public:
  static constexpr std::uint64_t kDefaultSieveBudget = std::uint64_t{1} << 28;

  IrreducibleTable(const Field& F, unsigned max_degree, std::uint64_t sieve_budget = kDefaultSieveBudget)
      : by_degree_(1) {
    for (unsigned d = 1; d <= max_degree; ++d) {
      if (monic_count(F, d) > sieve_budget)
        throw BudgetError("irreducible sieve for degree " + std::to_string(d) + " exceeds budget");
      std::vector<Poly> row;
      for_each_irreducible(F, d, *this, [&](const Poly& g) { row.push_back(g); });
      by_degree_.push_back(std::move(row));
    }
  }

  unsigned max_degree() const { return static_cast<unsigned>(by_degree_.size()) - 1; }
  const std::vector<Poly>& of_degree(unsigned d) const {
    if (d >= by_degree_.size()) throw ValidationError("irreducible table does not cover degree " + std::to_string(d));
    return by_degree_[d];
  }

 private:
  std::vector<std::vector<Poly>> by_degree_;
};

template <class Fn>
void for_each_irreducible(const Field& F, unsigned d, const IrreducibleTable& lower, Fn&& fn) {
  if (d == 0) return;
  const std::uint64_t total = monic_count(F, d);
  if (d == 1) {
    for (std::uint64_t i = 0; i < total; ++i) fn(monic_from_index(F, 1, i));
    return;
  }
  if (lower.max_degree() < d / 2) throw InternalError("irreducible sieve is missing lower degrees");
  std::vector<bool> composite(total, false);
  std::vector<Elem> prod(d + 1);
  for (unsigned k = 1; k <= d / 2; ++k) {
    const unsigned dh = d - k;
    const std::uint64_t cofactors = monic_count(F, dh);
    std::vector<Elem> h(dh + 1, 0);
    h[dh] = 1;
    for (const Poly& g : lower.of_degree(k)) {
      std::fill(h.begin(), h.end() - 1, 0);
      for (std::uint64_t idx = 0; idx < cofactors; ++idx) {
        std::fill(prod.begin(), prod.end(), 0);
        for (unsigned i = 0; i <= k; ++i) {
          if (g.c[i] == 0) continue;
          for (unsigned j = 0; j <= dh; ++j)
            if (h[j]) prod[i + j] = F.add(prod[i + j], F.mul(g.c[i], h[j]));
        }
        std::uint64_t pidx = 0;
        for (unsigned i = d; i-- > 0;) pidx = pidx * F.q() + prod[i];
        composite[pidx] = true;
        // Advance h to the next monic index (digit 0 is least significant).
        for (unsigned j = 0; j < dh; ++j) {
          if (++h[j] < F.q()) break;
          h[j] = 0;
        }
      }
    }
  }
  for (std::uint64_t i = 0; i < total; ++i)
    if (!composite[i]) fn(monic_from_index(F, d, i));
}

/// Monic irreducible factors with multiplicities, in place order, plus the unit.
struct Factorization {
  Elem unit = 1;
  std::vector<std::pair<Poly, unsigned>> factors;
};

/// Trial division by irreducibles of degree <= deg/2 taken from `table`.
inline Factorization poly_factor(const Field& F, const Poly& f, const IrreducibleTable& table) {
  if (f.is_zero()) throw ValidationError("poly_factor: zero polynomial");
  Factorization out;
  out.unit = f.lead();
  Poly rest = make_monic(F, f);
  for (unsigned k = 1; 2 * k <= static_cast<unsigned>(std::max(rest.degree(), 0)); ++k) {
    if (k > table.max_degree()) throw ValidationError("irreducible table too small for factorization");
    for (const Poly& g : table.of_degree(k)) {
      if (2 * k > static_cast<unsigned>(rest.degree())) break;
      unsigned mult = 0;
      for (;;) {
        auto [qt, r] = divmod(F, rest, g);
        if (!r.is_zero()) break;
        rest = std::move(qt);
        ++mult;
      }
      if (mult) out.factors.emplace_back(g, mult);
    }
  }
  if (rest.degree() >= 1) out.factors.emplace_back(rest, 1);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // A leftover factor may coincide with one already found.
  std::vector<std::pair<Poly, unsigned>> merged;
  for (auto& fm : out.factors) {
    if (!merged.empty() && merged.back().first == fm.first)
      merged.back().second += fm.second;
    else
      merged.push_back(std::move(fm));
  }
  out.factors = std::move(merged);
  return out;
}

inline Factorization poly_factor(const Field& F, const Poly& f) {
  if (f.is_zero()) throw ValidationError("poly_factor: zero polynomial");
  const IrreducibleTable table(F, static_cast<unsigned>(std::max(f.degree(), 0)) / 2);
  return poly_factor(F, f, table);
}

inline bool is_irreducible(const Field& F, const Poly& f) {
  if (f.degree() < 1) return false;
  const auto fac = poly_factor(F, f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

}  // namespace ellcover
