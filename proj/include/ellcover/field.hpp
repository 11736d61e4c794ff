#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"

namespace ellcover {

/// A field element of F_q, encoded as the integer sum c_i p^i of its coordinates
/// over F_p[T]/(modulus). Integer order on encodings is the coordinate-lexicographic
/// order (highest coordinate compared first); 0 and 1 encode zero and one.
using Elem = std::uint32_t;

namespace detail {

// Minimal dense arithmetic over F_p used only while constructing extension fields.
using FpPoly = std::vector<std::uint32_t>;

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

inline FpPoly fp_mod(FpPoly a, const FpPoly& m, std::uint32_t p) {
  fp_trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t inv_lead = fp_inv(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * inv_lead % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i]) % p);
    fp_trim(a);
  }
  return a;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return fp_mod(std::move(r), m, p);
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Irreducible iff gcd(X^{p^i} - X, f) = 1 for 1 <= i <= deg/2.
inline bool fp_is_irreducible(const FpPoly& f, std::uint32_t p) {
  const std::size_t d = f.size() - 1;
  if (d <= 1) return d == 1;
  FpPoly x = {0, 1};
  FpPoly frob = x;
  for (std::size_t i = 1; i <= d / 2; ++i) {
    FpPoly acc = {1};
    FpPoly base = frob;
    for (std::uint32_t e = p; e; e >>= 1) {
      if (e & 1) acc = fp_mulmod(acc, base, f, p);
      base = fp_mulmod(base, base, f, p);
    }
    frob = acc;
    FpPoly diff = frob;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    fp_trim(diff);
    if (diff.empty()) return false;
    if (fp_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

/// The coefficient field F_q together with the fixed data every character
/// computation depends on: the generator mu of F_q^x, the root of unity
/// b_ell = mu^{(q-1)/ell}, and dense discrete-log tables.
///
/// Immutable after construction; safe to share between threads.
class Field {
 public:
  static constexpr std::uint32_t kDefaultMaxQ = 1u << 16;

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  /// 0 for auxiliary prime fields built without an ell.
  std::uint32_t ell() const { return ell_; }
  /// Coefficients over F_p, low degree first, monic of degree e ({0,1} when e = 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elem mu() const { return mu_; }
  Elem b_ell() const { return b_ell_; }

  Elem add(Elem a, Elem b) const {
    if (e_ == 1) {
      const Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return digitwise(a, b);
  }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw ValidationError("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const {
    if (a == 0) return k == 0 ? 1 : 0;
    return exp_[static_cast<std::uint64_t>(log_[a]) * (k % (q_ - 1)) % (q_ - 1)];
  }
  /// Discrete log base mu; the zero element is rejected.
  std::uint32_t log(Elem a) const {
    if (a == 0 || a >= q_) throw ValidationError("discrete log of zero or out-of-range element");
    return log_[a];
  }
  Elem exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }
  std::uint32_t order(Elem a) const { return (q_ - 1) / std::gcd(q_ - 1, log(a)); }

  /// True iff a lies in (F_q^x)^ell.
  bool is_ell_power(Elem a) const {
    if (a == 0) throw ValidationError("is_ell_power: zero element");
    return log_[a] % ell_ == 0;
  }

  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }
  std::vector<std::uint32_t> coords(Elem a) const {
    std::vector<std::uint32_t> c(e_);
    for (std::uint32_t i = 0; i < e_; ++i, a /= p_) c[i] = a % p_;
    return c;
  }
  /// Prime-field elements print as integers, others as t-polynomials like "(t+2)".
  std::string to_string(Elem a) const {
    if (e_ == 1 || a < p_) return std::to_string(a);
    const auto c = coords(a);
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (std::uint32_t i = e_; i-- > 0;) {
      if (c[i] == 0) continue;
      if (!first) os << "+";
      first = false;
      if (i == 0 || c[i] != 1) os << c[i];
      if (i >= 1) os << "t";
      if (i >= 2) os << "^" << i;
    }
    os << ")";
    return os.str();
  }

  /// Auxiliary prime field without ell data (ell() == 0).
  static Field prime_field(std::uint32_t p) {
    if (!is_prime_u64(p)) throw ValidationError("characteristic " + std::to_string(p) + " is not prime");
    Field f;
    f.p_ = p;
    f.e_ = 1;
    f.q_ = p;
    f.modulus_ = {0, 1};
    f.build_tables();
    return f;
  }

  friend Field make_field(std::uint32_t p, std::uint32_t e, std::uint32_t ell, std::uint32_t max_q);

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.ell_ == b.ell_;
  }

 private:
  Field() = default;

  Elem digitwise(Elem a, Elem b) const {
    Elem r = 0, place = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
      r += ((a % p_ + b % p_) % p_) * place;
      a /= p_;
      b /= p_;
      place *= p_;
    }
    return r;
  }

  Elem raw_mul(Elem a, Elem b) const {
    if (e_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    auto ca = coords(a), cb = coords(b);
    detail::fp_trim(ca);
    detail::fp_trim(cb);
    auto r = detail::fp_mulmod(ca, cb, modulus_, p_);
    Elem out = 0, place = 1;
    for (auto c : r) {
      out += c * place;
      place *= p_;
    }
    return out;
  }

  Elem raw_pow(Elem a, std::uint64_t k) const {
    Elem r = 1;
    while (k) {
      if (k & 1) r = raw_mul(r, a);
      a = raw_mul(a, a);
      k >>= 1;
    }
    return r;
  }

  void build_tables() {
    neg_.resize(q_);
    for (Elem a = 0; a < q_; ++a) {
      Elem r = 0, place = 1, x = a;
      for (std::uint32_t i = 0; i < e_; ++i, x /= p_, place *= p_) r += ((p_ - x % p_) % p_) * place;
      neg_[a] = r;
    }
    if (e_ > 1 && p_ != 2 && q_ <= 256) {
      add_table_.resize(static_cast<std::size_t>(q_) * q_);
      for (Elem a = 0; a < q_; ++a)
        for (Elem b = 0; b < q_; ++b) add_table_[static_cast<std::size_t>(a) * q_ + b] = digitwise(a, b);
    }
    // Smallest generator in encoding order.
    const auto factors = detail::prime_factors(q_ - 1);
    mu_ = 0;
    for (Elem a = 1; a < q_ && mu_ == 0; ++a) {
      if (q_ == 2) {
        mu_ = 1;
        break;
      }
      bool gen = true;
      for (auto r : factors)
        if (raw_pow(a, (q_ - 1) / r) == 1) {
          gen = false;
          break;
        }
      if (gen) mu_ = a;
    }
    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = raw_mul(x, mu_);
    }
    if (x != 1) throw InternalError("generator table did not close");
  }

  std::uint32_t p_ = 0, e_ = 0, q_ = 0, ell_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem mu_ = 0, b_ell_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
  std::vector<Elem> neg_;
  std::vector<Elem> add_table_;
};

/// Builds F_{p^e} with the smallest irreducible modulus of degree e (monic,
/// coefficients compared from the top) and validates q = 1 (mod ell).
inline Field make_field(std::uint32_t p, std::uint32_t e, std::uint32_t ell,
                        std::uint32_t max_q = Field::kDefaultMaxQ) {
  if (!is_prime_u64(p)) throw ValidationError("characteristic p=" + std::to_string(p) + " is not prime");
  if (!is_prime_u64(ell)) throw ValidationError("ell=" + std::to_string(ell) + " is not prime");
  if (e < 1) throw ValidationError("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > max_q) throw BudgetError("field too large: p^e exceeds " + std::to_string(max_q));
  }
  if (q % ell != 1)
    throw ValidationError("q=" + std::to_string(q) + " is not congruent to 1 mod ell=" + std::to_string(ell));

  Field f;
  f.p_ = p;
  f.e_ = e;
  f.q_ = static_cast<std::uint32_t>(q);
  f.ell_ = ell;
  if (e == 1) {
    f.modulus_ = {0, 1};
  } else {
    // Monic degree-e candidates indexed so that the X^{e-1} coefficient is the most
    // significant digit; the first irreducible found is the smallest.
    const std::uint64_t count = q;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      detail::FpPoly cand(e + 1, 0);
      std::uint64_t x = idx;
      for (std::uint32_t i = 0; i < e; ++i, x /= p) cand[i] = static_cast<std::uint32_t>(x % p);
      cand[e] = 1;
      if (detail::fp_is_irreducible(cand, p)) {
        f.modulus_ = cand;
        break;
      }
    }
    if (f.modulus_.empty()) throw InternalError("no irreducible modulus found");
  }
  f.build_tables();
  f.b_ell_ = f.exp_[(f.q_ - 1) / ell];
  return f;
}

}  // namespace ellcover
