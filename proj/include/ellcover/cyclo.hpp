#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"

namespace ellcover {

/// Element of Z[xi], xi a primitive ell-th root of unity, stored in the basis
/// 1, xi, ..., xi^{ell-2} (the relation 1 + xi + ... + xi^{ell-1} = 0 is used to
/// eliminate xi^{ell-1}). For ell = 2 this is just an integer.
class Cyclo {
 public:
  Cyclo() : ell_(2), c_(1) {}
  explicit Cyclo(unsigned ell, const BigInt& v = 0) : ell_(ell), c_(ell - 1) {
    if (ell < 2) throw ValidationError("Cyclo: ell must be >= 2");
    c_[0] = v;
  }
  Cyclo(unsigned ell, std::vector<BigInt> coeffs) : ell_(ell), c_(std::move(coeffs)) {
    if (c_.size() != ell - 1) throw ValidationError("Cyclo: expected ell-1 coefficients");
  }

  /// xi^k for any integer k.
  static Cyclo root(unsigned ell, long long k) {
    Cyclo r(ell);
    long long m = k % static_cast<long long>(ell);
    if (m < 0) m += ell;
    if (m == static_cast<long long>(ell) - 1) {
      for (auto& x : r.c_) x = -1;
    } else {
      r.c_[0] = 0;
      r.c_[static_cast<std::size_t>(m)] = 1;
    }
    return r;
  }

  unsigned ell() const { return ell_; }
  const std::vector<BigInt>& coeffs() const { return c_; }

  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  /// The rational-integer value; throws if a xi-component survives.
  const BigInt& rational() const {
    if (!is_rational()) throw InternalError("Cyclo value is not a rational integer: " + to_string());
    return c_[0];
  }

  Cyclo& operator+=(const Cyclo& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Cyclo& operator-=(const Cyclo& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Cyclo& operator*=(const BigInt& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Cyclo& operator*=(const Cyclo& o) {
    check(o);
    if (ell_ == 2) {
      c_[0] *= o.c_[0];
      return *this;
    }
    std::vector<BigInt> full(ell_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) full[(i + j) % ell_] += c_[i] * o.c_[j];
    }
    for (std::size_t i = 0; i + 1 < ell_; ++i) c_[i] = full[i] - full[ell_ - 1];
    return *this;
  }

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator*(Cyclo a, const BigInt& s) { return a *= s; }
  friend bool operator==(const Cyclo& a, const Cyclo& b) { return a.ell_ == b.ell_ && a.c_ == b.c_; }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  /// Integers print plainly; otherwise "[c0 c1 ... c_{ell-2}]".
  std::string to_string() const {
    if (is_rational()) return c_[0].str();
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? " " : "") << c_[i].str();
    os << "]";
    return os.str();
  }

 private:
  void check(const Cyclo& o) const {
    if (o.ell_ != ell_) throw InternalError("Cyclo: mismatched ell");
  }

  unsigned ell_;
  std::vector<BigInt> c_;
};

/// Truncated power series sum_{n <= N} a_n u^n with Cyclo coefficients.
class CycloSeries {
 public:
  CycloSeries() : CycloSeries(2, 0) {}
  CycloSeries(unsigned ell, unsigned N) : ell_(ell), a_(N + 1, Cyclo(ell)) {}

  static CycloSeries one(unsigned ell, unsigned N) {
    CycloSeries s(ell, N);
    s.a_[0] = Cyclo(ell, 1);
    return s;
  }
  static CycloSeries from_integers(unsigned ell, const std::vector<BigInt>& v) {
    CycloSeries s(ell, static_cast<unsigned>(v.size()) - 1);
    for (std::size_t i = 0; i < v.size(); ++i) s.a_[i] = Cyclo(ell, v[i]);
    return s;
  }

  unsigned ell() const { return ell_; }
  unsigned N() const { return static_cast<unsigned>(a_.size()) - 1; }
  const Cyclo& operator[](std::size_t i) const { return a_.at(i); }
  Cyclo& operator[](std::size_t i) { return a_.at(i); }

  CycloSeries truncate(unsigned M) const {
    if (M > N()) throw ValidationError("cannot extend a truncated series");
    CycloSeries r(ell_, M);
    for (unsigned i = 0; i <= M; ++i) r.a_[i] = a_[i];
    return r;
  }

  CycloSeries& operator+=(const CycloSeries& o) {
    check(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  CycloSeries& operator-=(const CycloSeries& o) {
    check(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  CycloSeries& operator*=(const Cyclo& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }
  CycloSeries& operator*=(const BigInt& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend CycloSeries operator+(CycloSeries a, const CycloSeries& b) { return a += b; }
  friend CycloSeries operator-(CycloSeries a, const CycloSeries& b) { return a -= b; }
  friend CycloSeries operator*(const CycloSeries& a, const CycloSeries& b) {
    a.check(b);
    CycloSeries r(a.ell_, a.N());
    for (std::size_t i = 0; i < a.a_.size(); ++i) {
      if (a.a_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < a.a_.size(); ++j) r.a_[i + j] += a.a_[i] * b.a_[j];
    }
    return r;
  }
  /// Quotient by a series whose constant term is +1 or -1.
  friend CycloSeries operator/(const CycloSeries& a, const CycloSeries& b) {
    a.check(b);
    const Cyclo& b0 = b.a_[0];
    if (!b0.is_rational() || (b0.rational() != 1 && b0.rational() != -1))
      throw ValidationError("series division needs a unit constant term");
    const BigInt inv = b0.rational();
    CycloSeries r(a.ell_, a.N());
    for (std::size_t n = 0; n < a.a_.size(); ++n) {
      Cyclo acc = a.a_[n];
      for (std::size_t k = 1; k <= n; ++k) acc -= b.a_[k] * r.a_[n - k];
      r.a_[n] = acc * inv;
    }
    return r;
  }
  friend bool operator==(const CycloSeries& a, const CycloSeries& b) { return a.ell_ == b.ell_ && a.a_ == b.a_; }

  bool is_rational() const {
    for (const auto& x : a_)
      if (!x.is_rational()) return false;
    return true;
  }
  /// Integer coefficients; throws InternalError if any xi-component survives.
  std::vector<BigInt> integers() const {
    std::vector<BigInt> out;
    out.reserve(a_.size());
    for (const auto& x : a_) out.push_back(x.rational());
    return out;
  }

 private:
  void check(const CycloSeries& o) const {
    if (o.ell_ != ell_ || o.a_.size() != a_.size()) throw InternalError("CycloSeries: shape mismatch");
  }

  unsigned ell_;
  std::vector<Cyclo> a_;
};

}  // namespace ellcover
