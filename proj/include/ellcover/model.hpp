#pragma once

#include <string>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "numeric.hpp"

namespace ellcover {

/// Point-count contribution of one rational place: 0 (inert), 1 (ramified) or
/// ell (split), with the exact probabilities below.
struct RVSpec {
  unsigned ell = 2;
  Rational p0, p1, pell;
};

inline RVSpec rv_distribution(std::uint32_t q, unsigned ell) {
  const Rational den(static_cast<long long>(q) + ell - 1);
  RVSpec r;
  r.ell = ell;
  r.p0 = Rational(static_cast<long long>(ell - 1) * q) / (Rational(ell) * den);
  r.p1 = Rational(ell - 1) / den;
  r.pell = Rational(q) / (Rational(ell) * den);
  return r;
}

inline RVSpec rv_distribution(const Field& F) { return rv_distribution(F.q(), F.ell()); }

enum class Provenance { Model, Empirical };

inline std::string to_string(Provenance p) { return p == Provenance::Model ? "model" : "empirical"; }

/// Exact probabilities indexed by m = 0, 1, ...
struct DistVector {
  std::vector<Rational> p;
  Provenance provenance = Provenance::Model;

  Rational total() const {
    Rational s = 0;
    for (const auto& x : p) s += x;
    return s;
  }
  Rational mean() const {
    Rational s = 0;
    for (std::size_t m = 0; m < p.size(); ++m) s += Rational(static_cast<long long>(m)) * p[m];
    return s;
  }
  Rational at(std::size_t m) const { return m < p.size() ? p[m] : Rational(0); }
};

inline DistVector convolve(const DistVector& a, const DistVector& b) {
  DistVector r;
  r.provenance = Provenance::Model;
  if (a.p.empty() || b.p.empty()) return r;
  r.p.assign(a.p.size() + b.p.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.p.size(); ++i) {
    if (a.p[i] == 0) continue;
    for (std::size_t j = 0; j < b.p.size(); ++j) r.p[i + j] += a.p[i] * b.p[j];
  }
  return r;
}

inline DistVector single_place(const RVSpec& rv) {
  DistVector d;
  d.p.assign(rv.ell + 1, Rational(0));
  d.p[0] = rv.p0;
  d.p[1] += rv.p1;
  d.p[rv.ell] += rv.pell;
  return d;
}

/// Law of X_1 + ... + X_k, by repeated squaring of the one-place law.
inline DistVector sum_distribution(const RVSpec& rv, unsigned k) {
  DistVector result;
  result.p = {Rational(1)};
  DistVector base = single_place(rv);
  while (k) {
    if (k & 1) result = convolve(result, base);
    k >>= 1;
    if (k) base = convolve(base, base);
  }
  result.provenance = Provenance::Model;
  return result;
}

inline DistVector sum_distribution(const Field& F, unsigned k) { return sum_distribution(rv_distribution(F), k); }

struct DistanceReport {
  Rational tv;
  Rational sup;
  Rational mean_a, mean_b;
};

/// Total-variation and sup distances plus both means; shorter vectors are zero-padded.
inline DistanceReport compare_distributions(const DistVector& a, const DistVector& b) {
  DistanceReport r;
  const std::size_t n = std::max(a.p.size(), b.p.size());
  Rational l1 = 0;
  for (std::size_t m = 0; m < n; ++m) {
    const Rational d = abs(a.at(m) - b.at(m));
    l1 += d;
    if (d > r.sup) r.sup = d;
  }
  r.tv = l1 / 2;
  r.mean_a = a.mean();
  r.mean_b = b.mean();
  return r;
}

}  // namespace ellcover
