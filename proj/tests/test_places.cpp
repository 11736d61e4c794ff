#include <gtest/gtest.h>

#include <random>

#include "ellcover/places.hpp"

using namespace ellcover;

namespace {

// Euler criterion in F_q[X]/(v): f^{(q^d - 1)/ell} is b_ell^k for a unique k.
CharValue euler_symbol(const Field& F, const Poly& f, const Poly& v) {
  const Poly r = mod(F, f, v);
  if (r.is_zero()) return CharValue::Zero();
  const std::uint64_t Nv = ipow_u64(F.q(), static_cast<unsigned>(v.degree()));
  const Poly t = pow_mod(F, r, (Nv - 1) / F.ell(), v);
  for (unsigned k = 0; k < F.ell(); ++k)
    if (t == Poly::constant(F.pow(F.b_ell(), k))) return CharValue::Exp(k, F.ell());
  ADD_FAILURE() << "Euler criterion value is not a root of unity";
  return CharValue::Zero();
}

// Norm of a mod v as a^{(q^d - 1)/(q - 1)}, which is a constant.
Elem brute_norm(const Field& F, const Poly& a, const Poly& v) {
  const Poly r = mod(F, a, v);
  if (r.is_zero()) return 0;
  const std::uint64_t Nv = ipow_u64(F.q(), static_cast<unsigned>(v.degree()));
  const Poly t = pow_mod(F, r, (Nv - 1) / (F.q() - 1), v);
  EXPECT_LE(t.degree(), 0);
  return t.is_zero() ? 0 : t.c[0];
}

Poly random_poly(const Field& F, std::mt19937& rng, int deg) {
  std::uniform_int_distribution<Elem> pick(0, F.q() - 1);
  std::vector<Elem> c(deg + 1);
  for (auto& x : c) x = pick(rng);
  return Poly(c);
}

struct FieldCase {
  std::uint32_t p, e, ell;
};
const std::vector<FieldCase> kFields = {{3, 1, 2}, {5, 1, 2}, {7, 1, 3}, {2, 2, 3}, {3, 2, 2}, {11, 1, 5}};

}  // namespace

TEST(Places, CountsAndTable) {
  const Field F = make_field(3, 1, 2);
  const PlaceTable T(F, 3);
  EXPECT_EQ(T.places().size(), 15u);
  EXPECT_TRUE(T.places().front().infinite);
  EXPECT_EQ(count_places_of_degree(3, 1), 4);  // includes infinity
  EXPECT_EQ(count_places_of_degree(3, 2), 3);
  EXPECT_EQ(count_places_of_degree(3, 3), 8);
  EXPECT_EQ(count_places_of_degree(4, 2), 6);
  for (unsigned d = 1; d <= 3; ++d) EXPECT_EQ(BigInt(T.finite_of_degree(d).size()) + (d == 1), count_places_of_degree(F, d));
  EXPECT_THROW(make_place(F, Poly({1, 0, 1, 1})), ValidationError);  // X^3+X^2+1 vanishes at 1
}

TEST(Places, MakePlaceValidates) {
  const Field F = make_field(3, 1, 2);
  EXPECT_NO_THROW(make_place(F, Poly({1, 0, 1})));     // X^2+1
  EXPECT_THROW(make_place(F, Poly({2, 0, 1})), ValidationError);  // X^2+2 = (X-1)(X+1)
  EXPECT_THROW(make_place(F, Poly({1, 0, 2})), ValidationError);  // not monic
  EXPECT_EQ(to_string(F, Place::infinity()), "inf");
  EXPECT_EQ(to_string(F, Place::finite(Poly({1, 0, 1}))), "X^2+1");
}

TEST(Places, ResultantIsNorm) {
  for (const auto& fc : kFields) {
    const Field F = make_field(fc.p, fc.e, fc.ell);
    const PlaceTable T(F, 3);
    std::mt19937 rng(fc.p + 100 * fc.e);
    for (const auto& v : T.places()) {
      if (v.infinite) continue;
      for (int i = 0; i < 5; ++i) {
        const Poly a = random_poly(F, rng, 5);
        EXPECT_EQ(resultant(F, v.poly, mod(F, a, v.poly)), brute_norm(F, a, v.poly));
      }
    }
  }
}

TEST(Places, ResidueSymbolMatchesEulerCriterion) {
  for (const auto& fc : kFields) {
    const Field F = make_field(fc.p, fc.e, fc.ell);
    const PlaceTable T(F, F.q() <= 5 ? 3 : 2);
    std::mt19937 rng(fc.p * 7 + fc.e);
    for (const auto& v : T.places()) {
      if (v.infinite) continue;
      for (int i = 0; i < 8; ++i) {
        const Poly f = random_poly(F, rng, 4);
        if (f.is_zero()) continue;
        EXPECT_EQ(residue_symbol(F, f, v), euler_symbol(F, f, v.poly)) << to_string(F, f) << " at " << to_string(F, v);
      }
    }
  }
  const Field F7 = make_field(7, 1, 3);
  EXPECT_EQ(residue_symbol(F7, Poly::linear(2), Place::finite(Poly::x())).k, 2u);
}

TEST(Places, ResidueSymbolIsMultiplicative) {
  const Field F = make_field(7, 1, 3);
  const PlaceTable T(F, 2);
  std::mt19937 rng(1);
  for (const auto& v : T.places()) {
    if (v.infinite) continue;
    for (int i = 0; i < 5; ++i) {
      const Poly f = random_poly(F, rng, 3), g = random_poly(F, rng, 3);
      if (f.is_zero() || g.is_zero()) continue;
      EXPECT_EQ(residue_symbol(F, mul(F, f, g), v), residue_symbol(F, f, v).times(residue_symbol(F, g, v), 3));
    }
  }
}

TEST(Places, ReciprocityLaw) {
  for (const auto& fc : kFields) {
    const Field F = make_field(fc.p, fc.e, fc.ell);
    const PlaceTable T(F, F.q() <= 5 ? 3 : 2);
    const unsigned s = reciprocity_sign_exponent(F);
    EXPECT_EQ(s, constant_symbol(F, F.neg(1)).k);
    if (fc.ell != 2 || F.q() % 4 == 1) { EXPECT_EQ(s, 0u); }
    for (const auto& v : T.places())
      for (const auto& w : T.places()) {
        if (v.infinite || w.infinite || v == w) continue;
        const CharValue sign = CharValue::Exp(static_cast<long long>(s) * v.degree() * w.degree(), F.ell());
        EXPECT_EQ(residue_symbol(F, w.poly, v), residue_symbol(F, v.poly, w).times(sign, F.ell()));
      }
  }
}

TEST(Places, CharacterAtInfinity) {
  const Field F = make_field(7, 1, 3);
  EXPECT_TRUE(char_infinity(F, Poly({1, 1})).zero);
  EXPECT_TRUE(char_infinity(F, Poly({1, 1, 1})).zero);
  EXPECT_FALSE(char_infinity(F, Poly({1, 1, 1, 1})).zero);
  EXPECT_EQ(char_infinity(F, Poly({1, 1, 1, 3})), constant_symbol(F, 3));
  // For monic v the value at infinity is trivial when ell | deg v and zero otherwise.
  for (const auto& fc : kFields) {
    const Field G = make_field(fc.p, fc.e, fc.ell);
    for (const auto& v : places_up_to(G, G.q() <= 5 ? 3 : 2)) {
      if (v.infinite) continue;
      const CharValue c = char_infinity(G, v.poly);
      if (v.degree() % fc.ell == 0) {
        EXPECT_EQ(c, CharValue::Exp(0, fc.ell));
      } else {
        EXPECT_TRUE(c.zero);
      }
    }
  }
}

TEST(Places, SplittingTypeFromCharacter) {
  for (unsigned ell : {2u, 3u, 5u}) {
    const auto r = SplittingType::from_char(CharValue::Zero(), ell);
    EXPECT_EQ(r.kind, LocalType::Ramified);
    EXPECT_EQ(r.e * r.f * r.r, ell);
    const auto s = SplittingType::from_char(CharValue::Exp(0, ell), ell);
    EXPECT_EQ(s.kind, LocalType::Split);
    EXPECT_EQ(s.r, ell);
    const auto i = SplittingType::from_char(CharValue::Exp(1, ell), ell);
    EXPECT_EQ(i.kind, LocalType::Inert);
    EXPECT_EQ(i.f, ell);
  }
}

TEST(Places, CharacterSumsVanishBeyondDegree) {
  for (const auto& fc : std::vector<FieldCase>{{3, 1, 2}, {7, 1, 3}, {2, 2, 3}}) {
    const Field F = make_field(fc.p, fc.e, fc.ell);
    const PlaceTable T(F, 3);
    for (const auto& v : T.places()) {
      if (v.infinite || (F.q() > 4 && v.degree() > 2)) continue;
      for (unsigned power = 1; power < F.ell(); ++power) {
        // Direct sum from the Euler criterion for n < deg v + 2.
        for (unsigned n = 0; n <= v.degree() + 1; ++n) {
          std::vector<BigInt> hits(F.ell());
          for (std::uint64_t i = 0; i < monic_count(F, n); ++i) {
            const CharValue c = euler_symbol(F, monic_from_index(F, n, i), v.poly);
            if (!c.zero) hits[(c.k * power) % F.ell()] += 1;
          }
          Cyclo want(F.ell());
          for (unsigned k = 0; k < F.ell(); ++k) want += Cyclo::root(F.ell(), k) * hits[k];
          EXPECT_EQ(character_sum(F, v, power, n), want);
          if (n >= v.degree()) { EXPECT_TRUE(want.is_zero()); }
        }
        const auto L = l_polynomial(F, v, power);
        EXPECT_LE(L.size(), v.degree());
      }
    }
  }
  const Field F3 = make_field(3, 1, 2);
  const auto L = l_polynomial(F3, Place::finite(Poly({1, 0, 1})), 1);
  ASSERT_EQ(L.size(), 2u);
  EXPECT_EQ(L[0], Cyclo(2, BigInt(1)));
  EXPECT_EQ(L[1], Cyclo(2, BigInt(-1)));
  EXPECT_THROW(l_polynomial(F3, Place::finite(Poly::x()), 2), ValidationError);
}
