#include <gtest/gtest.h>

#include <map>
#include <set>

#include "ellcover/covers.hpp"

using namespace ellcover;

namespace {

bool brute_squarefree(const Field& F, const Poly& f) {
  for (int k = 1; 2 * k <= f.degree(); ++k)
    for (std::uint64_t j = 0; j < monic_count(F, k); ++j) {
      const Poly g = monic_from_index(F, k, j);
      if (divides(F, mul(F, g, g), f)) return false;
    }
  return true;
}

// Characters of conductor degree n counted straight from the definition: all
// (beta, f_1, ..., f_{ell-1}) with prod f_i square-free and not all f_i = 1; the
// conductor is the number of distinct roots of prod f_i (counted with degree)
// plus one if the degree of beta * prod f_i^i is prime to ell.
std::map<unsigned, std::uint64_t> brute_character_counts(const Field& F, unsigned nmax) {
  const unsigned ell = F.ell();
  std::map<unsigned, std::uint64_t> out;
  std::vector<Poly> fs(ell - 1);
  auto rec = [&](auto&& self, unsigned slot, unsigned used) -> void {
    if (slot == ell - 1) {
      Poly prod = Poly::one();
      unsigned weighted = 0, total = 0;
      for (unsigned i = 0; i < ell - 1; ++i) {
        prod = mul(F, prod, fs[i]);
        weighted += (i + 1) * fs[i].degree();
        total += fs[i].degree();
      }
      if (total == 0 || !brute_squarefree(F, prod)) return;
      const unsigned n = total + (weighted % ell != 0);
      if (n <= nmax) out[n] += ell;
      return;
    }
    for (unsigned d = 0; used + d <= nmax; ++d)
      for (std::uint64_t i = 0; i < monic_count(F, d); ++i) {
        fs[slot] = monic_from_index(F, d, i);
        self(self, slot + 1, used + d);
      }
  };
  rec(rec, 0, 0);
  return out;
}

// Rational places of the smooth model from the affine equation y^ell = beta prod f_i^i.
std::uint64_t brute_rational_points(const Field& F, const KummerClass& c) {
  const Poly a = representative(F, c);
  std::uint64_t pts = 0;
  for (Elem x = 0; x < F.q(); ++x) {
    const Elem v = eval(F, a, x);
    pts += v == 0 ? 1 : (F.is_ell_power(v) ? F.ell() : 0);
  }
  if (a.degree() % static_cast<int>(F.ell()) != 0)
    pts += 1;
  else
    pts += F.is_ell_power(a.lead()) ? F.ell() : 0;
  return pts;
}

}  // namespace

TEST(Covers, ConductorAndGenusFormulas) {
  EXPECT_EQ(conductor_degree({3}, 2), 4u);
  EXPECT_EQ(conductor_degree({4}, 2), 4u);
  EXPECT_EQ(conductor_degree({1, 1}, 3), 2u);  // 1 + 2 = 3: unramified at infinity
  EXPECT_EQ(conductor_degree({2, 0}, 3), 3u);
  EXPECT_EQ(genus_from_conductor(2, 4), 1u);
  EXPECT_EQ(genus_from_conductor(3, 4), 2u);
  EXPECT_EQ(conductor_from_genus(2, 5), 12u);
  EXPECT_EQ(conductor_from_genus(5, 2), 3u);
  EXPECT_THROW(conductor_from_genus(5, 1), ValidationError);
  for (unsigned ell : {2u, 3u, 5u, 7u})
    for (unsigned n = 2; n < 20; ++n)
      if ((ell - 1) * (n - 2) % 2 == 0) { EXPECT_EQ(conductor_from_genus(ell, genus_from_conductor(ell, n)), n); }
  EXPECT_THROW(genus_from_conductor(2, 5), InternalError);
}

TEST(Covers, ClassValidation) {
  const Field F = make_field(7, 1, 3);
  EXPECT_NO_THROW(make_class(F, 1, {Poly::x(), Poly::linear(1)}));
  EXPECT_THROW(make_class(F, 0, {Poly::x(), Poly::x()}), ValidationError);
  EXPECT_THROW(make_class(F, 0, {Poly({0, 0, 1}), Poly::one()}), ValidationError);
  EXPECT_THROW(make_class(F, 3, {Poly::x(), Poly::one()}), ValidationError);
  EXPECT_THROW(make_class(F, 0, {Poly::x()}), ValidationError);
  EXPECT_THROW(conductor_of(F, KummerClass{1, {Poly::one(), Poly::one()}}), ValidationError);
}

TEST(Covers, PowerOrbitAndCanonicalForm) {
  const Field F = make_field(11, 1, 5);
  const KummerClass c = make_class(F, 2, {Poly::x(), Poly::one(), Poly::linear(1), Poly::linear(3)});
  std::set<std::vector<unsigned>> degs;
  KummerClass least = c;
  for (unsigned k = 1; k < 5; ++k) {
    const KummerClass p = power(c, k, 5);
    EXPECT_EQ(conductor_of(F, p).degree, conductor_of(F, c).degree);
    EXPECT_EQ(canonical(p, 5), canonical(c, 5));
    if (p < least) least = p;
    // F^k maps the representative to its k-th power up to ell-th powers.
    const Poly lhs = representative(F, p);
    const Poly rhs = pow(F, representative(F, c), k);
    for (Elem x = 0; x < F.q(); ++x) {
      const Elem a = eval(F, lhs, x), b = eval(F, rhs, x);
      EXPECT_EQ(a == 0, b == 0);
      if (a && b) { EXPECT_TRUE(F.is_ell_power(F.div(a, b))); }
    }
  }
  EXPECT_EQ(canonical(c, 5), least);
  EXPECT_TRUE(is_canonical(least, 5));
  EXPECT_THROW(power(c, 5, 5), ValidationError);
}

TEST(Covers, CharacterCountsMatchDefinition) {
  struct Case {
    std::uint32_t p, e, ell;
    unsigned nmax;
  };
  for (const Case& k : {Case{3, 1, 2, 6}, Case{5, 1, 2, 4}, Case{2, 2, 3, 5}, Case{7, 1, 3, 3}, Case{11, 1, 5, 2}}) {
    const Field F = make_field(k.p, k.e, k.ell);
    const auto brute = brute_character_counts(F, k.nmax);
    for (unsigned n = 1; n <= k.nmax; ++n) {
      const auto s = enumerate_summary(F, n, {}, {});
      const auto it = brute.find(n);
      EXPECT_EQ(s.characters, it == brute.end() ? 0u : it->second) << "q=" << F.q() << " ell=" << k.ell << " n=" << n;
      EXPECT_EQ(s.characters, (k.ell - 1) * s.fields);
      std::uint64_t tuples = 0;
      for (const auto& d : degree_tuples(k.ell, n)) tuples += count_tuples(F, d);
      EXPECT_EQ(s.characters, k.ell * tuples);
    }
  }
}

TEST(Covers, FrozenCounts) {
  const Field F3 = make_field(3, 1, 2);
  const std::vector<std::uint64_t> q3 = {0, 18, 0, 144, 0, 1296, 0, 11664};
  for (unsigned n = 1; n <= 8; ++n) EXPECT_EQ(enumerate_summary(F3, n, {}, {}).characters, q3[n - 1]);
  const Field F4 = make_field(2, 2, 3);
  const std::vector<std::uint64_t> q4 = {0, 60, 360, 540, 5760, 31500};
  for (unsigned n = 1; n <= 6; ++n) {
    const auto s = enumerate_summary(F4, n, {}, {});
    EXPECT_EQ(s.characters, q4[n - 1]);
    EXPECT_EQ(s.fields, q4[n - 1] / 2);
  }
}

TEST(Covers, EnumeratedClassesAreValidAndDistinct) {
  const Field F = make_field(2, 2, 3);
  for (unsigned n = 2; n <= 4; ++n) {
    const auto fields = enumerate_extensions(F, n);
    std::set<KummerClass> seen;
    for (const auto& c : fields) {
      EXPECT_NO_THROW(validate_class(F, c));
      EXPECT_TRUE(is_canonical(c, 3));
      EXPECT_EQ(conductor_of(F, c).degree, n);
      EXPECT_EQ(conductor_of(F, c).disc_degree, 2 * n);
      EXPECT_TRUE(seen.insert(c).second);
    }
  }
}

TEST(Covers, RationalPointsMatchAffineModel) {
  for (auto [p, e, ell] : std::vector<std::tuple<int, int, int>>{{3, 1, 2}, {5, 1, 2}, {7, 1, 3}, {2, 2, 3}}) {
    const Field F = make_field(p, e, ell);
    const PlaceTable T(F, 1);
    for (unsigned n = 2; n <= 4; ++n)
      for_each_class(F, n, {}, [&](const KummerClass& c) {
        EXPECT_EQ(point_count(F, c, 1, T), brute_rational_points(F, c)) << to_string(F, c);
      });
  }
}

TEST(Covers, EllipticCurveOverF3) {
  const Field F = make_field(3, 1, 2);
  const KummerClass c = make_class(F, 0, {Poly({0, 2, 0, 1})});  // Y^2 = X^3 - X
  EXPECT_EQ(genus_of(F, c), 1u);
  EXPECT_EQ(point_count(F, c, 1), 4u);
  EXPECT_EQ(point_count(F, c, 2), 16u);
  EXPECT_EQ(zeta_numerator(F, c), (std::vector<BigInt>{1, 0, 3}));
}

TEST(Covers, WeilBoundAndFunctionalEquation) {
  for (auto [p, e, ell, nmax] : std::vector<std::tuple<int, int, int, unsigned>>{{3, 1, 2, 6}, {2, 2, 3, 4}, {7, 1, 3, 3}}) {
    const Field F = make_field(p, e, ell);
    for (unsigned n = 3; n <= nmax; ++n) {
      if ((ell - 1) * (n - 2) % 2 != 0) continue;
      const unsigned g = genus_from_conductor(ell, n);
      if (g == 0) continue;
      const PlaceTable T(F, 2 * g);
      for (const auto& c : enumerate_extensions(F, n)) {
        const auto a = zeta_numerator(F, c);
        ASSERT_EQ(a.size(), 2 * g + 1);
        for (unsigned i = 0; i <= g; ++i) EXPECT_EQ(a[2 * g - i], ipow(BigInt(F.q()), g - i) * a[i]);
        const BigInt dev = BigInt(point_count(F, c, 1, T)) - (F.q() + 1);
        EXPECT_LE(dev * dev, BigInt(4) * g * g * F.q());
        EXPECT_EQ(a[1], dev);  // N_1 = q + 1 + a_1
      }
    }
  }
}

TEST(Covers, ConditionedCountsMatchFiltering) {
  const Field F = make_field(3, 1, 2);
  const Place X = Place::finite(Poly::x()), Y = Place::finite(Poly({1, 0, 1})), inf = Place::infinity();
  const std::vector<Conditions> sets = {{{X, LocalType::Ramified}},
                                        {{X, LocalType::Split}},
                                        {{X, LocalType::Inert}},
                                        {{X, LocalType::Split}, {Y, LocalType::Inert}},
                                        {{inf, LocalType::Ramified}, {Y, LocalType::Split}}};
  for (unsigned n = 2; n <= 6; ++n) {
    const auto s = enumerate_summary(F, n, sets, {});
    for (std::size_t k = 0; k < sets.size(); ++k) {
      std::uint64_t direct = 0;
      for_each_class(F, n, {}, [&](const KummerClass& c) {
        bool ok = true;
        for (const auto& cond : sets[k]) ok = ok && splitting_type(F, c, cond.place).kind == cond.type;
        direct += ok;
      });
      EXPECT_EQ(s.cond_characters[k], direct) << "n=" << n << " set " << k;
    }
    EXPECT_EQ(s.cond_characters[0] + s.cond_characters[1] + s.cond_characters[2], s.characters);
  }
  EXPECT_EQ(count_conditioned(F, 4, {{X, LocalType::Ramified}}).characters, 36u);
  EXPECT_EQ(count_conditioned(F, 4, {{X, LocalType::Ramified}}).density, Rational(1, 4));
  EXPECT_THROW(count_conditioned(F, 4, {{X, LocalType::Ramified}, {X, LocalType::Split}}), ValidationError);
}

TEST(Covers, SummaryInvariants) {
  const Field F = make_field(2, 2, 3);
  for (unsigned n = 2; n <= 5; ++n) {
    std::vector<std::string> records;
    const auto s = enumerate_summary(F, n, {}, {}, &records);
    EXPECT_EQ(records.size(), s.fields);
    std::uint64_t hist = 0;
    for (auto h : s.point_hist) hist += h;
    EXPECT_EQ(hist, s.fields);
    for (const auto& m : s.marginals) EXPECT_EQ(m[0] + m[1] + m[2], s.fields);
  }
}

TEST(Covers, ShardIndependence) {
  const Field F = make_field(3, 1, 2);
  const std::vector<Conditions> sets = {{{Place::finite(Poly::x()), LocalType::Ramified}}};
  for (unsigned n : {6u, 8u}) {
    std::vector<std::string> r1, r2, r8;
    EnumOptions o1, o2, o8;
    o2.shards = 2;
    o8.shards = 8;
    const auto s1 = enumerate_summary(F, n, sets, o1, &r1);
    EXPECT_EQ(enumerate_summary(F, n, sets, o2, &r2), s1);
    EXPECT_EQ(enumerate_summary(F, n, sets, o8, &r8), s1);
    EXPECT_EQ(r1, r2);
    EXPECT_EQ(r1, r8);
  }
}

TEST(Covers, BudgetGuard) {
  const Field F = make_field(3, 1, 2);
  EXPECT_THROW(enumerate_summary(F, 40, {}, {}), BudgetError);
  EnumOptions tiny;
  tiny.budget = 10;
  EXPECT_THROW(enumerate_summary(F, 4, {}, tiny), BudgetError);
  tiny.force_budget = true;
  EXPECT_EQ(enumerate_summary(F, 4, {}, tiny).characters, 144u);
}

TEST(Covers, PointDistributionIsNormalised) {
  const Field F = make_field(3, 1, 2);
  for (unsigned g = 1; g <= 3; ++g) {
    const auto d = point_distribution(F, g);
    Rational total = 0, mean = 0;
    for (std::size_t m = 0; m < d.size(); ++m) {
      total += d[m];
      mean += Rational(static_cast<long long>(m)) * d[m];
    }
    EXPECT_EQ(total, 1);
    EXPECT_EQ(mean, 4);
  }
}

// Rational points lie over the rational places: ell above each split place, one
// above each ramified place, none above inert ones.
TEST(Covers, PointCountFromSplittingTypes) {
  for (auto [p, e, ell, n] : std::vector<std::tuple<int, int, int, unsigned>>{{3, 1, 2, 6}, {2, 2, 3, 5}, {7, 1, 3, 3}}) {
    const Field F = make_field(p, e, ell);
    const PlaceTable T(F, 1);
    for (const auto& c : enumerate_extensions(F, n)) {
      std::uint64_t split = 0, ram = 0, inert = 0;
      for (const auto& v : T.places()) {
        switch (splitting_type(F, c, v).kind) {
          case LocalType::Split: ++split; break;
          case LocalType::Ramified: ++ram; break;
          case LocalType::Inert: ++inert; break;
        }
      }
      EXPECT_EQ(split + ram + inert, F.q() + 1u);
      EXPECT_EQ(point_count(F, c, 1, T), static_cast<std::uint64_t>(ell) * split + ram) << to_string(F, c);
    }
  }
}
