#include <gtest/gtest.h>

#include <map>

#include "ellcover/oracle.hpp"

using namespace ellcover;

TEST(Oracle, ResidueGenerator) {
  const Field F = make_field(3, 1, 2);
  EXPECT_EQ(residue_generator(F, Place::finite(Poly({1, 0, 1}))), Poly::linear(1));
  for (auto [p, e, ell] : std::vector<std::tuple<int, int, int>>{{3, 1, 2}, {2, 2, 3}, {7, 1, 3}}) {
    const Field G = make_field(p, e, ell);
    for (const auto& v : places_up_to(G, 2)) {
      if (v.infinite) continue;
      const ResidueLog L(G, v);
      const Poly g = L.generator();
      const std::uint64_t N = L.norm();
      EXPECT_EQ(pow_mod(G, g, (N - 1) / (G.q() - 1), v.poly), Poly::constant(G.mu()));
      Poly x = Poly::one();
      for (std::uint64_t k = 0; k + 1 < N; ++k) {
        EXPECT_EQ(L.log(x), k);
        x = mulmod(G, x, g, v.poly);
        if (k + 2 < N) { EXPECT_FALSE(x.is_one()); }
      }
      EXPECT_TRUE(x.is_one());
      EXPECT_THROW(L.log(v.poly), ValidationError);
    }
  }
  EXPECT_THROW(ResidueLog(F, Place::infinity()), ValidationError);
  EXPECT_THROW(ResidueLog(F, Place::finite(Poly({1, 0, 1})), 5), BudgetError);
}

TEST(Oracle, MapCountsEqualCharacterCounts) {
  for (auto [p, e, ell, nmax] : std::vector<std::tuple<int, int, int, unsigned>>{{3, 1, 2, 6}, {2, 2, 3, 4}, {7, 1, 3, 3}, {5, 1, 2, 4}}) {
    const Field F = make_field(p, e, ell);
    for (unsigned n = 1; n <= nmax; ++n) {
      std::uint64_t maps = 0;
      enumerate_maps(F, n, [&](const IdeleMap& m) {
        ++maps;
        EXPECT_EQ(support_degree(m), n);
        EXPECT_TRUE(is_compatible(m, ell));
      });
      EXPECT_EQ(maps, enumerate_summary(F, n, {}, {}).characters) << "q=" << F.q() << " n=" << n;
      EXPECT_EQ(count_maps(F, n), maps);
    }
  }
}

TEST(Oracle, ConditionedCrosscheck) {
  const Field F = make_field(3, 1, 2);
  const Place X = Place::finite(Poly::x());
  const std::map<LocalType, std::uint64_t> want = {{LocalType::Ramified, 36}, {LocalType::Split, 54}, {LocalType::Inert, 54}};
  for (auto [t, count] : want) {
    const auto r = crosscheck_counts(F, 4, {{X, t}});
    EXPECT_TRUE(r.match);
    EXPECT_EQ(r.covers_characters, count);
    EXPECT_EQ(r.map_count, count);
  }
  const Field G = make_field(2, 2, 3);
  const Conditions mixed = {{Place::infinity(), LocalType::Split}, {Place::finite(Poly({2, 1, 1})), LocalType::Inert}};
  for (unsigned n = 2; n <= 4; ++n) EXPECT_TRUE(crosscheck_counts(G, n, mixed).match) << n;
}

// Every map is matched to exactly one field, each field receives ell-1 maps,
// and the splitting types agree at every place of degree <= 2.
TEST(Oracle, ExhaustiveSplittingAgreement) {
  for (auto [p, e, ell, n] : std::vector<std::tuple<int, int, int, unsigned>>{{3, 1, 2, 4}, {2, 2, 3, 3}, {7, 1, 3, 2}}) {
    const Field F = make_field(p, e, ell);
    const auto fields = enumerate_extensions(F, n);
    const auto sig_places = places_up_to(F, 4);
    std::map<std::string, std::size_t> by_sig;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      std::vector<CharValue> vals;
      for (const auto& v : sig_places) vals.push_back(class_character(F, fields[i], v));
      ASSERT_TRUE(by_sig.emplace(signature(F, class_support(F, fields[i]), vals), i).second);
    }
    OracleContext ctx(F);
    const auto test_places = places_up_to(F, 2);
    std::vector<unsigned> hits(fields.size(), 0);
    enumerate_maps(F, n, [&](const IdeleMap& m) {
      std::vector<CharValue> vals;
      for (const auto& v : sig_places) vals.push_back(frobenius_exponent(ctx, m, v));
      const auto it = by_sig.find(signature(F, m.support, vals));
      ASSERT_NE(it, by_sig.end());
      ++hits[it->second];
      for (const auto& v : test_places)
        EXPECT_EQ(map_splitting_type(ctx, m, v), splitting_type(F, fields[it->second], v));
    });
    for (auto h : hits) EXPECT_EQ(h, static_cast<unsigned>(ell - 1));
  }
}

TEST(Oracle, SampledAgreement) {
  for (auto [p, e, ell] : std::vector<std::tuple<int, int, int>>{{3, 1, 2}, {2, 2, 3}, {7, 1, 3}, {5, 1, 2}}) {
    const Field F = make_field(p, e, ell);
    const auto r = splitting_agreement(F, 4, 100);
    EXPECT_EQ(r.checked, 100u);
    EXPECT_EQ(r.agreed, 100u);
    EXPECT_EQ(r.unmatched, 0u);
  }
}

// Scaling all local values by k in 1..ell-1 describes the same field.
TEST(Oracle, ScalingPreservesCompatibilityAndSplitting) {
  for (auto [p, e, ell, n] : std::vector<std::tuple<int, int, int, unsigned>>{{2, 2, 3, 4}, {7, 1, 3, 3}, {11, 1, 5, 2}}) {
    const Field F = make_field(p, e, ell);
    OracleContext ctx(F);
    const auto test_places = places_up_to(F, 2);
    std::uint64_t maps = 0;
    enumerate_maps(F, n, [&](const IdeleMap& m) {
      ++maps;
      for (unsigned k = 2; k < static_cast<unsigned>(ell); ++k) {
        IdeleMap s = m;
        for (auto& r : s.values) r = r * k % ell;
        s.psi = m.psi * k % ell;
        EXPECT_TRUE(is_compatible(s, ell));
        for (const auto& v : test_places) {
          EXPECT_EQ(map_splitting_type(ctx, s, v).kind, map_splitting_type(ctx, m, v).kind);
          const CharValue a = frobenius_exponent(ctx, m, v), b = frobenius_exponent(ctx, s, v);
          EXPECT_EQ(b.zero, a.zero);
          if (!a.zero) { EXPECT_EQ(b.k, a.k * k % ell); }
        }
      }
    });
    EXPECT_GT(maps, 0u);
  }
}
