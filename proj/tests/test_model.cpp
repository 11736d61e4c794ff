#include <gtest/gtest.h>

#include "ellcover/model.hpp"
#include "ellcover/series.hpp"

using namespace ellcover;

namespace {

// Law of X_1 + ... + X_k by listing all 3^k outcomes.
std::vector<Rational> brute_sum(const RVSpec& rv, unsigned k) {
  const std::vector<std::pair<unsigned, Rational>> atoms = {{0, rv.p0}, {1, rv.p1}, {rv.ell, rv.pell}};
  std::vector<Rational> out(rv.ell * k + 1, Rational(0));
  std::uint64_t total = 1;
  for (unsigned i = 0; i < k; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    unsigned m = 0;
    Rational p = 1;
    for (unsigned i = 0; i < k; ++i, c /= 3) {
      m += atoms[c % 3].first;
      p *= atoms[c % 3].second;
    }
    out[m] += p;
  }
  return out;
}

}  // namespace

TEST(Model, PlaceLawMatchesLocalDensities) {
  for (std::uint32_t q : {3u, 4u, 7u, 11u})
    for (unsigned ell : {2u, 3u, 5u}) {
      const RVSpec rv = rv_distribution(q, ell);
      EXPECT_EQ(rv.p0 + rv.p1 + rv.pell, 1);
      EXPECT_EQ(rv.p1, local_density(q, ell, 1, LocalType::Ramified));
      EXPECT_EQ(rv.pell, local_density(q, ell, 1, LocalType::Split));
      EXPECT_EQ(rv.p0, local_density(q, ell, 1, LocalType::Inert));
      EXPECT_EQ(rv.p1 + Rational(ell) * rv.pell, 1);  // E X = 1
    }
}

TEST(Model, ConvolutionMatchesEnumeration) {
  for (auto [q, ell] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 2}, {4, 3}, {11, 5}})
    for (unsigned k = 0; k <= 6; ++k) {
      const RVSpec rv = rv_distribution(q, ell);
      const DistVector d = sum_distribution(rv, k);
      const auto brute = brute_sum(rv, k);
      ASSERT_EQ(d.p.size(), brute.size());
      for (std::size_t m = 0; m < brute.size(); ++m) EXPECT_EQ(d.p[m], brute[m]);
      EXPECT_EQ(d.total(), 1);
      EXPECT_EQ(d.mean(), Rational(k));
      ASSERT_EQ(d.p.size(), ell * k + 1);
      EXPECT_GT(d.p.back(), 0);
    }
}

TEST(Model, FrozenValues) {
  const DistVector d = sum_distribution(make_field(3, 1, 2), 4);
  EXPECT_EQ(d.at(0), Rational(81, 4096));
  EXPECT_EQ(d.mean(), 4);
  EXPECT_EQ(d.provenance, Provenance::Model);
  EXPECT_EQ(d.at(100), 0);
}

TEST(Model, DistanceReport) {
  DistVector a, b;
  a.p = {Rational(1, 2), Rational(1, 2)};
  b.p = {Rational(1, 4), Rational(1, 4), Rational(1, 2)};
  const auto r = compare_distributions(a, b);
  EXPECT_EQ(r.tv, Rational(1, 2));
  EXPECT_EQ(r.sup, Rational(1, 2));
  EXPECT_EQ(r.mean_a, Rational(1, 2));
  EXPECT_EQ(r.mean_b, Rational(5, 4));
  EXPECT_EQ(compare_distributions(a, a).tv, 0);
}

TEST(Model, ConvolutionIsAssociative) {
  const RVSpec rv = rv_distribution(4, 3);
  const DistVector x = single_place(rv), y = sum_distribution(rv, 2), z = sum_distribution(rv, 3);
  const DistVector l = convolve(convolve(x, y), z), r = convolve(x, convolve(y, z));
  EXPECT_EQ(l.p, r.p);
  EXPECT_EQ(l.p, sum_distribution(rv, 6).p);
}
