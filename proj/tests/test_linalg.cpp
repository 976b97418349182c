#include "oracle.hpp"
#include "spx/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace spx;

namespace {

IntegerMatrix dense(const oracle::Dense& d) { return IntegerMatrix::from_dense(d); }

oracle::Dense random_dense(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi, double density) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::bernoulli_distribution keep(density);
  oracle::Dense m(r, std::vector<Integer>(c, 0));
  for (auto& row : m)
    for (auto& x : row)
      if (keep(rng)) x = val(rng);
  return m;
}

}  // namespace

TEST(Snf, SingleEntry) {
  auto r = smith_normal_form(dense({{2}}));
  ASSERT_EQ(r.invariant_factors, std::vector<Integer>{2});
}

TEST(Snf, TwoByTwo) {
  auto r = smith_normal_form(dense({{2, 4}, {6, 8}}));
  std::vector<Integer> expect{2, 4};
  EXPECT_EQ(r.invariant_factors, expect);
  EXPECT_EQ(oracle::invariant_factors({{2, 4}, {6, 8}}), expect);
}

TEST(Snf, ZeroMatrix) {
  EXPECT_TRUE(smith_normal_form(IntegerMatrix(3, 4)).invariant_factors.empty());
  EXPECT_TRUE(smith_normal_form(IntegerMatrix(0, 0)).invariant_factors.empty());
}

TEST(Snf, MatchesDeterminantalDivisors) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    auto d = random_dense(rng, r, c, -6, 6, 0.6);
    EXPECT_EQ(smith_normal_form(dense(d)).invariant_factors, oracle::invariant_factors(d)) << "trial " << trial;
  }
}

TEST(Snf, DivisibilityChainAndRank) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto d = random_dense(rng, 6, 7, -9, 9, 0.4);
    auto f = smith_normal_form(dense(d)).invariant_factors;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) EXPECT_EQ(f[i + 1] % f[i], 0);
    for (const auto& x : f) EXPECT_GT(x, 0);
    EXPECT_EQ(f.size(), oracle::rank_q(d));
  }
}

TEST(Snf, PermutationInvariant) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto d = random_dense(rng, 5, 6, -5, 5, 0.5);
    auto base = smith_normal_form(dense(d)).invariant_factors;
    auto p = d;
    std::shuffle(p.begin(), p.end(), rng);
    std::vector<std::size_t> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    oracle::Dense q = p;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < 6; ++j) q[i][j] = p[i][perm[j]];
    EXPECT_EQ(smith_normal_form(dense(q)).invariant_factors, base);
    EXPECT_EQ(smith_normal_form(dense(d).transposed()).invariant_factors, base);
  }
}

TEST(FieldElimination, Identity) {
  RationalField Q;
  auto r = field_rank_kernel(dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), Q);
  EXPECT_EQ(r.rank, 3u);
  EXPECT_TRUE(r.kernel.empty());
}

TEST(FieldElimination, TwoIsZeroModTwo) {
  PrimeField F2(2);
  auto r = field_rank_kernel(dense({{2}}), F2);
  EXPECT_EQ(r.rank, 0u);
  ASSERT_EQ(r.kernel.size(), 1u);
}

TEST(FieldElimination, ColumnOverQ) {
  RationalField Q;
  auto r = field_rank_kernel(dense({{2}, {2}}), Q);
  EXPECT_EQ(r.rank, 1u);
  EXPECT_TRUE(r.kernel.empty());
  ASSERT_EQ(r.image.size(), 1u);
}

TEST(FieldElimination, RankNullityAndKernel) {
  std::mt19937 rng(5);
  RationalField Q;
  PrimeField F3(3);
  for (int trial = 0; trial < 60; ++trial) {
    auto d = random_dense(rng, 1 + rng() % 6, 1 + rng() % 6, -4, 4, 0.5);
    auto m = dense(d);
    auto rq = field_rank_kernel(m, Q);
    EXPECT_EQ(rq.rank, oracle::rank_q(d));
    EXPECT_EQ(rq.rank + rq.kernel.size(), m.cols());
    for (const auto& v : rq.kernel)
      for (const auto& row : d) {
        Rational s = 0;
        for (std::size_t j = 0; j < row.size(); ++j) s += Rational(row[j]) * v[j];
        EXPECT_EQ(s, 0);
      }
    auto r3 = field_rank_kernel(m, F3);
    EXPECT_EQ(r3.rank, oracle::rank_mod(d, 3));
    EXPECT_EQ(r3.rank + r3.kernel.size(), m.cols());
  }
}

TEST(SpanTracker, ExpressesMembersThroughInsertedVectors) {
  PrimeField F5(5);
  SpanTracker<PrimeField> t(4, F5);
  std::vector<std::vector<std::uint64_t>> vs{{1, 2, 0, 0}, {0, 1, 3, 0}, {1, 3, 3, 0}};
  EXPECT_TRUE(t.insert(vs[0]));
  EXPECT_TRUE(t.insert(vs[1]));
  EXPECT_FALSE(t.insert(vs[2]));
  EXPECT_EQ(t.rank(), 2u);
  EXPECT_EQ(t.size(), 3u);
  std::vector<std::uint64_t> w{2, 0, 4, 0};
  auto copy = w;
  auto coeffs = t.reduce(copy);
  std::vector<std::uint64_t> rebuilt(4, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = 0; j < 4; ++j) rebuilt[j] = F5.add(rebuilt[j], F5.mul(coeffs[i], vs[i][j]));
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(F5.add(rebuilt[j], copy[j]), w[j]);
  EXPECT_FALSE(t.contains({0, 0, 0, 1}));
  EXPECT_TRUE(t.contains({2, 4, 0, 0}));
}

TEST(Arith, Binomials) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(60, 30), Integer("118264581564861424"));
  EXPECT_EQ(factorial(20), Integer("2432902008176640000"));
}

TEST(Arith, CoefficientParsing) {
  EXPECT_EQ(Coefficients::parse("Z").kind, Coefficients::Kind::Z);
  EXPECT_EQ(Coefficients::parse("Q").kind, Coefficients::Kind::Q);
  EXPECT_EQ(Coefficients::parse("F7").prime, 7u);
  EXPECT_THROW(Coefficients::parse("F4"), InvalidArgument);
  EXPECT_THROW(Coefficients::parse("R"), InvalidArgument);
}
