#include "oracle.hpp"
#include "spx/spchain.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace spx;

namespace {

const std::vector<std::string> kCorpus{"point", "sphere", "sphere2", "rp2", "torus", "surface:2",
                                       "nonorientable:2", "nonorientable:3", "lens:3", "lens:4", "bouquet:3", "moore:6"};

Chain mono(const Monomial& m, int c = 1) { return Chain(m, c); }

}  // namespace

TEST(Basis, SphereHasOneCellPerEvenDegree) {
  auto b = enumerate_basis(named::sphere(), 3);
  ASSERT_EQ(b.size(), 4u);
  for (unsigned s = 0; s <= 3; ++s) EXPECT_EQ(b[s], s ? Monomial::divided(0, s) : Monomial::unit());
}

TEST(Basis, BouquetIsSubsets) {
  for (unsigned k = 1; k <= 5; ++k)
    for (unsigned n = 0; n <= 5; ++n) {
      unsigned long expect = 0;
      for (unsigned i = 0; i <= n; ++i) expect += oracle::choose(k, i);
      EXPECT_EQ(enumerate_basis(named::bouquet(k), n).size(), expect);
    }
}

TEST(Basis, CountMatchesFormula) {
  // sum_i C(k, i) C(n - i + r, r)
  for (const auto& name : kCorpus) {
    auto p = named_complex(name);
    for (unsigned n = 0; n <= 4; ++n) {
      unsigned long expect = 0;
      for (unsigned i = 0; i <= n; ++i)
        expect += oracle::choose(static_cast<unsigned>(p.circle_count()), i) *
                  oracle::choose(n - i + static_cast<unsigned>(p.cell_count()), static_cast<unsigned>(p.cell_count()));
      EXPECT_EQ(enumerate_basis(p, n).size(), expect) << name << " n=" << n;
    }
  }
}

TEST(Basis, TorusDegreeThree) {
  auto b = enumerate_basis(named::orientable_surface(1), 2, 3);
  std::vector<Monomial> expect{Monomial{{0}, {{0, 1}}}, Monomial{{1}, {{0, 1}}}};
  EXPECT_EQ(b, expect);
  EXPECT_EQ(to_string(b[0]), "e1*SP1(D1)");
}

TEST(Basis, OrderIsDegreeFiltrationLex) {
  auto b = enumerate_basis(named::orientable_surface(2), 3);
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    EXPECT_LE(b[i].degree(), b[i + 1].degree());
    if (b[i].degree() == b[i + 1].degree()) EXPECT_LE(b[i].filtration(), b[i + 1].filtration());
  }
}

TEST(Multiply, DividedPowers) {
  auto c = multiply(Monomial::divided(0, 2), Monomial::divided(0, 3));
  EXPECT_EQ(c, mono(Monomial::divided(0, 5), 10));
}

TEST(Multiply, ExteriorSigns) {
  EXPECT_EQ(multiply(Monomial::circle(1), Monomial::circle(0)), mono(Monomial{{0, 1}, {}}, -1));
  EXPECT_TRUE(multiply(Monomial::circle(0), Monomial::circle(0)).is_zero());
  EXPECT_EQ(multiply(Monomial{{0, 2}, {}}, Monomial{{1}, {}}), mono(Monomial{{0, 1, 2}, {}}, -1));
}

TEST(Multiply, AssociativeAndGradedCommutative) {
  auto p = named::orientable_surface(2);
  auto b = enumerate_basis(p, 3);
  std::mt19937 rng(17);
  for (int t = 0; t < 300; ++t) {
    const auto& x = b[rng() % b.size()];
    const auto& y = b[rng() % b.size()];
    const auto& z = b[rng() % b.size()];
    EXPECT_EQ(multiply(multiply(mono(x), mono(y)), mono(z)), multiply(mono(x), multiply(mono(y), mono(z))));
    int sign = (x.degree() * y.degree()) % 2 ? -1 : 1;
    EXPECT_EQ(multiply(x, y), multiply(y, x).scaled(sign));
  }
}

TEST(Boundary, ProjectivePlane) {
  auto p = named::nonorientable_surface(1);
  for (unsigned i = 1; i <= 5; ++i) {
    Monomial prev{{0}, {}};
    if (i > 1) prev.powers.emplace_back(0, i - 1);
    EXPECT_EQ(boundary(Monomial::divided(0, i), p), mono(prev, 2));
    EXPECT_TRUE(boundary(Monomial{{0}, {{0, i}}}, p).is_zero());
  }
}

TEST(Boundary, TorusCellsAreCycles) {
  auto p = named::orientable_surface(1);
  for (unsigned s = 1; s <= 4; ++s) EXPECT_TRUE(boundary(Monomial::divided(0, s), p).is_zero());
}

TEST(Boundary, Matrices) {
  for (unsigned n = 0; n <= 4; ++n)
    for (unsigned d = 1; d <= 2 * n; d += 2) EXPECT_TRUE(boundary_matrix(named::sphere(), n, d).empty());
  auto m = boundary_matrix(named::nonorientable_surface(1), 1, 2);
  ASSERT_EQ(m.rows(), 1u);
  ASSERT_EQ(m.cols(), 1u);
  EXPECT_EQ(m.at(0, 0), 2);
  auto k = boundary_matrix(named::nonorientable_surface(2), 1, 2);
  ASSERT_EQ(k.rows(), 2u);
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_EQ(k.at(0, 0), 2);
  EXPECT_EQ(k.at(1, 0), 2);
}

TEST(Boundary, SquaresToZero) {
  for (const auto& name : kCorpus) {
    auto p = named_complex(name);
    auto bd = cell_boundaries(p);
    for (const auto& x : enumerate_basis(p, 4)) EXPECT_TRUE(boundary(boundary(mono(x), bd), bd).is_zero()) << name << " " << to_string(x);
  }
}

TEST(Boundary, IsADerivation) {
  std::mt19937 rng(23);
  for (const auto& name : kCorpus) {
    auto p = named_complex(name);
    auto bd = cell_boundaries(p);
    auto b = enumerate_basis(p, 3);
    for (int t = 0; t < 60; ++t) {
      const auto& x = b[rng() % b.size()];
      const auto& y = b[rng() % b.size()];
      Chain lhs = boundary(multiply(x, y), bd);
      Chain rhs = multiply(boundary(mono(x), bd), mono(y)) +
                  multiply(mono(x), boundary(mono(y), bd)).scaled(x.degree() % 2 ? -1 : 1);
      EXPECT_EQ(lhs, rhs) << name << " " << to_string(x) << " " << to_string(y);
    }
  }
}

TEST(Boundary, PreservesFiltration) {
  for (const auto& name : kCorpus) {
    auto p = named_complex(name);
    for (const auto& x : enumerate_basis(p, 4))
      for (const auto& [m, c] : boundary(x, p).terms()) EXPECT_EQ(m.filtration(), x.filtration());
  }
}

TEST(Complex, IndexAndSlices) {
  SymmetricProductComplex cx(named::orientable_surface(1), 3);
  EXPECT_EQ(cx.top_degree(), 6u);
  std::size_t total = 0;
  for (unsigned d = 0; d <= 6; ++d) {
    total += cx.dimension(d);
    for (std::size_t i = 0; i < cx.dimension(d); ++i) EXPECT_EQ(cx.index_of(cx.basis(d)[i]), i);
    std::size_t sliced = 0;
    for (unsigned s = 0; s <= 3; ++s) sliced += cx.slice(d, s).size();
    EXPECT_EQ(sliced, cx.dimension(d));
  }
  EXPECT_EQ(total, enumerate_basis(named::orientable_surface(1), 3).size());
}

TEST(Chain, ModularReduction) {
  Chain c(Coefficients::mod(3));
  c.add(Monomial::circle(0), 5);
  EXPECT_EQ(c.coefficient(Monomial::circle(0)), 2);
  c.add(Monomial::circle(0), 1);
  EXPECT_TRUE(c.is_zero());
  Chain d(Monomial::circle(0), 6);
  EXPECT_EQ(d.divided_exactly(3).coefficient(Monomial::circle(0)), 2);
  EXPECT_THROW(d.divided_exactly(4), InexactDivision);
}
