#include "spx/cohomring.hpp"

#include <gtest/gtest.h>

using namespace spx;

namespace {

template <class Field>
std::vector<std::size_t> dims(const CohomologyRing<Field>& R) {
  std::vector<std::size_t> out;
  for (unsigned d = 0; d <= R.top_degree(); ++d) out.push_back(R.dimension(d));
  return out;
}

}  // namespace

TEST(Basis, LensOneClassPerDegree) {
  for (unsigned m : {2u, 3u, 5u, 7u}) {
    CohomologyRing<PrimeField> R(named::lens_attach(m), 3, PrimeField(m));
    EXPECT_EQ(dims(R), std::vector<std::size_t>(7, 1)) << m;
  }
}

TEST(Basis, SphereEvenDegrees) {
  RationalField Q;
  for (unsigned n = 0; n <= 5; ++n) {
    CohomologyRing<RationalField> R(named::sphere(), n, Q);
    for (unsigned d = 0; d <= 2 * n; ++d) EXPECT_EQ(R.dimension(d), d % 2 ? 0u : 1u);
    auto tp = truncated_polynomial(R);
    if (n == 0) {
      EXPECT_FALSE(tp);
      continue;
    }
    ASSERT_TRUE(tp);
    EXPECT_EQ(tp->second, n + 1);
  }
}

TEST(Basis, TorusSquare) {
  CohomologyRing<RationalField> R(named::orientable_surface(1), 2, RationalField{});
  EXPECT_EQ(dims(R), (std::vector<std::size_t>{1, 2, 2, 2, 1}));
  EXPECT_EQ(R.labels(1)[0], "(e1)*");
}

TEST(Cup, LensTwo) {
  CohomologyRing<PrimeField> R(named::lens_attach(2), 3, PrimeField(2));
  EXPECT_TRUE(R.equal(R.cup(R.f(0), R.f(0)), R.b()));
}

TEST(Cup, LensThree) {
  CohomologyRing<PrimeField> R(named::lens_attach(3), 2, PrimeField(3));
  auto e = R.f(0), b = R.b();
  EXPECT_TRUE(R.is_zero(R.cup(e, e)));
  EXPECT_FALSE(R.is_zero(R.cup(b, b)));
  EXPECT_FALSE(R.is_zero(R.cup(e, b)));
  EXPECT_TRUE(R.is_zero(R.power(b, 3)));
  EXPECT_TRUE(R.is_zero(R.cup(e, R.power(b, 2))));
}

TEST(Cup, MainRelation) {
  RationalField Q;
  for (unsigned g = 1; g <= 2; ++g)
    for (unsigned n = 1; n <= 3; ++n) {
      CohomologyRing<RationalField> R(named::orientable_surface(g), n, Q);
      for (std::size_t i = 0; i < g; ++i) {
        auto lhs = R.cup(R.f(i), R.f(i + g));
        auto rhs = R.add(R.dual_class(Monomial{{i, i + g}, {}}), R.b());
        EXPECT_TRUE(R.equal(lhs, rhs)) << "g=" << g << " n=" << n << " i=" << i;
      }
    }
}

TEST(Cup, NonorientableSquares) {
  for (unsigned g = 1; g <= 3; ++g) {
    CohomologyRing<PrimeField> R(named::nonorientable_surface(g), 2, PrimeField(2));
    for (std::size_t i = 0; i < g; ++i) EXPECT_TRUE(R.equal(R.cup(R.f(i), R.f(i)), R.b())) << g;
  }
}

TEST(Ring, ProjectivePlaneTruncatedPolynomial) {
  for (unsigned n = 1; n <= 4; ++n) {
    CohomologyRing<PrimeField> R(named::nonorientable_surface(1), n, PrimeField(2));
    auto tp = truncated_polynomial(R);
    ASSERT_TRUE(tp);
    EXPECT_EQ(tp->second, 2 * n + 1);
    EXPECT_EQ(tp->first, "(e1)*");
  }
}

TEST(Ring, AssociativeAndGradedCommutative) {
  for (const char* name : {"torus", "surface:2", "rp2", "nonorientable:2", "lens:3", "bouquet:3", "sphere2"}) {
    auto p = named_complex(name);
    {
      CohomologyRing<RationalField> R(p, 2, RationalField{});
      auto rp = ring_presentation(R, "Q");
      EXPECT_TRUE(rp.associative) << name;
      EXPECT_TRUE(rp.graded_commutative) << name;
    }
    for (unsigned prime : {2u, 3u}) {
      CohomologyRing<PrimeField> R(p, 3, PrimeField(prime));
      auto rp = ring_presentation(R, "F");
      EXPECT_TRUE(rp.associative) << name << " F" << prime;
      EXPECT_TRUE(rp.graded_commutative) << name << " F" << prime;
    }
  }
}

TEST(Ring, RepresentativeIndependence) {
  for (const char* name : {"torus", "surface:2", "nonorientable:3", "lens:2"}) {
    auto p = named_complex(name);
    PrimeField F2(2);
    CohomologyRing<PrimeField> base(p, 3, F2);
    auto rb = ring_presentation(base);
    for (unsigned seed : {1u, 2u, 99u}) {
      CohomologyRing<PrimeField> moved(p, 3, F2, seed);
      EXPECT_TRUE(same_structure_constants(rb, ring_presentation(moved))) << name << " seed " << seed;
    }
    RationalField Q;
    CohomologyRing<RationalField> qb(p, 2, Q), qm(p, 2, Q, 7);
    EXPECT_TRUE(same_structure_constants(ring_presentation(qb), ring_presentation(qm))) << name;
  }
}

TEST(Ring, PoincareDualitySymmetry) {
  for (unsigned g = 1; g <= 2; ++g)
    for (unsigned n = 1; n <= 4; ++n) {
      CohomologyRing<RationalField> R(named::orientable_surface(g), n, RationalField{});
      for (unsigned k = 0; k <= 2 * n; ++k) EXPECT_EQ(R.dimension(k), R.dimension(2 * n - k));
    }
  for (unsigned g = 1; g <= 3; ++g)
    for (unsigned n = 1; n <= 3; ++n) {
      CohomologyRing<PrimeField> R(named::nonorientable_surface(g), n, PrimeField(2));
      for (unsigned k = 0; k <= 2 * n; ++k) EXPECT_EQ(R.dimension(k), R.dimension(2 * n - k));
    }
}

TEST(Ring, TopClassIsPowerOfB) {
  for (unsigned g = 1; g <= 2; ++g)
    for (unsigned n = 1; n <= 4; ++n) {
      CohomologyRing<RationalField> R(named::orientable_surface(g), n, RationalField{});
      ASSERT_EQ(R.dimension(2 * n), 1u);
      EXPECT_FALSE(R.is_zero(R.power(R.b(), n))) << "g=" << g << " n=" << n;
    }
}

TEST(Ring, FiltrationTruncation) {
  for (unsigned g = 1; g <= 2; ++g)
    for (unsigned n = 1; n <= 3; ++n) {
      CohomologyRing<RationalField> R(named::orientable_surface(g), n, RationalField{});
      // index sets without a dual pair {s, s+g}
      for (std::uint32_t mask = 0; mask < (1u << (2 * g)); ++mask) {
        if (mask & (mask >> g) & ((1u << g) - 1)) continue;
        unsigned r = static_cast<unsigned>(std::popcount(mask));
        if (r > n + 1) continue;
        auto c = R.unit();
        for (unsigned i = 0; i < 2 * g; ++i)
          if (mask & (1u << i)) c = R.cup(c, R.f(i));
        c = R.cup(c, R.power(R.b(), n + 1 - r));
        EXPECT_TRUE(R.is_zero(c)) << "g=" << g << " n=" << n << " mask=" << mask;
      }
    }
  for (unsigned g = 1; g <= 3; ++g)
    for (unsigned n = 1; n <= 3; ++n) {
      CohomologyRing<PrimeField> R(named::nonorientable_surface(g), n, PrimeField(2));
      for (std::uint32_t mask = 0; mask < (1u << g); ++mask) {
        unsigned r = static_cast<unsigned>(std::popcount(mask));
        if (r > n + 1) continue;
        auto c = R.unit();
        for (unsigned i = 0; i < g; ++i)
          if (mask & (1u << i)) c = R.cup(c, R.f(i));
        EXPECT_TRUE(R.is_zero(R.cup(c, R.power(R.b(), n + 1 - r))));
      }
    }
}

TEST(Ring, RationalStructureConstantsAreIntegers) {
  for (unsigned g = 1; g <= 2; ++g) {
    CohomologyRing<RationalField> R(named::orientable_surface(g), 3, RationalField{});
    auto rp = ring_presentation(R);
    for (const auto& p : rp.table)
      for (const auto& [k, c] : p.result) EXPECT_EQ(denominator(c), 1) << "g=" << g;
  }
}

TEST(Ring, ProjectRejectsNonCocycles) {
  CohomologyRing<RationalField> R(named::nonorientable_surface(1), 2, RationalField{});
  // e1* is not a cocycle over Q: it evaluates to 2 on d(D).
  std::vector<Rational> v(R.complex().dimension(1), 0);
  v[0] = 1;
  EXPECT_FALSE(R.is_cocycle(1, v));
  EXPECT_THROW(R.project(1, v), InvalidArgument);
}

TEST(Ring, JsonTable) {
  PrimeField F2(2);
  CohomologyRing<PrimeField> R(named::nonorientable_surface(1), 2, F2);
  auto rp = ring_presentation(R, "F2");
  auto j = nlohmann::json::parse(to_json(rp, F2).dump());
  EXPECT_EQ(j["deg"].get<std::vector<unsigned>>(), (std::vector<unsigned>{0, 1, 2, 3, 4}));
  EXPECT_EQ(j["field"], "F2");
  bool found = false;
  for (const auto& entry : j["cup"])
    if (entry[0] == 1 && entry[1] == 1) {
      found = true;
      ASSERT_EQ(entry[2].size(), 1u);
      EXPECT_EQ(entry[2][0][0], 2);
      EXPECT_EQ(entry[2][0][1], "1");
    }
  EXPECT_TRUE(found);
  EXPECT_NE(render_ring(R, rp).find("F2[x]/(x^5)"), std::string::npos);
}
