#include <doctest.h>

#include "pickfam/errors.hpp"
#include "test_helpers.hpp"

using namespace testing;

namespace {

GaussRational q(long p, long d = 1) { return GaussRational(Rational(p, d)); }

MultiPoly random_univariate(Rng& rng, int degree) {
  std::vector<GaussRational> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = rng.small_gauss(5, rng.integer(1, 3));
  return MultiPoly::univariate(c);
}

}  // namespace

TEST_CASE("reduce examples") {
  const auto r4 = QuotientRing::univariate({SupportPoint{{GaussRational(0)}, 4}});
  const MultiPoly p = MultiPoly::monomial({2}) + MultiPoly::monomial({5}, 7);
  CHECK(r4.reduce(p) == jet1({0, 0, 1, 0}));

  const auto rh = QuotientRing::univariate({SupportPoint{{q(1, 2)}, 2}});
  CHECK(rh.reduce(MultiPoly::monomial({1})) == jet1({q(1, 2), 1}));

  const auto r2 = QuotientRing::two_var_cusp();
  MultiPoly f(2);
  f.add_term({0, 1}, 1);
  f.add_term({1, 0}, 1);
  f.add_term({3, 0}, 3);
  CHECK(r2.reduce(f) == jet1({0, 1}));
  CHECK_THROWS(r2.reduce(MultiPoly::monomial({1})));
}

TEST_CASE("jet multiplication examples") {
  const auto r4 = QuotientRing::univariate({SupportPoint{{GaussRational(0)}, 4}});
  CHECK(jet1({0, 1, 0, 0}) * jet1({0, 0, 0, 1}) == r4.zero());
  CHECK(jet1({1, 1, 0, 0}) * jet1({1, -1, 1, -1}) == r4.one());
  // Leibniz rule at a nonzero point, jets stored as Taylor coefficients.
  const JetElement a = jet1({2, 3});
  const JetElement b = jet1({5, 7});
  CHECK(a * b == jet1({10, 2 * 7 + 5 * 3}));
  CHECK_THROWS_AS(jet1({1, 0}) * jet1({1, 0, 0}), RingMismatch);
}

TEST_CASE("units and inverses") {
  CHECK(jet1({1, 1, 0, 0}).is_unit());
  CHECK(jet1({1, 1, 0, 0}).inverse() == jet1({1, -1, 1, -1}));
  CHECK_FALSE(jet1({0, 0, 1, 0}).is_unit());
  CHECK_THROWS_AS(jet1({0, 0, 1, 0}).inverse(), NotAUnit);
  CHECK(jet1({1, 0, 0, 0}).inverse() == jet1({1, 0, 0, 0}));
}

TEST_CASE("reduce is a ring homomorphism") {
  const auto ring = QuotientRing::univariate({SupportPoint{{GaussRational(0)}, 3},
                                              SupportPoint{{GaussRational(Rational(1, 2), Rational(-1, 3))}, 2},
                                              SupportPoint{{q(-2, 3)}, 1}});
  for (std::uint64_t t = 0; t < 60; ++t) {
    Rng rng(mix_seed(11, t));
    const MultiPoly p = random_univariate(rng, 7);
    const MultiPoly r = random_univariate(rng, 5);
    CHECK(ring.reduce(p + r) == ring.reduce(p) + ring.reduce(r));
    CHECK(ring.reduce(p * r) == ring.reduce(p) * ring.reduce(r));
    // lift is a section of reduce
    CHECK(ring.reduce(ring.lift(ring.reduce(p))) == ring.reduce(p));
  }
}

TEST_CASE("inverse times element is one") {
  const auto spec = spec_two_roots();
  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng rng(mix_seed(12, t));
    const JetElement u = random_element(spec.ring(), rng);
    CHECK(u.inverse() * u == spec.ring().one());
  }
}

TEST_CASE("subalgebra membership") {
  const auto s = spec_z2_z5();
  CHECK(in_subalgebra(s, s.ring().reduce(MultiPoly::monomial({2}))));
  CHECK_FALSE(in_subalgebra(s, s.ring().reduce(MultiPoly::monomial({3}))));
  CHECK(in_subalgebra(s, s.ring().one()));
  CHECK(in_subalgebra(spec_two_roots(), spec_two_roots().ring().one()));
  CHECK(in_subalgebra(SubalgebraSpec::two_var_example(), SubalgebraSpec::two_var_example().ring().one()));
  CHECK(s.annihilator().rows() == 2);
}

TEST_CASE("cyclic module bases") {
  const auto s = spec_z2_z5();
  const GaussRational x(3, -1);
  const GaussRational y(Rational(1, 2));
  const JetElement u = jet1({1, x, 0, y});
  CHECK(same_span(submodule_basis(s, u), {u, jet1({0, 0, 1, x})}));
  CHECK(submodule_basis(spec_z2_z3(), jet1({1, 0})).size() == 1);

  const auto tv = SubalgebraSpec::two_var_example();
  const JetElement v = jet1({1, q(2, 3)});
  const auto b = submodule_basis(tv, v);
  REQUIRE(b.size() == 1);
  CHECK(same_span(b, {v}));
  CHECK_THROWS_AS(submodule_basis(s, jet1({0, 1, 0, 0})), NotAUnit);
}

TEST_CASE("orbit equivalence examples") {
  const auto s = spec_z2_z5();
  CHECK(orbit_equivalent(s, jet1({2, 2, 1, 1}), jet1({1, 1, 0, 0})));
  CHECK(orbit_equivalent(s, jet1({1, 1, 0, 0}), jet1({2, 2, 1, 1})));
  CHECK_FALSE(orbit_equivalent(s, jet1({1, 1, 0, 0}), jet1({1, 2, 0, 0})));
  CHECK_THROWS_AS(orbit_equivalent(s, jet1({0, 1, 0, 0}), jet1({1, 0, 0, 0})), NotAUnit);
}

TEST_CASE("Picard coordinates examples") {
  const auto s = spec_z2_z5();
  const GaussRational x(Rational(-7, 3), Rational(1, 5));
  const GaussRational y(4);
  CHECK(picard_coordinates(s, jet1({1, x, 0, y})) == std::vector<GaussRational>{x, y});
  CHECK(picard_coordinates(s, jet1({2, 2, 1, 1})) == std::vector<GaussRational>{1, 0});
  for (const auto& spec : {spec_z2_z5(), spec_z2_z3(), SubalgebraSpec::two_var_example()}) {
    const auto c = picard_coordinates(spec, spec.ring().one());
    CHECK(c.size() == spec.picard_dimension());
    for (const auto& v : c) CHECK(v.is_zero());
  }
  // Values at (0, 1/2) are normalized at the first point, so 1 sits at coordinate 1.
  CHECK(picard_coordinates(spec_two_roots(), spec_two_roots().ring().one()) == std::vector<GaussRational>{1});
}

TEST_CASE("Picard dimension for C1 + fC[z] is the total multiplicity minus one") {
  for (std::uint64_t t = 0; t < 40; ++t) {
    Rng rng(mix_seed(13, t));
    std::vector<Root> roots;
    int total = 0;
    const long r = rng.integer(1, 3);
    for (long i = 0; i < r; ++i) {
      Root root{GaussRational(Rational(i, 4), Rational(rng.integer(-2, 2), 7)), static_cast<int>(rng.integer(1, 3))};
      total += root.multiplicity;
      roots.push_back(root);
    }
    const auto spec = SubalgebraSpec::one_plus_ideal(roots);
    CHECK(spec.picard_dimension() == static_cast<std::size_t>(total - 1));
    const JetElement u = random_element(spec.ring(), rng);
    CHECK(picard_coordinates(spec, u).size() == static_cast<std::size_t>(total - 1));
  }
}

TEST_CASE("<2,5> coordinates match the closed-form orbit map") {
  const auto s = spec_z2_z5();
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(mix_seed(14, t));
    const JetElement u = random_element(s.ring(), rng);
    CHECK(picard_coordinates(s, u) == orbit_map_z2_z5(u));
  }
}

TEST_CASE("equal coordinates iff orbit equivalent, and orbit equivalence is an equivalence") {
  for (const auto& spec : {spec_z2_z5(), spec_z2_z3(), spec_two_roots(),
                           SubalgebraSpec::semigroup(NumericalSemigroup({3, 5, 7})),
                           SubalgebraSpec::one_plus_ideal({Root{GaussRational(Rational(1, 3)), 2}})}) {
    for (std::uint64_t t = 0; t < 100; ++t) {
      Rng rng(mix_seed(15, t));
      const JetElement u1 = random_element(spec.ring(), rng);
      const JetElement u2 = (t % 2 == 0) ? random_subalgebra_unit(spec, rng) * u1 : random_element(spec.ring(), rng);
      const JetElement u3 = random_subalgebra_unit(spec, rng) * u2;
      const bool eq = orbit_equivalent(spec, u1, u2);
      CHECK(eq == (picard_coordinates(spec, u1) == picard_coordinates(spec, u2)));
      if (t % 2 == 0) CHECK(eq);
      CHECK(orbit_equivalent(spec, u1, u1));
      CHECK(orbit_equivalent(spec, u2, u1) == eq);
      CHECK(orbit_equivalent(spec, u2, u3));
      CHECK(orbit_equivalent(spec, u1, u3) == eq);
      // the canonical representative lies in the same orbit
      const JetElement c = canonical_representative(spec, picard_coordinates(spec, u1));
      CHECK(orbit_equivalent(spec, c, u1));
    }
  }
}

TEST_CASE("Q_s sampling and the Nakayama criterion") {
  const auto s = spec_z2_z3();
  JetMatrix good(1, 2, s.ring().zero());
  good(0, 0) = jet1({1, 0});
  good(0, 1) = jet1({0, 1});
  CHECK(is_surjective(s, good));
  JetMatrix bad(1, 2, s.ring().zero());
  bad(0, 0) = jet1({0, 1});
  bad(0, 1) = jet1({0, 1});
  CHECK_FALSE(is_surjective(s, bad));
  CHECK_THROWS_AS(sample_qs(s, 1, 2, 0), InvalidShape);
  CHECK_THROWS_AS(sample_qs(s, 2, 0, 0), InvalidShape);
  for (std::size_t sr = 1; sr <= 2; ++sr)
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const JetMatrix z = sample_qs(s, 2, sr, seed);
      CHECK(z.rows() == sr);
      CHECK(z.cols() == 2);
      CHECK(rank(z.values_at(0)) == sr);
      CHECK(z == sample_qs(s, 2, sr, seed));
    }
  // k = s = 1: surjective iff unit
  JetMatrix one(1, 1, jet1({1, 3}));
  CHECK(is_surjective(s, one));
  one(0, 0) = jet1({0, 3});
  CHECK_FALSE(is_surjective(s, one));
}

TEST_CASE("Q_s equivalence examples") {
  const auto s = spec_z2_z3();
  JetMatrix a(1, 2, s.ring().zero());
  a(0, 0) = jet1({1, 0});
  a(0, 1) = jet1({0, 1});
  JetMatrix b(1, 2, s.ring().zero());
  b(0, 0) = jet1({2, 0});
  b(0, 1) = jet1({0, 2});
  JetMatrix c(1, 2, s.ring().zero());
  c(0, 0) = jet1({1, 0});
  CHECK(qs_equivalent(s, a, a));
  CHECK(qs_equivalent(s, a, b));
  CHECK_FALSE(qs_equivalent(s, a, c));
  CHECK_THROWS_AS(qs_equivalent(s, a, JetMatrix(2, 2, s.ring().zero())), InvalidShape);
}

TEST_CASE("Q_s classes are invariant under right multiplication by GL_k(A/c)") {
  for (const auto& spec : {spec_z2_z3(), spec_z2_z5(), spec_two_roots()})
    for (std::size_t sr = 1; sr <= 2; ++sr)
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const JetMatrix z = sample_qs(spec, 2, sr, seed);
        const JetMatrix f = sample_gl(spec, 2, seed + 100);
        const JetMatrix zf = z * f.transpose();
        CHECK(is_surjective(spec, zf));
        CHECK(qs_equivalent(spec, zf, z));
        CHECK(qs_equivalent(spec, z, zf));
        const JetMatrix g = sample_gl(spec, 2, seed + 200);
        CHECK(qs_equivalent(spec, zf * g.transpose(), z));
      }
}
