#include "doctest.h"

#include "efh/error.hpp"
#include "efh/inertia.hpp"

using namespace efh;

namespace {

using Betti = std::vector<std::size_t>;

}  // namespace

TEST_CASE("Chen-Ruan Betti numbers of the built-in complexes") {
  CHECK(chen_ruan_betti(builtin_complex("torus-z2-rotation")).betti == Betti{5, 0, 1});
  CHECK(chen_ruan_betti(builtin_complex("reflection-circle")).betti == Betti{3, 0});
  CHECK(chen_ruan_betti(builtin_complex("reflection-circle-subdivided")).betti == Betti{3, 0});
  CHECK(chen_ruan_betti(builtin_complex("rotation-circle")).betti == Betti{1, 1});
  CHECK(chen_ruan_betti(builtin_complex("point")).betti == Betti{2});
}

TEST_CASE("identity piece is the orbit space") {
  for (const auto& name : builtin_complex_names()) {
    CAPTURE(name);
    const GammaCWComplex x = builtin_complex(name);
    const auto pieces = inertia_pieces(x);
    REQUIRE(pieces.size() == conjugacy_classes(x.group()).size());
    CHECK(pieces.front().class_representative == x.group().identity());
    const CoefficientSystem constant = constant_system(OrbitCategory(x.group()), 1, Field::rationals());
    CHECK(pieces.front().betti.betti == bredon_homology(x, constant).betti.betti);
  }
}

TEST_CASE("trivial group gives ordinary Betti numbers") {
  const FiniteGroup e = FiniteGroup::trivial();
  const Subgroup one = Subgroup::whole(e);
  // A triangle boundary.
  const GammaCWComplex circle(e, {{"a", 0, one, {}}, {"b", 0, one, {}}, {"c", 0, one, {}},
                                  {"ab", 1, one, {}}, {"bc", 1, one, {}}, {"ca", 1, one, {}}},
                              {{"ab", "b", 0, 1}, {"ab", "a", 0, -1}, {"bc", "c", 0, 1}, {"bc", "b", 0, -1},
                               {"ca", "a", 0, 1}, {"ca", "c", 0, -1}});
  CHECK(chen_ruan_betti(circle).betti == homology(circle.expanded_complex()).betti);
  CHECK(chen_ruan_betti(circle).betti == Betti{1, 1});
}

TEST_CASE("fixed sets") {
  const GammaCWComplex torus = builtin_complex("torus-z2-rotation");
  const ComplexGroupAction fixed = fixed_subcomplex(torus, 1);
  CHECK(fixed.complex().dims() == std::vector<std::size_t>{4, 0, 0});
  CHECK(fixed.acting().order() == 2);
  const ComplexGroupAction all = fixed_subcomplex(torus, 0);
  CHECK(homology(all.complex()).betti == Betti{1, 2, 1});
}

TEST_CASE("non-abelian groups: S3 acting on its orbits") {
  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  for (const auto& h : all_subgroups(s3)) {
    // X = S3/H: the g-fixed cosets xH with x^-1 g x in H, modulo C(g).
    std::size_t oracle = 0;
    for (const auto& cls : conjugacy_classes(s3)) {
      const Element g = cls.front();
      const Subgroup c = centralizer(s3, g);
      std::vector<bool> seen(s3.order(), false);
      for (Element x = 0; x < s3.order(); ++x) {
        if (!h.contains(s3.mul(s3.mul(s3.inv(x), g), x))) continue;
        const std::size_t k = coset_index(s3, h, x);
        bool new_orbit = true;
        for (Element z : c.elements()) new_orbit = new_orbit && !seen[coset_index(s3, h, s3.mul(z, x))];
        if (new_orbit) ++oracle;
        seen[k] = true;
      }
    }
    CHECK(chen_ruan_betti(orbit_complex(h)).betti == Betti{oracle});
  }
}

TEST_CASE("orientation reversal is rejected for fixed flipped cells") {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const GammaCWComplex interval(z2, {{"v", 0, Subgroup::trivial(z2), {}}, {"e", 1, Subgroup::whole(z2), {1}}},
                                {{"e", "v", 1, 1}, {"e", "v", 0, -1}});
  try {
    (void)chen_ruan_betti(interval);
    FAIL("expected an error");
  } catch (const MathError& e) {
    CHECK(e.code() == ErrorCode::kOrientationReversal);
  }
  CHECK(homology(fixed_subcomplex(interval, 0).complex()).betti == Betti{1, 0});
}
