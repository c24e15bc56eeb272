#include "doctest.h"

#include "efh/error.hpp"
#include "efh/resolutions.hpp"

using namespace efh;

namespace {

using Betti = std::vector<std::size_t>;

Algebra q_times_q() { return Algebra::product({Algebra::ground(), Algebra::ground()}); }
Algebra z2_algebra() { return Algebra::group_algebra(FiniteGroup::cyclic(2)); }

BettiVector hh(const Algebra& a, const AlgebraTwist& phi, int cap, bool normalized = true) {
  return homology(hochschild_complex({a, twisted_diagonal_bimodule(a, phi), cap, normalized}));
}

// HH_0 of A_phi as the quotient A / span{a m - m phi(a)}.
std::size_t hh0_quotient_oracle(const Algebra& a, const AlgebraTwist& phi) {
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Vector left = a.multiply(a.basis_vector(i), a.basis_vector(j));
      const Vector right = a.multiply(a.basis_vector(j), phi.apply(a.basis_vector(i)));
      Vector diff(a.dim());
      for (std::size_t k = 0; k < a.dim(); ++k) diff[k] = a.field().sub(left[k], right[k]);
      cols.push_back(diff);
    }
  }
  return a.dim() - rank(Matrix::from_column_vectors(a.dim(), cols, a.field()));
}

// Tor over K[x]/x^2 of K with K from the 2-periodic free resolution
// ... -> A -x-> A -x-> A -> K: after tensoring with K every map is zero.
Betti periodic_resolution_oracle(int top) {
  const Algebra a = Algebra::truncated_polynomial(2);
  const RightModule k = RightModule::trivial(a);
  const Matrix x_on_k = k.action(1);
  std::vector<std::size_t> dims(static_cast<std::size_t>(top) + 1, 1);
  std::vector<Matrix> diffs(static_cast<std::size_t>(top), x_on_k);
  return homology(ChainComplex(Field::rationals(), 0, dims, diffs)).betti;
}

}  // namespace

TEST_CASE("Hochschild complex examples") {
  const Algebra k = Algebra::ground();
  CHECK(hh(k, AlgebraTwist::identity(k), 3).trusted() == Betti{1, 0, 0});

  const Algebra g = z2_algebra();
  const BettiVector h = hh(g, AlgebraTwist::identity(g), 3);
  CHECK(h.trusted() == Betti{2, 0, 0});
  CHECK(h.trusted_through == 2);

  const Algebra qq = q_times_q();
  CHECK(hh(qq, AlgebraTwist::swap_factors(qq), 2).trusted() == Betti{0, 0});
}

TEST_CASE("HH_0 matches the quotient oracle") {
  const Algebra qq = q_times_q();
  const Algebra g = z2_algebra();
  const Algebra m2 = Algebra::matrix_algebra(2);
  const Algebra d = Algebra::truncated_polynomial(2);
  const std::vector<AlgebraTwist> twists{
      AlgebraTwist::identity(Algebra::ground()),
      AlgebraTwist::identity(g),
      AlgebraTwist::swap_factors(qq),
      AlgebraTwist::conjugation(m2, 2, Matrix::from_rows({{1, 0}, {0, -1}})),
      AlgebraTwist::identity(d),
      AlgebraTwist::negate_variable(d),
      AlgebraTwist::group_automorphism(Algebra::group_algebra(FiniteGroup::cyclic(3)), FiniteGroup::cyclic(3), {0, 2, 1}),
  };
  for (const auto& phi : twists) {
    CHECK(hh(phi.algebra(), phi, 1).at(0) == hh0_quotient_oracle(phi.algebra(), phi));
  }
  CHECK(hh0_quotient_oracle(qq, AlgebraTwist::swap_factors(qq)) == 0);
}

TEST_CASE("Q[Z2] is separable, so its higher Hochschild homology vanishes") {
  // e = 1/2(1+g) (x) 1/2(1+g) + 1/2(1-g) (x) 1/2(1-g) = 1/2 (1 (x) 1 + g (x) g)
  const Algebra g = z2_algebra();
  const std::vector<std::pair<Vector, Vector>> e{{{Rational(1, 2), 0}, {1, 0}}, {{0, Rational(1, 2)}, {0, 1}}};
  Vector mu(2);
  for (const auto& [x, y] : e) {
    const Vector p = g.multiply(x, y);
    for (std::size_t k = 0; k < 2; ++k) mu[k] += p[k];
  }
  CHECK(mu == g.unit());
  for (std::size_t a = 0; a < 2; ++a) {
    // sum a x_i (x) y_i == sum x_i (x) y_i a, compared through the Kronecker coordinates.
    Vector lhs(4), rhs(4);
    for (const auto& [x, y] : e) {
      const Vector ax = g.multiply(g.basis_vector(a), x);
      const Vector ya = g.multiply(y, g.basis_vector(a));
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
          lhs[i * 2 + j] += ax[i] * y[j];
          rhs[i * 2 + j] += x[i] * ya[j];
        }
      }
    }
    CHECK(lhs == rhs);
  }
  CHECK(hh(g, AlgebraTwist::identity(g), 4).trusted() == Betti{2, 0, 0, 0});
}

TEST_CASE("bar complex examples") {
  const Algebra k = Algebra::ground();
  const RightModule kk = RightModule::regular(k);
  CHECK(homology(bar_complex({k, kk, kk, 4})).trusted() == Betti{1, 0, 0, 0});

  const Algebra d = Algebra::truncated_polynomial(2);
  const RightModule t = RightModule::trivial(d);
  const RightModule t_left = RightModule::trivial(opposite(d));
  const BettiVector tor = homology(bar_complex({d, t, t_left, 4}));
  CHECK(tor.trusted() == Betti{1, 1, 1, 1});
  CHECK(tor.trusted() == periodic_resolution_oracle(3));

  const Algebra g = z2_algebra();
  CHECK(homology(bar_complex({g, RightModule::trivial(g), RightModule::trivial(opposite(g)), 3})).trusted() ==
        Betti{1, 0, 0});
}

TEST_CASE("a free module has no higher Tor") {
  for (const Algebra& a : {z2_algebra(), Algebra::truncated_polynomial(3), Algebra::upper_triangular(2)}) {
    const BettiVector h = homology(bar_complex({a, RightModule::regular(a), RightModule::regular(opposite(a)), 3}));
    CHECK(h.trusted() == Betti{a.dim(), 0, 0});
  }
}

TEST_CASE("normalized and unnormalized complexes agree") {
  const Algebra qq = q_times_q();
  const Algebra t2 = Algebra::upper_triangular(2);
  const std::vector<AlgebraTwist> twists{
      AlgebraTwist::identity(z2_algebra()),     AlgebraTwist::swap_factors(qq),
      AlgebraTwist::identity(Algebra::truncated_polynomial(3)),
      AlgebraTwist::negate_variable(Algebra::truncated_polynomial(2)), AlgebraTwist::identity(t2),
  };
  for (const auto& phi : twists) {
    for (int cap = 1; cap <= 3; ++cap) {
      CHECK(hh(phi.algebra(), phi, cap, true).trusted() == hh(phi.algebra(), phi, cap, false).trusted());
    }
    const Algebra& a = phi.algebra();
    if (a.augmentation()) {
      const BarComplexSpec spec{a, RightModule::trivial(a), RightModule::regular(opposite(a)), 3, true};
      BarComplexSpec raw = spec;
      raw.normalized = false;
      CHECK(homology(bar_complex(spec)).trusted() == homology(bar_complex(raw)).trusted());
    }
  }
}

TEST_CASE("phi = id gives the ordinary Hochschild complex") {
  const Algebra t2 = Algebra::upper_triangular(2);
  const HochschildComplexSpec twisted{t2, twisted_diagonal_bimodule(t2, AlgebraTwist::identity(t2)), 3, false};
  const HochschildComplexSpec plain{t2, Bimodule::diagonal(t2), 3, false};
  CHECK(hochschild_complex(twisted) == hochschild_complex(plain));
  // Upper triangular matrices have the homology of the ground field twice over.
  CHECK(homology(hochschild_complex(plain)).trusted() == Betti{2, 0, 0});
}

TEST_CASE("serial and parallel assembly produce identical matrices") {
  const Algebra m2 = Algebra::matrix_algebra(2);
  const HochschildComplexSpec spec{m2, Bimodule::diagonal(m2), 3, true};
  CHECK(hochschild_complex(spec, Assembly::kSerial) == hochschild_complex(spec, Assembly::kParallel));
  const Algebra d = Algebra::truncated_polynomial(3);
  const BarComplexSpec bar{d, RightModule::regular(d), RightModule::trivial(opposite(d)), 4, false};
  CHECK(bar_complex(bar, Assembly::kSerial) == bar_complex(bar, Assembly::kParallel));
}

TEST_CASE("module compatibility is checked") {
  const Algebra d = Algebra::truncated_polynomial(2);
  const Algebra g = z2_algebra();
  CHECK_THROWS_AS(bar_complex({d, RightModule::trivial(g), RightModule::trivial(opposite(d))}), MathError);
  CHECK_THROWS_AS(hochschild_complex({d, Bimodule::diagonal(g)}), MathError);
}

TEST_CASE("twisted traces") {
  const Algebra c = Algebra::truncated_polynomial(3);
  CHECK(twisted_traces(c, AlgebraTwist::identity(c)).size() == 3);
  const Algebra qq = q_times_q();
  CHECK(twisted_traces(qq, AlgebraTwist::swap_factors(qq)).empty());
  const Algebra m2 = Algebra::matrix_algebra(2);
  const auto tr = twisted_traces(m2, AlgebraTwist::identity(m2));
  REQUIRE(tr.size() == 1);
  CHECK(tr[0][0] == tr[0][3]);
  CHECK(tr[0][1].is_zero());
  CHECK(tr[0][2].is_zero());
  CHECK_THROWS_AS(twisted_traces(m2, AlgebraTwist::transpose(m2, 2)), MathError);
  const Algebra g3 = Algebra::group_algebra(FiniteGroup::cyclic(3));
  const AlgebraTwist inv3 = AlgebraTwist::group_automorphism(g3, FiniteGroup::cyclic(3), {0, 2, 1});
  // Both conventions give the same space for an involution.
  const auto left = twisted_traces(g3, inv3, TraceConvention::kPhiLeft);
  const auto right = twisted_traces(g3, inv3, TraceConvention::kPhiRight);
  CHECK(left == right);
  CHECK(left.size() == hh(g3, inv3, 1).at(0));
  const AlgebraTwist conj = AlgebraTwist::conjugation(m2, 2, Matrix::from_rows({{1, 0}, {0, -1}}));
  CHECK(twisted_traces(m2, conj).size() == hh(m2, conj, 1).at(0));
}
