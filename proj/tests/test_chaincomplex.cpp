#include "doctest.h"
#include "support.hpp"

#include "efh/chain_complex.hpp"
#include "efh/error.hpp"

using namespace efh;
using efh::testing::uniform;

namespace {

// Simplicial circle: three vertices, three edges.
ChainComplex triangle_circle(Field f = Field::rationals()) {
  const Matrix d1 = Matrix::from_rows({{-1, 0, 1}, {1, -1, 0}, {0, 1, -1}}, f);
  return ChainComplex(f, 0, {3, 3}, {d1});
}

// Random complex built as a direct sum of shifted acyclic pieces K -> K and
// single spaces, so its Betti numbers are known by construction, then
// conjugated by random invertible matrices.
std::pair<ChainComplex, std::vector<std::size_t>> random_complex(int top) {
  std::vector<std::size_t> betti(static_cast<std::size_t>(top) + 1);
  std::vector<ChainComplex> parts;
  for (int n = 0; n <= top; ++n) {
    const auto b = static_cast<std::size_t>(uniform(0, 2));
    betti[static_cast<std::size_t>(n)] = b;
    if (b) parts.push_back(ChainComplex(Field::rationals(), n, {b}, {}));
    if (n < top && uniform(0, 1) == 1) {
      parts.push_back(ChainComplex(Field::rationals(), n, {1, 1}, {Matrix::identity(1)}));
    }
  }
  if (parts.empty()) parts.push_back(ChainComplex::concentrated(Field::rationals(), 0, 0));
  ChainComplex sum = direct_sum(parts);
  std::vector<Matrix> change;
  for (int n = sum.min_degree(); n <= sum.max_degree(); ++n) {
    const std::size_t d = sum.dim(n);
    Matrix p = Matrix::identity(d);
    for (std::size_t i = 0; i + 1 < d; ++i) p.set(i, i + 1, Rational(uniform(-2, 2)));
    change.push_back(p);
  }
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = sum.min_degree(); n <= sum.max_degree(); ++n) {
    dims.push_back(sum.dim(n));
    if (n > sum.min_degree()) {
      const auto i = static_cast<std::size_t>(n - sum.min_degree());
      diffs.push_back(change[i - 1] * sum.differential(n) * inverse(change[i]));
    }
  }
  ChainComplex c(Field::rationals(), sum.min_degree(), dims, diffs);
  return {c, betti};
}

}  // namespace

TEST_CASE("d^2 = 0 is enforced") {
  const Matrix d1 = Matrix::from_rows({{1}});
  const Matrix d2 = Matrix::from_rows({{1}});
  CHECK_THROWS_AS(ChainComplex(Field::rationals(), 0, {1, 1, 1}, {d1, d2}), MathError);
  CHECK_THROWS_AS(ChainComplex(Field::rationals(), 0, {2, 1}, {d1}), MathError);
}

TEST_CASE("homology of small complexes") {
  const BettiVector circle = homology(triangle_circle());
  CHECK(circle.betti == std::vector<std::size_t>{1, 1});
  CHECK(circle.euler_characteristic() == 0);
  CHECK(homology(triangle_circle(Field::prime(2))).betti == std::vector<std::size_t>{1, 1});
  CHECK(homology(ChainComplex::concentrated(Field::rationals(), 2, 3)).at(2) == 3);
  CHECK(homology(ChainComplex::zero()).euler_characteristic() == 0);
}

TEST_CASE("random complexes with known homology") {
  for (int trial = 0; trial < 30; ++trial) {
    const auto [c, expected] = random_complex(static_cast<int>(uniform(1, 4)));
    const BettiVector h = homology(c);
    for (std::size_t n = 0; n < expected.size(); ++n) CHECK(h.at(static_cast<int>(n)) == expected[n]);
    CHECK(h.euler_characteristic() == c.euler_characteristic());
  }
}

TEST_CASE("truncation flags the top degree") {
  const ChainComplex c(Field::rationals(), 0, {1, 1, 1}, {Matrix::zero(1, 1), Matrix::identity(1)});
  const ChainComplex t = truncate(c, 1);
  const BettiVector h = homology(t);
  CHECK(h.trusted_through == 0);
  CHECK(h.betti == std::vector<std::size_t>{1, 0});
  CHECK(h.trusted() == std::vector<std::size_t>{1});
  ChainComplex marked = c;
  marked.mark_truncated();
  CHECK(homology(marked).trusted_through == 1);
}

TEST_CASE("tensor product realizes the Kunneth convolution") {
  for (int trial = 0; trial < 15; ++trial) {
    const auto a = random_complex(static_cast<int>(uniform(0, 2))).first;
    const auto b = random_complex(static_cast<int>(uniform(0, 2))).first;
    const ChainComplex t = tensor_product(a, b);
    CHECK(homology(t) == convolve(homology(a), homology(b)));
  }
  const BettiVector torus = homology(tensor_product(triangle_circle(), triangle_circle()));
  CHECK(torus.betti == std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("direct sums add Betti vectors") {
  const ChainComplex parts[] = {triangle_circle(), ChainComplex::concentrated(Field::rationals(), 1, 2)};
  CHECK(homology(direct_sum(parts)) == homology(parts[0]) + homology(parts[1]));
  const ChainComplex mixed[] = {triangle_circle(), triangle_circle(Field::prime(3))};
  CHECK_THROWS_AS(direct_sum(mixed), MathError);
}

TEST_CASE("group actions and invariants") {
  // Z_3 rotating the triangle circle; the quotient is again a circle.
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  std::vector<std::vector<Matrix>> mats(3);
  const Matrix rot = Matrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  Matrix power = Matrix::identity(3);
  for (Element g = 0; g < 3; ++g) {
    mats[g] = {power, power};
    power = rot * power;
  }
  const ComplexGroupAction act(triangle_circle(), z3, mats);
  const Matrix proj = act.averaging_projector(0);
  CHECK(proj * proj == proj);
  CHECK(homology(invariants_subcomplex(act)).betti == std::vector<std::size_t>{1, 1});

  auto bad = mats;
  bad[1] = {Matrix::identity(3), rot};
  CHECK_THROWS_AS(ComplexGroupAction(triangle_circle(), z3, bad), MathError);

  const ComplexGroupAction modular(triangle_circle(Field::prime(3)), z3, [&] {
    auto m = mats;
    for (auto& per : m) {
      for (auto& x : per) {
        std::vector<SparseColumn> cols;
        for (std::size_t j = 0; j < x.cols(); ++j) cols.push_back(x.column(j));
        x = Matrix::from_columns(x.rows(), cols, Field::prime(3));
      }
    }
    return m;
  }());
  CHECK_THROWS_AS(modular.averaging_projector(0), MathError);
}
