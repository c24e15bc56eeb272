#pragma once

#include "efh/matrix.hpp"

#include <random>
#include <vector>

namespace efh::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

/// Random matrix with roughly the given fill, small integer or fractional entries.
inline Matrix random_matrix(std::size_t rows, std::size_t cols, double fill, Field field = Field::rationals(),
                            bool fractions = false) {
  std::vector<std::vector<Rational>> dense(rows, std::vector<Rational>(cols));
  std::bernoulli_distribution keep(fill);
  for (auto& row : dense) {
    for (auto& x : row) {
      if (!keep(rng())) continue;
      x = fractions ? Rational(uniform(-9, 9), uniform(1, 7)) : Rational(uniform(-3, 3));
    }
  }
  return Matrix::from_rows(dense, field);
}

/// Naive rank: textbook elimination with the first nonzero pivot, kept
/// deliberately independent of the library kernels.
inline std::size_t oracle_rank(const Matrix& m) {
  auto a = m.to_dense_rows();
  const Field& f = m.field();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c].is_zero()) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (a[i][c].is_zero()) continue;
      const Rational q = f.div(a[i][c], a[r][c]);
      for (std::size_t k = c; k < m.cols(); ++k) a[i][k] = f.sub(a[i][k], f.mul(q, a[r][k]));
    }
    ++r;
  }
  return r;
}

}  // namespace efh::testing
