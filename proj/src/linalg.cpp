#include "efh/error.hpp"
#include "efh/kernels.hpp"
#include "efh/matrix.hpp"

#include <cstdint>
#include <utility>

namespace efh {

namespace {

using Rows = std::vector<std::vector<Rational>>;

struct Echelon {
  Rows rows;                         // reduced row echelon form, rank rows kept
  std::vector<std::size_t> pivots;   // pivot column per kept row
};

// Reduced row echelon form of the dense rows, optionally augmented by extra
// columns beyond `pivot_cols` that never receive pivots.
Echelon rref(Rows rows, std::size_t pivot_cols, const Field& field) {
  Echelon out;
  std::size_t top = 0;
  const std::size_t n_rows = rows.size();
  for (std::size_t c = 0; c < pivot_cols && top < n_rows; ++c) {
    std::size_t best = n_rows;
    std::size_t best_size = 0;
    for (std::size_t r = top; r < n_rows; ++r) {
      if (rows[r][c].is_zero()) continue;
      const std::size_t sz = rows[r][c].bit_size();
      if (best == n_rows || sz < best_size) {
        best = r;
        best_size = sz;
      }
    }
    if (best == n_rows) continue;
    std::swap(rows[top], rows[best]);
    const Rational inv = field.inv(rows[top][c]);
    for (auto& x : rows[top]) x = field.mul(x, inv);
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (r == top || rows[r][c].is_zero()) continue;
      const Rational f = rows[r][c];
      for (std::size_t k = c; k < rows[r].size(); ++k) {
        if (!rows[top][k].is_zero()) rows[r][k] = field.sub(rows[r][k], field.mul(f, rows[top][k]));
      }
    }
    out.pivots.push_back(c);
    ++top;
  }
  rows.resize(top);
  out.rows = std::move(rows);
  return out;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const bool big = m.rows() * m.cols() > 4096;
  if (m.density() < kernels::kSparseThreshold) {
    return big ? kernels::sparse_rank_parallel(m) : kernels::sparse_rank_serial(m);
  }
  return big ? kernels::dense_rank_parallel(m) : kernels::dense_rank_serial(m);
}

std::size_t rank_with_upper_bound(const Matrix& m, std::size_t upper_bound) {
  constexpr std::uint32_t kCertificatePrime = 2147483647u;
  if (m.field().is_rational() && upper_bound > 0 && m.rows() * m.cols() > 4096) {
    const Field fp = Field::prime(kCertificatePrime);
    const mpz_class p(kCertificatePrime);
    std::vector<SparseColumn> cols(m.cols());
    bool integral = true;
    for (std::size_t j = 0; j < m.cols() && integral; ++j) {
      for (const auto& e : m.column(j)) {
        if (mpz_divisible_p(e.value.denominator().get_mpz_t(), p.get_mpz_t())) {
          integral = false;
          break;
        }
        cols[j].push_back({e.row, fp.element(e.value)});
      }
    }
    if (integral && rank(Matrix::from_columns(m.rows(), std::move(cols), fp)) == upper_bound) return upper_bound;
  }
  return rank(m);
}

std::vector<Vector> kernel_basis(const Matrix& m) {
  const Field& field = m.field();
  Echelon e = rref(m.to_dense_rows(), m.cols(), field);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto p : e.pivots) is_pivot[p] = 1;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = Rational(1);
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
      v[e.pivots[k]] = field.neg(e.rows[k][free]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw MathError(ErrorCode::kDimensionMismatch, "solve: rhs length");
  const Field& field = m.field();
  Rows rows = m.to_dense_rows();
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(field.element(b[i]));
  Echelon e = rref(std::move(rows), m.cols(), field);
  // Rows beyond rank were dropped only if entirely zero in the pivot block;
  // inconsistency shows up as a zero row with nonzero rhs, which rref keeps
  // out of `rows`, so re-check by substitution.
  Vector x(m.cols());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = e.rows[k][m.cols()];
  const Vector check = m.apply(x);
  for (std::size_t i = 0; i < check.size(); ++i) {
    if (!(check[i] == field.element(b[i]))) return std::nullopt;
  }
  return x;
}

std::vector<std::size_t> independent_columns(const Matrix& m) {
  return rref(m.to_dense_rows(), m.cols(), m.field()).pivots;
}

Matrix solve_matrix(const Matrix& m, const Matrix& b) {
  if (m.rows() != b.rows()) throw MathError(ErrorCode::kDimensionMismatch, "solve_matrix");
  const Field& field = m.field();
  Rows rows = m.to_dense_rows();
  const auto rhs = b.to_dense_rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].insert(rows[i].end(), rhs[i].begin(), rhs[i].end());
  }
  Echelon e = rref(std::move(rows), m.cols(), field);
  std::vector<SparseColumn> cols(b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
      const Rational& v = e.rows[k][m.cols() + j];
      if (!v.is_zero()) cols[j].push_back({e.pivots[k], v});
    }
  }
  Matrix x = Matrix::from_columns(m.cols(), std::move(cols), field);
  if (!(m * x == b)) {
    throw MathError(ErrorCode::kInvalidArgument, "solve_matrix: right-hand side not in the image");
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw MathError(ErrorCode::kDimensionMismatch, "inverse of non-square matrix");
  if (rank(m) != m.rows()) throw MathError(ErrorCode::kInvalidArgument, "singular matrix");
  return solve_matrix(m, Matrix::identity(m.rows(), m.field()));
}

}  // namespace efh
