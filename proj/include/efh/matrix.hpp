#pragma once

#include "efh/field.hpp"
#include "efh/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace efh {

struct Entry {
  std::size_t row;
  Rational value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sorted by row, no explicit zeros.
using SparseColumn = std::vector<Entry>;
using Vector = std::vector<Rational>;

/// Matrix over a Field, stored column-major with sparse columns.
///
/// Every entry is a canonical element of `field()`. Dense algorithms convert
/// on demand; `rank` picks the sparse or dense kernel from the fill ratio.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Field field = Field::rationals());

  static Matrix identity(std::size_t n, Field field = Field::rationals());
  static Matrix zero(std::size_t rows, std::size_t cols, Field field = Field::rationals()) {
    return Matrix(rows, cols, field);
  }
  /// Row-major dense input.
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows,
                          Field field = Field::rationals());
  /// Columns may be unsorted and contain duplicates or zeros; they are
  /// normalized here.
  static Matrix from_columns(std::size_t rows, std::vector<SparseColumn> columns,
                             Field field = Field::rationals());
  static Matrix from_column_vectors(std::size_t rows, const std::vector<Vector>& columns,
                                    Field field = Field::rationals());

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);

  const SparseColumn& column(std::size_t c) const { return columns_[c]; }
  Vector dense_column(std::size_t c) const;
  std::vector<std::vector<Rational>> to_dense_rows() const;

  std::size_t nnz() const;
  /// nnz / (rows * cols); 0 for empty shapes.
  double density() const;
  bool is_zero() const { return nnz() == 0; }
  bool is_square() const { return rows_ == cols_; }

  Matrix transpose() const;
  Matrix scaled(const Rational& s) const;
  /// Sub-matrix from selected rows and columns, in the given order.
  Matrix select(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const;

  Vector apply(std::span<const Rational> v) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  /// Block diagonal sum.
  static Matrix direct_sum(std::span<const Matrix> blocks, Field field);
  /// Kronecker product, a-index major.
  static Matrix kronecker(const Matrix& a, const Matrix& b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_;
  std::vector<SparseColumn> columns_;
};

// ---- exact linear algebra ------------------------------------------------

std::size_t rank(const Matrix& m);

/// Rank of a matrix already known to have rank <= upper_bound. Over Q the
/// rank modulo a large prime is a lower bound; when it reaches upper_bound
/// that value is returned without rational elimination.
std::size_t rank_with_upper_bound(const Matrix& m, std::size_t upper_bound);

/// Basis of {v : m v = 0}, as dense column vectors in reduced form (each
/// vector has a 1 at its free variable).
std::vector<Vector> kernel_basis(const Matrix& m);

/// Some x with m x = b, or nullopt when b is not in the image.
std::optional<Vector> solve(const Matrix& m, std::span<const Rational> b);

/// Indices of a maximal linearly independent set of columns (pivot columns
/// of the reduced row echelon form).
std::vector<std::size_t> independent_columns(const Matrix& m);

/// Solves m X = b column-by-column; throws MathError(kInvalidArgument) if
/// some column of b is outside the image of m.
Matrix solve_matrix(const Matrix& m, const Matrix& b);

/// Inverse of a square matrix; throws MathError(kInvalidArgument) when
/// singular.
Matrix inverse(const Matrix& m);

}  // namespace efh
