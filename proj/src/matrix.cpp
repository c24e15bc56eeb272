#include "efh/matrix.hpp"

#include "efh/error.hpp"

#include <algorithm>
#include <string>

namespace efh {

namespace {

void require_same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) {
    throw MathError(ErrorCode::kFieldMismatch, a.field().name() + " vs " + b.field().name());
  }
}

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Sorts by row, merges duplicates, drops zeros.
SparseColumn normalize_column(SparseColumn col, const Field& field, std::size_t rows) {
  std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
  SparseColumn out;
  out.reserve(col.size());
  for (auto& e : col) {
    if (e.row >= rows) throw MathError(ErrorCode::kDimensionMismatch, "row index out of range");
    if (!out.empty() && out.back().row == e.row) {
      out.back().value = field.add(out.back().value, e.value);
    } else {
      out.push_back({e.row, field.element(e.value)});
    }
  }
  std::erase_if(out, [](const Entry& e) { return e.value.is_zero(); });
  return out;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), columns_(cols) {}

Matrix Matrix::identity(std::size_t n, Field field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i].push_back({i, Rational(1)});
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows, Field field) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c, field);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw MathError(ErrorCode::kDimensionMismatch, "ragged rows");
    for (std::size_t j = 0; j < c; ++j) {
      Rational v = field.element(rows[i][j]);
      if (!v.is_zero()) m.columns_[j].push_back({i, std::move(v)});
    }
  }
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::vector<SparseColumn> columns, Field field) {
  Matrix m(rows, columns.size(), field);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    m.columns_[j] = normalize_column(std::move(columns[j]), field, rows);
  }
  return m;
}

Matrix Matrix::from_column_vectors(std::size_t rows, const std::vector<Vector>& columns,
                                   Field field) {
  Matrix m(rows, columns.size(), field);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw MathError(ErrorCode::kDimensionMismatch, "column length");
    for (std::size_t i = 0; i < rows; ++i) {
      Rational v = field.element(columns[j][i]);
      if (!v.is_zero()) m.columns_[j].push_back({i, std::move(v)});
    }
  }
  return m;
}

Rational Matrix::at(std::size_t r, std::size_t c) const {
  const auto& col = columns_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, std::size_t row) { return e.row < row; });
  if (it != col.end() && it->row == r) return it->value;
  return Rational(0);
}

void Matrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw MathError(ErrorCode::kDimensionMismatch, "index out of range");
  auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const Entry& e, std::size_t row) { return e.row < row; });
  Rational value = field_.element(v);
  if (it != col.end() && it->row == r) {
    if (value.is_zero()) {
      col.erase(it);
    } else {
      it->value = std::move(value);
    }
  } else if (!value.is_zero()) {
    col.insert(it, {r, std::move(value)});
  }
}

Vector Matrix::dense_column(std::size_t c) const {
  Vector v(rows_);
  for (const auto& e : columns_.at(c)) v[e.row] = e.value;
  return v;
}

std::vector<std::vector<Rational>> Matrix::to_dense_rows() const {
  std::vector<std::vector<Rational>> out(rows_, std::vector<Rational>(cols_));
  for (std::size_t j = 0; j < cols_; ++j) {
    for (const auto& e : columns_[j]) out[e.row][j] = e.value;
  }
  return out;
}

std::size_t Matrix::nnz() const {
  std::size_t n = 0;
  for (const auto& col : columns_) n += col.size();
  return n;
}

double Matrix::density() const {
  if (rows_ == 0 || cols_ == 0) return 0.0;
  return static_cast<double>(nnz()) / (static_cast<double>(rows_) * static_cast<double>(cols_));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (std::size_t j = 0; j < cols_; ++j) {
    for (const auto& e : columns_[j]) t.columns_[e.row].push_back({j, e.value});
  }
  return t;
}

Matrix Matrix::scaled(const Rational& s) const {
  Matrix out(rows_, cols_, field_);
  const Rational f = field_.element(s);
  if (f.is_zero()) return out;
  for (std::size_t j = 0; j < cols_; ++j) {
    out.columns_[j].reserve(columns_[j].size());
    for (const auto& e : columns_[j]) out.columns_[j].push_back({e.row, field_.mul(e.value, f)});
  }
  return out;
}

Matrix Matrix::select(std::span<const std::size_t> row_ids,
                      std::span<const std::size_t> col_ids) const {
  std::vector<std::ptrdiff_t> new_row(rows_, -1);
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    if (row_ids[i] >= rows_) throw MathError(ErrorCode::kDimensionMismatch, "row select");
    new_row[row_ids[i]] = static_cast<std::ptrdiff_t>(i);
  }
  std::vector<SparseColumn> cols;
  cols.reserve(col_ids.size());
  for (auto c : col_ids) {
    SparseColumn col;
    for (const auto& e : columns_.at(c)) {
      if (new_row[e.row] >= 0) col.push_back({static_cast<std::size_t>(new_row[e.row]), e.value});
    }
    cols.push_back(std::move(col));
  }
  return from_columns(row_ids.size(), std::move(cols), field_);
}

Vector Matrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw MathError(ErrorCode::kDimensionMismatch, "apply: vector length");
  Vector out(rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (v[j].is_zero()) continue;
    for (const auto& e : columns_[j]) out[e.row] += e.value * v[j];
  }
  if (field_.is_prime()) {
    for (auto& x : out) x = field_.element(x);
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) {
    throw MathError(ErrorCode::kDimensionMismatch, "product " + shape(a) + " * " + shape(b));
  }
  std::vector<SparseColumn> cols(b.cols());
  std::vector<Rational> acc(a.rows());
  std::vector<char> touched(a.rows(), 0);
  std::vector<std::size_t> rows_hit;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    rows_hit.clear();
    for (const auto& eb : b.column(j)) {
      for (const auto& ea : a.column(eb.row)) {
        if (!touched[ea.row]) {
          touched[ea.row] = 1;
          rows_hit.push_back(ea.row);
          acc[ea.row] = ea.value * eb.value;
        } else {
          acc[ea.row] += ea.value * eb.value;
        }
      }
    }
    std::sort(rows_hit.begin(), rows_hit.end());
    for (auto r : rows_hit) {
      Rational v = a.field().element(acc[r]);
      if (!v.is_zero()) cols[j].push_back({r, std::move(v)});
      touched[r] = 0;
    }
  }
  Matrix out(a.rows(), b.cols(), a.field());
  out.columns_ = std::move(cols);
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw MathError(ErrorCode::kDimensionMismatch, "sum " + shape(a) + " + " + shape(b));
  }
  std::vector<SparseColumn> cols(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    cols[j] = a.column(j);
    cols[j].insert(cols[j].end(), b.column(j).begin(), b.column(j).end());
  }
  return Matrix::from_columns(a.rows(), std::move(cols), a.field());
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + b.scaled(Rational(-1)); }

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ &&
         a.columns_ == b.columns_;
}

Matrix Matrix::direct_sum(std::span<const Matrix> blocks, Field field) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    if (!(b.field() == field)) throw MathError(ErrorCode::kFieldMismatch, "direct_sum");
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out(rows, cols, field);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      for (const auto& e : b.column(j)) out.columns_[c0 + j].push_back({r0 + e.row, e.value});
    }
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

Matrix Matrix::kronecker(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
  for (std::size_t ja = 0; ja < a.cols(); ++ja) {
    for (std::size_t jb = 0; jb < b.cols(); ++jb) {
      auto& col = out.columns_[ja * b.cols() + jb];
      for (const auto& ea : a.column(ja)) {
        for (const auto& eb : b.column(jb)) {
          col.push_back({ea.row * b.rows() + eb.row, a.field().mul(ea.value, eb.value)});
        }
      }
    }
  }
  return out;
}

}  // namespace efh
