#include "efh/resolutions.hpp"

#include "efh/error.hpp"

#include <cstdint>
#include <utility>

namespace efh {

namespace {

using SparseImage = std::vector<std::pair<std::uint32_t, Rational>>;
// action[k][src] lists the image of basis vector src under basis element k.
using SparseAction = std::vector<std::vector<SparseImage>>;

SparseAction sparse_action(const std::vector<Matrix>& mats) {
  SparseAction out(mats.size());
  for (std::size_t k = 0; k < mats.size(); ++k) {
    out[k].resize(mats[k].cols());
    for (std::size_t src = 0; src < mats[k].cols(); ++src) {
      for (const auto& e : mats[k].column(src)) out[k][src].emplace_back(static_cast<std::uint32_t>(e.row), e.value);
    }
  }
  return out;
}

// Data shared by the Hochschild and bar complexes. Tensor factors of A range
// over `r` bar indices; in the normalized case the unit index is left out and
// products are projected off it.
struct TensorChains {
  Field field;
  std::size_t dm = 0;  // left end
  std::size_t dn = 1;  // right end (1 for Hochschild)
  std::size_t r = 0;
  SparseAction first_face;  // m -> m a_k
  SparseAction last_face;   // x -> a_k x, or m -> a_k m when cyclic
  std::vector<std::vector<SparseImage>> product;  // [i][j] -> a_i a_j over bar indices
  bool cyclic = false;

  std::size_t power(int n) const {
    std::size_t p = 1;
    for (int i = 0; i < n; ++i) p *= r;
    return p;
  }
  std::size_t dim(int n) const { return dm * power(n) * dn; }

  SparseColumn column(int n, std::size_t c, std::vector<std::size_t>& digits) const {
    const std::size_t x = c % dn;
    std::size_t rest = c / dn;
    digits.assign(static_cast<std::size_t>(n), 0);
    for (int i = n - 1; i >= 0; --i) {
      digits[static_cast<std::size_t>(i)] = rest % r;
      rest /= r;
    }
    const std::size_t m = rest;
    // Row index in degree n-1 for (m, a_1 .. a_{n-1}, x) given as a digit run.
    auto encode = [&](std::size_t mm, auto&& digit_at, std::size_t xx) {
      std::size_t idx = mm;
      for (int i = 0; i < n - 1; ++i) idx = idx * r + digit_at(i);
      return idx * dn + xx;
    };
    const Rational minus_one = field.neg(Rational(1));
    SparseColumn out;
    for (const auto& [m2, v] : first_face[digits[0]][m]) {
      out.push_back({encode(m2, [&](int i) { return digits[static_cast<std::size_t>(i) + 1]; }, x), v});
    }
    for (int f = 1; f < n; ++f) {
      const auto fs = static_cast<std::size_t>(f);
      const bool negative = f % 2 == 1;
      for (const auto& [k, v] : product[digits[fs - 1]][digits[fs]]) {
        auto digit_at = [&](int i) {
          const auto is = static_cast<std::size_t>(i);
          if (is < fs - 1) return digits[is];
          if (is == fs - 1) return static_cast<std::size_t>(k);
          return digits[is + 1];
        };
        out.push_back({encode(m, digit_at, x), negative ? field.mul(minus_one, v) : v});
      }
    }
    const bool negative = n % 2 == 1;
    auto prefix = [&](int i) { return digits[static_cast<std::size_t>(i)]; };
    const std::size_t last = digits[static_cast<std::size_t>(n) - 1];
    if (cyclic) {
      for (const auto& [m2, v] : last_face[last][m]) {
        out.push_back({encode(m2, prefix, x), negative ? field.mul(minus_one, v) : v});
      }
    } else {
      for (const auto& [x2, v] : last_face[last][x]) {
        out.push_back({encode(m, prefix, x2), negative ? field.mul(minus_one, v) : v});
      }
    }
    return out;
  }

  Matrix differential(int n, Assembly assembly) const {
    const std::size_t cols = dim(n);
    std::vector<SparseColumn> columns(cols);
    const auto count = static_cast<std::ptrdiff_t>(cols);
    const bool parallel = assembly == Assembly::kParallel && cols > 256;
#pragma omp parallel if (parallel)
    {
      std::vector<std::size_t> digits;
#pragma omp for schedule(static)
      for (std::ptrdiff_t c = 0; c < count; ++c) {
        columns[static_cast<std::size_t>(c)] = column(n, static_cast<std::size_t>(c), digits);
      }
    }
    return Matrix::from_columns(dim(n - 1), std::move(columns), field);
  }

  ChainComplex build(int cap, Assembly assembly) const {
    if (cap < 0) throw MathError(ErrorCode::kInvalidArgument, "degree cap must be >= 0");
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int n = 0; n <= cap; ++n) {
      dims.push_back(dim(n));
      if (n > 0) diffs.push_back(differential(n, assembly));
    }
    ChainComplex c(field, 0, std::move(dims), std::move(diffs));
    c.mark_truncated();
    return c;
  }
};

// Bar indices and the projected product table of `a` (already unit-adapted
// when normalizing, with the unit at `unit_index`).
void fill_products(TensorChains& t, const Algebra& a, bool normalized, std::size_t unit_index,
                   std::vector<std::size_t>& indices) {
  indices.clear();
  std::vector<std::int64_t> position(a.dim(), -1);
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (normalized && k == unit_index) continue;
    position[k] = static_cast<std::int64_t>(indices.size());
    indices.push_back(k);
  }
  t.r = indices.size();
  t.product.assign(t.r, std::vector<SparseImage>(t.r));
  for (std::size_t i = 0; i < t.r; ++i) {
    for (std::size_t j = 0; j < t.r; ++j) {
      for (std::size_t k = 0; k < a.dim(); ++k) {
        const Rational& c = a.constant(indices[i], indices[j], k);
        if (!c.is_zero() && position[k] >= 0) t.product[i][j].emplace_back(static_cast<std::uint32_t>(position[k]), c);
      }
    }
  }
}

template <class ActionOf>
std::vector<Matrix> actions_on(const std::vector<std::size_t>& indices, const Matrix& p, ActionOf&& act) {
  std::vector<Matrix> out;
  out.reserve(indices.size());
  for (auto k : indices) out.push_back(act(p.dense_column(k)));
  return out;
}

}  // namespace

Matrix unit_adapted_basis(const Algebra& a, std::size_t* unit_index) {
  const Vector& unit = a.unit();
  std::size_t u = a.dim();
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (unit[k].is_zero()) continue;
    ++nonzero;
    if (u == a.dim()) u = k;
  }
  Matrix p = Matrix::identity(a.dim(), a.field());
  if (!(nonzero == 1 && unit[u].is_one())) {
    for (std::size_t k = 0; k < a.dim(); ++k) p.set(k, u, unit[k]);
  }
  if (unit_index) *unit_index = u;
  return p;
}

ChainComplex hochschild_complex(const HochschildComplexSpec& spec, Assembly assembly) {
  const Algebra& a = spec.algebra;
  const Bimodule& m = spec.coefficients;
  if (!(m.left_algebra() == a) || !(m.right_algebra() == a)) {
    throw MathError(ErrorCode::kAlgebraMismatch, "coefficients are not a bimodule over the algebra");
  }
  std::size_t u = 0;
  const Matrix p = spec.normalized ? unit_adapted_basis(a, &u) : Matrix::identity(a.dim(), a.field());
  const Algebra adapted = spec.normalized ? change_basis(a, p) : a;

  TensorChains t;
  t.field = a.field();
  t.dm = m.dim();
  t.cyclic = true;
  std::vector<std::size_t> indices;
  fill_products(t, adapted, spec.normalized, u, indices);
  t.first_face = sparse_action(actions_on(indices, p, [&](const Vector& v) { return m.right_action(v); }));
  t.last_face = sparse_action(actions_on(indices, p, [&](const Vector& v) { return m.left_action(v); }));
  return t.build(spec.degree_cap, assembly);
}

ChainComplex bar_complex(const BarComplexSpec& spec, Assembly assembly) {
  const Algebra& a = spec.algebra;
  if (!(spec.left.algebra() == a)) throw MathError(ErrorCode::kAlgebraMismatch, "left module is over another algebra");
  if (!(spec.right.algebra() == opposite(a))) {
    throw MathError(ErrorCode::kAlgebraMismatch, "right module is not a left module over the algebra");
  }
  std::size_t u = 0;
  const Matrix p = spec.normalized ? unit_adapted_basis(a, &u) : Matrix::identity(a.dim(), a.field());
  const Algebra adapted = spec.normalized ? change_basis(a, p) : a;

  TensorChains t;
  t.field = a.field();
  t.dm = spec.left.dim();
  t.dn = spec.right.dim();
  std::vector<std::size_t> indices;
  fill_products(t, adapted, spec.normalized, u, indices);
  t.first_face = sparse_action(actions_on(indices, p, [&](const Vector& v) { return spec.left.action(v); }));
  t.last_face = sparse_action(actions_on(indices, p, [&](const Vector& v) { return spec.right.action(v); }));
  return t.build(spec.degree_cap, assembly);
}

std::vector<Vector> twisted_traces(const Algebra& a, const AlgebraTwist& phi, TraceConvention convention) {
  if (phi.kind() != TwistKind::kAutomorphism) {
    throw MathError(ErrorCode::kTwistKindMismatch, "twisted traces need an automorphism");
  }
  if (!(phi.algebra() == a)) throw MathError(ErrorCode::kAlgebraMismatch, "twist of a different algebra");
  if (!(phi.matrix() * phi.matrix() == Matrix::identity(a.dim(), a.field()))) {
    throw MathError(ErrorCode::kTwistKindMismatch, "twisted traces need an involution");
  }
  const std::size_t d = a.dim();
  const Field& field = a.field();
  std::vector<std::vector<Rational>> rows;
  rows.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const Vector ei = a.basis_vector(i), ej = a.basis_vector(j);
      const Vector lhs = a.multiply(ei, ej);
      const Vector rhs = convention == TraceConvention::kPhiLeft ? a.multiply(phi.apply(ej), ei)
                                                                 : a.multiply(ej, phi.apply(ei));
      std::vector<Rational> row(d);
      for (std::size_t k = 0; k < d; ++k) row[k] = field.sub(lhs[k], rhs[k]);
      rows.push_back(std::move(row));
    }
  }
  return kernel_basis(Matrix::from_rows(rows, field));
}

}  // namespace efh
