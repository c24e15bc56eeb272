#include "efh/algebra.hpp"

#include "efh/error.hpp"

#include <string>

namespace efh {

namespace {

std::size_t detect_order(const Matrix& m, std::size_t max_order = 24) {
  const Matrix id = Matrix::identity(m.rows(), m.field());
  Matrix power = m;
  for (std::size_t k = 1; k <= max_order; ++k) {
    if (power == id) return k;
    power = power * m;
  }
  return 0;
}

Vector canonical(const Field& field, Vector v) {
  for (auto& x : v) x = field.element(x);
  return v;
}

}  // namespace

// ---- Algebra -------------------------------------------------------------------

Algebra::Algebra(Field field, std::size_t dim, std::vector<Rational> constants, Vector unit,
                 std::optional<Vector> augmentation)
    : field_(field), dim_(dim), constants_(std::move(constants)),
      unit_(canonical(field, std::move(unit))), augmentation_(std::move(augmentation)) {
  if (dim_ == 0) throw MathError(ErrorCode::kNotAnAlgebra, "zero-dimensional algebra");
  if (constants_.size() != dim_ * dim_ * dim_) {
    throw MathError(ErrorCode::kNotAnAlgebra, "need dim^3 structure constants");
  }
  if (unit_.size() != dim_) throw MathError(ErrorCode::kNotAnAlgebra, "unit length");
  for (auto& c : constants_) c = field_.element(c);

  for (std::size_t i = 0; i < dim_; ++i) {
    const Vector e = basis_vector(i);
    if (!(multiply(unit_, e) == e) || !(multiply(e, unit_) == e)) {
      throw MathError(ErrorCode::kNotAnAlgebra, "unit is not a two-sided identity on e_" + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) {
        Vector lhs(dim_), rhs(dim_);
        for (std::size_t l = 0; l < dim_; ++l) {
          const Rational& a = constant(i, j, l);
          const Rational& b = constant(j, k, l);
          for (std::size_t m = 0; m < dim_; ++m) {
            if (!a.is_zero()) lhs[m] = field_.add(lhs[m], field_.mul(a, constant(l, k, m)));
            if (!b.is_zero()) rhs[m] = field_.add(rhs[m], field_.mul(b, constant(i, l, m)));
          }
        }
        if (!(lhs == rhs)) {
          throw MathError(ErrorCode::kNotAnAlgebra,
                          "(e_" + std::to_string(i) + " e_" + std::to_string(j) + ") e_" +
                              std::to_string(k) + " != e_" + std::to_string(i) + " (e_" +
                              std::to_string(j) + " e_" + std::to_string(k) + ")");
        }
      }
    }
  }
  if (augmentation_) {
    auto& aug = *augmentation_;
    aug = canonical(field_, aug);
    if (aug.size() != dim_) throw MathError(ErrorCode::kNotAnAlgebra, "augmentation length");
    auto eval = [&](const Vector& v) {
      Rational s;
      for (std::size_t k = 0; k < dim_; ++k) s = field_.add(s, field_.mul(aug[k], v[k]));
      return s;
    };
    if (!eval(unit_).is_one()) throw MathError(ErrorCode::kNotAnAlgebra, "augmentation is not unital");
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!(eval(multiply(basis_vector(i), basis_vector(j))) == field_.mul(aug[i], aug[j]))) {
          throw MathError(ErrorCode::kNotAnAlgebra, "augmentation is not multiplicative");
        }
      }
    }
  }
}

Algebra Algebra::ground(Field field) { return Algebra(field, 1, {Rational(1)}, {Rational(1)}, Vector{Rational(1)}); }

Algebra Algebra::group_algebra(const FiniteGroup& g, Field field) {
  const std::size_t n = g.order();
  std::vector<Rational> c(n * n * n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) c[(a * n + b) * n + g.mul(a, b)] = Rational(1);
  }
  Vector unit(n);
  unit[g.identity()] = Rational(1);
  return Algebra(field, n, std::move(c), std::move(unit), Vector(n, Rational(1)));
}

Algebra Algebra::truncated_polynomial(std::size_t n, Field field) {
  std::vector<Rational> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; i + j < n; ++j) c[(i * n + j) * n + i + j] = Rational(1);
  }
  Vector unit(n), aug(n);
  unit[0] = Rational(1);
  aug[0] = Rational(1);
  return Algebra(field, n, std::move(c), std::move(unit), std::move(aug));
}

Algebra Algebra::matrix_algebra(std::size_t n, Field field) {
  const std::size_t d = n * n;
  std::vector<Rational> c(d * d * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) c[((i * n + j) * d + (j * n + l)) * d + i * n + l] = Rational(1);
    }
  }
  Vector unit(d);
  for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = Rational(1);
  std::optional<Vector> aug;
  if (n == 1) aug = Vector{Rational(1)};
  return Algebra(field, d, std::move(c), std::move(unit), std::move(aug));
}

Algebra Algebra::upper_triangular(std::size_t n, Field field) {
  std::vector<std::pair<std::size_t, std::size_t>> basis;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) basis.emplace_back(i, j);
  }
  const std::size_t d = basis.size();
  auto index = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < d; ++k) {
      if (basis[k] == std::make_pair(i, j)) return k;
    }
    return d;
  };
  std::vector<Rational> c(d * d * d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      if (basis[a].second == basis[b].first) c[(a * d + b) * d + index(basis[a].first, basis[b].second)] = Rational(1);
    }
  }
  Vector unit(d), aug(d);
  for (std::size_t i = 0; i < n; ++i) unit[index(i, i)] = Rational(1);
  aug[index(0, 0)] = Rational(1);
  return Algebra(field, d, std::move(c), std::move(unit), std::move(aug));
}

Algebra Algebra::product(const std::vector<Algebra>& factors) {
  if (factors.empty()) throw MathError(ErrorCode::kNotAnAlgebra, "empty product");
  const Field field = factors.front().field();
  std::size_t d = 0;
  for (const auto& f : factors) {
    if (!(f.field() == field)) throw MathError(ErrorCode::kFieldMismatch, "product of algebras");
    d += f.dim();
  }
  std::vector<Rational> c(d * d * d);
  Vector unit(d);
  std::optional<Vector> aug;
  if (factors.front().augmentation()) aug = Vector(d);
  std::size_t off = 0;
  for (const auto& f : factors) {
    for (std::size_t i = 0; i < f.dim(); ++i) {
      unit[off + i] = f.unit()[i];
      for (std::size_t j = 0; j < f.dim(); ++j) {
        for (std::size_t k = 0; k < f.dim(); ++k) c[((off + i) * d + off + j) * d + off + k] = f.constant(i, j, k);
      }
    }
    if (off == 0 && aug) {
      for (std::size_t i = 0; i < f.dim(); ++i) (*aug)[i] = (*f.augmentation())[i];
    }
    off += f.dim();
  }
  return Algebra(field, d, std::move(c), std::move(unit), std::move(aug));
}

Vector Algebra::multiply(const Vector& a, const Vector& b) const {
  if (a.size() != dim_ || b.size() != dim_) throw MathError(ErrorCode::kDimensionMismatch, "multiply");
  Vector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b[j].is_zero()) continue;
      const Rational ab = field_.mul(a[i], b[j]);
      for (std::size_t k = 0; k < dim_; ++k) {
        const Rational& c = constant(i, j, k);
        if (!c.is_zero()) out[k] = field_.add(out[k], field_.mul(ab, c));
      }
    }
  }
  return out;
}

Vector Algebra::basis_vector(std::size_t i) const {
  Vector v(dim_);
  v.at(i) = Rational(1);
  return v;
}

Matrix Algebra::left_multiplication(std::size_t i) const { return left_multiplication(basis_vector(i)); }
Matrix Algebra::right_multiplication(std::size_t i) const { return right_multiplication(basis_vector(i)); }

Matrix Algebra::left_multiplication(const Vector& a) const {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < dim_; ++j) cols.push_back(multiply(a, basis_vector(j)));
  return Matrix::from_column_vectors(dim_, cols, field_);
}

Matrix Algebra::right_multiplication(const Vector& a) const {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < dim_; ++j) cols.push_back(multiply(basis_vector(j), a));
  return Matrix::from_column_vectors(dim_, cols, field_);
}

bool Algebra::is_commutative() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) {
        if (!(constant(i, j, k) == constant(j, i, k))) return false;
      }
    }
  }
  return true;
}

// ---- AlgebraTwist ------------------------------------------------------------------

AlgebraTwist::AlgebraTwist(Algebra algebra, Matrix matrix, TwistKind kind, std::optional<std::size_t> order)
    : algebra_(std::move(algebra)), matrix_(std::move(matrix)), kind_(kind), order_(order) {
  const std::size_t d = algebra_.dim();
  if (matrix_.rows() != d || matrix_.cols() != d) throw MathError(ErrorCode::kNotATwist, "twist matrix shape");
  if (!(matrix_.field() == algebra_.field())) throw MathError(ErrorCode::kFieldMismatch, "twist field");
  if (!(apply(algebra_.unit()) == algebra_.unit())) throw MathError(ErrorCode::kNotATwist, "phi(1) != 1");
  if (rank(matrix_) != d) throw MathError(ErrorCode::kNotATwist, "twist is not invertible");
  for (std::size_t i = 0; i < d; ++i) {
    const Vector pi = apply(algebra_.basis_vector(i));
    for (std::size_t j = 0; j < d; ++j) {
      const Vector pj = apply(algebra_.basis_vector(j));
      const Vector lhs = apply(algebra_.multiply(algebra_.basis_vector(i), algebra_.basis_vector(j)));
      const Vector rhs = kind_ == TwistKind::kAutomorphism ? algebra_.multiply(pi, pj) : algebra_.multiply(pj, pi);
      if (!(lhs == rhs)) {
        throw MathError(ErrorCode::kNotATwist,
                        std::string(kind_ == TwistKind::kAutomorphism ? "phi(ab) != phi(a)phi(b)"
                                                                       : "phi(ab) != phi(b)phi(a)") +
                            " on e_" + std::to_string(i) + ", e_" + std::to_string(j));
      }
    }
  }
  if (order_) {
    if (*order_ == 0) throw MathError(ErrorCode::kNotATwist, "order must be positive");
    Matrix power = Matrix::identity(d, algebra_.field());
    for (std::size_t k = 0; k < *order_; ++k) power = power * matrix_;
    if (!(power == Matrix::identity(d, algebra_.field()))) {
      throw MathError(ErrorCode::kNotATwist, "phi^" + std::to_string(*order_) + " != id");
    }
  }
}

bool AlgebraTwist::is_identity() const { return matrix_ == Matrix::identity(algebra_.dim(), algebra_.field()); }

AlgebraTwist AlgebraTwist::identity(const Algebra& a) {
  return AlgebraTwist(a, Matrix::identity(a.dim(), a.field()), TwistKind::kAutomorphism, 1);
}

AlgebraTwist AlgebraTwist::conjugation(const Algebra& a, std::size_t n, const Matrix& u) {
  if (a.dim() != n * n || u.rows() != n || u.cols() != n) {
    throw MathError(ErrorCode::kDimensionMismatch, "conjugation needs M_n and an n x n matrix");
  }
  const Matrix uinv = inverse(u);
  Matrix phi(n * n, n * n, a.field());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // u E_ij u^-1 has entry (k, l) = u(k, i) uinv(j, l)
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          const Rational v = a.field().mul(u.at(k, i), uinv.at(j, l));
          if (!v.is_zero()) phi.set(k * n + l, i * n + j, v);
        }
      }
    }
  }
  const std::size_t ord = detect_order(phi);
  return AlgebraTwist(a, phi, TwistKind::kAutomorphism,
                      ord ? std::optional<std::size_t>(ord) : std::nullopt);
}

AlgebraTwist AlgebraTwist::transpose(const Algebra& a, std::size_t n) {
  if (a.dim() != n * n) throw MathError(ErrorCode::kDimensionMismatch, "transpose needs M_n");
  Matrix phi(n * n, n * n, a.field());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) phi.set(j * n + i, i * n + j, Rational(1));
  }
  return AlgebraTwist(a, phi, TwistKind::kAntiAutomorphism, n == 1 ? 1 : 2);
}

AlgebraTwist AlgebraTwist::swap_factors(const Algebra& a) {
  if (a.dim() % 2 != 0) throw MathError(ErrorCode::kDimensionMismatch, "swap needs A x A");
  const std::size_t h = a.dim() / 2;
  Matrix phi(a.dim(), a.dim(), a.field());
  for (std::size_t i = 0; i < h; ++i) {
    phi.set(h + i, i, Rational(1));
    phi.set(i, h + i, Rational(1));
  }
  return AlgebraTwist(a, phi, TwistKind::kAutomorphism, 2);
}

AlgebraTwist AlgebraTwist::negate_variable(const Algebra& a) {
  Matrix phi(a.dim(), a.dim(), a.field());
  for (std::size_t k = 0; k < a.dim(); ++k) phi.set(k, k, Rational(k % 2 == 0 ? 1 : -1));
  return AlgebraTwist(a, phi, TwistKind::kAutomorphism, a.dim() > 1 ? 2 : 1);
}

AlgebraTwist AlgebraTwist::group_inverse(const Algebra& a, const FiniteGroup& g) {
  if (a.dim() != g.order()) throw MathError(ErrorCode::kDimensionMismatch, "group algebra size");
  Matrix phi(a.dim(), a.dim(), a.field());
  for (Element x = 0; x < g.order(); ++x) phi.set(g.inv(x), x, Rational(1));
  const std::size_t ord = detect_order(phi);
  return AlgebraTwist(a, phi, TwistKind::kAntiAutomorphism, ord);
}

AlgebraTwist AlgebraTwist::group_automorphism(const Algebra& a, const FiniteGroup& g,
                                              const std::vector<Element>& images) {
  if (a.dim() != g.order() || images.size() != g.order()) {
    throw MathError(ErrorCode::kDimensionMismatch, "group automorphism size");
  }
  Matrix phi(a.dim(), a.dim(), a.field());
  for (Element x = 0; x < g.order(); ++x) phi.set(images[x], x, Rational(1));
  const std::size_t ord = detect_order(phi);
  return AlgebraTwist(a, phi, TwistKind::kAutomorphism,
                      ord ? std::optional<std::size_t>(ord) : std::nullopt);
}

// ---- Bimodule ----------------------------------------------------------------------

namespace {

void check_action_shapes(const std::vector<Matrix>& act, std::size_t alg_dim, std::size_t dim,
                         const Field& field, const char* what) {
  if (act.size() != alg_dim) throw MathError(ErrorCode::kNotAModule, std::string(what) + ": one matrix per basis element");
  for (const auto& m : act) {
    if (m.rows() != dim || m.cols() != dim) throw MathError(ErrorCode::kNotAModule, std::string(what) + ": matrix shape");
    if (!(m.field() == field)) throw MathError(ErrorCode::kFieldMismatch, what);
  }
}

Matrix combine(const std::vector<Matrix>& act, const Vector& a, std::size_t dim, const Field& field) {
  Matrix out(dim, dim, field);
  for (std::size_t i = 0; i < act.size(); ++i) {
    if (!a[i].is_zero()) out = out + act[i].scaled(a[i]);
  }
  return out;
}

// Right action law: R(e_i e_j) = R_j R_i; unital.
void check_right_action(const Algebra& alg, const std::vector<Matrix>& act, std::size_t dim, const char* what) {
  const Field& field = alg.field();
  if (!(combine(act, alg.unit(), dim, field) == Matrix::identity(dim, field))) {
    throw MathError(ErrorCode::kNotAModule, std::string(what) + ": unit does not act as identity");
  }
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      const Vector prod = alg.multiply(alg.basis_vector(i), alg.basis_vector(j));
      if (!(combine(act, prod, dim, field) == act[j] * act[i])) {
        throw MathError(ErrorCode::kNotAModule, std::string(what) + ": (m a) b != m (ab)");
      }
    }
  }
}

void check_left_action(const Algebra& alg, const std::vector<Matrix>& act, std::size_t dim, const char* what) {
  const Field& field = alg.field();
  if (!(combine(act, alg.unit(), dim, field) == Matrix::identity(dim, field))) {
    throw MathError(ErrorCode::kNotAModule, std::string(what) + ": unit does not act as identity");
  }
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      const Vector prod = alg.multiply(alg.basis_vector(i), alg.basis_vector(j));
      if (!(combine(act, prod, dim, field) == act[i] * act[j])) {
        throw MathError(ErrorCode::kNotAModule, std::string(what) + ": a (b m) != (ab) m");
      }
    }
  }
}

}  // namespace

Bimodule::Bimodule(Algebra left, Algebra right, std::size_t dim, std::vector<Matrix> left_action,
                   std::vector<Matrix> right_action)
    : left_(std::move(left)), right_(std::move(right)), dim_(dim),
      left_action_(std::move(left_action)), right_action_(std::move(right_action)) {
  if (!(left_.field() == right_.field())) throw MathError(ErrorCode::kFieldMismatch, "bimodule algebras");
  check_action_shapes(left_action_, left_.dim(), dim_, left_.field(), "bimodule left action");
  check_action_shapes(right_action_, right_.dim(), dim_, right_.field(), "bimodule right action");
  check_left_action(left_, left_action_, dim_, "bimodule left action");
  check_right_action(right_, right_action_, dim_, "bimodule right action");
  for (const auto& l : left_action_) {
    for (const auto& r : right_action_) {
      if (!(l * r == r * l)) throw MathError(ErrorCode::kNotAModule, "left and right actions do not commute");
    }
  }
}

Bimodule Bimodule::diagonal(const Algebra& a) {
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    l.push_back(a.left_multiplication(i));
    r.push_back(a.right_multiplication(i));
  }
  return Bimodule(a, a, a.dim(), std::move(l), std::move(r));
}

Matrix Bimodule::left_action(const Vector& a) const { return combine(left_action_, a, dim_, left_.field()); }
Matrix Bimodule::right_action(const Vector& a) const { return combine(right_action_, a, dim_, right_.field()); }

// ---- RightModule ----------------------------------------------------------------------

RightModule::RightModule(Algebra algebra, std::size_t dim, std::vector<Matrix> action,
                         std::optional<Vector> marked_point)
    : algebra_(std::move(algebra)), dim_(dim), action_(std::move(action)), marked_point_(std::move(marked_point)) {
  check_action_shapes(action_, algebra_.dim(), dim_, algebra_.field(), "right module");
  check_right_action(algebra_, action_, dim_, "right module");
  if (marked_point_) {
    if (marked_point_->size() != dim_) throw MathError(ErrorCode::kNotAModule, "marked point length");
    *marked_point_ = canonical(algebra_.field(), *marked_point_);
  }
}

RightModule RightModule::regular(const Algebra& a) {
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a.dim(); ++i) act.push_back(a.right_multiplication(i));
  return RightModule(a, a.dim(), std::move(act), a.unit());
}

RightModule RightModule::trivial(const Algebra& a) {
  if (!a.augmentation()) throw MathError(ErrorCode::kNotAModule, "algebra has no augmentation");
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a.dim(); ++i) act.push_back(Matrix::from_rows({{(*a.augmentation())[i]}}, a.field()));
  return RightModule(a, 1, std::move(act), Vector{Rational(1)});
}

Matrix RightModule::action(const Vector& a) const { return combine(action_, a, dim_, algebra_.field()); }

// ---- constructions -----------------------------------------------------------------------

Algebra opposite(const Algebra& a) {
  const std::size_t d = a.dim();
  std::vector<Rational> c(d * d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) c[(i * d + j) * d + k] = a.constant(j, i, k);
    }
  }
  return Algebra(a.field(), d, std::move(c), a.unit(), a.augmentation());
}

Algebra tensor_algebra(const Algebra& a, const Algebra& b) {
  if (!(a.field() == b.field())) throw MathError(ErrorCode::kFieldMismatch, "tensor_algebra");
  const Field& field = a.field();
  const std::size_t da = a.dim(), db = b.dim(), d = da * db;
  std::vector<Rational> c(d * d * d);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t k = 0; k < da; ++k) {
      for (std::size_t m = 0; m < da; ++m) {
        const Rational& ca = a.constant(i, k, m);
        if (ca.is_zero()) continue;
        for (std::size_t j = 0; j < db; ++j) {
          for (std::size_t l = 0; l < db; ++l) {
            for (std::size_t n = 0; n < db; ++n) {
              const Rational& cb = b.constant(j, l, n);
              if (!cb.is_zero()) c[((i * db + j) * d + (k * db + l)) * d + m * db + n] = field.mul(ca, cb);
            }
          }
        }
      }
    }
  }
  Vector unit(d);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < db; ++j) unit[i * db + j] = field.mul(a.unit()[i], b.unit()[j]);
  }
  std::optional<Vector> aug;
  if (a.augmentation() && b.augmentation()) {
    aug = Vector(d);
    for (std::size_t i = 0; i < da; ++i) {
      for (std::size_t j = 0; j < db; ++j) (*aug)[i * db + j] = field.mul((*a.augmentation())[i], (*b.augmentation())[j]);
    }
  }
  return Algebra(field, d, std::move(c), std::move(unit), std::move(aug));
}

Algebra change_basis(const Algebra& a, const Matrix& p) {
  const std::size_t d = a.dim();
  if (p.rows() != d || p.cols() != d) throw MathError(ErrorCode::kDimensionMismatch, "change_basis");
  const Matrix pinv = inverse(p);
  std::vector<Vector> new_basis;
  for (std::size_t j = 0; j < d; ++j) new_basis.push_back(p.dense_column(j));
  std::vector<Rational> c(d * d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const Vector coords = pinv.apply(a.multiply(new_basis[i], new_basis[j]));
      for (std::size_t k = 0; k < d; ++k) c[(i * d + j) * d + k] = coords[k];
    }
  }
  std::optional<Vector> aug;
  if (a.augmentation()) aug = p.transpose().apply(*a.augmentation());
  return Algebra(a.field(), d, std::move(c), pinv.apply(a.unit()), std::move(aug));
}

AlgebraTwist change_basis(const AlgebraTwist& phi, const Matrix& p) {
  return AlgebraTwist(change_basis(phi.algebra(), p), inverse(p) * phi.matrix() * p, phi.kind(), phi.order());
}

Bimodule twisted_diagonal_bimodule(const Algebra& a, const AlgebraTwist& phi) {
  if (phi.kind() != TwistKind::kAutomorphism) {
    throw MathError(ErrorCode::kTwistKindMismatch, "the twisted diagonal bimodule needs an automorphism");
  }
  if (!(phi.algebra() == a)) throw MathError(ErrorCode::kAlgebraMismatch, "twist of a different algebra");
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    l.push_back(a.left_multiplication(i));
    r.push_back(a.right_multiplication(phi.apply(a.basis_vector(i))));
  }
  return Bimodule(a, a, a.dim(), std::move(l), std::move(r));
}

namespace {

const Algebra& require_square_bimodule(const Bimodule& m) {
  if (!(m.left_algebra() == m.right_algebra())) {
    throw MathError(ErrorCode::kAlgebraMismatch, "bimodule over two different algebras");
  }
  return m.left_algebra();
}

// Actions indexed by (first, second) basis pairs of a two-fold tensor basis.
template <class F>
std::vector<Matrix> pair_actions(std::size_t d, F&& f) {
  std::vector<Matrix> act;
  act.reserve(d * d);
  for (std::size_t first = 0; first < d; ++first) {
    for (std::size_t second = 0; second < d; ++second) act.push_back(f(first, second));
  }
  return act;
}

}  // namespace

RightModule bimodule_as_right_env_module(const Bimodule& m) {
  const Algebra& a = require_square_bimodule(m);
  // m . (e_i (x) e_j) = e_j m e_i
  auto act = pair_actions(a.dim(), [&](std::size_t i, std::size_t j) { return m.left_action(j) * m.right_action(i); });
  return RightModule(tensor_algebra(a, opposite(a)), m.dim(), std::move(act));
}

RightModule bimodule_as_left_env_module(const Bimodule& m) {
  const Algebra& a = require_square_bimodule(m);
  // (e_i (x) e_j) . m = e_i m e_j
  auto act = pair_actions(a.dim(), [&](std::size_t i, std::size_t j) { return m.left_action(i) * m.right_action(j); });
  return RightModule(opposite(tensor_algebra(a, opposite(a))), m.dim(), std::move(act));
}

RightModule bimodule_as_right_reversed_env_module(const Bimodule& m) {
  const Algebra& a = require_square_bimodule(m);
  // m . (e_j (x) e_i) = e_j m e_i
  auto act = pair_actions(a.dim(), [&](std::size_t j, std::size_t i) { return m.left_action(j) * m.right_action(i); });
  return RightModule(tensor_algebra(opposite(a), a), m.dim(), std::move(act));
}

RightModule bimodule_as_left_reversed_env_module(const Bimodule& m) {
  const Algebra& a = require_square_bimodule(m);
  // (e_j (x) e_i) . m = e_i m e_j
  auto act = pair_actions(a.dim(), [&](std::size_t j, std::size_t i) { return m.left_action(i) * m.right_action(j); });
  return RightModule(opposite(tensor_algebra(opposite(a), a)), m.dim(), std::move(act));
}

RightModule left_module_via_anti_twist(const RightModule& n, const AlgebraTwist& phi) {
  if (phi.kind() != TwistKind::kAntiAutomorphism) {
    throw MathError(ErrorCode::kTwistKindMismatch, "left module structure needs an anti-automorphism");
  }
  const Algebra& a = n.algebra();
  if (!(phi.algebra() == a)) throw MathError(ErrorCode::kAlgebraMismatch, "twist of a different algebra");
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a.dim(); ++i) act.push_back(n.action(phi.apply(a.basis_vector(i))));
  return RightModule(opposite(a), n.dim(), std::move(act), n.marked_point());
}

}  // namespace efh
