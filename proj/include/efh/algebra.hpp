#pragma once

#include "efh/field.hpp"
#include "efh/group.hpp"
#include "efh/matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace efh {

/// Finite-dimensional unital associative algebra, given by structure
/// constants e_i e_j = sum_k c(i, j, k) e_k.
///
/// Associativity on all basis triples and the two-sided unit are verified on
/// construction; failures throw MathError(kNotAnAlgebra).
class Algebra {
public:
  Algebra(Field field, std::size_t dim, std::vector<Rational> constants, Vector unit,
          std::optional<Vector> augmentation = std::nullopt);

  /// The ground field as a 1-dimensional algebra.
  static Algebra ground(Field field = Field::rationals());
  /// K[G] with basis the group elements.
  static Algebra group_algebra(const FiniteGroup& g, Field field = Field::rationals());
  /// K[x]/x^n with basis 1, x, ..., x^(n-1).
  static Algebra truncated_polynomial(std::size_t n, Field field = Field::rationals());
  /// M_n(K) with basis the matrix units E_ij at index i*n + j.
  static Algebra matrix_algebra(std::size_t n, Field field = Field::rationals());
  /// Upper triangular n x n matrices, basis E_ij (i <= j) in row-major order.
  static Algebra upper_triangular(std::size_t n, Field field = Field::rationals());
  /// A_1 x ... x A_k with concatenated bases.
  static Algebra product(const std::vector<Algebra>& factors);

  const Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return constants_[(i * dim_ + j) * dim_ + k];
  }
  const std::vector<Rational>& constants() const { return constants_; }
  const Vector& unit() const { return unit_; }
  /// Algebra map to the ground field, when one is known (row vector).
  const std::optional<Vector>& augmentation() const { return augmentation_; }

  Vector multiply(const Vector& a, const Vector& b) const;
  Vector basis_vector(std::size_t i) const;
  /// Matrix of x -> e_i x.
  Matrix left_multiplication(std::size_t i) const;
  /// Matrix of x -> x e_i.
  Matrix right_multiplication(std::size_t i) const;
  Matrix left_multiplication(const Vector& a) const;
  Matrix right_multiplication(const Vector& a) const;

  bool is_commutative() const;

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.field_ == b.field_ && a.dim_ == b.dim_ && a.constants_ == b.constants_ &&
           a.unit_ == b.unit_;
  }

private:
  Field field_;
  std::size_t dim_;
  std::vector<Rational> constants_;
  Vector unit_;
  std::optional<Vector> augmentation_;
};

enum class TwistKind { kAutomorphism, kAntiAutomorphism };

/// A linear automorphism or anti-automorphism of an algebra. Column j of
/// `matrix` is the image of e_j.
///
/// Verified on construction: phi(1) = 1, the (anti-)multiplicativity law on
/// all basis pairs, invertibility, and phi^order = id when an order is given.
class AlgebraTwist {
public:
  AlgebraTwist(Algebra algebra, Matrix matrix, TwistKind kind,
               std::optional<std::size_t> order = std::nullopt);

  static AlgebraTwist identity(const Algebra& a);
  /// x -> u x u^-1 on M_n for an invertible u.
  static AlgebraTwist conjugation(const Algebra& matrix_algebra, std::size_t n, const Matrix& u);
  /// Transpose on M_n, an anti-involution.
  static AlgebraTwist transpose(const Algebra& matrix_algebra, std::size_t n);
  /// Swap of the two factors of A x A (basis concatenated).
  static AlgebraTwist swap_factors(const Algebra& product_of_two);
  /// x -> -x on K[x]/x^n.
  static AlgebraTwist negate_variable(const Algebra& truncated_polynomial);
  /// Group algebra twist induced by a group automorphism (kind automorphism)
  /// or by g -> g^-1 (kind anti-automorphism).
  static AlgebraTwist group_inverse(const Algebra& group_algebra, const FiniteGroup& g);
  static AlgebraTwist group_automorphism(const Algebra& group_algebra, const FiniteGroup& g,
                                         const std::vector<Element>& images);

  const Algebra& algebra() const { return algebra_; }
  const Matrix& matrix() const { return matrix_; }
  TwistKind kind() const { return kind_; }
  std::optional<std::size_t> order() const { return order_; }
  Vector apply(const Vector& v) const { return matrix_.apply(v); }
  bool is_identity() const;

private:
  Algebra algebra_;
  Matrix matrix_;
  TwistKind kind_;
  std::optional<std::size_t> order_;
};

/// A finite-dimensional bimodule over (left, right). Action matrices are
/// indexed by basis elements: left_action(i) is m -> e_i m and
/// right_action(i) is m -> m e_i.
class Bimodule {
public:
  Bimodule(Algebra left, Algebra right, std::size_t dim, std::vector<Matrix> left_action,
           std::vector<Matrix> right_action);

  /// A as an A-A bimodule.
  static Bimodule diagonal(const Algebra& a);

  const Algebra& left_algebra() const { return left_; }
  const Algebra& right_algebra() const { return right_; }
  std::size_t dim() const { return dim_; }
  const Matrix& left_action(std::size_t i) const { return left_action_[i]; }
  const Matrix& right_action(std::size_t i) const { return right_action_[i]; }
  Matrix left_action(const Vector& a) const;
  Matrix right_action(const Vector& a) const;

  friend bool operator==(const Bimodule& a, const Bimodule& b) {
    return a.left_ == b.left_ && a.right_ == b.right_ && a.left_action_ == b.left_action_ &&
           a.right_action_ == b.right_action_;
  }

private:
  Algebra left_;
  Algebra right_;
  std::size_t dim_;
  std::vector<Matrix> left_action_;
  std::vector<Matrix> right_action_;
};

/// A right module; action(i) is m -> m e_i. An optional marked point is
/// carried along for pointed modules.
class RightModule {
public:
  RightModule(Algebra algebra, std::size_t dim, std::vector<Matrix> action,
              std::optional<Vector> marked_point = std::nullopt);

  /// A as a right module over itself, pointed at 1.
  static RightModule regular(const Algebra& a);
  /// K through the augmentation, pointed at 1. Throws MathError(kNotAModule)
  /// when the algebra has no augmentation.
  static RightModule trivial(const Algebra& a);

  const Algebra& algebra() const { return algebra_; }
  std::size_t dim() const { return dim_; }
  const Matrix& action(std::size_t i) const { return action_[i]; }
  const std::vector<Matrix>& actions() const { return action_; }
  Matrix action(const Vector& a) const;
  const std::optional<Vector>& marked_point() const { return marked_point_; }

  friend bool operator==(const RightModule& a, const RightModule& b) {
    return a.algebra_ == b.algebra_ && a.action_ == b.action_ && a.marked_point_ == b.marked_point_;
  }

private:
  Algebra algebra_;
  std::size_t dim_;
  std::vector<Matrix> action_;
  std::optional<Vector> marked_point_;
};

Algebra opposite(const Algebra& a);

/// a (x) b, basis (i, j) at index i * dim(b) + j.
Algebra tensor_algebra(const Algebra& a, const Algebra& b);

/// Re-expresses the algebra in the basis given by the columns of p:
/// e'_j = sum_i p(i, j) e_i.
Algebra change_basis(const Algebra& a, const Matrix& p);
/// The same twist in the basis of change_basis(a, p).
AlgebraTwist change_basis(const AlgebraTwist& phi, const Matrix& p);

/// A with left multiplication and right action m . b = m phi(b). Throws
/// MathError(kTwistKindMismatch) for anti-automorphisms.
Bimodule twisted_diagonal_bimodule(const Algebra& a, const AlgebraTwist& phi);

/// A bimodule over (A, A) as a right module over A (x) A^op:
/// m . (a (x) b) = b m a.
RightModule bimodule_as_right_env_module(const Bimodule& m);

/// A bimodule over (A, A) as a left module over A (x) A^op,
/// (a (x) b) . m = a m b, encoded as a right module over (A (x) A^op)^op.
RightModule bimodule_as_left_env_module(const Bimodule& m);

/// The same two constructions over A^op (x) A, for collars whose first
/// component is traversed against the orientation:
/// m . (b (x) a) = b m a and (b (x) a) . m = a m b.
RightModule bimodule_as_right_reversed_env_module(const Bimodule& m);
RightModule bimodule_as_left_reversed_env_module(const Bimodule& m);

/// A right A-module made into a left A-module through an anti-automorphism:
/// a . n = n phi(a). Returned as a right module over A^op.
RightModule left_module_via_anti_twist(const RightModule& n, const AlgebraTwist& phi);

}  // namespace efh
