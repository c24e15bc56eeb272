#pragma once

#include "efh/field.hpp"
#include "efh/group.hpp"
#include "efh/matrix.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace efh {

/// Betti numbers b_n for n = min_degree, min_degree + 1, ...
///
/// When `trusted_through` is set, degrees above it come from a truncated
/// complex and are reported but not reliable.
struct BettiVector {
  int min_degree = 0;
  std::vector<std::size_t> betti;
  std::optional<int> trusted_through;

  int max_degree() const { return min_degree + static_cast<int>(betti.size()) - 1; }
  std::size_t at(int degree) const;
  long euler_characteristic() const;
  /// Entries in degrees <= trusted_through (all entries when untruncated).
  std::vector<std::size_t> trusted() const;

  friend bool operator==(const BettiVector&, const BettiVector&) = default;
};

/// Entrywise sum, aligned by degree.
BettiVector operator+(const BettiVector& a, const BettiVector& b);

/// Bounded chain complex of finite-dimensional vector spaces
/// C_max -> ... -> C_min, stored densely between the two degrees.
///
/// d_n : C_n -> C_{n-1} has shape dim(n-1) x dim(n); d_n d_{n+1} = 0 is
/// verified on construction (MathError(kNotAChainComplex) otherwise).
class ChainComplex {
public:
  ChainComplex() = default;
  /// `differentials[i]` is d_{min_degree + 1 + i}; there are dims.size() - 1
  /// of them.
  ChainComplex(Field field, int min_degree, std::vector<std::size_t> dims,
               std::vector<Matrix> differentials);

  static ChainComplex zero(Field field = Field::rationals());
  /// A single space in one degree.
  static ChainComplex concentrated(Field field, int degree, std::size_t dim);

  const Field& field() const { return field_; }
  int min_degree() const { return min_degree_; }
  int max_degree() const { return min_degree_ + static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int degree) const;
  const std::vector<std::size_t>& dims() const { return dims_; }
  /// d_n; a zero matrix of the right shape outside the stored range.
  Matrix differential(int degree) const;

  /// Set when higher degrees were cut off.
  bool truncated() const { return trusted_through_.has_value(); }
  /// Highest degree whose homology is reliable; nullopt when untruncated.
  std::optional<int> trusted_through() const { return trusted_through_; }
  /// Lowers the trusted range to degrees <= degree.
  ChainComplex& limit_trust(int degree);
  /// Rank of the dropped d_{top+1}, when it was recorded.
  std::optional<std::size_t> top_incoming_rank() const { return top_incoming_rank_; }
  /// Marks the top degree as untrusted (no incoming differential known).
  ChainComplex& mark_truncated();

  long euler_characteristic() const;
  /// Ranks of d_n for n = min..max (index 0 is d_min, always 0).
  std::vector<std::size_t> boundary_ranks() const;

  friend bool operator==(const ChainComplex& a, const ChainComplex& b);

private:
  Field field_;
  int min_degree_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> differentials_;
  std::optional<int> trusted_through_;
  std::optional<std::size_t> top_incoming_rank_;

  friend ChainComplex truncate(const ChainComplex& c, int top);
};

/// b_n = dim C_n - rank d_n - rank d_{n+1}. For truncated complexes the top
/// degree is flagged through `trusted_through`.
BettiVector homology(const ChainComplex& c);

/// Degreewise direct sum; throws MathError(kFieldMismatch) on mixed fields.
ChainComplex direct_sum(std::span<const ChainComplex> cs);

/// Drops degrees above `top`, recording rank d_{top+1}. The top degree is
/// flagged as untrusted.
ChainComplex truncate(const ChainComplex& c, int top);

/// Graded tensor product with the Koszul sign, keeping total degrees
/// <= max_total when given.
ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b,
                            std::optional<int> max_total = std::nullopt);

/// Degreewise graded tensor of Betti vectors (Cauchy convolution).
BettiVector convolve(const BettiVector& a, const BettiVector& b);

/// A finite group, or a subgroup of one, acting on a chain complex by chain
/// automorphisms.
///
/// `matrices[g][i]` acts on degree min_degree + i; entries for elements
/// outside the acting subgroup are ignored and may be empty. On construction
/// checks rho(e) = 1, rho(gh) = rho(g) rho(h) and rho(g) d = d rho(g)
/// (MathError(kNotAnAction) otherwise).
class ComplexGroupAction {
public:
  ComplexGroupAction(ChainComplex complex, Subgroup acting,
                     std::vector<std::vector<Matrix>> matrices);
  ComplexGroupAction(ChainComplex complex, const FiniteGroup& group,
                     std::vector<std::vector<Matrix>> matrices)
      : ComplexGroupAction(std::move(complex), Subgroup::whole(group), std::move(matrices)) {}

  /// Restricts the action to a subgroup of the acting group.
  ComplexGroupAction restrict_to(const Subgroup& h) const;

  const ChainComplex& complex() const { return complex_; }
  const Subgroup& acting() const { return acting_; }
  const Matrix& matrix(Element g, int degree) const;

  /// (1/|H|) sum_h rho(h) in one degree. Throws
  /// MathError(kCharacteristicDividesOrder) when |H| is not invertible.
  Matrix averaging_projector(int degree) const;

private:
  ChainComplex complex_;
  Subgroup acting_;
  std::vector<std::vector<Matrix>> matrices_;
};

/// The invariant subcomplex, as the image of the averaging projector in each
/// degree with the restricted differentials.
ChainComplex invariants_subcomplex(const ComplexGroupAction& a);

}  // namespace efh
