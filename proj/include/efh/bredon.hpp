#pragma once

#include "efh/chain_complex.hpp"
#include "efh/group.hpp"
#include "efh/matrix.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace efh {

/// The orbit category of a finite group, or its full subcategory on a family
/// of subgroups.
///
/// A morphism G/I -> G/J is xI -> xgJ for a coset gJ with g^-1 I g in J; it
/// is stored as the minimal element of gJ. Composition is
/// phi_h o phi_g = phi_{gh}. Associativity and identities are verified on
/// construction.
class OrbitCategory {
public:
  explicit OrbitCategory(FiniteGroup g, std::optional<std::vector<Subgroup>> family = std::nullopt);

  const FiniteGroup& group() const { return group_; }
  const std::vector<Subgroup>& objects() const { return objects_; }
  std::size_t size() const { return objects_.size(); }
  std::optional<std::size_t> find(const Subgroup& h) const;
  /// Canonical coset representatives of Hom(G/I_i, G/I_j), sorted.
  const std::vector<Element>& hom(std::size_t i, std::size_t j) const { return homs_[i * size() + j]; }
  /// Minimal element of g I_j.
  Element canonical(std::size_t j, Element g) const;
  bool is_morphism(std::size_t i, std::size_t j, Element g) const;
  Element identity(std::size_t i) const { return canonical(i, group_.identity()); }
  /// phi_h o phi_g for phi_g : i -> j and phi_h : j -> k.
  Element compose(std::size_t k, Element g, Element h) const { return canonical(k, group_.mul(g, h)); }

private:
  FiniteGroup group_;
  std::vector<Subgroup> objects_;
  std::vector<std::vector<Element>> homs_;
};

enum class Variance { kCovariant, kContravariant };

/// A functor from the orbit category to finite-dimensional vector spaces.
///
/// Covariant values map A(phi): A(G/I) -> A(G/J); contravariant ones go the
/// other way. Functoriality is checked on every composable pair at
/// construction (MathError(kNotAFunctor)).
class CoefficientSystem {
public:
  using Key = std::tuple<std::size_t, std::size_t, Element>;

  CoefficientSystem(OrbitCategory category, Variance variance, std::vector<std::size_t> dims,
                    std::map<Key, Matrix> maps, Field field = Field::rationals(), std::string label = "custom");

  const OrbitCategory& category() const { return category_; }
  Variance variance() const { return variance_; }
  const Field& field() const { return field_; }
  const std::string& label() const { return label_; }
  std::size_t dim(std::size_t object) const { return dims_[object]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  /// A(phi_g) for any g with g^-1 I_i g in I_j.
  const Matrix& map(std::size_t i, std::size_t j, Element g) const;
  const std::map<Key, Matrix>& maps() const { return maps_; }

private:
  OrbitCategory category_;
  Variance variance_;
  std::vector<std::size_t> dims_;
  std::map<Key, Matrix> maps_;
  Field field_;
  std::string label_;
};

/// Every object to K^dim, every morphism to the identity.
CoefficientSystem constant_system(const OrbitCategory& oc, std::size_t dim, Field field = Field::rationals(),
                                  Variance variance = Variance::kCovariant);
CoefficientSystem zero_system(const OrbitCategory& oc, Field field = Field::rationals());

/// From a linear representation rho (one matrix per group element).
/// Covariant: coinvariants V_I, realized as V^I with A(phi_g) w = P_J rho(g^-1) w;
/// needs |I| invertible in the field (MathError(kCharacteristicDividesOrder)).
/// Contravariant: fixed points V^I with A(phi_g) w = rho(g) w.
CoefficientSystem representation_system(const OrbitCategory& oc, const std::vector<Matrix>& rho,
                                        Variance variance = Variance::kCovariant, std::string label = "representation");
/// The regular representation K[G]; A(G/I) has dimension [G : I].
CoefficientSystem regular_system(const OrbitCategory& oc, Field field = Field::rationals(),
                                 Variance variance = Variance::kCovariant);

/// Names accepted by `builtin_system`: constant, constant2, zero, regular.
std::vector<std::string> builtin_system_names();
CoefficientSystem builtin_system(const std::string& name, const OrbitCategory& oc, Field field = Field::rationals(),
                                 Variance variance = Variance::kCovariant);

/// One orbit G/I of n-cells. The cell at the base coset is fixed by I; the
/// elements in `reversed_by` (a subset of I) flip its orientation.
struct CellOrbit {
  std::string id;
  int dim = 0;
  Subgroup isotropy;
  std::vector<Element> reversed_by;

  friend bool operator==(const CellOrbit&, const CellOrbit&) = default;
};

/// d(sigma) contains coeff * (g tau): for the base cell of `from` (isotropy
/// I), the cell of `to` (isotropy J) at coset gJ. Requires g^-1 I g in J.
struct BoundaryTerm {
  std::string from;
  std::string to;
  Element coset = 0;
  Rational coeff = 1;

  friend bool operator==(const BoundaryTerm&, const BoundaryTerm&) = default;
};

/// A cell of the non-equivariant complex: orbit index and coset index.
struct ExpandedCell {
  std::size_t orbit;
  std::size_t coset;
  Element representative;
};

/// A finite G-CW complex given by cell orbits and boundary combinations.
///
/// Validation on construction: unique ids, dimensions, isotropy inside G,
/// boundary terms lowering dimension by one with valid morphisms (for a
/// flipped cell, a boundary that changes sign with its orientation), and
/// d^2 = 0 on the expanded cellular complex.
class GammaCWComplex {
public:
  GammaCWComplex(FiniteGroup g, std::vector<CellOrbit> cells, std::vector<BoundaryTerm> boundary);

  const FiniteGroup& group() const { return group_; }
  const std::vector<CellOrbit>& cells() const { return cells_; }
  const std::vector<BoundaryTerm>& boundary() const { return boundary_; }
  int dimension() const { return dimension_; }
  std::optional<std::size_t> find(const std::string& id) const;
  /// Orbit indices of n-cells in input order.
  std::vector<std::size_t> orbits_in_degree(int n) const;

  /// Cells of degree n, orbit by orbit, cosets in `left_cosets` order.
  std::vector<ExpandedCell> expanded_cells(int n) const;
  /// Cellular chains of the underlying space.
  ChainComplex expanded_complex(Field field = Field::rationals()) const;
  /// G permuting the expanded cells, with orientation signs.
  ComplexGroupAction expanded_action(Field field = Field::rationals()) const;

  bool has_orientation_reversal() const;

  friend bool operator==(const GammaCWComplex& a, const GammaCWComplex& b) {
    return a.group_ == b.group_ && a.cells_ == b.cells_ && a.boundary_ == b.boundary_;
  }

private:
  FiniteGroup group_;
  std::vector<CellOrbit> cells_;
  std::vector<BoundaryTerm> boundary_;
  int dimension_ = -1;
  // d_1 .. d_dimension of the expanded complex.
  std::vector<Matrix> expanded_boundaries(Field field) const;
};

/// Ids of the second complex get the prefix "R/", of the first "L/".
GammaCWComplex disjoint_union(const GammaCWComplex& a, const GammaCWComplex& b);

/// The orbits with the given ids. Throws MathError(kDecompositionInvalid)
/// when the set is not closed under taking boundaries.
GammaCWComplex subcomplex(const GammaCWComplex& x, const std::vector<std::string>& ids);

/// C_n = sum over n-cell orbits of A(G/I), differential
/// sum of coeff * A(phi_g). Covariant systems only.
/// Throws kIsotropyNotCovered, kOrientationReversal.
ChainComplex bredon_complex(const GammaCWComplex& x, const CoefficientSystem& a);

/// Cochains for a contravariant system, stored as a chain complex in
/// degrees -dimension..0 (degree -n holds C^n).
ChainComplex bredon_cochain_complex(const GammaCWComplex& x, const CoefficientSystem& a);

struct BredonResult {
  BettiVector betti;
  std::string coefficient_system_id;
};

/// Homology for covariant systems; cohomology, indexed by n >= 0, for
/// contravariant ones.
BredonResult bredon_homology(const GammaCWComplex& x, const CoefficientSystem& a);

/// X = X_+ u X_- with X_0 = X_+ n X_-, given as orbit-id lists.
struct Decomposition {
  std::vector<std::string> plus;
  std::vector<std::string> minus;
};

struct AxiomReport {
  bool additivity = false;
  BettiVector union_betti;
  std::optional<bool> mayer_vietoris_euler;
  std::optional<bool> mayer_vietoris_bounds;
  std::vector<std::string> failures;
  bool ok() const;
};

/// Additivity on x u y, and Mayer-Vietoris consequences on a decomposition of x.
/// Throws MathError(kDecompositionInvalid) for a decomposition that does not
/// cover x.
AxiomReport check_axioms(const GammaCWComplex& x, const GammaCWComplex& y, const CoefficientSystem& a,
                         const std::optional<Decomposition>& decomposition = std::nullopt);

/// Named built-in complexes: "point", "rotation-circle", "reflection-circle",
/// "reflection-circle-subdivided", "torus-z2-rotation".
std::vector<std::string> builtin_complex_names();
GammaCWComplex builtin_complex(const std::string& name);
/// The decomposition used for Mayer-Vietoris checks of the subdivided
/// reflection circle: two half-disks around the fixed points over a free collar.
Decomposition reflection_circle_halves();
/// G/I as a 0-dimensional complex.
GammaCWComplex orbit_complex(const Subgroup& i);

}  // namespace efh
