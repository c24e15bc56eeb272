#pragma once

#include "efh/algebra.hpp"
#include "efh/chain_complex.hpp"
#include "efh/group.hpp"
#include "efh/resolutions.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace efh {

inline const std::string kDefaultColour = "c_star";

enum class ActionKind { kTrivial, kRotation, kReflection };

std::string to_string(ActionKind kind);

/// A singular stratum with its colour.
struct Stratum {
  std::string name;
  std::string colour = kDefaultColour;

  friend bool operator==(const Stratum&, const Stratum&) = default;
};

/// A 1-dimensional global quotient S^1 with a finite group action, as a
/// combinatorial descriptor.
///
/// Reflection actions are by Z_2 and have exactly two singular strata
/// ("stratum_0" and "stratum_1"); rotations by Z_n (n >= 2) and the trivial group have none.
class OrbifoldCircle {
public:
  OrbifoldCircle(FiniteGroup group, ActionKind kind, std::vector<Stratum> singular = {});

  static OrbifoldCircle trivial();
  static OrbifoldCircle rotation(std::size_t n = 2);
  static OrbifoldCircle reflection(std::string colour_p = kDefaultColour,
                                   std::string colour_q = kDefaultColour);

  const FiniteGroup& group() const { return group_; }
  ActionKind kind() const { return kind_; }
  /// "I" for the identity framing, "r" for the reflection representation.
  std::string framing_label() const { return kind_ == ActionKind::kReflection ? "r" : "I"; }
  const std::vector<Stratum>& singular_strata() const { return singular_; }
  /// Singular type of every stratum (the isotropy group name, "Z2").
  static std::string singular_type() { return "Z2"; }

private:
  FiniteGroup group_;
  ActionKind kind_;
  std::vector<Stratum> singular_;
};

/// A local model [D_I / G], possibly traversed against the orientation.
struct LocalModel {
  std::string isotropy = "e";  // "e" for free arcs, "Z2" for singular half-disks
  std::string colour = kDefaultColour;
  bool positive = true;

  friend bool operator==(const LocalModel&, const LocalModel&) = default;
};

/// A collar-gluing M = M_+ u_{M_0} M_-.
///
/// Variants: "standard" for every action kind; for rotations also "rotated"
/// (the twist sits on the left piece) and "reversed" (the collar components
/// taken in the opposite order); for reflections also "swapped" (pieces
/// exchanged, collar traversed negatively).
struct CollarGluing1D {
  std::string variant = "standard";
  ActionKind kind = ActionKind::kRotation;
  std::vector<LocalModel> plus;
  std::vector<LocalModel> minus;
  std::vector<LocalModel> collar;
};

std::vector<std::string> gluing_variants(ActionKind kind);

/// Throws MathError(kUnsupportedAction) for unknown variants.
CollarGluing1D gluing(const OrbifoldCircle& o, const std::string& variant);
inline CollarGluing1D standard_gluing(const OrbifoldCircle& o) { return gluing(o, "standard"); }

/// Coefficient data: the smooth datum (A, phi) and pointed right modules for
/// singular strata keyed by (singular type, colour).
///
/// `family`, when set, restricts which (type, colour) pairs are admissible;
/// evaluating an orbifold outside it throws MathError(kMissingCoefficient).
struct DiskAlgebra1D {
  Algebra algebra;
  AlgebraTwist twist;
  std::map<std::pair<std::string, std::string>, RightModule> singular;
  std::optional<std::vector<std::pair<std::string, std::string>>> family;

  /// (A, phi) with no singular data.
  static DiskAlgebra1D smooth(Algebra a, AlgebraTwist phi);
};

struct ExcisionResult {
  BettiVector betti;
  CollarGluing1D decomposition_used;
  int trusted_through = 0;
  ChainComplex complex;
};

/// A (x) A^op per positively oriented collar component, A^op (x) A for the
/// reversed order; A for the reflection collar, A^op when swapped.
Algebra collar_algebra(const CollarGluing1D& g, const DiskAlgebra1D& a);

/// Bar complex of the two piece modules over the collar algebra, homology
/// trusted through cap - 1.
ExcisionResult evaluate(const OrbifoldCircle& o, const DiskAlgebra1D& a, int cap = kDefaultDegreeCap,
                        const std::string& variant = "standard", bool normalized = true);

/// Disjoint union: the graded tensor product of the factor complexes.
ExcisionResult evaluate_disjoint_union(const std::vector<OrbifoldCircle>& parts, const DiskAlgebra1D& a,
                                       int cap = kDefaultDegreeCap, bool normalized = true);

/// The value on a single local model: A for a free arc, the module for a
/// singular half-disk, concentrated in degree 0.
BettiVector evaluate_local_model(const LocalModel& m, const DiskAlgebra1D& a);

struct OracleReport {
  BettiVector excision;
  BettiVector oracle;
  bool agree = false;
};

/// Compares evaluate() with the Hochschild complex of the twisted diagonal
/// bimodule, entrywise in trusted degrees. Rotation and trivial actions only.
OracleReport check_excision_against_oracle(const OrbifoldCircle& o, const DiskAlgebra1D& a,
                                           int cap = kDefaultDegreeCap, bool normalized = true);

}  // namespace efh
