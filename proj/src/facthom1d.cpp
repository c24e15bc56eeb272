#include "efh/facthom1d.hpp"

#include "efh/error.hpp"

#include <algorithm>

namespace efh {

std::string to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::kTrivial: return "trivial";
    case ActionKind::kRotation: return "rotation";
    case ActionKind::kReflection: return "reflection";
  }
  return "unknown";
}

OrbifoldCircle::OrbifoldCircle(FiniteGroup group, ActionKind kind, std::vector<Stratum> singular)
    : group_(std::move(group)), kind_(kind), singular_(std::move(singular)) {
  const std::size_t n = group_.order();
  switch (kind_) {
    case ActionKind::kTrivial:
      if (n != 1) throw MathError(ErrorCode::kUnsupportedAction, "trivial action needs the trivial group");
      break;
    case ActionKind::kRotation:
      if (n < 2 || !(group_ == FiniteGroup::cyclic(n))) {
        throw MathError(ErrorCode::kUnsupportedAction, "rotation needs a cyclic group Z_n, n >= 2");
      }
      break;
    case ActionKind::kReflection:
      if (n != 2) throw MathError(ErrorCode::kUnsupportedAction, "reflection needs Z_2");
      if (singular_.size() != 2) throw MathError(ErrorCode::kInvalidArgument, "a reflection circle has two singular strata");
      break;
  }
  if (kind_ != ActionKind::kReflection && !singular_.empty()) {
    throw MathError(ErrorCode::kInvalidArgument, "free and trivial circles have no singular strata");
  }
}

OrbifoldCircle OrbifoldCircle::trivial() { return OrbifoldCircle(FiniteGroup::trivial(), ActionKind::kTrivial); }

OrbifoldCircle OrbifoldCircle::rotation(std::size_t n) {
  return OrbifoldCircle(FiniteGroup::cyclic(n), ActionKind::kRotation);
}

OrbifoldCircle OrbifoldCircle::reflection(std::string colour_p, std::string colour_q) {
  return OrbifoldCircle(FiniteGroup::cyclic(2), ActionKind::kReflection,
                        {{"stratum_0", std::move(colour_p)}, {"stratum_1", std::move(colour_q)}});
}

std::vector<std::string> gluing_variants(ActionKind kind) {
  switch (kind) {
    case ActionKind::kReflection: return {"standard", "swapped"};
    case ActionKind::kRotation:
    case ActionKind::kTrivial: return {"standard", "rotated", "reversed"};
  }
  return {};
}

CollarGluing1D gluing(const OrbifoldCircle& o, const std::string& variant) {
  const auto variants = gluing_variants(o.kind());
  if (std::find(variants.begin(), variants.end(), variant) == variants.end()) {
    throw MathError(ErrorCode::kUnsupportedAction,
                    "gluing '" + variant + "' is not available for " + to_string(o.kind()) + " circles");
  }
  CollarGluing1D g;
  g.variant = variant;
  g.kind = o.kind();
  if (o.kind() == ActionKind::kReflection) {
    LocalModel p{"Z2", o.singular_strata()[0].colour, true};
    LocalModel q{"Z2", o.singular_strata()[1].colour, true};
    const bool swapped = variant == "swapped";
    g.plus = {swapped ? q : p};
    g.minus = {swapped ? p : q};
    g.collar = {LocalModel{"e", kDefaultColour, !swapped}};
    return g;
  }
  g.plus = {LocalModel{}};
  g.minus = {LocalModel{}};
  if (variant == "reversed") {
    g.collar = {LocalModel{"e", kDefaultColour, false}, LocalModel{"e", kDefaultColour, true}};
  } else {
    g.collar = {LocalModel{"e", kDefaultColour, true}, LocalModel{"e", kDefaultColour, false}};
  }
  return g;
}

DiskAlgebra1D DiskAlgebra1D::smooth(Algebra a, AlgebraTwist phi) {
  return DiskAlgebra1D{std::move(a), std::move(phi), {}, std::nullopt};
}

Algebra collar_algebra(const CollarGluing1D& g, const DiskAlgebra1D& a) {
  Algebra out = g.collar.front().positive ? a.algebra : opposite(a.algebra);
  for (std::size_t i = 1; i < g.collar.size(); ++i) {
    out = tensor_algebra(out, g.collar[i].positive ? a.algebra : opposite(a.algebra));
  }
  return out;
}

namespace {

const RightModule& singular_module(const DiskAlgebra1D& a, const LocalModel& m) {
  const auto key = std::make_pair(m.isotropy, m.colour);
  if (a.family && std::find(a.family->begin(), a.family->end(), key) == a.family->end()) {
    throw MathError(ErrorCode::kMissingCoefficient,
                    "singularity type " + m.isotropy + " with colour " + m.colour + " is outside the family");
  }
  auto it = a.singular.find(key);
  if (it == a.singular.end()) {
    throw MathError(ErrorCode::kMissingCoefficient,
                    "no module for singularity type " + m.isotropy + " with colour " + m.colour);
  }
  if (!(it->second.algebra() == a.algebra)) {
    throw MathError(ErrorCode::kAlgebraMismatch, "singular module is over another algebra");
  }
  return it->second;
}

bool twist_power_is_identity(const AlgebraTwist& phi, std::size_t n) {
  const Matrix id = Matrix::identity(phi.algebra().dim(), phi.algebra().field());
  Matrix power = id;
  for (std::size_t k = 0; k < n; ++k) power = power * phi.matrix();
  return power == id;
}

void check_smooth_datum(const OrbifoldCircle& o, const DiskAlgebra1D& a) {
  if (!(a.twist.algebra() == a.algebra)) throw MathError(ErrorCode::kAlgebraMismatch, "twist of a different algebra");
  switch (o.kind()) {
    case ActionKind::kTrivial:
      if (!a.twist.is_identity()) throw MathError(ErrorCode::kNotATwist, "the trivial group acts by the identity");
      break;
    case ActionKind::kRotation:
      if (a.twist.kind() != TwistKind::kAutomorphism) {
        throw MathError(ErrorCode::kTwistKindMismatch, "rotation data needs an automorphism");
      }
      if (!twist_power_is_identity(a.twist, o.group().order())) {
        throw MathError(ErrorCode::kNotATwist, "phi^" + std::to_string(o.group().order()) + " != id");
      }
      break;
    case ActionKind::kReflection:
      if (a.twist.kind() != TwistKind::kAntiAutomorphism) {
        throw MathError(ErrorCode::kTwistKindMismatch, "reflection data needs an anti-automorphism");
      }
      if (!twist_power_is_identity(a.twist, 2)) throw MathError(ErrorCode::kNotATwist, "phi^2 != id");
      break;
  }
}

// Bar complex for the free (rotation or trivial) circle. The pieces are A
// with the untwisted and the twisted right action.
ChainComplex free_circle_complex(const CollarGluing1D& g, const DiskAlgebra1D& datum, int cap, bool normalized) {
  Algebra a = datum.algebra;
  AlgebraTwist phi = datum.twist;
  if (normalized) {
    const Matrix p = unit_adapted_basis(a);
    a = change_basis(a, p);
    phi = change_basis(phi, p);
  }
  const Bimodule plain = Bimodule::diagonal(a);
  const Bimodule twisted = twisted_diagonal_bimodule(a, phi);
  if (g.variant == "reversed") {
    return bar_complex({tensor_algebra(opposite(a), a), bimodule_as_right_reversed_env_module(plain),
                        bimodule_as_left_reversed_env_module(twisted), cap, normalized});
  }
  const Algebra env = tensor_algebra(a, opposite(a));
  if (g.variant == "rotated") {
    return bar_complex({env, bimodule_as_right_env_module(twisted), bimodule_as_left_env_module(plain), cap, normalized});
  }
  return bar_complex({env, bimodule_as_right_env_module(plain), bimodule_as_left_env_module(twisted), cap, normalized});
}

// M (x)^L_A N for the reflection circle; N becomes a left module through phi.
ChainComplex reflection_complex(const CollarGluing1D& g, const DiskAlgebra1D& datum, int cap, bool normalized) {
  const RightModule& first = singular_module(datum, g.plus.front());
  const RightModule& second = singular_module(datum, g.minus.front());
  if (g.variant == "swapped") {
    // N (x)^L_{A^op} M with N a right A^op-module and M a left A^op-module.
    return bar_complex({opposite(datum.algebra), left_module_via_anti_twist(first, datum.twist), second, cap, normalized});
  }
  return bar_complex({datum.algebra, first, left_module_via_anti_twist(second, datum.twist), cap, normalized});
}

}  // namespace

ExcisionResult evaluate(const OrbifoldCircle& o, const DiskAlgebra1D& a, int cap, const std::string& variant,
                        bool normalized) {
  check_smooth_datum(o, a);
  ExcisionResult out;
  out.decomposition_used = gluing(o, variant);
  out.complex = o.kind() == ActionKind::kReflection ? reflection_complex(out.decomposition_used, a, cap, normalized)
                                                    : free_circle_complex(out.decomposition_used, a, cap, normalized);
  out.betti = homology(out.complex);
  out.trusted_through = cap - 1;
  return out;
}

ExcisionResult evaluate_disjoint_union(const std::vector<OrbifoldCircle>& parts, const DiskAlgebra1D& a, int cap,
                                       bool normalized) {
  if (parts.empty()) throw MathError(ErrorCode::kInvalidArgument, "empty disjoint union");
  ExcisionResult out = evaluate(parts.front(), a, cap, "standard", normalized);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const ExcisionResult next = evaluate(parts[i], a, cap, "standard", normalized);
    out.complex = tensor_product(out.complex, next.complex, cap);
  }
  out.betti = homology(out.complex);
  out.trusted_through = cap - 1;
  return out;
}

BettiVector evaluate_local_model(const LocalModel& m, const DiskAlgebra1D& a) {
  const std::size_t dim = m.isotropy == "e" ? a.algebra.dim() : singular_module(a, m).dim();
  return BettiVector{0, {dim}, std::nullopt};
}

OracleReport check_excision_against_oracle(const OrbifoldCircle& o, const DiskAlgebra1D& a, int cap, bool normalized) {
  if (o.kind() == ActionKind::kReflection) {
    throw MathError(ErrorCode::kUnsupportedAction, "the Hochschild oracle covers rotation and trivial actions");
  }
  OracleReport report;
  report.excision = evaluate(o, a, cap, "standard", normalized).betti;
  report.oracle = homology(
      hochschild_complex({a.algebra, twisted_diagonal_bimodule(a.algebra, a.twist), cap, normalized}));
  report.agree = report.excision.trusted() == report.oracle.trusted();
  return report;
}

}  // namespace efh
