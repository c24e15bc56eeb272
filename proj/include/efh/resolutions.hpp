#pragma once

#include "efh/algebra.hpp"
#include "efh/chain_complex.hpp"

#include <vector>

namespace efh {

inline constexpr int kDefaultDegreeCap = 4;

/// How differentials are assembled. Both modes produce identical matrices;
/// the serial one is kept as the reference.
enum class Assembly { kSerial, kParallel };

/// Chains C_n = M (x) A^(x)n for n = 0..degree_cap, or M (x) (A/K.1)^(x)n
/// when normalized. The top degree is marked untrusted.
struct HochschildComplexSpec {
  Algebra algebra;
  Bimodule coefficients;
  int degree_cap = kDefaultDegreeCap;
  bool normalized = true;
};

/// d(m a_1 ... a_n) = m a_1 (x) a_2 ... + sum_i (-1)^i m ... a_i a_{i+1} ...
///                    + (-1)^n a_n m (x) a_1 ... a_{n-1}
ChainComplex hochschild_complex(const HochschildComplexSpec& spec,
                                Assembly assembly = Assembly::kParallel);

/// B_n = M (x) A^(x)n (x) N. `left` is a right A-module; `right` is a left
/// A-module given as a right module over opposite(algebra).
struct BarComplexSpec {
  Algebra algebra;
  RightModule left;
  RightModule right;
  int degree_cap = kDefaultDegreeCap;
  bool normalized = true;
};

/// First face moves a_1 into M, last face moves a_n into N, middle faces
/// multiply neighbours; signs alternate.
ChainComplex bar_complex(const BarComplexSpec& spec, Assembly assembly = Assembly::kParallel);

enum class TraceConvention {
  kPhiLeft,   ///< f(ab) = f(phi(b) a)
  kPhiRight,  ///< f(ab) = f(b phi(a))
};

/// Basis of the twisted traces, each functional as the row vector
/// (f(e_0), ..., f(e_{d-1})). Requires an automorphism with phi^2 = id;
/// throws MathError(kTwistKindMismatch) otherwise.
std::vector<Vector> twisted_traces(const Algebra& a, const AlgebraTwist& phi,
                                   TraceConvention convention = TraceConvention::kPhiLeft);

/// An invertible p whose column u is the unit, so that change_basis(a, p) has
/// the unit as basis vector u. Identity when the unit is already a basis vector.
Matrix unit_adapted_basis(const Algebra& a, std::size_t* unit_index = nullptr);

}  // namespace efh
