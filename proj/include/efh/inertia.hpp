#pragma once

#include "efh/bredon.hpp"

#include <vector>

namespace efh {

/// One conjugacy class (g) of the inertia orbifold: X^g with its C(g)-action.
struct InertiaPiece {
  Element class_representative = 0;
  std::vector<Element> conjugacy_class;
  ComplexGroupAction centralizer_action;
  /// H(X^g)^{C(g)}.
  BettiVector betti;
};

/// Cellular chains of the fixed set X^g with the action of C(g). A cell
/// (sigma, xI) is fixed when x^-1 g x lies in I. Throws
/// MathError(kOrientationReversal) when g flips a cell it fixes.
ComplexGroupAction fixed_subcomplex(const GammaCWComplex& x, Element g, Field field = Field::rationals());

/// Pieces in `conjugacy_classes` order; the identity class comes first.
std::vector<InertiaPiece> inertia_pieces(const GammaCWComplex& x, Field field = Field::rationals());

/// Sum over conjugacy classes (g) of dim H_n(X^g)^{C(g)}. Needs |G|
/// invertible in the field.
BettiVector chen_ruan_betti(const GammaCWComplex& x, Field field = Field::rationals());

}  // namespace efh
