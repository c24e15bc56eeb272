#include "efh/inertia.hpp"

#include "efh/error.hpp"

#include <algorithm>

namespace efh {

ComplexGroupAction fixed_subcomplex(const GammaCWComplex& x, Element g, Field field) {
  const FiniteGroup& grp = x.group();
  if (g >= grp.order()) throw MathError(ErrorCode::kInvalidArgument, "group element out of range");
  const ComplexGroupAction full = x.expanded_action(field);
  const ChainComplex& c = full.complex();
  const Subgroup cent = centralizer(grp, g);
  const int top = std::max(x.dimension(), 0);

  std::vector<std::vector<std::size_t>> fixed(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) {
    const auto cells = x.expanded_cells(n);
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const CellOrbit& orbit = x.cells()[cells[k].orbit];
      const Element r = cells[k].representative;
      const Element stab = grp.mul(grp.mul(grp.inv(r), g), r);
      if (!orbit.isotropy.contains(stab)) continue;
      if (std::find(orbit.reversed_by.begin(), orbit.reversed_by.end(), stab) != orbit.reversed_by.end()) {
        throw MathError(ErrorCode::kOrientationReversal,
                        grp.name(g) + " reverses the fixed cell " + grp.name(r) + "." + orbit.id);
      }
      fixed[static_cast<std::size_t>(n)].push_back(k);
    }
  }

  std::vector<std::size_t> dims;
  for (const auto& f : fixed) dims.push_back(f.size());
  std::vector<Matrix> diffs;
  for (int n = 1; n <= top; ++n) {
    const auto& cols = fixed[static_cast<std::size_t>(n)];
    const auto& rows = fixed[static_cast<std::size_t>(n - 1)];
    const Matrix& d = c.differential(n);
    // The boundary of a fixed cell is fixed.
    std::vector<std::size_t> every(d.rows());
    for (std::size_t i = 0; i < every.size(); ++i) every[i] = i;
    if (d.select(every, cols).nnz() != d.select(rows, cols).nnz()) {
      throw MathError(ErrorCode::kInvalidComplex, "fixed cells are not a subcomplex");
    }
    diffs.push_back(d.select(rows, cols));
  }
  ChainComplex sub(field, 0, dims, std::move(diffs));

  std::vector<std::vector<Matrix>> mats(grp.order());
  for (Element h : cent.elements()) {
    for (int n = 0; n <= top; ++n) {
      const auto& f = fixed[static_cast<std::size_t>(n)];
      mats[h].push_back(full.matrix(h, n).select(f, f));
    }
  }
  return ComplexGroupAction(std::move(sub), cent, std::move(mats));
}

std::vector<InertiaPiece> inertia_pieces(const GammaCWComplex& x, Field field) {
  std::vector<InertiaPiece> out;
  for (const auto& cls : conjugacy_classes(x.group())) {
    const Element g = *std::min_element(cls.begin(), cls.end());
    ComplexGroupAction a = fixed_subcomplex(x, g, field);
    BettiVector b = homology(invariants_subcomplex(a));
    out.push_back({g, cls, std::move(a), std::move(b)});
  }
  std::stable_partition(out.begin(), out.end(),
                        [&](const InertiaPiece& p) { return p.class_representative == x.group().identity(); });
  return out;
}

BettiVector chen_ruan_betti(const GammaCWComplex& x, Field field) {
  BettiVector total;
  total.betti.assign(static_cast<std::size_t>(std::max(x.dimension(), 0)) + 1, 0);
  for (const auto& p : inertia_pieces(x, field)) total = total + p.betti;
  return total;
}

}  // namespace efh
