#include "efh/bredon.hpp"

#include "efh/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace efh {

// ---- orbit category -------------------------------------------------------------

OrbitCategory::OrbitCategory(FiniteGroup g, std::optional<std::vector<Subgroup>> family)
    : group_(std::move(g)), objects_(family ? std::move(*family) : all_subgroups(group_)) {
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (!(objects_[i].parent() == group_)) throw MathError(ErrorCode::kNotASubgroup, "family member of another group");
    for (std::size_t j = 0; j < i; ++j) {
      if (objects_[i] == objects_[j]) throw MathError(ErrorCode::kInvalidArgument, "family lists a subgroup twice");
    }
  }
  const std::size_t n = objects_.size();
  homs_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::set<Element> reps;
      for (Element x = 0; x < group_.order(); ++x) {
        if (is_morphism(i, j, x)) reps.insert(canonical(j, x));
      }
      homs_[i * n + j].assign(reps.begin(), reps.end());
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (Element f : hom(i, j)) {
        if (compose(j, identity(i), f) != f || compose(j, f, identity(j)) != f) {
          throw MathError(ErrorCode::kNotAFunctor, "orbit category identities fail");
        }
        for (std::size_t k = 0; k < n; ++k) {
          for (Element h : hom(j, k)) {
            const auto& target = hom(i, k);
            if (!std::binary_search(target.begin(), target.end(), compose(k, f, h))) {
              throw MathError(ErrorCode::kNotAFunctor, "orbit category composition leaves the hom-set");
            }
          }
        }
      }
    }
  }
}

std::optional<std::size_t> OrbitCategory::find(const Subgroup& h) const {
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (objects_[i] == h) return i;
  }
  return std::nullopt;
}

Element OrbitCategory::canonical(std::size_t j, Element g) const {
  Element best = group_.mul(g, objects_[j].elements().front());
  for (Element x : objects_[j].elements()) best = std::min(best, group_.mul(g, x));
  return best;
}

bool OrbitCategory::is_morphism(std::size_t i, std::size_t j, Element g) const {
  const Element gi = group_.inv(g);
  for (Element x : objects_[i].elements()) {
    if (!objects_[j].contains(group_.conj(gi, x))) return false;
  }
  return true;
}

// ---- coefficient systems ----------------------------------------------------------

CoefficientSystem::CoefficientSystem(OrbitCategory category, Variance variance, std::vector<std::size_t> dims,
                                     std::map<Key, Matrix> maps, Field field, std::string label)
    : category_(std::move(category)), variance_(variance), dims_(std::move(dims)), maps_(std::move(maps)),
      field_(field), label_(std::move(label)) {
  const std::size_t n = category_.size();
  if (dims_.size() != n) throw MathError(ErrorCode::kNotAFunctor, "one dimension per object");
  std::size_t expected = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (Element g : category_.hom(i, j)) {
        ++expected;
        auto it = maps_.find({i, j, g});
        if (it == maps_.end()) throw MathError(ErrorCode::kNotAFunctor, "a morphism has no matrix");
        const auto [rows, cols] = variance_ == Variance::kCovariant ? std::pair{dims_[j], dims_[i]}
                                                                    : std::pair{dims_[i], dims_[j]};
        if (it->second.rows() != rows || it->second.cols() != cols) {
          throw MathError(ErrorCode::kNotAFunctor, "matrix shape does not match the object dimensions");
        }
        if (!(it->second.field() == field_)) throw MathError(ErrorCode::kFieldMismatch, "coefficient system");
      }
    }
  }
  if (maps_.size() != expected) throw MathError(ErrorCode::kNotAFunctor, "matrices given for non-morphisms");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(map(i, i, category_.identity(i)) == Matrix::identity(dims_[i], field_))) {
      throw MathError(ErrorCode::kNotAFunctor, "an identity morphism is not sent to the identity");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (Element g : category_.hom(i, j)) {
        for (std::size_t k = 0; k < n; ++k) {
          for (Element h : category_.hom(j, k)) {
            const Matrix& composite = map(i, k, category_.compose(k, g, h));
            const Matrix product = variance_ == Variance::kCovariant ? map(j, k, h) * map(i, j, g)
                                                                     : map(i, j, g) * map(j, k, h);
            if (!(composite == product)) {
              throw MathError(ErrorCode::kNotAFunctor, "A(phi_h o phi_g) differs from the composite of the images");
            }
          }
        }
      }
    }
  }
}

const Matrix& CoefficientSystem::map(std::size_t i, std::size_t j, Element g) const {
  if (!category_.is_morphism(i, j, g)) throw MathError(ErrorCode::kNotAFunctor, "not a morphism of the orbit category");
  return maps_.at({i, j, category_.canonical(j, g)});
}

CoefficientSystem constant_system(const OrbitCategory& oc, std::size_t dim, Field field, Variance variance) {
  std::map<CoefficientSystem::Key, Matrix> maps;
  for (std::size_t i = 0; i < oc.size(); ++i) {
    for (std::size_t j = 0; j < oc.size(); ++j) {
      for (Element g : oc.hom(i, j)) maps.emplace(CoefficientSystem::Key{i, j, g}, Matrix::identity(dim, field));
    }
  }
  return CoefficientSystem(oc, variance, std::vector<std::size_t>(oc.size(), dim), std::move(maps), field,
                           dim == 0 ? "zero" : dim == 1 ? "constant" : "constant" + std::to_string(dim));
}

CoefficientSystem zero_system(const OrbitCategory& oc, Field field) { return constant_system(oc, 0, field); }

namespace {

Matrix columns_matrix(std::size_t rows, const std::vector<Vector>& cols, const Field& field) {
  return Matrix::from_column_vectors(rows, cols, field);
}

// Basis of the vectors fixed by every element of h, as matrix columns.
Matrix fixed_basis(const Subgroup& h, const std::vector<Matrix>& rho, std::size_t d, const Field& field) {
  std::vector<std::vector<Rational>> rows;
  const Matrix id = Matrix::identity(d, field);
  for (Element x : h.elements()) {
    const auto block = (rho[x] - id).to_dense_rows();
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return columns_matrix(d, kernel_basis(Matrix::from_rows(rows, field)), field);
}

// Coordinates of the columns of `b` in the basis `basis` (which spans them).
Matrix coordinates(const Matrix& basis, const Matrix& b) {
  if (basis.cols() == 0 || b.cols() == 0) return Matrix(basis.cols(), b.cols(), b.field());
  return solve_matrix(basis, b);
}

}  // namespace

CoefficientSystem representation_system(const OrbitCategory& oc, const std::vector<Matrix>& rho, Variance variance,
                                         std::string label) {
  const FiniteGroup& g = oc.group();
  if (rho.size() != g.order() || rho.empty()) throw MathError(ErrorCode::kNotAnAction, "one matrix per group element");
  const Field field = rho.front().field();
  const std::size_t d = rho.front().rows();
  for (Element x = 0; x < g.order(); ++x) {
    if (rho[x].rows() != d || rho[x].cols() != d) throw MathError(ErrorCode::kNotAnAction, "representation shape");
    for (Element y = 0; y < g.order(); ++y) {
      if (!(rho[g.mul(x, y)] == rho[x] * rho[y])) throw MathError(ErrorCode::kNotAnAction, "rho(xy) != rho(x) rho(y)");
    }
  }
  if (!(rho[g.identity()] == Matrix::identity(d, field))) throw MathError(ErrorCode::kNotAnAction, "rho(e) != 1");

  std::vector<Matrix> basis;
  std::vector<std::size_t> dims;
  for (const auto& h : oc.objects()) {
    basis.push_back(fixed_basis(h, rho, d, field));
    dims.push_back(basis.back().cols());
  }
  std::vector<Matrix> projector;
  if (variance == Variance::kCovariant) {
    for (const auto& h : oc.objects()) {
      if (field.is_prime() && h.order() % field.characteristic() == 0) {
        throw MathError(ErrorCode::kCharacteristicDividesOrder,
                        "coinvariants through the averaging projector need |I| invertible");
      }
      Matrix p(d, d, field);
      for (Element x : h.elements()) p = p + rho[x];
      projector.push_back(p.scaled(field.inv(field.element(Rational(static_cast<long>(h.order()))))));
    }
  }
  std::map<CoefficientSystem::Key, Matrix> maps;
  for (std::size_t i = 0; i < oc.size(); ++i) {
    for (std::size_t j = 0; j < oc.size(); ++j) {
      for (Element x : oc.hom(i, j)) {
        Matrix m = variance == Variance::kCovariant
                       ? coordinates(basis[j], projector[j] * rho[g.inv(x)] * basis[i])
                       : coordinates(basis[i], rho[x] * basis[j]);
        maps.emplace(CoefficientSystem::Key{i, j, x}, std::move(m));
      }
    }
  }
  return CoefficientSystem(oc, variance, std::move(dims), std::move(maps), field, std::move(label));
}

CoefficientSystem regular_system(const OrbitCategory& oc, Field field, Variance variance) {
  const FiniteGroup& g = oc.group();
  std::vector<Matrix> rho;
  for (Element x = 0; x < g.order(); ++x) {
    Matrix m(g.order(), g.order(), field);
    for (Element y = 0; y < g.order(); ++y) m.set(g.mul(x, y), y, Rational(1));
    rho.push_back(std::move(m));
  }
  return representation_system(oc, rho, variance, "regular");
}

std::vector<std::string> builtin_system_names() { return {"constant", "constant2", "zero", "regular"}; }

CoefficientSystem builtin_system(const std::string& name, const OrbitCategory& oc, Field field, Variance variance) {
  if (name == "constant") return constant_system(oc, 1, field, variance);
  if (name == "constant2") return constant_system(oc, 2, field, variance);
  if (name == "zero") return constant_system(oc, 0, field, variance);
  if (name == "regular") return regular_system(oc, field, variance);
  throw MathError(ErrorCode::kInvalidArgument, "unknown coefficient system '" + name + "'");
}

// ---- G-CW complexes ----------------------------------------------------------------

namespace {

bool reverses(const CellOrbit& c, Element x) {
  return std::find(c.reversed_by.begin(), c.reversed_by.end(), x) != c.reversed_by.end();
}

}  // namespace

GammaCWComplex::GammaCWComplex(FiniteGroup g, std::vector<CellOrbit> cells, std::vector<BoundaryTerm> boundary)
    : group_(std::move(g)), cells_(std::move(cells)), boundary_(std::move(boundary)) {
  std::set<std::string> ids;
  for (const auto& c : cells_) {
    if (!ids.insert(c.id).second) throw MathError(ErrorCode::kInvalidComplex, "duplicate cell id '" + c.id + "'");
    if (c.dim < 0) throw MathError(ErrorCode::kInvalidComplex, "negative cell dimension");
    if (!(c.isotropy.parent() == group_)) {
      throw MathError(ErrorCode::kInvalidComplex, "isotropy of '" + c.id + "' is not a subgroup of the acting group");
    }
    for (Element x : c.reversed_by) {
      if (!c.isotropy.contains(x)) {
        throw MathError(ErrorCode::kInvalidComplex, "'" + c.id + "' is reversed by an element outside its isotropy");
      }
    }
    for (Element a : c.isotropy.elements()) {
      for (Element b : c.isotropy.elements()) {
        if (reverses(c, group_.mul(a, b)) != (reverses(c, a) != reverses(c, b))) {
          throw MathError(ErrorCode::kInvalidComplex, "orientation character of '" + c.id + "' is not a homomorphism");
        }
      }
    }
    dimension_ = std::max(dimension_, c.dim);
  }
  for (const auto& t : boundary_) {
    const auto from = find(t.from);
    const auto to = find(t.to);
    if (!from || !to) throw MathError(ErrorCode::kInvalidComplex, "boundary refers to an unknown cell");
    if (cells_[*to].dim != cells_[*from].dim - 1) {
      throw MathError(ErrorCode::kInvalidComplex, "boundary of '" + t.from + "' must lower the dimension by one");
    }
    if (t.coset >= group_.order()) throw MathError(ErrorCode::kInvalidComplex, "coset element out of range");
    if (!cells_[*from].reversed_by.empty()) continue;
    const Element gi = group_.inv(t.coset);
    for (Element x : cells_[*from].isotropy.elements()) {
      if (!cells_[*to].isotropy.contains(group_.conj(gi, x))) {
        throw MathError(ErrorCode::kInvalidComplex, "boundary term " + t.from + " -> " + group_.name(t.coset) + "." +
                                                        t.to + " is not fixed by the isotropy of " + t.from);
      }
    }
  }
  // A flipped cell only needs i . boundary = sign(i) boundary as a chain.
  for (const auto& c : cells_) {
    if (c.reversed_by.empty()) continue;
    auto translate = [&](Element x) {
      std::map<std::pair<std::string, std::size_t>, Rational> out;
      for (const auto& t : boundary_) {
        if (t.from != c.id) continue;
        const CellOrbit& to = cells_[*find(t.to)];
        const Element y = group_.mul(x, t.coset);
        const std::size_t k = coset_index(group_, to.isotropy, y);
        const Element rep = left_cosets(group_, to.isotropy)[k].front();
        const Rational v = reverses(to, group_.mul(group_.inv(rep), y)) ? -t.coeff : t.coeff;
        out[{to.id, k}] += v;
      }
      std::erase_if(out, [](const auto& kv) { return kv.second == Rational(0); });
      return out;
    };
    const auto base = translate(group_.identity());
    for (Element i : c.isotropy.elements()) {
      auto expected = base;
      if (reverses(c, i)) {
        for (auto& [k, v] : expected) v = -v;
      }
      if (translate(i) != expected) {
        throw MathError(ErrorCode::kInvalidComplex, "boundary of '" + c.id + "' is not compatible with its isotropy");
      }
    }
  }
  try {
    (void)expanded_complex();
  } catch (const MathError& e) {
    if (e.code() != ErrorCode::kNotAChainComplex) throw;
    throw MathError(ErrorCode::kInvalidComplex, std::string("expanded cellular complex: ") + e.what());
  }
}

std::optional<std::size_t> GammaCWComplex::find(const std::string& id) const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> GammaCWComplex::orbits_in_degree(int n) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].dim == n) out.push_back(i);
  }
  return out;
}

std::vector<ExpandedCell> GammaCWComplex::expanded_cells(int n) const {
  std::vector<ExpandedCell> out;
  for (std::size_t o : orbits_in_degree(n)) {
    const auto cosets = left_cosets(group_, cells_[o].isotropy);
    for (std::size_t c = 0; c < cosets.size(); ++c) out.push_back({o, c, cosets[c].front()});
  }
  return out;
}

bool GammaCWComplex::has_orientation_reversal() const {
  return std::any_of(cells_.begin(), cells_.end(), [](const CellOrbit& c) { return !c.reversed_by.empty(); });
}

namespace {

// Position of orbit cells within the expanded degree, and the expanded cell
// for the translate x . base, with its orientation sign.
struct ExpandedIndex {
  std::vector<std::size_t> offset;  // per orbit
  std::vector<std::vector<std::vector<Element>>> cosets;

  ExpandedIndex(const GammaCWComplex& x) : offset(x.cells().size()), cosets(x.cells().size()) {
    for (int n = 0; n <= x.dimension(); ++n) {
      std::size_t off = 0;
      for (std::size_t o : x.orbits_in_degree(n)) {
        offset[o] = off;
        cosets[o] = left_cosets(x.group(), x.cells()[o].isotropy);
        off += cosets[o].size();
      }
    }
  }

  std::pair<std::size_t, bool> locate(const GammaCWComplex& x, std::size_t orbit, Element g) const {
    const FiniteGroup& grp = x.group();
    const std::size_t c = coset_index(grp, x.cells()[orbit].isotropy, g);
    const Element rep = cosets[orbit][c].front();
    const Element i = grp.mul(grp.inv(rep), g);
    return {offset[orbit] + c, reverses(x.cells()[orbit], i)};
  }
};

}  // namespace

std::vector<Matrix> GammaCWComplex::expanded_boundaries(Field field) const {
  const ExpandedIndex index(*this);
  std::vector<Matrix> diffs;
  for (int n = 1; n <= dimension_; ++n) {
    const auto cols = expanded_cells(n);
    const std::size_t rows = expanded_cells(n - 1).size();
    std::vector<SparseColumn> columns(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto& cell = cols[c];
      for (const auto& t : boundary_) {
        if (t.from != cells_[cell.orbit].id) continue;
        const std::size_t to = *find(t.to);
        const auto [row, flipped] = index.locate(*this, to, group_.mul(cell.representative, t.coset));
        columns[c].push_back({row, flipped ? field.neg(field.element(t.coeff)) : field.element(t.coeff)});
      }
    }
    diffs.push_back(Matrix::from_columns(rows, std::move(columns), field));
  }
  return diffs;
}

ChainComplex GammaCWComplex::expanded_complex(Field field) const {
  if (dimension_ < 0) return ChainComplex::zero(field);
  std::vector<std::size_t> dims;
  for (int n = 0; n <= dimension_; ++n) dims.push_back(expanded_cells(n).size());
  return ChainComplex(field, 0, std::move(dims), expanded_boundaries(field));
}

ComplexGroupAction GammaCWComplex::expanded_action(Field field) const {
  const ExpandedIndex index(*this);
  std::vector<std::vector<Matrix>> mats(group_.order());
  for (Element h = 0; h < group_.order(); ++h) {
    for (int n = 0; n <= std::max(dimension_, 0); ++n) {
      const auto cells = expanded_cells(n);
      Matrix m(cells.size(), cells.size(), field);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto [row, flipped] = index.locate(*this, cells[c].orbit, group_.mul(h, cells[c].representative));
        m.set(row, c, flipped ? field.neg(Rational(1)) : Rational(1));
      }
      mats[h].push_back(std::move(m));
    }
  }
  return ComplexGroupAction(expanded_complex(field), group_, std::move(mats));
}

GammaCWComplex disjoint_union(const GammaCWComplex& a, const GammaCWComplex& b) {
  if (!(a.group() == b.group())) throw MathError(ErrorCode::kInvalidArgument, "disjoint union over different groups");
  std::vector<CellOrbit> cells;
  std::vector<BoundaryTerm> boundary;
  for (const auto& [x, prefix] : {std::pair{&a, "L/"}, std::pair{&b, "R/"}}) {
    for (CellOrbit c : x->cells()) {
      c.id = prefix + c.id;
      cells.push_back(std::move(c));
    }
    for (BoundaryTerm t : x->boundary()) {
      t.from = prefix + t.from;
      t.to = prefix + t.to;
      boundary.push_back(std::move(t));
    }
  }
  return GammaCWComplex(a.group(), std::move(cells), std::move(boundary));
}

GammaCWComplex subcomplex(const GammaCWComplex& x, const std::vector<std::string>& ids) {
  std::set<std::string> keep(ids.begin(), ids.end());
  for (const auto& id : keep) {
    if (!x.find(id)) throw MathError(ErrorCode::kDecompositionInvalid, "unknown cell '" + id + "'");
  }
  std::vector<CellOrbit> cells;
  for (const auto& c : x.cells()) {
    if (keep.count(c.id)) cells.push_back(c);
  }
  std::vector<BoundaryTerm> boundary;
  for (const auto& t : x.boundary()) {
    if (!keep.count(t.from)) continue;
    if (!keep.count(t.to)) {
      throw MathError(ErrorCode::kDecompositionInvalid, "'" + t.from + "' is kept but its face '" + t.to + "' is not");
    }
    boundary.push_back(t);
  }
  return GammaCWComplex(x.group(), std::move(cells), std::move(boundary));
}

// ---- Bredon chains ---------------------------------------------------------------

namespace {

std::vector<std::size_t> objects_of_cells(const GammaCWComplex& x, const CoefficientSystem& a) {
  if (!(a.category().group() == x.group())) {
    throw MathError(ErrorCode::kInvalidArgument, "coefficient system over a different group");
  }
  std::vector<std::size_t> out;
  for (const auto& c : x.cells()) {
    const auto obj = a.category().find(c.isotropy);
    if (!obj) throw MathError(ErrorCode::kIsotropyNotCovered, "isotropy of '" + c.id + "' is not in the orbit category");
    if (!c.reversed_by.empty()) {
      throw MathError(ErrorCode::kOrientationReversal,
                      "'" + c.id + "' is reversed by its isotropy; subdivide it so stabilizers fix cells pointwise");
    }
    out.push_back(*obj);
  }
  return out;
}

struct BlockLayout {
  std::vector<std::size_t> offset;  // per orbit, within its degree
  std::vector<std::size_t> dims;    // per degree
};

BlockLayout layout(const GammaCWComplex& x, const CoefficientSystem& a, const std::vector<std::size_t>& obj) {
  BlockLayout l;
  l.offset.resize(x.cells().size());
  for (int n = 0; n <= x.dimension(); ++n) {
    std::size_t off = 0;
    for (std::size_t o : x.orbits_in_degree(n)) {
      l.offset[o] = off;
      off += a.dim(obj[o]);
    }
    l.dims.push_back(off);
  }
  return l;
}

// Block sum of coeff * A(phi_g) for the terms from degree `n` orbits; rows
// index the codomain orbits, columns the domain orbits.
Matrix assemble(const GammaCWComplex& x, const CoefficientSystem& a, const std::vector<std::size_t>& obj,
                const BlockLayout& l, int n, bool cochain) {
  const Field& field = a.field();
  const std::size_t n_rows = cochain ? l.dims[static_cast<std::size_t>(n)] : l.dims[static_cast<std::size_t>(n - 1)];
  const std::size_t n_cols = cochain ? l.dims[static_cast<std::size_t>(n - 1)] : l.dims[static_cast<std::size_t>(n)];
  std::vector<SparseColumn> columns(n_cols);
  for (const auto& t : x.boundary()) {
    const std::size_t from = *x.find(t.from);
    if (x.cells()[from].dim != n) continue;
    const std::size_t to = *x.find(t.to);
    const Matrix& m = a.map(obj[from], obj[to], t.coset);
    const Rational c = field.element(t.coeff);
    const std::size_t row_off = cochain ? l.offset[from] : l.offset[to];
    const std::size_t col_off = cochain ? l.offset[to] : l.offset[from];
    for (std::size_t j = 0; j < m.cols(); ++j) {
      for (const auto& e : m.column(j)) columns[col_off + j].push_back({row_off + e.row, field.mul(c, e.value)});
    }
  }
  return Matrix::from_columns(n_rows, std::move(columns), field);
}

}  // namespace

ChainComplex bredon_complex(const GammaCWComplex& x, const CoefficientSystem& a) {
  if (a.variance() != Variance::kCovariant) {
    throw MathError(ErrorCode::kInvalidArgument, "Bredon chains need a covariant coefficient system");
  }
  const auto obj = objects_of_cells(x, a);
  if (x.dimension() < 0) return ChainComplex::zero(a.field());
  const BlockLayout l = layout(x, a, obj);
  std::vector<Matrix> diffs;
  for (int n = 1; n <= x.dimension(); ++n) diffs.push_back(assemble(x, a, obj, l, n, false));
  return ChainComplex(a.field(), 0, l.dims, std::move(diffs));
}

ChainComplex bredon_cochain_complex(const GammaCWComplex& x, const CoefficientSystem& a) {
  if (a.variance() != Variance::kContravariant) {
    throw MathError(ErrorCode::kInvalidArgument, "Bredon cochains need a contravariant coefficient system");
  }
  const auto obj = objects_of_cells(x, a);
  if (x.dimension() < 0) return ChainComplex::zero(a.field());
  const BlockLayout l = layout(x, a, obj);
  const int top = x.dimension();
  std::vector<std::size_t> dims(l.dims.rbegin(), l.dims.rend());
  std::vector<Matrix> diffs;
  // d_k for k = -top + 1 .. 0 is delta^{-k} : C^{-k} -> C^{-k+1}.
  for (int k = -top + 1; k <= 0; ++k) diffs.push_back(assemble(x, a, obj, l, -k + 1, true));
  return ChainComplex(a.field(), -top, std::move(dims), std::move(diffs));
}

BredonResult bredon_homology(const GammaCWComplex& x, const CoefficientSystem& a) {
  BredonResult out;
  out.coefficient_system_id = a.label();
  if (a.variance() == Variance::kCovariant) {
    out.betti = homology(bredon_complex(x, a));
    return out;
  }
  const BettiVector raw = homology(bredon_cochain_complex(x, a));
  out.betti.min_degree = 0;
  out.betti.betti.assign(raw.betti.rbegin(), raw.betti.rend());
  return out;
}

bool AxiomReport::ok() const {
  return additivity && mayer_vietoris_euler.value_or(true) && mayer_vietoris_bounds.value_or(true);
}

AxiomReport check_axioms(const GammaCWComplex& x, const GammaCWComplex& y, const CoefficientSystem& a,
                         const std::optional<Decomposition>& decomposition) {
  AxiomReport r;
  const BettiVector hx = bredon_homology(x, a).betti;
  const BettiVector hy = bredon_homology(y, a).betti;
  r.union_betti = bredon_homology(disjoint_union(x, y), a).betti;
  const BettiVector sum = hx + hy;
  const int lo = std::min(sum.min_degree, r.union_betti.min_degree);
  const int hi = std::max(sum.max_degree(), r.union_betti.max_degree());
  r.additivity = true;
  for (int n = lo; n <= hi; ++n) r.additivity = r.additivity && sum.at(n) == r.union_betti.at(n);
  if (!r.additivity) r.failures.push_back("additivity: H(X u Y) != H(X) + H(Y)");

  if (decomposition) {
    std::set<std::string> plus(decomposition->plus.begin(), decomposition->plus.end());
    std::set<std::string> minus(decomposition->minus.begin(), decomposition->minus.end());
    for (const auto& c : x.cells()) {
      if (!plus.count(c.id) && !minus.count(c.id)) {
        throw MathError(ErrorCode::kDecompositionInvalid, "cell '" + c.id + "' is in neither piece");
      }
    }
    std::vector<std::string> both;
    std::set_intersection(plus.begin(), plus.end(), minus.begin(), minus.end(), std::back_inserter(both));
    const BettiVector hp = bredon_homology(subcomplex(x, decomposition->plus), a).betti;
    const BettiVector hm = bredon_homology(subcomplex(x, decomposition->minus), a).betti;
    const BettiVector h0 = bredon_homology(subcomplex(x, both), a).betti;
    r.mayer_vietoris_euler =
        hx.euler_characteristic() == hp.euler_characteristic() + hm.euler_characteristic() - h0.euler_characteristic();
    if (!*r.mayer_vietoris_euler) r.failures.push_back("Mayer-Vietoris: chi(X) != chi(X+) + chi(X-) - chi(X0)");
    bool bounds = true;
    for (int n = 0; n <= x.dimension(); ++n) {
      if (hx.at(n) > hp.at(n) + hm.at(n) + h0.at(n - 1)) {
        bounds = false;
        r.failures.push_back("Mayer-Vietoris: b_" + std::to_string(n) + "(X) exceeds its exactness bound");
      }
    }
    r.mayer_vietoris_bounds = bounds;
  }
  return r;
}

// ---- built-in complexes ----------------------------------------------------------------

GammaCWComplex orbit_complex(const Subgroup& i) {
  return GammaCWComplex(i.parent(), {CellOrbit{"orbit", 0, i, {}}}, {});
}

std::vector<std::string> builtin_complex_names() {
  return {"point", "reflection-circle", "reflection-circle-subdivided", "rotation-circle", "torus-z2-rotation"};
}

Decomposition reflection_circle_halves() { return {{"p", "m", "a"}, {"q", "m", "b"}}; }

GammaCWComplex builtin_complex(const std::string& name) {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const Subgroup whole = Subgroup::whole(z2);
  const Subgroup free = Subgroup::trivial(z2);
  const Element e = 0, g = 1;
  if (name == "point") return GammaCWComplex(z2, {{"v", 0, whole, {}}}, {});
  if (name == "rotation-circle") {
    return GammaCWComplex(z2, {{"v", 0, free, {}}, {"e", 1, free, {}}}, {{"e", "v", g, 1}, {"e", "v", e, -1}});
  }
  if (name == "reflection-circle") {
    return GammaCWComplex(z2, {{"p", 0, whole, {}}, {"q", 0, whole, {}}, {"e", 1, free, {}}},
                          {{"e", "q", e, 1}, {"e", "p", e, -1}});
  }
  if (name == "reflection-circle-subdivided") {
    return GammaCWComplex(
        z2, {{"p", 0, whole, {}}, {"q", 0, whole, {}}, {"m", 0, free, {}}, {"a", 1, free, {}}, {"b", 1, free, {}}},
        {{"a", "m", e, 1}, {"a", "p", e, -1}, {"b", "q", e, 1}, {"b", "m", e, -1}});
  }
  if (name == "torus-z2-rotation") {
    // T^2 = R^2 / Z^2 with x -> -x. The squares s00 = [0,1/2]^2 and
    // s10 = [1/2,1] x [0,1/2] and their translates cover the torus.
    return GammaCWComplex(z2,
                          {{"P00", 0, whole, {}}, {"P10", 0, whole, {}}, {"P01", 0, whole, {}}, {"P11", 0, whole, {}},
                           {"h00", 1, free, {}}, {"h01", 1, free, {}}, {"v00", 1, free, {}}, {"v10", 1, free, {}},
                           {"s00", 2, free, {}}, {"s10", 2, free, {}}},
                          {{"h00", "P10", e, 1}, {"h00", "P00", e, -1},
                           {"h01", "P11", e, 1}, {"h01", "P01", e, -1},
                           {"v00", "P01", e, 1}, {"v00", "P00", e, -1},
                           {"v10", "P11", e, 1}, {"v10", "P10", e, -1},
                           {"s00", "h00", e, 1}, {"s00", "v10", e, 1}, {"s00", "h01", e, -1}, {"s00", "v00", e, -1},
                           {"s10", "h00", g, -1}, {"s10", "v00", e, 1}, {"s10", "h01", g, 1}, {"s10", "v10", e, -1}});
  }
  throw MathError(ErrorCode::kInvalidArgument, "unknown built-in complex '" + name + "'");
}

}  // namespace efh
