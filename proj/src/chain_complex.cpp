#include "efh/chain_complex.hpp"

#include "efh/error.hpp"

#include <algorithm>
#include <string>

namespace efh {

// ---- BettiVector -------------------------------------------------------------

std::size_t BettiVector::at(int degree) const {
  if (degree < min_degree || degree > max_degree()) return 0;
  return betti[static_cast<std::size_t>(degree - min_degree)];
}

long BettiVector::euler_characteristic() const {
  long chi = 0;
  for (std::size_t i = 0; i < betti.size(); ++i) {
    const int n = min_degree + static_cast<int>(i);
    chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(betti[i]);
  }
  return chi;
}

std::vector<std::size_t> BettiVector::trusted() const {
  if (!trusted_through) return betti;
  const int keep = std::max(0, *trusted_through - min_degree + 1);
  return {betti.begin(), betti.begin() + std::min<std::ptrdiff_t>(keep, static_cast<std::ptrdiff_t>(betti.size()))};
}

BettiVector operator+(const BettiVector& a, const BettiVector& b) {
  if (a.betti.empty()) return b;
  if (b.betti.empty()) return a;
  BettiVector out;
  out.min_degree = std::min(a.min_degree, b.min_degree);
  const int top = std::max(a.max_degree(), b.max_degree());
  for (int n = out.min_degree; n <= top; ++n) out.betti.push_back(a.at(n) + b.at(n));
  if (a.trusted_through || b.trusted_through) {
    out.trusted_through = std::min(a.trusted_through.value_or(top), b.trusted_through.value_or(top));
  }
  return out;
}

BettiVector convolve(const BettiVector& a, const BettiVector& b) {
  BettiVector out;
  if (a.betti.empty() || b.betti.empty()) return out;
  out.min_degree = a.min_degree + b.min_degree;
  out.betti.assign(a.betti.size() + b.betti.size() - 1, 0);
  for (std::size_t i = 0; i < a.betti.size(); ++i) {
    for (std::size_t j = 0; j < b.betti.size(); ++j) out.betti[i + j] += a.betti[i] * b.betti[j];
  }
  if (a.trusted_through || b.trusted_through) {
    const int ta = a.trusted_through.value_or(a.max_degree());
    const int tb = b.trusted_through.value_or(b.max_degree());
    out.trusted_through = std::min(ta + b.min_degree, tb + a.min_degree);
  }
  return out;
}

// ---- ChainComplex --------------------------------------------------------------

ChainComplex::ChainComplex(Field field, int min_degree, std::vector<std::size_t> dims,
                           std::vector<Matrix> differentials)
    : field_(field), min_degree_(min_degree), dims_(std::move(dims)),
      differentials_(std::move(differentials)) {
  if (dims_.empty()) dims_.push_back(0);
  if (differentials_.size() + 1 != dims_.size()) {
    throw MathError(ErrorCode::kNotAChainComplex, "need one differential per adjacent degree pair");
  }
  for (std::size_t i = 0; i < differentials_.size(); ++i) {
    const Matrix& d = differentials_[i];
    if (!(d.field() == field_)) throw MathError(ErrorCode::kFieldMismatch, "differential field");
    if (d.rows() != dims_[i] || d.cols() != dims_[i + 1]) {
      throw MathError(ErrorCode::kNotAChainComplex,
                      "d_" + std::to_string(min_degree_ + static_cast<int>(i) + 1) + " has shape " +
                          std::to_string(d.rows()) + "x" + std::to_string(d.cols()));
    }
  }
  for (std::size_t i = 0; i + 1 < differentials_.size(); ++i) {
    if (!(differentials_[i] * differentials_[i + 1]).is_zero()) {
      throw MathError(ErrorCode::kNotAChainComplex,
                      "d_" + std::to_string(min_degree_ + static_cast<int>(i) + 1) + " d_" +
                          std::to_string(min_degree_ + static_cast<int>(i) + 2) + " != 0");
    }
  }
}

ChainComplex ChainComplex::zero(Field field) { return ChainComplex(field, 0, {0}, {}); }

ChainComplex ChainComplex::concentrated(Field field, int degree, std::size_t dim) {
  return ChainComplex(field, degree, {dim}, {});
}

std::size_t ChainComplex::dim(int degree) const {
  if (degree < min_degree_ || degree > max_degree()) return 0;
  return dims_[static_cast<std::size_t>(degree - min_degree_)];
}

Matrix ChainComplex::differential(int degree) const {
  if (degree <= min_degree_ || degree > max_degree()) {
    return Matrix(dim(degree - 1), dim(degree), field_);
  }
  return differentials_[static_cast<std::size_t>(degree - min_degree_ - 1)];
}

ChainComplex& ChainComplex::mark_truncated() { return limit_trust(max_degree() - 1); }

ChainComplex& ChainComplex::limit_trust(int degree) {
  trusted_through_ = std::min(trusted_through_.value_or(degree), degree);
  return *this;
}

std::vector<std::size_t> ChainComplex::boundary_ranks() const {
  std::vector<std::size_t> ranks(dims_.size(), 0);
  // d_{n+1} maps into ker d_n, which bounds its rank.
  for (std::size_t i = 0; i < differentials_.size(); ++i) {
    ranks[i + 1] = rank_with_upper_bound(differentials_[i], dims_[i] - ranks[i]);
  }
  return ranks;
}

long ChainComplex::euler_characteristic() const {
  long chi = 0;
  for (int n = min_degree_; n <= max_degree(); ++n) {
    chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(dim(n));
  }
  return chi;
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
  return a.field_ == b.field_ && a.min_degree_ == b.min_degree_ && a.dims_ == b.dims_ &&
         a.differentials_ == b.differentials_;
}

BettiVector homology(const ChainComplex& c) {
  const auto ranks = c.boundary_ranks();
  BettiVector out;
  out.min_degree = c.min_degree();
  const std::size_t n = c.dims().size();
  out.betti.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t incoming =
        i + 1 < n ? ranks[i + 1] : c.top_incoming_rank().value_or(0);
    out.betti[i] = c.dims()[i] - ranks[i] - incoming;
  }
  out.trusted_through = c.trusted_through();
  return out;
}

ChainComplex direct_sum(std::span<const ChainComplex> cs) {
  if (cs.empty()) return ChainComplex::zero();
  const Field field = cs.front().field();
  int lo = cs.front().min_degree(), hi = cs.front().max_degree();
  for (const auto& c : cs) {
    if (!(c.field() == field)) throw MathError(ErrorCode::kFieldMismatch, "direct_sum");
    lo = std::min(lo, c.min_degree());
    hi = std::max(hi, c.max_degree());
  }
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    std::size_t d = 0;
    for (const auto& c : cs) d += c.dim(n);
    dims.push_back(d);
    if (n > lo) {
      std::vector<Matrix> blocks;
      for (const auto& c : cs) blocks.push_back(c.differential(n));
      diffs.push_back(Matrix::direct_sum(blocks, field));
    }
  }
  ChainComplex out(field, lo, std::move(dims), std::move(diffs));
  for (const auto& c : cs) {
    if (c.trusted_through()) out.limit_trust(*c.trusted_through());
  }
  return out;
}

ChainComplex truncate(const ChainComplex& c, int top) {
  if (top < c.min_degree()) throw MathError(ErrorCode::kInvalidArgument, "truncation below min degree");
  if (top >= c.max_degree()) {
    ChainComplex out = c;
    return out.limit_trust(top - 1);
  }
  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = c.min_degree(); n <= top; ++n) {
    dims.push_back(c.dim(n));
    if (n > c.min_degree()) diffs.push_back(c.differential(n));
  }
  ChainComplex out(c.field(), c.min_degree(), std::move(dims), std::move(diffs));
  out.top_incoming_rank_ = rank(c.differential(top + 1));
  out.limit_trust(top - 1);
  if (c.trusted_through()) out.limit_trust(*c.trusted_through());
  return out;
}

ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b, std::optional<int> max_total) {
  if (!(a.field() == b.field())) throw MathError(ErrorCode::kFieldMismatch, "tensor_product");
  const Field field = a.field();
  const int lo = a.min_degree() + b.min_degree();
  const int full_hi = a.max_degree() + b.max_degree();
  const int hi = max_total ? std::min(full_hi, *max_total) : full_hi;
  if (hi < lo) return ChainComplex::zero(field);

  // Block layout of degree n: (p, n - p) for p ascending.
  auto offsets = [&](int n) {
    std::vector<std::pair<int, std::size_t>> blocks;  // (p, offset)
    std::size_t off = 0;
    for (int p = a.min_degree(); p <= a.max_degree(); ++p) {
      const int q = n - p;
      if (q < b.min_degree() || q > b.max_degree()) continue;
      blocks.emplace_back(p, off);
      off += a.dim(p) * b.dim(q);
    }
    return std::make_pair(blocks, off);
  };

  std::vector<std::size_t> dims;
  std::vector<Matrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    auto [blocks, total] = offsets(n);
    dims.push_back(total);
    if (n == lo) continue;
    auto [lower_blocks, lower_total] = offsets(n - 1);
    auto lower_offset = [&](int p) -> std::optional<std::size_t> {
      for (const auto& [pp, off] : lower_blocks) {
        if (pp == p) return off;
      }
      return std::nullopt;
    };
    std::vector<SparseColumn> cols(total);
    for (const auto& [p, off] : blocks) {
      const int q = n - p;
      const std::size_t dq = b.dim(q);
      // d(x (x) y) = dx (x) y + (-1)^p x (x) dy
      if (auto lo_off = lower_offset(p - 1)) {
        const Matrix k = Matrix::kronecker(a.differential(p), Matrix::identity(dq, field));
        for (std::size_t j = 0; j < k.cols(); ++j) {
          for (const auto& e : k.column(j)) cols[off + j].push_back({*lo_off + e.row, e.value});
        }
      }
      if (auto lo_off = lower_offset(p)) {
        Matrix k = Matrix::kronecker(Matrix::identity(a.dim(p), field), b.differential(q));
        if (p % 2 != 0) k = k.scaled(Rational(-1));
        for (std::size_t j = 0; j < k.cols(); ++j) {
          for (const auto& e : k.column(j)) cols[off + j].push_back({*lo_off + e.row, e.value});
        }
      }
    }
    diffs.push_back(Matrix::from_columns(lower_total, std::move(cols), field));
  }
  ChainComplex out(field, lo, std::move(dims), std::move(diffs));
  if (hi < full_hi) out.limit_trust(hi - 1);
  if (a.trusted_through()) out.limit_trust(*a.trusted_through() + b.min_degree());
  if (b.trusted_through()) out.limit_trust(*b.trusted_through() + a.min_degree());
  return out;
}

// ---- group actions ---------------------------------------------------------------

ComplexGroupAction::ComplexGroupAction(ChainComplex complex, Subgroup acting,
                                       std::vector<std::vector<Matrix>> matrices)
    : complex_(std::move(complex)), acting_(std::move(acting)), matrices_(std::move(matrices)) {
  const FiniteGroup& g = acting_.parent();
  if (matrices_.size() != g.order()) {
    throw MathError(ErrorCode::kNotAnAction, "need one matrix list per group element");
  }
  const auto n_deg = complex_.dims().size();
  for (auto h : acting_.elements()) {
    if (matrices_[h].size() != n_deg) throw MathError(ErrorCode::kNotAnAction, "matrix count per degree");
    for (std::size_t i = 0; i < n_deg; ++i) {
      const Matrix& m = matrices_[h][i];
      if (m.rows() != complex_.dims()[i] || m.cols() != complex_.dims()[i]) {
        throw MathError(ErrorCode::kNotAnAction, "action matrix shape");
      }
    }
  }
  for (std::size_t i = 0; i < n_deg; ++i) {
    const int deg = complex_.min_degree() + static_cast<int>(i);
    if (!(matrices_[g.identity()][i] == Matrix::identity(complex_.dims()[i], complex_.field()))) {
      throw MathError(ErrorCode::kNotAnAction, "identity does not act trivially");
    }
    for (auto x : acting_.elements()) {
      if (deg > complex_.min_degree()) {
        const Matrix d = complex_.differential(deg);
        if (!(matrices_[x][i - 1] * d == d * matrices_[x][i])) {
          throw MathError(ErrorCode::kNotAnAction, "group element is not a chain map");
        }
      }
      for (auto y : acting_.elements()) {
        if (!(matrices_[g.mul(x, y)][i] == matrices_[x][i] * matrices_[y][i])) {
          throw MathError(ErrorCode::kNotAnAction, "rho(gh) != rho(g) rho(h)");
        }
      }
    }
  }
}

ComplexGroupAction ComplexGroupAction::restrict_to(const Subgroup& h) const {
  if (!h.is_subset_of(acting_)) throw MathError(ErrorCode::kNotASubgroup, "restriction to a non-subgroup");
  return ComplexGroupAction(complex_, h, matrices_);
}

const Matrix& ComplexGroupAction::matrix(Element g, int degree) const {
  return matrices_.at(g).at(static_cast<std::size_t>(degree - complex_.min_degree()));
}

Matrix ComplexGroupAction::averaging_projector(int degree) const {
  const Field& field = complex_.field();
  const auto order = static_cast<long>(acting_.order());
  if (field.is_prime() && order % static_cast<long>(field.characteristic()) == 0) {
    throw MathError(ErrorCode::kCharacteristicDividesOrder,
                    "|H| = " + std::to_string(order) + " is zero in " + field.name());
  }
  const std::size_t n = complex_.dim(degree);
  Matrix sum(n, n, field);
  for (auto h : acting_.elements()) sum = sum + matrix(h, degree);
  return sum.scaled(field.inv(field.element(Rational(order))));
}

ChainComplex invariants_subcomplex(const ComplexGroupAction& a) {
  const ChainComplex& c = a.complex();
  const Field& field = c.field();
  std::vector<Matrix> bases;
  std::vector<std::size_t> dims;
  for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
    const Matrix p = a.averaging_projector(n);
    const auto cols = independent_columns(p);
    std::vector<std::size_t> all_rows(p.rows());
    for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
    bases.push_back(p.select(all_rows, cols));
    dims.push_back(cols.size());
  }
  std::vector<Matrix> diffs;
  for (int n = c.min_degree() + 1; n <= c.max_degree(); ++n) {
    const auto i = static_cast<std::size_t>(n - c.min_degree());
    diffs.push_back(solve_matrix(bases[i - 1], c.differential(n) * bases[i]));
  }
  ChainComplex out(field, c.min_degree(), std::move(dims), std::move(diffs));
  if (c.trusted_through()) out.limit_trust(*c.trusted_through());
  return out;
}

}  // namespace efh
