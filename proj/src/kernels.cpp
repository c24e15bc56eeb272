#include "efh/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace efh::kernels {

namespace {

// Arithmetic policies. Both expose the same static interface so every kernel
// is written once.

struct RationalOps {
  using Value = mpq_class;
  const Field* field;

  Value load(const Rational& r) const { return r.raw(); }
  static bool is_zero(const Value& v) { return sgn(v) == 0; }
  static void set_zero(Value& v) { v = 0; }
  static std::size_t weight(const Value& v) {
    if (sgn(v) == 0) return 0;
    return mpz_sizeinbase(v.get_num_mpz_t(), 2) + mpz_sizeinbase(v.get_den_mpz_t(), 2);
  }
  static Value quotient(const Value& a, const Value& b) { return Value(a / b); }
  // acc -= f * v
  static void sub_mul(Value& acc, const Value& f, const Value& v) { acc -= f * v; }
  static void neg_mul(Value& acc, const Value& f, const Value& v) { acc = -(f * v); }
};

struct ModOps {
  using Value = std::uint32_t;
  const Field* field;

  Value load(const Rational& r) const { return field->residue(r); }
  static bool is_zero(Value v) { return v == 0; }
  static void set_zero(Value& v) { v = 0; }
  static std::size_t weight(Value v) { return v == 0 ? 0 : 1; }
  std::uint32_t p() const { return field->characteristic(); }
  Value quotient(Value a, Value b) const {
    return static_cast<Value>((static_cast<std::uint64_t>(a) * mod_inverse(b, p())) % p());
  }
  void sub_mul(Value& acc, Value f, Value v) const {
    const std::uint64_t prod = (static_cast<std::uint64_t>(f) * v) % p();
    acc = static_cast<Value>((acc + p() - prod) % p());
  }
  void neg_mul(Value& acc, Value f, Value v) const {
    const std::uint64_t prod = (static_cast<std::uint64_t>(f) * v) % p();
    acc = static_cast<Value>((p() - prod) % p());
  }
};

// ---- dense ---------------------------------------------------------------

template <class Ops>
std::size_t dense_rank_impl(const Matrix& m, const Ops& ops, bool parallel) {
  using Value = typename Ops::Value;
  const std::size_t n_rows = m.rows();
  const std::size_t n_cols = m.cols();
  std::vector<std::vector<Value>> a(n_rows, std::vector<Value>(n_cols));
  for (std::size_t j = 0; j < n_cols; ++j) {
    for (const auto& e : m.column(j)) a[e.row][j] = ops.load(e.value);
  }
  std::size_t top = 0;
  for (std::size_t c = 0; c < n_cols && top < n_rows; ++c) {
    std::size_t best = n_rows;
    std::size_t best_w = 0;
    for (std::size_t r = top; r < n_rows; ++r) {
      if (Ops::is_zero(a[r][c])) continue;
      const std::size_t w = Ops::weight(a[r][c]);
      if (best == n_rows || w < best_w) {
        best = r;
        best_w = w;
      }
    }
    if (best == n_rows) continue;
    std::swap(a[top], a[best]);
    const auto& pivot_row = a[top];
    const auto count = static_cast<std::ptrdiff_t>(n_rows);
    const auto first = static_cast<std::ptrdiff_t>(top + 1);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t r = first; r < count; ++r) {
      auto& row = a[static_cast<std::size_t>(r)];
      if (Ops::is_zero(row[c])) continue;
      const Value f = ops.quotient(row[c], pivot_row[c]);
      for (std::size_t k = c; k < n_cols; ++k) {
        if (!Ops::is_zero(pivot_row[k])) ops.sub_mul(row[k], f, pivot_row[k]);
      }
    }
    ++top;
  }
  return top;
}

// ---- sparse --------------------------------------------------------------

template <class Value>
struct PivotColumn {
  std::uint32_t row;
  Value lead;
  std::vector<std::pair<std::uint32_t, Value>> entries;
};

template <class Value>
using Column = std::vector<std::pair<std::uint32_t, Value>>;

template <class Ops>
class SparseEliminator {
public:
  using Value = typename Ops::Value;

  SparseEliminator(std::size_t n_rows, const Ops& ops)
      : ops_(ops), pivot_of_row_(n_rows, -1) {}

  struct Workspace {
    explicit Workspace(std::size_t n_rows)
        : acc(n_rows), touched(n_rows, 0), queued(n_rows, 0) {}
    std::vector<Value> acc;
    std::vector<char> touched;
    std::vector<char> queued;  // indexed by pivot id (pivot count <= n_rows)
    std::vector<std::uint32_t> hit;
    std::priority_queue<std::int64_t, std::vector<std::int64_t>, std::greater<>> heap;
  };

  // Fully reduces `col` against the pivots currently registered.
  Column<Value> reduce(const Column<Value>& col, Workspace& ws) const {
    auto push = [&](std::int64_t k) {
      if (!ws.queued[static_cast<std::size_t>(k)]) {
        ws.queued[static_cast<std::size_t>(k)] = 1;
        ws.heap.push(k);
      }
    };
    for (const auto& [r, v] : col) {
      ws.acc[r] = v;
      ws.touched[r] = 1;
      ws.hit.push_back(r);
      if (pivot_of_row_[r] >= 0) push(pivot_of_row_[r]);
    }
    while (!ws.heap.empty()) {
      const std::int64_t k = ws.heap.top();
      ws.heap.pop();
      ws.queued[static_cast<std::size_t>(k)] = 0;
      const auto& piv = pivots_[static_cast<std::size_t>(k)];
      if (Ops::is_zero(ws.acc[piv.row])) continue;
      const Value f = ops_.quotient(ws.acc[piv.row], piv.lead);
      for (const auto& [r, v] : piv.entries) {
        if (!ws.touched[r]) {
          ws.touched[r] = 1;
          ws.hit.push_back(r);
          ops_.neg_mul(ws.acc[r], f, v);
        } else {
          ops_.sub_mul(ws.acc[r], f, v);
        }
        const std::int64_t p = pivot_of_row_[r];
        if (p > k && !Ops::is_zero(ws.acc[r])) push(p);
      }
      Ops::set_zero(ws.acc[piv.row]);
    }
    Column<Value> out;
    std::sort(ws.hit.begin(), ws.hit.end());
    for (auto r : ws.hit) {
      if (!Ops::is_zero(ws.acc[r])) out.emplace_back(r, ws.acc[r]);
      Ops::set_zero(ws.acc[r]);
      ws.touched[r] = 0;
    }
    ws.hit.clear();
    return out;
  }

  // Registers a fully reduced nonzero column as a new pivot.
  void add_pivot(Column<Value> col) {
    std::size_t best = 0;
    std::size_t best_w = Ops::weight(col[0].second);
    for (std::size_t i = 1; i < col.size(); ++i) {
      const std::size_t w = Ops::weight(col[i].second);
      if (w < best_w) {
        best = i;
        best_w = w;
      }
    }
    PivotColumn<Value> p{col[best].first, col[best].second, std::move(col)};
    pivot_of_row_[p.row] = static_cast<std::int64_t>(pivots_.size());
    pivots_.push_back(std::move(p));
  }

  std::size_t rank() const { return pivots_.size(); }

private:
  Ops ops_;
  std::vector<std::int64_t> pivot_of_row_;
  std::vector<PivotColumn<Value>> pivots_;
};

template <class Ops>
Column<typename Ops::Value> load_column(const Matrix& m, std::size_t j, const Ops& ops) {
  Column<typename Ops::Value> col;
  col.reserve(m.column(j).size());
  for (const auto& e : m.column(j)) {
    col.emplace_back(static_cast<std::uint32_t>(e.row), ops.load(e.value));
  }
  return col;
}

template <class Ops>
std::size_t sparse_rank_serial_impl(const Matrix& m, const Ops& ops) {
  SparseEliminator<Ops> elim(m.rows(), ops);
  typename SparseEliminator<Ops>::Workspace ws(m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (elim.rank() == m.rows()) break;
    auto reduced = elim.reduce(load_column(m, j, ops), ws);
    if (!reduced.empty()) elim.add_pivot(std::move(reduced));
  }
  return elim.rank();
}

template <class Ops>
std::size_t sparse_rank_parallel_impl(const Matrix& m, const Ops& ops, std::size_t block) {
  using Elim = SparseEliminator<Ops>;
  Elim elim(m.rows(), ops);
  const std::size_t n_cols = m.cols();
  block = std::max<std::size_t>(block, 1);
  std::vector<Column<typename Ops::Value>> staged(block);
  typename Elim::Workspace serial_ws(m.rows());
  for (std::size_t start = 0; start < n_cols; start += block) {
    if (elim.rank() == m.rows()) break;
    const std::size_t end = std::min(n_cols, start + block);
    const auto count = static_cast<std::ptrdiff_t>(end - start);
#pragma omp parallel
    {
      typename Elim::Workspace ws(m.rows());
#pragma omp for schedule(dynamic, 8)
      for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        staged[idx] = elim.reduce(load_column(m, start + idx, ops), ws);
      }
    }
    for (std::size_t i = 0; i < end - start; ++i) {
      if (staged[i].empty()) continue;
      auto reduced = elim.reduce(staged[i], serial_ws);
      if (!reduced.empty()) elim.add_pivot(std::move(reduced));
    }
  }
  return elim.rank();
}

}  // namespace

std::size_t dense_rank_serial(const Matrix& m) {
  if (m.field().is_prime()) return dense_rank_impl(m, ModOps{&m.field()}, false);
  return dense_rank_impl(m, RationalOps{&m.field()}, false);
}

std::size_t dense_rank_parallel(const Matrix& m) {
  if (m.field().is_prime()) return dense_rank_impl(m, ModOps{&m.field()}, true);
  return dense_rank_impl(m, RationalOps{&m.field()}, true);
}

std::size_t sparse_rank_serial(const Matrix& m) {
  if (m.field().is_prime()) return sparse_rank_serial_impl(m, ModOps{&m.field()});
  return sparse_rank_serial_impl(m, RationalOps{&m.field()});
}

std::size_t sparse_rank_parallel(const Matrix& m, std::size_t block) {
  if (m.field().is_prime()) return sparse_rank_parallel_impl(m, ModOps{&m.field()}, block);
  return sparse_rank_parallel_impl(m, RationalOps{&m.field()}, block);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace efh::kernels
