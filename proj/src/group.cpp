#include "efh/group.hpp"

#include "efh/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace efh {

FiniteGroup::FiniteGroup(std::vector<std::vector<Element>> table, std::vector<std::string> names) {
  const std::size_t n = table.size();
  if (n == 0) throw MathError(ErrorCode::kNotAGroup, "empty Cayley table");
  for (const auto& row : table) {
    if (row.size() != n) throw MathError(ErrorCode::kNotAGroup, "Cayley table is not square");
    for (auto x : row) {
      if (x >= n) throw MathError(ErrorCode::kNotAGroup, "Cayley table entry out of range");
    }
  }
  std::optional<Element> identity;
  for (Element e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Element a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) identity = e;
  }
  if (!identity) throw MathError(ErrorCode::kNotAGroup, "no two-sided identity");
  std::vector<Element> inverse(n);
  for (Element a = 0; a < n; ++a) {
    bool found = false;
    for (Element b = 0; b < n && !found; ++b) {
      if (table[a][b] == *identity && table[b][a] == *identity) {
        inverse[a] = b;
        found = true;
      }
    }
    if (!found) throw MathError(ErrorCode::kNotAGroup, "element " + std::to_string(a) + " has no inverse");
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const Element ab = table[a][b];
      for (Element c = 0; c < n; ++c) {
        if (table[ab][c] != table[a][table[b][c]]) {
          throw MathError(ErrorCode::kNotAGroup, "operation is not associative");
        }
      }
    }
  }
  if (names.empty()) {
    names.resize(n);
    for (Element a = 0; a < n; ++a) names[a] = a == *identity ? "e" : "x" + std::to_string(a);
  }
  if (names.size() != n) throw MathError(ErrorCode::kNotAGroup, "element name count");
  if (std::set<std::string>(names.begin(), names.end()).size() != n) {
    throw MathError(ErrorCode::kNotAGroup, "element names must be distinct");
  }
  auto data = std::make_shared<Data>();
  data->table = std::move(table);
  data->inverse = std::move(inverse);
  data->names = std::move(names);
  data->identity = *identity;
  data_ = std::move(data);
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw MathError(ErrorCode::kInvalidArgument, "cyclic group of order 0");
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  std::vector<std::string> names(n);
  for (std::size_t a = 0; a < n; ++a) {
    names[a] = a == 0 ? "e" : (a == 1 ? "g" : "g" + std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Element>((a + b) % n);
  }
  return FiniteGroup(std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
  if (n == 0) throw MathError(ErrorCode::kInvalidArgument, "dihedral group D_0");
  // (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j)
  const std::size_t order = 2 * n;
  std::vector<std::vector<Element>> t(order, std::vector<Element>(order));
  std::vector<std::string> names(order);
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t a = x / n, i = x % n;
    names[x] = a == 0 ? (i == 0 ? "e" : "r" + std::to_string(i)) : "s" + (i == 0 ? std::string() : "r" + std::to_string(i));
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t b = y / n, j = y % n;
      const std::size_t ii = b == 0 ? i : (n - i) % n;
      t[x][y] = static_cast<Element>(((a + b) % 2) * n + (ii + j) % n);
    }
  }
  return FiniteGroup(std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
  if (n == 0 || n > 5) throw MathError(ErrorCode::kLimitExceeded, "symmetric groups limited to n <= 5");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const std::size_t order = perms.size();
  std::vector<std::vector<Element>> t(order, std::vector<Element>(order));
  std::vector<std::string> names(order);
  for (std::size_t x = 0; x < order; ++x) {
    std::string s = "[";
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(perms[x][i]);
    names[x] = x == 0 ? "e" : s + "]";
    for (std::size_t y = 0; y < order; ++y) {
      // (x y)(i) = x(y(i))
      std::vector<std::size_t> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = perms[x][perms[y][i]];
      const auto it = std::lower_bound(perms.begin(), perms.end(), c);
      t[x][y] = static_cast<Element>(it - perms.begin());
    }
  }
  return FiniteGroup(std::move(t), std::move(names));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = h.order();
  const std::size_t order = g.order() * m;
  std::vector<std::vector<Element>> t(order, std::vector<Element>(order));
  std::vector<std::string> names(order);
  for (std::size_t x = 0; x < order; ++x) {
    const auto gx = static_cast<Element>(x / m), hx = static_cast<Element>(x % m);
    names[x] = "(" + g.name(gx) + "," + h.name(hx) + ")";
    for (std::size_t y = 0; y < order; ++y) {
      const auto gy = static_cast<Element>(y / m), hy = static_cast<Element>(y % m);
      t[x][y] = static_cast<Element>(g.mul(gx, gy) * m + h.mul(hx, hy));
    }
  }
  names[g.identity() * m + h.identity()] = "e";
  return FiniteGroup(std::move(t), std::move(names));
}

std::optional<Element> FiniteGroup::find(const std::string& name) const {
  const auto& names = data_->names;
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<Element>(it - names.begin());
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order(); ++a) {
    for (Element b = a + 1; b < order(); ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != identity(); x = mul(x, a)) ++k;
  return k;
}

// ---- Subgroup ------------------------------------------------------------

Subgroup::Subgroup(FiniteGroup parent, std::vector<Element> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  for (auto x : elements_) {
    if (x >= parent_.order()) throw MathError(ErrorCode::kNotASubgroup, "element out of range");
  }
  if (!contains(parent_.identity())) throw MathError(ErrorCode::kNotASubgroup, "missing identity");
  for (auto a : elements_) {
    if (!contains(parent_.inv(a))) throw MathError(ErrorCode::kNotASubgroup, "not closed under inverses");
    for (auto b : elements_) {
      if (!contains(parent_.mul(a, b))) throw MathError(ErrorCode::kNotASubgroup, "not closed under products");
    }
  }
}

Subgroup Subgroup::whole(const FiniteGroup& g) {
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(g, std::move(all));
}

Subgroup Subgroup::trivial(const FiniteGroup& g) { return Subgroup(g, {g.identity()}); }

namespace {

std::vector<Element> closure(const FiniteGroup& g, std::vector<Element> seed) {
  std::vector<char> in(g.order(), 0);
  std::vector<Element> elems{g.identity()};
  in[g.identity()] = 1;
  for (auto s : seed) {
    if (!in[s]) {
      in[s] = 1;
      elems.push_back(s);
    }
  }
  // Multiply until closed; finite groups need no inverses for closure.
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (auto prod : {g.mul(elems[i], elems[j]), g.mul(elems[j], elems[i])}) {
        if (!in[prod]) {
          in[prod] = 1;
          elems.push_back(prod);
        }
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

}  // namespace

Subgroup Subgroup::generated_by(const FiniteGroup& g, const std::vector<Element>& gens) {
  return Subgroup(g, closure(g, gens));
}

bool Subgroup::contains(Element x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

Subgroup Subgroup::conjugate(Element g) const {
  std::vector<Element> out;
  out.reserve(elements_.size());
  for (auto h : elements_) out.push_back(parent_.conj(g, h));
  return Subgroup(parent_, std::move(out));
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

// ---- GroupAction -----------------------------------------------------------

GroupAction::GroupAction(FiniteGroup group, std::size_t set_size,
                         std::vector<std::vector<std::size_t>> table)
    : group_(std::move(group)), set_size_(set_size), table_(std::move(table)) {
  if (table_.size() != group_.order()) throw MathError(ErrorCode::kNotAnAction, "table rows != |G|");
  for (const auto& row : table_) {
    if (row.size() != set_size_) throw MathError(ErrorCode::kNotAnAction, "table width != set size");
    for (auto x : row) {
      if (x >= set_size_) throw MathError(ErrorCode::kNotAnAction, "image out of range");
    }
  }
  for (std::size_t x = 0; x < set_size_; ++x) {
    if (table_[group_.identity()][x] != x) throw MathError(ErrorCode::kNotAnAction, "identity moves a point");
  }
  for (Element g = 0; g < group_.order(); ++g) {
    for (Element h = 0; h < group_.order(); ++h) {
      for (std::size_t x = 0; x < set_size_; ++x) {
        if (table_[group_.mul(g, h)][x] != table_[g][table_[h][x]]) {
          throw MathError(ErrorCode::kNotAnAction, "action(gh, x) != action(g, action(h, x))");
        }
      }
    }
  }
}

// ---- algorithms --------------------------------------------------------------

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  if (g.order() > kSubgroupOrderCap) {
    throw MathError(ErrorCode::kLimitExceeded,
                    "subgroup enumeration is limited to order " + std::to_string(kSubgroupOrderCap));
  }
  // Grow from the trivial subgroup by adjoining one element at a time; every
  // subgroup is reached along a chain of such steps. Subgroups already seen
  // are not expanded twice.
  std::set<std::vector<Element>> seen;
  std::vector<std::vector<Element>> frontier{{g.identity()}};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<std::vector<Element>> next;
    for (const auto& h : frontier) {
      std::vector<char> in(g.order(), 0);
      for (auto x : h) in[x] = 1;
      for (Element x = 0; x < g.order(); ++x) {
        if (in[x]) continue;
        auto seed = h;
        seed.push_back(x);
        auto k = closure(g, std::move(seed));
        if (seen.insert(k).second) next.push_back(std::move(k));
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<Element>> sorted(seen.begin(), seen.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<Subgroup> out;
  out.reserve(sorted.size());
  for (auto& s : sorted) out.emplace_back(g, std::move(s));
  return out;
}

std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<char> done(g.order(), 0);
  std::vector<std::vector<Element>> classes;
  for (Element x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    std::vector<Element> cls;
    for (Element h = 0; h < g.order(); ++h) {
      const Element y = g.conj(h, x);
      if (!done[y]) {
        done[y] = 1;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

Subgroup centralizer(const FiniteGroup& g, Element x) {
  std::vector<Element> out;
  for (Element h = 0; h < g.order(); ++h) {
    if (g.mul(h, x) == g.mul(x, h)) out.push_back(h);
  }
  return Subgroup(g, std::move(out));
}

std::vector<std::vector<Element>> left_cosets(const FiniteGroup& g, const Subgroup& h) {
  if (!(h.parent() == g)) throw MathError(ErrorCode::kNotASubgroup, "subgroup of a different group");
  std::vector<char> done(g.order(), 0);
  std::vector<std::vector<Element>> cosets;
  for (Element x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    std::vector<Element> c;
    for (auto y : h.elements()) c.push_back(g.mul(x, y));
    std::sort(c.begin(), c.end());
    for (auto y : c) done[y] = 1;
    cosets.push_back(std::move(c));
  }
  return cosets;
}

std::size_t coset_index(const FiniteGroup& g, const Subgroup& h, Element x) {
  // The coset of x is labelled by its minimal element; cosets are ordered by
  // that label, so count cosets whose label is smaller.
  const auto cosets = left_cosets(g, h);
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    if (std::binary_search(cosets[i].begin(), cosets[i].end(), x)) return i;
  }
  throw MathError(ErrorCode::kInvalidArgument, "element outside the group");
}

GroupAction coset_action(const FiniteGroup& g, const Subgroup& h) {
  const auto cosets = left_cosets(g, h);
  std::vector<std::size_t> label(g.order());
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    for (auto y : cosets[i]) label[y] = i;
  }
  std::vector<std::vector<std::size_t>> table(g.order(), std::vector<std::size_t>(cosets.size()));
  for (Element a = 0; a < g.order(); ++a) {
    for (std::size_t i = 0; i < cosets.size(); ++i) table[a][i] = label[g.mul(a, cosets[i].front())];
  }
  return GroupAction(g, cosets.size(), std::move(table));
}

}  // namespace efh
