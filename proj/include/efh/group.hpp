#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace efh {

using Element = std::uint32_t;

/// A finite group given by its Cayley table. Copies share the table.
///
/// The table is checked on construction: closure, associativity, a two-sided
/// identity and inverses. Violations throw MathError(kNotAGroup).
class FiniteGroup {
public:
  FiniteGroup(std::vector<std::vector<Element>> table, std::vector<std::string> names = {});

  static FiniteGroup trivial() { return cyclic(1); }
  /// Z_n with elements "e", "g", "g2", ..., g^k at index k.
  static FiniteGroup cyclic(std::size_t n);
  /// Dihedral group of order 2n: r^k at index k, s r^k at index n + k.
  static FiniteGroup dihedral(std::size_t n);
  /// S_n for n <= 5; elements are permutations in lexicographic order,
  /// named in one-line notation ("[0,2,1]").
  static FiniteGroup symmetric(std::size_t n);
  /// G x H with (g, h) at index g * |H| + h.
  static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);

  std::size_t order() const { return data_->table.size(); }
  Element identity() const { return data_->identity; }
  Element mul(Element a, Element b) const { return data_->table[a][b]; }
  Element inv(Element a) const { return data_->inverse[a]; }
  Element conj(Element g, Element x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  const std::string& name(Element a) const { return data_->names[a]; }
  const std::vector<std::vector<Element>>& table() const { return data_->table; }
  const std::vector<std::string>& names() const { return data_->names; }
  std::optional<Element> find(const std::string& name) const;
  bool is_abelian() const;
  std::size_t element_order(Element a) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.data_ == b.data_ || a.data_->table == b.data_->table;
  }

private:
  struct Data {
    std::vector<std::vector<Element>> table;
    std::vector<Element> inverse;
    std::vector<std::string> names;
    Element identity = 0;
  };
  std::shared_ptr<const Data> data_;
};

/// A subgroup, stored as the sorted list of its elements.
class Subgroup {
public:
  /// Throws MathError(kNotASubgroup) unless `elements` is a subgroup.
  Subgroup(FiniteGroup parent, std::vector<Element> elements);

  static Subgroup whole(const FiniteGroup& g);
  static Subgroup trivial(const FiniteGroup& g);
  static Subgroup generated_by(const FiniteGroup& g, const std::vector<Element>& gens);

  const FiniteGroup& parent() const { return parent_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(Element x) const;
  /// g H g^-1
  Subgroup conjugate(Element g) const;
  bool is_subset_of(const Subgroup& other) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.elements_ == b.elements_ && a.parent_ == b.parent_;
  }

private:
  FiniteGroup parent_;
  std::vector<Element> elements_;
};

/// Action of a finite group on {0, ..., set_size - 1}; `image(g, x)`.
class GroupAction {
public:
  /// Throws MathError(kNotAnAction) unless identity and composition laws hold.
  GroupAction(FiniteGroup group, std::size_t set_size, std::vector<std::vector<std::size_t>> table);

  const FiniteGroup& group() const { return group_; }
  std::size_t set_size() const { return set_size_; }
  std::size_t image(Element g, std::size_t x) const { return table_[g][x]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

private:
  FiniteGroup group_;
  std::size_t set_size_;
  std::vector<std::vector<std::size_t>> table_;
};

/// Largest group order accepted by subgroup enumeration.
inline constexpr std::size_t kSubgroupOrderCap = 64;

/// Every subgroup once, sorted by order then lexicographically by element
/// list. Throws MathError(kLimitExceeded) above kSubgroupOrderCap.
std::vector<Subgroup> all_subgroups(const FiniteGroup& g);

/// Classes sorted by their minimal element; each class sorted.
std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g);

Subgroup centralizer(const FiniteGroup& g, Element x);

/// Left cosets of `h` in `g`, each sorted, ordered by minimal element.
std::vector<std::vector<Element>> left_cosets(const FiniteGroup& g, const Subgroup& h);

/// Left translation on the cosets g/h, cosets indexed as in `left_cosets`.
GroupAction coset_action(const FiniteGroup& g, const Subgroup& h);

/// Index of the coset x h within `left_cosets(g, h)`.
std::size_t coset_index(const FiniteGroup& g, const Subgroup& h, Element x);

}  // namespace efh
