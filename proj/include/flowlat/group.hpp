#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace flowlat {

// An element of a finite abelian group, as a residue tuple (one residue per
// cyclic factor).
using GroupElement = std::vector<int>;

// Finite abelian group given as a product of cyclic factors.
//
// Elements are enumerated in a fixed canonical order: lexicographic on
// residue tuples, so the identity (all zeros) always comes first. Element
// indices are ranks under that order; all hot-path arithmetic works on
// indices.
class Group {
 public:
  explicit Group(std::vector<int> factors);

  const std::vector<int>& factors() const { return factors_; }
  int order() const { return order_; }
  std::string spec() const;  // "Z6", "Z2xZ2", ...

  // Index-level arithmetic.
  int add(int a, int b) const;
  int neg(int a) const;
  int zero() const { return 0; }

  GroupElement element(int index) const;
  int index_of(const GroupElement& e) const;  // reduces residues mod factors

  // All elements in canonical order (identity first).
  std::vector<GroupElement> enumerate() const;

  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement zero_element() const { return GroupElement(factors_.size(), 0); }

  bool operator==(const Group& other) const { return factors_ == other.factors_; }

 private:
  std::vector<int> factors_;
  int order_ = 1;
  // Precomputed tables for small groups; larger groups fall back to
  // mixed-radix arithmetic.
  std::vector<int> add_table_;
  std::vector<int> neg_table_;
  int add_slow(int a, int b) const;
  int neg_slow(int a) const;
};

// Parses the grammar Zk("x"Zk)*, k >= 1.
Group parse_group(std::string_view spec);

// Injective homomorphism between abelian groups, given by images of the
// canonical generators of the source.
class Embedding {
 public:
  Embedding(Group source, Group target, std::vector<int> generator_images);

  const Group& source() const { return source_; }
  const Group& target() const { return target_; }

  // Element-level map on indices.
  int map(int source_index) const { return element_map_[source_index]; }
  const std::vector<int>& element_map() const { return element_map_; }

 private:
  Group source_;
  Group target_;
  std::vector<int> element_map_;
};

// Validates that the generator images induce an injective homomorphism.
Embedding build_embedding(const Group& source, const Group& target,
                          const std::vector<GroupElement>& images);

}  // namespace flowlat
