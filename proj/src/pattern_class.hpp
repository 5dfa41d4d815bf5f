#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "permutation.hpp"

namespace permlab {

// Limits on the exponential pieces of membership testing.
struct MembershipLimits {
  std::size_t merge_max = 14;
};

// A pattern-avoidance class: either a finite basis, or one of the five
// constructions over child classes. Immutable and cheap to copy.
class PatternClass {
 public:
  enum class Kind { Leaf, Union, DirectSum, Juxtaposition, Merge, Rotation };

  // Throws InvalidInput on an empty basis or any basis element shorter than 2.
  // Elements involving another basis element are redundant and dropped.
  static PatternClass leaf(std::vector<Permutation> basis);
  static PatternClass union_of(PatternClass a, PatternClass b);
  static PatternClass sum(PatternClass a, PatternClass b);
  static PatternClass juxtaposition(PatternClass a, PatternClass b);
  static PatternClass merge(PatternClass a, PatternClass b);
  static PatternClass rotation(PatternClass a);

  Kind kind() const { return node_->kind; }
  bool is_leaf() const { return node_->kind == Kind::Leaf; }
  // Sorted by (length, one-line order).
  const std::vector<Permutation>& basis() const { return node_->basis; }
  const PatternClass& left() const { return *node_->left; }
  const PatternClass& right() const { return *node_->right; }

  // Canonical mini-language rendering; parse_class(to_string()) is the same class.
  std::string to_string() const;

  friend bool operator==(const PatternClass& a, const PatternClass& b) {
    return a.to_string() == b.to_string();
  }

 private:
  struct Node {
    Kind kind = Kind::Leaf;
    std::vector<Permutation> basis;
    std::shared_ptr<const PatternClass> left;
    std::shared_ptr<const PatternClass> right;
  };
  explicit PatternClass(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static PatternClass node(Kind kind, PatternClass a, const PatternClass* b);

  std::shared_ptr<const Node> node_;
};

// Grammar (whitespace ignored):
//   class := "av(" element ("," element)* ")"
//          | ("union" | "sum" | "juxt" | "merge") "(" class "," class ")"
//          | "rot(" class ")"
//   element := digit+            each digit is one value, e.g. 2413
//            | "[" int (" " int)* "]"   for values above 9
PatternClass parse_class(std::string_view text);

// Membership by construction. Merge membership is exponential and throws
// ResourceLimit above limits.merge_max.
bool member(const PatternClass& c, const Permutation& p, const MembershipLimits& limits = {});

// The shortest length at which a leaf class excludes something.
std::size_t min_basis_length(const PatternClass& leaf);

}  // namespace permlab
