#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "locc/measurement.hpp"

namespace locc {

enum class Side { A, B };

inline Side opposite(Side s) { return s == Side::A ? Side::B : Side::A; }
inline char side_char(Side s) { return s == Side::A ? 'A' : 'B'; }

struct LeafRef {
  std::size_t j = 0;
  std::size_t k = 0;

  auto operator<=>(const LeafRef&) const = default;
};

std::string to_string(const LeafRef& r);

// Sum over terms of q_jk A_j (side A) or p_jk B_j (side B). Terms are kept
// sorted and unique.
struct SymbolicLabel {
  Side side = Side::A;
  std::vector<LeafRef> terms;

  std::set<std::size_t> outcomes() const;
  bool operator==(const SymbolicLabel&) const = default;
};

struct TreeNode {
  Side side = Side::A;
  SymbolicLabel label;
  std::vector<TreeNode> children;
  std::optional<LeafRef> leaf;

  bool is_leaf() const { return leaf.has_value(); }
};

struct OpConstraint {
  Side side = Side::A;
  SymbolicLabel lhs;
  SymbolicLabel rhs;

  bool operator==(const OpConstraint&) const = default;
};

// The root and its first child form the double root (I of either party).
struct Tree {
  TreeNode root;
  std::vector<OpConstraint> ledger;
  std::size_t depth = 0;
  std::size_t id = 0;
};

TreeNode make_leaf(LeafRef r);
TreeNode make_node(Side side, std::vector<TreeNode> children);

// Leaf refs beneath a node, depth-first in child order.
std::vector<LeafRef> leaves(const TreeNode& n);
std::size_t node_depth(const TreeNode& n);

// Terms of the branch below c as seen by party `side`: c's own ref for a
// leaf, otherwise the union of the labels of c's children.
std::vector<LeafRef> branch_terms(const TreeNode& c, Side side);

// Sorts children by their k-free canonical form and recomputes every label
// bottom-up (label of a node = branch_terms of its first child).
void relabel(TreeNode& n);
void finalize(Tree& t);

// Leaf "a<j>" / "a<j>.<k>", internal "A(...)" with children in canonical order.
std::string canonical_form(const TreeNode& n, bool with_k);
bool congruent(const TreeNode& t1, const TreeNode& t2);

std::vector<Tree> seed_trees(const SeparableMeasurement& m);

// Throws std::invalid_argument on an empty list or mismatched depth/root side.
Tree merge_and_extend(const std::vector<Tree>& trees, const SeparableMeasurement& m);

std::set<std::size_t> covered_outcomes(const Tree& t);

// Strips the single-child chain below the root and removes pass-through
// nodes; what remains is a leaf or a node with >= 2 children.
TreeNode core_of(const TreeNode& root);
// Lifts the children of pass-through nodes (one internal child) into the
// grandparent. Undoes leaf-end padding.
void flatten(TreeNode& n);
// Smallest tree with root side `root_side` whose core is `core`: a seed for a
// leaf on B, a B-wrapped leaf on A, root -> core for a node of the other side.
Tree present(const TreeNode& core, Side root_side, std::vector<OpConstraint> ledger);
// Inserts A -> B pass-through pairs above short leaves until every leaf sits
// at the target depth.
void pad_to_depth(Tree& t, std::size_t target);

std::string equivalence_signature(const Tree& t);

// Equalities T(c_1) = T(c_i) implied by the structure at every node with
// several children, in preorder.
std::vector<OpConstraint> branch_constraints(const TreeNode& root);

// Sorted terms, lhs < rhs, trivial ones dropped, duplicates removed.
std::vector<OpConstraint> normalize_ledger(std::vector<OpConstraint> ledger);
std::vector<OpConstraint> rename_ledger(const std::vector<OpConstraint>& ledger,
                                        const std::map<LeafRef, LeafRef>& rename);

struct CollapseStep {
  Side merge_side;                          // side of the node the copies hang from
  std::map<LeafRef, LeafRef> erased_to_kept;
};

// Repeatedly erases the later of two congruent siblings; refs of the erased
// copy are identified with their counterparts in the kept copy throughout the
// ledger. A kept coefficient of the party opposite merge_side stands for the
// sum over the identified copies.
Tree collapse_congruent(const Tree& t, std::vector<CollapseStep>* steps = nullptr);

// "1.1 + 2.1" and "A: 1.1 + 2.1 = 4.1".
std::string to_string(const SymbolicLabel& l);
std::string to_string(const OpConstraint& c);

std::string serialize_tree(const Tree& t);

}  // namespace locc
