#include "locc/tree.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace locc {

std::string to_string(const LeafRef& r) { return std::to_string(r.j) + "." + std::to_string(r.k); }

std::set<std::size_t> SymbolicLabel::outcomes() const {
  std::set<std::size_t> out;
  for (const auto& t : terms) out.insert(t.j);
  return out;
}

namespace {

void sort_unique(std::vector<LeafRef>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

TreeNode make_leaf(LeafRef r) {
  TreeNode n;
  n.side = Side::A;
  n.leaf = r;
  n.label = {Side::A, {r}};
  return n;
}

TreeNode make_node(Side side, std::vector<TreeNode> children) {
  if (children.empty()) throw std::invalid_argument("internal node without children");
  TreeNode n;
  n.side = side;
  n.children = std::move(children);
  for (const auto& c : n.children)
    if (c.side == side) throw std::invalid_argument("child has the same side as its parent");
  return n;
}

std::vector<LeafRef> leaves(const TreeNode& n) {
  std::vector<LeafRef> out;
  std::function<void(const TreeNode&)> walk = [&](const TreeNode& x) {
    if (x.is_leaf()) {
      out.push_back(*x.leaf);
      return;
    }
    for (const auto& c : x.children) walk(c);
  };
  walk(n);
  return out;
}

std::size_t node_depth(const TreeNode& n) {
  std::size_t d = 0;
  for (const auto& c : n.children) d = std::max(d, node_depth(c));
  return d + 1;
}

std::vector<LeafRef> branch_terms(const TreeNode& c, Side side) {
  (void)side;
  if (c.is_leaf()) return {*c.leaf};
  std::vector<LeafRef> out;
  for (const auto& g : c.children) out.insert(out.end(), g.label.terms.begin(), g.label.terms.end());
  sort_unique(out);
  return out;
}

std::string canonical_form(const TreeNode& n, bool with_k) {
  if (n.is_leaf()) {
    std::string s(1, static_cast<char>(side_char(n.side) - 'A' + 'a'));
    s += std::to_string(n.leaf->j);
    if (with_k) s += "." + std::to_string(n.leaf->k);
    return s;
  }
  std::vector<std::string> parts;
  for (const auto& c : n.children) parts.push_back(canonical_form(c, with_k));
  std::sort(parts.begin(), parts.end());
  std::string s(1, side_char(n.side));
  s += "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += parts[i];
  }
  return s + ")";
}

void relabel(TreeNode& n) {
  if (n.is_leaf()) {
    n.label = {n.side, {*n.leaf}};
    return;
  }
  for (auto& c : n.children) relabel(c);
  std::vector<std::pair<std::string, std::size_t>> keys;
  for (std::size_t i = 0; i < n.children.size(); ++i) keys.emplace_back(canonical_form(n.children[i], false), i);
  std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<TreeNode> sorted;
  sorted.reserve(n.children.size());
  for (const auto& [key, i] : keys) sorted.push_back(std::move(n.children[i]));
  n.children = std::move(sorted);
  n.label = {n.side, branch_terms(n.children.front(), n.side)};
}

std::vector<OpConstraint> normalize_ledger(std::vector<OpConstraint> ledger) {
  std::vector<OpConstraint> out;
  for (auto& c : ledger) {
    sort_unique(c.lhs.terms);
    sort_unique(c.rhs.terms);
    if (c.lhs.terms == c.rhs.terms) continue;
    if (c.rhs.terms < c.lhs.terms) std::swap(c.lhs, c.rhs);
    out.push_back(std::move(c));
  }
  auto key = [](const OpConstraint& c) { return std::tie(c.side, c.lhs.terms, c.rhs.terms); };
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<OpConstraint> rename_ledger(const std::vector<OpConstraint>& ledger,
                                        const std::map<LeafRef, LeafRef>& rename) {
  auto apply = [&](SymbolicLabel l) {
    for (auto& t : l.terms) {
      auto it = rename.find(t);
      if (it != rename.end()) t = it->second;
    }
    sort_unique(l.terms);
    return l;
  };
  std::vector<OpConstraint> out;
  for (const auto& c : ledger) out.push_back({c.side, apply(c.lhs), apply(c.rhs)});
  return out;
}

void finalize(Tree& t) {
  relabel(t.root);
  t.depth = node_depth(t.root);
  t.ledger = normalize_ledger(std::move(t.ledger));
}

bool congruent(const TreeNode& t1, const TreeNode& t2) {
  return t1.side == t2.side && canonical_form(t1, false) == canonical_form(t2, false);
}

std::vector<Tree> seed_trees(const SeparableMeasurement& m) {
  std::vector<Tree> out;
  for (std::size_t j = 1; j <= m.size(); ++j) {
    Tree t;
    t.root = make_node(Side::B, {make_leaf({j, 1})});
    t.id = j - 1;
    finalize(t);
    out.push_back(std::move(t));
  }
  return out;
}

Tree merge_and_extend(const std::vector<Tree>& trees, const SeparableMeasurement& m) {
  if (trees.empty()) throw std::invalid_argument("merge_and_extend: no trees");
  Side side = trees.front().root.side;
  std::size_t depth = trees.front().depth;
  for (const auto& t : trees) {
    if (t.root.side != side) throw std::invalid_argument("merge_and_extend: left-most sides differ");
    if (t.depth != depth) throw std::invalid_argument("merge_and_extend: depths differ");
  }

  std::map<std::size_t, std::size_t> next_k;
  std::vector<TreeNode> roots;
  std::vector<OpConstraint> ledger;
  for (const auto& t : trees) {
    std::map<LeafRef, LeafRef> rename;
    TreeNode r = t.root;
    std::function<void(TreeNode&)> walk = [&](TreeNode& x) {
      if (x.is_leaf()) {
        if (x.leaf->j == 0 || x.leaf->j > m.size())
          throw std::invalid_argument("merge_and_extend: leaf outcome out of range");
        LeafRef fresh{x.leaf->j, ++next_k[x.leaf->j]};
        rename[*x.leaf] = fresh;
        x.leaf = fresh;
        return;
      }
      for (auto& c : x.children) walk(c);
    };
    walk(r);
    relabel(r);
    auto renamed = rename_ledger(t.ledger, rename);
    ledger.insert(ledger.end(), renamed.begin(), renamed.end());
    roots.push_back(std::move(r));
  }
  for (std::size_t i = 1; i < roots.size(); ++i) ledger.push_back({side, roots[0].label, roots[i].label});

  std::vector<TreeNode> merged_children;
  for (auto& r : roots)
    for (auto& c : r.children) merged_children.push_back(std::move(c));
  Tree out;
  out.root = make_node(opposite(side), {make_node(side, std::move(merged_children))});
  out.ledger = std::move(ledger);
  finalize(out);
  return out;
}

std::set<std::size_t> covered_outcomes(const Tree& t) {
  std::set<std::size_t> out;
  for (const auto& r : leaves(t.root)) out.insert(r.j);
  return out;
}

void flatten(TreeNode& n) {
  for (auto& c : n.children) flatten(c);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<TreeNode> next;
    for (auto& c : n.children) {
      if (!c.is_leaf() && c.children.size() == 1 && !c.children.front().is_leaf()) {
        for (auto& g : c.children.front().children) next.push_back(std::move(g));
        changed = true;
      } else {
        next.push_back(std::move(c));
      }
    }
    n.children = std::move(next);
  }
}

TreeNode core_of(const TreeNode& root) {
  const TreeNode* n = &root;
  while (!n->is_leaf() && n->children.size() == 1) n = &n->children.front();
  TreeNode out = *n;
  flatten(out);
  relabel(out);
  return out;
}

Tree present(const TreeNode& core, Side root_side, std::vector<OpConstraint> ledger) {
  Tree t;
  if (core.is_leaf()) {
    if (root_side == Side::B)
      t.root = make_node(Side::B, {core});
    else
      t.root = make_node(Side::A, {make_node(Side::B, {core})});
  } else {
    if (core.side == root_side) throw std::invalid_argument("present: core branches on the root side");
    t.root = make_node(root_side, {core});
  }
  t.ledger = std::move(ledger);
  finalize(t);
  return t;
}

void pad_to_depth(Tree& t, std::size_t target) {
  std::function<void(TreeNode&, std::size_t)> walk = [&](TreeNode& n, std::size_t level) {
    for (auto& c : n.children) {
      if (!c.is_leaf()) {
        walk(c, level + 1);
        continue;
      }
      std::size_t at = level + 1;
      if (at > target || (target - at) % 2 != 0) throw std::invalid_argument("pad_to_depth: unreachable depth");
      for (std::size_t pairs = (target - at) / 2; pairs > 0; --pairs)
        c = make_node(Side::A, {make_node(Side::B, {std::move(c)})});
    }
  };
  walk(t.root, 1);
  finalize(t);
}

std::string equivalence_signature(const Tree& t) {
  std::string s(1, side_char(t.root.side));
  s += "{";
  bool first = true;
  for (std::size_t j : t.root.label.outcomes()) {
    if (!first) s += ",";
    s += std::to_string(j);
    first = false;
  }
  s += "}";
  return s + canonical_form(core_of(t.root), false);
}

std::vector<OpConstraint> branch_constraints(const TreeNode& root) {
  std::vector<OpConstraint> out;
  std::function<void(const TreeNode&)> walk = [&](const TreeNode& n) {
    if (n.children.size() >= 2) {
      SymbolicLabel first{n.side, branch_terms(n.children[0], n.side)};
      for (std::size_t i = 1; i < n.children.size(); ++i)
        out.push_back({n.side, first, {n.side, branch_terms(n.children[i], n.side)}});
    }
    for (const auto& c : n.children) walk(c);
  };
  walk(root);
  return out;
}

namespace {

void match_leaves(const TreeNode& erased, const TreeNode& kept, std::map<LeafRef, LeafRef>& out) {
  if (erased.is_leaf()) {
    out[*erased.leaf] = *kept.leaf;
    return;
  }
  for (std::size_t i = 0; i < erased.children.size(); ++i) match_leaves(erased.children[i], kept.children[i], out);
}

bool collapse_once(TreeNode& n, CollapseStep& step) {
  for (std::size_t i = 0; i < n.children.size(); ++i)
    for (std::size_t j = i + 1; j < n.children.size(); ++j)
      if (congruent(n.children[i], n.children[j])) {
        step.merge_side = n.side;
        match_leaves(n.children[j], n.children[i], step.erased_to_kept);
        n.children.erase(n.children.begin() + static_cast<long>(j));
        return true;
      }
  for (auto& c : n.children)
    if (collapse_once(c, step)) return true;
  return false;
}

}  // namespace

Tree collapse_congruent(const Tree& t, std::vector<CollapseStep>* steps) {
  Tree out = t;
  relabel(out.root);
  while (true) {
    CollapseStep step;
    if (!collapse_once(out.root, step)) break;
    out.ledger = rename_ledger(out.ledger, step.erased_to_kept);
    relabel(out.root);
    if (steps) steps->push_back(std::move(step));
  }
  finalize(out);
  return out;
}

std::string to_string(const SymbolicLabel& l) {
  std::string s;
  for (std::size_t i = 0; i < l.terms.size(); ++i) {
    if (i) s += " + ";
    s += to_string(l.terms[i]);
  }
  return s;
}

std::string to_string(const OpConstraint& c) {
  return std::string(1, side_char(c.side)) + ": " + to_string(c.lhs) + " = " + to_string(c.rhs);
}

std::string serialize_tree(const Tree& t) {
  std::ostringstream os;
  os << "tree depth=" << t.depth << "\n" << canonical_form(t.root, true) << "\n";
  for (const auto& c : t.ledger) os << to_string(c) << "\n";
  return os.str();
}

}  // namespace locc
