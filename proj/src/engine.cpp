#include "locc/engine.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "locc/cone.hpp"
#include "locc/lp.hpp"

namespace locc {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::LOCC_FOUND: return "LOCC_FOUND";
    case Verdict::NO_LOCC_WITHIN_L: return "NO_LOCC_WITHIN_L";
    case Verdict::NO_LOCC_ANY_ROUNDS: return "NO_LOCC_ANY_ROUNDS";
    case Verdict::INCONCLUSIVE_CAPPED: return "INCONCLUSIVE_CAPPED";
  }
  return "?";
}

namespace {

const HermitianOp& party_op(const SeparableMeasurement& m, Side side, std::size_t j) {
  return side == Side::A ? m.outcome(j).A : m.outcome(j).B;
}

std::size_t party_dim(const SeparableMeasurement& m, Side side) { return side == Side::A ? m.dA : m.dB; }

}  // namespace

HermitianOp evaluate(const SymbolicLabel& l, const Coefficients& q, const Coefficients& p,
                     const SeparableMeasurement& m) {
  const Coefficients& c = l.side == Side::A ? q : p;
  HermitianOp out(party_dim(m, l.side));
  for (const auto& t : l.terms) {
    auto it = c.find(t);
    if (it == c.end()) throw std::out_of_range("no coefficient for " + to_string(t));
    if (sgn(it->second) != 0) out = out + party_op(m, l.side, t.j).scaled(it->second);
  }
  return out;
}

ExactCheck verify_protocol_exact(const Tree& t, const Coefficients& q, const Coefficients& p,
                                 const SeparableMeasurement& m) {
  auto fail = [](std::string why) { return ExactCheck{false, std::move(why)}; };
  auto refs = leaves(t.root);
  for (const auto& r : refs) {
    auto iq = q.find(r), ip = p.find(r);
    if (iq == q.end() || ip == p.end()) return fail("missing coefficient for leaf " + to_string(r));
    if (sgn(iq->second) <= 0 || sgn(ip->second) <= 0) return fail("non-positive coefficient at leaf " + to_string(r));
  }
  if (t.root.children.size() != 1) return fail("root must have exactly one child");
  const TreeNode& mid = t.root.children.front();
  if (evaluate(t.root.label, q, p, m) != HermitianOp::identity(party_dim(m, t.root.side)))
    return fail("root label is not the identity");
  if (evaluate(mid.label, q, p, m) != HermitianOp::identity(party_dim(m, mid.side)))
    return fail("second root label is not the identity");

  std::string bad;
  std::function<bool(const TreeNode&)> sum_rule = [&](const TreeNode& n) {
    if (n.is_leaf()) return true;
    HermitianOp v = evaluate(n.label, q, p, m);
    for (const auto& c : n.children) {
      if (evaluate({n.side, branch_terms(c, n.side)}, q, p, m) != v) {
        bad = canonical_form(n, true);
        return false;
      }
      if (!sum_rule(c)) return false;
    }
    return true;
  };
  if (!sum_rule(t.root)) return fail("sum rule fails at node " + bad);

  for (const auto& c : t.ledger)
    if (evaluate(c.lhs, q, p, m) != evaluate(c.rhs, q, p, m)) return fail("ledger equality fails");

  std::set<std::size_t> covered;
  HermitianOp total(m.dA * m.dB);
  for (const auto& r : refs) {
    covered.insert(r.j);
    total = total + kron(m.outcome(r.j).A, m.outcome(r.j).B).scaled(q.at(r) * p.at(r));
  }
  if (covered.size() != m.size()) return fail("some outcome has no leaf");
  if (total != HermitianOp::identity(m.dA * m.dB)) return fail("leaf operators do not sum to the identity");
  return {};
}

namespace {

struct SideSolution {
  StrictSolution s;
  std::vector<LeafRef> vars;
};

SideSolution solve_side(const Tree& t, const SeparableMeasurement& m, Side side) {
  SideSolution out;
  out.vars = leaves(t.root);
  std::sort(out.vars.begin(), out.vars.end());
  std::map<LeafRef, std::size_t> index;
  for (std::size_t i = 0; i < out.vars.size(); ++i) index[out.vars[i]] = i;
  std::size_t d = party_dim(m, side);
  std::map<std::size_t, RealVector> vecs;
  auto vec = [&](std::size_t j) -> const RealVector& {
    auto it = vecs.find(j);
    if (it == vecs.end()) it = vecs.emplace(j, vectorize(party_op(m, side, j))).first;
    return it->second;
  };

  LPProblem p;
  p.n = out.vars.size();
  auto add_equation = [&](const std::vector<LeafRef>& plus, const std::vector<LeafRef>& minus, const RealVector& rhs) {
    for (std::size_t r = 0; r < d * d; ++r) {
      std::vector<ExactScalar> row(p.n);
      for (const auto& t : plus) row[index.at(t)] += vec(t.j)[r];
      for (const auto& t : minus) row[index.at(t)] -= vec(t.j)[r];
      p.A.push_back(std::move(row));
      p.b.push_back(rhs[r]);
    }
  };
  RealVector zero(d * d);
  for (const auto& c : t.ledger)
    if (c.side == side) add_equation(c.lhs.terms, c.rhs.terms, zero);
  RealVector id = vectorize(HermitianOp::identity(d));
  const TreeNode& mid = t.root.children.front();
  for (const TreeNode* n : {&t.root, &mid})
    if (n->side == side) add_equation(n->label.terms, {}, id);
  out.s = lp_max_min_slack(p);
  return out;
}

}  // namespace

std::optional<FeasibleAssignment> check_tree_feasibility(const Tree& t, const SeparableMeasurement& m,
                                                         std::size_t* lp_calls) {
  if (t.root.children.size() != 1) return std::nullopt;
  if (covered_outcomes(t).size() != m.size()) return std::nullopt;
  SideSolution a = solve_side(t, m, Side::A);
  SideSolution b = solve_side(t, m, Side::B);
  if (lp_calls) *lp_calls += 2;
  if (!a.s.feasible || !b.s.feasible) return std::nullopt;

  FeasibleAssignment fa;
  for (std::size_t i = 0; i < a.vars.size(); ++i) fa.q[a.vars[i]] = a.s.x[i];
  for (std::size_t i = 0; i < b.vars.size(); ++i) fa.p[b.vars[i]] = b.s.x[i];

  if (sgn(a.s.t) > 0 && sgn(b.s.t) > 0) {
    fa.tree = t;
    ExactCheck check = verify_protocol_exact(fa.tree, fa.q, fa.p, m);
    if (!check.ok) throw std::logic_error("feasible ledger but exact check failed: " + check.failure);
    return fa;
  }

  // Drop every branch whose operator vanishes, then re-check from scratch.
  std::function<bool(TreeNode&)> keep = [&](TreeNode& n) {
    if (evaluate(n.label, fa.q, fa.p, m).is_zero()) return false;
    if (n.is_leaf()) return true;
    std::vector<TreeNode> kept;
    for (auto& c : n.children)
      if (keep(c)) kept.push_back(std::move(c));
    n.children = std::move(kept);
    return !n.children.empty();
  };
  Tree pruned = t;
  if (!keep(pruned.root)) return std::nullopt;
  pruned.ledger = branch_constraints(pruned.root);
  finalize(pruned);
  pruned.ledger = normalize_ledger(branch_constraints(pruned.root));
  Coefficients q, p;
  for (const auto& r : leaves(pruned.root)) {
    q[r] = fa.q.at(r);
    p[r] = fa.p.at(r);
  }
  if (!verify_protocol_exact(pruned, q, p, m).ok) return std::nullopt;
  return FeasibleAssignment{std::move(pruned), std::move(q), std::move(p), true};
}

namespace {

struct Core {
  TreeNode node;
  std::vector<OpConstraint> ledger;
  std::string name;
  std::size_t round = 0;
};

bool in_frontier(const Core& c, Side side) { return c.node.is_leaf() || c.node.side != side; }

Side natural_root(const TreeNode& core) { return core.is_leaf() ? Side::B : opposite(core.side); }

std::string subset_key(Side side, const std::vector<std::size_t>& ids) {
  std::string s(1, side_char(side));
  for (std::size_t id : ids) s += "," + std::to_string(id);
  return s;
}

// Subsets of a sorted id list by size, then lexicographically.
std::vector<std::vector<std::size_t>> subsets_of(const std::vector<std::size_t>& ids, bool proper, bool limited) {
  std::vector<std::vector<std::size_t>> out;
  std::size_t n = ids.size();
  for (std::size_t size = 1; size <= n; ++size) {
    if (!proper && size != 1 && size != n) continue;
    if (limited && size > 2 && size != n) continue;
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(size), true);
    do {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < n; ++i)
        if (mask[i]) s.push_back(ids[i]);
      out.push_back(std::move(s));
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return out;
}

class Search {
 public:
  Search(const SeparableMeasurement& m, const SearchConfig& cfg) : m_(m), cfg_(cfg) {}

  SynthesisOutcome run() {
    if (cfg_.max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
    for (const auto& seed : seed_trees(m_)) {
      Core c{core_of(seed.root), {}, std::to_string(seed.root.label.terms.front().j), 0};
      seen_.insert(equivalence_signature(seed));
      cores_.push_back(std::move(c));
    }
    if (m_.size() == 1) {
      RoundStats r0;
      if (try_complete(cores_.front(), r0, 0)) return finish();
      out_.stats.rounds.push_back(r0);
    }

    std::vector<std::vector<std::size_t>> families = round_one_classes();
    for (std::size_t l = 1;; ++l) {
      Side side = l % 2 == 1 ? Side::B : Side::A;
      if (merge_round(l, side, families)) return finish();
      if (stop_) {
        out_.verdict = Verdict::INCONCLUSIVE_CAPPED;
        out_.stats.rounds_used = l;
        return finish();
      }
      families = look_ahead(l + 1, opposite(side));
      if (out_.stats.rounds.back().new_families == 0) {
        out_.verdict = out_.stats.capped ? Verdict::INCONCLUSIVE_CAPPED : Verdict::NO_LOCC_ANY_ROUNDS;
        out_.stats.rounds_used = l;
        return finish();
      }
      if (l == cfg_.max_rounds) {
        out_.verdict = out_.stats.capped ? Verdict::INCONCLUSIVE_CAPPED : Verdict::NO_LOCC_WITHIN_L;
        out_.stats.rounds_used = l;
        return finish();
      }
    }
  }

 private:
  SynthesisOutcome finish() {
    out_.stats.trees_total = cores_.size();
    out_.stats.lp_calls = 0;
    for (const auto& r : out_.stats.rounds) out_.stats.lp_calls += r.lp_calls;
    return std::move(out_);
  }

  void cap(std::string why) {
    out_.stats.capped = true;
    out_.stats.cap_events.push_back(std::move(why));
  }

  std::vector<std::vector<std::size_t>> round_one_classes() {
    RoundStats rs;
    rs.round = 1;
    rs.side = Side::B;
    rs.frontier = cores_.size();
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t id = 0; id < cores_.size(); ++id) {
      const HermitianOp& b = m_.outcome(id + 1).B;
      bool placed = false;
      for (auto& cl : classes)
        if (proportional(b, m_.outcome(cl.front() + 1).B)) {
          cl.push_back(id);
          placed = true;
          break;
        }
      if (!placed) classes.push_back({id});
    }
    std::vector<std::vector<std::size_t>> families;
    for (auto& cl : classes)
      if (cl.size() >= 2) families.push_back(std::move(cl));
    rs.families = rs.new_families = families.size();
    out_.stats.rounds.push_back(rs);
    return families;
  }

  Cone presented_cone(const Core& c, Side side) const {
    Tree t = present(c.node, side, {});
    Cone cone;
    for (std::size_t j : t.root.label.outcomes()) cone.generators.push_back(party_op(m_, side, j));
    return cone;
  }

  std::vector<std::vector<std::size_t>> look_ahead(std::size_t round, Side side) {
    RoundStats rs;
    rs.round = round;
    rs.side = side;
    std::vector<std::pair<std::size_t, Cone>> items;
    for (std::size_t id = 0; id < cores_.size(); ++id)
      if (in_frontier(cores_[id], side)) items.emplace_back(id, presented_cone(cores_[id], side));
    rs.frontier = items.size();
    FamilyOptions opt;
    opt.mode = ConeMode::RelativeInterior;
    opt.size_cap = cfg_.family_size_cap;
    opt.exhaustive = cfg_.exhaustive;
    FamilyResult fr = mutually_intersecting_families(items, opt);
    rs.lp_calls += fr.lp_calls;
    if (!fr.complete) cap("round " + std::to_string(round) + ": family enumeration above size cap");
    rs.families = fr.families.size();
    for (const auto& f : fr.families)
      if (!processed_families_.count(subset_key(side, f))) ++rs.new_families;
    out_.stats.rounds.push_back(rs);
    return fr.families;
  }

  bool try_complete(const Core& c, RoundStats& rs, std::size_t round) {
    Tree t = present(c.node, natural_root(c.node), c.ledger);
    if (covered_outcomes(t).size() != m_.size()) return false;
    ++rs.complete_checked;
    auto fa = check_tree_feasibility(t, m_, &rs.lp_calls);
    if (!fa) return false;
    LOCCProtocol proto;
    proto.tree = std::move(fa->tree);
    pad_to_depth(proto.tree, node_depth(proto.tree.root));
    proto.tree.id = cores_.size();
    proto.q = std::move(fa->q);
    proto.p = std::move(fa->p);
    for (const auto& [ref, qv] : proto.q) proto.r[ref] = qv * proto.p.at(ref);
    proto.rounds = round;
    out_.protocol = std::move(proto);
    out_.verdict = Verdict::LOCC_FOUND;
    out_.stats.rounds_used = round;
    return true;
  }

  // Returns true once a protocol is found.
  bool merge_round(std::size_t l, Side side, const std::vector<std::vector<std::size_t>>& families) {
    RoundStats& rs = out_.stats.rounds.back();
    for (const auto& fam : families) {
      if (!processed_families_.insert(subset_key(side, fam)).second) continue;
      bool limited = fam.size() > cfg_.family_size_cap && !cfg_.exhaustive;
      if (limited && cfg_.proper_subsets)
        cap("round " + std::to_string(l) + ": family of " + std::to_string(fam.size()) + " trees above size cap");
      for (const auto& sub : subsets_of(fam, cfg_.proper_subsets, limited)) {
        if (sub.size() == 1) {
          ++rs.singletons;
          continue;
        }
        if (!processed_subsets_.insert(subset_key(side, sub)).second) continue;

        std::vector<Tree> trees;
        std::size_t depth = 0;
        for (std::size_t id : sub) {
          trees.push_back(present(cores_[id].node, side, cores_[id].ledger));
          depth = std::max(depth, trees.back().depth);
        }
        bool congruent_pair = false;
        for (std::size_t i = 0; i < trees.size() && !congruent_pair; ++i)
          for (std::size_t k = i + 1; k < trees.size() && !congruent_pair; ++k)
            congruent_pair = congruent(trees[i].root.children.front(), trees[k].root.children.front());
        if (congruent_pair) {
          ++rs.congruent_skipped;
          continue;
        }
        ++rs.subsets;
        for (auto& t : trees) pad_to_depth(t, depth);
        Tree merged = merge_and_extend(trees, m_);
        Core c{core_of(merged.root), std::move(merged.ledger), "", l};
        Tree canonical = present(c.node, natural_root(c.node), c.ledger);
        if (!seen_.insert(equivalence_signature(canonical)).second) {
          ++rs.duplicates;
          continue;
        }
        if (cores_.size() >= cfg_.max_trees) {
          cap("round " + std::to_string(l) + ": tree limit " + std::to_string(cfg_.max_trees) + " reached");
          stop_ = true;
          return false;
        }
        c.name = "T" + std::to_string(cores_.size());
        std::vector<std::string> names;
        for (std::size_t id : sub) names.push_back(cores_[id].name);
        rs.merges.push_back(std::move(names));
        ++rs.trees_built;
        cores_.push_back(std::move(c));
        if (try_complete(cores_.back(), rs, l)) return true;
      }
    }
    return false;
  }

  const SeparableMeasurement& m_;
  SearchConfig cfg_;
  SynthesisOutcome out_;
  std::vector<Core> cores_;
  std::set<std::string> seen_;
  std::set<std::string> processed_families_;
  std::set<std::string> processed_subsets_;
  bool stop_ = false;
};

}  // namespace

SynthesisOutcome synthesize(const SeparableMeasurement& m, const SearchConfig& cfg) {
  return Search(m, cfg).run();
}

}  // namespace locc
