#include "random_instances.hpp"

#include <functional>

#include "fixtures.hpp"
#include "locc/cone.hpp"

namespace locc::random_instances {

namespace {

long uniform(std::mt19937& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

ExactScalar fraction(long n, long d) {
  ExactScalar x(n, d);
  x.canonicalize();
  return x;
}

bool singular(const HermitianOp& o) { return sgn(characteristic_polynomial(o).front()) == 0; }

HermitianOp random_projector(std::mt19937& rng) {
  while (true) {
    ExactComplex a(uniform(rng, -2, 2)), b(uniform(rng, -2, 2), uniform(rng, -1, 1));
    if (!a.is_zero() || !b.is_zero()) return HermitianOp::projector({a, b});
  }
}

// <v|v> / <v|O^{-1}|v> for the 2x2 invertible O and the range vector of P.
ExactScalar max_weight(const HermitianOp& o, const HermitianOp& p) {
  // For P = |v><v|/<v|v>, <v|O^-1|v>/<v|v> = tr(O^-1 P) and O^-1 = adj(O)/det(O).
  ExactComplex det = o(0, 0) * o(1, 1) - o(0, 1) * o(1, 0);
  ExactComplex tr = o(1, 1) * p(0, 0) - o(0, 1) * p(1, 0) - o(1, 0) * p(0, 1) + o(0, 0) * p(1, 1);
  return det.re / tr.re;
}

std::vector<HermitianOp> split(std::mt19937& rng, const HermitianOp& o, std::size_t k) {
  std::vector<HermitianOp> parts;
  HermitianOp rest = o;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (o.dim() == 1 || o.dim() > 2 || singular(rest)) {
      ExactScalar t = fraction(uniform(rng, 1, 3), uniform(rng, 2, 5) + 3);
      parts.push_back(rest.scaled(t));
      rest = rest.scaled(1 - t);
      continue;
    }
    HermitianOp p = random_projector(rng);
    static const long fracs[][2] = {{1, 1}, {1, 2}, {1, 3}, {2, 3}, {1, 1}};
    const auto& f = fracs[uniform(rng, 0, 4)];
    ExactScalar s = max_weight(rest, p) * fraction(f[0], f[1]);
    parts.push_back(p.scaled(s));
    rest = rest - p.scaled(s);
  }
  parts.push_back(rest);
  return parts;
}

struct Builder {
  std::mt19937& rng;
  std::vector<std::pair<HermitianOp, HermitianOp>> leaf_ops;

  // Node of side `side` carrying accumulated operators (a, b).
  TreeNode gen(Side side, const HermitianOp& a, const HermitianOp& b, std::size_t depth_left, std::size_t budget,
               bool force_internal) {
    bool leaf = side == Side::A && !force_internal && (depth_left < 2 || budget == 1 || uniform(rng, 0, 3) == 0);
    if (leaf) {
      leaf_ops.emplace_back(a, b);
      return make_leaf({leaf_ops.size(), 0});
    }
    Side cs = opposite(side);
    std::size_t k = std::min<std::size_t>(budget, uniform(rng, 1, 3));
    if (side == Side::A && k == 1 && budget > 1) k = 2;
    auto parts = split(rng, cs == Side::A ? a : b, k);
    std::vector<std::size_t> share(k, 1);
    for (std::size_t extra = budget - k; extra > 0; --extra) ++share[uniform(rng, 0, static_cast<long>(k) - 1)];
    std::vector<TreeNode> children;
    for (std::size_t i = 0; i < k; ++i) {
      const HermitianOp& ca = cs == Side::A ? parts[i] : a;
      const HermitianOp& cb = cs == Side::B ? parts[i] : b;
      children.push_back(gen(cs, ca, cb, depth_left - 1, share[i], false));
    }
    return make_node(side, std::move(children));
  }
};

ExactScalar ratio(const HermitianOp& x, const HermitianOp& y) { return *proportional(x, y); }

}  // namespace

ExactScalar rational(std::mt19937& rng, long max_num, long max_den) {
  return fraction(uniform(rng, 1, max_num), uniform(rng, 1, max_den));
}

Generated locc_protocol(std::mt19937& rng, std::size_t dA, std::size_t dB, std::size_t max_leaves,
                        std::size_t max_depth) {
  Builder b{rng, {}};
  HermitianOp ia = HermitianOp::identity(dA), ib = HermitianOp::identity(dB);
  TreeNode mid = b.gen(Side::A, ia, ib, max_depth - 1, max_leaves, max_leaves > 1);

  Generated g;
  g.m.dA = dA;
  g.m.dB = dB;
  std::vector<LeafRef> assigned;
  std::map<std::size_t, std::size_t> copies;
  for (const auto& [a, bop] : b.leaf_ops) {
    std::size_t j = 0;
    for (std::size_t o = 1; o <= g.m.size() && j == 0; ++o)
      if (proportional(a, g.m.outcome(o).A) && proportional(bop, g.m.outcome(o).B)) j = o;
    if (j == 0) {
      g.m.outcomes.push_back({a, bop});
      j = g.m.size();
    }
    LeafRef r{j, ++copies[j]};
    g.q[r] = ratio(a, g.m.outcome(j).A);
    g.p[r] = ratio(bop, g.m.outcome(j).B);
    assigned.push_back(r);
  }
  std::function<void(TreeNode&)> assign = [&](TreeNode& n) {
    if (n.is_leaf()) {
      n.leaf = assigned[n.leaf->j - 1];
      return;
    }
    for (auto& c : n.children) assign(c);
  };
  assign(mid);
  g.tree.root = make_node(Side::B, {std::move(mid)});
  finalize(g.tree);
  g.tree.ledger = normalize_ledger(branch_constraints(g.tree.root));
  return g;
}

std::optional<SeparableMeasurement> pool_draw(std::mt19937& rng, std::size_t max_outcomes) {
  static const std::vector<HermitianOp> pool = [] {
    auto proj = [](ExactComplex a, ExactComplex b) { return HermitianOp::projector({a, b}); };
    return std::vector<HermitianOp>{HermitianOp::identity(2),
                                    proj(1, 0),
                                    proj(0, 1),
                                    proj(1, 1),
                                    proj(1, -1),
                                    proj(1, ExactComplex(0, 1)),
                                    proj(1, ExactComplex(0, -1)),
                                    HermitianOp::diagonal({1, 2}),
                                    HermitianOp::diagonal({2, 1})};
  }();
  SeparableMeasurement m{2, 2, {}};
  std::size_t n = static_cast<std::size_t>(uniform(rng, 2, static_cast<long>(max_outcomes)));
  long top = static_cast<long>(pool.size()) - 1;
  for (std::size_t i = 0; i < n; ++i) m.outcomes.push_back({pool[uniform(rng, 0, top)], pool[uniform(rng, 0, top)]});
  try {
    validate_measurement(m);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return m;
}

SeparableMeasurement commuting_no_instance(std::mt19937& rng) {
  auto on_axis = [](int axis, const ExactScalar& t) {
    return fixtures::bloch(axis == 0 ? t : 0, axis == 1 ? t : 0, axis == 2 ? t : 0);
  };
  auto inside = [](const std::vector<ExactScalar>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (abs(v[i]) >= 1) return false;
      for (std::size_t k = 0; k < i; ++k)
        if (v[i] == v[k]) return false;
    }
    return true;
  };
  while (true) {
    std::vector<ExactScalar> x(4), z(4);
    for (int i = 0; i < 3; ++i) x[i] = fraction(uniform(rng, -5, 5), 6);
    x[3] = -(x[0] + x[1] + x[2]);
    if (!inside(x)) continue;
    z[0] = fraction(uniform(rng, -5, 5), 6);
    z[1] = fraction(uniform(rng, -5, 5), 6);
    // z2 + z3 = -(z0 + z1), x2 z2 + x3 z3 = -(x0 z0 + x1 z1)
    ExactScalar s = -(z[0] + z[1]), w = -(x[0] * z[0] + x[1] * z[1]);
    z[2] = (w - x[3] * s) / (x[2] - x[3]);
    z[3] = s - z[2];
    if (!inside(z)) continue;
    int a = static_cast<int>(uniform(rng, 0, 2)), b = static_cast<int>(uniform(rng, 0, 2));
    SeparableMeasurement m{2, 2, {}};
    for (int i = 0; i < 4; ++i) m.outcomes.push_back({on_axis(a, x[i]), on_axis(b, z[i])});
    return m;
  }
}

Generated inject_congruent_copy(std::mt19937& rng, const Generated& g) {
  Generated out = g;
  std::vector<TreeNode*> hosts;
  std::function<void(TreeNode&, bool)> collect = [&](TreeNode& n, bool is_root) {
    if (n.is_leaf()) return;
    if (!is_root) hosts.push_back(&n);
    for (auto& c : n.children) collect(c, false);
  };
  collect(out.tree.root, true);
  if (hosts.empty()) return out;
  TreeNode& host = *hosts[uniform(rng, 0, static_cast<long>(hosts.size()) - 1)];
  const TreeNode& original = host.children[uniform(rng, 0, static_cast<long>(host.children.size()) - 1)];
  TreeNode copy = original;

  std::map<std::size_t, std::size_t> max_k;
  for (const auto& r : leaves(out.tree.root)) max_k[r.j] = std::max(max_k[r.j], r.k);
  long a = uniform(rng, 1, 4), b = uniform(rng, 1, 4);
  ExactScalar keep = fraction(a, a + b), moved = 1 - keep;
  bool split_q = host.side == Side::B;  // the copies are A-nodes: split Alice's coefficients
  std::function<void(TreeNode&)> renumber = [&](TreeNode& n) {
    if (!n.is_leaf()) {
      for (auto& c : n.children) renumber(c);
      return;
    }
    LeafRef old = *n.leaf, fresh{old.j, ++max_k[old.j]};
    n.leaf = fresh;
    Coefficients& split = split_q ? out.q : out.p;
    Coefficients& same = split_q ? out.p : out.q;
    same[fresh] = same.at(old);
    split[fresh] = split.at(old) * moved;
    split[old] = split.at(old) * keep;
  };
  renumber(copy);
  host.children.push_back(std::move(copy));
  finalize(out.tree);
  out.tree.ledger = normalize_ledger(branch_constraints(out.tree.root));
  return out;
}

}  // namespace locc::random_instances
