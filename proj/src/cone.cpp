#include "locc/cone.hpp"

#include <algorithm>
#include <stdexcept>

#include "locc/lp.hpp"

namespace locc {

namespace {

void check_cones(const std::vector<Cone>& cones) {
  if (cones.size() < 2) throw std::invalid_argument("cones_intersect: need at least two cones");
  std::size_t d = 0;
  for (const auto& c : cones) {
    if (c.generators.empty()) throw std::invalid_argument("cones_intersect: empty cone");
    for (const auto& g : c.generators) {
      if (d == 0) d = g.dim();
      if (g.dim() != d) throw std::invalid_argument("cones_intersect: dimension mismatch");
      if (g.is_zero()) throw std::invalid_argument("cones_intersect: zero generator");
    }
  }
}

bool all_single(const std::vector<Cone>& cones) {
  for (const auto& c : cones)
    if (c.generators.size() != 1) return false;
  return true;
}

}  // namespace

std::optional<ExactScalar> proportional(const HermitianOp& x, const HermitianOp& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("proportional: dimension mismatch");
  if (x.is_zero() || y.is_zero()) throw std::invalid_argument("proportional: zero operator");
  const auto& ex = x.entries();
  const auto& ey = y.entries();
  std::size_t k = 0;
  while (ey[k].is_zero()) ++k;
  ExactComplex ratio = ex[k] / ey[k];
  if (!ratio.is_real() || sgn(ratio.re) <= 0) return std::nullopt;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    if (ex[i].re != ratio.re * ey[i].re || ex[i].im != ratio.re * ey[i].im) return std::nullopt;
  }
  return ratio.re;
}

std::optional<IntersectionWitness> cones_intersect(const std::vector<Cone>& cones, ConeMode mode) {
  check_cones(cones);
  std::size_t d = cones.front().dim();

  if (all_single(cones)) {
    const HermitianOp& base = cones.front().generators.front();
    IntersectionWitness w;
    ExactScalar tr = base.trace();
    w.point = base.scaled(1 / tr);
    for (const auto& c : cones) {
      auto lambda = proportional(c.generators.front(), base);
      if (!lambda) return std::nullopt;
      w.coefficients.push_back({1 / (*lambda * tr)});
    }
    return w;
  }

  std::vector<std::size_t> offset;
  std::size_t n = 0;
  std::vector<std::vector<RealVector>> vecs;
  for (const auto& c : cones) {
    offset.push_back(n);
    n += c.generators.size();
    std::vector<RealVector> vs;
    for (const auto& g : c.generators) vs.push_back(vectorize(g));
    vecs.push_back(std::move(vs));
  }
  std::size_t rows_per = d * d;

  LPProblem p;
  p.n = n;
  for (std::size_t c = 1; c < cones.size(); ++c) {
    for (std::size_t r = 0; r < rows_per; ++r) {
      std::vector<ExactScalar> row(n);
      for (std::size_t g = 0; g < vecs[0].size(); ++g) row[offset[0] + g] = vecs[0][g][r];
      for (std::size_t g = 0; g < vecs[c].size(); ++g) row[offset[c] + g] = -vecs[c][g][r];
      ExactScalar rhs;
      if (mode == ConeMode::RelativeInterior)
        for (std::size_t j = 0; j < n; ++j) rhs -= row[j];
      p.A.push_back(std::move(row));
      p.b.push_back(std::move(rhs));
    }
  }
  if (mode == ConeMode::NonzeroPoint) {
    std::vector<ExactScalar> row(n);
    for (std::size_t g = 0; g < cones[0].generators.size(); ++g) row[offset[0] + g] = cones[0].generators[g].trace();
    p.A.push_back(std::move(row));
    p.b.push_back(1);
  }

  Feasibility f = lp_feasible(p);
  if (!f.feasible) return std::nullopt;
  std::vector<ExactScalar> x = std::move(*f.point);
  if (mode == ConeMode::RelativeInterior) {
    // Coefficients were shifted by one; rescale the common point to trace 1.
    for (auto& v : x) v += 1;
    ExactScalar tr;
    for (std::size_t g = 0; g < cones[0].generators.size(); ++g) tr += x[offset[0] + g] * cones[0].generators[g].trace();
    for (auto& v : x) v /= tr;
  }
  IntersectionWitness w;
  for (std::size_t c = 0; c < cones.size(); ++c)
    w.coefficients.emplace_back(x.begin() + static_cast<long>(offset[c]),
                                x.begin() + static_cast<long>(offset[c] + cones[c].generators.size()));
  std::vector<WeightedOp> terms;
  for (std::size_t g = 0; g < cones[0].generators.size(); ++g)
    terms.push_back({w.coefficients[0][g], std::cref(cones[0].generators[g])});
  w.point = op_linear_combine(d, terms);
  return w;
}

namespace {

using IdSet = std::vector<std::size_t>;  // positions into items, sorted

void bron_kerbosch(IdSet r, IdSet p, IdSet x, const std::vector<std::vector<bool>>& adj,
                   std::vector<IdSet>& out) {
  if (p.empty() && x.empty()) {
    if (r.size() >= 2) out.push_back(r);
    return;
  }
  std::size_t pivot = p.empty() ? x.front() : p.front();
  std::size_t best = 0;
  for (const IdSet* s : {&p, &x})
    for (std::size_t u : *s) {
      std::size_t deg = 0;
      for (std::size_t v : p) deg += adj[u][v];
      if (deg > best || (deg == best && u == pivot)) {
        best = deg;
        pivot = u;
      }
    }
  IdSet candidates;
  for (std::size_t v : p)
    if (!adj[pivot][v]) candidates.push_back(v);
  for (std::size_t v : candidates) {
    IdSet r2 = r, p2, x2;
    r2.push_back(v);
    std::sort(r2.begin(), r2.end());
    for (std::size_t u : p)
      if (adj[v][u]) p2.push_back(u);
    for (std::size_t u : x)
      if (adj[v][u]) x2.push_back(u);
    bron_kerbosch(std::move(r2), std::move(p2), std::move(x2), adj, out);
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
    std::sort(x.begin(), x.end());
  }
}

bool subset_of(const IdSet& a, const IdSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

FamilyResult mutually_intersecting_families(const std::vector<std::pair<std::size_t, Cone>>& items,
                                            const FamilyOptions& opt) {
  FamilyResult res;
  std::size_t n = items.size();
  auto test = [&](const IdSet& s) {
    std::vector<Cone> cs;
    for (std::size_t i : s) cs.push_back(items[i].second);
    ++res.lp_calls;
    return cones_intersect(cs, opt.mode).has_value();
  };

  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (test({i, j})) adj[i][j] = adj[j][i] = true;

  IdSet all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::vector<IdSet> cliques;
  bron_kerbosch({}, all, {}, adj, cliques);
  std::sort(cliques.begin(), cliques.end());

  std::vector<IdSet> found;
  for (const auto& clique : cliques) {
    if (clique.size() == 2 || test(clique)) {
      found.push_back(clique);
      continue;
    }
    if (clique.size() <= opt.size_cap || opt.exhaustive) {
      // Largest subsets first; anything inside an accepted subset is skipped.
      std::vector<IdSet> local;
      std::size_t k = clique.size();
      for (std::size_t size = k - 1; size >= 2; --size) {
        std::vector<bool> mask(k, false);
        std::fill(mask.begin(), mask.begin() + static_cast<long>(size), true);
        do {
          IdSet s;
          for (std::size_t i = 0; i < k; ++i)
            if (mask[i]) s.push_back(clique[i]);
          bool covered = false;
          for (const auto& l : local)
            if (subset_of(s, l)) {
              covered = true;
              break;
            }
          if (!covered && test(s)) local.push_back(s);
        } while (std::prev_permutation(mask.begin(), mask.end()));
      }
      found.insert(found.end(), local.begin(), local.end());
    } else {
      res.complete = false;
      for (std::size_t start = 0; start < clique.size(); ++start) {
        IdSet s{clique[start]};
        for (std::size_t i = 0; i < clique.size(); ++i) {
          if (i == start) continue;
          IdSet t = s;
          t.push_back(clique[i]);
          std::sort(t.begin(), t.end());
          if (test(t)) s = std::move(t);
        }
        if (s.size() >= 2) found.push_back(s);
      }
    }
  }

  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  for (std::size_t i = 0; i < found.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < found.size() && maximal; ++j)
      if (i != j && found[j].size() > found[i].size() && subset_of(found[i], found[j])) maximal = false;
    if (!maximal) continue;
    IdSet ids;
    for (std::size_t pos : found[i]) ids.push_back(items[pos].first);
    std::sort(ids.begin(), ids.end());
    res.families.push_back(std::move(ids));
  }
  std::sort(res.families.begin(), res.families.end());
  return res;
}

}  // namespace locc
