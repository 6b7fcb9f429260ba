#include "locc/lp.hpp"

#include <stdexcept>
#include <utility>

namespace locc {

namespace {

using Row = std::vector<ExactScalar>;

// Reduces [A | b] to RREF in place and drops zero rows. Returns false when a
// row reads 0 = nonzero.
bool reduce_rows(std::vector<Row>& m, std::size_t n) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m.size(); ++col) {
    std::size_t piv = r;
    while (piv < m.size() && sgn(m[piv][col]) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    ExactScalar inv = 1 / m[r][col];
    for (std::size_t c = col; c <= n; ++c)
      if (sgn(m[r][c]) != 0) m[r][c] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][col]) == 0) continue;
      ExactScalar f = m[i][col];
      for (std::size_t c = col; c <= n; ++c)
        if (sgn(m[r][c]) != 0) m[i][c] -= f * m[r][c];
    }
    ++r;
  }
  for (std::size_t i = r; i < m.size(); ++i)
    if (sgn(m[i][n]) != 0) return false;
  m.resize(r);
  return true;
}

class Tableau {
 public:
  // rows: reduced [A | b] with b >= 0. One artificial column per row.
  Tableau(std::vector<Row> rows, std::size_t n) : m_(rows.size()), n_(n), basis_(m_) {
    cols_ = n_ + m_;
    t_.assign(m_, Row(cols_ + 1));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = std::move(rows[i][j]);
      t_[i][n_ + i] = 1;
      t_[i][cols_] = std::move(rows[i][n_]);
      basis_[i] = n_ + i;
    }
    allowed_.assign(cols_, true);
  }

  // Minimizes cost . x over the current feasible basis. Returns false if
  // unbounded.
  bool minimize(const Row& cost) {
    cost_ = cost;
    d_.assign(cols_ + 1, ExactScalar(0));
    for (std::size_t j = 0; j <= cols_; ++j) d_[j] = j < cols_ ? cost_[j] : ExactScalar(0);
    for (std::size_t i = 0; i < m_; ++i) {
      const ExactScalar& cb = cost_[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(t_[i][j]) != 0) d_[j] -= cb * t_[i][j];
    }
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed_[j] && sgn(d_[j]) < 0 && !is_basic(j)) {
          enter = j;
          break;
        }
      if (enter == cols_) return true;
      std::size_t leave = m_;
      ExactScalar best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        ExactScalar ratio = t_[i][cols_] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  // After phase one: pivot remaining zero-level artificials out of the basis
  // and forbid artificial columns from re-entering.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(t_[i][j]) != 0 && !is_basic(j)) {
          pivot(i, j);
          break;
        }
    }
    for (std::size_t j = n_; j < cols_; ++j) allowed_[j] = false;
  }

  ExactScalar objective_value() const { return -d_[cols_]; }

  std::vector<ExactScalar> solution() const {
    std::vector<ExactScalar> x(n_);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = t_[i][cols_];
    return x;
  }

  std::size_t pivots() const { return pivots_; }
  std::size_t cols() const { return cols_; }

 private:
  bool is_basic(std::size_t j) const {
    for (std::size_t b : basis_)
      if (b == j) return true;
    return false;
  }

  void pivot(std::size_t r, std::size_t c) {
    ++pivots_;
    ExactScalar inv = 1 / t_[r][c];
    for (std::size_t j = 0; j <= cols_; ++j)
      if (sgn(t_[r][j]) != 0) t_[r][j] *= inv;
    auto eliminate = [&](Row& row) {
      if (sgn(row[c]) == 0) return;
      ExactScalar f = row[c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (sgn(t_[r][j]) != 0) row[j] -= f * t_[r][j];
    };
    for (std::size_t i = 0; i < m_; ++i)
      if (i != r) eliminate(t_[i]);
    eliminate(d_);
    basis_[r] = c;
  }

  std::size_t m_, n_, cols_ = 0;
  std::vector<Row> t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  Row cost_, d_;
  std::size_t pivots_ = 0;
};

}  // namespace

LPResult lp_solve(const LPProblem& p) {
  if (p.b.size() != p.A.size()) throw std::invalid_argument("LPProblem: rhs length differs from row count");
  for (const auto& row : p.A)
    if (row.size() != p.n) throw std::invalid_argument("LPProblem: row length differs from variable count");
  if (p.objective && p.objective->size() != p.n)
    throw std::invalid_argument("LPProblem: objective length differs from variable count");

  std::vector<Row> rows;
  rows.reserve(p.A.size());
  for (std::size_t i = 0; i < p.A.size(); ++i) {
    Row r(p.A[i]);
    r.push_back(p.b[i]);
    rows.push_back(std::move(r));
  }
  LPResult res;
  if (!reduce_rows(rows, p.n)) return res;
  for (auto& r : rows)
    if (sgn(r[p.n]) < 0)
      for (auto& x : r) x = -x;

  Tableau tab(std::move(rows), p.n);
  Row phase1(tab.cols(), ExactScalar(0));
  for (std::size_t j = p.n; j < tab.cols(); ++j) phase1[j] = 1;
  tab.minimize(phase1);
  if (sgn(tab.objective_value()) != 0) {
    res.pivots = tab.pivots();
    return res;
  }
  tab.expel_artificials();
  res.status = LPStatus::Optimal;
  if (p.objective) {
    Row cost(tab.cols(), ExactScalar(0));
    for (std::size_t j = 0; j < p.n; ++j) cost[j] = -(*p.objective)[j];
    if (!tab.minimize(cost)) res.status = LPStatus::Unbounded;
  }
  res.x = tab.solution();
  if (p.objective)
    for (std::size_t j = 0; j < p.n; ++j) res.value += (*p.objective)[j] * res.x[j];
  res.pivots = tab.pivots();
  return res;
}

Feasibility lp_feasible(const LPProblem& p) {
  LPProblem q = p;
  q.objective.reset();
  LPResult r = lp_solve(q);
  Feasibility f;
  f.feasible = r.status != LPStatus::Infeasible;
  if (f.feasible) f.point = std::move(r.x);
  return f;
}

StrictSolution lp_max_min_slack(const LPProblem& p) {
  // Variables: x (n), t, s (n), u.  x_i - t - s_i = 0,  t + u = 1.
  std::size_t n = p.n, total = 2 * n + 2;
  std::size_t t_col = n, u_col = 2 * n + 1;
  LPProblem q;
  q.n = total;
  for (std::size_t i = 0; i < p.A.size(); ++i) {
    Row r(total);
    for (std::size_t j = 0; j < n; ++j) r[j] = p.A[i][j];
    q.A.push_back(std::move(r));
    q.b.push_back(p.b[i]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    Row r(total);
    r[j] = 1;
    r[t_col] = -1;
    r[n + 1 + j] = -1;
    q.A.push_back(std::move(r));
    q.b.push_back(0);
  }
  Row r(total);
  r[t_col] = 1;
  r[u_col] = 1;
  q.A.push_back(std::move(r));
  q.b.push_back(1);
  Row obj(total);
  obj[t_col] = 1;
  q.objective = std::move(obj);

  StrictSolution out;
  LPResult res = lp_solve(q);
  if (res.status == LPStatus::Infeasible) return out;
  out.feasible = true;
  out.t = res.x[t_col];
  out.x.assign(res.x.begin(), res.x.begin() + static_cast<long>(n));
  return out;
}

}  // namespace locc
