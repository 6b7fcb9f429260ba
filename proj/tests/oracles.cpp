#include "oracles.hpp"

#include <Eigen/Eigenvalues>

namespace locc::oracle {

std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t cols = m.front().size(), row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    ExactScalar inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][c]) == 0) continue;
      ExactScalar f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::optional<std::vector<ExactScalar>> solve_unique(const Matrix& a, const std::vector<ExactScalar>& b) {
  std::size_t n = a.empty() ? 0 : a.front().size();
  Matrix aug = a;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  if (piv.size() != n) return std::nullopt;
  std::vector<ExactScalar> x(n);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][n];
  return x;
}

std::vector<std::vector<ExactScalar>> vertices(const Matrix& a, const std::vector<ExactScalar>& b) {
  std::size_t n = a.empty() ? 0 : a.front().size();
  std::vector<std::vector<ExactScalar>> out;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) cols.push_back(i);
    Matrix sub(a.size(), std::vector<ExactScalar>(cols.size()));
    for (std::size_t r = 0; r < a.size(); ++r)
      for (std::size_t k = 0; k < cols.size(); ++k) sub[r][k] = a[r][cols[k]];
    auto xs = solve_unique(sub, b);
    if (!xs) continue;
    bool nonneg = true;
    for (const auto& v : *xs) nonneg = nonneg && sgn(v) >= 0;
    if (!nonneg) continue;
    std::vector<ExactScalar> x(n);
    for (std::size_t k = 0; k < cols.size(); ++k) x[cols[k]] = (*xs)[k];
    out.push_back(std::move(x));
  }
  return out;
}

void append_entry_equations(Matrix& a, std::vector<ExactScalar>& b, std::size_t offset, std::size_t n_vars,
                            const std::vector<HermitianOp>& ops, const std::vector<ExactScalar>& signs,
                            const std::optional<HermitianOp>& target) {
  std::size_t d = ops.front().dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      for (int part = 0; part < 2; ++part) {
        if (i == j && part == 1) continue;
        std::vector<ExactScalar> row(n_vars);
        for (std::size_t k = 0; k < ops.size(); ++k)
          row[offset + k] = signs[k] * (part == 0 ? ops[k](i, j).re : ops[k](i, j).im);
        a.push_back(std::move(row));
        b.push_back(target ? (part == 0 ? (*target)(i, j).re : (*target)(i, j).im) : ExactScalar(0));
      }
}

bool cones_meet(const std::vector<HermitianOp>& c1, const std::vector<HermitianOp>& c2, bool relative_interior) {
  // x = (alpha, beta) >= 0, sum alpha g - sum beta h = 0, trace(sum alpha g) = 1.
  std::size_t n = c1.size() + c2.size();
  std::vector<HermitianOp> ops(c1);
  ops.insert(ops.end(), c2.begin(), c2.end());
  std::vector<ExactScalar> signs(n, 1);
  for (std::size_t k = c1.size(); k < n; ++k) signs[k] = -1;
  Matrix a;
  std::vector<ExactScalar> b;
  append_entry_equations(a, b, 0, n, ops, signs, std::nullopt);
  std::vector<ExactScalar> tr(n);
  for (std::size_t k = 0; k < c1.size(); ++k) tr[k] = c1[k].trace();
  a.push_back(tr);
  b.push_back(1);
  auto vs = vertices(a, b);
  if (!relative_interior) return !vs.empty();
  for (std::size_t i = 0; i < n; ++i) {
    bool some = false;
    for (const auto& v : vs) some = some || sgn(v[i]) > 0;
    if (!some) return false;
  }
  return true;
}

double min_eigenvalue(const HermitianOp& op) {
  Eigen::MatrixXcd m(op.dim(), op.dim());
  for (std::size_t i = 0; i < op.dim(); ++i)
    for (std::size_t j = 0; j < op.dim(); ++j) m(i, j) = {op(i, j).re.get_d(), op(i, j).im.get_d()};
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m).eigenvalues().minCoeff();
}

bool in_span(const Matrix& rows, const std::vector<ExactScalar>& v) {
  Matrix m = rows;
  std::size_t before = rref(m).size();
  m.push_back(v);
  return rref(m).size() == before;
}

}  // namespace locc::oracle
