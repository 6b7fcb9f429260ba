#include "locc/measurement.hpp"

#include <tuple>

#include "locc/cone.hpp"
#include "locc/lp.hpp"

namespace locc {

void check_measurement(const SeparableMeasurement& m) {
  if (m.dA == 0 || m.dB == 0) throw InvalidMeasurement("dimensions must be positive");
  if (m.outcomes.empty()) throw InvalidMeasurement("measurement has no outcomes");
  for (std::size_t j = 1; j <= m.size(); ++j) {
    const Outcome& o = m.outcome(j);
    for (auto [op, d, name] : {std::tuple{&o.A, m.dA, "A"}, std::tuple{&o.B, m.dB, "B"}}) {
      std::string where = "outcome " + std::to_string(j) + ": " + name;
      if (op->dim() != d) throw InvalidMeasurement(where + " has dimension " + std::to_string(op->dim()) +
                                                   ", expected " + std::to_string(d));
      if (op->is_zero()) throw InvalidMeasurement(where + " is the zero operator");
      if (!is_psd(*op)) throw InvalidMeasurement(where + " is not positive semidefinite (is_psd failed)");
    }
  }
  for (std::size_t j = 1; j <= m.size(); ++j)
    for (std::size_t k = j + 1; k <= m.size(); ++k)
      if (proportional(m.outcome(j).A, m.outcome(k).A) && proportional(m.outcome(j).B, m.outcome(k).B))
        throw InvalidMeasurement("outcomes " + std::to_string(j) + " and " + std::to_string(k) +
                                 " are proportional products");
}

std::vector<ExactScalar> validate_measurement(const SeparableMeasurement& m) {
  check_measurement(m);
  std::size_t d = m.dA * m.dB;
  std::vector<RealVector> cols;
  for (const auto& o : m.outcomes) cols.push_back(vectorize(kron(o.A, o.B)));
  RealVector id = vectorize(HermitianOp::identity(d));
  LPProblem p;
  p.n = m.size();
  for (std::size_t r = 0; r < d * d; ++r) {
    std::vector<ExactScalar> row(p.n);
    for (std::size_t j = 0; j < p.n; ++j) row[j] = cols[j][r];
    p.A.push_back(std::move(row));
    p.b.push_back(id[r]);
  }
  StrictSolution s = lp_max_min_slack(p);
  if (!s.feasible) throw NotASeparableMeasurement("sum_j r_j A_j (x) B_j = I has no solution with r >= 0");
  if (sgn(s.t) <= 0)
    throw NotASeparableMeasurement("sum_j r_j A_j (x) B_j = I forces some r_j = 0");
  return s.x;
}

}  // namespace locc
