#include "fixtures.hpp"

#include <array>

namespace locc::fixtures {

namespace {

ExactScalar q(long n, long d = 1) {
  ExactScalar x(n, d);
  x.canonicalize();
  return x;
}

// [a+b] style projector onto |i> + s|k> in dimension d (s = +-1 or +-i).
HermitianOp superposition(std::size_t d, std::size_t i, std::size_t k, ExactComplex s) {
  std::vector<ExactComplex> v(d);
  v[i] = 1;
  v[k] = s;
  return HermitianOp::projector(v);
}

}  // namespace

HermitianOp ket_projector(std::size_t d, const std::vector<ExactComplex>& v) {
  std::vector<ExactComplex> w(v);
  w.resize(d);
  return HermitianOp::projector(w);
}

HermitianOp basis(std::size_t d, std::size_t i) {
  std::vector<ExactScalar> diag(d);
  diag[i] = 1;
  return HermitianOp::diagonal(diag);
}

HermitianOp bloch(const ExactScalar& x, const ExactScalar& y, const ExactScalar& z) {
  ExactScalar h = q(1, 2);
  return HermitianOp(2, {ExactComplex(h * (1 + z)), ExactComplex(h * x, -h * y), ExactComplex(h * x, h * y),
                         ExactComplex(h * (1 - z))});
}

SeparableMeasurement bennett9() {
  auto p = [](std::size_t i) { return basis(3, i); };
  auto plus = [](std::size_t i, std::size_t k) { return superposition(3, i, k, 1); };
  auto minus = [](std::size_t i, std::size_t k) { return superposition(3, i, k, -1); };
  return {3, 3,
          {{p(1), p(1)},
           {p(0), plus(0, 1)},
           {p(0), minus(0, 1)},
           {p(2), plus(1, 2)},
           {p(2), minus(1, 2)},
           {plus(1, 2), p(0)},
           {minus(1, 2), p(0)},
           {plus(0, 1), p(2)},
           {minus(0, 1), p(2)}}};
}

SeparableMeasurement product_basis(std::size_t dA, std::size_t dB) {
  SeparableMeasurement m{dA, dB, {}};
  for (std::size_t b = 0; b < dB; ++b)
    for (std::size_t a = 0; a < dA; ++a) m.outcomes.push_back({basis(dA, a), basis(dB, b)});
  return m;
}

SeparableMeasurement conditional_basis() {
  return {2, 2,
          {{basis(2, 0), basis(2, 0)},
           {basis(2, 0), basis(2, 1)},
           {basis(2, 1), superposition(2, 0, 1, 1)},
           {basis(2, 1), superposition(2, 0, 1, -1)}}};
}

SeparableMeasurement subset_merge() {
  HermitianOp i2 = HermitianOp::identity(2);
  HermitianOp b1 = basis(2, 0).scaled(q(1, 4));
  HermitianOp a1 = basis(2, 0).scaled(q(1, 2));
  HermitianOp a2 = superposition(2, 0, 1, 1).scaled(q(1, 2));
  HermitianOp a4 = a1 + a2;
  return {2, 2,
          {{a1, b1}, {a2, b1}, {i2, b1}, {a4, i2 - b1.scaled(2)}, {i2 - a4, i2 - b1}}};
}

SeparableMeasurement repeated_outcome() {
  HermitianOp i2 = HermitianOp::identity(2);
  HermitianOp a1 = basis(2, 0).scaled(q(1, 4));
  HermitianOp a2 = superposition(2, 0, 1, 1).scaled(q(1, 4));
  HermitianOp a3 = superposition(2, 0, 1, ExactComplex(0, 1)).scaled(q(1, 4));
  HermitianOp a4 = (a1 + a2).scaled(q(1, 2));
  HermitianOp a5 = (a1 + a3).scaled(q(1, 3));
  HermitianOp a6 = i2 - a4.scaled(2);
  HermitianOp a7 = i2 - a5.scaled(3);
  HermitianOp b1 = basis(3, 0).scaled(q(1, 4));
  HermitianOp b6 = basis(3, 0).scaled(q(1, 2)) + superposition(3, 1, 2, 1);
  HermitianOp b7 = basis(3, 0).scaled(q(1, 2)) + superposition(3, 1, 2, -1);
  return {2, 3,
          {{a1, b1},
           {a2, b1.scaled(q(1, 2))},
           {a3, b1.scaled(q(1, 3))},
           {a4, b6 - b1},
           {a5, (b7 - b1).scaled(q(1, 2))},
           {a6, b6},
           {a7, b7}}};
}

SeparableMeasurement dead_start() {
  std::vector<std::array<ExactScalar, 3>> a = {
      {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {q(-2, 3), q(-1, 3), q(-2, 3)}, {q(-1, 3), q(-2, 3), q(-2, 3)}};
  std::vector<std::size_t> perm = {1, 0, 2, 4, 3};
  SeparableMeasurement m{2, 2, {}};
  for (std::size_t j = 0; j < a.size(); ++j) {
    const auto& x = a[j];
    const auto& y = a[perm[j]];
    m.outcomes.push_back({bloch(x[0], x[1], x[2]), bloch(y[0], y[1], y[2])});
  }
  ExactScalar h = q(1, 2);
  for (std::size_t j = 0; j < a.size(); ++j) {
    const auto& x = a[j];
    const auto& y = a[perm[j]];
    m.outcomes.push_back({bloch(-h * x[0], -h * x[1], -h * x[2]), bloch(h * y[0], h * y[1], h * y[2])});
    m.outcomes.push_back({bloch(h * x[0], h * x[1], h * x[2]), bloch(-h * y[0], -h * y[1], -h * y[2])});
  }
  return m;
}

std::vector<Named> all() {
  return {{"bennett9", bennett9()},
          {"product_basis_2x2", product_basis(2, 2)},
          {"product_basis_3x3", product_basis(3, 3)},
          {"conditional_basis", conditional_basis()},
          {"subset_merge", subset_merge()},
          {"repeated_outcome", repeated_outcome()},
          {"dead_start", dead_start()}};
}

}  // namespace locc::fixtures
