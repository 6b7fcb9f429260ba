#pragma once

#include <string>
#include <vector>

#include "locc/measurement.hpp"

namespace locc::fixtures {

HermitianOp ket_projector(std::size_t d, const std::vector<ExactComplex>& v);
// Standard-basis projector |i><i| in dimension d.
HermitianOp basis(std::size_t d, std::size_t i);
// (I + n.sigma) / 2 for a rational Bloch vector n.
HermitianOp bloch(const ExactScalar& x, const ExactScalar& y, const ExactScalar& z);

SeparableMeasurement bennett9();
SeparableMeasurement product_basis(std::size_t dA, std::size_t dB);
// Alice measures Z; Bob measures Z after outcome 0 and X after outcome 1.
SeparableMeasurement conditional_basis();
SeparableMeasurement subset_merge();
SeparableMeasurement repeated_outcome();
SeparableMeasurement dead_start();

struct Named {
  std::string name;
  SeparableMeasurement m;
};
std::vector<Named> all();

}  // namespace locc::fixtures
