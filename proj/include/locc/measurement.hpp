#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "locc/exact.hpp"

namespace locc {

struct Outcome {
  HermitianOp A;
  HermitianOp B;

  bool operator==(const Outcome&) const = default;
};

// Outcome j (1-based in all user-facing output) is outcomes[j - 1].
struct SeparableMeasurement {
  std::size_t dA = 0;
  std::size_t dB = 0;
  std::vector<Outcome> outcomes;

  std::size_t size() const { return outcomes.size(); }
  const Outcome& outcome(std::size_t j) const { return outcomes.at(j - 1); }
  bool operator==(const SeparableMeasurement&) const = default;
};

class InvalidMeasurement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotASeparableMeasurement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimensions, Hermitian PSD nonzero operators, no two outcomes equal up to a
// positive scaling of the product. Throws InvalidMeasurement naming the
// offending outcome.
void check_measurement(const SeparableMeasurement& m);

// Strictly positive r_j with sum_j r_j A_j (x) B_j = I, from the max-min-slack
// LP. Throws NotASeparableMeasurement when only t = 0 is attainable.
std::vector<ExactScalar> validate_measurement(const SeparableMeasurement& m);

}  // namespace locc
