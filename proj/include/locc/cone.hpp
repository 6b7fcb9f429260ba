#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "locc/exact.hpp"

namespace locc {

// Convex cone generated by nonzero PSD operators of one dimension.
struct Cone {
  std::vector<HermitianOp> generators;

  std::size_t dim() const { return generators.empty() ? 0 : generators.front().dim(); }
};

enum class ConeMode {
  // Some common point other than 0 (generator coefficients >= 0).
  NonzeroPoint,
  // A common point expressible inside every cone with all generator
  // coefficients strictly positive, i.e. the relative interiors meet.
  RelativeInterior,
};

struct IntersectionWitness {
  std::vector<std::vector<ExactScalar>> coefficients;  // one list per cone
  HermitianOp point;                                    // trace 1
};

// Throws std::invalid_argument for fewer than two cones, empty cones, zero
// generators or mixed dimensions.
std::optional<IntersectionWitness> cones_intersect(const std::vector<Cone>& cones,
                                                   ConeMode mode = ConeMode::NonzeroPoint);

// lambda > 0 with x = lambda * y, if one exists. Throws on a zero operand.
std::optional<ExactScalar> proportional(const HermitianOp& x, const HermitianOp& y);

struct FamilyOptions {
  ConeMode mode = ConeMode::NonzeroPoint;
  std::size_t size_cap = 12;
  bool exhaustive = false;
};

struct FamilyResult {
  std::vector<std::vector<std::size_t>> families;  // sorted ids, sorted list
  bool complete = true;                            // false if a cap cut the search
  std::size_t lp_calls = 0;
};

// Every maximal id set (size >= 2) whose cones mutually intersect.
FamilyResult mutually_intersecting_families(const std::vector<std::pair<std::size_t, Cone>>& items,
                                            const FamilyOptions& opt = {});

}  // namespace locc
