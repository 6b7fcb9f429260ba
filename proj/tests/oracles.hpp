#pragma once

// Reference implementations used only to cross-check the library. They share
// no code with the simplex or cone modules.

#include <optional>
#include <vector>

#include "locc/exact.hpp"

namespace locc::oracle {

using Matrix = std::vector<std::vector<ExactScalar>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m);

// Unique solution of A x = b, or nullopt if inconsistent or not unique.
std::optional<std::vector<ExactScalar>> solve_unique(const Matrix& a, const std::vector<ExactScalar>& b);

// Every basic feasible solution of {A x = b, x >= 0}, found by trying all
// column subsets with a unique solution.
std::vector<std::vector<ExactScalar>> vertices(const Matrix& a, const std::vector<ExactScalar>& b);

// Real equations "entry (i,j) of sum_k x_k M_k = target" written entry by
// entry, real and imaginary parts of every i <= j.
void append_entry_equations(Matrix& a, std::vector<ExactScalar>& b, std::size_t offset, std::size_t n_vars,
                            const std::vector<HermitianOp>& ops, const std::vector<ExactScalar>& signs,
                            const std::optional<HermitianOp>& target);

// Do two cones of PSD generators share a nonzero point (or, with
// relative_interior, a point with all coefficients strictly positive)?
bool cones_meet(const std::vector<HermitianOp>& c1, const std::vector<HermitianOp>& c2, bool relative_interior);

// Smallest eigenvalue by Eigen, for float cross-checks.
double min_eigenvalue(const HermitianOp& op);

// Is v in the row span of rows?
bool in_span(const Matrix& rows, const std::vector<ExactScalar>& v);

}  // namespace locc::oracle
