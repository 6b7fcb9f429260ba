#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace locc {

// Canonical rational (gcd 1, positive denominator) maintained by GMP.
using ExactScalar = mpq_class;

// Accepts "p", "p/q", "-p/q". Throws std::invalid_argument on malformed
// text or a zero denominator.
ExactScalar parse_scalar(std::string_view text);
std::string to_string(const ExactScalar& x);

struct ExactComplex {
  ExactScalar re;
  ExactScalar im;

  ExactComplex() = default;
  ExactComplex(ExactScalar r) : re(std::move(r)) {}
  ExactComplex(ExactScalar r, ExactScalar i) : re(std::move(r)), im(std::move(i)) {}
  ExactComplex(int r) : re(r) {}

  ExactComplex conj() const { return {re, -im}; }
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
};

ExactComplex operator+(ExactComplex a, const ExactComplex& b);
ExactComplex operator-(ExactComplex a, const ExactComplex& b);
ExactComplex operator-(const ExactComplex& a);
ExactComplex operator*(ExactComplex a, const ExactComplex& b);
ExactComplex operator/(const ExactComplex& a, const ExactComplex& b);
bool operator==(const ExactComplex& a, const ExactComplex& b);
inline bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

// Dense square matrix with exact entries. The Hermitian invariant is checked
// on construction; arithmetic that preserves it skips the check.
class HermitianOp {
 public:
  HermitianOp() = default;
  explicit HermitianOp(std::size_t dim);
  HermitianOp(std::size_t dim, std::vector<ExactComplex> row_major);

  static HermitianOp identity(std::size_t dim);
  static HermitianOp diagonal(const std::vector<ExactScalar>& diag);
  // |v><v| / <v|v>; v must be nonzero.
  static HermitianOp projector(const std::vector<ExactComplex>& v);

  std::size_t dim() const { return dim_; }
  const ExactComplex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }
  const std::vector<ExactComplex>& entries() const { return entries_; }

  ExactScalar trace() const;
  bool is_zero() const;

  HermitianOp operator+(const HermitianOp& o) const;
  HermitianOp operator-(const HermitianOp& o) const;
  HermitianOp scaled(const ExactScalar& c) const;

  friend bool operator==(const HermitianOp& a, const HermitianOp& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const HermitianOp& a, const HermitianOp& b) { return !(a == b); }

 private:
  struct Unchecked {};
  HermitianOp(std::size_t dim, std::vector<ExactComplex> row_major, Unchecked);
  friend HermitianOp kron(const HermitianOp&, const HermitianOp&);
  friend HermitianOp unvectorize(std::size_t, const std::vector<ExactScalar>&);

  std::size_t dim_ = 0;
  std::vector<ExactComplex> entries_;
};

inline HermitianOp operator*(const ExactScalar& c, const HermitianOp& op) { return op.scaled(c); }

HermitianOp kron(const HermitianOp& a, const HermitianOp& b);

using RealVector = std::vector<ExactScalar>;

// Basis order: the d diagonal entries, then (Re, Im) of entry (i, j) for each
// i < j in row-major order.
RealVector vectorize(const HermitianOp& op);
HermitianOp unvectorize(std::size_t dim, const RealVector& v);

// Coefficients c_0..c_d of det(xI - op), c_d = 1, by Faddeev-LeVerrier.
std::vector<ExactScalar> characteristic_polynomial(const HermitianOp& op);
bool is_psd(const HermitianOp& op);

struct WeightedOp {
  ExactScalar coeff;
  std::reference_wrapper<const HermitianOp> op;
};

// Sum of nonnegatively weighted operators of dimension dim. Throws
// std::invalid_argument on a dimension mismatch or a negative coefficient.
HermitianOp op_linear_combine(std::size_t dim, const std::vector<WeightedOp>& terms);

}  // namespace locc
