#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "locc/engine.hpp"

namespace locc {

using FloatOp = Eigen::MatrixXcd;

FloatOp to_float(const HermitianOp& op);

// Positive square root. Eigenvalues in [-1e-10, 0) are clamped; anything more
// negative throws std::domain_error.
FloatOp psd_sqrt(const FloatOp& op);
// Inverse on the span of eigenvectors with eigenvalue > rank_tol * max.
FloatOp support_inverse(const FloatOp& op, double rank_tol = 1e-10);
// (X^dagger X)^+ X^dagger.
FloatOp pseudo_inverse(const FloatOp& x, double rank_tol = 1e-10);

struct KrausNode {
  Side side = Side::A;
  std::string path;  // "r", "r.0", "r.0.1", ...
  std::optional<LeafRef> leaf;
  double weight = 0;  // r = q * p at leaves
  FloatOp op;         // exact node operator, converted once
  FloatOp kraus;      // Kraus element of this branch (identity at the root pair)
  FloatOp acc;        // kraus times the previous accumulated product of this party
  // I - P for the measurement producing the children; absent at leaves.
  std::optional<FloatOp> completion;
  std::vector<KrausNode> children;
};

struct KrausProtocol {
  std::size_t dA = 0;
  std::size_t dB = 0;
  KrausNode root;
};

// Throws std::runtime_error naming the node when a local measurement fails to
// close within 1e-9.
KrausProtocol realize(const LOCCProtocol& p, const SeparableMeasurement& m, double rank_tol = 1e-10);

struct InstrumentReport {
  bool ok = true;
  double closure = 0;     // max over internal nodes of |sum K^dag K + (I - P) - I|
  double leaf = 0;        // max over leaves of |product - r A (x) B|
  double total = 0;       // |sum over leaves - I|
  double completion = 0;  // max norm of a completion path product
  std::vector<std::string> failures;
};

InstrumentReport verify_instrument(const KrausProtocol& kp, const SeparableMeasurement& m, double tol);

}  // namespace locc
