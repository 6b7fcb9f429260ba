#include "locc/kraus.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace locc {

namespace {

using Eigen::MatrixXcd;
using Solver = Eigen::SelfAdjointEigenSolver<MatrixXcd>;

double max_abs(const MatrixXcd& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

Solver hermitian_eigen(const FloatOp& op) {
  double scale = std::max(1.0, max_abs(op));
  if (max_abs(op - op.adjoint()) > 1e-12 * scale) throw std::invalid_argument("operator is not Hermitian");
  return Solver(MatrixXcd((op + op.adjoint()) / 2.0));
}

double spectral_norm(const MatrixXcd& x) {
  if (x.size() == 0) return 0;
  return Eigen::JacobiSVD<MatrixXcd>(x).singularValues()(0);
}

}  // namespace

FloatOp to_float(const HermitianOp& op) {
  FloatOp out(op.dim(), op.dim());
  for (std::size_t i = 0; i < op.dim(); ++i)
    for (std::size_t j = 0; j < op.dim(); ++j) out(i, j) = {op(i, j).re.get_d(), op(i, j).im.get_d()};
  return out;
}

FloatOp psd_sqrt(const FloatOp& op) {
  Solver es = hermitian_eigen(op);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-10) throw std::domain_error("psd_sqrt: eigenvalue " + std::to_string(ev(i)) + " below -1e-10");
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return es.eigenvectors() * ev.cast<std::complex<double>>().asDiagonal() * es.eigenvectors().adjoint();
}

FloatOp support_inverse(const FloatOp& op, double rank_tol) {
  Solver es = hermitian_eigen(op);
  Eigen::VectorXd ev = es.eigenvalues();
  double top = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = (top > 0 && ev(i) > rank_tol * top) ? 1.0 / ev(i) : 0.0;
  return es.eigenvectors() * ev.cast<std::complex<double>>().asDiagonal() * es.eigenvectors().adjoint();
}

FloatOp pseudo_inverse(const FloatOp& x, double rank_tol) {
  return support_inverse(x.adjoint() * x, rank_tol) * x.adjoint();
}

namespace {

struct Realizer {
  const LOCCProtocol& p;
  const SeparableMeasurement& m;
  double rank_tol;

  std::size_t dim(Side s) const { return s == Side::A ? m.dA : m.dB; }

  FloatOp node_op(const TreeNode& n) const { return to_float(evaluate(n.label, p.q, p.p, m)); }

  // acc[0] for A, acc[1] for B: latest accumulated product of each party.
  void children(const TreeNode& n, KrausNode& out, std::array<FloatOp, 2> acc) const {
    if (n.is_leaf()) {
      out.weight = p.r.at(*n.leaf).get_d();
      return;
    }
    Side cs = opposite(n.side);
    const FloatOp& prev = acc[cs == Side::A ? 0 : 1];
    FloatOp id = FloatOp::Identity(dim(cs), dim(cs));
    FloatOp pinv = pseudo_inverse(prev, rank_tol);
    FloatOp proj = prev * pinv;
    out.completion = id - proj;
    FloatOp sum = *out.completion;
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      const TreeNode& c = n.children[i];
      KrausNode kc;
      kc.side = c.side;
      kc.path = out.path + "." + std::to_string(i);
      kc.leaf = c.leaf;
      kc.op = node_op(c);
      FloatOp mm = psd_sqrt(kc.op) * pinv;
      kc.kraus = psd_sqrt(mm.adjoint() * mm);
      kc.acc = kc.kraus * prev;
      sum += kc.kraus.adjoint() * kc.kraus;
      auto next = acc;
      next[cs == Side::A ? 0 : 1] = kc.acc;
      children(c, kc, next);
      out.children.push_back(std::move(kc));
    }
    double residual = max_abs(sum - id);
    if (residual > 1e-9)
      throw std::runtime_error("measurement at node " + out.path + " (" + canonical_form(n, true) +
                               ") does not close: residual " + std::to_string(residual));
  }
};

}  // namespace

KrausProtocol realize(const LOCCProtocol& p, const SeparableMeasurement& m, double rank_tol) {
  Realizer r{p, m, rank_tol};
  const TreeNode& root = p.tree.root;
  if (root.children.size() != 1) throw std::invalid_argument("protocol tree must have a double root");
  const TreeNode& mid = root.children.front();
  std::array<FloatOp, 2> acc = {FloatOp::Identity(m.dA, m.dA), FloatOp::Identity(m.dB, m.dB)};

  KrausProtocol kp{m.dA, m.dB, {}};
  KrausNode& kr = kp.root;
  kr.side = root.side;
  kr.path = "r";
  kr.op = kr.kraus = kr.acc = FloatOp::Identity(r.dim(root.side), r.dim(root.side));
  KrausNode km;
  km.side = mid.side;
  km.path = "r.0";
  km.leaf = mid.leaf;
  km.op = km.kraus = km.acc = FloatOp::Identity(r.dim(mid.side), r.dim(mid.side));
  r.children(mid, km, acc);
  kr.children.push_back(std::move(km));
  return kp;
}

namespace {

struct Verifier {
  const KrausProtocol& kp;
  const SeparableMeasurement& m;
  double tol;
  InstrumentReport rep;
  FloatOp total;

  std::size_t dim(Side s) const { return s == Side::A ? kp.dA : kp.dB; }

  void fail(std::string what) {
    rep.ok = false;
    rep.failures.push_back(std::move(what));
  }

  void walk(const KrausNode& n, const std::array<FloatOp, 2>& acc) {
    if (n.children.empty()) {
      if (!n.leaf) {
        fail("node " + n.path + " has no children and no outcome");
        return;
      }
      const Outcome& o = m.outcome(n.leaf->j);
      FloatOp expect = n.weight * to_float(kron(o.A, o.B));
      FloatOp got = Eigen::kroneckerProduct(FloatOp(acc[0].adjoint() * acc[0]), FloatOp(acc[1].adjoint() * acc[1]));
      total += got;
      double res = max_abs(got - expect);
      rep.leaf = std::max(rep.leaf, res);
      if (res > tol) fail("leaf " + n.path + " (" + to_string(*n.leaf) + ") residual " + std::to_string(res));
      return;
    }
    Side cs = n.children.front().side;
    std::size_t k = cs == Side::A ? 0 : 1;
    FloatOp id = FloatOp::Identity(dim(cs), dim(cs));
    FloatOp sum = n.completion ? *n.completion : FloatOp::Zero(dim(cs), dim(cs));
    for (const auto& c : n.children) sum += c.kraus.adjoint() * c.kraus;
    double res = max_abs(sum - id);
    rep.closure = std::max(rep.closure, res);
    if (res > tol) fail("closure at node " + n.path + " residual " + std::to_string(res));
    if (n.completion) {
      double norm = spectral_norm(*n.completion * acc[k]);
      rep.completion = std::max(rep.completion, norm);
      if (norm > tol) fail("completion path at node " + n.path + " has norm " + std::to_string(norm));
    }
    for (const auto& c : n.children) {
      auto next = acc;
      next[k] = c.kraus * acc[k];
      walk(c, next);
    }
  }
};

}  // namespace

InstrumentReport verify_instrument(const KrausProtocol& kp, const SeparableMeasurement& m, double tol) {
  Verifier v{kp, m, tol, {}, FloatOp::Zero(kp.dA * kp.dB, kp.dA * kp.dB)};
  std::array<FloatOp, 2> acc = {FloatOp::Identity(kp.dA, kp.dA), FloatOp::Identity(kp.dB, kp.dB)};
  if (kp.root.children.size() != 1) {
    v.fail("root must have exactly one child");
    return v.rep;
  }
  v.walk(kp.root.children.front(), acc);
  v.rep.total = max_abs(v.total - FloatOp::Identity(kp.dA * kp.dB, kp.dA * kp.dB));
  if (v.rep.total > tol) v.fail("leaf products sum to I with residual " + std::to_string(v.rep.total));
  return v.rep;
}

}  // namespace locc
