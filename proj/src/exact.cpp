#include "locc/exact.hpp"

#include <stdexcept>

namespace locc {

ExactScalar parse_scalar(std::string_view text) {
  auto bad = [&](const char* why) {
    return std::invalid_argument("malformed fraction \"" + std::string(text) + "\": " + why);
  };
  if (text.empty()) throw bad("empty");
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw bad("expected p or p/q with decimal integers");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw bad("zero denominator");
  ExactScalar q(n, d);
  q.canonicalize();
  return negative ? ExactScalar(-q) : q;
}

std::string to_string(const ExactScalar& x) { return x.get_str(); }

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  ExactScalar r = re * o.re - im * o.im;
  ExactScalar i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }

ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
  ExactScalar norm = b.re * b.re + b.im * b.im;
  if (sgn(norm) == 0) throw std::domain_error("division by zero complex");
  ExactComplex num = a * b.conj();
  return {num.re / norm, num.im / norm};
}

bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.re == b.re && a.im == b.im; }

HermitianOp::HermitianOp(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0) throw std::invalid_argument("HermitianOp: dimension must be positive");
}

HermitianOp::HermitianOp(std::size_t dim, std::vector<ExactComplex> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
  if (dim == 0) throw std::invalid_argument("HermitianOp: dimension must be positive");
  if (entries_.size() != dim * dim) throw std::invalid_argument("HermitianOp: expected d*d entries");
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j)
      if (entries_[i * dim + j] != entries_[j * dim + i].conj())
        throw std::invalid_argument("HermitianOp: entry (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ") is not the conjugate of its transpose");
}

HermitianOp::HermitianOp(std::size_t dim, std::vector<ExactComplex> row_major, Unchecked)
    : dim_(dim), entries_(std::move(row_major)) {}

HermitianOp HermitianOp::identity(std::size_t dim) {
  HermitianOp out(dim);
  for (std::size_t i = 0; i < dim; ++i) out.entries_[i * dim + i] = 1;
  return out;
}

HermitianOp HermitianOp::diagonal(const std::vector<ExactScalar>& diag) {
  HermitianOp out(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out.entries_[i * diag.size() + i] = diag[i];
  return out;
}

HermitianOp HermitianOp::projector(const std::vector<ExactComplex>& v) {
  std::size_t d = v.size();
  ExactScalar norm;
  for (const auto& x : v) norm += x.re * x.re + x.im * x.im;
  if (sgn(norm) == 0) throw std::invalid_argument("projector onto the zero vector");
  std::vector<ExactComplex> e(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      ExactComplex x = v[i] * v[j].conj();
      e[i * d + j] = {x.re / norm, x.im / norm};
    }
  return HermitianOp(d, std::move(e), Unchecked{});
}

ExactScalar HermitianOp::trace() const {
  ExactScalar t;
  for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i].re;
  return t;
}

bool HermitianOp::is_zero() const {
  for (const auto& x : entries_)
    if (!x.is_zero()) return false;
  return true;
}

HermitianOp HermitianOp::operator+(const HermitianOp& o) const {
  if (o.dim_ != dim_) throw std::invalid_argument("HermitianOp: dimension mismatch");
  std::vector<ExactComplex> e = entries_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.entries_[i];
  return HermitianOp(dim_, std::move(e), Unchecked{});
}

HermitianOp HermitianOp::operator-(const HermitianOp& o) const {
  if (o.dim_ != dim_) throw std::invalid_argument("HermitianOp: dimension mismatch");
  std::vector<ExactComplex> e = entries_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.entries_[i];
  return HermitianOp(dim_, std::move(e), Unchecked{});
}

HermitianOp HermitianOp::scaled(const ExactScalar& c) const {
  std::vector<ExactComplex> e = entries_;
  for (auto& x : e) {
    x.re *= c;
    x.im *= c;
  }
  return HermitianOp(dim_, std::move(e), Unchecked{});
}

HermitianOp kron(const HermitianOp& a, const HermitianOp& b) {
  std::size_t da = a.dim(), db = b.dim(), d = da * db;
  std::vector<ExactComplex> e(d * d);
  for (std::size_t i1 = 0; i1 < da; ++i1)
    for (std::size_t j1 = 0; j1 < da; ++j1) {
      const ExactComplex& x = a(i1, j1);
      if (x.is_zero()) continue;
      for (std::size_t i2 = 0; i2 < db; ++i2)
        for (std::size_t j2 = 0; j2 < db; ++j2) e[(i1 * db + i2) * d + (j1 * db + j2)] = x * b(i2, j2);
    }
  return HermitianOp(d, std::move(e), HermitianOp::Unchecked{});
}

RealVector vectorize(const HermitianOp& op) {
  std::size_t d = op.dim();
  RealVector v;
  v.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) v.push_back(op(i, i).re);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      v.push_back(op(i, j).re);
      v.push_back(op(i, j).im);
    }
  return v;
}

HermitianOp unvectorize(std::size_t dim, const RealVector& v) {
  if (v.size() != dim * dim) throw std::invalid_argument("unvectorize: length is not d*d");
  std::vector<ExactComplex> e(dim * dim);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = v[pos++];
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      ExactComplex x(v[pos], v[pos + 1]);
      pos += 2;
      e[j * dim + i] = x.conj();
      e[i * dim + j] = std::move(x);
    }
  return HermitianOp(dim, std::move(e), HermitianOp::Unchecked{});
}

std::vector<ExactScalar> characteristic_polynomial(const HermitianOp& op) {
  std::size_t n = op.dim();
  const auto& a = op.entries();
  std::vector<ExactScalar> c(n + 1);
  c[n] = 1;
  // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
  std::vector<ExactComplex> m(n * n), am(n * n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        ExactComplex s;
        for (std::size_t t = 0; t < n; ++t) {
          if (a[i * n + t].is_zero() || m[t * n + j].is_zero()) continue;
          s += a[i * n + t] * m[t * n + j];
        }
        am[i * n + j] = std::move(s);
      }
    for (std::size_t i = 0; i < n; ++i) am[i * n + i].re += c[n - k + 1];
    m.swap(am);
    ExactScalar tr;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t) {
        if (a[i * n + t].is_zero() || m[t * n + i].is_zero()) continue;
        tr += (a[i * n + t] * m[t * n + i]).re;
      }
    c[n - k] = -tr / ExactScalar(static_cast<long>(k));
  }
  return c;
}

bool is_psd(const HermitianOp& op) {
  // All roots are real; they are all >= 0 iff p(-x) has no sign changes,
  // i.e. (-1)^(n-k) c_k >= 0 for every k.
  auto c = characteristic_polynomial(op);
  std::size_t n = op.dim();
  for (std::size_t k = 0; k <= n; ++k) {
    int s = sgn(c[k]);
    if ((n - k) % 2 == 1) s = -s;
    if (s < 0) return false;
  }
  return true;
}

HermitianOp op_linear_combine(std::size_t dim, const std::vector<WeightedOp>& terms) {
  HermitianOp out(dim);
  for (const auto& t : terms) {
    const HermitianOp& op = t.op.get();
    if (op.dim() != dim) throw std::invalid_argument("op_linear_combine: dimension mismatch");
    if (sgn(t.coeff) < 0) throw std::invalid_argument("op_linear_combine: negative coefficient");
    if (sgn(t.coeff) == 0) continue;
    out = out + op.scaled(t.coeff);
  }
  return out;
}

}  // namespace locc
