// Copyright 2026 The nonlocal-bounds developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nlb/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nlb/errors.hpp"

namespace nlb {

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::outer(const std::vector<Complex>& v) {
  CMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("matrix add: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("matrix sub: dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("matrix mul: dimension mismatch");
  const std::size_t n = a.dim_;
  CMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Complex CMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs_diff(const CMatrix& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < data_.size(); ++k)
    m = std::max(m, std::abs(data_[k] - other.data_[k]));
  return m;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double CMatrix::hermiticity_defect() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

const CMatrix& pauli(int k) {
  static const std::array<CMatrix, 4> mats = [] {
    std::array<CMatrix, 4> p{CMatrix(2), CMatrix(2), CMatrix(2), CMatrix(2)};
    p[0](0, 0) = 1.0;
    p[0](1, 1) = 1.0;
    p[1](0, 1) = 1.0;
    p[1](1, 0) = 1.0;
    p[2](0, 1) = Complex(0.0, -1.0);
    p[2](1, 0) = Complex(0.0, 1.0);
    p[3](0, 0) = 1.0;
    p[3](1, 1) = -1.0;
    return p;
  }();
  return mats.at(static_cast<std::size_t>(k));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  CMatrix c(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          c(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return c;
}

CMatrix bipartite_kron(const CMatrix& m1, std::size_t dim_a1, std::size_t dim_b1,
                       const CMatrix& m2, std::size_t dim_a2, std::size_t dim_b2) {
  if (m1.dim() != dim_a1 * dim_b1 || m2.dim() != dim_a2 * dim_b2)
    throw DimensionMismatch("bipartite_kron: dimensions inconsistent with factors");
  const std::size_t da = dim_a1 * dim_a2, db = dim_b1 * dim_b2;
  CMatrix out(da * db);
  for (std::size_t i1 = 0; i1 < dim_a1; ++i1)
    for (std::size_t j1 = 0; j1 < dim_b1; ++j1)
      for (std::size_t k1 = 0; k1 < dim_a1; ++k1)
        for (std::size_t l1 = 0; l1 < dim_b1; ++l1) {
          const Complex v1 = m1(i1 * dim_b1 + j1, k1 * dim_b1 + l1);
          if (v1 == Complex{}) continue;
          for (std::size_t i2 = 0; i2 < dim_a2; ++i2)
            for (std::size_t j2 = 0; j2 < dim_b2; ++j2)
              for (std::size_t k2 = 0; k2 < dim_a2; ++k2)
                for (std::size_t l2 = 0; l2 < dim_b2; ++l2) {
                  const std::size_t row = (i1 * dim_a2 + i2) * db + (j1 * dim_b2 + j2);
                  const std::size_t col = (k1 * dim_a2 + k2) * db + (l1 * dim_b2 + l2);
                  out(row, col) = v1 * m2(i2 * dim_b2 + j2, k2 * dim_b2 + l2);
                }
        }
  return out;
}

CMatrix partial_trace_first(const CMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  if (m.dim() != dim_a * dim_b)
    throw DimensionMismatch("partial_trace_first: dimension mismatch");
  CMatrix out(dim_b);
  for (std::size_t b = 0; b < dim_b; ++b)
    for (std::size_t bp = 0; bp < dim_b; ++bp) {
      Complex s{};
      for (std::size_t a = 0; a < dim_a; ++a) s += m(a * dim_b + b, a * dim_b + bp);
      out(b, bp) = s;
    }
  return out;
}

CMatrix partial_trace_second(const CMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  if (m.dim() != dim_a * dim_b)
    throw DimensionMismatch("partial_trace_second: dimension mismatch");
  CMatrix out(dim_a);
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t ap = 0; ap < dim_a; ++ap) {
      Complex s{};
      for (std::size_t b = 0; b < dim_b; ++b) s += m(a * dim_b + b, ap * dim_b + b);
      out(a, ap) = s;
    }
  return out;
}

Complex trace_product(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("trace_product: dimension mismatch");
  Complex t{};
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) t += a(i, j) * b(j, i);
  return t;
}

namespace {

double offdiag_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) s += std::norm(a(i, j));
  return std::sqrt(2.0 * s);
}

}  // namespace

EigResult eig_hermitian(const CMatrix& op) {
  constexpr double kOffdiagTol = 1e-13;
  constexpr int kMaxSweeps = 100;

  if (!op.is_hermitian(1e-12))
    throw DomainError("eig_hermitian: input is not Hermitian within 1e-12");

  const std::size_t n = op.dim();
  CMatrix a = op;
  CMatrix v = CMatrix::identity(n);

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_norm(a) <= kOffdiagTol) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double b = std::abs(apq);
        if (b < 1e-300) continue;
        const Complex phase = apq / b;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Columns: B = A R with R(p,p)=c, R(p,q)=s*phase, R(q,p)=-s*conj(phase), R(q,q)=c.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(phase) * akq;
          a(k, q) = s * phase * akp + c * akq;
        }
        // Rows: A' = R^dagger B.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * std::conj(phase) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * std::conj(phase) * vkq;
          v(k, q) = s * phase * vkp + c * vkq;
        }
      }
  }
  if (sweep == kMaxSweeps && offdiag_norm(a) > kOffdiagTol)
    throw ConvergenceFailure("eig_hermitian: Jacobi sweeps exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigResult res;
  res.values.resize(n);
  res.vectors = CMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    res.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) res.vectors(i, k) = v(i, order[k]);
  }
  return res;
}

std::array<double, 4> pauli_decompose(const CMatrix& op) {
  if (op.dim() != 2) throw DimensionMismatch("pauli_decompose: operator must be 2x2");
  std::array<double, 4> c{};
  for (int k = 0; k < 4; ++k) c[k] = 0.5 * trace_product(pauli(k), op).real();
  return c;
}

}  // namespace nlb
