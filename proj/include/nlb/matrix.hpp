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

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace nlb {

using Complex = std::complex<double>;

/**
 * Dense square complex matrix, row-major storage.
 *
 * All matrices in this library are small (dimension at most 64 for joint
 * systems, at most 16 per subsystem), so the implementation favors clarity
 * and numerical robustness over speed.
 */
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static CMatrix identity(std::size_t dim);
  static CMatrix zero(std::size_t dim) { return CMatrix(dim); }
  /** Rank-1 projector |v><v| from a (not necessarily normalized) vector. */
  static CMatrix outer(const std::vector<Complex>& v);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex scale);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(Complex scale, CMatrix a) { return a *= scale; }
  friend CMatrix operator*(CMatrix a, Complex scale) { return a *= scale; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  CMatrix adjoint() const;
  Complex trace() const;

  /** Largest entrywise |a_ij - b_ij|. */
  double max_abs_diff(const CMatrix& other) const;
  /** Largest entrywise magnitude. */
  double max_abs() const;
  /** Largest |a_ij - conj(a_ji)|. */
  double hermiticity_defect() const;

  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/** Pauli matrices; index 0 is the identity, 1..3 are sigma_1..sigma_3. */
const CMatrix& pauli(int k);

/** Kronecker product, row-major, A acting on the first factor. */
CMatrix kron(const CMatrix& a, const CMatrix& b);

/**
 * Tensor product of two bipartite operators that keeps the party grouping:
 * given M1 on A1(x)B1 and M2 on A2(x)B2, returns the operator on
 * (A1 A2)(x)(B1 B2) with Alice indices grouped first.
 */
CMatrix bipartite_kron(const CMatrix& m1, std::size_t dim_a1, std::size_t dim_b1,
                       const CMatrix& m2, std::size_t dim_a2, std::size_t dim_b2);

/** Partial trace over the first (dim_a) factor of a dim_a*dim_b system. */
CMatrix partial_trace_first(const CMatrix& m, std::size_t dim_a, std::size_t dim_b);
/** Partial trace over the second (dim_b) factor. */
CMatrix partial_trace_second(const CMatrix& m, std::size_t dim_a, std::size_t dim_b);

/** tr(A * B), computed without forming the product. */
Complex trace_product(const CMatrix& a, const CMatrix& b);

struct EigResult {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // unitary, eigenvector k in column k
};

/**
 * Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
 *
 * Stops when the off-diagonal Frobenius norm falls below 1e-13; throws
 * ConvergenceFailure after 100 sweeps. Eigenvalues are returned ascending
 * with eigenvector columns permuted to match.
 */
EigResult eig_hermitian(const CMatrix& op);

/**
 * Coefficients (c_I, c_1, c_2, c_3) with op = c_I*I + sum_k c_k sigma_k.
 * Throws DimensionMismatch unless op is 2x2.
 */
std::array<double, 4> pauli_decompose(const CMatrix& op);

}  // namespace nlb
