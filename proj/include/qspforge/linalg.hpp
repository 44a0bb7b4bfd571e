// Copyright 2026 The qspforge Authors
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
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "qspforge/tolerances.hpp"

namespace qspforge {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 4;

/// Fixed-capacity complex vector of dimension at most kMaxDim. Used for the
/// coefficient vectors of polynomial states and for matrix columns.
class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim);
  CVector(std::initializer_list<Complex> entries);
  explicit CVector(std::span<const Complex> entries);

  static CVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return dim_; }
  Complex &operator[](std::size_t i) { return data_[i]; }
  const Complex &operator[](std::size_t i) const { return data_[i]; }
  std::span<const Complex> entries() const noexcept { return {data_.data(), dim_}; }

  double norm2() const noexcept;
  double norm() const noexcept;
  bool is_finite() const noexcept;

  CVector &operator+=(const CVector &other);
  CVector &operator-=(const CVector &other);
  CVector &operator*=(Complex scale) noexcept;

  friend CVector operator+(CVector a, const CVector &b) { return a += b; }
  friend CVector operator-(CVector a, const CVector &b) { return a -= b; }
  friend CVector operator*(CVector a, Complex s) { return a *= s; }
  friend CVector operator*(Complex s, CVector a) { return a *= s; }
  friend bool operator==(const CVector &a, const CVector &b);

 private:
  std::array<Complex, kMaxDim> data_{};
  std::size_t dim_ = 0;
};

/// <u|v>, conjugate-linear in the first argument.
Complex inner(const CVector &u, const CVector &v);

/// Dense square complex matrix, dim <= kMaxDim, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t dim);
  static Matrix from_columns(std::span<const CVector> columns);

  std::size_t dim() const noexcept { return dim_; }
  Complex &operator()(std::size_t r, std::size_t c) { return data_[r * kMaxDim + c]; }
  const Complex &operator()(std::size_t r, std::size_t c) const {
    return data_[r * kMaxDim + c];
  }

  CVector column(std::size_t c) const;
  void set_column(std::size_t c, const CVector &v);
  Matrix adjoint() const;
  Complex determinant() const;

  /// max_ij |(M^dag M - I)_ij|.
  double unitarity_residual() const;

  Matrix &operator*=(Complex s) noexcept;
  friend Matrix operator*(const Matrix &a, const Matrix &b);
  friend CVector operator*(const Matrix &a, const CVector &v);
  friend bool operator==(const Matrix &a, const Matrix &b);

 private:
  std::array<Complex, kMaxDim * kMaxDim> data_{};
  std::size_t dim_ = 0;
};

/// A Matrix whose unitarity has been checked at construction. Products and
/// adjoints of unitaries are unitary, so those operations skip the check.
class UnitaryMatrix {
 public:
  /// Throws Error(NotUnitary) with the residual when |U^dag U - I| > tol or
  /// ||det| - 1| > tol.
  explicit UnitaryMatrix(Matrix m, double tol = Tolerances{}.unitary);

  static UnitaryMatrix identity(std::size_t dim);

  const Matrix &matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  const Complex &operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  CVector column(std::size_t c) const { return m_.column(c); }
  UnitaryMatrix adjoint() const;

  friend UnitaryMatrix operator*(const UnitaryMatrix &a, const UnitaryMatrix &b);
  friend CVector operator*(const UnitaryMatrix &a, const CVector &v) { return a.m_ * v; }
  friend bool operator==(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    return a.m_ == b.m_;
  }

 private:
  struct Trusted {};
  UnitaryMatrix(Matrix m, Trusted) : m_(m) {}
  Matrix m_;
};

struct SpanResult {
  std::size_t rank = 0;
  std::vector<CVector> basis;  // orthonormal
};

/// Pivoted Gram-Schmidt with a second re-orthogonalization pass. A direction
/// survives when its residual norm exceeds tol_rank.
SpanResult rank_span(std::span<const CVector> vectors, double tol_rank = Tolerances{}.rank);

/// Orthonormal basis of the orthogonal complement of span(vectors) in C^dim.
std::vector<CVector> orthogonal_complement(std::span<const CVector> vectors,
                                           std::size_t dim,
                                           double tol_rank = Tolerances{}.rank);

/// Basis of {x in span(subspace) : <u|x> = 0 for every u in excluded}.
/// `subspace` must be orthonormal.
std::vector<CVector> restrict_to_complement(std::span<const CVector> subspace,
                                            std::span<const CVector> excluded,
                                            double tol_rank = Tolerances{}.rank);

/// Norm of the orthogonal projection of v onto the span of an orthonormal set.
double projection_norm(std::span<const CVector> orthonormal, const CVector &v);

/// Unitary whose leading columns are exactly `columns`; the rest is filled by
/// orthonormalizing canonical basis vectors, largest residual first.
UnitaryMatrix complete_to_unitary(std::span<const CVector> columns,
                                  double tol_unitary = Tolerances{}.unitary);

/// Haar-distributed U(dim) from QR of a complex Ginibre matrix (Gram-Schmidt
/// gives the R factor a positive diagonal, which removes the phase bias).
UnitaryMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed);

/// u_0 v_1 - u_1 v_0.
Complex det2(const CVector &u, const CVector &v);

/// (-conj v_1, conj v_0): orthogonal to a 2-vector, same norm.
CVector perp2(const CVector &v);

/// Unit eigenvector of sum_i |v_i><v_i| with the largest eigenvalue, for
/// 2-vectors. Returns |0> when every v_i vanishes.
CVector principal_axis2(std::span<const CVector> vs);

// Standard operators.
UnitaryMatrix hadamard();
UnitaryMatrix rotation_x(double phi);  // exp(i phi X)
UnitaryMatrix rotation_z(double phi);  // exp(i phi Z)
UnitaryMatrix swap_last_two();         // |0><0| + |1><2| + |2><1|
UnitaryMatrix embed_block(const UnitaryMatrix &op2);  // diag(op2, 1)

}  // namespace qspforge
