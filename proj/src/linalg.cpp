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

#include "qspforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qspforge/errors.hpp"

namespace qspforge {

namespace {

void require_dim(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim) {
    throw Error(ErrorCode::InvalidArgument,
                "vector/matrix dimension must be in [1, 4], got " + std::to_string(dim));
  }
}

void require_same_dim(const CVector &u, const CVector &v) {
  if (u.dim() != v.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimension mismatch: " + std::to_string(u.dim()) + " vs " +
                    std::to_string(v.dim()));
  }
}

void orthogonalize_against(CVector &v, std::span<const CVector> orthonormal) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto &q : orthonormal) v -= q * inner(q, v);
  }
}

// Appends up to `count` orthonormal vectors drawn from `candidates`, each made
// orthogonal to `basis` and to the vectors picked before it. The candidate
// with the largest residual is taken first.
std::vector<CVector> extend_basis(std::span<const CVector> basis,
                                  std::vector<CVector> candidates, std::size_t count,
                                  double tol) {
  std::vector<CVector> accepted(basis.begin(), basis.end());
  std::vector<CVector> added;
  for (auto &c : candidates) orthogonalize_against(c, accepted);
  while (added.size() < count && !candidates.empty()) {
    auto best = std::max_element(candidates.begin(), candidates.end(),
                                 [](const CVector &a, const CVector &b) {
                                   return a.norm2() < b.norm2();
                                 });
    const double n = best->norm();
    if (!(n > tol)) break;
    CVector q = *best * (1.0 / n);
    orthogonalize_against(q, accepted);
    q *= 1.0 / q.norm();
    candidates.erase(best);
    accepted.push_back(q);
    added.push_back(q);
    const CVector *last = &accepted.back();
    for (auto &c : candidates) {
      c -= *last * inner(*last, c);
      c -= *last * inner(*last, c);
    }
  }
  return added;
}

}  // namespace

// ---------------------------------------------------------------------------
// CVector

CVector::CVector(std::size_t dim) : dim_(dim) { require_dim(dim); }

CVector::CVector(std::initializer_list<Complex> entries)
    : CVector(std::span<const Complex>(entries.begin(), entries.size())) {}

CVector::CVector(std::span<const Complex> entries) : dim_(entries.size()) {
  require_dim(dim_);
  std::copy(entries.begin(), entries.end(), data_.begin());
  if (!is_finite()) throw Error(ErrorCode::InvalidArgument, "non-finite vector entry");
}

CVector CVector::basis(std::size_t dim, std::size_t index) {
  CVector v(dim);
  if (index >= dim) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  v[index] = 1.0;
  return v;
}

double CVector::norm2() const noexcept {
  double s = 0;
  for (std::size_t i = 0; i < dim_; ++i) s += std::norm(data_[i]);
  return s;
}

double CVector::norm() const noexcept { return std::sqrt(norm2()); }

bool CVector::is_finite() const noexcept {
  return std::all_of(data_.begin(), data_.begin() + dim_, [](Complex c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

CVector &CVector::operator+=(const CVector &other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < dim_; ++i) data_[i] += other.data_[i];
  return *this;
}

CVector &CVector::operator-=(const CVector &other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < dim_; ++i) data_[i] -= other.data_[i];
  return *this;
}

CVector &CVector::operator*=(Complex scale) noexcept {
  for (std::size_t i = 0; i < dim_; ++i) data_[i] *= scale;
  return *this;
}

bool operator==(const CVector &a, const CVector &b) {
  return a.dim_ == b.dim_ && std::equal(a.data_.begin(), a.data_.begin() + a.dim_,
                                        b.data_.begin());
}

Complex inner(const CVector &u, const CVector &v) {
  require_same_dim(u, v);
  Complex s = 0;
  for (std::size_t i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t dim) : dim_(dim) { require_dim(dim); }

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : Matrix(rows.size()) {
  std::size_t r = 0;
  for (const auto &row : rows) {
    if (row.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
    std::size_t c = 0;
    for (const auto &x : row) (*this)(r, c++) = x;
    ++r;
  }
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_columns(std::span<const CVector> columns) {
  if (columns.empty()) throw Error(ErrorCode::InvalidArgument, "no columns");
  Matrix m(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

CVector Matrix::column(std::size_t c) const {
  CVector v(dim_);
  for (std::size_t r = 0; r < dim_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, const CVector &v) {
  if (v.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "column dimension mismatch");
  for (std::size_t r = 0; r < dim_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::adjoint() const {
  Matrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

Complex Matrix::determinant() const {
  // Gaussian elimination with partial pivoting.
  Matrix a = *this;
  Complex det = 1.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < dim_; ++r)
      if (std::abs(a(r, k)) > std::abs(a(piv, k))) piv = r;
    if (a(piv, k) == Complex(0)) return 0.0;
    if (piv != k) {
      for (std::size_t c = 0; c < dim_; ++c) std::swap(a(k, c), a(piv, c));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t r = k + 1; r < dim_; ++r) {
      const Complex f = a(r, k) / a(k, k);
      for (std::size_t c = k; c < dim_; ++c) a(r, c) -= f * a(k, c);
    }
  }
  return det;
}

double Matrix::unitarity_residual() const {
  const Matrix g = adjoint() * (*this);
  double worst = 0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c)
      worst = std::max(worst, std::abs(g(r, c) - (r == c ? 1.0 : 0.0)));
  return worst;
}

Matrix &Matrix::operator*=(Complex s) noexcept {
  for (auto &x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix &a, const Matrix &b) {
  if (a.dim_ != b.dim_) throw Error(ErrorCode::DimensionMismatch, "matrix product dimension mismatch");
  Matrix m(a.dim_);
  for (std::size_t r = 0; r < a.dim_; ++r)
    for (std::size_t k = 0; k < a.dim_; ++k) {
      const Complex x = a(r, k);
      for (std::size_t c = 0; c < a.dim_; ++c) m(r, c) += x * b(k, c);
    }
  return m;
}

CVector operator*(const Matrix &a, const CVector &v) {
  if (a.dim_ != v.dim()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector dimension mismatch");
  CVector out(a.dim_);
  for (std::size_t r = 0; r < a.dim_; ++r) {
    Complex s = 0;
    for (std::size_t c = 0; c < a.dim_; ++c) s += a(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

bool operator==(const Matrix &a, const Matrix &b) {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t r = 0; r < a.dim_; ++r)
    for (std::size_t c = 0; c < a.dim_; ++c)
      if (a(r, c) != b(r, c)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(Matrix m, double tol) : m_(m) {
  const double residual = m_.unitarity_residual();
  const double det_dev = std::abs(std::abs(m_.determinant()) - 1.0);
  // |det|^2 = det(U^dag U), so its deviation can reach dim times the entry residual.
  if (!(residual <= tol) || !(det_dev <= static_cast<double>(m_.dim()) * tol)) {
    throw Error(ErrorCode::NotUnitary,
                "matrix is not unitary: max|U^dag U - I| = " + std::to_string(residual),
                {{"residual", residual}, {"det_deviation", det_dev}});
  }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  return UnitaryMatrix(Matrix::identity(dim), Trusted{});
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(m_.adjoint(), Trusted{}); }

UnitaryMatrix operator*(const UnitaryMatrix &a, const UnitaryMatrix &b) {
  return UnitaryMatrix(a.m_ * b.m_, UnitaryMatrix::Trusted{});
}

// ---------------------------------------------------------------------------
// Subspaces

SpanResult rank_span(std::span<const CVector> vectors, double tol_rank) {
  SpanResult out;
  if (vectors.empty()) return out;
  const std::size_t dim = vectors.front().dim();
  for (const auto &v : vectors) {
    if (v.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "rank_span: mixed dimensions");
  }
  out.basis = extend_basis({}, {vectors.begin(), vectors.end()}, dim, tol_rank);
  out.rank = out.basis.size();
  return out;
}

std::vector<CVector> orthogonal_complement(std::span<const CVector> vectors, std::size_t dim,
                                           double tol_rank) {
  require_dim(dim);
  for (const auto &v : vectors) {
    if (v.dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "orthogonal_complement: mixed dimensions");
    }
  }
  const SpanResult span = rank_span(vectors, tol_rank);
  std::vector<CVector> canonical;
  for (std::size_t j = 0; j < dim; ++j) canonical.push_back(CVector::basis(dim, j));
  // Canonical vectors always leave a residual of norm >= 1/sqrt(dim) in the
  // complement, so a fixed small threshold is enough here.
  return extend_basis(span.basis, std::move(canonical), dim - span.rank, 1e-6);
}

std::vector<CVector> restrict_to_complement(std::span<const CVector> subspace,
                                            std::span<const CVector> excluded,
                                            double tol_rank) {
  if (subspace.empty()) return {};
  std::vector<CVector> projections;
  for (const auto &u : excluded) {
    CVector p(subspace.front().dim());
    for (const auto &s : subspace) p += s * inner(s, u);
    projections.push_back(p);
  }
  const SpanResult removed = rank_span(projections, tol_rank);
  if (removed.rank >= subspace.size()) return {};
  return extend_basis(removed.basis, {subspace.begin(), subspace.end()},
                      subspace.size() - removed.rank, 1e-6);
}

double projection_norm(std::span<const CVector> orthonormal, const CVector &v) {
  double s = 0;
  for (const auto &q : orthonormal) s += std::norm(inner(q, v));
  return std::sqrt(s);
}

UnitaryMatrix complete_to_unitary(std::span<const CVector> columns, double tol_unitary) {
  if (columns.empty()) throw Error(ErrorCode::InvalidArgument, "complete_to_unitary: no columns");
  const std::size_t dim = columns.front().dim();
  if (columns.size() > dim) {
    throw Error(ErrorCode::InvalidArgument, "complete_to_unitary: more columns than dimension");
  }
  double worst = 0;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "complete_to_unitary: mixed dimensions");
    }
    for (std::size_t j = i; j < columns.size(); ++j) {
      worst = std::max(worst, std::abs(inner(columns[i], columns[j]) - (i == j ? 1.0 : 0.0)));
    }
  }
  if (!(worst <= tol_unitary)) {
    throw Error(ErrorCode::InvalidArgument,
                "complete_to_unitary: columns are not orthonormal (deviation " +
                    std::to_string(worst) + ")",
                {{"residual", worst}});
  }
  std::vector<CVector> canonical;
  for (std::size_t j = 0; j < dim; ++j) canonical.push_back(CVector::basis(dim, j));
  const auto fill = extend_basis(columns, std::move(canonical), dim - columns.size(), 1e-6);
  Matrix m(dim);
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  for (std::size_t c = 0; c < fill.size(); ++c) m.set_column(columns.size() + c, fill[c]);
  return UnitaryMatrix(m, tol_unitary);
}

UnitaryMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim != 2 && dim != 3) {
    throw Error(ErrorCode::InvalidArgument,
                "haar_random_unitary: dim must be 2 or 3, got " + std::to_string(dim));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<CVector> cols;
  for (std::size_t c = 0; c < dim; ++c) {
    CVector v(dim);
    for (std::size_t r = 0; r < dim; ++r) v[r] = Complex(gauss(rng), gauss(rng));
    orthogonalize_against(v, cols);
    v *= 1.0 / v.norm();
    cols.push_back(v);
  }
  return UnitaryMatrix(Matrix::from_columns(cols));
}

Complex det2(const CVector &u, const CVector &v) {
  if (u.dim() != 2 || v.dim() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "det2 requires two-dimensional vectors");
  }
  return u[0] * v[1] - u[1] * v[0];
}

CVector perp2(const CVector &v) {
  if (v.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "perp2 requires a 2-vector");
  return CVector{-std::conj(v[1]), std::conj(v[0])};
}

CVector principal_axis2(std::span<const CVector> vs) {
  double a = 0, d = 0;
  Complex b = 0;
  for (const auto &v : vs) {
    if (v.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "principal_axis2 requires 2-vectors");
    a += std::norm(v[0]);
    d += std::norm(v[1]);
    b += v[0] * std::conj(v[1]);
  }
  const double lambda = (a + d) / 2 + std::hypot((a - d) / 2, std::abs(b));
  // Two expressions for the same eigenvector; take the longer.
  CVector x{b, lambda - a};
  CVector y{lambda - d, std::conj(b)};
  CVector &best = x.norm2() >= y.norm2() ? x : y;
  const double n = best.norm();
  if (!(n > 0)) return CVector{1.0, 0.0};
  return best * (1.0 / n);
}

// ---------------------------------------------------------------------------
// Standard operators

UnitaryMatrix hadamard() {
  const double h = std::numbers::sqrt2 / 2;
  return UnitaryMatrix(Matrix{{h, h}, {h, -h}});
}

UnitaryMatrix rotation_x(double phi) {
  const Complex c = std::cos(phi), s = Complex(0, std::sin(phi));
  return UnitaryMatrix(Matrix{{c, s}, {s, c}});
}

UnitaryMatrix rotation_z(double phi) {
  return UnitaryMatrix(Matrix{{std::polar(1.0, phi), 0.0}, {0.0, std::polar(1.0, -phi)}});
}

UnitaryMatrix swap_last_two() {
  return UnitaryMatrix(Matrix{{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}});
}

UnitaryMatrix embed_block(const UnitaryMatrix &op2) {
  if (op2.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "embed_block expects a 2x2 operator");
  Matrix m(3);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) m(r, c) = op2(r, c);
  m(2, 2) = 1.0;
  return UnitaryMatrix(m);
}

}  // namespace qspforge
