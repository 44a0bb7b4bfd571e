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
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qspforge/linalg.hpp"
#include "qspforge/tolerances.hpp"

namespace qspforge {

inline constexpr std::size_t kMaxVars = 2;

/// Exponent tuple k of the monomial z^k = z_1^{k_1} ... z_m^{k_m}, m <= 2.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> exponents);
  explicit MultiIndex(std::span<const int> exponents);

  std::size_t size() const noexcept { return size_; }
  int operator[](std::size_t i) const { return e_[i]; }
  int &operator[](std::size_t i) { return e_[i]; }
  std::span<const int> exponents() const noexcept { return {e_.data(), size_}; }

  int total() const noexcept;
  bool non_negative() const noexcept;

  friend MultiIndex operator+(const MultiIndex &a, const MultiIndex &b);
  friend MultiIndex operator-(const MultiIndex &a, const MultiIndex &b);
  friend MultiIndex operator-(const MultiIndex &a);
  friend auto operator<=>(const MultiIndex &, const MultiIndex &) = default;
  friend bool operator==(const MultiIndex &, const MultiIndex &) = default;

 private:
  std::size_t size_ = 0;
  std::array<int, kMaxVars> e_{};
};

enum class PolyKind { Analytic, Laurent };

/// Point on the torus: z_j = exp(i * phases[j]).
struct TorusPoint {
  std::vector<double> phases;
};

/// Vector-valued (Laurent) polynomial sum_k |gamma_k> z^k stored sparsely.
/// Zero coefficients (norm below the prune threshold) are never stored.
/// Normalization is a checkable property, not an invariant.
class PolynomialState {
 public:
  using Terms = std::map<MultiIndex, CVector>;

  /// Validates exponent lengths, coefficient dimensions and, for Analytic
  /// states, non-negativity. Throws Error(InvalidArgument / DimensionMismatch).
  PolynomialState(std::size_t num_vars, std::size_t dim, PolyKind kind, Terms terms,
                  double prune = Tolerances{}.prune);

  /// The constant state |v> (degree 0).
  static PolynomialState constant(std::size_t num_vars, PolyKind kind, const CVector &v);

  std::size_t num_vars() const noexcept { return num_vars_; }
  std::size_t dim() const noexcept { return dim_; }
  PolyKind kind() const noexcept { return kind_; }
  const Terms &terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  /// Stored coefficient, or the zero vector for an absent index.
  CVector coefficient(const MultiIndex &k) const;

  /// Total degree max(sum_j k_j) for Analytic states; max_j max |k_j| for
  /// Laurent states. Zero for the empty state.
  int degree() const noexcept;
  /// max k_j over the support for Analytic, max |k_j| for Laurent.
  int degree_in(std::size_t var) const;
  int min_exponent(std::size_t var) const;
  int max_exponent(std::size_t var) const;

  /// Sum over all coefficients of ||gamma_k||^2 (equals the torus mean of
  /// <gamma(z)|gamma(z)>).
  double total_weight() const noexcept;

  /// Applies op to every coefficient vector.
  PolynomialState transformed(const UnitaryMatrix &op) const;
  PolynomialState scaled(Complex factor) const;

  friend bool operator==(const PolynomialState &a, const PolynomialState &b);

 private:
  std::size_t num_vars_;
  std::size_t dim_;
  PolyKind kind_;
  Terms terms_;
};

CVector evaluate_at(const PolynomialState &state, const TorusPoint &point);

/// Largest deviation of the autocorrelation sums from the identity
/// <gamma(z)|gamma(z)> == 1: |sum_k <g_k|g_k> - 1| at lag 0 and
/// |sum_k <g_k|g_{k+j}>| at every other lag j.
double normalization_residual(const PolynomialState &state);

bool is_normalized(const PolynomialState &state, double tol_norm = Tolerances{}.norm);

std::size_t effective_dimension(const PolynomialState &state,
                                double tol_rank = Tolerances{}.rank);

/// sqrt(sum_k ||g1_k - g2_k||^2); by Parseval the RMS distance over the torus.
/// Requires equal num_vars and dim.
double l2_distance(const PolynomialState &s1, const PolynomialState &s2);

/// Max pointwise distance over a uniform grid_size^m phase grid. A lower bound
/// on the true sup-norm distance.
double sup_distance_sampled(const PolynomialState &s1, const PolynomialState &s2,
                            std::size_t grid_size);

/// Multiplies by z^offset. Kind becomes Analytic iff every shifted exponent is
/// non-negative.
PolynomialState shift_exponents(const PolynomialState &state, const MultiIndex &offset);

/// True when the state is Analytic, bivariate, and its support lies in the
/// triangle {k, h >= 0, k + h <= degree}.
bool has_triangle_support(const PolynomialState &state);

}  // namespace qspforge
