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

#include "qspforge/polystate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "qspforge/errors.hpp"

namespace qspforge {

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::span<const int>(exponents.begin(), exponents.size())) {}

MultiIndex::MultiIndex(std::span<const int> exponents) : size_(exponents.size()) {
  if (size_ == 0 || size_ > kMaxVars) {
    throw Error(ErrorCode::InvalidArgument,
                "multi-index must have 1 or 2 exponents, got " + std::to_string(size_));
  }
  std::copy(exponents.begin(), exponents.end(), e_.begin());
}

int MultiIndex::total() const noexcept {
  int s = 0;
  for (std::size_t i = 0; i < size_; ++i) s += e_[i];
  return s;
}

bool MultiIndex::non_negative() const noexcept {
  return std::all_of(e_.begin(), e_.begin() + size_, [](int x) { return x >= 0; });
}

MultiIndex operator+(const MultiIndex &a, const MultiIndex &b) {
  if (a.size_ != b.size_) throw Error(ErrorCode::DimensionMismatch, "multi-index length mismatch");
  MultiIndex r = a;
  for (std::size_t i = 0; i < a.size_; ++i) r.e_[i] += b.e_[i];
  return r;
}

MultiIndex operator-(const MultiIndex &a, const MultiIndex &b) { return a + (-b); }

MultiIndex operator-(const MultiIndex &a) {
  MultiIndex r = a;
  for (std::size_t i = 0; i < a.size_; ++i) r.e_[i] = -r.e_[i];
  return r;
}

// ---------------------------------------------------------------------------
// PolynomialState

PolynomialState::PolynomialState(std::size_t num_vars, std::size_t dim, PolyKind kind,
                                 Terms terms, double prune)
    : num_vars_(num_vars), dim_(dim), kind_(kind) {
  if (num_vars < 1 || num_vars > kMaxVars) {
    throw Error(ErrorCode::InvalidArgument, "polynomial states have 1 or 2 variables");
  }
  if (dim < 1 || dim > kMaxDim) {
    throw Error(ErrorCode::InvalidArgument, "coefficient dimension must be in [1, 4]");
  }
  for (auto &[k, v] : terms) {
    if (k.size() != num_vars) {
      throw Error(ErrorCode::DimensionMismatch, "exponent tuple length does not match num_vars");
    }
    if (v.dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "coefficient vector dimension does not match");
    }
    if (!v.is_finite()) throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
    if (v.norm() <= prune) continue;
    if (kind == PolyKind::Analytic && !k.non_negative()) {
      throw Error(ErrorCode::InvalidArgument, "analytic state with a negative exponent");
    }
    terms_.emplace(k, v);
  }
}

PolynomialState PolynomialState::constant(std::size_t num_vars, PolyKind kind,
                                          const CVector &v) {
  std::vector<int> zeros(num_vars, 0);
  return PolynomialState(num_vars, v.dim(), kind, {{MultiIndex(zeros), v}});
}

CVector PolynomialState::coefficient(const MultiIndex &k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? CVector(dim_) : it->second;
}

int PolynomialState::degree() const noexcept {
  int d = 0;
  for (const auto &[k, v] : terms_) {
    if (kind_ == PolyKind::Analytic) {
      d = std::max(d, k.total());
    } else {
      for (int e : k.exponents()) d = std::max(d, std::abs(e));
    }
  }
  return d;
}

int PolynomialState::degree_in(std::size_t var) const {
  if (var >= num_vars_) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  int d = 0;
  for (const auto &[k, v] : terms_) {
    d = std::max(d, kind_ == PolyKind::Analytic ? k[var] : std::abs(k[var]));
  }
  return d;
}

int PolynomialState::min_exponent(std::size_t var) const {
  if (var >= num_vars_) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  int m = 0;
  bool first = true;
  for (const auto &[k, v] : terms_) {
    m = first ? k[var] : std::min(m, k[var]);
    first = false;
  }
  return m;
}

int PolynomialState::max_exponent(std::size_t var) const {
  if (var >= num_vars_) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  int m = 0;
  bool first = true;
  for (const auto &[k, v] : terms_) {
    m = first ? k[var] : std::max(m, k[var]);
    first = false;
  }
  return m;
}

double PolynomialState::total_weight() const noexcept {
  double s = 0;
  for (const auto &[k, v] : terms_) s += v.norm2();
  return s;
}

PolynomialState PolynomialState::transformed(const UnitaryMatrix &op) const {
  if (op.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "operator dimension mismatch");
  Terms out;
  for (const auto &[k, v] : terms_) out.emplace(k, op * v);
  return PolynomialState(num_vars_, dim_, kind_, std::move(out));
}

PolynomialState PolynomialState::scaled(Complex factor) const {
  Terms out;
  for (const auto &[k, v] : terms_) out.emplace(k, v * factor);
  return PolynomialState(num_vars_, dim_, kind_, std::move(out));
}

bool operator==(const PolynomialState &a, const PolynomialState &b) {
  return a.num_vars_ == b.num_vars_ && a.dim_ == b.dim_ && a.kind_ == b.kind_ &&
         a.terms_ == b.terms_;
}

// ---------------------------------------------------------------------------
// Operations

CVector evaluate_at(const PolynomialState &state, const TorusPoint &point) {
  if (point.phases.size() != state.num_vars()) {
    throw Error(ErrorCode::DimensionMismatch, "torus point length does not match num_vars");
  }
  CVector out(state.dim());
  for (const auto &[k, v] : state.terms()) {
    double angle = 0;
    for (std::size_t j = 0; j < k.size(); ++j) angle += k[j] * point.phases[j];
    out += v * std::polar(1.0, angle);
  }
  return out;
}

double normalization_residual(const PolynomialState &state) {
  std::map<MultiIndex, Complex> lags;
  for (const auto &[k1, v1] : state.terms()) {
    for (const auto &[k2, v2] : state.terms()) lags[k2 - k1] += inner(v1, v2);
  }
  const MultiIndex zero(std::vector<int>(state.num_vars(), 0));
  double worst = std::abs(lags[zero] - 1.0);
  for (const auto &[j, s] : lags) {
    if (j != zero) worst = std::max(worst, std::abs(s));
  }
  return worst;
}

bool is_normalized(const PolynomialState &state, double tol_norm) {
  return normalization_residual(state) <= tol_norm;
}

std::size_t effective_dimension(const PolynomialState &state, double tol_rank) {
  std::vector<CVector> vs;
  for (const auto &[k, v] : state.terms()) vs.push_back(v);
  return rank_span(vs, tol_rank).rank;
}

namespace {

void require_same_shape(const PolynomialState &a, const PolynomialState &b) {
  if (a.num_vars() != b.num_vars() || a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "states differ in num_vars or dim");
  }
}

}  // namespace

double l2_distance(const PolynomialState &s1, const PolynomialState &s2) {
  require_same_shape(s1, s2);
  double s = 0;
  for (const auto &[k, v] : s1.terms()) s += (v - s2.coefficient(k)).norm2();
  for (const auto &[k, v] : s2.terms()) {
    if (!s1.terms().contains(k)) s += v.norm2();
  }
  return std::sqrt(s);
}

double sup_distance_sampled(const PolynomialState &s1, const PolynomialState &s2,
                            std::size_t grid_size) {
  require_same_shape(s1, s2);
  if (grid_size == 0) throw Error(ErrorCode::InvalidArgument, "grid_size must be positive");
  const double step = 2 * std::numbers::pi / static_cast<double>(grid_size);
  double worst = 0;
  if (s1.num_vars() == 1) {
    for (std::size_t i = 0; i < grid_size; ++i) {
      TorusPoint p{{i * step}};
      worst = std::max(worst, (evaluate_at(s1, p) - evaluate_at(s2, p)).norm());
    }
  } else {
    for (std::size_t i = 0; i < grid_size; ++i)
      for (std::size_t j = 0; j < grid_size; ++j) {
        TorusPoint p{{i * step, j * step}};
        worst = std::max(worst, (evaluate_at(s1, p) - evaluate_at(s2, p)).norm());
      }
  }
  return worst;
}

PolynomialState shift_exponents(const PolynomialState &state, const MultiIndex &offset) {
  if (offset.size() != state.num_vars()) {
    throw Error(ErrorCode::DimensionMismatch, "shift offset length does not match num_vars");
  }
  PolynomialState::Terms out;
  bool analytic = true;
  for (const auto &[k, v] : state.terms()) {
    const MultiIndex shifted = k + offset;
    analytic = analytic && shifted.non_negative();
    out.emplace(shifted, v);
  }
  return PolynomialState(state.num_vars(), state.dim(),
                         analytic ? PolyKind::Analytic : PolyKind::Laurent, std::move(out));
}

bool has_triangle_support(const PolynomialState &state) {
  if (state.kind() != PolyKind::Analytic || state.num_vars() != 2) return false;
  const int n = state.degree();
  return std::all_of(state.terms().begin(), state.terms().end(), [n](const auto &kv) {
    return kv.first.non_negative() && kv.first.total() <= n;
  });
}

}  // namespace qspforge
