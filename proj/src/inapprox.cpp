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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qspforge/errors.hpp"
#include "qspforge/multivariate.hpp"

namespace qspforge {

namespace {

struct AxisScan {
  double max_det = 0;
  std::pair<int, int> argmax{0, 0};
  double max_norm = 0;
};

// Largest |det[g_x g_y]| over pairs of coefficients on one axis.
AxisScan scan_axis(const PolynomialState &state, std::size_t var) {
  const int n = state.degree_in(var);
  std::vector<CVector> coeffs;
  for (int x = 0; x <= n; ++x) {
    MultiIndex k{0, 0};
    k[var] = x;
    coeffs.push_back(state.coefficient(k));
  }
  AxisScan scan;
  for (int x = 0; x <= n; ++x) {
    scan.max_norm = std::max(scan.max_norm, coeffs[x].norm());
    for (int y = x + 1; y <= n; ++y) {
      const double d = std::abs(det2(coeffs[x], coeffs[y]));
      if (d > scan.max_det) {
        scan.max_det = d;
        scan.argmax = {x, y};
      }
    }
  }
  return scan;
}

struct Normalized {
  PolynomialState state;
  bool was_normalized;
};

Normalized rescale(const PolynomialState &state, const Tolerances &tol) {
  if (state.dim() != 2 || state.num_vars() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "expected a bivariate qubit state");
  }
  if (state.kind() != PolyKind::Analytic) {
    throw Error(ErrorCode::BadSupport,
                "axis coefficients are defined for analytic states; convert first");
  }
  const double weight = state.total_weight();
  if (!(weight > 0)) throw Error(ErrorCode::NotAPolynomialState, "state is zero");
  PolynomialState unit = state.scaled(1.0 / std::sqrt(weight));
  const double residual = normalization_residual(unit);
  if (!(residual <= tol.norm)) {
    throw Error(ErrorCode::NotAPolynomialState,
                "input is not a polynomial state even after rescaling",
                {{"residual", residual}, {"weight", weight}});
  }
  return {std::move(unit), std::abs(weight - 1) <= tol.norm};
}

int axis_rank(const AxisScan &scan, double tol) {
  if (scan.max_det > tol) return 2;
  return scan.max_norm > tol ? 1 : 0;
}

}  // namespace

DiagnosticReport check_unimplementable(const PolynomialState &state, const Tolerances &tol) {
  const Normalized in = rescale(state, tol);
  DiagnosticReport report;
  bool both = true;
  const char *ids[2] = {"a-axis-rank", "b-axis-rank"};
  for (std::size_t var = 0; var < 2; ++var) {
    const AxisScan scan = scan_axis(in.state, var);
    const int rank = axis_rank(scan, tol.rank);
    Witness w;
    w.rank = rank;
    w.magnitude = scan.max_det;
    if (rank == 2) {
      MultiIndex k1{0, 0}, k2{0, 0};
      k1[var] = scan.argmax.first;
      k2[var] = scan.argmax.second;
      w.indices = {k1, k2};
    }
    // The verdict passes when this axis blocks an implementation.
    report.add(ids[var], rank == 2, w);
    both = both && rank == 2;
  }
  report.implementability =
      both ? Implementability::NotImplementable : Implementability::Inconclusive;
  return report;
}

QGammaResult q_gamma(const PolynomialState &state, const Tolerances &tol) {
  const Normalized in = rescale(state, tol);
  const AxisScan a = scan_axis(in.state, 0);
  const AxisScan b = scan_axis(in.state, 1);
  QGammaResult r;
  r.max_a = a.max_det;
  r.max_b = b.max_det;
  r.argmax_a = a.argmax;
  r.argmax_b = b.argmax;
  r.q = std::min(a.max_det, b.max_det);
  r.normalized_input = in.was_normalized;
  return r;
}

double inapprox_radius(const PolynomialState &state, const Tolerances &tol) {
  return q_gamma(state, tol).q / 4;
}

}  // namespace qspforge
