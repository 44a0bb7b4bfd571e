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
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qspforge/errors.hpp"
#include "qspforge/multivariate.hpp"

namespace qspforge {

namespace {

using Basis = std::vector<CVector>;
using Frame = std::array<CVector, 3>;

struct CoefficientSets {
  std::vector<CVector> a_axis;    // gamma_{k,0}
  std::vector<CVector> b_axis;    // gamma_{0,k}
  std::vector<CVector> diagonal;  // gamma_{k,n-k}
};

void require_three_level(const PolynomialState &state, const Tolerances &tol) {
  if (state.dim() != 3 || state.num_vars() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "expected a bivariate three-level state");
  }
  if (state.kind() != PolyKind::Analytic) {
    throw Error(ErrorCode::BadSupport, "three-level states must be analytic");
  }
  if (state.empty()) throw Error(ErrorCode::NotNormalized, "state is zero");
  const double residual = normalization_residual(state);
  if (!(residual <= tol.norm)) {
    throw Error(ErrorCode::NotNormalized, "state is not normalized", {{"residual", residual}});
  }
}

CoefficientSets collect(const PolynomialState &state) {
  const int n = state.degree();
  CoefficientSets sets;
  for (const auto &[k, v] : state.terms()) {
    if (k[1] == 0) sets.a_axis.push_back(v);
    if (k[0] == 0) sets.b_axis.push_back(v);
    if (k.total() == n) sets.diagonal.push_back(v);
  }
  return sets;
}

CVector unit(const CVector &v) { return v * (1.0 / v.norm()); }

// Unit vector of a two-dimensional space orthogonal to `v`.
CVector other_direction(const Basis &plane, const CVector &v) {
  Basis rest = restrict_to_complement(plane, Basis{v});
  return rest.front();
}

// psi_x in rx, psi_y in ry, orthonormal, both inside the plane w. rx and ry
// are subspaces of w.
std::optional<std::pair<CVector, CVector>> solve_in_plane(const Basis &w, const Basis &rx,
                                                          const Basis &ry, double tol) {
  if (rx.empty() || ry.empty()) return std::nullopt;
  if (rx.size() == 1) {
    CVector y = other_direction(w, rx[0]);
    if (projection_norm(ry, y) < 1 - tol) return std::nullopt;
    return std::pair{rx[0], y};
  }
  if (ry.size() == 1) {
    CVector x = other_direction(w, ry[0]);
    if (projection_norm(rx, x) < 1 - tol) return std::nullopt;
    return std::pair{x, ry[0]};
  }
  return std::pair{w[0], w[1]};
}

// Forces psi_j = fixed and places the other two in its orthocomplement.
std::optional<Frame> solve_with_fixed(const std::array<Basis, 3> &c, std::size_t j,
                                      const CVector &fixed, double tol) {
  const std::size_t x = (j + 1) % 3;
  const std::size_t y = (j + 2) % 3;
  const Basis w = orthogonal_complement(Basis{fixed}, 3);
  const Basis rx = restrict_to_complement(c[x], Basis{fixed});
  const Basis ry = restrict_to_complement(c[y], Basis{fixed});
  const auto pair = solve_in_plane(w, rx, ry, tol);
  if (!pair) return std::nullopt;
  Frame f;
  f[j] = fixed;
  f[x] = pair->first;
  f[y] = pair->second;
  return f;
}

// Real 2x3 system m r = h intersected with the unit sphere.
std::optional<std::array<double, 3>> unit_solution(std::array<std::array<double, 3>, 2> m,
                                                   std::array<double, 2> h, double tol) {
  using R3 = std::array<double, 3>;
  auto dot = [](const R3 &u, const R3 &v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; };
  std::vector<R3> rows;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < 2; ++i) {
    R3 r = m[i];
    double b = h[i];
    for (std::size_t q = 0; q < rows.size(); ++q) {
      const double c = dot(rows[q], r);
      for (std::size_t t = 0; t < 3; ++t) r[t] -= c * rows[q][t];
      b -= c * rhs[q];
    }
    const double len = std::sqrt(dot(r, r));
    if (len > 1e-12) {
      for (auto &x : r) x /= len;
      rows.push_back(r);
      rhs.push_back(b / len);
    } else if (std::abs(b) > tol) {
      return std::nullopt;
    }
  }
  R3 r0{0, 0, 0};
  for (std::size_t q = 0; q < rows.size(); ++q) {
    for (std::size_t t = 0; t < 3; ++t) r0[t] += rhs[q] * rows[q][t];
  }
  const double len2 = dot(r0, r0);
  if (len2 > 1 + tol) return std::nullopt;
  // Any direction orthogonal to the constraint rows.
  R3 d{0, 0, 0};
  for (std::size_t e = 0; e < 3; ++e) {
    R3 cand{0, 0, 0};
    cand[e] = 1;
    for (const auto &row : rows) {
      const double c = dot(row, cand);
      for (std::size_t t = 0; t < 3; ++t) cand[t] -= c * row[t];
    }
    if (dot(cand, cand) > dot(d, d)) d = cand;
  }
  const double dl = std::sqrt(dot(d, d));
  const double t = std::sqrt(std::max(0.0, 1 - len2));
  if (dl < 1e-12) {
    if (std::abs(len2 - 1) > tol) return std::nullopt;
    return r0;
  }
  for (std::size_t i = 0; i < 3; ++i) r0[i] += t * d[i] / dl;
  const double s = std::sqrt(dot(r0, r0));
  for (auto &x : r0) x /= s;
  return r0;
}

// All three complements are planes u_j^perp. A unit psi_0 in u_0^perp admits
// the rest iff <u_1|psi_0><psi_0|u_2> = <u_1|u_2>; on the Bloch sphere of
// u_0^perp this is a line meeting the unit sphere.
std::optional<Frame> solve_three_planes(const std::array<Basis, 3> &c, double tol) {
  std::array<CVector, 3> u;
  for (std::size_t j = 0; j < 3; ++j) u[j] = orthogonal_complement(c[j], 3).front();
  const Basis &p0 = c[0];
  const Complex a0 = inner(p0[0], u[1]);
  const Complex a1 = inner(p0[1], u[1]);
  const Complex b0 = inner(p0[0], u[2]);
  const Complex b1 = inner(p0[1], u[2]);
  // T = |b><a| in the basis of p0.
  const Complex t00 = b0 * std::conj(a0);
  const Complex t01 = b0 * std::conj(a1);
  const Complex t10 = b1 * std::conj(a0);
  const Complex t11 = b1 * std::conj(a1);
  const Complex trace = t00 + t11;
  const Complex tx = t01 + t10;
  const Complex ty = Complex(0, 1) * (t01 - t10);
  const Complex tz = t00 - t11;
  // tr(rho T) = <a|psi><psi|b> = (tr T + r . tau) / 2.
  const Complex target = 2.0 * inner(u[1], u[2]) - trace;
  const auto r = unit_solution({{{tx.real(), ty.real(), tz.real()},
                                 {tx.imag(), ty.imag(), tz.imag()}}},
                               {target.real(), target.imag()}, tol);
  if (!r) return std::nullopt;
  const auto [x, y, z] = *r;
  Complex alpha = 1 + z;
  Complex beta(x, y);
  if (std::abs(alpha) < 1e-6) {
    alpha = Complex(x, -y);
    beta = 1 - z;
  }
  const CVector psi0 = unit(p0[0] * alpha + p0[1] * beta);
  return solve_with_fixed(c, 0, psi0, tol);
}

std::optional<Frame> solve_frame(const std::array<Basis, 3> &c, double tol) {
  for (const auto &cj : c) {
    if (cj.empty()) return std::nullopt;
  }
  for (std::size_t j = 0; j < 3; ++j) {
    if (c[j].size() == 1) return solve_with_fixed(c, j, c[j][0], tol);
  }
  for (std::size_t j = 0; j < 3; ++j) {
    if (c[j].size() == 3) {
      // The other two are at least planes; they always meet orthogonally.
      const std::size_t x = (j + 1) % 3;
      return solve_with_fixed(c, x, c[x][0], tol);
    }
  }
  return solve_three_planes(c, tol);
}

double frame_violation(const Frame &f, const CoefficientSets &sets) {
  double worst = 0;
  for (const auto &g : sets.diagonal) worst = std::max(worst, std::abs(inner(f[0], g)));
  for (const auto &g : sets.b_axis) worst = std::max(worst, std::abs(inner(f[1], g)));
  for (const auto &g : sets.a_axis) worst = std::max(worst, std::abs(inner(f[2], g)));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      worst = std::max(worst, std::abs(inner(f[i], f[j]) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

struct FrameSearch {
  std::optional<Frame> frame;
  std::array<int, 3> ranks{};  // a-axis, b-axis, anti-diagonal
};

FrameSearch find_frame(const CoefficientSets &sets, const Tolerances &tol) {
  FrameSearch out;
  const SpanResult ra = rank_span(sets.a_axis, tol.rank);
  const SpanResult rb = rank_span(sets.b_axis, tol.rank);
  const SpanResult rd = rank_span(sets.diagonal, tol.rank);
  out.ranks = {static_cast<int>(ra.rank), static_cast<int>(rb.rank), static_cast<int>(rd.rank)};
  const std::array<Basis, 3> complements{orthogonal_complement(rd.basis, 3, tol.rank),
                                         orthogonal_complement(rb.basis, 3, tol.rank),
                                         orthogonal_complement(ra.basis, 3, tol.rank)};
  const double slack = std::sqrt(tol.norm);
  auto frame = solve_frame(complements, slack);
  if (frame && frame_violation(*frame, sets) <= slack) out.frame = frame;
  return out;
}

Error not_lowerable(const std::array<int, 3> &ranks) {
  return Error(ErrorCode::NotLowerable,
               "no orthonormal basis lowers this state (a-axis rank " +
                   std::to_string(ranks[0]) + ", b-axis rank " + std::to_string(ranks[1]) +
                   ", anti-diagonal rank " + std::to_string(ranks[2]) + ")",
               {{"rank_a_axis", ranks[0]},
                {"rank_b_axis", ranks[1]},
                {"rank_anti_diagonal", ranks[2]}});
}

// W~^dagger A^dagger state, keeping only the terms that survive.
PolynomialState lower(const PolynomialState &state, const UnitaryMatrix &a,
                      const Tolerances &tol) {
  const int n = state.degree();
  const UnitaryMatrix undo = a.adjoint();
  PolynomialState::Terms out;
  double dropped = 0;
  auto put = [&](MultiIndex k, std::size_t comp, Complex x) {
    auto it = out.try_emplace(k, CVector(3)).first;
    it->second[comp] += x;
  };
  for (const auto &[k, v] : state.terms()) {
    const CVector w = undo * v;
    if (k.total() < n) {
      put(k, 0, w[0]);
    } else {
      dropped = std::max(dropped, std::abs(w[0]));
    }
    if (k[0] > 0) {
      put(MultiIndex{k[0] - 1, k[1]}, 1, w[1]);
    } else {
      dropped = std::max(dropped, std::abs(w[1]));
    }
    if (k[1] > 0) {
      put(MultiIndex{k[0], k[1] - 1}, 2, w[2]);
    } else {
      dropped = std::max(dropped, std::abs(w[2]));
    }
  }
  if (!(dropped <= std::sqrt(tol.norm))) {
    throw Error(ErrorCode::NotLowerable, "lowering leaves a non-vanishing remainder",
                {{"residual", dropped}});
  }
  return PolynomialState(2, 3, PolyKind::Analytic, std::move(out), tol.prune);
}

UnitaryMatrix frame_matrix(const Frame &f) {
  return UnitaryMatrix(Matrix::from_columns(f), 1e-8);
}

// Gram-Schmidt in order; the inputs are already orthogonal up to noise.
Frame orthonormalize(const Frame &f) {
  Frame out;
  Basis done;
  for (std::size_t j = 0; j < 3; ++j) {
    CVector v = f[j];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto &q : done) v -= q * inner(q, v);
    }
    out[j] = unit(v);
    done.push_back(out[j]);
  }
  return out;
}

// psi_j along corner j. The largest corner fixes its column; the other two
// come from a least-squares fit inside the remaining plane.
Frame corner_frame(const std::array<CVector, 3> &corners) {
  std::size_t f = 0;
  for (std::size_t j = 1; j < 3; ++j) {
    if (corners[j].norm() > corners[f].norm()) f = j;
  }
  const std::size_t x = (f + 1) % 3, y = (f + 2) % 3;
  Frame out;
  out[f] = unit(corners[f]);
  const Basis w = orthogonal_complement(Basis{out[f]}, 3);
  auto coords = [&](const CVector &v) { return CVector{inner(w[0], v), inner(w[1], v)}; };
  const CVector fit[2] = {coords(corners[x]), perp2(coords(corners[y]))};
  const CVector e = principal_axis2(fit);
  const CVector e_perp = perp2(e);
  out[x] = w[0] * e[0] + w[1] * e[1];
  out[y] = w[0] * e_perp[0] + w[1] * e_perp[1];
  return orthonormalize(out);
}

}  // namespace

StepExtraction extract_step_3d(const PolynomialState &state, const Tolerances &tol) {
  require_three_level(state, tol);
  if (state.degree() == 0) {
    throw Error(ErrorCode::BadSupport, "a constant state has no signal call to extract");
  }
  const CoefficientSets sets = collect(state);
  const FrameSearch search = find_frame(sets, tol);
  if (!search.frame) throw not_lowerable(search.ranks);
  const UnitaryMatrix a = frame_matrix(orthonormalize(*search.frame));
  return {a, lower(state, a, tol)};
}

DiagnosticReport check_extraction_conditions(const PolynomialState &state,
                                             const Tolerances &tol) {
  require_three_level(state, tol);
  DiagnosticReport report;
  const int n = state.degree();
  if (n == 0) {
    Witness w;
    w.note = "constant state";
    report.add("lowering-basis", true, w);
    return report;
  }
  const CoefficientSets sets = collect(state);
  const FrameSearch search = find_frame(sets, tol);
  Witness w;
  w.note = "ranks a-axis " + std::to_string(search.ranks[0]) + ", b-axis " +
           std::to_string(search.ranks[1]) + ", anti-diagonal " +
           std::to_string(search.ranks[2]);
  w.rank = std::max({search.ranks[0], search.ranks[1], search.ranks[2]});
  report.add("lowering-basis", search.frame.has_value(), w);

  const CVector g00 = state.coefficient(MultiIndex{0, 0});
  const CVector gn0 = state.coefficient(MultiIndex{n, 0});
  const CVector g0n = state.coefficient(MultiIndex{0, n});
  if (g00.norm() <= tol.endpoint || gn0.norm() <= tol.endpoint ||
      g0n.norm() <= tol.endpoint) {
    return report;
  }
  auto against = [&](const std::string &id, const CVector &corner,
                     const std::vector<CVector> &set, const MultiIndex &where) {
    const CVector c = unit(corner);
    Witness cw;
    cw.indices = {where};
    double worst = 0;
    for (const auto &g : set) worst = std::max(worst, std::abs(inner(c, g)));
    cw.magnitude = worst;
    report.add(id, worst <= std::sqrt(tol.norm), cw);
  };
  against("corner-b-vs-a-axis", g0n, sets.a_axis, MultiIndex{0, n});
  against("corner-a-vs-b-axis", gn0, sets.b_axis, MultiIndex{n, 0});
  against("corner-origin-vs-diagonal", g00, sets.diagonal, MultiIndex{0, 0});
  return report;
}

Protocol3D decompose_3d(const PolynomialState &state, const Tolerances &tol) {
  require_three_level(state, tol);
  std::vector<UnitaryMatrix> reversed;
  PolynomialState current = state;
  while (current.degree() > 0) {
    const int n = current.degree();
    const MultiIndex corners[3] = {{0, 0}, {n, 0}, {0, n}};
    std::array<CVector, 3> g;
    for (std::size_t j = 0; j < 3; ++j) {
      g[j] = current.coefficient(corners[j]);
      if (!(g[j].norm() > tol.endpoint)) {
        throw Error(ErrorCode::ZeroEndpoint,
                    "corner coefficient (" + std::to_string(corners[j][0]) + ", " +
                        std::to_string(corners[j][1]) + ") vanishes at degree " +
                        std::to_string(n),
                    {{"degree", n},
                     {"exp_a", corners[j][0]},
                     {"exp_b", corners[j][1]},
                     {"norm", g[j].norm()}});
      }
    }
    const UnitaryMatrix a = frame_matrix(corner_frame(g));
    current = lower(current, a, tol);
    reversed.push_back(a);
  }
  CVector v = current.coefficient(MultiIndex{0, 0});
  v *= 1.0 / v.norm();
  const CVector cols[1] = {v};
  reversed.push_back(complete_to_unitary(cols, 1e-8));
  Protocol3D out;
  out.ops.assign(reversed.rbegin(), reversed.rend());
  return out;
}

}  // namespace qspforge
