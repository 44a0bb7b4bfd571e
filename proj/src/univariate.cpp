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

#include "qspforge/univariate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <tuple>

#include <Eigen/Dense>

#include "qspforge/errors.hpp"

namespace qspforge {

std::string_view to_string(Picture p) {
  return p == Picture::Laurent ? "laurent" : "analytic";
}

std::string_view to_string(SignalBasis b) { return b == SignalBasis::Wz ? "Wz" : "Wx"; }

std::string_view to_string(Algebra a) {
  switch (a) {
    case Algebra::FullSU2: return "full";
    case Algebra::XRotations: return "x-rotations";
    case Algebra::ZRotations: return "z-rotations";
  }
  return "full";
}

bool is_characterized(const SignalConvention &c) {
  return c.algebra == Algebra::FullSU2 ||
         (c.algebra == Algebra::XRotations && c.basis == SignalBasis::Wz) ||
         (c.algebra == Algebra::ZRotations && c.basis == SignalBasis::Wx);
}

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double wrap_phase(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r >= kTwoPi ? 0.0 : r;
}

UnitaryMatrix rotation_for(Algebra a, double phi) {
  return a == Algebra::XRotations ? rotation_x(phi) : rotation_z(phi);
}

void require_univariate_qubit(const PolynomialState &s) {
  if (s.num_vars() != 1 || s.dim() != 2) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected a univariate state with two-dimensional coefficients");
  }
}

// Dense coefficient list for an analytic univariate state, index = exponent.
std::vector<CVector> dense_coefficients(const PolynomialState &s, int length) {
  std::vector<CVector> out(static_cast<std::size_t>(length), CVector(s.dim()));
  for (const auto &[k, v] : s.terms()) out.at(static_cast<std::size_t>(k[0])) = v;
  return out;
}

// One signal call on a univariate coefficient map.
std::map<int, CVector> apply_signal(const std::map<int, CVector> &in, Picture picture) {
  std::map<int, CVector> out;
  auto add = [&out](int k, std::size_t comp, Complex x) {
    auto it = out.try_emplace(k, CVector(2)).first;
    it->second[comp] += x;
  };
  for (const auto &[k, v] : in) {
    add(picture == Picture::Laurent ? k - 1 : k, 0, v[0]);
    add(k + 1, 1, v[1]);
  }
  return out;
}

}  // namespace

Protocol1D make_rotation_protocol(const SignalConvention &convention,
                                  std::span<const double> phases) {
  if (convention.algebra == Algebra::FullSU2) {
    throw Error(ErrorCode::InvalidArgument, "phases require a rotation algebra");
  }
  if (phases.empty()) throw Error(ErrorCode::InvalidArgument, "a protocol needs at least one phase");
  Protocol1D p{convention, {}, std::vector<double>(phases.begin(), phases.end())};
  for (double phi : phases) p.ops.push_back(rotation_for(convention.algebra, phi));
  return p;
}

void validate_protocol(const Protocol1D &p, const Tolerances &tol) {
  if (p.ops.empty()) throw Error(ErrorCode::InvalidArgument, "protocol has no operators");
  for (const auto &op : p.ops) {
    if (op.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "univariate ops must be 2x2");
  }
  if (!p.phases) return;
  if (p.convention.algebra == Algebra::FullSU2) {
    throw Error(ErrorCode::InvalidArgument, "phases given for the full algebra");
  }
  if (p.phases->size() != p.ops.size()) {
    throw Error(ErrorCode::DimensionMismatch, "phase count differs from op count");
  }
  for (std::size_t k = 0; k < p.ops.size(); ++k) {
    const Matrix expect = rotation_for(p.convention.algebra, (*p.phases)[k]).matrix();
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c)
        if (std::abs(expect(r, c) - p.ops[k](r, c)) > tol.unitary) {
          throw Error(ErrorCode::InvalidArgument,
                      "op " + std::to_string(k) + " does not match its phase",
                      {{"op", static_cast<double>(k)}});
        }
  }
}

Protocol1D random_protocol_1d(const SignalConvention &convention, std::size_t steps,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (convention.algebra == Algebra::FullSU2) {
    Protocol1D p{convention, {}, std::nullopt};
    for (std::size_t k = 0; k <= steps; ++k) p.ops.push_back(haar_random_unitary(2, rng()));
    return p;
  }
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::vector<double> phases(steps + 1);
  for (auto &phi : phases) phi = angle(rng);
  return make_rotation_protocol(convention, phases);
}

PolynomialState evaluate_protocol_1d(const Protocol1D &p) {
  validate_protocol(p);
  const bool wx = p.convention.basis == SignalBasis::Wx;
  const UnitaryMatrix h = hadamard();
  std::map<int, CVector> coeffs{{0, p.ops.front().column(0)}};
  for (std::size_t k = 1; k < p.ops.size(); ++k) {
    if (wx) for (auto &[e, v] : coeffs) v = h * v;
    coeffs = apply_signal(coeffs, p.convention.picture);
    if (wx) for (auto &[e, v] : coeffs) v = h * v;
    for (auto &[e, v] : coeffs) v = p.ops[k] * v;
  }
  PolynomialState::Terms terms;
  for (const auto &[e, v] : coeffs) terms.emplace(MultiIndex{e}, v);
  return PolynomialState(1, 2, p.convention.picture == Picture::Laurent ? PolyKind::Laurent
                                                                        : PolyKind::Analytic,
                         std::move(terms));
}

// ---------------------------------------------------------------------------
// Classification

namespace {

// Largest violation of "P real, Q imaginary" and where it occurs.
Witness real_imag_violation(const PolynomialState &s) {
  Witness w;
  double worst = 0;
  for (const auto &[k, v] : s.terms()) {
    const double dev = std::max(std::abs(v[0].imag()), std::abs(v[1].real()));
    if (dev > worst) {
      worst = dev;
      w.indices = {k};
    }
  }
  w.magnitude = worst;
  return w;
}

// Largest violation of P(z) = z^c P(1/z), Q(z) = -z^c Q(1/z), i.e.
// p_k = p_{c-k} and q_k = -q_{c-k}.
Witness reciprocal_violation(const PolynomialState &s, int c) {
  Witness w;
  double worst = 0;
  for (const auto &[k, v] : s.terms()) {
    const CVector mirror = s.coefficient(MultiIndex{c - k[0]});
    const double dev = std::max(std::abs(v[0] - mirror[0]), std::abs(v[1] + mirror[1]));
    if (dev > worst) {
      worst = dev;
      w.indices = {k, MultiIndex{c - k[0]}};
    }
  }
  w.magnitude = worst;
  return w;
}

}  // namespace

DiagnosticReport classify_state_1d(const PolynomialState &state, const Tolerances &tol) {
  require_univariate_qubit(state);
  DiagnosticReport report;

  // Laurent picture: exponents share the parity of n = max |k|.
  const int n = [&] {
    int d = 0;
    for (const auto &[k, v] : state.terms()) d = std::max(d, std::abs(k[0]));
    return d;
  }();
  Witness parity;
  for (const auto &[k, v] : state.terms()) {
    if (std::abs(k[0] - n) % 2 != 0) {
      parity.indices = {k};
      break;
    }
  }
  parity.note = "degree " + std::to_string(n);
  const bool parity_ok = parity.indices.empty();
  report.add("laurent-parity", parity_ok, parity);

  const Witness ri = real_imag_violation(state);
  const bool ri_ok = *ri.magnitude <= tol.norm;
  report.add("laurent-wz-real-imag", ri_ok, ri);
  report.add("laurent-wx-reciprocal", *reciprocal_violation(state, 0).magnitude <= tol.norm,
             reciprocal_violation(state, 0));

  Witness negative;
  for (const auto &[k, v] : state.terms()) {
    if (k[0] < 0) {
      negative.indices = {k};
      break;
    }
  }
  const bool analytic_ok = negative.indices.empty();
  report.add("analytic-non-negative", analytic_ok, negative);
  report.add("analytic-wz-real-imag", ri_ok, ri);
  // The reflection centre is the midpoint of the support; a state satisfying
  // the symmetry for some centre has its support symmetric about it.
  const int centre = state.empty() ? 0 : state.min_exponent(0) + state.max_exponent(0);
  const Witness rec = reciprocal_violation(state, centre);
  report.add("analytic-wx-reciprocal", analytic_ok && *rec.magnitude <= tol.norm, rec);
  return report;
}

std::vector<std::string_view> convention_conditions(const SignalConvention &c) {
  std::vector<std::string_view> ids;
  const bool laurent = c.picture == Picture::Laurent;
  ids.push_back(laurent ? "laurent-parity" : "analytic-non-negative");
  if (c.algebra == Algebra::XRotations) {
    ids.push_back(laurent ? "laurent-wz-real-imag" : "analytic-wz-real-imag");
  } else if (c.algebra == Algebra::ZRotations) {
    ids.push_back(laurent ? "laurent-wx-reciprocal" : "analytic-wx-reciprocal");
  }
  return ids;
}

bool satisfies(const DiagnosticReport &classification, const SignalConvention &convention) {
  if (!is_characterized(convention)) return false;
  for (auto id : convention_conditions(convention)) {
    const Verdict *v = classification.find(id);
    if (v == nullptr || !v->passed) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Laurent <-> analytic

PolynomialState laurent_to_analytic_1d(const PolynomialState &state) {
  if (state.num_vars() != 1) throw Error(ErrorCode::DimensionMismatch, "univariate state expected");
  int n = 0;
  for (const auto &[k, v] : state.terms()) n = std::max(n, std::abs(k[0]));
  PolynomialState::Terms out;
  for (const auto &[k, v] : state.terms()) {
    if (std::abs(k[0] - n) % 2 != 0) {
      throw Error(ErrorCode::IndefiniteParity,
                  "exponent " + std::to_string(k[0]) + " has the wrong parity for degree " +
                      std::to_string(n),
                  {{"exponent", k[0]}, {"degree", n}});
    }
    out.emplace(MultiIndex{(k[0] + n) / 2}, v);
  }
  return PolynomialState(1, state.dim(), PolyKind::Analytic, std::move(out));
}

PolynomialState analytic_to_laurent_1d(const PolynomialState &state, std::optional<int> num_calls) {
  if (state.num_vars() != 1) throw Error(ErrorCode::DimensionMismatch, "univariate state expected");
  for (const auto &[k, v] : state.terms()) {
    if (k[0] < 0) throw Error(ErrorCode::InvalidArgument, "analytic state has a negative exponent");
  }
  const int n = num_calls.value_or(state.empty() ? 0 : state.max_exponent(0));
  if (!state.empty() && n < state.max_exponent(0)) {
    throw Error(ErrorCode::InvalidArgument, "num_calls is below the state's degree");
  }
  PolynomialState::Terms out;
  for (const auto &[k, v] : state.terms()) out.emplace(MultiIndex{2 * k[0] - n}, v);
  return PolynomialState(1, state.dim(), PolyKind::Laurent, std::move(out));
}

// ---------------------------------------------------------------------------
// Synthesis

namespace {

// Peeling works in extended precision.
using Real = long double;
using Cx = std::complex<Real>;
using V2 = std::array<Cx, 2>;
using M2 = std::array<V2, 2>;  // rows
using MatX = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using VecX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

V2 operator*(const M2 &m, const V2 &v) {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

M2 operator*(const M2 &a, const M2 &b) {
  M2 out{};
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
  return out;
}

M2 adjoint(const M2 &m) {
  return {V2{std::conj(m[0][0]), std::conj(m[1][0])}, V2{std::conj(m[0][1]), std::conj(m[1][1])}};
}

Real norm2(const V2 &v) { return std::norm(v[0]) + std::norm(v[1]); }
Cx inner(const V2 &u, const V2 &v) { return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1]; }
V2 perp(const V2 &v) { return {-std::conj(v[1]), std::conj(v[0])}; }

M2 hadamard_ext() {
  const Real h = std::sqrt(Real(0.5));
  return {V2{h, h}, V2{h, -h}};
}

M2 rotation_ext(Algebra a, Real phi) {
  if (a == Algebra::XRotations) {
    const Cx c = std::cos(phi), s = Cx(0, std::sin(phi));
    return {V2{c, s}, V2{s, c}};
  }
  return {V2{std::polar(Real(1), phi), 0}, V2{0, std::polar(Real(1), -phi)}};
}

// Unit eigenvector of sum_i |v_i><v_i| with the largest eigenvalue.
V2 principal_axis(std::initializer_list<V2> vs) {
  Real a = 0, d = 0;
  Cx b = 0;
  for (const auto &v : vs) {
    a += std::norm(v[0]);
    d += std::norm(v[1]);
    b += v[0] * std::conj(v[1]);
  }
  const Real lambda = (a + d) / 2 + std::hypot((a - d) / 2, std::abs(b));
  const V2 x{b, lambda - a}, y{lambda - d, std::conj(b)};
  const V2 &best = norm2(x) >= norm2(y) ? x : y;
  const Real n = std::sqrt(norm2(best));
  if (!(n > 0)) return {1, 0};
  return {best[0] / n, best[1] / n};
}

Real phase_angle_fold(Real phi) {
  // Representative in (-pi/2, pi/2].
  const Real pi = std::numbers::pi_v<Real>;
  if (phi > pi / 2) phi -= pi;
  if (phi <= -pi / 2) phi += pi;
  return phi;
}

struct Step {
  M2 op;
  std::optional<Real> phase;
};

// The top operator A with A^dag g0 ~ |0> and A^dag gm ~ |1> (signal frame
// diag(1, z)), fitted to both endpoints by least squares.
Step choose_top(const SignalConvention &c, const V2 &g0, const V2 &gm, const Tolerances &tol) {
  switch (c.algebra) {
    case Algebra::FullSU2: {
      const Real floor = tol.endpoint;
      if (norm2(g0) <= floor * floor && norm2(gm) <= floor * floor) {
        return {M2{V2{1, 0}, V2{0, 1}}, std::nullopt};
      }
      const V2 top = principal_axis({gm, perp(g0)});
      const V2 first = perp(top);
      const M2 frame{V2{first[0], top[0]}, V2{first[1], top[1]}};
      return {c.basis == SignalBasis::Wx ? frame * hadamard_ext() : frame, std::nullopt};
    }
    case Algebra::XRotations: {
      // exp(i phi X) must send gm = (p, i q) to |1> and g0 = (a, i b) to |0>:
      // cos(phi) p + sin(phi) q = 0 and cos(phi) b - sin(phi) a = 0.
      const V2 axis = principal_axis({V2{gm[0].real(), gm[1].imag()},
                                      V2{g0[1].imag(), -g0[0].real()}});
      const Real phi = phase_angle_fold(std::atan2(axis[0].real(), -axis[1].real()));
      return {rotation_ext(c.algebra, phi), phi};
    }
    case Algebra::ZRotations: {
      // (exp(i phi Z) H)^dag must send gm to |1> and g0 to |0>; both hold when
      // exp(-2 i phi) K is real and negative.
      const Cx k = gm[0] * std::conj(gm[1]) - g0[0] * std::conj(g0[1]);
      const Real phi =
          std::abs(k) > 0 ? phase_angle_fold((std::arg(k) - std::numbers::pi_v<Real>) / 2) : 0;
      return {rotation_ext(c.algebra, phi), phi};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algebra");
}

Step choose_first(const SignalConvention &c, const V2 &v, const Tolerances &tol) {
  switch (c.algebra) {
    case Algebra::FullSU2: {
      const Real n = std::sqrt(norm2(v));
      const CVector unit{Complex(v[0] / n), Complex(v[1] / n)};
      const Matrix m = complete_to_unitary(std::vector{unit}, tol.unitary).matrix();
      return {M2{V2{m(0, 0), m(0, 1)}, V2{m(1, 0), m(1, 1)}}, std::nullopt};
    }
    case Algebra::XRotations: {
      const Real phi = std::atan2(v[1].imag(), v[0].real());
      return {rotation_ext(c.algebra, phi), phi};
    }
    case Algebra::ZRotations: {
      const Real phi = std::arg(v[0]);
      return {rotation_ext(c.algebra, phi), phi};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algebra");
}

// Residuals of the normalization identities: weight - 1, then the real and
// imaginary parts of every nonzero lag.
std::vector<Real> lag_residuals(const std::vector<V2> &g) {
  const std::size_t m = g.size() - 1;
  std::vector<Real> f;
  f.reserve(2 * m + 1);
  for (std::size_t l = 0; l <= m; ++l) {
    Cx acc = 0;
    for (std::size_t k = 0; k + l <= m; ++k) acc += inner(g[k], g[k + l]);
    if (l == 0) {
      f.push_back(acc.real() - 1);
    } else {
      f.push_back(acc.real());
      f.push_back(acc.imag());
    }
  }
  return f;
}

Real max_abs(const std::vector<Real> &f) {
  Real out = 0;
  for (Real x : f) out = std::max(out, std::abs(x));
  return out;
}

// A real direction in coefficient space: entries (index, component, unit).
struct Direction {
  std::size_t n = 0;
  std::array<std::tuple<std::size_t, std::size_t, Cx>, 2> e;
};

// Real directions that keep the symmetry the convention's ops preserve.
std::vector<Direction> allowed_directions(std::size_t m, const SignalConvention &c) {
  const Cx one{1, 0}, i{0, 1};
  std::vector<Direction> out;
  for (std::size_t k = 0; k <= m; ++k) {
    switch (c.algebra) {
      case Algebra::FullSU2:
        for (std::size_t comp = 0; comp < 2; ++comp)
          for (Cx u : {one, i}) out.push_back({1, {{{k, comp, u}}}});
        break;
      case Algebra::XRotations:
        out.push_back({1, {{{k, 0, one}}}});
        out.push_back({1, {{{k, 1, i}}}});
        break;
      case Algebra::ZRotations: {
        const std::size_t mirror = m - k;
        if (mirror < k) break;
        for (Cx u : {one, i}) {
          if (mirror == k) {
            out.push_back({1, {{{k, 0, u}}}});
          } else {
            out.push_back({2, {{{k, 0, u}, {mirror, 0, u}}}});
            out.push_back({2, {{{k, 1, u}, {mirror, 1, -u}}}});
          }
        }
        break;
      }
    }
  }
  return out;
}

// Moves g the shortest way back onto normalized states with the symmetry of
// the convention.
void project_normalized(std::vector<V2> &g, const SignalConvention &c) {
  const std::size_t m = g.size() - 1;
  if (c.algebra == Algebra::XRotations) {
    for (auto &v : g) v = {v[0].real(), Cx(0, v[1].imag())};
  } else if (c.algebra == Algebra::ZRotations) {
    for (std::size_t k = 0; 2 * k <= m; ++k) {
      const Cx p = (g[k][0] + g[m - k][0]) / Real(2), q = (g[k][1] - g[m - k][1]) / Real(2);
      g[k] = {p, q};
      g[m - k] = {p, -q};
    }
  }
  const std::vector<Direction> dirs = allowed_directions(m, c);
  const std::size_t nd = dirs.size();
  for (int iter = 0; iter < 8; ++iter) {
    const std::vector<Real> f = lag_residuals(g);
    const std::size_t nf = f.size();
    const Real size = max_abs(f);
    if (size < 1e-19L) return;
    MatX jac = MatX::Zero(nf, nd);
    for (std::size_t d = 0; d < nd; ++d) {
      for (std::size_t t = 0; t < dirs[d].n; ++t) {
        const auto &[j, comp, u] = dirs[d].e[t];
        for (std::size_t l = 0; l <= m; ++l) {
          Cx df = 0;
          if (j + l <= m) df += std::conj(u) * g[j + l][comp];
          if (j >= l) df += std::conj(g[j - l][comp]) * u;
          if (l == 0) {
            jac(0, d) += df.real();
          } else {
            jac(2 * l - 1, d) += df.real();
            jac(2 * l, d) += df.imag();
          }
        }
      }
    }
    Eigen::CompleteOrthogonalDecomposition<MatX> cod(jac);
    cod.setThreshold(1e-14L);
    const VecX alpha = cod.solve(Eigen::Map<const VecX>(f.data(), nf));
    std::vector<V2> trial = g;
    for (std::size_t d = 0; d < nd; ++d) {
      for (std::size_t t = 0; t < dirs[d].n; ++t) {
        const auto &[j, comp, u] = dirs[d].e[t];
        trial[j][comp] -= alpha[d] * u;
      }
    }
    if (!(max_abs(lag_residuals(trial)) < size / 2)) return;
    g = std::move(trial);
  }
}

// Dense analytic evaluation; linear in each op.
std::vector<V2> evaluate_ext(const std::vector<M2> &ops, bool wx) {
  const M2 h = hadamard_ext();
  const std::size_t n = ops.size() - 1;
  std::vector<V2> c(n + 1, V2{});
  c[0] = {ops[0][0][0], ops[0][1][0]};
  for (std::size_t k = 1; k <= n; ++k) {
    if (wx) for (std::size_t j = 0; j < k; ++j) c[j] = h * c[j];
    for (std::size_t j = k; j >= 1; --j) c[j][1] = c[j - 1][1];
    c[0][1] = 0;
    if (wx) for (std::size_t j = 0; j <= k; ++j) c[j] = h * c[j];
    for (std::size_t j = 0; j <= k; ++j) c[j] = ops[k] * c[j];
  }
  return c;
}

std::vector<Real> flatten(const std::vector<V2> &c) {
  std::vector<Real> out;
  out.reserve(4 * c.size());
  for (const auto &v : c) {
    for (std::size_t i = 0; i < 2; ++i) {
      out.push_back(v[i].real());
      out.push_back(v[i].imag());
    }
  }
  return out;
}

Real distance(const std::vector<M2> &ops, const std::vector<V2> &target, bool wx) {
  const auto c = evaluate_ext(ops, wx);
  Real s = 0;
  for (std::size_t j = 0; j < c.size(); ++j) s += std::norm(c[j][0] - target[j][0]) +
                                                  std::norm(c[j][1] - target[j][1]);
  return std::sqrt(s);
}

// Levenberg-Marquardt on op_k <- op_k exp(sum_g theta_g G_g). Returns the
// final l2 residual.
Real refine(std::vector<M2> &ops, std::vector<Real> &phases, const std::vector<V2> &target,
            const SignalConvention &c) {
  const bool wx = c.basis == SignalBasis::Wx;
  const Cx i{0, 1};
  std::vector<M2> gens;
  if (c.algebra != Algebra::ZRotations) gens.push_back(M2{V2{0, i}, V2{i, 0}});
  if (c.algebra != Algebra::XRotations) gens.push_back(M2{V2{i, 0}, V2{0, -i}});
  if (c.algebra == Algebra::FullSU2) {
    gens.push_back(M2{V2{0, 1}, V2{-1, 0}});
    gens.push_back(M2{V2{i, 0}, V2{0, i}});
  }
  const std::size_t np = ops.size() * gens.size();
  const std::vector<Real> t = flatten(target);
  const std::size_t nr = t.size();

  auto apply = [&](std::vector<M2> &out, std::vector<Real> &ph, const std::vector<Real> &step) {
    for (std::size_t k = 0; k < out.size(); ++k) {
      const Real *th = &step[k * gens.size()];
      if (c.algebra == Algebra::FullSU2) {
        // exp(i (x X + z Z + y Y + w I))
        const Real x = th[0], z = th[1], y = th[2], w = th[3];
        const Real r = std::sqrt(x * x + y * y + z * z);
        const Real sinc = r > 0 ? std::sin(r) / r : 1;
        const Cx co = std::cos(r), ph0 = std::polar(Real(1), w);
        const M2 e{V2{(co + i * sinc * z) * ph0, (i * sinc * x + sinc * y) * ph0},
                   V2{(i * sinc * x - sinc * y) * ph0, (co - i * sinc * z) * ph0}};
        out[k] = out[k] * e;
      } else {
        ph[k] += th[0];
        out[k] = rotation_ext(c.algebra, ph[k]);
      }
    }
  };

  Real cost = distance(ops, target, wx);
  Real lambda = 1e-6L;
  for (int iter = 0; iter < 100 && cost > 1e-17L; ++iter) {
    const std::vector<Real> f = flatten(evaluate_ext(ops, wx));
    VecX r(nr);
    for (std::size_t q = 0; q < nr; ++q) r(q) = t[q] - f[q];
    MatX jac(nr, np);
    for (std::size_t k = 0; k < ops.size(); ++k) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        std::vector<M2> d = ops;
        d[k] = ops[k] * gens[g];
        const std::vector<Real> col = flatten(evaluate_ext(d, wx));
        jac.col(k * gens.size() + g) = Eigen::Map<const VecX>(col.data(), nr);
      }
    }
    bool accepted = false;
    for (int tries = 0; tries < 16 && !accepted; ++tries) {
      // argmin |J x - r|^2 + lambda |x|^2 as one stacked least-squares problem.
      MatX a(nr + np, np);
      a << jac, std::sqrt(lambda) * MatX::Identity(np, np);
      VecX b = VecX::Zero(nr + np);
      b.head(nr) = r;
      const VecX x = a.householderQr().solve(b);
      const std::vector<Real> step(x.data(), x.data() + np);
      std::vector<M2> trial = ops;
      std::vector<Real> trial_ph = phases;
      apply(trial, trial_ph, step);
      const Real trial_cost = distance(trial, target, wx);
      if (trial_cost < cost) {
        accepted = true;
        const bool stalled = trial_cost > Real(0.999) * cost;
        ops = std::move(trial);
        phases = std::move(trial_ph);
        cost = trial_cost;
        lambda = std::max(lambda / 100, Real(1e-30L));
        if (stalled) return cost;
      } else {
        lambda *= 100;
      }
    }
    if (!accepted) break;
  }
  return cost;
}

// Synthesizes an analytic-picture protocol with exactly `num_calls` signal
// calls for the dense coefficient list `target` (length num_calls + 1).
Protocol1D synthesize_analytic(const std::vector<CVector> &target, const SignalConvention &c,
                               const Tolerances &tol) {
  const bool wx = c.basis == SignalBasis::Wx;
  const M2 h = hadamard_ext();
  std::vector<V2> coeffs;
  for (const auto &v : target) coeffs.push_back({v[0], v[1]});
  project_normalized(coeffs, c);
  std::vector<Step> steps;
  for (std::size_t m = coeffs.size() - 1; m >= 1; --m) {
    Step top = choose_top(c, coeffs.front(), coeffs[m], tol);
    // gamma' = B s^dag B^dag A^dag gamma with B the signal basis change.
    const M2 undo = adjoint(wx ? top.op * h : top.op);
    for (auto &v : coeffs) v = undo * v;
    for (std::size_t k = 0; k < m; ++k) coeffs[k][1] = coeffs[k + 1][1];
    coeffs.pop_back();
    if (wx) for (auto &v : coeffs) v = h * v;
    project_normalized(coeffs, c);
    steps.push_back(std::move(top));
  }
  steps.push_back(choose_first(c, coeffs.front(), tol));
  std::reverse(steps.begin(), steps.end());

  std::vector<M2> ops;
  std::vector<Real> ext_phases;
  for (const auto &s : steps) {
    ops.push_back(s.op);
    if (s.phase) ext_phases.push_back(*s.phase);
  }
  std::vector<V2> goal;
  for (const auto &v : target) goal.push_back({v[0], v[1]});
  if (distance(ops, goal, wx) > 1e-13L) refine(ops, ext_phases, goal, c);

  std::vector<Matrix> rounded;
  for (const auto &op : ops) {
    Matrix m(2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t col = 0; col < 2; ++col) m(r, col) = Complex(op[r][col]);
    rounded.push_back(m);
  }
  std::vector<double> phases(ext_phases.begin(), ext_phases.end());
  const double residual = static_cast<double>(distance(ops, goal, wx));
  if (!(residual <= std::sqrt(tol.norm))) {
    throw Error(ErrorCode::ConventionViolated, "a processing step could not lower the degree",
                {{"residual", residual}});
  }

  Protocol1D p{c, {}, std::nullopt};
  if (c.algebra == Algebra::FullSU2) {
    for (const auto &m : rounded) p.ops.emplace_back(m, tol.unitary);
  } else {
    // Ops are rebuilt from the wrapped phases.
    p.phases.emplace();
    for (double phi : phases) {
      p.phases->push_back(wrap_phase(phi));
      p.ops.push_back(rotation_for(c.algebra, p.phases->back()));
    }
  }
  return p;
}
}  // namespace

Protocol1D synthesize_1d(const PolynomialState &state, const SignalConvention &convention,
                         const Tolerances &tol) {
  require_univariate_qubit(state);
  if (!is_characterized(convention)) {
    throw Error(ErrorCode::ConventionViolated,
                "no characterization for this basis/algebra combination");
  }
  const double residual = normalization_residual(state);
  if (residual > tol.norm) {
    throw Error(ErrorCode::NotNormalized, "state is not normalized", {{"residual", residual}});
  }
  if (convention.picture == Picture::Analytic && !state.empty() && state.min_exponent(0) < 0) {
    throw Error(ErrorCode::BadSupport, "analytic synthesis needs non-negative exponents",
                {{"min_exponent", state.min_exponent(0)}});
  }
  const DiagnosticReport classification = classify_state_1d(state, tol);
  if (convention.picture == Picture::Laurent && !classification.find("laurent-parity")->passed) {
    throw Error(ErrorCode::IndefiniteParity, "Laurent state does not have definite parity");
  }
  for (auto id : convention_conditions(convention)) {
    const Verdict *v = classification.find(id);
    if (!v->passed) {
      throw Error(ErrorCode::ConventionViolated,
                  "state violates condition '" + std::string(id) + "'",
                  {{"deviation", v->witness.magnitude.value_or(0.0)}});
    }
  }
  const PolynomialState analytic =
      convention.picture == Picture::Laurent ? laurent_to_analytic_1d(state) : state;
  const int n = analytic.empty() ? 0 : analytic.max_exponent(0);
  return synthesize_analytic(dense_coefficients(analytic, n + 1), convention, tol);
}

// ---------------------------------------------------------------------------
// Basis conversion

Protocol1D convert_convention_1d(const Protocol1D &p, SignalBasis target) {
  validate_protocol(p);
  Protocol1D out = p;
  out.convention.basis = target;
  if (target == p.convention.basis || p.ops.size() == 1) return out;
  const UnitaryMatrix h = hadamard();
  const std::size_t n = p.ops.size() - 1;
  out.ops.clear();
  for (std::size_t k = 0; k <= n; ++k) {
    if (k == 0) out.ops.push_back(h * p.ops[k]);
    else if (k == n) out.ops.push_back(p.ops[k] * h);
    else out.ops.push_back(h * p.ops[k] * h);
  }
  out.convention.algebra = Algebra::FullSU2;
  out.phases.reset();
  return out;
}

}  // namespace qspforge
