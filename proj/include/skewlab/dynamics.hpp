// Copyright 2026 The Skewlab Authors
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

#ifndef SKEWLAB_DYNAMICS_HPP
#define SKEWLAB_DYNAMICS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "skewlab/contfrac.hpp"
#include "skewlab/fourier.hpp"

namespace skewlab::dyn {

/// Point of a torus of dimension 1..4, componentwise exact mod-1
/// arithmetic.
struct TorusPoint {
  std::array<Angle, 4> c{};
  int dim = 0;

  static TorusPoint make2(Angle x, Angle y) { return {{x, y, {}, {}}, 2}; }
  static TorusPoint make3(Angle x, Angle u, Angle v) { return {{x, u, v, {}}, 3}; }
  static TorusPoint make4(Angle x, Angle y, Angle u, Angle v) { return {{x, y, u, v}, 4}; }

  Angle operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  Angle& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  bool operator==(const TorusPoint&) const = default;
};

/// Torus element (u*alpha + v)/w with integer u, v, w: the exact symbolic
/// form needed wherever membership of a quantity in alpha*Q + Q has to be
/// decided (floating input cannot decide it).
struct SymTorus {
  cpp_int u = 0, v = 0, w = 1;

  /// The representative value ((u*alpha + v)/w) mod 1 as an Angle, using
  /// the representative of alpha in [0,1); one 2^-128 rounding.
  Angle resolve(Angle alpha) const;
  static SymTorus zero() { return {0, 0, 1}; }
  static SymTorus rational(cpp_int num, cpp_int den) { return {0, std::move(num), std::move(den)}; }
};

/**
 * The skew product T(x, y) = (x + alpha, y + c x + f(x)) on T^2.
 *
 * Internally the fiber map is split as c x + gamma + f0(x) with gamma an
 * exact Angle (the mean of f) and f0 zero-mean: orbit code then advances
 * the affine part in exact fixed point and only the f0 Birkhoff sums run
 * in floating point, so purely affine systems iterate drift-free and the
 * general case degrades linearly in the number of steps.
 */
class SkewSystem {
 public:
  // alpha is irrational by construction when given as a long expansion;
  // the raw-angle factory leaves that assertion to the caller.
  static SkewSystem make(const dio::ContinuedFraction& alpha, long long c,
                         const harmonic::FourierSeries& f);
  static SkewSystem make_affine(const dio::ContinuedFraction& alpha, long long c, Angle gamma);
  static SkewSystem make_with_angle(Angle alpha, long long c, const harmonic::FourierSeries& f);

  Angle alpha() const { return alpha_; }
  const std::optional<dio::ContinuedFraction>& alpha_cf() const { return alpha_cf_; }
  long long c() const { return c_; }
  const harmonic::FourierSeries& f() const { return f_; }
  Angle gamma() const { return gamma_; }
  const harmonic::FourierSeries& f_zero_mean() const { return f0_; }
  bool is_affine() const { return f0_.support().empty(); }

  /// One fiber increment psi(x) = c x + f(x), exact in the affine part.
  Angle psi(Angle x) const;
  /// Birkhoff sum psi^{(k)}(x) = sum_{i<k} psi(x + i alpha) as an Angle.
  Angle psi_iterated(Angle x, std::uint64_t k) const;

 private:
  std::optional<dio::ContinuedFraction> alpha_cf_;
  Angle alpha_;
  long long c_ = 0;
  harmonic::FourierSeries f_;
  Angle gamma_;
  harmonic::FourierSeries f0_;
};

/// T^{stride*k}(start) for k = 0..n-1, streamed in order.
void skew_orbit(const SkewSystem& sys, TorusPoint start, std::uint64_t n, std::uint64_t stride,
                const std::function<void(const TorusPoint&)>& sink);
std::vector<TorusPoint> skew_orbit(const SkewSystem& sys, TorusPoint start, std::uint64_t n,
                                   std::uint64_t stride = 1);

/// f^{(n)}(x) = sum_{i<n} f(x + i alpha) as a real number (lifted, not
/// mod 1), Kahan-compensated.
double birkhoff_cocycle(const SkewSystem& sys, Angle x, std::uint64_t n);

/// f(x) + f(x + 1/q) + ... + f(x + (q-1)/q): only frequencies divisible
/// by q survive, each scaled by q.
double f_q_sum(const harmonic::FourierSeries& f, std::uint64_t q, Angle x);

/// One step of (T^r x T^s)_Psi on T^4 with Psi = (psi^{(r)}, psi^{(s)}).
TorusPoint product_skew_step(const SkewSystem& sys, long long r, long long s,
                             const TorusPoint& p);

enum class ComponentKind { ASet, ISet, JSet };

/**
 * One component of the explicit minimal = ergodic decomposition:
 * A-sets {(x, y + c1) : s x = r y} of the base product T^r x T^s, the
 * I-sets A x T^2 of its fiber extension, and in the affine case the
 * refined J-sets cut out by the l0/k0 congruence.
 */
struct ComponentSpec {
  ComponentKind kind = ComponentKind::ASet;
  long long r = 3, s = 5;
  cpp_int a = 0, b = 0;  // ar + bs = 1, minimal-|a| pair
  Angle alpha;
  Angle c1;
  std::optional<SymTorus> c1_sym;
  Angle c2;
  Angle gamma;
  std::optional<SymTorus> gamma_sym;
  std::optional<long long> l0;
  std::optional<cpp_int> k0;

  static ComponentSpec A_set(long long r, long long s, Angle c1);
  static ComponentSpec A_set(long long r, long long s, const SymTorus& c1, Angle alpha);
  static ComponentSpec I_set(long long r, long long s, Angle c1);
  /// Solves the l0/k0 congruences; throws if no l0 <= l_cap exists.
  static ComponentSpec J_set(long long r, long long s, const SymTorus& gamma, const SymTorus& c1,
                             Angle c2, Angle alpha, long long l_cap = 1'000'000);

  std::string to_json() const;
  static ComponentSpec from_json(const std::string& text);
};

struct L0K0 {
  bool found = false;
  long long l0 = 0;
  cpp_int k0 = 0;
};

/// Smallest positive l <= l_cap with l * rs((s-r) gamma - r c1) in
/// alpha*Z + Z, and the matching k0; exact big-rational arithmetic on the
/// symbolic inputs.  found = false when no l <= l_cap works ("not in
/// alpha*Q + Q up to cap").
L0K0 solve_l0_k0(long long r, long long s, const SymTorus& gamma, const SymTorus& c1,
                 long long l_cap);

/// circle-distance(s x, r (y - c1)) <= tol; tol = 0 is the exact test.
bool membership_A(const ComponentSpec& spec, const TorusPoint& p, Angle tol);
/// A-membership of the base pair of a dim-4 point.
bool membership_I(const ComponentSpec& spec, const TorusPoint& p, Angle tol);
/// Both J congruences: the base relation and
/// l0 s^2 u = l0 r^2 v + (l0 rs (r-s)/2 - k0)(a x + b y).
bool membership_J(const ComponentSpec& spec, const TorusPoint& p, Angle tol);

// The conjugacy maps of the component analysis; domain membership is
// checked at `tol` where a domain set exists.
Angle map_W(const ComponentSpec& spec, const TorusPoint& p, Angle tol = Angle());
TorusPoint map_V(const ComponentSpec& spec, const TorusPoint& p, Angle tol = Angle());
TorusPoint map_V_inv(const ComponentSpec& spec, Angle t, Angle u, Angle v);
TorusPoint map_U(const ComponentSpec& spec, const TorusPoint& p);
TorusPoint map_U_inv(const ComponentSpec& spec, const TorusPoint& p);

/// T_{psi_{c1}} on T^3: (t, u, v) -> (t + alpha, u + psi^{(r)}(r t),
/// v + psi^{(s)}(s t + c1)).
TorusPoint step_T_psi_c1(const SkewSystem& sys, const ComponentSpec& spec, const TorusPoint& p);
/// Affine-case T_{phi_{c1}}: fiber increment (r^2 t + r gamma,
/// s^2 t + s c1 + s gamma); exact.
TorusPoint step_T_phi_c1(const SkewSystem& sys, const ComponentSpec& spec, const TorusPoint& p);
/// Base product T^r x T^s on T^2.
TorusPoint step_base_product(Angle alpha, long long r, long long s, const TorusPoint& p);

/// Whether e^{2 pi i (A x + B y + C u + D v)} is constant on I_0
/// = {(r t, s t, u, v)}: exactly A r + B s = 0, C = 0, D = 0.
bool char_constant_on_I(long long A, long long B, long long C, long long D, long long r,
                        long long s);

/// Whether the fiber character (A, B) lies in the coboundary group
/// Gamma: A r^2 + B s^2 = 0 and (A r + B s) gamma + B s c1 in
/// alpha*Z + Z, decided exactly on the symbolic inputs.
bool char_in_Gamma(long long A, long long B, long long r, long long s, const SymTorus& gamma,
                   const SymTorus& c1);

}  // namespace skewlab::dyn

#endif  // SKEWLAB_DYNAMICS_HPP
