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

#include "skewlab/dynamics.hpp"

#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "skewlab/arith.hpp"

namespace skewlab::dyn {

using nlohmann::json;

Angle SymTorus::resolve(Angle alpha) const {
  if (w == 0) throw std::domain_error("SymTorus: w = 0");
  const cpp_int num = u * to_cpp_int(alpha.raw()) + (v << 128);
  // Round-to-nearest division by w, then wrap.
  cpp_int d = w;
  cpp_int n = num;
  if (d < 0) {
    d = -d;
    n = -n;
  }
  cpp_int q = (2 * n + d) / (2 * d);  // floor((n + d/2)/d) for either sign of n
  if (2 * n + d < 0 && (2 * n + d) % (2 * d) != 0) q -= 1;
  return Angle::from_raw(to_uint128_mod(q));
}

SkewSystem SkewSystem::make(const dio::ContinuedFraction& alpha, long long c,
                            const harmonic::FourierSeries& f) {
  SkewSystem s = make_with_angle(alpha.to_angle(), c, f);
  s.alpha_cf_ = alpha;
  return s;
}

SkewSystem SkewSystem::make_with_angle(Angle alpha, long long c,
                                       const harmonic::FourierSeries& f) {
  if (!f.is_real()) throw std::invalid_argument("SkewSystem: f must be real-flagged");
  SkewSystem s;
  s.alpha_ = alpha;
  s.c_ = c;
  s.f_ = f;
  s.gamma_ = Angle::from_double(f.mean().real());
  s.f0_ = f.without_mean();
  return s;
}

SkewSystem SkewSystem::make_affine(const dio::ContinuedFraction& alpha, long long c, Angle gamma) {
  SkewSystem s;
  s.alpha_cf_ = alpha;
  s.alpha_ = alpha.to_angle();
  s.c_ = c;
  s.f_ = harmonic::FourierSeries({}, gamma.to_double(), /*real=*/true);
  s.gamma_ = gamma;  // kept exact; f.mean() is its double image
  s.f0_ = harmonic::FourierSeries({}, 0.0, /*real=*/true);
  return s;
}

Angle SkewSystem::psi(Angle x) const {
  Angle out = x.scaled(c_) + gamma_;
  if (!is_affine()) out += Angle::from_double(f0_.evaluate_real(x));
  return out;
}

Angle SkewSystem::psi_iterated(Angle x, std::uint64_t k) const {
  Angle exact;
  KahanSum fl;
  Angle xi = x;
  for (std::uint64_t i = 0; i < k; ++i) {
    exact += xi.scaled(c_) + gamma_;
    if (!is_affine()) fl.add(f0_.evaluate_real(xi));
    xi += alpha_;
  }
  if (!is_affine()) exact += Angle::from_double(fl.sum);
  return exact;
}

void skew_orbit(const SkewSystem& sys, TorusPoint start, std::uint64_t n, std::uint64_t stride,
                const std::function<void(const TorusPoint&)>& sink) {
  if (start.dim != 2) throw std::invalid_argument("skew_orbit: start must be 2-dimensional");
  if (n < 1 || stride < 1) throw std::invalid_argument("skew_orbit: n, stride must be >= 1");
  const bool affine = sys.is_affine();
  Angle x = start[0];
  Angle exact;  // accumulated affine fiber part
  KahanSum fl;  // accumulated f0 part
  for (std::uint64_t k = 0; k < n; ++k) {
    Angle fiber = start[1] + exact;
    if (!affine) fiber += Angle::from_double(fl.sum);
    sink(TorusPoint::make2(x, fiber));
    if (k + 1 == n) break;
    for (std::uint64_t i = 0; i < stride; ++i) {
      exact += x.scaled(sys.c()) + sys.gamma();
      if (!affine) fl.add(sys.f_zero_mean().evaluate_real(x));
      x += sys.alpha();
    }
  }
}

std::vector<TorusPoint> skew_orbit(const SkewSystem& sys, TorusPoint start, std::uint64_t n,
                                   std::uint64_t stride) {
  std::vector<TorusPoint> out;
  out.reserve(n);
  skew_orbit(sys, start, n, stride, [&](const TorusPoint& p) { out.push_back(p); });
  return out;
}

double birkhoff_cocycle(const SkewSystem& sys, Angle x, std::uint64_t n) {
  KahanSum acc;
  Angle xi = x;
  for (std::uint64_t i = 0; i < n; ++i) {
    acc.add(sys.f().evaluate_real(xi));
    xi += sys.alpha();
  }
  return acc.sum;
}

double f_q_sum(const harmonic::FourierSeries& f, std::uint64_t q, Angle x) {
  if (q < 1) throw std::invalid_argument("f_q_sum: q must be >= 1");
  if (!f.is_real()) throw std::invalid_argument("f_q_sum: f must be real-flagged");
  KahanSum acc;
  acc.add(static_cast<double>(q) * f.mean().real());
  const long long qs = static_cast<long long>(q);
  for (const auto& [n, c] : f.support()) {
    if (n <= 0 || n % qs != 0) continue;
    const std::complex<double> e = unit(x.scaled(n));
    acc.add(2.0 * static_cast<double>(q) * (c.real() * e.real() - c.imag() * e.imag()));
  }
  return acc.sum;
}

TorusPoint product_skew_step(const SkewSystem& sys, long long r, long long s,
                             const TorusPoint& p) {
  if (p.dim != 4) throw std::invalid_argument("product_skew_step: point must be 4-dimensional");
  if (r == s || std::gcd(r, s) != 1)
    throw std::invalid_argument("product_skew_step: r, s must be distinct and coprime");
  return TorusPoint::make4(p[0] + sys.alpha().scaled(r), p[1] + sys.alpha().scaled(s),
                           p[2] + sys.psi_iterated(p[0], static_cast<std::uint64_t>(r)),
                           p[3] + sys.psi_iterated(p[1], static_cast<std::uint64_t>(s)));
}

namespace {

void check_rs(long long r, long long s, bool odd_required) {
  if (r < 1 || s < 1 || r == s || std::gcd(r, s) != 1)
    throw std::invalid_argument("ComponentSpec: r, s must be distinct, positive, coprime");
  if (odd_required && (r < 3 || s < 3 || r % 2 == 0 || s % 2 == 0))
    throw std::invalid_argument("ComponentSpec: J machinery needs odd r, s >= 3");
}

void fill_bezout(ComponentSpec& spec) {
  const arith::Bezout bz = arith::ext_gcd(cpp_int(spec.r), cpp_int(spec.s));
  spec.a = bz.a;
  spec.b = bz.b;
}

}  // namespace

ComponentSpec ComponentSpec::A_set(long long r, long long s, Angle c1) {
  check_rs(r, s, false);
  ComponentSpec spec;
  spec.kind = ComponentKind::ASet;
  spec.r = r;
  spec.s = s;
  spec.c1 = c1;
  fill_bezout(spec);
  return spec;
}

ComponentSpec ComponentSpec::A_set(long long r, long long s, const SymTorus& c1, Angle alpha) {
  ComponentSpec spec = A_set(r, s, c1.resolve(alpha));
  spec.alpha = alpha;
  spec.c1_sym = c1;
  return spec;
}

ComponentSpec ComponentSpec::I_set(long long r, long long s, Angle c1) {
  ComponentSpec spec = A_set(r, s, c1);
  spec.kind = ComponentKind::ISet;
  return spec;
}

ComponentSpec ComponentSpec::J_set(long long r, long long s, const SymTorus& gamma,
                                   const SymTorus& c1, Angle c2, Angle alpha, long long l_cap) {
  check_rs(r, s, true);
  ComponentSpec spec;
  spec.kind = ComponentKind::JSet;
  spec.r = r;
  spec.s = s;
  spec.alpha = alpha;
  spec.gamma_sym = gamma;
  spec.gamma = gamma.resolve(alpha);
  spec.c1_sym = c1;
  spec.c1 = c1.resolve(alpha);
  spec.c2 = c2;
  fill_bezout(spec);
  const L0K0 sol = solve_l0_k0(r, s, gamma, c1, l_cap);
  if (!sol.found)
    throw std::domain_error("ComponentSpec::J_set: rs((s-r)gamma - r c1) not in alpha*Q + Q "
                            "up to the cap");
  spec.l0 = sol.l0;
  spec.k0 = sol.k0;
  return spec;
}

L0K0 solve_l0_k0(long long r, long long s, const SymTorus& gamma, const SymTorus& c1,
                 long long l_cap) {
  if (gamma.w == 0 || c1.w == 0) throw std::domain_error("solve_l0_k0: w = 0");
  if (l_cap < 1) throw std::invalid_argument("solve_l0_k0: l_cap must be >= 1");
  // rs((s-r)gamma - r c1) = (U alpha + V) / W exactly.
  const cpp_int rs = cpp_int(r) * s;
  cpp_int U = rs * ((cpp_int(s) - r) * gamma.u * c1.w - cpp_int(r) * c1.u * gamma.w);
  cpp_int V = rs * ((cpp_int(s) - r) * gamma.v * c1.w - cpp_int(r) * c1.v * gamma.w);
  cpp_int W = gamma.w * c1.w;
  if (W < 0) {
    W = -W;
    U = -U;
    V = -V;
  }
  const cpp_int g = gcd(gcd(abs(U), abs(V)), W);
  if (g > 1) {
    U /= g;
    V /= g;
    W /= g;
  }
  // With alpha irrational, l (U alpha + V)/W lies in alpha*Z + Z exactly
  // when W | l U and W | l V.
  for (long long l = 1; l <= l_cap; ++l) {
    if ((l * U) % W == 0 && (l * V) % W == 0) return {true, l, (l * U) / W};
  }
  return {false, 0, 0};
}

bool membership_A(const ComponentSpec& spec, const TorusPoint& p, Angle tol) {
  if (p.dim != 2) throw std::invalid_argument("membership_A: point must be 2-dimensional");
  const Angle lhs = p[0].scaled(spec.s);
  const Angle rhs = (p[1] - spec.c1).scaled(spec.r);
  return Angle::circle_distance_raw(lhs, rhs) <= tol.raw();
}

bool membership_I(const ComponentSpec& spec, const TorusPoint& p, Angle tol) {
  if (p.dim != 4) throw std::invalid_argument("membership_I: point must be 4-dimensional");
  return membership_A(spec, TorusPoint::make2(p[0], p[1]), tol);
}

bool membership_J(const ComponentSpec& spec, const TorusPoint& p, Angle tol) {
  if (spec.kind != ComponentKind::JSet || !spec.l0 || !spec.k0)
    throw std::logic_error("membership_J: spec lacks solved l0/k0");
  if (p.dim != 4) throw std::invalid_argument("membership_J: point must be 4-dimensional");
  if (!membership_I(spec, p, tol)) return false;
  const long long l0 = *spec.l0;
  const Angle y = p[1] - spec.c1;
  const Angle v = p[3] - spec.c2;
  const Angle base = p[0].scaled(spec.a) + y.scaled(spec.b);  // a x + b y
  // (r - s)/2 is an integer: r, s odd.  The k0 term enters with a plus:
  // that is the sign under which the step increment
  // l0 rs((s-r)gamma - r c1) - k0 alpha of the defining functional is an
  // integer, making the set invariant.
  const cpp_int coeff = cpp_int(l0) * spec.r * spec.s * (spec.r - spec.s) / 2 + *spec.k0;
  const Angle lhs = p[2].scaled(cpp_int(l0) * spec.s * spec.s);
  const Angle rhs = v.scaled(cpp_int(l0) * spec.r * spec.r) + base.scaled(coeff);
  return Angle::circle_distance_raw(lhs, rhs) <= tol.raw();
}

Angle map_W(const ComponentSpec& spec, const TorusPoint& p, Angle tol) {
  if (!membership_A(spec, p, tol)) throw std::domain_error("map_W: point not on the A-set");
  return p[0].scaled(spec.a) + (p[1] - spec.c1).scaled(spec.b);
}

TorusPoint map_V(const ComponentSpec& spec, const TorusPoint& p, Angle tol) {
  if (!membership_I(spec, p, tol)) throw std::domain_error("map_V: point not on the I-set");
  const Angle t = p[0].scaled(spec.a) + (p[1] - spec.c1).scaled(spec.b);
  return TorusPoint::make3(t, p[2], p[3]);
}

TorusPoint map_V_inv(const ComponentSpec& spec, Angle t, Angle u, Angle v) {
  return TorusPoint::make4(t.scaled(spec.r), t.scaled(spec.s) + spec.c1, u, v);
}

TorusPoint map_U(const ComponentSpec& spec, const TorusPoint& p) {
  if (p.dim != 3) throw std::invalid_argument("map_U: point must be 3-dimensional");
  const long long R = spec.r * (spec.r - 1) / 2;
  const long long S = spec.s * (spec.s - 1) / 2;
  return TorusPoint::make3(p[0], p[1] - p[0].scaled(R), p[2] - p[0].scaled(S));
}

TorusPoint map_U_inv(const ComponentSpec& spec, const TorusPoint& p) {
  if (p.dim != 3) throw std::invalid_argument("map_U_inv: point must be 3-dimensional");
  const long long R = spec.r * (spec.r - 1) / 2;
  const long long S = spec.s * (spec.s - 1) / 2;
  return TorusPoint::make3(p[0], p[1] + p[0].scaled(R), p[2] + p[0].scaled(S));
}

TorusPoint step_T_psi_c1(const SkewSystem& sys, const ComponentSpec& spec, const TorusPoint& p) {
  if (p.dim != 3) throw std::invalid_argument("step_T_psi_c1: point must be 3-dimensional");
  const Angle t = p[0];
  return TorusPoint::make3(
      t + sys.alpha(),
      p[1] + sys.psi_iterated(t.scaled(spec.r), static_cast<std::uint64_t>(spec.r)),
      p[2] + sys.psi_iterated(t.scaled(spec.s) + spec.c1, static_cast<std::uint64_t>(spec.s)));
}

TorusPoint step_T_phi_c1(const SkewSystem& sys, const ComponentSpec& spec, const TorusPoint& p) {
  if (p.dim != 3) throw std::invalid_argument("step_T_phi_c1: point must be 3-dimensional");
  if (!sys.is_affine() || sys.c() != 1)
    throw std::invalid_argument("step_T_phi_c1: defined for the affine case c = 1");
  const Angle t = p[0];
  const Angle du = t.scaled(spec.r * spec.r) + sys.gamma().scaled(spec.r);
  const Angle dv = t.scaled(spec.s * spec.s) + spec.c1.scaled(spec.s) + sys.gamma().scaled(spec.s);
  return TorusPoint::make3(t + sys.alpha(), p[1] + du, p[2] + dv);
}

TorusPoint step_base_product(Angle alpha, long long r, long long s, const TorusPoint& p) {
  if (p.dim != 2) throw std::invalid_argument("step_base_product: point must be 2-dimensional");
  return TorusPoint::make2(p[0] + alpha.scaled(r), p[1] + alpha.scaled(s));
}

bool char_constant_on_I(long long A, long long B, long long C, long long D, long long r,
                        long long s) {
  return cpp_int(A) * r + cpp_int(B) * s == 0 && C == 0 && D == 0;
}

bool char_in_Gamma(long long A, long long B, long long r, long long s, const SymTorus& gamma,
                   const SymTorus& c1) {
  if (gamma.w == 0 || c1.w == 0) throw std::domain_error("char_in_Gamma: w = 0");
  if (cpp_int(A) * r * r + cpp_int(B) * s * s != 0) return false;
  // (A r + B s) gamma + B s c1 = (U alpha + V)/W must lie in alpha*Z + Z.
  const cpp_int m = cpp_int(A) * r + cpp_int(B) * s;
  const cpp_int bs = cpp_int(B) * s;
  const cpp_int U = m * gamma.u * c1.w + bs * c1.u * gamma.w;
  const cpp_int V = m * gamma.v * c1.w + bs * c1.v * gamma.w;
  const cpp_int W = gamma.w * c1.w;
  return U % W == 0 && V % W == 0;
}

std::string ComponentSpec::to_json() const {
  json j;
  switch (kind) {
    case ComponentKind::ASet: j["kind"] = "A"; break;
    case ComponentKind::ISet: j["kind"] = "I"; break;
    case ComponentKind::JSet: j["kind"] = "J"; break;
  }
  j["r"] = r;
  j["s"] = s;
  j["a"] = a.str();
  j["b"] = b.str();
  j["alpha"] = to_cpp_int(alpha.raw()).str();
  j["c1"] = to_cpp_int(c1.raw()).str();
  j["c2"] = to_cpp_int(c2.raw()).str();
  j["gamma"] = to_cpp_int(gamma.raw()).str();
  auto sym = [](const SymTorus& t) {
    return json{{"u", t.u.str()}, {"v", t.v.str()}, {"w", t.w.str()}};
  };
  if (c1_sym) j["c1_sym"] = sym(*c1_sym);
  if (gamma_sym) j["gamma_sym"] = sym(*gamma_sym);
  if (l0) j["l0"] = *l0;
  if (k0) j["k0"] = k0->str();
  return j.dump(2);
}

ComponentSpec ComponentSpec::from_json(const std::string& text) {
  const json j = json::parse(text);
  ComponentSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "A")
    spec.kind = ComponentKind::ASet;
  else if (kind == "I")
    spec.kind = ComponentKind::ISet;
  else if (kind == "J")
    spec.kind = ComponentKind::JSet;
  else
    throw std::runtime_error("ComponentSpec::from_json: unknown kind " + kind);
  spec.r = j.at("r").get<long long>();
  spec.s = j.at("s").get<long long>();
  spec.a = cpp_int(j.at("a").get<std::string>());
  spec.b = cpp_int(j.at("b").get<std::string>());
  auto angle_of = [&](const char* key) {
    return Angle::from_raw(to_uint128_mod(cpp_int(j.at(key).get<std::string>())));
  };
  spec.alpha = angle_of("alpha");
  spec.c1 = angle_of("c1");
  spec.c2 = angle_of("c2");
  spec.gamma = angle_of("gamma");
  auto sym_of = [&](const json& v) {
    return SymTorus{cpp_int(v.at("u").get<std::string>()), cpp_int(v.at("v").get<std::string>()),
                    cpp_int(v.at("w").get<std::string>())};
  };
  if (j.contains("c1_sym")) spec.c1_sym = sym_of(j["c1_sym"]);
  if (j.contains("gamma_sym")) spec.gamma_sym = sym_of(j["gamma_sym"]);
  if (j.contains("l0")) spec.l0 = j["l0"].get<long long>();
  if (j.contains("k0")) spec.k0 = cpp_int(j["k0"].get<std::string>());
  return spec;
}

}  // namespace skewlab::dyn
