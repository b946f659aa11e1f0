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

#ifndef SKEWLAB_ANGLE_HPP
#define SKEWLAB_ANGLE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace skewlab {

using uint128 = unsigned __int128;
using int128 = __int128;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline cpp_int to_cpp_int(uint128 v) {
  cpp_int r = static_cast<std::uint64_t>(v >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(v);
  return r;
}

/// Reduce an arbitrary big integer mod 2^128.
inline uint128 to_uint128_mod(const cpp_int& v) {
  static const cpp_int two128 = cpp_int(1) << 128;
  cpp_int m = v % two128;
  if (m < 0) m += two128;
  const std::uint64_t lo = static_cast<std::uint64_t>(m & 0xFFFFFFFFFFFFFFFFull);
  const std::uint64_t hi = static_cast<std::uint64_t>(m >> 64);
  return (static_cast<uint128>(hi) << 64) | lo;
}

/**
 * A point of the circle T = R/Z, stored as the fixed-point fraction
 * raw/2^128 of the unit interval.
 *
 * Addition, negation and integer scaling wrap mod 1 with no rounding at
 * all (they are mod-2^128 integer operations on raw), so orbits of
 * rotations can be generated drift-free: the only error in n*alpha is the
 * one-time rounding of alpha itself, bounded by n * 2^-128.  Conversions
 * to and from double are explicit and lossy (at most 2^-52 relative).
 */
class Angle {
 public:
  constexpr Angle() = default;

  static constexpr Angle from_raw(uint128 r) { return Angle(r); }

  /// Exact value num/den reduced mod 1, rounded to the nearest multiple
  /// of 2^-128 (ties round up).
  static Angle from_fraction(const cpp_int& num, const cpp_int& den) {
    if (den == 0) throw std::domain_error("Angle::from_fraction: zero denominator");
    cpp_int n = num, d = den;
    if (d < 0) {
      d = -d;
      n = -n;
    }
    n %= d;
    if (n < 0) n += d;
    const cpp_int q = ((n << 128) + d / 2) / d;
    return from_raw(to_uint128_mod(q));
  }

  static Angle from_fraction(long long num, long long den) {
    return from_fraction(cpp_int(num), cpp_int(den));
  }

  /// Nearest representable angle to frac(x).  Throws on non-finite input.
  static Angle from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Angle::from_double: non-finite");
    double f = x - std::floor(x);
    if (f < 0.0) f = 0.0;
    if (f >= 1.0) f = 0.0;
    const double s = std::ldexp(f, 64);
    const double fl = std::floor(s);
    const std::uint64_t hi = static_cast<std::uint64_t>(fl);
    const std::uint64_t lo = static_cast<std::uint64_t>(std::ldexp(s - fl, 64));
    return from_raw((static_cast<uint128>(hi) << 64) | lo);
  }

  constexpr uint128 raw() const { return raw_; }

  /// Nearest double; may round up to 1.0 for angles within 2^-54 of 1.
  double to_double() const {
    const double hi = static_cast<double>(static_cast<std::uint64_t>(raw_ >> 64));
    const double lo = static_cast<double>(static_cast<std::uint64_t>(raw_));
    return std::ldexp(hi, -64) + std::ldexp(lo, -128);
  }

  constexpr Angle operator+(Angle o) const { return Angle(raw_ + o.raw_); }
  constexpr Angle operator-(Angle o) const { return Angle(raw_ - o.raw_); }
  constexpr Angle operator-() const { return Angle(~raw_ + 1); }
  Angle& operator+=(Angle o) {
    raw_ += o.raw_;
    return *this;
  }
  Angle& operator-=(Angle o) {
    raw_ -= o.raw_;
    return *this;
  }

  /// k*x mod 1, exact for any signed 64-bit k.
  constexpr Angle scaled(long long k) const {
    return Angle(raw_ * static_cast<uint128>(static_cast<int128>(k)));
  }

  /// k*x mod 1 for a big integer k (k is reduced mod 2^128 first, which
  /// leaves the product unchanged mod 1).
  Angle scaled(const cpp_int& k) const { return Angle(raw_ * to_uint128_mod(k)); }

  constexpr bool operator==(const Angle&) const = default;

  /// min(|x-y|, 1-|x-y|) in raw units; at most 2^127.
  static constexpr uint128 circle_distance_raw(Angle a, Angle b) {
    const uint128 d = a.raw_ - b.raw_;
    const uint128 e = ~d + 1;
    return d < e ? d : e;
  }

  static double circle_distance(Angle a, Angle b) {
    return from_raw(circle_distance_raw(a, b)).to_double();
  }

 private:
  explicit constexpr Angle(uint128 r) : raw_(r) {}
  uint128 raw_ = 0;
};

/// e^{2 pi i x}.
inline std::complex<double> unit(Angle x) {
  const double t = 2.0 * M_PI * x.to_double();
  return {std::cos(t), std::sin(t)};
}

/// |1 - e^{2 pi i x}| = 2 |sin(pi x)|.
inline double one_minus_unit_abs(Angle x) {
  const double d = Angle::from_raw(Angle::circle_distance_raw(x, Angle())).to_double();
  return 2.0 * std::sin(M_PI * d);
}

/// Compensated (Kahan) accumulator.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

struct KahanComplex {
  KahanSum re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.sum, im.sum}; }
};

}  // namespace skewlab

#endif  // SKEWLAB_ANGLE_HPP
