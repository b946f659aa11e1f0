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

#include "skewlab/contfrac.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace skewlab::dio {

ContinuedFraction::ContinuedFraction(std::vector<cpp_int> quotients)
    : quotients_(std::move(quotients)) {
  if (quotients_.empty()) throw std::invalid_argument("ContinuedFraction: empty quotient list");
  for (const cpp_int& a : quotients_)
    if (a < 1) throw std::invalid_argument("ContinuedFraction: quotients must be >= 1");
  conv_.reserve(quotients_.size());
  cpp_int p_prev = 0, q_prev = 1;  // (p_0, q_0)
  cpp_int p = 1, q = quotients_[0];
  conv_.push_back({p, q});
  for (std::size_t i = 1; i < quotients_.size(); ++i) {
    cpp_int pn = quotients_[i] * p + p_prev;
    cpp_int qn = quotients_[i] * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    conv_.push_back({p, q});
  }
}

const Convergent& ContinuedFraction::convergent(std::size_t i) const {
  if (i >= conv_.size()) throw std::out_of_range("ContinuedFraction::convergent: index");
  return conv_[i];
}

cpp_rational ContinuedFraction::value() const {
  const Convergent& c = conv_.back();
  return cpp_rational(c.p, c.q);
}

Angle ContinuedFraction::to_angle() const {
  const Convergent& c = conv_.back();
  return Angle::from_fraction(c.p, c.q);
}

std::string ContinuedFraction::to_text() const {
  std::ostringstream os;
  os << "cf:";
  for (const cpp_int& a : quotients_) os << ' ' << a;
  return os.str();
}

ContinuedFraction ContinuedFraction::from_text(const std::string& line) {
  std::istringstream is(line);
  std::string tag;
  is >> tag;
  if (tag != "cf:") throw std::invalid_argument("ContinuedFraction::from_text: missing cf: tag");
  std::vector<cpp_int> qs;
  std::string tok;
  while (is >> tok) qs.emplace_back(tok);
  return ContinuedFraction(std::move(qs));
}

namespace {

// Shared Euclid loop on a fraction num/den in (0,1).  stop_at_resolution
// ends the expansion once the remainder numerator is <= 1 (only
// meaningful when den = 2^128, i.e. the input was an Angle).
std::vector<cpp_int> euclid_quotients(cpp_int num, cpp_int den, std::size_t depth,
                                      bool stop_at_resolution) {
  std::vector<cpp_int> qs;
  while (qs.size() < depth && num > (stop_at_resolution ? 1 : 0)) {
    qs.push_back(den / num);
    cpp_int r = den % num;
    den = num;
    num = r;
  }
  return qs;
}

}  // namespace

ContinuedFraction cf_expand(const cpp_rational& x, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("cf_expand: depth must be >= 1");
  if (x <= 0 || x >= 1) throw std::domain_error("cf_expand: x must lie in (0, 1)");
  return ContinuedFraction(
      euclid_quotients(numerator(x), denominator(x), depth, /*stop_at_resolution=*/false));
}

ContinuedFraction cf_expand(Angle x, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("cf_expand: depth must be >= 1");
  if (x.raw() <= 1)
    throw std::domain_error("cf_expand: angle indistinguishable from 0 at fixed-point resolution");
  return ContinuedFraction(euclid_quotients(to_cpp_int(x.raw()), cpp_int(1) << 128, depth,
                                            /*stop_at_resolution=*/true));
}

bool best_approx_check(Angle alpha, const cpp_int& p, const cpp_int& q,
                       const cpp_int& iteration_bound) {
  if (q < 1) throw std::invalid_argument("best_approx_check: q must be >= 1");
  if (iteration_bound < q)
    throw std::invalid_argument("best_approx_check: iteration bound below q");
  if (q > (cpp_int(1) << 32))
    throw std::invalid_argument("best_approx_check: q too large for brute force");

  static const cpp_int two128 = cpp_int(1) << 128;
  const cpp_int target_big = abs((p << 128) - q * to_cpp_int(alpha.raw()));
  if (target_big >= two128) {
    // |p - q*alpha| >= 1, while d = 1 always offers a fraction within 1/2.
    return false;
  }
  const uint128 target = to_uint128_mod(target_big);
  const std::uint64_t qu = q.convert_to<std::uint64_t>();
  const std::uint64_t pu = p.convert_to<std::uint64_t>();  // 0 <= p <= q here
  const std::uint64_t rhi = static_cast<std::uint64_t>(alpha.raw() >> 64);
  const std::uint64_t rlo = static_cast<std::uint64_t>(alpha.raw());

  for (std::uint64_t d = 1; d <= qu; ++d) {
    // d * raw as a 192-bit value: floor and fractional part.
    const uint128 plo = static_cast<uint128>(d) * rlo;
    const uint128 mid = static_cast<uint128>(d) * rhi + (plo >> 64);
    const std::uint64_t floor_c = static_cast<std::uint64_t>(mid >> 64);
    const uint128 frac = (mid << 64) | static_cast<std::uint64_t>(plo);

    const std::uint64_t cands[2] = {floor_c, floor_c + 1};
    const uint128 dists[2] = {frac, static_cast<uint128>(0) - frac};
    for (int i = 0; i < 2; ++i) {
      if (i == 1 && frac == 0) continue;  // same fraction as candidate 0
      // skip c/d == p/q
      if (static_cast<uint128>(cands[i]) * qu == static_cast<uint128>(pu) * d) continue;
      if (dists[i] <= target) return false;
    }
  }
  return true;
}

RatInterval approx_quality(const ContinuedFraction& cf, std::size_t n) {
  if (n + 1 >= cf.length())
    throw std::out_of_range("approx_quality: needs convergent index n+1");
  const cpp_int& qn = cf.convergent(n).q;
  const cpp_int& qn1 = cf.convergent(n + 1).q;
  return {cpp_rational(1, qn + qn1), cpp_rational(1, qn1)};
}

GenericAlpha construct_generic_alpha(const std::vector<ApproxTarget>& targets,
                                     unsigned max_q_bits) {
  if (targets.empty()) throw std::invalid_argument("construct_generic_alpha: no targets");
  for (const ApproxTarget& t : targets) {
    if (t.q_min < 1) throw std::invalid_argument("construct_generic_alpha: q_min must be >= 1");
    if (t.bound <= 0 || t.bound >= 1)
      throw std::invalid_argument("construct_generic_alpha: bound must lie in (0, 1)");
  }
  std::vector<ApproxTarget> sorted = targets;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ApproxTarget& a, const ApproxTarget& b) { return a.q_min < b.q_min; });

  std::vector<cpp_int> quots;
  cpp_int p_prev = 0, q_prev = 1, p = 0, q = 1;  // (p_{n-1}, q_{n-1}), (p_n, q_n)
  auto append = [&](const cpp_int& a) {
    quots.push_back(a);
    cpp_int pn = a * p + p_prev;
    cpp_int qn = a * q + q_prev;
    // On the first quotient this reduces to (p_1, q_1) = (1, a) because
    // (p, q) starts as (p_0, q_0) = (0, 1) and (p_prev, q_prev) as (1, 0).
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    if (msb(qn) >= max_q_bits)
      throw std::length_error("construct_generic_alpha: denominators exceed practicality cap");
  };
  // Seed so that the generic recurrence produces (p_1, q_1) = (1, a_1).
  p_prev = 1;
  q_prev = 0;
  p = 0;
  q = 1;

  GenericAlpha out{ContinuedFraction({cpp_int(1)}), {}};
  std::vector<std::size_t> designated;
  for (const ApproxTarget& t : sorted) {
    while (quots.empty() || q < t.q_min) append(1);
    designated.push_back(quots.size() - 1);
    // Choose a_{n+1} with q_{n+1} > 1/(bound * q_n), so that
    // |alpha - p_n/q_n| <= 1/(q_n q_{n+1}) < bound.
    const cpp_int q_needed = denominator(t.bound) / (numerator(t.bound) * q) + 1;
    cpp_int a = (q_needed - q_prev + q - 1) / q;
    if (a < 1) a = 1;
    append(a);
  }

  out.cf = ContinuedFraction(quots);
  out.designated = std::move(designated);
  return out;
}

bool verify_generic_targets(const GenericAlpha& ga, const std::vector<ApproxTarget>& targets) {
  std::vector<ApproxTarget> sorted = targets;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ApproxTarget& a, const ApproxTarget& b) { return a.q_min < b.q_min; });
  if (ga.designated.size() != sorted.size()) return false;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const std::size_t n = ga.designated[i];
    if (n + 1 >= ga.cf.length()) return false;
    const cpp_int& qn = ga.cf.convergent(n).q;
    if (qn < sorted[i].q_min) return false;
    // |alpha - p_n/q_n| <= hi/q_n must be strictly below the bound.
    const RatInterval encl = approx_quality(ga.cf, n);
    if (!(encl.hi / qn < sorted[i].bound)) return false;
  }
  return true;
}

ContinuedFraction golden_cf(std::size_t terms) {
  return ContinuedFraction(std::vector<cpp_int>(terms, cpp_int(1)));
}

}  // namespace skewlab::dio
