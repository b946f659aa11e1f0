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

#ifndef SKEWLAB_CONTFRAC_HPP
#define SKEWLAB_CONTFRAC_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "skewlab/angle.hpp"

namespace skewlab::dio {

struct Convergent {
  cpp_int p, q;
};

/**
 * Continued fraction [0; a_1, a_2, ...] of a number in (0,1), together
 * with its convergents p_n/q_n.
 *
 * With p_0 = 0, q_0 = 1, p_1 = 1, q_1 = a_1 and the recurrences
 * p_{n+1} = a_{n+1} p_n + p_{n-1}, q_{n+1} = a_{n+1} q_n + q_{n-1},
 * convergents() lists (p_1,q_1), (p_2,q_2), ... so that index i of the
 * list holds the (i+1)-st convergent.
 */
class ContinuedFraction {
 public:
  explicit ContinuedFraction(std::vector<cpp_int> quotients);

  const std::vector<cpp_int>& quotients() const { return quotients_; }
  const std::vector<Convergent>& convergents() const { return conv_; }
  const Convergent& convergent(std::size_t i) const;
  std::size_t length() const { return quotients_.size(); }

  /// Exact value of the finite expansion, p_L/q_L.
  cpp_rational value() const;
  Angle to_angle() const;

  /// One-line text form "cf: a1 a2 a3 ...".
  std::string to_text() const;
  static ContinuedFraction from_text(const std::string& line);

 private:
  std::vector<cpp_int> quotients_;
  std::vector<Convergent> conv_;
};

/// Expansion of an exact rational in (0,1), at most `depth` quotients.
/// A rational whose full expansion is shorter than `depth` yields the
/// finite expansion.
ContinuedFraction cf_expand(const cpp_rational& x, std::size_t depth);

/// Expansion of a fixed-point angle; stops early once the Euclid
/// remainder falls to the 2^-128 resolution, where further quotients
/// would be noise from the rounding of x.
ContinuedFraction cf_expand(Angle x, std::size_t depth);

/// True iff (p, q) beats every other fraction c/d with 0 < d <= q in the
/// |c - d*alpha| metric (brute force over d; this is the oracle that
/// (p, q) is a convergent of alpha).  `iteration_bound` caps the search
/// and must be at least q.
bool best_approx_check(Angle alpha, const cpp_int& p, const cpp_int& q,
                       const cpp_int& iteration_bound);

struct RatInterval {
  cpp_rational lo, hi;
};

/// Exact enclosure of |alpha - p_n/q_n| * q_n for convergent index n
/// (0-based into convergents()), from the two-sided bound
/// 1/(q_{n+1}+q_n) <= |q_n alpha - p_n| <= 1/q_{n+1}.  Needs index n+1.
RatInterval approx_quality(const ContinuedFraction& cf, std::size_t n);

struct ApproxTarget {
  cpp_int q_min;
  cpp_rational bound;  // in (0, 1)
};

struct GenericAlpha {
  ContinuedFraction cf;
  std::vector<std::size_t> designated;  // convergent index witnessing each target
};

/**
 * Constructive "generic alpha": grows an expansion so that for every
 * target there is a convergent with q_n >= q_min and
 * |alpha - p_n/q_n| < bound(q_n).  Quotient 1 is used as padding and the
 * decisive a_{n+1} is chosen so that 1/(q_n q_{n+1}) < bound.
 *
 * Membership in the residual set of the underlying theorem is not
 * decidable; this witnesses the finitely many requested targets only.
 */
GenericAlpha construct_generic_alpha(const std::vector<ApproxTarget>& targets,
                                     unsigned max_q_bits = 1u << 16);

/// Re-checks every target of a constructed alpha through approx_quality
/// enclosures, exact rational comparisons throughout.
bool verify_generic_targets(const GenericAlpha& ga, const std::vector<ApproxTarget>& targets);

/// [0; 1, 1, 1, ...]; 96 terms pin the golden mean below the Angle
/// resolution.
ContinuedFraction golden_cf(std::size_t terms = 96);

}  // namespace skewlab::dio

#endif  // SKEWLAB_CONTFRAC_HPP
