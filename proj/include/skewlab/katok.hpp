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

#ifndef SKEWLAB_KATOK_HPP
#define SKEWLAB_KATOK_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "skewlab/contfrac.hpp"
#include "skewlab/fourier.hpp"

namespace skewlab::harmonic {

/// Closed real interval; criterion sums over infinite index sets land
/// here as [partial sum, partial sum + certified tail].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return lo <= v && v <= hi; }
};

/// |c(q)| / sum_{k>=1} |c(k q)|, the lower-bound ratio of the coboundary
/// criterion.  The denominator tail beyond the stored support is bounded
/// through the decay certificate; without one the series is taken as the
/// exact trigonometric polynomial it stores.  nullopt signals an
/// undefined ratio (no stored energy along the q-lattice).
std::optional<Interval> katok_lattice_ratio(const FourierSeries& f, long long q);

/// |c(q)| / (|c(q)| + sum_{k>=1} |c(k (r/s) q)|), defined when s | q.
std::optional<Interval> katok_dilated_lattice_ratio(const FourierSeries& f, long long q, long long r,
                                        long long s);

/// |alpha - p_n/q_n| q_n / |c(q_n)| with the numerator taken from the
/// approx_quality enclosure; nullopt when c(q_n) vanishes (the convergent
/// is unusable for the criterion).
std::optional<Interval> katok_approach_quantity(const FourierSeries& f,
                                           const dio::ContinuedFraction& alpha, std::size_t n);

/// Summable nonnegative sequence x_1, x_2, ... given by a finite prefix
/// plus an optional decay certificate for the tail.
struct DecaySequence {
  std::vector<double> x;  // x[i] = x_{i+1}
  std::optional<DecayCertificate> decay;
};

/// eps_k = x_{n_k} / (x_{n_k} + sum_{m>=1} x_{m*floor(b n_k)}), reported
/// as an interval with the denominator tail certified.  Checking that
/// eps_k stays away from 0 along an index sequence is the caller's loop.
Interval epsilon_diagnostic(const DecaySequence& seq, std::size_t n_k, const cpp_rational& b);

}  // namespace skewlab::harmonic

#endif  // SKEWLAB_KATOK_HPP
