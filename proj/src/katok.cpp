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

#include "skewlab/katok.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace skewlab::harmonic {

namespace {

// Upper bound on sum_{k > k0} C / (k m)^{1+delta} by integral comparison;
// k0 = 0 means the whole sum is unknown.
double lattice_tail_bound(const std::optional<DecayCertificate>& decay, double m, double k0) {
  if (!decay) return 0.0;
  const double scale = decay->C / std::pow(m, 1.0 + decay->delta);
  if (k0 < 1.0) return scale * (1.0 + 1.0 / decay->delta);
  return scale * std::pow(k0, -decay->delta) / decay->delta;
}

// sum_{k >= 1} |c(k m)| over the stored support, ascending k.  Every k
// with k*m inside the stored radius is accounted for exactly; *k0_out
// reports where the certified tail takes over.
double lattice_abs_sum(const FourierSeries& f, long long m, long long* k0_out) {
  KahanSum acc;
  for (const auto& [n, c] : f.support()) {
    if (n <= 0 || n % m != 0) continue;
    acc.add(std::abs(c));
  }
  *k0_out = f.max_frequency() / m;
  return acc.sum;
}

}  // namespace

std::optional<Interval> katok_lattice_ratio(const FourierSeries& f, long long q) {
  if (q < 1) throw std::invalid_argument("katok_lattice_ratio: q must be positive");
  const double num = std::abs(f.coeff(q));
  long long k0 = 0;
  const double den = lattice_abs_sum(f, q, &k0);
  if (den == 0.0) return std::nullopt;
  const double tail = lattice_tail_bound(f.decay(), static_cast<double>(q),
                                         static_cast<double>(k0));
  return Interval{num / (den + tail), num / den};
}

std::optional<Interval> katok_dilated_lattice_ratio(const FourierSeries& f, long long q, long long r,
                                        long long s) {
  if (q < 1 || r < 1 || s < 1) throw std::invalid_argument("katok_dilated_lattice_ratio: bad arguments");
  if (q % s != 0) throw std::domain_error("katok_dilated_lattice_ratio: requires s | q");
  const long long m = r * (q / s);
  const double num = std::abs(f.coeff(q));
  if (num == 0.0) return std::nullopt;
  long long k0 = 0;
  const double lattice = lattice_abs_sum(f, m, &k0);
  const double tail = lattice_tail_bound(f.decay(), static_cast<double>(m),
                                         static_cast<double>(k0));
  return Interval{num / (num + lattice + tail), num / (num + lattice)};
}

std::optional<Interval> katok_approach_quantity(const FourierSeries& f,
                                           const dio::ContinuedFraction& alpha, std::size_t n) {
  const dio::RatInterval encl = dio::approx_quality(alpha, n);
  const cpp_int& qn = alpha.convergent(n).q;
  if (qn > cpp_int(std::numeric_limits<long long>::max())) return std::nullopt;
  const double c = std::abs(f.coeff(qn.convert_to<long long>()));
  if (c == 0.0) return std::nullopt;
  double lo = encl.lo.convert_to<double>() / c;
  double hi = encl.hi.convert_to<double>() / c;
  // Outward nudge: the rational endpoints were rounded to nearest.
  lo = std::nextafter(std::nextafter(lo, 0.0), 0.0);
  hi = std::nextafter(std::nextafter(hi, HUGE_VAL), HUGE_VAL);
  if (lo < 0.0) lo = 0.0;
  return Interval{lo, hi};
}

Interval epsilon_diagnostic(const DecaySequence& seq, std::size_t n_k, const cpp_rational& b) {
  if (b < 1) throw std::invalid_argument("epsilon_diagnostic: b must be >= 1");
  if (n_k < 1 || n_k > seq.x.size())
    throw std::out_of_range("epsilon_diagnostic: n_k outside the stored prefix");
  for (double v : seq.x)
    if (!(v >= 0.0)) throw std::invalid_argument("epsilon_diagnostic: sequence must be >= 0");
  const double xk = seq.x[n_k - 1];
  if (xk == 0.0) throw std::domain_error("epsilon_diagnostic: x_{n_k} = 0");

  const cpp_int m_big = (numerator(b) * n_k) / denominator(b);  // floor(b n_k), b >= 1
  const std::size_t len = seq.x.size();
  KahanSum lattice;
  double tail = 0.0;
  if (m_big <= len) {
    const std::size_t m = m_big.convert_to<std::size_t>();
    for (std::size_t i = m; i <= len; i += m) lattice.add(seq.x[i - 1]);
    if (seq.decay)
      tail = lattice_tail_bound(seq.decay, static_cast<double>(m),
                                std::floor(static_cast<double>(len) / static_cast<double>(m)));
  } else {
    tail = lattice_tail_bound(seq.decay, m_big.convert_to<double>(), 0.0);
  }
  const double den_lo = xk + lattice.sum;
  const double den_hi = den_lo + tail;
  return Interval{xk / den_hi, xk / den_lo};
}

}  // namespace skewlab::harmonic
