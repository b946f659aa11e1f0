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

#ifndef SKEWLAB_FOURIER_HPP
#define SKEWLAB_FOURIER_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewlab/angle.hpp"

namespace skewlab::harmonic {

/// Tail certificate |c(n)| <= C / |n|^(1+delta) for every n; stands in
/// for the part of an infinite series beyond the stored support.
struct DecayCertificate {
  double C = 0.0;
  double delta = 0.0;
};

/**
 * Finitely supported Fourier series sum_n c(n) e^{2 pi i n x} with the
 * mean c(0) kept separately.  Coefficients with |n| up to the stored
 * support are exact (absent ones are zero); an optional decay
 * certificate bounds anything beyond, so criterion sums over infinite
 * index sets can be reported as intervals instead of silent truncations.
 */
class FourierSeries {
 public:
  using Coeff = std::pair<long long, std::complex<double>>;

  FourierSeries() = default;
  FourierSeries(std::vector<Coeff> coeffs, std::complex<double> mean = 0.0, bool real = false,
                std::optional<DecayCertificate> decay = std::nullopt);

  /// Builds a real series from the positive-frequency half: each (n, c)
  /// with n > 0 is mirrored to (-n, conj(c)).
  static FourierSeries real_from_positive(const std::vector<Coeff>& positive, double mean = 0.0,
                                          std::optional<DecayCertificate> decay = std::nullopt);

  std::complex<double> coeff(long long n) const;
  std::complex<double> mean() const { return mean_; }
  bool is_real() const { return real_; }
  const std::optional<DecayCertificate>& decay() const { return decay_; }
  const std::vector<Coeff>& support() const { return coeffs_; }
  long long max_frequency() const;  // max |n| over the support, 0 if empty
  bool empty() const { return coeffs_.empty() && mean_ == std::complex<double>(0.0); }

  std::complex<double> evaluate(Angle x) const;
  /// Real-valued fast path over the positive half; requires is_real().
  double evaluate_real(Angle x) const;

  /// f(x + beta); coefficient magnitudes (and thus the certificate) are
  /// preserved, the real flag generally is not.
  FourierSeries translated(Angle beta) const;
  FourierSeries without_mean() const;

  // Text format: optional "decay C delta" header line, then "n re im"
  // lines (n = 0 sets the mean).
  void save(std::ostream& out) const;
  static FourierSeries load(std::istream& in, bool real = false);
  void save_file(const std::string& path) const;
  static FourierSeries load_file(const std::string& path, bool real = false);

 private:
  std::vector<Coeff> coeffs_;  // sorted by n; n != 0; values nonzero
  std::complex<double> mean_ = 0.0;
  bool real_ = false;
  std::optional<DecayCertificate> decay_;
};

/// Fourier series of the cocycle sum f^{(k)}(x) = sum_{i<k} f(x + i a):
/// coefficients pick up the geometric factor
/// (1 - e^{2 pi i n k a}) / (1 - e^{2 pi i n a}).
/// Requires zero mean and no resonance e^{2 pi i n a} = 1 on the support.
FourierSeries cocycle_fourier(const FourierSeries& f, Angle alpha, long long k);

/// Parseval form of the correlation integral of f(r t) against f(s t):
/// sum_k c(s k) conj(c(r k)) + c(0) conj(c(0)), valid for coprime r != s.
std::complex<double> correlation_parseval(const FourierSeries& f, long long r, long long s);

/// Trapezoidal quadrature of the same integral; exact for trigonometric
/// polynomials once `samples` clears the Nyquist bound
/// 2 * max(r,s) * max_frequency, and refused below it.
std::complex<double> correlation_quadrature(const FourierSeries& f, long long r, long long s,
                                            long long samples);

}  // namespace skewlab::harmonic

#endif  // SKEWLAB_FOURIER_HPP
