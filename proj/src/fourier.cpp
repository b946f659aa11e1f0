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

#include "skewlab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace skewlab::harmonic {

namespace {
// Certificate checks allow a hair of slack so that coefficients written
// as 1/(n*n*n) pass a bound computed through std::pow.
constexpr double kCertSlack = 1.0 + 1e-12;
}  // namespace

FourierSeries::FourierSeries(std::vector<Coeff> coeffs, std::complex<double> mean, bool real,
                             std::optional<DecayCertificate> decay)
    : coeffs_(std::move(coeffs)), mean_(mean), real_(real), decay_(decay) {
  std::sort(coeffs_.begin(), coeffs_.end(),
            [](const Coeff& a, const Coeff& b) { return a.first < b.first; });
  std::erase_if(coeffs_, [](const Coeff& c) { return c.second == std::complex<double>(0.0); });
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].first == 0)
      throw std::invalid_argument("FourierSeries: pass c(0) as the mean, not a coefficient");
    if (i > 0 && coeffs_[i].first == coeffs_[i - 1].first)
      throw std::invalid_argument("FourierSeries: duplicate frequency");
  }
  if (real_) {
    if (mean_.imag() != 0.0)
      throw std::invalid_argument("FourierSeries: real series needs a real mean");
    for (const Coeff& c : coeffs_) {
      const std::complex<double> other = coeff(-c.first);
      if (other != std::conj(c.second))
        throw std::invalid_argument("FourierSeries: real series needs c(-n) = conj(c(n))");
    }
  }
  if (decay_) {
    if (decay_->C <= 0.0 || decay_->delta <= 0.0)
      throw std::invalid_argument("FourierSeries: decay certificate needs C > 0, delta > 0");
    for (const Coeff& c : coeffs_) {
      const double bound = decay_->C / std::pow(std::abs(static_cast<double>(c.first)),
                                                1.0 + decay_->delta);
      if (std::abs(c.second) > bound * kCertSlack)
        throw std::invalid_argument("FourierSeries: stored coefficient violates the certificate");
    }
  }
}

FourierSeries FourierSeries::real_from_positive(const std::vector<Coeff>& positive, double mean,
                                                std::optional<DecayCertificate> decay) {
  std::vector<Coeff> all;
  all.reserve(positive.size() * 2);
  for (const Coeff& c : positive) {
    if (c.first <= 0)
      throw std::invalid_argument("real_from_positive: frequencies must be positive");
    all.push_back(c);
    all.emplace_back(-c.first, std::conj(c.second));
  }
  return FourierSeries(std::move(all), mean, /*real=*/true, decay);
}

std::complex<double> FourierSeries::coeff(long long n) const {
  if (n == 0) return mean_;
  const auto it = std::lower_bound(
      coeffs_.begin(), coeffs_.end(), n,
      [](const Coeff& c, long long key) { return c.first < key; });
  if (it != coeffs_.end() && it->first == n) return it->second;
  return 0.0;
}

long long FourierSeries::max_frequency() const {
  if (coeffs_.empty()) return 0;
  return std::max(std::llabs(coeffs_.front().first), std::llabs(coeffs_.back().first));
}

std::complex<double> FourierSeries::evaluate(Angle x) const {
  KahanComplex acc;
  acc.add(mean_);
  for (const Coeff& c : coeffs_) acc.add(c.second * unit(x.scaled(c.first)));
  return acc.value();
}

double FourierSeries::evaluate_real(Angle x) const {
  if (!real_) throw std::logic_error("evaluate_real: series not flagged real");
  KahanSum acc;
  acc.add(mean_.real());
  for (const Coeff& c : coeffs_) {
    if (c.first < 0) continue;
    const std::complex<double> e = unit(x.scaled(c.first));
    acc.add(2.0 * (c.second.real() * e.real() - c.second.imag() * e.imag()));
  }
  return acc.sum;
}

FourierSeries FourierSeries::translated(Angle beta) const {
  std::vector<Coeff> out;
  out.reserve(coeffs_.size());
  for (const Coeff& c : coeffs_)
    out.emplace_back(c.first, c.second * unit(beta.scaled(c.first)));
  return FourierSeries(std::move(out), mean_, /*real=*/false, decay_);
}

FourierSeries FourierSeries::without_mean() const {
  return FourierSeries(coeffs_, 0.0, real_ && mean_.imag() == 0.0, decay_);
}

void FourierSeries::save(std::ostream& out) const {
  out.precision(17);
  if (decay_) out << "decay " << decay_->C << ' ' << decay_->delta << '\n';
  if (mean_ != std::complex<double>(0.0))
    out << 0 << ' ' << mean_.real() << ' ' << mean_.imag() << '\n';
  for (const Coeff& c : coeffs_)
    out << c.first << ' ' << c.second.real() << ' ' << c.second.imag() << '\n';
}

FourierSeries FourierSeries::load(std::istream& in, bool real) {
  std::vector<Coeff> coeffs;
  std::complex<double> mean = 0.0;
  std::optional<DecayCertificate> decay;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "decay") {
      DecayCertificate c;
      if (!(ls >> c.C >> c.delta)) throw std::runtime_error("series: bad decay line");
      decay = c;
      continue;
    }
    long long n = 0;
    double re = 0.0, im = 0.0;
    std::istringstream vs(line);
    if (!(vs >> n >> re >> im)) throw std::runtime_error("series: bad coefficient line: " + line);
    if (n == 0)
      mean = {re, im};
    else
      coeffs.emplace_back(n, std::complex<double>(re, im));
  }
  return FourierSeries(std::move(coeffs), mean, real, decay);
}

void FourierSeries::save_file(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("FourierSeries::save_file: cannot open " + path);
  save(f);
}

FourierSeries FourierSeries::load_file(const std::string& path, bool real) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("FourierSeries::load_file: cannot open " + path);
  return load(f, real);
}

FourierSeries cocycle_fourier(const FourierSeries& f, Angle alpha, long long k) {
  if (k < 1) throw std::invalid_argument("cocycle_fourier: k must be positive");
  if (f.mean() != std::complex<double>(0.0))
    throw std::domain_error("cocycle_fourier: series must have zero mean");

  std::vector<FourierSeries::Coeff> out;
  out.reserve(f.support().size());
  for (const auto& [n, c] : f.support()) {
    const Angle na = alpha.scaled(n);
    if (na.raw() == 0)
      throw std::domain_error("cocycle_fourier: resonance e^{2 pi i n alpha} = 1 at n = " +
                              std::to_string(n));
    const std::complex<double> ratio =
        (1.0 - unit(na.scaled(k))) / (1.0 - unit(na));
    out.emplace_back(n, c * ratio);
  }
  // The geometric factor reaches magnitude k, so the input's decay
  // certificate does not transfer.
  return FourierSeries(std::move(out), 0.0, /*real=*/false, std::nullopt);
}

std::complex<double> correlation_parseval(const FourierSeries& f, long long r, long long s) {
  if (r < 1 || s < 1) throw std::domain_error("correlation_parseval: r, s must be >= 1");
  if (r == s) throw std::domain_error("correlation_parseval: r and s must differ");
  if (std::gcd(r, s) != 1) throw std::domain_error("correlation_parseval: r, s must be coprime");

  KahanComplex acc;
  acc.add(f.mean() * std::conj(f.mean()));
  for (const auto& [n, c] : f.support()) {
    if (n % s != 0) continue;
    const long long k = n / s;
    if (std::llabs(k) > (1ll << 62) / r) continue;  // r*k can't be on the support anyway
    acc.add(c * std::conj(f.coeff(r * k)));
  }
  return acc.value();
}

std::complex<double> correlation_quadrature(const FourierSeries& f, long long r, long long s,
                                            long long samples) {
  if (r < 1 || s < 1) throw std::domain_error("correlation_quadrature: r, s must be >= 1");
  const long long nyquist = 2 * std::max(r, s) * f.max_frequency();
  if (samples <= nyquist)
    throw std::invalid_argument(
        "correlation_quadrature: sample count " + std::to_string(samples) +
        " aliases; need more than " + std::to_string(nyquist));

  KahanComplex acc;
  long long jr = 0, js = 0;  // r*j and s*j mod samples, kept incrementally
  for (long long j = 0; j < samples; ++j) {
    const Angle tr = Angle::from_fraction(jr, samples);
    const Angle ts = Angle::from_fraction(js, samples);
    acc.add(f.evaluate(tr) * std::conj(f.evaluate(ts)));
    jr = (jr + r % samples) % samples;
    js = (js + s % samples) % samples;
  }
  return acc.value() / static_cast<double>(samples);
}

}  // namespace skewlab::harmonic
