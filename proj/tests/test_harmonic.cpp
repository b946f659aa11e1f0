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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "skewlab/contfrac.hpp"
#include "skewlab/fourier.hpp"
#include "skewlab/katok.hpp"

using namespace skewlab;
using namespace skewlab::harmonic;

namespace {

FourierSeries random_real_poly(std::mt19937_64& rng, long long max_freq) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<FourierSeries::Coeff> pos;
  for (long long n = 1; n <= max_freq; ++n) {
    if (rng() % 2 == 0) continue;
    pos.emplace_back(n, std::complex<double>(coef(rng), coef(rng)));
  }
  if (pos.empty()) pos.emplace_back(1, std::complex<double>(0.5, 0.25));
  return FourierSeries::real_from_positive(pos);
}

// Direct Birkhoff summation, the oracle for cocycle_fourier.
std::complex<double> birkhoff_direct(const FourierSeries& f, Angle alpha, long long k, Angle x) {
  KahanComplex acc;
  Angle xi = x;
  for (long long i = 0; i < k; ++i) {
    acc.add(f.evaluate(xi));
    xi += alpha;
  }
  return acc.value();
}

// Partial sums of zeta(3) with a two-sided integral tail enclosure.
std::pair<double, double> zeta3_enclosure() {
  KahanSum s;
  const long long K = 200000;
  for (long long k = K; k >= 1; --k) s.add(1.0 / (static_cast<double>(k) * k * k));
  const double lo = s.sum + 0.5 / (static_cast<double>(K + 1) * (K + 1)) - 1e-12;
  const double hi = s.sum + 0.5 / (static_cast<double>(K) * K) + 1e-12;
  return {lo, hi};
}

}  // namespace

TEST_CASE("evaluate basics") {
  const FourierSeries cospair({{1, 1.0}, {-1, 1.0}}, 0.0, true);
  CHECK(std::abs(cospair.evaluate(Angle()) - 2.0) < 1e-15);
  const FourierSeries third({{3, 1.0}});
  CHECK(std::abs(third.evaluate(Angle::from_fraction(1, 3)) - 1.0) < 1e-12);
  const FourierSeries half({{1, 0.5}, {-1, 0.5}}, 0.0, true);
  CHECK(std::abs(half.evaluate(Angle::from_fraction(1, 4))) < 1e-15);
  CHECK(half.evaluate_real(Angle::from_fraction(1, 4)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("series construction guards") {
  CHECK_THROWS_AS(FourierSeries({{0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(FourierSeries({{2, 1.0}, {2, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(FourierSeries({{1, 1.0}}, 0.0, /*real=*/true), std::invalid_argument);
  CHECK_THROWS_AS(FourierSeries({{1, 1.0}, {-1, 1.0}}, {0.0, 1.0}, true), std::invalid_argument);
  // certificate violated by a stored coefficient
  CHECK_THROWS_AS(FourierSeries({{4, 1.0}}, 0.0, false, DecayCertificate{1.0, 1.0}),
                  std::invalid_argument);
  // 1/n^3 coefficients satisfy (C, delta) = (1, 2)
  std::vector<FourierSeries::Coeff> pos;
  for (long long n = 1; n <= 64; ++n)
    pos.emplace_back(n, 1.0 / (static_cast<double>(n) * n * n));
  CHECK_NOTHROW(FourierSeries(pos, 0.0, false, DecayCertificate{1.0, 2.0}));
}

TEST_CASE("cocycle_fourier matches direct Birkhoff sums") {
  const Angle golden = dio::golden_cf().to_angle();
  std::mt19937_64 rng(41);
  const FourierSeries f = random_real_poly(rng, 64);
  for (long long k : {1, 2, 7, 100, 1000}) {
    const FourierSeries fk = cocycle_fourier(f, golden, k);
    for (int i = 0; i < 10; ++i) {
      const Angle x = Angle::from_double(static_cast<double>(rng()) / 1.8446744073709552e19);
      const std::complex<double> direct = birkhoff_direct(f, golden, k, x);
      CHECK(std::abs(fk.evaluate(x) - direct) < 1e-10);
    }
  }
  // k = 1 keeps the series
  const FourierSeries f1 = cocycle_fourier(f, golden, 1);
  for (const auto& [n, c] : f.support()) CHECK(std::abs(f1.coeff(n) - c) < 1e-14);
}

TEST_CASE("cocycle_fourier preconditions") {
  const Angle golden = dio::golden_cf().to_angle();
  const FourierSeries with_mean({{1, 1.0}}, 0.5);
  CHECK_THROWS_AS(cocycle_fourier(with_mean, golden, 2), std::domain_error);
  CHECK_THROWS_AS(cocycle_fourier(FourierSeries({{1, 1.0}}), golden, 0), std::invalid_argument);
  // rational alpha resonates: 2 * (1/2) = 0 mod 1
  CHECK_THROWS_AS(cocycle_fourier(FourierSeries({{2, 1.0}}), Angle::from_fraction(1, 2), 3),
                  std::domain_error);
}

TEST_CASE("cocycle identity in Fourier form") {
  const Angle golden = dio::golden_cf().to_angle();
  std::mt19937_64 rng(43);
  const FourierSeries f = random_real_poly(rng, 16);
  for (const auto& [n, m] : std::vector<std::pair<long long, long long>>{
           {1, 1}, {3, 5}, {17, 41}, {250, 750}}) {
    const FourierSeries lhs = cocycle_fourier(f, golden, n + m);
    const FourierSeries part = cocycle_fourier(f, golden, m).translated(golden.scaled(n));
    const FourierSeries head = cocycle_fourier(f, golden, n);
    for (const auto& [freq, c] : lhs.support())
      CHECK(std::abs(c - (head.coeff(freq) + part.coeff(freq))) < 1e-12);
  }
}

TEST_CASE("correlation_parseval examples") {
  // support {2^k} stays disjoint under coprime dilations
  std::vector<FourierSeries::Coeff> pow2;
  for (int k = 1; k <= 10; ++k) pow2.emplace_back(1ll << k, 0.3);
  const FourierSeries fp2 = FourierSeries::real_from_positive(pow2);
  CHECK(correlation_parseval(fp2, 3, 5) == std::complex<double>(0.0));

  const FourierSeries f35({{3, 1.0}, {5, 1.0}});
  CHECK(std::abs(correlation_parseval(f35, 3, 5) - 1.0) < 1e-15);

  CHECK(correlation_parseval(FourierSeries(), 3, 5) == std::complex<double>(0.0));
  CHECK_THROWS_AS(correlation_parseval(f35, 3, 3), std::domain_error);
  CHECK_THROWS_AS(correlation_parseval(f35, 6, 4), std::domain_error);
}

TEST_CASE("quadrature is the oracle for parseval") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const FourierSeries f = random_real_poly(rng, 32);
    for (const auto& [r, s] :
         std::vector<std::pair<long long, long long>>{{3, 5}, {5, 7}, {3, 7}}) {
      const std::complex<double> p = correlation_parseval(f, r, s);
      const std::complex<double> q = correlation_quadrature(f, r, s, 512);
      CHECK(std::abs(p - q) < 1e-9);
    }
  }
  const FourierSeries single({{1, 1.0}});
  CHECK(std::abs(correlation_quadrature(single, 3, 5, 64)) < 1e-12);
  CHECK_THROWS_AS(correlation_quadrature(single, 3, 5, 10), std::invalid_argument);
}

TEST_CASE("parseval symmetry and positivity") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const FourierSeries f = random_real_poly(rng, 24);
    const std::complex<double> a = correlation_parseval(f, 3, 5);
    const std::complex<double> b = correlation_parseval(f, 5, 3);
    CHECK(std::abs(a - std::conj(b)) < 1e-12);
  }
  // positive coefficients on a support containing the primes r and s
  std::vector<FourierSeries::Coeff> pos;
  for (long long n : {2, 3, 5, 7, 11}) pos.emplace_back(n, 0.2);
  const FourierSeries fpos = FourierSeries::real_from_positive(pos);
  CHECK(correlation_parseval(fpos, 3, 5).real() > 0.0);
  // disjoint dilated supports integrate to exactly zero
  const FourierSeries one({{1, 1.0}, {-1, 1.0}}, 0.0, true);
  CHECK(correlation_parseval(one, 2, 3) == std::complex<double>(0.0));
}

TEST_CASE("katok lattice ratio") {
  const FourierSeries lone({{7, 1.0}});
  const auto r = katok_lattice_ratio(lone, 7);
  REQUIRE(r.has_value());
  CHECK(r->lo == 1.0);
  CHECK(r->hi == 1.0);
  CHECK(!katok_lattice_ratio(lone, 3).has_value());

  // c(n) = 1/n^3 up to 10^4 with certificate: the q = 1 interval straddles 1/zeta(3)
  std::vector<FourierSeries::Coeff> pos;
  for (long long n = 1; n <= 10000; ++n)
    pos.emplace_back(n, 1.0 / (static_cast<double>(n) * n * n));
  const FourierSeries f(pos, 0.0, false, DecayCertificate{1.0, 2.0});
  const auto q1 = katok_lattice_ratio(f, 1);
  REQUIRE(q1.has_value());
  // Both [lo, hi] and the independent [1/zhi, 1/zlo] enclose 1/zeta(3),
  // so they must overlap, and the ratio interval must stay tight.
  const auto [zlo, zhi] = zeta3_enclosure();
  CHECK(q1->lo <= 1.0 / zlo);
  CHECK(1.0 / zhi <= q1->hi);
  CHECK(q1->hi - q1->lo < 1e-6);
  CHECK(q1->contains(0.8319073725807078));  // literature digits of 1/zeta(3)
}

TEST_CASE("katok dilated lattice ratio") {
  const FourierSeries lone({{10, 1.0}});
  const auto one = katok_dilated_lattice_ratio(lone, 10, 3, 5);
  REQUIRE(one.has_value());
  CHECK(one->lo == 1.0);
  CHECK(one->hi == 1.0);
  CHECK_THROWS_AS(katok_dilated_lattice_ratio(lone, 10, 3, 4), std::domain_error);

  // q = 10, s = 5, r = 3: denominator runs over multiples of 6
  const FourierSeries f({{10, 1.0}, {6, 0.5}, {12, 0.25}, {7, 9.0}});
  const auto v = katok_dilated_lattice_ratio(f, 10, 3, 5);
  REQUIRE(v.has_value());
  CHECK(v->lo == doctest::Approx(1.0 / 1.75).epsilon(1e-14));
  CHECK(v->hi == doctest::Approx(1.0 / 1.75).epsilon(1e-14));
}

TEST_CASE("katok approach quantity") {
  const dio::ContinuedFraction ones(std::vector<cpp_int>(12, cpp_int(1)));
  const FourierSeries f({{5, 1.0}});  // c(q_3) = c(5) = 1
  const auto v = katok_approach_quantity(f, ones, 3);
  REQUIRE(v.has_value());
  CHECK(v->lo == doctest::Approx(1.0 / 13).epsilon(1e-12));
  CHECK(v->hi == doctest::Approx(1.0 / 8).epsilon(1e-12));
  CHECK(!katok_approach_quantity(FourierSeries({{7, 1.0}}), ones, 3).has_value());
  CHECK_THROWS_AS(katok_approach_quantity(f, ones, 11), std::out_of_range);
}

TEST_CASE("epsilon diagnostic") {
  // x_n = 1/n^3, b = 1, n_k = 8: eps = 1/(1 + zeta(3)) ~ 0.454120
  DecaySequence seq;
  for (long long n = 1; n <= 1000000; ++n)
    seq.x.push_back(1.0 / (static_cast<double>(n) * n * n));
  seq.decay = DecayCertificate{1.0, 2.0};
  const Interval e = epsilon_diagnostic(seq, 8, 1);
  const auto [zlo, zhi] = zeta3_enclosure();
  CHECK(e.lo <= 1.0 / (1.0 + zlo));
  CHECK(1.0 / (1.0 + zhi) <= e.hi);
  CHECK(e.lo == doctest::Approx(0.454120871).epsilon(1e-6));

  // dominant x_{n_k}: only the m = 1 duplicate survives
  DecaySequence dom;
  dom.x = {0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  const Interval half = epsilon_diagnostic(dom, 3, 1);
  CHECK(half.lo == 0.5);
  CHECK(half.hi == 0.5);

  // b = 2 with support only on odd indices: empty shifted lattice
  DecaySequence odd;
  odd.x.assign(64, 0.0);
  for (std::size_t n = 1; n <= 64; n += 2) odd.x[n - 1] = 1.0 / static_cast<double>(n * n * n);
  const Interval full = epsilon_diagnostic(odd, 5, 2);
  CHECK(full.lo == 1.0);
  CHECK(full.hi == 1.0);

  CHECK_THROWS_AS(epsilon_diagnostic(dom, 1, 1), std::domain_error);
  CHECK_THROWS_AS(epsilon_diagnostic(dom, 3, cpp_rational(1, 2)), std::invalid_argument);

  // the lemma's conclusion, empirically: eps_k stays away from 0 along n_k = 2^k
  for (std::size_t k = 1; k <= 16; ++k) {
    const Interval ek = epsilon_diagnostic(seq, std::size_t(1) << k, 1);
    CHECK(ek.lo > 0.4);
  }
}

TEST_CASE("series text round trip") {
  FourierSeries f({{3, {0.05, -0.1}}, {-9, {1e-3, 2e-3}}}, {0.125, 0.0}, false,
                  DecayCertificate{2.0, 1.5});
  std::stringstream buf;
  f.save(buf);
  const FourierSeries g = FourierSeries::load(buf);
  CHECK(g.coeff(3) == f.coeff(3));
  CHECK(g.coeff(-9) == f.coeff(-9));
  CHECK(g.mean() == f.mean());
  REQUIRE(g.decay().has_value());
  CHECK(g.decay()->C == 2.0);
  CHECK(g.decay()->delta == 1.5);
}
