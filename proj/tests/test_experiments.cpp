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

#include "skewlab/experiments.hpp"

using namespace skewlab;
using namespace skewlab::dyn;
using namespace skewlab::experiments;
using harmonic::FourierSeries;

namespace {

const dio::ContinuedFraction& golden() {
  static const dio::ContinuedFraction cf = dio::golden_cf();
  return cf;
}

const arith::MoebiusTable& table() {
  static const arith::MoebiusTable t = arith::sieve_moebius(100000);
  return t;
}

}  // namespace

TEST_CASE("weyl sums") {
  const auto [one, bone] = weyl_sum(Angle(), 100);
  CHECK(one == std::complex<double>(1.0));
  CHECK(bone == 1.0);

  const auto [zero, bhalf] = weyl_sum(Angle::from_fraction(1, 2), 1000);
  CHECK(std::abs(zero) < 1e-13);
  CHECK(std::abs(zero) <= bhalf);

  // golden theta: value under the bound and matching the closed form
  const Angle th = golden().to_angle();
  const auto [v, b] = weyl_sum(th, 100000);
  CHECK(std::abs(v) <= b);
  const std::complex<double> e1 = unit(th);
  const std::complex<double> en = unit(th.scaled(100000));
  const std::complex<double> closed = e1 * (en - 1.0) / (100000.0 * (e1 - 1.0));
  CHECK(std::abs(v - closed) < 1e-12);
}

TEST_CASE("checkpointed sums are deterministic across worker counts") {
  const std::vector<std::uint64_t> cps = {1000, 12345, 100000};
  auto term = [](std::uint64_t n) {
    return std::complex<double>(std::sin(0.001 * static_cast<double>(n)),
                                std::cos(0.002 * static_cast<double>(n)));
  };
  const auto w1 = checkpointed_sum(cps, term, 1);
  const auto w3 = checkpointed_sum(cps, term, 3);
  const auto w8 = checkpointed_sum(cps, term, 8);
  REQUIRE(w1.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(w1[i].second == w3[i].second);  // bit identical
    CHECK(w1[i].second == w8[i].second);
  }
}

TEST_CASE("birkhoff prefix matches the sequential cocycle") {
  std::mt19937_64 rng(5);
  std::vector<FourierSeries::Coeff> pos;
  for (long long n = 1; n <= 8; ++n)
    pos.emplace_back(n, std::complex<double>(0.3 / n, -0.1 / n));
  const FourierSeries f = FourierSeries::real_from_positive(pos);
  const SkewSystem sys = SkewSystem::make(golden(), 1, f);
  const Angle x0 = Angle::from_fraction(1, 3);
  const auto b1 = birkhoff_prefix(sys, x0, 70000, 1);
  const auto b4 = birkhoff_prefix(sys, x0, 70000, 4);
  CHECK(b1 == b4);  // worker count cannot change a single bit
  // against the direct sequential sum (f has zero mean, so the cocycle
  // of the system equals the prefix definition)
  for (std::uint64_t m : {0ull, 1ull, 777ull, 32768ull, 65536ull, 70000ull}) {
    const double direct = birkhoff_cocycle(sys, x0, m);
    CHECK(b1[m] == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("sarnak with the trivial character is the Mertens average") {
  const SkewSystem sys = SkewSystem::make_affine(golden(), 0, Angle());
  const std::vector<std::uint64_t> cps = {1000, 10000, 100000};
  const ExperimentReport rep =
      sarnak_sum(sys, 0, 0, TorusPoint::make2(Angle(), Angle()), table(), cps);
  REQUIRE(rep.checkpoints.size() == 3);
  for (const Checkpoint& c : rep.checkpoints) {
    const double want = static_cast<double>(arith::mertens(table(), c.N)) /
                        static_cast<double>(c.N);
    CHECK(c.value.real() == want);  // exact: integer sums below 2^53
    CHECK(c.value.imag() == 0.0);
  }
}

TEST_CASE("sarnak determinism and range checks") {
  const SkewSystem sys = SkewSystem::make_affine(golden(), 1, Angle::from_fraction(1, 3));
  const TorusPoint start = TorusPoint::make2(Angle::from_fraction(1, 7), Angle());
  RunOptions w1, w5;
  w1.workers = 1;
  w5.workers = 5;
  const auto r1 = sarnak_sum(sys, 1, 1, start, table(), {1000, 30000}, w1);
  const auto r5 = sarnak_sum(sys, 1, 1, start, table(), {1000, 30000}, w5);
  for (std::size_t i = 0; i < r1.checkpoints.size(); ++i)
    CHECK(r1.checkpoints[i].value == r5.checkpoints[i].value);
  for (const Checkpoint& c : r1.checkpoints) CHECK(std::abs(c.value) <= 1.0 + 1e-12);
  CHECK_THROWS_AS(sarnak_sum(sys, 1, 1, start, table(), {200000}), std::out_of_range);
}

TEST_CASE("kbsz constants and bounds") {
  const SkewSystem rot = SkewSystem::make_affine(golden(), 0, Angle());
  const TorusPoint start = TorusPoint::make2(Angle::from_fraction(1, 9), Angle());
  // constant observable: correlation identically 1
  const auto one = kbsz_correlation(rot, 0, 0, start, 3, 5, {100, 1000});
  for (const Checkpoint& c : one.checkpoints) {
    CHECK(c.value.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(c.value.imag()) < 1e-14);
  }
  // rotation case carries the geometric bound and satisfies it
  const auto rep = kbsz_correlation(rot, 1, 0, start, 3, 5, {1000, 10000, 100000});
  for (const Checkpoint& c : rep.checkpoints) {
    REQUIRE(c.bound.has_value());
    CHECK(std::abs(c.value) <= *c.bound + 1e-12);
  }
  CHECK(rep.bounds_satisfied());
  CHECK_THROWS_AS(kbsz_correlation(rot, 1, 0, start, 5, 5, {100}), std::domain_error);
  CHECK_THROWS_AS(kbsz_correlation(rot, 1, 0, start, 4, 5, {100}), std::domain_error);
}

TEST_CASE("kbsz skew product determinism") {
  std::vector<FourierSeries::Coeff> pos;
  for (long long n = 1; n <= 6; ++n) pos.emplace_back(n, 0.2 / n);
  const FourierSeries f = FourierSeries::real_from_positive(pos);
  const SkewSystem sys = SkewSystem::make(golden(), 1, f);
  const TorusPoint start = TorusPoint::make2(Angle(), Angle());
  RunOptions w1, w4;
  w1.workers = 1;
  w4.workers = 4;
  const auto a = kbsz_correlation(sys, 0, 1, start, 3, 5, {500, 20000}, w1);
  const auto b = kbsz_correlation(sys, 0, 1, start, 3, 5, {500, 20000}, w4);
  for (std::size_t i = 0; i < a.checkpoints.size(); ++i)
    CHECK(a.checkpoints[i].value == b.checkpoints[i].value);
}

TEST_CASE("haar equidistribution") {
  const Angle alpha = golden().to_angle();
  const auto reports = haar_equidistribution(alpha, 3, 5, {{5, -3}, {1, 0}, {0, 0}},
                                             {1000, 10000});
  REQUIRE(reports.size() == 3);
  // (5, -3): A r + B s = 0, trivially 1 at every checkpoint
  for (const Checkpoint& c : reports[0].checkpoints)
    CHECK(c.value.real() == doctest::Approx(1.0).epsilon(1e-13));
  // (1, 0): geometric bound holds
  for (const Checkpoint& c : reports[1].checkpoints) {
    REQUIRE(c.bound.has_value());
    CHECK(std::abs(c.value) <= *c.bound + 1e-12);
  }
  // (0, 0): identically 1
  for (const Checkpoint& c : reports[2].checkpoints)
    CHECK(c.value.real() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("component equidistribution on a J component") {
  const Angle alpha = golden().to_angle();
  const ComponentSpec spec =
      ComponentSpec::J_set(3, 5, SymTorus::zero(), SymTorus::zero(), Angle(), alpha);
  const SkewSystem sys = SkewSystem::make_affine(golden(), 1, spec.gamma);
  const TorusPoint start = TorusPoint::make4(Angle(), Angle(), Angle(), Angle());

  // annihilator character: -M a, -M b, l0 s^2, -l0 r^2 with M = l0 rs(r-s)/2 + k0
  const long long M = 1 * 3 * 5 * (3 - 5) / 2 + 0;
  const std::array<long long, 4> ann = {-M * 2, -M * -1, 25, -9};
  const std::array<long long, 4> outside = {0, 0, 0, 1};
  const std::array<long long, 4> trivial = {0, 0, 0, 0};
  const auto reports = component_equidistribution(sys, spec, start, {ann, outside, trivial},
                                                  {1000, 10000, 100000});
  REQUIRE(reports.size() == 3);
  // the annihilator character is constant along the orbit: modulus 1 - eps
  // with eps <= 1e-6 at N = 10^5 (summation roundoff only)
  for (const Checkpoint& c : reports[0].checkpoints)
    CHECK(std::abs(c.value) == doctest::Approx(1.0).epsilon(1e-9));
  for (const Checkpoint& c : reports[1].checkpoints) CHECK(std::abs(c.value) < 0.05);
  for (const Checkpoint& c : reports[2].checkpoints)
    CHECK(c.value.real() == doctest::Approx(1.0).epsilon(1e-13));

  // the stepwise orbit stays on the component, exactly
  TorusPoint q = start;
  for (int i = 0; i < 200; ++i) {
    q = product_skew_step(sys, 3, 5, q);
    CHECK(membership_J(spec, q, Angle()));
  }

  const TorusPoint off = TorusPoint::make4(Angle::from_double(0.1), Angle(), Angle(), Angle());
  CHECK_THROWS_AS(component_equidistribution(sys, spec, off, {trivial}, {100}),
                  std::domain_error);
}

TEST_CASE("p1 experiment") {
  const Angle alpha = golden().to_angle();
  // single harmonic: all correlations vanish
  const FourierSeries single = FourierSeries::real_from_positive({{1, 0.5}});
  const auto rows1 = p1_experiment(single, alpha, {{3, 5}, {5, 7}}, 20000);
  for (const P1Row& row : rows1) {
    CHECK(row.parseval == std::complex<double>(0.0));
    CHECK(std::abs(row.empirical) < 1e-2);
  }
  // powers of two: exactly zero correlations
  std::vector<FourierSeries::Coeff> pow2;
  for (int k = 1; k <= 10; ++k) pow2.emplace_back(1ll << k, 0.25);
  const auto rows2 =
      p1_experiment(FourierSeries::real_from_positive(pow2), alpha, {{3, 5}}, 10000);
  CHECK(rows2[0].parseval == std::complex<double>(0.0));
  // support {3, 5} with positive coefficients: correlation 2 c3 c5
  const FourierSeries f35 = FourierSeries::real_from_positive({{3, 0.5}, {5, 0.5}});
  const auto rows3 = p1_experiment(f35, alpha, {{3, 5}}, 100000);
  CHECK(rows3[0].parseval.real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rows3[0].gap < 1e-2);
}

TEST_CASE("p1 gap is controlled by the analytic bound sum") {
  const Angle alpha = golden().to_angle();
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> coef(-0.5, 0.5);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<FourierSeries::Coeff> pos;
    for (long long n = 1; n <= 8; ++n) pos.emplace_back(n, coef(rng));
    const FourierSeries f = FourierSeries::real_from_positive(pos);
    const std::uint64_t N = 100000;
    const auto rows = p1_experiment(f, alpha, {{3, 5}}, N);
    // |empirical - parseval| <= sum over nonzero frequencies K = 3m - 5n of
    // |c_m c_n| min(1, 2/(N |1 - e^{2 pi i K alpha}|))
    KahanSum bound;
    for (const auto& [mf, mc] : f.support()) {
      for (const auto& [nf, nc] : f.support()) {
        const long long K = 3 * mf - 5 * nf;
        if (K == 0) continue;
        const double denom = one_minus_unit_abs(alpha.scaled(K));
        const double geo = std::min(1.0, 2.0 / (static_cast<double>(N) * denom));
        bound.add(std::abs(mc) * std::abs(nc) * geo);
      }
    }
    CHECK(rows[0].gap <= std::max(bound.sum, 1e-6) + 1e-12);
  }
}

TEST_CASE("report serialization") {
  const SkewSystem rot = SkewSystem::make_affine(golden(), 0, Angle());
  const auto rep = kbsz_correlation(rot, 1, 0, TorusPoint::make2(Angle(), Angle()), 3, 5,
                                    {100, 1000});
  const std::string js = rep.to_json();
  CHECK(js.find("\"schema\": 1") != std::string::npos);
  CHECK(js.find("\"kind\": \"kbsz\"") != std::string::npos);
  std::ostringstream csv;
  rep.to_csv(csv);
  const std::string text = csv.str();
  CHECK(text.rfind("N,re,im,abs,bound\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}
