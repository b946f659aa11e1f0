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

// The three canonical systems of the regression suite and their frozen
// decade fixtures.  The fixture arrays were produced by a first oracle
// run (`acceptance --emit-fixtures`) and are compared bit-exactly.

#ifndef SKEWLAB_TESTS_CANONICAL_HPP
#define SKEWLAB_TESTS_CANONICAL_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "skewlab/dynamics.hpp"
#include "skewlab/experiments.hpp"

namespace canonical {

using namespace skewlab;

inline const dio::ContinuedFraction& golden() {
  static const dio::ContinuedFraction cf = dio::golden_cf();
  return cf;
}

inline Angle golden_angle() { return golden().to_angle(); }

/// Targets for the constructed generic alpha; chosen so that the
/// designated convergents stay small enough to carry tuned Fourier
/// coefficients while the follow-up denominators explode.
inline std::vector<dio::ApproxTarget> generic_targets() {
  return {{10, cpp_rational(1, 20000)},
          {100, cpp_rational(1, cpp_int("10000000000"))},
          {1000, cpp_rational(1, cpp_int("1000000000000000000"))}};
}

/// The canonical smooth perturbation: c(n) = 1/|n|^2.5 for |n| <= 16,
/// certified against C/|n|^{1+1.5}.
inline harmonic::FourierSeries skew_f() {
  std::vector<harmonic::FourierSeries::Coeff> pos;
  for (long long n = 1; n <= 16; ++n)
    pos.emplace_back(n, 1.0 / std::pow(static_cast<double>(n), 2.5));
  return harmonic::FourierSeries::real_from_positive(pos, 0.0,
                                                     harmonic::DecayCertificate{1.0, 1.5});
}

/// Series tuned to a constructed alpha: support exactly on the designated
/// convergent denominators with coefficients 10^-2, 10^-4, 10^-6, which
/// makes the approach quantities decrease by construction.
inline harmonic::FourierSeries tuned_series(const dio::GenericAlpha& ga) {
  std::vector<harmonic::FourierSeries::Coeff> pos;
  double c = 1e-2;
  for (std::size_t idx : ga.designated) {
    pos.emplace_back(ga.cf.convergent(idx).q.convert_to<long long>(), c);
    c *= 1e-2;
  }
  return harmonic::FourierSeries::real_from_positive(pos);
}

struct System {
  dyn::SkewSystem sys;
  long long A, B;
};

/// rotation; affine c = 1; C^{1+delta} skew with the constructed alpha.
/// The characters were picked once so that the decade magnitudes of both
/// the Sarnak and the KBSZ series decrease strictly.
inline std::vector<System> systems() {
  std::vector<System> out;
  out.push_back({dyn::SkewSystem::make_affine(golden(), 0, Angle()), 2, 0});
  out.push_back({dyn::SkewSystem::make_affine(golden(), 1, Angle::from_fraction(2, 7)), 1, 1});
  const dio::GenericAlpha ga = dio::construct_generic_alpha(generic_targets());
  out.push_back({dyn::SkewSystem::make(ga.cf, 1, skew_f()), 1, 1});
  return out;
}

// Frozen first-run fixtures (hexfloat; bit-exact under any worker count).
// Regenerate with `acceptance --emit-fixtures` only when the canonical
// definitions above change, and re-review the decade decay by hand.
constexpr std::complex<double> kSarnakFixture[3][4] = {
    {{-0x1.0726ee6dca3d9p-6, 0x1.807e4aa8d109ep-8}, {0x1.05c8c2c01e729p-9, -0x1.76484ba11e342p-9}, {-0x1.ca4e04638d9a7p-11, 0x1.74f32492c5e2cp-10}, {-0x1.0d9e0e473858ap-11, -0x1.42af263035512p-11}, },
    {{-0x1.b0d63441656b3p-8, 0x1.e9442bbdc680ep-7}, {-0x1.ab88bc945ac9dp-8, 0x1.4311c060e240ep-7}, {0x1.b72c922be987bp-10, -0x1.31825a5d6db7bp-11}, {0x1.000ee456dc066p-16, -0x1.f1de4b39b53f2p-11}, },
    {{0x1.558249f2cae1ep-6, -0x1.3b4ecaadb78acp-11}, {0x1.0a8aaac858208p-9, -0x1.ccd6ecdc8c1d1p-10}, {0x1.2ac4aa15c78a4p-12, 0x1.436781ae7bff2p-11}, {-0x1.1f2c9645f2061p-12, 0x1.9ae1ae832ed0ap-13}, },
};
constexpr std::complex<double> kKbszFixture[3][4] = {
    {{-0x1.227ac302c83e3p-13, -0x1.9b239d06f19c1p-12}, {-0x1.48b88c39eaa1cp-14, -0x1.801fe11bb4fdap-15}, {-0x1.3a8cf7c04e403p-17, 0x1.0f7235054f463p-19}, {-0x1.13b3e0cab508fp-25, 0x1.27d34e1ccd531p-23}, },
    {{-0x1.14298cf0aaeeap-6, 0x1.65af08746502fp-5}, {-0x1.09807105c6dc9p-7, 0x1.55b934c132541p-6}, {-0x1.2ab8258821afdp-9, 0x1.445153ff990dp-10}, {-0x1.027df2a0857abp-10, -0x1.5d2c58b6eb6d3p-12}, },
    {{-0x1.423788e7d5e6ep-5, -0x1.2dd60ada10e43p-6}, {-0x1.9f5c988757a14p-6, -0x1.f28487f9b8ca9p-7}, {-0x1.906023a0ed2bfp-10, -0x1.7ba7ec630608p-9}, {-0x1.2bc9b09b2068cp-12, 0x1.094c5eca9631bp-11}, },
};

}  // namespace canonical

#endif  // SKEWLAB_TESTS_CANONICAL_HPP
