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

#ifndef SKEWLAB_ARITH_HPP
#define SKEWLAB_ARITH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "skewlab/angle.hpp"

namespace skewlab::arith {

// Largest sieve size we accept; one byte per integer.
inline constexpr std::uint64_t kSieveCap = 1'000'000'000ull;

/// Mobius values mu(1..limit) plus the list of primes <= limit.
/// Immutable after construction; safe for concurrent shared reads.
struct MoebiusTable {
  std::uint64_t limit = 0;
  std::vector<std::int8_t> values;  // values[n] = mu(n); index 0 unused
  std::vector<std::uint32_t> primes;

  int mu(std::uint64_t n) const;
};

/// Linear (Euler) sieve: one pass, O(n) time, n bytes for the values.
/// Construction is single-threaded; parallel sieving is a non-goal.
MoebiusTable sieve_moebius(std::uint64_t n);

/// mu(n) by trial-division factorization; the test oracle for the sieve.
int moebius_bruteforce(std::uint64_t n);

/// Sum of mu(1..n); computed on demand, no prefix array is kept.
long long mertens(const MoebiusTable& table, std::uint64_t n);

bool is_prime(std::uint64_t n);

struct Bezout {
  cpp_int g, a, b;  // a*r + b*s = g
};

/// Extended gcd normalized to the minimal-|a| Bezout pair: a lies in
/// (-|s|/(2g), |s|/(2g)], which makes downstream conjugacy maps
/// deterministic.
Bezout ext_gcd(const cpp_int& r, const cpp_int& s);

// Binary dump: 8-byte magic, little-endian 64-bit limit, then `limit`
// signed bytes (values of mu(1..limit)).
void dump_moebius(const MoebiusTable& table, std::ostream& out);
MoebiusTable load_moebius(std::istream& in);
void dump_moebius_file(const MoebiusTable& table, const std::string& path);
MoebiusTable load_moebius_file(const std::string& path);

}  // namespace skewlab::arith

#endif  // SKEWLAB_ARITH_HPP
