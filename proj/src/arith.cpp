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

#include "skewlab/arith.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace skewlab::arith {

namespace {
constexpr std::array<char, 8> kMagic = {'S', 'K', 'W', 'L', 'M', 'O', 'B', '1'};
}

int MoebiusTable::mu(std::uint64_t n) const {
  if (n < 1 || n > limit) throw std::out_of_range("MoebiusTable::mu: n out of range");
  return values[n];
}

MoebiusTable sieve_moebius(std::uint64_t n) {
  if (n < 1) throw std::length_error("sieve_moebius: n must be positive");
  if (n > kSieveCap) throw std::length_error("sieve_moebius: n exceeds the 10^9 cap");

  MoebiusTable t;
  t.limit = n;
  t.values.assign(n + 1, 0);
  std::vector<bool> composite(n + 1, false);
  t.values[1] = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (!composite[i]) {
      t.primes.push_back(static_cast<std::uint32_t>(i));
      t.values[i] = -1;
    }
    for (std::uint32_t p : t.primes) {
      const std::uint64_t ip = i * p;
      if (ip > n) break;
      composite[ip] = true;
      if (i % p == 0) {
        t.values[ip] = 0;  // p^2 | ip
        break;
      }
      t.values[ip] = static_cast<std::int8_t>(-t.values[i]);
    }
  }
  return t;
}

int moebius_bruteforce(std::uint64_t n) {
  if (n < 1) throw std::domain_error("moebius_bruteforce: n must be positive");
  int k = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      ++k;
      if (n % d == 0) return 0;
    }
  }
  if (n > 1) ++k;
  return (k % 2 == 0) ? 1 : -1;
}

long long mertens(const MoebiusTable& table, std::uint64_t n) {
  if (n < 1 || n > table.limit) throw std::out_of_range("mertens: n out of range");
  long long sum = 0;
  for (std::uint64_t i = 1; i <= n; ++i) sum += table.values[i];
  return sum;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Bezout ext_gcd(const cpp_int& r, const cpp_int& s) {
  if (r == 0 && s == 0) throw std::domain_error("ext_gcd: (0, 0) has no gcd");

  // Iterative extended Euclid on the pair as given.
  cpp_int old_r = r, cur_r = s;
  cpp_int old_a = 1, cur_a = 0;
  while (cur_r != 0) {
    const cpp_int q = old_r / cur_r;  // truncated division; the identity below holds regardless
    cpp_int tmp = old_r - q * cur_r;
    old_r = cur_r;
    cur_r = tmp;
    tmp = old_a - q * cur_a;
    old_a = cur_a;
    cur_a = tmp;
  }
  cpp_int g = old_r, a = old_a;
  if (g < 0) {
    g = -g;
    a = -a;
  }
  if (s == 0) return {g, a, 0};

  // Shift a into (-|s|/(2g), |s|/(2g)]; b follows from the identity.
  const cpp_int m = abs(s) / g;
  a %= m;
  if (a < 0) a += m;
  if (2 * a > m) a -= m;
  const cpp_int b = (g - a * r) / s;
  return {g, a, b};
}

void dump_moebius(const MoebiusTable& table, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  std::uint64_t n = table.limit;
  std::array<char, 8> le{};
  for (int i = 0; i < 8; ++i) le[i] = static_cast<char>((n >> (8 * i)) & 0xFF);
  out.write(le.data(), le.size());
  out.write(reinterpret_cast<const char*>(table.values.data() + 1),
            static_cast<std::streamsize>(table.limit));
  if (!out) throw std::runtime_error("dump_moebius: write failed");
}

MoebiusTable load_moebius(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error("load_moebius: bad magic");
  std::array<char, 8> le{};
  in.read(le.data(), le.size());
  if (!in) throw std::runtime_error("load_moebius: truncated header");
  std::uint64_t n = 0;
  for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(static_cast<unsigned char>(le[i])) << (8 * i);
  if (n < 1 || n > kSieveCap) throw std::runtime_error("load_moebius: implausible size");

  MoebiusTable t;
  t.limit = n;
  t.values.assign(n + 1, 0);
  in.read(reinterpret_cast<char*>(t.values.data() + 1), static_cast<std::streamsize>(n));
  if (!in) throw std::runtime_error("load_moebius: truncated values");
  for (std::uint64_t i = 1; i <= n; ++i)
    if (t.values[i] < -1 || t.values[i] > 1) throw std::runtime_error("load_moebius: corrupt value");

  // The dump stores only mu; rebuild the prime list with Eratosthenes.
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    t.primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return t;
}

void dump_moebius_file(const MoebiusTable& table, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("dump_moebius_file: cannot open " + path);
  dump_moebius(table, f);
}

MoebiusTable load_moebius_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_moebius_file: cannot open " + path);
  return load_moebius(f);
}

}  // namespace skewlab::arith
