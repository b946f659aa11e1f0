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

#ifndef SKEWLAB_EXPERIMENTS_HPP
#define SKEWLAB_EXPERIMENTS_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "skewlab/arith.hpp"
#include "skewlab/dynamics.hpp"

namespace skewlab::experiments {

struct Checkpoint {
  std::uint64_t N = 0;
  std::complex<double> value;
  std::optional<double> bound;  // analytic bound on |value| when one exists
};

/// A checkpointed partial-sum series plus the parameters that produced
/// it.  Reports are deterministic: same params and seed give bit-identical
/// values regardless of worker count (fixed chunking, Kahan per chunk,
/// ordered combine).
struct ExperimentReport {
  std::string kind;
  std::vector<Checkpoint> checkpoints;
  std::string params_json;  // full parameter echo
  std::uint64_t rng_seed = 0;

  std::string to_json() const;
  void to_csv(std::ostream& out) const;
  /// True when every checkpoint with a bound satisfies |value| <= bound
  /// (up to summation roundoff).
  bool bounds_satisfied(double slack = 1e-9) const;
};

struct RunOptions {
  int workers = 0;  // 0: LAB_WORKERS env var, else hardware concurrency
  std::uint64_t rng_seed = 0;
};

int resolve_workers(int requested);

/// Deterministic parallel sum of term(n) over 1..max(checkpoints) with
/// partial sums recorded at each checkpoint.  term must be pure.
std::vector<std::pair<std::uint64_t, std::complex<double>>> checkpointed_sum(
    const std::vector<std::uint64_t>& checkpoints,
    const std::function<std::complex<double>(std::uint64_t)>& term, int workers);

/// Prefix Birkhoff sums of the zero-mean part of sys.f along the orbit of
/// x0: B[m] = sum_{i<m} f0(x0 + i alpha).  Chunks are regenerated from
/// closed-form base coordinates, so values do not depend on the worker
/// count.  Empty when the system is affine.
std::vector<double> birkhoff_prefix(const dyn::SkewSystem& sys, Angle x0, std::uint64_t m,
                                    int workers);

/// S_N = (1/N) sum_{n<=N} e^{2 pi i (A x_n + B y_n)} mu(n) along the
/// orbit of `start`.
ExperimentReport sarnak_sum(const dyn::SkewSystem& sys, long long A, long long B,
                            const dyn::TorusPoint& start, const arith::MoebiusTable& table,
                            const std::vector<std::uint64_t>& checkpoints,
                            const RunOptions& opts = {});

/// (1/N) sum_{n<=N} chi(T^{rn} p) conj(chi(T^{sn} p)) for distinct primes
/// r, s; in the rotation case each checkpoint carries the geometric-sum
/// bound.
ExperimentReport kbsz_correlation(const dyn::SkewSystem& sys, long long A, long long B,
                                  const dyn::TorusPoint& start, std::uint64_t r, std::uint64_t s,
                                  const std::vector<std::uint64_t>& checkpoints,
                                  const RunOptions& opts = {});

/// ((1/N) sum_{n<=N} e^{2 pi i n theta}, min(1, 2/(N |1 - e^{2 pi i theta}|))).
std::pair<std::complex<double>, double> weyl_sum(Angle theta, std::uint64_t n);

/// For each character (A, B): averages of e^{2 pi i (A r + B s) n alpha}
/// with the geometric bound attached; identically 1 when A r + B s = 0.
std::vector<ExperimentReport> haar_equidistribution(
    Angle alpha, long long r, long long s,
    const std::vector<std::pair<long long, long long>>& characters,
    const std::vector<std::uint64_t>& checkpoints, const RunOptions& opts = {});

/// Birkhoff averages of 4-torus characters along the (T^r x T^s)_Psi
/// orbit of a point of a J component; affine systems only.
std::vector<ExperimentReport> component_equidistribution(
    const dyn::SkewSystem& sys, const dyn::ComponentSpec& spec, const dyn::TorusPoint& start,
    const std::vector<std::array<long long, 4>>& characters,
    const std::vector<std::uint64_t>& checkpoints, const RunOptions& opts = {});

struct P1Row {
  std::uint64_t r = 0, s = 0;
  std::complex<double> parseval;
  std::complex<double> empirical;
  double gap = 0.0;
};

/// Parseval correlation against the dynamical estimate
/// (1/N) sum f(r n alpha) conj(f(s n alpha)) at the point 0 of the
/// rotation, one row per coprime pair.
std::vector<P1Row> p1_experiment(const harmonic::FourierSeries& f, Angle alpha,
                                 const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs,
                                 std::uint64_t n, const RunOptions& opts = {});

std::string p1_rows_to_json(const std::vector<P1Row>& rows);
void p1_rows_to_csv(const std::vector<P1Row>& rows, std::ostream& out);

}  // namespace skewlab::experiments

#endif  // SKEWLAB_EXPERIMENTS_HPP
