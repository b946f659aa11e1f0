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

#include "skewlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace skewlab::experiments {

using nlohmann::json;

namespace {

// Fixed chunk size: results must not depend on the worker count, so the
// chunk grid is a function of the parameters only.
constexpr std::uint64_t kChunk = 1ull << 15;

void check_checkpoints(const std::vector<std::uint64_t>& cps) {
  if (cps.empty()) throw std::invalid_argument("checkpoints: empty");
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] < 1) throw std::invalid_argument("checkpoints: N must be >= 1");
    if (i > 0 && cps[i] <= cps[i - 1])
      throw std::invalid_argument("checkpoints: must be strictly increasing");
  }
}

// Runs fn(i) for i in [0, count) on `workers` threads; pure per-index
// work, so scheduling cannot affect results.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int spawn = std::min<int>(workers, static_cast<int>(count));
  pool.reserve(static_cast<std::size_t>(spawn));
  for (int t = 0; t < spawn; ++t) pool.emplace_back(body);
  for (std::thread& t : pool) t.join();
}

// Cut points: multiples of kChunk plus every checkpoint; [cuts[i], cuts[i+1])
// ranges cover (0, Nmax] shifted by one (terms run from 1).
std::vector<std::uint64_t> chunk_cuts(std::uint64_t nmax,
                                      const std::vector<std::uint64_t>& checkpoints) {
  std::vector<std::uint64_t> cuts;
  cuts.push_back(0);
  for (std::uint64_t c = kChunk; c < nmax; c += kChunk) cuts.push_back(c);
  cuts.push_back(nmax);
  cuts.insert(cuts.end(), checkpoints.begin(), checkpoints.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

json angle_json(Angle a) { return to_cpp_int(a.raw()).str(); }

json system_json(const dyn::SkewSystem& sys) {
  json j;
  j["alpha"] = angle_json(sys.alpha());
  if (sys.alpha_cf()) j["alpha_cf"] = sys.alpha_cf()->to_text();
  j["c"] = sys.c();
  j["gamma"] = angle_json(sys.gamma());
  json coeffs = json::array();
  for (const auto& [n, c] : sys.f().support())
    coeffs.push_back(json::array({n, c.real(), c.imag()}));
  j["f_support"] = coeffs;
  j["f_mean"] = sys.f().mean().real();
  return j;
}

}  // namespace

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LAB_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<std::pair<std::uint64_t, std::complex<double>>> checkpointed_sum(
    const std::vector<std::uint64_t>& checkpoints,
    const std::function<std::complex<double>(std::uint64_t)>& term, int workers) {
  check_checkpoints(checkpoints);
  const std::uint64_t nmax = checkpoints.back();
  const std::vector<std::uint64_t> cuts = chunk_cuts(nmax, checkpoints);
  const std::size_t ranges = cuts.size() - 1;

  std::vector<std::complex<double>> chunk_sum(ranges);
  parallel_for(ranges, workers, [&](std::size_t i) {
    KahanComplex acc;
    for (std::uint64_t n = cuts[i] + 1; n <= cuts[i + 1]; ++n) acc.add(term(n));
    chunk_sum[i] = acc.value();
  });

  std::vector<std::pair<std::uint64_t, std::complex<double>>> out;
  out.reserve(checkpoints.size());
  std::complex<double> running = 0.0;
  std::size_t want = 0;
  for (std::size_t i = 0; i < ranges; ++i) {
    running += chunk_sum[i];
    if (want < checkpoints.size() && cuts[i + 1] == checkpoints[want]) {
      out.emplace_back(checkpoints[want], running);
      ++want;
    }
  }
  return out;
}

std::vector<double> birkhoff_prefix(const dyn::SkewSystem& sys, Angle x0, std::uint64_t m,
                                    int workers) {
  if (sys.is_affine()) return {};
  const harmonic::FourierSeries& f0 = sys.f_zero_mean();
  std::vector<std::pair<long long, std::complex<double>>> pos;
  for (const auto& [n, c] : f0.support())
    if (n > 0) pos.emplace_back(n, c);

  std::vector<std::complex<double>> rot(pos.size());
  for (std::size_t j = 0; j < pos.size(); ++j) rot[j] = unit(sys.alpha().scaled(pos[j].first));

  const std::size_t chunks = static_cast<std::size_t>((m + kChunk - 1) / kChunk);
  // Per-chunk phase vectors restart from exact angles, so the recurrence
  // drift never crosses a chunk boundary.  Returns the running sum after
  // the last step; when `out` is given, out[i] receives the prefix value
  // before step i.
  auto walk = [&](std::uint64_t lo, std::uint64_t hi, double offset, double* out) -> double {
    std::vector<std::complex<double>> z(pos.size());
    const Angle xlo = x0 + sys.alpha().scaled(static_cast<long long>(lo));
    for (std::size_t j = 0; j < pos.size(); ++j)
      z[j] = pos[j].second * unit(xlo.scaled(pos[j].first));
    KahanSum acc;
    acc.sum = offset;
    for (std::uint64_t i = lo; i < hi; ++i) {
      if (out) out[i] = acc.sum;
      double val = 0.0;
      for (std::size_t j = 0; j < pos.size(); ++j) {
        val += 2.0 * z[j].real();
        z[j] *= rot[j];
      }
      acc.add(val);
    }
    return acc.sum;
  };

  // Phase 1: chunk totals.
  std::vector<double> delta(chunks);
  parallel_for(chunks, workers, [&](std::size_t j) {
    const std::uint64_t lo = static_cast<std::uint64_t>(j) * kChunk;
    const std::uint64_t hi = std::min<std::uint64_t>(lo + kChunk, m);
    delta[j] = walk(lo, hi, 0.0, nullptr);
  });

  // Phase 2: offsets, combined in index order.
  std::vector<double> offset(chunks + 1, 0.0);
  for (std::size_t j = 0; j < chunks; ++j) offset[j + 1] = offset[j] + delta[j];

  // Phase 3: fill.
  std::vector<double> b(m + 1, 0.0);
  parallel_for(chunks, workers, [&](std::size_t j) {
    const std::uint64_t lo = static_cast<std::uint64_t>(j) * kChunk;
    const std::uint64_t hi = std::min<std::uint64_t>(lo + kChunk, m);
    walk(lo, hi, offset[j], b.data());
  });
  b[m] = offset[chunks];
  return b;
}

namespace {

// theta(m) = A x_m + B y_m for the orbit of (x0, y0) under T_{c,f}, split
// into the exact affine part and the float Birkhoff part.
struct CharAngle {
  const dyn::SkewSystem& sys;
  long long A, B;
  Angle x0, y0;
  const std::vector<double>& birkhoff;  // may be empty (affine)

  Angle operator()(std::uint64_t mu) const {
    const long long m = static_cast<long long>(mu);
    const Angle xm = x0 + sys.alpha().scaled(m);
    Angle ye = y0 + sys.gamma().scaled(m);
    if (sys.c() != 0) {
      const long long tri = m % 2 == 0 ? (m / 2) * (m - 1) : m * ((m - 1) / 2);
      ye += (x0.scaled(m) + sys.alpha().scaled(tri)).scaled(sys.c());
    }
    Angle th = xm.scaled(A) + ye.scaled(B);
    if (!birkhoff.empty())
      th += Angle::from_double(static_cast<double>(B) * birkhoff[mu]);
    return th;
  }
};

double geometric_bound(std::uint64_t n, Angle theta) {
  if (theta.raw() == 0) return 1.0;
  const double d = one_minus_unit_abs(theta);
  const double g = 2.0 / (static_cast<double>(n) * d);
  return std::min(1.0, g);
}

}  // namespace

ExperimentReport sarnak_sum(const dyn::SkewSystem& sys, long long A, long long B,
                            const dyn::TorusPoint& start, const arith::MoebiusTable& table,
                            const std::vector<std::uint64_t>& checkpoints,
                            const RunOptions& opts) {
  check_checkpoints(checkpoints);
  if (start.dim != 2) throw std::invalid_argument("sarnak_sum: start must be 2-dimensional");
  if (checkpoints.back() > table.limit)
    throw std::out_of_range("sarnak_sum: checkpoint beyond the sieve limit");
  const int workers = resolve_workers(opts.workers);
  const std::uint64_t nmax = checkpoints.back();
  const std::vector<double> b = birkhoff_prefix(sys, start[0], nmax, workers);
  const CharAngle theta{sys, A, B, start[0], start[1], b};

  auto sums = checkpointed_sum(
      checkpoints,
      [&](std::uint64_t n) -> std::complex<double> {
        const int mu = table.values[n];
        if (mu == 0) return 0.0;
        return unit(theta(n)) * static_cast<double>(mu);
      },
      workers);

  ExperimentReport rep;
  rep.kind = "sarnak";
  rep.rng_seed = opts.rng_seed;
  json params = system_json(sys);
  params["A"] = A;
  params["B"] = B;
  params["x0"] = angle_json(start[0]);
  params["y0"] = angle_json(start[1]);
  params["checkpoints"] = checkpoints;
  rep.params_json = params.dump();
  for (const auto& [n, sum] : sums)
    rep.checkpoints.push_back({n, sum / static_cast<double>(n), std::nullopt});
  return rep;
}

ExperimentReport kbsz_correlation(const dyn::SkewSystem& sys, long long A, long long B,
                                  const dyn::TorusPoint& start, std::uint64_t r, std::uint64_t s,
                                  const std::vector<std::uint64_t>& checkpoints,
                                  const RunOptions& opts) {
  check_checkpoints(checkpoints);
  if (start.dim != 2) throw std::invalid_argument("kbsz_correlation: start must be 2-dimensional");
  if (r == s) throw std::domain_error("kbsz_correlation: r and s must differ");
  if (!arith::is_prime(r) || !arith::is_prime(s))
    throw std::domain_error("kbsz_correlation: r and s must be prime");
  const int workers = resolve_workers(opts.workers);
  const std::uint64_t nmax = checkpoints.back();
  const std::uint64_t mmax = std::max(r, s) * nmax;
  const std::vector<double> b = birkhoff_prefix(sys, start[0], mmax, workers);
  const CharAngle theta{sys, A, B, start[0], start[1], b};
  const long long rl = static_cast<long long>(r), sl = static_cast<long long>(s);

  auto sums = checkpointed_sum(
      checkpoints,
      [&](std::uint64_t n) -> std::complex<double> {
        const Angle d = theta(n * static_cast<std::uint64_t>(rl)) -
                        theta(n * static_cast<std::uint64_t>(sl));
        return unit(d);
      },
      workers);

  // Rotation case: the correlation collapses to a geometric sum with
  // theta = (r - s)(A alpha + B gamma).
  std::optional<Angle> geo;
  if (sys.is_affine() && sys.c() == 0)
    geo = (sys.alpha().scaled(A) + sys.gamma().scaled(B)).scaled(rl - sl);

  ExperimentReport rep;
  rep.kind = "kbsz";
  rep.rng_seed = opts.rng_seed;
  json params = system_json(sys);
  params["A"] = A;
  params["B"] = B;
  params["r"] = r;
  params["s"] = s;
  params["x0"] = angle_json(start[0]);
  params["y0"] = angle_json(start[1]);
  params["checkpoints"] = checkpoints;
  rep.params_json = params.dump();
  for (const auto& [n, sum] : sums) {
    std::optional<double> bound;
    if (geo) bound = geometric_bound(n, *geo);
    rep.checkpoints.push_back({n, sum / static_cast<double>(n), bound});
  }
  return rep;
}

std::pair<std::complex<double>, double> weyl_sum(Angle theta, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("weyl_sum: N must be >= 1");
  KahanComplex acc;
  Angle phi;
  for (std::uint64_t i = 1; i <= n; ++i) {
    phi += theta;
    acc.add(unit(phi));
  }
  return {acc.value() / static_cast<double>(n), geometric_bound(n, theta)};
}

std::vector<ExperimentReport> haar_equidistribution(
    Angle alpha, long long r, long long s,
    const std::vector<std::pair<long long, long long>>& characters,
    const std::vector<std::uint64_t>& checkpoints, const RunOptions& opts) {
  check_checkpoints(checkpoints);
  if (std::gcd(r, s) != 1)
    throw std::invalid_argument("haar_equidistribution: r, s must be coprime");
  const int workers = resolve_workers(opts.workers);

  std::vector<ExperimentReport> reports;
  reports.reserve(characters.size());
  for (const auto& [A, B] : characters) {
    const Angle theta = alpha.scaled(A * r + B * s);
    auto sums = checkpointed_sum(
        checkpoints, [&](std::uint64_t n) { return unit(theta.scaled(static_cast<long long>(n))); },
        workers);
    ExperimentReport rep;
    rep.kind = "haar-equi";
    rep.rng_seed = opts.rng_seed;
    json params;
    params["alpha"] = angle_json(alpha);
    params["r"] = r;
    params["s"] = s;
    params["A"] = A;
    params["B"] = B;
    params["checkpoints"] = checkpoints;
    rep.params_json = params.dump();
    for (const auto& [n, sum] : sums)
      rep.checkpoints.push_back(
          {n, sum / static_cast<double>(n), geometric_bound(n, theta)});
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<ExperimentReport> component_equidistribution(
    const dyn::SkewSystem& sys, const dyn::ComponentSpec& spec, const dyn::TorusPoint& start,
    const std::vector<std::array<long long, 4>>& characters,
    const std::vector<std::uint64_t>& checkpoints, const RunOptions& opts) {
  check_checkpoints(checkpoints);
  if (!sys.is_affine())
    throw std::invalid_argument("component_equidistribution: system must be affine");
  if (!dyn::membership_J(spec, start, Angle::from_double(1e-12)))
    throw std::domain_error("component_equidistribution: start point not on the J component");
  const int workers = resolve_workers(opts.workers);
  const long long r = spec.r, s = spec.s;
  const long long c = sys.c();
  const Angle alpha = sys.alpha();
  const Angle gamma = sys.gamma();
  const Angle x0 = start[0], y0 = start[1], u0 = start[2], v0 = start[3];

  // Closed forms for the n-th point of the (T^r x T^s)_Psi orbit; exact.
  auto point_at = [&](std::uint64_t nu) -> dyn::TorusPoint {
    const long long n = static_cast<long long>(nu);
    const long long tri = n % 2 == 0 ? (n / 2) * (n - 1) : n * ((n - 1) / 2);
    const Angle xn = x0 + alpha.scaled(r * n);
    const Angle yn = y0 + alpha.scaled(s * n);
    Angle un = u0 + gamma.scaled(r * n);
    Angle vn = v0 + gamma.scaled(s * n);
    if (c != 0) {
      un += (x0.scaled(r * n) + alpha.scaled(r).scaled(r * tri) +
             alpha.scaled(n * (r * (r - 1) / 2)))
                .scaled(c);
      vn += (y0.scaled(s * n) + alpha.scaled(s).scaled(s * tri) +
             alpha.scaled(n * (s * (s - 1) / 2)))
                .scaled(c);
    }
    return dyn::TorusPoint::make4(xn, yn, un, vn);
  };

  std::vector<ExperimentReport> reports;
  reports.reserve(characters.size());
  for (const auto& ch : characters) {
    auto sums = checkpointed_sum(
        checkpoints,
        [&](std::uint64_t n) {
          const dyn::TorusPoint p = point_at(n);
          const Angle th = p[0].scaled(ch[0]) + p[1].scaled(ch[1]) + p[2].scaled(ch[2]) +
                           p[3].scaled(ch[3]);
          return unit(th);
        },
        workers);
    ExperimentReport rep;
    rep.kind = "component-equi";
    rep.rng_seed = opts.rng_seed;
    json params = system_json(sys);
    params["spec"] = json::parse(spec.to_json());
    params["char"] = ch;
    params["start"] = json::array({angle_json(x0), angle_json(y0), angle_json(u0),
                                   angle_json(v0)});
    params["checkpoints"] = checkpoints;
    rep.params_json = params.dump();
    for (const auto& [n, sum] : sums)
      rep.checkpoints.push_back({n, sum / static_cast<double>(n), std::nullopt});
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<P1Row> p1_experiment(const harmonic::FourierSeries& f, Angle alpha,
                                 const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs,
                                 std::uint64_t n, const RunOptions& opts) {
  if (!f.is_real()) throw std::invalid_argument("p1_experiment: f must be real-flagged");
  if (n < 1) throw std::invalid_argument("p1_experiment: N must be >= 1");
  const int workers = resolve_workers(opts.workers);
  std::vector<P1Row> rows;
  rows.reserve(pairs.size());
  for (const auto& [r, s] : pairs) {
    const long long rl = static_cast<long long>(r), sl = static_cast<long long>(s);
    P1Row row;
    row.r = r;
    row.s = s;
    row.parseval = harmonic::correlation_parseval(f, rl, sl);
    auto sums = checkpointed_sum(
        {n},
        [&](std::uint64_t i) {
          const long long il = static_cast<long long>(i);
          return f.evaluate(alpha.scaled(rl * il)) * std::conj(f.evaluate(alpha.scaled(sl * il)));
        },
        workers);
    row.empirical = sums.front().second / static_cast<double>(n);
    row.gap = std::abs(row.parseval - row.empirical);
    rows.push_back(row);
  }
  return rows;
}

std::string ExperimentReport::to_json() const {
  json j;
  j["schema"] = 1;
  j["kind"] = kind;
  j["rng_seed"] = rng_seed;
  j["params"] = json::parse(params_json.empty() ? "{}" : params_json);
  json cps = json::array();
  for (const Checkpoint& c : checkpoints) {
    json e;
    e["N"] = c.N;
    e["re"] = c.value.real();
    e["im"] = c.value.imag();
    e["abs"] = std::abs(c.value);
    if (c.bound)
      e["bound"] = *c.bound;
    else
      e["bound"] = nullptr;
    cps.push_back(e);
  }
  j["checkpoints"] = cps;
  return j.dump(2);
}

void ExperimentReport::to_csv(std::ostream& out) const {
  out.precision(17);
  out << "N,re,im,abs,bound\n";
  for (const Checkpoint& c : checkpoints) {
    out << c.N << ',' << c.value.real() << ',' << c.value.imag() << ',' << std::abs(c.value)
        << ',';
    if (c.bound) out << *c.bound;
    out << '\n';
  }
}

bool ExperimentReport::bounds_satisfied(double slack) const {
  for (const Checkpoint& c : checkpoints)
    if (c.bound && std::abs(c.value) > *c.bound + slack) return false;
  return true;
}

std::string p1_rows_to_json(const std::vector<P1Row>& rows) {
  json arr = json::array();
  for (const P1Row& r : rows) {
    json e;
    e["r"] = r.r;
    e["s"] = r.s;
    e["parseval_re"] = r.parseval.real();
    e["parseval_im"] = r.parseval.imag();
    e["empirical_re"] = r.empirical.real();
    e["empirical_im"] = r.empirical.imag();
    e["gap"] = r.gap;
    arr.push_back(e);
  }
  return arr.dump(2);
}

void p1_rows_to_csv(const std::vector<P1Row>& rows, std::ostream& out) {
  out.precision(17);
  out << "r,s,parseval_re,parseval_im,empirical_re,empirical_im,gap\n";
  for (const P1Row& r : rows)
    out << r.r << ',' << r.s << ',' << r.parseval.real() << ',' << r.parseval.imag() << ','
        << r.empirical.real() << ',' << r.empirical.imag() << ',' << r.gap << '\n';
}

}  // namespace skewlab::experiments
