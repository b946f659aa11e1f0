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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "skewlab/experiments.hpp"
#include "skewlab/katok.hpp"

namespace py = pybind11;
using namespace skewlab;

namespace {

// Big integers cross the boundary as decimal strings <-> python ints.
cpp_int to_cpp(const py::int_& v) {
  const py::str s(static_cast<py::handle>(v));
  return cpp_int(s.cast<std::string>());
}
py::int_ to_py(const cpp_int& v) { return py::int_(py::str(v.str())); }

cpp_rational rat_of(const py::int_& num, const py::int_& den) {
  return cpp_rational(to_cpp(num), to_cpp(den));
}

dio::ContinuedFraction cf_of(const std::vector<py::int_>& quotients) {
  std::vector<cpp_int> qs;
  qs.reserve(quotients.size());
  for (const py::int_& q : quotients) qs.push_back(to_cpp(q));
  return dio::ContinuedFraction(std::move(qs));
}

py::dict report_dict(const experiments::ExperimentReport& rep) {
  py::dict d;
  d["kind"] = rep.kind;
  d["rng_seed"] = rep.rng_seed;
  py::list cps;
  for (const auto& c : rep.checkpoints) {
    py::dict e;
    e["N"] = c.N;
    e["value"] = c.value;
    if (c.bound)
      e["bound"] = *c.bound;
    else
      e["bound"] = py::none();
    cps.append(e);
  }
  d["checkpoints"] = cps;
  return d;
}

py::object interval_obj(const std::optional<harmonic::Interval>& iv) {
  if (!iv) return py::none();
  return py::make_tuple(iv->lo, iv->hi);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical laboratory for Anzai skew products and Mobius correlation experiments";

  // ---- angles ----
  py::class_<Angle>(m, "Angle")
      .def(py::init<>())
      .def_static("from_fraction",
                  [](const py::int_& p, const py::int_& q) {
                    return Angle::from_fraction(to_cpp(p), to_cpp(q));
                  })
      .def_static("from_double", &Angle::from_double)
      .def("to_double", &Angle::to_double)
      .def("scaled", [](const Angle& a, const py::int_& k) { return a.scaled(to_cpp(k)); })
      .def("__add__", [](Angle a, Angle b) { return a + b; })
      .def("__sub__", [](Angle a, Angle b) { return a - b; })
      .def("__neg__", [](Angle a) { return -a; })
      .def("__eq__", [](Angle a, Angle b) { return a == b; })
      .def_static("distance", &Angle::circle_distance)
      .def("__repr__", [](Angle a) {
        return "Angle(" + std::to_string(a.to_double()) + ")";
      });

  // ---- arith ----
  py::class_<arith::MoebiusTable>(m, "MoebiusTable")
      .def_readonly("limit", &arith::MoebiusTable::limit)
      .def("mu", &arith::MoebiusTable::mu)
      .def("mertens", [](const arith::MoebiusTable& t, std::uint64_t n) {
        return arith::mertens(t, n);
      })
      .def("primes", [](const arith::MoebiusTable& t) { return t.primes; })
      .def("dump", [](const arith::MoebiusTable& t, const std::string& path) {
        arith::dump_moebius_file(t, path);
      });
  m.def("sieve_moebius", &arith::sieve_moebius, py::arg("n"));
  m.def("load_moebius", &arith::load_moebius_file, py::arg("path"));
  m.def("moebius_bruteforce", &arith::moebius_bruteforce, py::arg("n"));
  m.def("is_prime", &arith::is_prime, py::arg("n"));
  m.def("ext_gcd", [](const py::int_& r, const py::int_& s) {
    const arith::Bezout b = arith::ext_gcd(to_cpp(r), to_cpp(s));
    return py::make_tuple(to_py(b.g), to_py(b.a), to_py(b.b));
  });

  // ---- continued fractions ----
  py::class_<dio::ContinuedFraction>(m, "ContinuedFraction")
      .def(py::init(&cf_of), py::arg("quotients"))
      .def("quotients",
           [](const dio::ContinuedFraction& cf) {
             py::list out;
             for (const cpp_int& a : cf.quotients()) out.append(to_py(a));
             return out;
           })
      .def("convergents",
           [](const dio::ContinuedFraction& cf) {
             py::list out;
             for (const auto& c : cf.convergents())
               out.append(py::make_tuple(to_py(c.p), to_py(c.q)));
             return out;
           })
      .def("to_angle", &dio::ContinuedFraction::to_angle)
      .def("to_text", &dio::ContinuedFraction::to_text)
      .def_static("from_text", &dio::ContinuedFraction::from_text)
      .def("__len__", &dio::ContinuedFraction::length);
  m.def("golden_cf", &dio::golden_cf, py::arg("terms") = 96);
  m.def(
      "cf_expand",
      [](const py::int_& num, const py::int_& den, std::size_t depth) {
        return dio::cf_expand(rat_of(num, den), depth);
      },
      py::arg("num"), py::arg("den"), py::arg("depth") = 64);
  m.def(
      "cf_expand_angle",
      [](Angle x, std::size_t depth) { return dio::cf_expand(x, depth); }, py::arg("x"),
      py::arg("depth") = 64);
  m.def("best_approx_check",
        [](Angle alpha, const py::int_& p, const py::int_& q, const py::int_& bound) {
          return dio::best_approx_check(alpha, to_cpp(p), to_cpp(q), to_cpp(bound));
        });
  m.def("approx_quality", [](const dio::ContinuedFraction& cf, std::size_t n) {
    const dio::RatInterval iv = dio::approx_quality(cf, n);
    auto s = [](const cpp_rational& r) {
      return numerator(r).str() + "/" + denominator(r).str();
    };
    return py::make_tuple(s(iv.lo), s(iv.hi));
  });
  m.def("construct_generic_alpha",
        [](const std::vector<std::tuple<py::int_, py::int_, py::int_>>& targets) {
          std::vector<dio::ApproxTarget> ts;
          for (const auto& [qmin, num, den] : targets)
            ts.push_back({to_cpp(qmin), rat_of(num, den)});
          const dio::GenericAlpha ga = dio::construct_generic_alpha(ts);
          return py::make_tuple(ga.cf, ga.designated,
                                dio::verify_generic_targets(ga, ts));
        },
        "targets: list of (q_min, bound_num, bound_den)");

  // ---- Fourier series ----
  py::class_<harmonic::DecayCertificate>(m, "DecayCertificate")
      .def(py::init([](double C, double delta) {
        return harmonic::DecayCertificate{C, delta};
      }))
      .def_readonly("C", &harmonic::DecayCertificate::C)
      .def_readonly("delta", &harmonic::DecayCertificate::delta);

  py::class_<harmonic::FourierSeries>(m, "FourierSeries")
      .def(py::init([](const std::vector<std::pair<long long, std::complex<double>>>& coeffs,
                       std::complex<double> mean, bool real,
                       std::optional<harmonic::DecayCertificate> decay) {
             return harmonic::FourierSeries(coeffs, mean, real, decay);
           }),
           py::arg("coeffs"), py::arg("mean") = std::complex<double>(0.0),
           py::arg("real") = false, py::arg("decay") = py::none())
      .def_static("real_from_positive", &harmonic::FourierSeries::real_from_positive,
                  py::arg("positive"), py::arg("mean") = 0.0, py::arg("decay") = py::none())
      .def("coeff", &harmonic::FourierSeries::coeff)
      .def("mean", &harmonic::FourierSeries::mean)
      .def("is_real", &harmonic::FourierSeries::is_real)
      .def("max_frequency", &harmonic::FourierSeries::max_frequency)
      .def("support", [](const harmonic::FourierSeries& f) { return f.support(); })
      .def("evaluate", [](const harmonic::FourierSeries& f, Angle x) { return f.evaluate(x); })
      .def("evaluate",
           [](const harmonic::FourierSeries& f, double x) {
             return f.evaluate(Angle::from_double(x));
           })
      .def("translated", &harmonic::FourierSeries::translated)
      .def("save", &harmonic::FourierSeries::save_file)
      .def_static("load", &harmonic::FourierSeries::load_file, py::arg("path"),
                  py::arg("real") = false);

  m.def("cocycle_fourier", &harmonic::cocycle_fourier, py::arg("f"), py::arg("alpha"),
        py::arg("k"));
  m.def("correlation_parseval", &harmonic::correlation_parseval);
  m.def("correlation_quadrature", &harmonic::correlation_quadrature);
  m.def("katok_lattice_ratio", [](const harmonic::FourierSeries& f, long long q) {
    return interval_obj(harmonic::katok_lattice_ratio(f, q));
  });
  m.def("katok_dilated_lattice_ratio",
        [](const harmonic::FourierSeries& f, long long q, long long r, long long s) {
          return interval_obj(harmonic::katok_dilated_lattice_ratio(f, q, r, s));
        });
  m.def("katok_approach_quantity",
        [](const harmonic::FourierSeries& f, const dio::ContinuedFraction& a, std::size_t n) {
          return interval_obj(harmonic::katok_approach_quantity(f, a, n));
        });
  m.def("epsilon_diagnostic",
        [](const std::vector<double>& xs, std::optional<harmonic::DecayCertificate> decay,
           std::size_t n_k, const py::int_& b_num, const py::int_& b_den) {
          const harmonic::Interval iv =
              harmonic::epsilon_diagnostic({xs, decay}, n_k, rat_of(b_num, b_den));
          return py::make_tuple(iv.lo, iv.hi);
        },
        py::arg("xs"), py::arg("decay"), py::arg("n_k"), py::arg("b_num"),
        py::arg("b_den") = 1);

  // ---- dynamics ----
  py::class_<dyn::SkewSystem>(m, "SkewSystem")
      .def_static("make", &dyn::SkewSystem::make, py::arg("alpha"), py::arg("c"), py::arg("f"))
      .def_static("make_affine", &dyn::SkewSystem::make_affine, py::arg("alpha"), py::arg("c"),
                  py::arg("gamma"))
      .def("alpha", &dyn::SkewSystem::alpha)
      .def("c", &dyn::SkewSystem::c)
      .def("gamma", &dyn::SkewSystem::gamma)
      .def("is_affine", &dyn::SkewSystem::is_affine);

  m.def("skew_orbit",
        [](const dyn::SkewSystem& sys, Angle x0, Angle y0, std::uint64_t n,
           std::uint64_t stride) {
          std::vector<std::pair<double, double>> out;
          out.reserve(n);
          dyn::skew_orbit(sys, dyn::TorusPoint::make2(x0, y0), n, stride,
                          [&](const dyn::TorusPoint& p) {
                            out.emplace_back(p[0].to_double(), p[1].to_double());
                          });
          return out;
        },
        py::arg("sys"), py::arg("x0"), py::arg("y0"), py::arg("n"), py::arg("stride") = 1);
  m.def("birkhoff_cocycle", &dyn::birkhoff_cocycle);
  m.def("f_q_sum", &dyn::f_q_sum);
  m.def("solve_l0_k0",
        [](long long r, long long s, const std::tuple<py::int_, py::int_, py::int_>& gamma,
           const std::tuple<py::int_, py::int_, py::int_>& c1, long long l_cap) {
          auto sym = [](const std::tuple<py::int_, py::int_, py::int_>& t) {
            return dyn::SymTorus{to_cpp(std::get<0>(t)), to_cpp(std::get<1>(t)),
                                 to_cpp(std::get<2>(t))};
          };
          const dyn::L0K0 sol = dyn::solve_l0_k0(r, s, sym(gamma), sym(c1), l_cap);
          if (!sol.found) return py::object(py::none());
          return py::object(py::make_tuple(sol.l0, to_py(sol.k0)));
        },
        py::arg("r"), py::arg("s"), py::arg("gamma"), py::arg("c1"),
        py::arg("l_cap") = 1000000);
  m.def("char_constant_on_I", &dyn::char_constant_on_I);

  // ---- experiments ----
  m.def("weyl_sum", [](Angle theta, std::uint64_t n) { return experiments::weyl_sum(theta, n); });
  m.def("sarnak_sum",
        [](const dyn::SkewSystem& sys, long long A, long long B, Angle x0, Angle y0,
           const arith::MoebiusTable& table, const std::vector<std::uint64_t>& checkpoints,
           int workers) {
          experiments::RunOptions opts;
          opts.workers = workers;
          return report_dict(experiments::sarnak_sum(sys, A, B, dyn::TorusPoint::make2(x0, y0),
                                                     table, checkpoints, opts));
        },
        py::arg("sys"), py::arg("A"), py::arg("B"), py::arg("x0"), py::arg("y0"),
        py::arg("table"), py::arg("checkpoints"), py::arg("workers") = 0);
  m.def("kbsz_correlation",
        [](const dyn::SkewSystem& sys, long long A, long long B, Angle x0, Angle y0,
           std::uint64_t r, std::uint64_t s, const std::vector<std::uint64_t>& checkpoints,
           int workers) {
          experiments::RunOptions opts;
          opts.workers = workers;
          return report_dict(experiments::kbsz_correlation(
              sys, A, B, dyn::TorusPoint::make2(x0, y0), r, s, checkpoints, opts));
        },
        py::arg("sys"), py::arg("A"), py::arg("B"), py::arg("x0"), py::arg("y0"), py::arg("r"),
        py::arg("s"), py::arg("checkpoints"), py::arg("workers") = 0);
  m.def("haar_equidistribution",
        [](Angle alpha, long long r, long long s,
           const std::vector<std::pair<long long, long long>>& chars,
           const std::vector<std::uint64_t>& checkpoints) {
          py::list out;
          for (const auto& rep : experiments::haar_equidistribution(alpha, r, s, chars,
                                                                    checkpoints))
            out.append(report_dict(rep));
          return out;
        });
  m.def("p1_experiment",
        [](const harmonic::FourierSeries& f, Angle alpha,
           const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs, std::uint64_t n) {
          py::list out;
          for (const auto& row : experiments::p1_experiment(f, alpha, pairs, n)) {
            py::dict e;
            e["r"] = row.r;
            e["s"] = row.s;
            e["parseval"] = row.parseval;
            e["empirical"] = row.empirical;
            e["gap"] = row.gap;
            out.append(e);
          }
          return out;
        });

#ifdef SKEWLAB_VERSION
  m.attr("__version__") = SKEWLAB_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
