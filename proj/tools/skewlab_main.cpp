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

// skewlab: configure, run and export the lab's experiments.
//
// Exit codes: 0 success, 2 configuration/schema violation (nothing was
// computed), 3 domain error during computation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "skewlab/experiments.hpp"
#include "skewlab/katok.hpp"

using json = nlohmann::ordered_json;
using namespace skewlab;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// parameter schema

enum class Kind { Uint, Int, Str, Rat, Sym, UintList, Pairs, Chars2, Chars4 };

struct Param {
  const char* name;
  Kind kind;
  bool required = false;
  const char* fallback = nullptr;  // canonical default, textual form
  const char* help = "";
};

const std::map<std::string, std::vector<Param>>& schema() {
  static const std::map<std::string, std::vector<Param>> s = {
      {"sieve",
       {{"n", Kind::Uint, true, nullptr, "sieve bound"},
        {"seed", Kind::Uint, false, "0", ""}}},
      {"cfrac",
       {{"rational", Kind::Rat, false, nullptr, "exact input p/q in (0,1)"},
        {"x", Kind::Str, false, nullptr, "double input, expanded at fixed-point resolution"},
        {"depth", Kind::Uint, false, "32", "maximum number of quotients"},
        {"seed", Kind::Uint, false, "0", ""}}},
      {"generic-alpha",
       {{"targets", Kind::Str, true, nullptr, "semicolon list qmin:num/den"},
        {"seed", Kind::Uint, false, "0", ""}}},
      {"katok",
       {{"series", Kind::Str, true, nullptr, "Fourier series file"},
        {"q", Kind::Uint, true, nullptr, "lattice base frequency"},
        {"r", Kind::Int, false, nullptr, "28b numerator dilate"},
        {"s", Kind::Int, false, nullptr, "28b denominator dilate (s | q)"},
        {"alpha-cf", Kind::Str, false, nullptr, "continued fraction for 29a"},
        {"index", Kind::Uint, false, nullptr, "convergent index for 29a"},
        {"seed", Kind::Uint, false, "0", ""}}},
      {"correlation",
       {{"series", Kind::Str, true, nullptr, "Fourier series file"},
        {"r", Kind::Int, true, nullptr, ""},
        {"s", Kind::Int, true, nullptr, ""},
        {"samples", Kind::Uint, false, "0", "quadrature samples; 0 picks past Nyquist"},
        {"seed", Kind::Uint, false, "0", ""}}},
      {"sarnak",
       {{"alpha-cf", Kind::Str, false, "golden", "quotients, 'golden', or @file"},
        {"c", Kind::Int, false, "0", "topological degree"},
        {"f", Kind::Str, false, nullptr, "Fourier series file for the perturbation"},
        {"gamma", Kind::Rat, false, "0/1", "affine fiber offset"},
        {"A", Kind::Int, true, nullptr, "character exponent on x"},
        {"B", Kind::Int, true, nullptr, "character exponent on y"},
        {"x0", Kind::Rat, false, "0/1", ""},
        {"y0", Kind::Rat, false, "0/1", ""},
        {"checkpoints", Kind::UintList, false, "1000,10000,100000,1000000", ""},
        {"mobius", Kind::Str, false, nullptr, "binary table dump; sieved on the fly if absent"},
        {"seed", Kind::Uint, false, "0", ""}}},
      {"kbsz",
       {{"alpha-cf", Kind::Str, false, "golden", "quotients, 'golden', or @file"},
        {"c", Kind::Int, false, "0", ""},
        {"f", Kind::Str, false, nullptr, ""},
        {"gamma", Kind::Rat, false, "0/1", ""},
        {"A", Kind::Int, true, nullptr, ""},
        {"B", Kind::Int, true, nullptr, ""},
        {"x0", Kind::Rat, false, "0/1", ""},
        {"y0", Kind::Rat, false, "0/1", ""},
        {"r", Kind::Uint, true, nullptr, "first prime"},
        {"s", Kind::Uint, true, nullptr, "second prime"},
        {"checkpoints", Kind::UintList, false, "1000,10000,100000,1000000", ""},
        {"seed", Kind::Uint, false, "0", ""}}},
      {"haar",
       {{"alpha-cf", Kind::Str, false, "golden", ""},
        {"r", Kind::Int, true, nullptr, ""},
        {"s", Kind::Int, true, nullptr, ""},
        {"chars", Kind::Chars2, true, nullptr, "semicolon list A,B"},
        {"checkpoints", Kind::UintList, false, "1000,10000,100000,1000000", ""},
        {"seed", Kind::Uint, false, "0", ""}}},
      {"component",
       {{"alpha-cf", Kind::Str, false, "golden", ""},
        {"gamma", Kind::Sym, true, nullptr, "symbolic u,v,w meaning (u a + v)/w"},
        {"c1", Kind::Sym, false, "0,0,1", ""},
        {"c2", Kind::Rat, false, "0/1", ""},
        {"r", Kind::Int, false, "3", ""},
        {"s", Kind::Int, false, "5", ""},
        {"l-cap", Kind::Uint, false, "1000000", "search cap for l0"},
        {"chars", Kind::Chars4, true, nullptr, "semicolon list A,B,C,D"},
        {"checkpoints", Kind::UintList, false, "1000,10000,100000", ""},
        {"seed", Kind::Uint, false, "0", ""}}},
      {"p1",
       {{"support", Kind::Str, false, "pow2", "'pow2' or a Fourier series file"},
        {"pairs", Kind::Pairs, true, nullptr, "semicolon list r,s"},
        {"alpha-cf", Kind::Str, false, "golden", ""},
        {"n", Kind::Uint, false, "1000000", ""},
        {"seed", Kind::Uint, false, "0", ""}}},
  };
  return s;
}

// ---------------------------------------------------------------------------
// parsing helpers (flag text -> canonical json)

[[noreturn]] void config_error(const std::string& msg) {
  std::cerr << "skewlab: config error: " << msg << "\n";
  std::exit(2);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

long long to_int(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    config_error(std::string(what) + ": expected an integer, got '" + text + "'");
  }
}

cpp_rational parse_rational(const std::string& text, const char* what) {
  const auto parts = split(text, '/');
  try {
    if (parts.size() == 1) return cpp_rational(cpp_int(parts[0]));
    if (parts.size() == 2) {
      const cpp_int den(parts[1]);
      if (den == 0) throw std::invalid_argument("zero denominator");
      return cpp_rational(cpp_int(parts[0]), den);
    }
  } catch (const std::exception&) {
  }
  config_error(std::string(what) + ": expected p/q, got '" + text + "'");
}

dyn::SymTorus parse_sym(const std::string& text, const char* what) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) config_error(std::string(what) + ": expected u,v,w, got '" + text + "'");
  try {
    dyn::SymTorus t{cpp_int(parts[0]), cpp_int(parts[1]), cpp_int(parts[2])};
    if (t.w == 0) config_error(std::string(what) + ": w must be nonzero");
    return t;
  } catch (const std::exception&) {
    config_error(std::string(what) + ": bad integer in '" + text + "'");
  }
}

json canonicalize(const Param& p, const std::string& text) {
  switch (p.kind) {
    case Kind::Uint: {
      const long long v = to_int(text, p.name);
      if (v < 0) config_error(std::string(p.name) + ": must be nonnegative");
      return static_cast<std::uint64_t>(v);
    }
    case Kind::Int:
      return to_int(text, p.name);
    case Kind::Str:
      return text;
    case Kind::Rat:
      (void)parse_rational(text, p.name);
      return text;
    case Kind::Sym:
      (void)parse_sym(text, p.name);
      return text;
    case Kind::UintList: {
      json arr = json::array();
      for (const std::string& part : split(text, ',')) {
        const long long v = to_int(part, p.name);
        if (v < 1) config_error(std::string(p.name) + ": entries must be positive");
        arr.push_back(static_cast<std::uint64_t>(v));
      }
      return arr;
    }
    case Kind::Pairs:
    case Kind::Chars2:
    case Kind::Chars4: {
      const std::size_t want = p.kind == Kind::Chars4 ? 4 : 2;
      json arr = json::array();
      for (const std::string& grp : split(text, ';')) {
        const auto nums = split(grp, ',');
        if (nums.size() != want)
          config_error(std::string(p.name) + ": each group needs " + std::to_string(want) +
                       " integers, got '" + grp + "'");
        json tuple = json::array();
        for (const std::string& n : nums) tuple.push_back(to_int(n, p.name));
        arr.push_back(tuple);
      }
      if (arr.empty()) config_error(std::string(p.name) + ": empty list");
      return arr;
    }
  }
  config_error("unhandled parameter kind");
}

// Validates a value that arrived through a config file.
json canonicalize_json(const Param& p, const json& v) {
  if (v.is_string()) return canonicalize(p, v.get<std::string>());
  switch (p.kind) {
    case Kind::Uint:
      if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0))
        return v.get<std::uint64_t>();
      break;
    case Kind::Int:
      if (v.is_number_integer()) return v.get<long long>();
      break;
    case Kind::UintList:
      if (v.is_array()) {
        for (const auto& e : v)
          if (!e.is_number_integer() && !e.is_number_unsigned())
            config_error(std::string(p.name) + ": list entries must be integers");
        return v;
      }
      break;
    case Kind::Pairs:
    case Kind::Chars2:
    case Kind::Chars4:
      if (v.is_array()) {
        const std::size_t want = p.kind == Kind::Chars4 ? 4 : 2;
        for (const auto& e : v)
          if (!e.is_array() || e.size() != want)
            config_error(std::string(p.name) + ": expected groups of " + std::to_string(want));
        return v;
      }
      break;
    default:
      break;
  }
  config_error(std::string(p.name) + ": wrong type in config");
}

// ---------------------------------------------------------------------------
// canonical json -> domain objects

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) config_error("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

dio::ContinuedFraction parse_cf(std::string text) {
  if (!text.empty() && text[0] == '@') {
    text = read_file(text.substr(1));
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  }
  if (text == "golden") return dio::golden_cf();
  if (text.rfind("cf:", 0) == 0) return dio::ContinuedFraction::from_text(text);
  return dio::ContinuedFraction::from_text("cf: " + text);
}

Angle angle_of_rational(const json& v, const char* what) {
  const cpp_rational r = parse_rational(v.get<std::string>(), what);
  return Angle::from_fraction(numerator(r), denominator(r));
}

std::vector<std::uint64_t> uint_list(const json& v) {
  std::vector<std::uint64_t> out;
  for (const auto& e : v) out.push_back(e.get<std::uint64_t>());
  return out;
}

dyn::SkewSystem system_from_params(const json& p) {
  const dio::ContinuedFraction alpha = parse_cf(p.at("alpha-cf").get<std::string>());
  const long long c = p.at("c").get<long long>();
  if (p.contains("f") && !p.at("f").is_null()) {
    const harmonic::FourierSeries f =
        harmonic::FourierSeries::load_file(p.at("f").get<std::string>(), /*real=*/true);
    return dyn::SkewSystem::make(alpha, c, f);
  }
  return dyn::SkewSystem::make_affine(alpha, c, angle_of_rational(p.at("gamma"), "gamma"));
}

// ---------------------------------------------------------------------------
// output

struct Delivery {
  std::string out;     // empty or "-": stdout
  std::string format;  // json or csv
  int workers = 0;
};

void write_text(const Delivery& d, const std::string& text) {
  if (d.out.empty() || d.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(d.out, std::ios::binary);
  if (!f) config_error("cannot open output " + d.out);
  f << text;
}

json document(const std::string& command, const json& params) {
  json doc;
  doc["schema"] = 1;
  doc["tool"] = {{"name", "skewlab"}, {"version", kVersion}};
  doc["config"] = {{"command", command}, {"params", params}};
  return doc;
}

json report_body(const experiments::ExperimentReport& rep) {
  return json::parse(rep.to_json());
}

std::string reports_csv(const std::string& command, const json& params,
                        const std::vector<experiments::ExperimentReport>& reps) {
  std::ostringstream out;
  out << "# skewlab " << kVersion << " " << command << " "
      << json(json{{"params", params}}).dump() << "\n";
  for (const auto& rep : reps) {
    if (reps.size() > 1) out << "# " << rep.params_json << "\n";
    rep.to_csv(out);
  }
  return out.str();
}

void deliver_reports(const Delivery& d, const std::string& command, const json& params,
                     const std::vector<experiments::ExperimentReport>& reps) {
  if (d.format == "csv") {
    write_text(d, reports_csv(command, params, reps));
    return;
  }
  json doc = document(command, params);
  if (reps.size() == 1) {
    doc["report"] = report_body(reps[0]);
  } else {
    doc["reports"] = json::array();
    for (const auto& r : reps) doc["reports"].push_back(report_body(r));
  }
  write_text(d, doc.dump(2) + "\n");
}

json interval_json(const std::optional<harmonic::Interval>& iv) {
  if (!iv) return nullptr;
  return json{{"lo", iv->lo}, {"hi", iv->hi}};
}

// ---------------------------------------------------------------------------
// command runners

void run_sieve(const json& params, const Delivery& d) {
  const std::uint64_t n = params.at("n").get<std::uint64_t>();
  const arith::MoebiusTable table = arith::sieve_moebius(n);
  if (d.out.empty() || d.out == "-") config_error("sieve: --out is required (binary table)");
  arith::dump_moebius_file(table, d.out);
  std::cout << "sieve: n=" << n << " primes=" << table.primes.size()
            << " mertens=" << arith::mertens(table, n) << " -> " << d.out << "\n";
}

void run_cfrac(const json& params, const Delivery& d) {
  const std::size_t depth = params.at("depth").get<std::size_t>();
  std::optional<dio::ContinuedFraction> cf;
  if (params.contains("rational")) {
    const cpp_rational x = parse_rational(params.at("rational").get<std::string>(), "rational");
    cf = dio::cf_expand(x, depth);
  } else if (params.contains("x")) {
    double x = 0.0;
    try {
      std::size_t used = 0;
      x = std::stod(params.at("x").get<std::string>(), &used);
      if (used != params.at("x").get<std::string>().size()) throw std::invalid_argument("x");
    } catch (const std::exception&) {
      config_error("x: expected a floating-point number");
    }
    cf = dio::cf_expand(Angle::from_double(x), depth);
  } else {
    config_error("cfrac: need --rational or --x");
  }
  if (d.format == "csv") config_error("cfrac: csv output not defined");
  json doc = document("cfrac", params);
  doc["cf"] = cf->to_text();
  json conv = json::array();
  for (const auto& c : cf->convergents())
    conv.push_back(json::array({c.p.str(), c.q.str()}));
  doc["convergents"] = conv;
  write_text(d, doc.dump(2) + "\n");
}

void run_generic_alpha(const json& params, const Delivery& d) {
  std::vector<dio::ApproxTarget> targets;
  for (const std::string& grp : split(params.at("targets").get<std::string>(), ';')) {
    const auto parts = split(grp, ':');
    if (parts.size() != 2) config_error("targets: expected qmin:num/den, got '" + grp + "'");
    dio::ApproxTarget t;
    t.q_min = cpp_int(parts[0]);
    t.bound = parse_rational(parts[1], "targets");
    targets.push_back(t);
  }
  const dio::GenericAlpha ga = dio::construct_generic_alpha(targets);
  json doc = document("generic-alpha", params);
  doc["cf"] = ga.cf.to_text();
  doc["designated"] = ga.designated;
  json qs = json::array();
  for (std::size_t i : ga.designated) qs.push_back(ga.cf.convergent(i).q.str());
  doc["designated_q"] = qs;
  doc["verified"] = dio::verify_generic_targets(ga, targets);
  write_text(d, doc.dump(2) + "\n");
}

void run_katok(const json& params, const Delivery& d) {
  const harmonic::FourierSeries f =
      harmonic::FourierSeries::load_file(params.at("series").get<std::string>());
  const long long q = static_cast<long long>(params.at("q").get<std::uint64_t>());
  json doc = document("katok", params);
  doc["lattice_ratio"] = interval_json(harmonic::katok_lattice_ratio(f, q));
  if (params.contains("r") && params.contains("s")) {
    doc["dilated_lattice_ratio"] = interval_json(harmonic::katok_dilated_lattice_ratio(
        f, q, params.at("r").get<long long>(), params.at("s").get<long long>()));
  }
  if (params.contains("alpha-cf") && params.contains("index")) {
    const dio::ContinuedFraction cf = parse_cf(params.at("alpha-cf").get<std::string>());
    doc["approach_quantity"] = interval_json(
        harmonic::katok_approach_quantity(f, cf, params.at("index").get<std::size_t>()));
  }
  write_text(d, doc.dump(2) + "\n");
}

void run_correlation(const json& params, const Delivery& d) {
  const harmonic::FourierSeries f =
      harmonic::FourierSeries::load_file(params.at("series").get<std::string>());
  const long long r = params.at("r").get<long long>();
  const long long s = params.at("s").get<long long>();
  std::uint64_t samples = params.at("samples").get<std::uint64_t>();
  if (samples == 0) samples = 2 * static_cast<std::uint64_t>(std::max(r, s)) *
                                  static_cast<std::uint64_t>(std::max<long long>(
                                      f.max_frequency(), 1)) + 1;
  const std::complex<double> pv = harmonic::correlation_parseval(f, r, s);
  const std::complex<double> qv =
      harmonic::correlation_quadrature(f, r, s, static_cast<long long>(samples));
  json doc = document("correlation", params);
  doc["parseval"] = {{"re", pv.real()}, {"im", pv.imag()}};
  doc["quadrature"] = {{"re", qv.real()}, {"im", qv.imag()}};
  doc["gap"] = std::abs(pv - qv);
  write_text(d, doc.dump(2) + "\n");
}

arith::MoebiusTable table_for(const json& params, std::uint64_t need) {
  if (params.contains("mobius") && !params.at("mobius").is_null()) {
    arith::MoebiusTable t = arith::load_moebius_file(params.at("mobius").get<std::string>());
    if (t.limit < need) throw std::out_of_range("mobius table smaller than the last checkpoint");
    return t;
  }
  return arith::sieve_moebius(need);
}

void run_sarnak(const json& params, const Delivery& d) {
  const dyn::SkewSystem sys = system_from_params(params);
  const std::vector<std::uint64_t> cps = uint_list(params.at("checkpoints"));
  const arith::MoebiusTable table = table_for(params, cps.empty() ? 1 : cps.back());
  experiments::RunOptions opts;
  opts.workers = d.workers;
  opts.rng_seed = params.at("seed").get<std::uint64_t>();
  const dyn::TorusPoint start = dyn::TorusPoint::make2(
      angle_of_rational(params.at("x0"), "x0"), angle_of_rational(params.at("y0"), "y0"));
  const auto rep = experiments::sarnak_sum(sys, params.at("A").get<long long>(),
                                           params.at("B").get<long long>(), start, table, cps,
                                           opts);
  deliver_reports(d, "sarnak", params, {rep});
}

void run_kbsz(const json& params, const Delivery& d) {
  const dyn::SkewSystem sys = system_from_params(params);
  const std::vector<std::uint64_t> cps = uint_list(params.at("checkpoints"));
  experiments::RunOptions opts;
  opts.workers = d.workers;
  opts.rng_seed = params.at("seed").get<std::uint64_t>();
  const dyn::TorusPoint start = dyn::TorusPoint::make2(
      angle_of_rational(params.at("x0"), "x0"), angle_of_rational(params.at("y0"), "y0"));
  const auto rep = experiments::kbsz_correlation(
      sys, params.at("A").get<long long>(), params.at("B").get<long long>(), start,
      params.at("r").get<std::uint64_t>(), params.at("s").get<std::uint64_t>(), cps, opts);
  deliver_reports(d, "kbsz", params, {rep});
}

void run_haar(const json& params, const Delivery& d) {
  const dio::ContinuedFraction alpha = parse_cf(params.at("alpha-cf").get<std::string>());
  std::vector<std::pair<long long, long long>> chars;
  for (const auto& e : params.at("chars")) chars.emplace_back(e[0].get<long long>(),
                                                              e[1].get<long long>());
  experiments::RunOptions opts;
  opts.workers = d.workers;
  opts.rng_seed = params.at("seed").get<std::uint64_t>();
  const auto reps = experiments::haar_equidistribution(
      alpha.to_angle(), params.at("r").get<long long>(), params.at("s").get<long long>(), chars,
      uint_list(params.at("checkpoints")), opts);
  deliver_reports(d, "haar", params, reps);
}

void run_component(const json& params, const Delivery& d) {
  const dio::ContinuedFraction alpha = parse_cf(params.at("alpha-cf").get<std::string>());
  const dyn::SymTorus gamma = parse_sym(params.at("gamma").get<std::string>(), "gamma");
  const dyn::SymTorus c1 = parse_sym(params.at("c1").get<std::string>(), "c1");
  const Angle c2 = angle_of_rational(params.at("c2"), "c2");
  const long long r = params.at("r").get<long long>();
  const long long s = params.at("s").get<long long>();
  const dyn::ComponentSpec spec = dyn::ComponentSpec::J_set(
      r, s, gamma, c1, c2, alpha.to_angle(),
      static_cast<long long>(params.at("l-cap").get<std::uint64_t>()));
  const dyn::SkewSystem sys = dyn::SkewSystem::make_affine(alpha, 1, spec.gamma);
  // A point on the component: t = 0 solves both congruences.
  const dyn::TorusPoint start = dyn::TorusPoint::make4(Angle(), spec.c1, Angle(), spec.c2);
  std::vector<std::array<long long, 4>> chars;
  for (const auto& e : params.at("chars"))
    chars.push_back({e[0].get<long long>(), e[1].get<long long>(), e[2].get<long long>(),
                     e[3].get<long long>()});
  experiments::RunOptions opts;
  opts.workers = d.workers;
  opts.rng_seed = params.at("seed").get<std::uint64_t>();
  const auto reps = experiments::component_equidistribution(
      sys, spec, start, chars, uint_list(params.at("checkpoints")), opts);
  deliver_reports(d, "component", params, reps);
}

void run_p1(const json& params, const Delivery& d) {
  const std::string support = params.at("support").get<std::string>();
  harmonic::FourierSeries f;
  if (support == "pow2") {
    std::vector<harmonic::FourierSeries::Coeff> pos;
    for (int k = 1; k <= 10; ++k) pos.emplace_back(1ll << k, 0.25);
    f = harmonic::FourierSeries::real_from_positive(pos);
  } else {
    f = harmonic::FourierSeries::load_file(support, /*real=*/true);
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (const auto& e : params.at("pairs"))
    pairs.emplace_back(e[0].get<std::uint64_t>(), e[1].get<std::uint64_t>());
  experiments::RunOptions opts;
  opts.workers = d.workers;
  opts.rng_seed = params.at("seed").get<std::uint64_t>();
  const auto rows = experiments::p1_experiment(f, parse_cf(params.at("alpha-cf").get<std::string>()).to_angle(),
                                               pairs, params.at("n").get<std::uint64_t>(), opts);
  if (d.format == "csv") {
    std::ostringstream out;
    out << "# skewlab " << kVersion << " p1 " << json(json{{"params", params}}).dump() << "\n";
    experiments::p1_rows_to_csv(rows, out);
    write_text(d, out.str());
    return;
  }
  json doc = document("p1", params);
  doc["rows"] = json::parse(experiments::p1_rows_to_json(rows));
  write_text(d, doc.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

int dispatch(const std::string& command, const json& params, const Delivery& d) {
  try {
    if (command == "sieve")
      run_sieve(params, d);
    else if (command == "cfrac")
      run_cfrac(params, d);
    else if (command == "generic-alpha")
      run_generic_alpha(params, d);
    else if (command == "katok")
      run_katok(params, d);
    else if (command == "correlation")
      run_correlation(params, d);
    else if (command == "sarnak")
      run_sarnak(params, d);
    else if (command == "kbsz")
      run_kbsz(params, d);
    else if (command == "haar")
      run_haar(params, d);
    else if (command == "component")
      run_component(params, d);
    else if (command == "p1")
      run_p1(params, d);
    else
      config_error("unknown command " + command);
  } catch (const std::exception& e) {
    std::cerr << "skewlab: " << command << ": " << e.what() << "\n";
    return 3;
  }
  return 0;
}

json load_config(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Map the byte offset to a line number for the message.
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min(text.size(), e.byte); ++i)
      if (text[i] == '\n') ++line;
    config_error(path + ":" + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewlab: experiments on Mobius disjointness for skew products"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  std::string config_path;
  Delivery d;
  d.format = "json";
  app.add_option("--config", config_path, "JSON run configuration (flags override)");
  app.add_option("--workers", d.workers, "worker thread cap (0: LAB_WORKERS or all cores)");
  app.add_option("--out", d.out, "output path ('-' for stdout)");
  app.add_option("--format", d.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // Raw flag values per command; conversion happens after the merge.
  std::map<std::string, std::map<std::string, std::string>> raw;
  for (const auto& [cmd, fields] : schema()) {
    CLI::App* sub = app.add_subcommand(cmd);
    for (const Param& p : fields)
      sub->add_option("--" + std::string(p.name), raw[cmd][p.name], p.help);
    sub->add_option("--out", d.out, "output path ('-' for stdout)");
    sub->add_option("--format", d.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command;
  json params = json::object();
  if (!config_path.empty()) {
    const json cfg = load_config(config_path);
    if (!cfg.is_object() || !cfg.contains("command"))
      config_error(config_path + ": expected an object with a 'command' field");
    command = cfg.at("command").get<std::string>();
    if (cfg.contains("params")) {
      if (!cfg.at("params").is_object()) config_error("params: must be an object");
      params = cfg.at("params");
    }
    for (const auto& [key, value] : cfg.items())
      if (key != "command" && key != "params" && key != "schema")
        config_error("unknown config key '" + key + "'");
  }
  if (app.get_subcommands().size() == 1) {
    const std::string sub = app.get_subcommands()[0]->get_name();
    if (!command.empty() && command != sub)
      config_error("config command '" + command + "' conflicts with subcommand '" + sub + "'");
    command = sub;
  }
  if (command.empty()) {
    std::cerr << app.help();
    return 2;
  }
  const auto it = schema().find(command);
  if (it == schema().end()) config_error("unknown command " + command);

  // Merge: config values, then flags; fill defaults; reject unknowns.
  json merged = json::object();
  for (const Param& p : it->second) {
    if (params.contains(p.name)) merged[p.name] = canonicalize_json(p, params.at(p.name));
    const auto rawit = raw[command].find(p.name);
    if (rawit != raw[command].end() && !rawit->second.empty())
      merged[p.name] = canonicalize(p, rawit->second);
    if (!merged.contains(p.name)) {
      if (p.fallback)
        merged[p.name] = canonicalize(p, p.fallback);
      else if (p.required)
        config_error(command + ": missing required parameter '" + std::string(p.name) + "'");
    }
  }
  for (const auto& [key, value] : params.items()) {
    const bool known = std::any_of(it->second.begin(), it->second.end(),
                                   [&](const Param& p) { return key == p.name; });
    if (!known) config_error(command + ": unknown parameter '" + key + "'");
  }

  return dispatch(command, merged, d);
}
