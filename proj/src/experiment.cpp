#include "goldman/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "goldman/bounds.hpp"
#include "goldman/decompose.hpp"
#include "goldman/geodesics.hpp"

namespace goldman {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigParse, what); }

double decimal(const nlohmann::json& j, const std::string& key) {
  if (!j.is_string()) config_error(key + " must be a decimal string");
  const std::string& s = j.get_ref<const std::string&>();
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v))
    config_error(key + ": '" + s + "' is not a decimal number");
  return v;
}

long integer(const nlohmann::json& j, const std::string& key, long lo, long hi) {
  long v = 0;
  if (j.is_number_integer()) {
    v = j.get<long>();
  } else if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) config_error(key + ": '" + s + "' is not an integer");
  } else {
    config_error(key + " must be an integer");
  }
  if (v < lo || v > hi) config_error(key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

const nlohmann::json& member(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) config_error(std::string("missing field ") + key);
  return j.at(key);
}

std::string number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Structure {
  PantsParams p;
  Hexagon hex;
  HolonomyTriple h;

  explicit Structure(const PantsParams& params) : p(params), hex(build_hexagon(p)), h(solve_holonomy(p, hex)) {}
};

ResultRow row_at(const ExperimentConfig& cfg, double value, double T) {
  ResultRow row;
  row.sweep_value = value;
  row.shortest_len = row.entropy_est = row.entropy_upper = NAN;
  row.K = row.L = NAN;
  try {
    const Structure st(cfg.params_at(value));
    const BoundInputs in = BoundInputs::from_params(st.p);
    row.K = K_func(in);
    row.L = L_func(in);
    const ClassRecord best = shortest_typical(st.h, cfg.max_word_len);
    row.shortest_len = best.length;
    row.shortest_word = best.word.str();
    const GeodesicCount count = count_geodesics_report(st.h, T, cfg.max_word_len);
    row.R_T = count.count;
    if (!count.certified) row.flags.push_back("cutoff_uncertified");
    if (count.count > 0)
      row.entropy_est = entropy_from_count(count.count, T);
    else
      row.flags.push_back("no_geodesics_below_T");
    try {
      row.entropy_upper = entropy_upper(T, row.K, row.L, 0, 3);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PreconditionViolated) throw;
      row.flags.push_back("upper_precondition");
      if (T >= row.K) row.entropy_upper = entropy_upper_unchecked(T, row.K, row.L, 0, 3);
    }
  } catch (const Error& e) {
    row.flags.push_back(std::string("error:") + to_string(e.code()));
  }
  return row;
}

// Verification suites.

SuiteResult tolerance_suite(std::string name, double err, double tol, std::string detail = {}) {
  SuiteResult r;
  r.name = std::move(name);
  r.max_error = err;
  r.tolerance = tol;
  r.pass = err <= tol;
  r.detail = std::move(detail);
  return r;
}

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }

double proportionality(const Vec3& x, const Vec3& y) { return x.cross(y).norm() / (x.norm() * y.norm()); }

SuiteResult suite_catalogue(const Structure& st) {
  const CrossRatioCatalogue cat = catalogue(st.p);
  double err = 0.0;
  for (const auto& e : CrossRatioCatalogue::entries())
    err = std::max(err, rel(geometric_cross_ratio(st.hex, e.x, e.y), cat.*(e.field)));
  return tolerance_suite("catalogue", err, 1e-9, "15 formula cross ratios against the hexagon");
}

SuiteResult suite_holonomy(const Structure& st) {
  const Mat3 A = st.h.A.matrix(), B = st.h.B.matrix(), C = st.h.C.matrix();
  double err = (C * B * A - Mat3::Identity()).cwiseAbs().rowwise().sum().maxCoeff();
  const std::array<const UnimodularMatrix*, 3> gens = {&st.h.A, &st.h.B, &st.h.C};
  for (int i = 0; i < 3; ++i) {
    const auto ev = spectral(*gens[static_cast<std::size_t>(i)]).eigenvalues;
    const auto want = st.p.R()[static_cast<std::size_t>(i)].eigenvalues();
    for (int k = 0; k < 3; ++k) err = std::max(err, rel(ev[k], want[k]));
  }
  err = std::max({err, proportionality(B * st.hex[Vertex::a], st.hex[Vertex::d]),
                  proportionality(A * st.hex[Vertex::c], st.hex[Vertex::f]),
                  proportionality(C * st.hex[Vertex::b], st.hex[Vertex::e])});
  return tolerance_suite("holonomy", err, 1e-9, "CBA = I, spectra, vertex maps");
}

SuiteResult suite_reparameterization(const Structure& st) {
  const double s = st.p.s(), r = st.p.r();
  const RecoveredSR rec = recover_sr(st.p.R(), st.hex);
  double err = std::max({rel(rec.s_from_ad, s), rel(rec.s_from_be, s), rel(rec.s_from_cf, s), rel(rec.r_ae_cf, r),
                         rel(rec.r_cd_be, r), rel(rec.r_bf_ad, r)});
  const PantsParams q = rotate_labels(st.p);
  const RecoveredSR rot = recover_sr(q.R(), relabel_hexagon(st.hex));
  err = std::max({err, rel(rot.s_from_ad, s), rel(rot.s_from_be, s), rel(rot.s_from_cf, s), rel(rot.r_ae_cf, r),
                  rel(rot.r_cd_be, r), rel(rot.r_bf_ad, r)});
  return tolerance_suite("reparameterization", err, 1e-9, "s and r recovered, also after relabelling");
}

SuiteResult suite_translation(const Structure& st, int hull_depth) {
  const OrbitHull hull = orbit_hull(st.h, st.hex, hull_depth);
  double err = 0.0;
  int n = 0;
  for (const CyclicWord& w : enumerate_classes(std::min(3, hull_depth))) {
    const TranslationCheck c = translation_check(st.h, hull, w);
    err = std::max(err, std::abs(c.hd_measured / c.eig_length - 0.5));
    ++n;
  }
  return tolerance_suite("translation", err, 1e-6, std::to_string(n) + " classes, Hilbert displacement / log ratio = 1/2");
}

SuiteResult suite_decomposition(const Structure& st, int depth) {
  int bad = 0, n = 0;
  for (const CyclicWord& w : enumerate_classes(5)) {
    if (!w.typical()) continue;
    ++n;
    const GeodesicDecomposition d = decompose_geodesic_retry(st.h, st.hex, w, depth);
    for (const LoopingSegment& l : d.looping)
      if (l.f_count - 2 > 2 * l.self_intersections || 2 * l.self_intersections > l.f_count) ++bad;
  }
  return tolerance_suite("decomposition", bad, 0.0, std::to_string(n) + " typical classes, looping bounds");
}

SuiteResult suite_enumeration() {
  // Brute force: all reduced cyclic strings, canonicalized.
  int bad = 0;
  std::vector<Word> layer{{}};
  std::set<Word> seen;
  std::size_t expect = 0;
  for (int n = 1; n <= 6; ++n) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (Letter x : {Letter::A, Letter::Ai, Letter::B, Letter::Bi}) {
        if (!w.empty() && cancels(w.back(), x)) continue;
        Word y = w;
        y.push_back(x);
        if (!(y.size() > 1 && cancels(y.back(), y.front()))) seen.insert(cyclic_reduce(y));
        next.push_back(std::move(y));
      }
    layer = std::move(next);
    expect = seen.size();
    if (enumerate_classes(n).size() != expect) ++bad;
  }
  return tolerance_suite("enumeration", bad, 0.0, std::to_string(expect) + " classes up to length 6");
}

SuiteResult suite_reduced_forms(const Structure& st) {
  const CrossRatioCatalogue cat = catalogue(st.p);
  const auto [X, Y] = XY_minima(cat);
  const std::array<double, 3> rho = {cat.ad, cat.be, cat.cf};
  const auto [x, y] = k_reduced(rho, st.p.r());
  const double err = std::max({rel(x, X), rel(y, Y), rel(xy_factorized(rho, st.p.r()), X * Y)});
  return tolerance_suite("reduced_forms", err, 1e-9, "closed-form X, Y against the catalogue");
}

SuiteResult suite_busemann(std::uint64_t seed) {
  // Hilbert ball of radius 1 in the Klein model has Euclidean radius tanh 1.
  const int n = 2048;
  const ConvexDomain disk = klein_disk(n);
  std::vector<Vec2> ball;
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * M_PI * i / n;
    ball.emplace_back(std::tanh(1.0) * std::cos(th), std::tanh(1.0) * std::sin(th));
  }
  const Estimate e = busemann_area(disk, ball, 20000, seed);
  const double target = 2.0 * M_PI * (std::cosh(1.0) - 1.0);
  return tolerance_suite("busemann", std::abs(e.value - target), 3.0 * e.stderr_,
                         "Klein disk ball of radius 1 against 2 pi (cosh 1 - 1), 3 standard errors");
}

SuiteResult suite_length_bound(const Structure& st, int depth) {
  const BoundInputs in = BoundInputs::from_params(st.p);
  const double K = K_func(in), L = L_func(in);
  const double top = *std::max_element(in.boundary_lengths.begin(), in.boundary_lengths.end());
  SuiteResult r;
  r.name = "length_bound";
  if (!(K > top)) {
    r.pass = true;
    r.skipped = true;
    r.detail = "K = " + number(K) + " does not exceed the boundary length " + number(top);
    return r;
  }
  const GeneratorMatrices g = GeneratorMatrices::from(st.h);
  double worst = 0.0;
  for (const CyclicWord& w : enumerate_classes(6)) {
    if (!w.typical()) continue;
    const GeodesicDecomposition d = decompose_geodesic_retry(st.h, st.hex, w, depth);
    worst = std::max(worst, B_func(d.m, d.hash_sum(), K, L) - class_length(g, w.letters()));
  }
  return tolerance_suite("length_bound", worst, 0.0, "max of B - length over typical classes up to length 6");
}

json suites_json(const std::vector<SuiteResult>& suites) {
  json arr = json::array();
  for (const SuiteResult& s : suites)
    arr.push_back({{"suite", s.name},
                   {"pass", s.pass},
                   {"skipped", s.skipped},
                   {"max_error", s.max_error},
                   {"tolerance", s.tolerance},
                   {"detail", s.detail}});
  return arr;
}

void emit(const CommandOptions& opt, std::ostream& out, const std::string& payload) {
  if (!opt.out_path) {
    out << payload;
    return;
  }
  std::ofstream f(*opt.out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ConfigParse, "cannot write " + *opt.out_path);
  f << payload;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConfigParse:
    case ErrorCode::InvalidParameters:
    case ErrorCode::ParseError:
    case ErrorCode::TrivialWord:
    case ErrorCode::NotTypical:
      return kExitConfig;
    default:
      return kExitNumeric;
  }
}

}  // namespace

PantsParams ExperimentConfig::params() const {
  return chart == InternalChart::ST ? PantsParams::from_st(R, s, second) : PantsParams::from_sr(R, s, second);
}

PantsParams ExperimentConfig::params_at(double v) const {
  if (!sweep) return params();
  if (sweep->axis == SweepAxis::R) return PantsParams::from_sr(R, s, v);
  return chart == InternalChart::ST ? PantsParams::from_st(R, v, second) : PantsParams::from_sr(R, v, second);
}

ExperimentConfig parse_config(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    config_error(e.what());
  }
  try {
    const nlohmann::json& b = member(j, "boundary");
    if (!b.is_array() || b.size() != 3) config_error("boundary must list three {lambda, tau} objects");
    auto inv = [&](std::size_t i) {
      const std::string key = "boundary[" + std::to_string(i) + "]";
      return BoundaryInvariant(decimal(member(b[i], "lambda"), key + ".lambda"), decimal(member(b[i], "tau"), key + ".tau"));
    };
    const BoundaryTriple R = {inv(0), inv(1), inv(2)};
    const double s = decimal(member(j, "s"), "s");
    const bool has_t = j.contains("t"), has_r = j.contains("r");
    if (has_t == has_r) config_error("give exactly one of t and r");
    ExperimentConfig cfg{.R = R,
                         .s = s,
                         .second = has_t ? decimal(j["t"], "t") : decimal(j["r"], "r"),
                         .chart = has_t ? InternalChart::ST : InternalChart::SR};
    (void)cfg.params();

    if (j.contains("sweep")) {
      const nlohmann::json& sw = j["sweep"];
      const nlohmann::json& axis = member(sw, "axis");
      if (axis != "s" && axis != "r") config_error("sweep.axis must be s or r");
      const nlohmann::json& vals = member(sw, "values");
      if (!vals.is_array() || vals.empty()) config_error("sweep.values must be a nonempty list");
      SweepSpec spec{axis == "s" ? SweepAxis::S : SweepAxis::R, {}};
      for (std::size_t i = 0; i < vals.size(); ++i) {
        const double v = decimal(vals[i], "sweep.values[" + std::to_string(i) + "]");
        if (!(v > 0.0)) config_error("sweep values must be positive");
        if (!spec.values.empty() && !(v > spec.values.back())) config_error("sweep values must be strictly ascending");
        spec.values.push_back(v);
      }
      cfg.sweep = std::move(spec);
      for (double v : cfg.sweep->values) (void)cfg.params_at(v);
    }
    if (j.contains("enumeration")) {
      const nlohmann::json& e = j["enumeration"];
      if (e.contains("max_word_len")) cfg.max_word_len = static_cast<int>(integer(e["max_word_len"], "max_word_len", 2, 24));
      if (e.contains("T")) {
        cfg.T = decimal(e["T"], "enumeration.T");
        if (!(*cfg.T > 0.0)) config_error("enumeration.T must be positive");
      }
    }
    if (j.contains("trace")) cfg.trace_depth = static_cast<int>(integer(member(j["trace"], "depth"), "trace.depth", 1, 64));
    if (j.contains("hull"))
      cfg.hull_depth = static_cast<int>(integer(member(j["hull"], "depth"), "hull.depth", 1, kDefaultMaxHullDepth));
    if (j.contains("seed")) cfg.seed = static_cast<std::uint64_t>(integer(j["seed"], "seed", 0, std::numeric_limits<long>::max()));
    return cfg;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigParse) throw;
    config_error(e.what());
  } catch (const nlohmann::json::exception& e) {
    config_error(e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ConfigParse, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

double sweep_horizon(const ExperimentConfig& cfg) {
  if (cfg.T) return *cfg.T;
  const Structure st(cfg.sweep ? cfg.params_at(cfg.sweep->values.front()) : cfg.params());
  return 3.0 * shortest_typical(st.h, cfg.max_word_len).length;
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, unsigned workers) {
  if (!cfg.sweep) throw Error(ErrorCode::ConfigParse, "config has no sweep");
  const double T = sweep_horizon(cfg);
  const std::vector<double>& vals = cfg.sweep->values;
  std::vector<ResultRow> rows(vals.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(vals.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < vals.size();) rows[i] = row_at(cfg, vals[i], T);
    });
  for (std::thread& t : pool) t.join();
  return rows;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out = "# goldman-lab v1\nsweep_value,K,L,shortest_len,shortest_word,R_T,entropy_est,entropy_upper,flags\n";
  for (const ResultRow& r : rows) {
    std::string flags;
    for (const std::string& f : r.flags) flags += (flags.empty() ? "" : "|") + f;
    out += number(r.sweep_value) + ',' + number(r.K) + ',' + number(r.L) + ',' + number(r.shortest_len) + ',' +
           r.shortest_word + ',' + std::to_string(r.R_T) + ',' + number(r.entropy_est) + ',' +
           number(r.entropy_upper) + ',' + (flags.empty() ? "ok" : flags) + '\n';
  }
  return out;
}

std::vector<SuiteResult> run_verify(const ExperimentConfig& cfg) {
  const Structure st(cfg.params());
  std::vector<SuiteResult> out;
  out.push_back(suite_catalogue(st));
  out.push_back(suite_holonomy(st));
  out.push_back(suite_reparameterization(st));
  out.push_back(suite_translation(st, cfg.hull_depth));
  out.push_back(suite_decomposition(st, cfg.trace_depth));
  out.push_back(suite_enumeration());
  out.push_back(suite_reduced_forms(st));
  out.push_back(suite_busemann(cfg.seed));
  out.push_back(suite_length_bound(st, cfg.trace_depth));
  return out;
}

int run_command(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const ExperimentConfig cfg = load_config(opt.config_path);
    if (opt.command == "verify") {
      const std::vector<SuiteResult> suites = run_verify(cfg);
      bool ok = true;
      for (const SuiteResult& s : suites) {
        ok = ok && s.pass;
        err << (s.skipped ? "SKIP " : s.pass ? "PASS " : "FAIL ") << s.name << " max_error=" << number(s.max_error)
            << " tol=" << number(s.tolerance) << "  " << s.detail << '\n';
      }
      emit(opt, out, json{{"pass", ok}, {"suites", suites_json(suites)}}.dump(2) + "\n");
      return ok ? kExitOk : kExitVerify;
    }
    if (opt.command == "sweep") {
      if (!cfg.sweep) throw Error(ErrorCode::ConfigParse, "sweep command needs a sweep section");
      emit(opt, out, format_csv(run_sweep(cfg)));
      return kExitOk;
    }

    const Structure st(cfg.params());
    if (opt.command == "shortest") {
      const ClassRecord best = shortest_typical(st.h, cfg.max_word_len);
      emit(opt, out,
           json{{"word", best.word.str()},
                {"length", best.length},
                {"max_word_len", cfg.max_word_len},
                {"primitive", best.primitive},
                {"upper_bound_only", true}}
                   .dump(2) + "\n");
      return kExitOk;
    }
    if (opt.command == "entropy") {
      const double T = cfg.T ? *cfg.T : 3.0 * shortest_typical(st.h, cfg.max_word_len).length;
      const BoundInputs in = BoundInputs::from_params(st.p);
      const double K = K_func(in), L = L_func(in);
      const GeodesicCount c = count_geodesics_report(st.h, T, cfg.max_word_len);
      json flags = json::array();
      if (!c.certified) flags.push_back("cutoff_uncertified");
      double est = NAN, upper = NAN;
      if (c.count > 0)
        est = entropy_from_count(c.count, T);
      else
        flags.push_back("no_geodesics_below_T");
      try {
        upper = entropy_upper(T, K, L, 0, 3);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PreconditionViolated) throw;
        flags.push_back("upper_precondition");
        if (T >= K) upper = entropy_upper_unchecked(T, K, L, 0, 3);
      }
      emit(opt, out,
           json{{"T", T},
                {"max_word_len", cfg.max_word_len},
                {"R_T", c.count},
                {"certified", c.certified},
                {"required_word_len", c.required_len},
                {"entropy_est", finite_or_null(est)},
                {"entropy_upper", finite_or_null(upper)},
                {"K", K},
                {"L", L},
                {"flags", flags}}
                   .dump(2) + "\n");
      return kExitOk;
    }
    if (opt.command == "decompose") {
      if (!opt.word) throw Error(ErrorCode::ConfigParse, "decompose needs --word");
      const CyclicWord w = CyclicWord::parse(*opt.word);
      const GeodesicDecomposition d = decompose_geodesic_retry(st.h, st.hex, w, cfg.trace_depth);
      const BoundInputs in = BoundInputs::from_params(st.p);
      const double K = K_func(in), L = L_func(in);
      const double top = *std::max_element(in.boundary_lengths.begin(), in.boundary_lengths.end());
      const double len = class_length(st.h, w);
      const double B = B_func(d.m, d.hash_sum(), K, L);
      json segs = json::array();
      for (const LoopingSegment& l : d.looping)
        segs.push_back({{"first_edge", l.first}, {"f_count", l.f_count}, {"self_intersections", l.self_intersections}});
      emit(opt, out,
           json{{"word", w.str()},
                {"m", d.m},
                {"looping", segs},
                {"hash_sum", d.hash_sum()},
                {"K", K},
                {"L", L},
                {"B", B},
                {"class_length", len},
                {"precondition", K > top},
                {"verdict", len >= B},
                {"trace_depth", d.depth}}
                   .dump(2) + "\n");
      return kExitOk;
    }
    err << "unknown command " << opt.command << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace goldman
