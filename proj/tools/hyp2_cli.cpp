// hyp2: 2-torsion invariants of y^2 - y = f(x) in characteristic 2.
//
// Exit status: 0 success, 1 a cross-check failed, 2 bad input.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hyp2/hyp2.hpp"

namespace {

using namespace hyp2;
using io::json;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;

std::string braces(const std::vector<unsigned>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::string summary_line(const VerifyReport& rep) {
  std::ostringstream os;
  os << "g=" << rep.inv.g << " r=" << rep.inv.r << " a=" << rep.inv.a << " EO=" << to_string(rep.eo_engine)
     << " J[2]=" << to_string(rep.dec) << (rep.verified() ? " verified" : " MISMATCH");
  return os.str();
}

// ---------------------------------------------------------------- analyze

struct AnalyzeOpts {
  std::string path;
  std::string inline_curve;
  bool json_out = false;
  bool no_moebius = false;
  bool dump_module = false;
  std::optional<unsigned> field_deg;
  std::optional<std::uint32_t> modulus;
};

int cmd_analyze(const AnalyzeOpts& o) {
  json in;
  if (!o.path.empty() == !o.inline_curve.empty())
    throw ParseError("give exactly one of a curve file or --curve");
  if (!o.path.empty()) {
    in = io::read_json_file(o.path);
  } else {
    try {
      in = json::parse(o.inline_curve);
    } catch (const json::exception& e) {
      throw ParseError(std::string("--curve: ") + e.what());
    }
  }
  if (o.field_deg || o.modulus) {
    if (!in.is_object()) throw ParseError("curve input must be a JSON object");
    json& field = in["field"];
    if (o.field_deg) field["n"] = *o.field_deg;
    if (o.modulus) field["modulus"] = *o.modulus;
    else if (o.field_deg) field.erase("modulus");
  }

  const io::CurveInput ci = io::curve_input_from_json(in);
  std::optional<Fe> moved;
  std::optional<CurveData> cd;
  if (ci.branches) {
    cd = *ci.branches;
  } else {
    NormalizeResult nr = normalize_with_witness(ci.ctx, *ci.f, {.moebius = !o.no_moebius});
    moved = nr.moved_infinity_from;
    cd = std::move(nr.curve);
  }

  const VerifyReport rep = verify_main(*cd);
  if (o.json_out) {
    json out = io::to_json(rep);
    out["curve"] = io::to_json(*cd);
    out["moved_infinity_from"] = moved ? json(moved->bits) : json(nullptr);
    if (o.dump_module) out["module"] = io::to_json(build_drham(*cd));
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << summary_line(rep) << "\n";
    if (moved) std::cout << "infinity moved: x -> " << moved->bits << " + 1/x\n";
    std::cout << "field: GF(2^" << cd->ctx().degree() << ") modulus " << cd->ctx().modulus() << "\n";
    for (const auto& b : cd->branches()) {
      std::cout << "branch alpha=" << b.alpha.bits << " d=" << b.d() << " coeffs=[";
      for (std::size_t i = 0; i < b.coeffs.size(); ++i) std::cout << (i ? "," : "") << b.coeffs[i].bits;
      std::cout << "]\n";
    }
    std::cout << "d-multiset: " << braces(rep.inv.d_multiset) << "\n"
              << "EO (de Rham): " << to_string(rep.eo_engine) << "\n"
              << "EO (closed form): " << to_string(rep.eo_closed) << "\n"
              << "a: formula " << rep.inv.a << ", de Rham " << rep.a_engine << ", g - dim V^2 " << rep.a_engine_v2
              << ", closed form " << rep.a_closed << "\n"
              << "2-rank: #B-1 " << rep.inv.r << ", de Rham " << rep.p_rank_engine << ", closed form "
              << rep.p_rank_closed << "\n"
              << "BT_1: " << (rep.bt1_ok ? "ok" : "FAILED") << "\n";
    if (o.dump_module) std::cout << io::to_json(build_drham(*cd)).dump(2) << "\n";
  }
  return rep.verified() ? kOk : kMismatch;
}

// ---------------------------------------------------------------- gc-info

int cmd_gc_info(const std::vector<unsigned>& cs, bool json_out) {
  for (unsigned c : cs)
    if (c == 0) throw InvalidCurve("gc-info needs c >= 1");
  json all = json::array();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const unsigned c = cs[i];
    const auto rels = gc_relations(c);
    const EOType eo = eo_type(build_gc(c).module);
    if (json_out) {
      json rs = json::array();
      for (const auto& r : rels) rs.push_back(to_string(r));
      all.push_back({{"c", c},
                     {"generators", generators_text(c)},
                     {"relations", rs},
                     {"summands", gc_summands(c)},
                     {"eo_type", io::to_json(eo)}});
      continue;
    }
    if (i) std::cout << "\n";
    std::cout << "c=" << c << "\n"
              << "generators: " << generators_text(c) << "\n"
              << "relations: " << relations_text(rels) << "\n"
              << "summands: " << gc_summands(c) << "\n"
              << "EO: " << to_string(eo) << "\n";
  }
  if (json_out) std::cout << all.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- enumerate

int cmd_enumerate(unsigned g, std::optional<std::uint64_t> verify_seed, bool json_out) {
  const auto strata = enumerate_strata(g, verify_seed);
  const std::uint64_t expected = partition_count(g + 1);
  bool all_ok = strata.size() == expected;
  for (const auto& s : strata) all_ok = all_ok && s.verified.value_or(true);

  if (json_out) {
    json rows = json::array();
    for (const auto& s : strata) rows.push_back(io::to_json(s));
    std::cout << json{{"g", g}, {"strata", rows}, {"count", strata.size()}, {"partitions", expected}}.dump(2) << "\n";
    return all_ok ? kOk : kMismatch;
  }

  std::vector<std::vector<std::string>> table{{"d-multiset", "J[2]", "EO", "a", "r"}};
  if (verify_seed) table.front().emplace_back("verified");
  for (const auto& s : strata) {
    table.push_back({braces(s.d_multiset), to_string(s.dec), to_string(s.eo), std::to_string(s.a), std::to_string(s.r)});
    if (s.verified) table.back().emplace_back(*s.verified ? "yes" : "NO");
  }
  // Width in code points, so the UTF-8 in the decomposition column lines up.
  auto width = [](const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char ch) { return (ch & 0xC0) != 0x80; }));
  };
  std::vector<std::size_t> w(table.front().size(), 0);
  for (const auto& row : table)
    for (std::size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], width(row[i]));
  for (const auto& row : table) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(w[i] - width(row[i]) + 2, ' ');
    }
    std::cout << line << "\n";
  }
  std::cout << "strata: " << strata.size() << ", p(" << g + 1 << ") = " << expected
            << (strata.size() == expected ? " (agree)" : " (DISAGREE)") << "\n";
  return all_ok ? kOk : kMismatch;
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
  unsigned trials = 0;
  unsigned dmax = 9;
  unsigned gmax = 12;
  unsigned field_deg = 4;
  std::optional<std::uint32_t> modulus;
  std::uint64_t seed = 1;
  std::vector<unsigned> fixed_d;
  unsigned jobs = 0;
  bool json_out = false;
};

struct TrialResult {
  std::vector<unsigned> ds;
  VerifyReport rep;
  std::string error;
};

// Trial i draws its ramification data and curve from its own generator,
// seeded by (seed, i), so results do not depend on scheduling.
TrialResult run_trial(const VerifyOpts& o, const FieldCtx& k, unsigned i) {
  std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32), i};
  std::mt19937_64 rng(seq);
  TrialResult out;
  if (!o.fixed_d.empty()) {
    out.ds = o.fixed_d;
  } else {
    const std::size_t max_points = std::min<std::size_t>(k.order(), o.gmax + 1);
    std::uniform_int_distribution<std::size_t> count(1, max_points);
    std::uniform_int_distribution<unsigned> half(0, (o.dmax - 1) / 2);
    for (;;) {
      out.ds.assign(count(rng), 0);
      for (auto& d : out.ds) d = 2 * half(rng) + 1;
      const unsigned g = invariants_from_d(out.ds).g;
      if (g >= 1 && g <= o.gmax) break;
    }
  }
  try {
    out.rep = verify_main(random_curve(k, out.ds, rng()));
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

int cmd_verify(const VerifyOpts& o) {
  if (o.trials == 0) throw InvalidCurve("--random must be positive");
  if (o.dmax == 0) throw InvalidCurve("--dmax must be positive");
  if (o.gmax == 0) throw InvalidCurve("--gmax must be positive");
  const FieldCtx k = o.modulus ? FieldCtx(o.field_deg, *o.modulus) : FieldCtx(o.field_deg);
  if (!o.fixed_d.empty()) {
    if (o.fixed_d.size() > k.order()) throw FieldTooSmall("too many branch points for the field");
    if (invariants_from_d(o.fixed_d).g == 0) throw InvalidCurve("--fixed-d gives genus 0");
  }

  std::vector<TrialResult> results(o.trials);
  std::atomic<unsigned> next{0};
  const unsigned jobs = std::max(1U, std::min(o.trials, o.jobs ? o.jobs : std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (unsigned i = next++; i < o.trials; i = next++) results[i] = run_trial(o, k, i);
    });
  for (auto& th : pool) th.join();

  unsigned passed = 0;
  std::set<EOType> eos;
  json rows = json::array();
  for (unsigned i = 0; i < o.trials; ++i) {
    const TrialResult& r = results[i];
    const bool ok = r.error.empty() && r.rep.verified();
    passed += ok;
    if (r.error.empty()) eos.insert(r.rep.eo_engine);
    if (o.json_out) {
      json row = r.error.empty() ? io::to_json(r.rep) : json{{"stratum", r.ds}, {"error", r.error}};
      row["trial"] = i;
      rows.push_back(row);
    } else if (r.error.empty()) {
      std::cout << "trial " << i << ": d=" << braces(r.rep.inv.d_multiset) << " " << summary_line(r.rep) << "\n";
    } else {
      std::cout << "trial " << i << ": d=" << braces(r.ds) << " ERROR " << r.error << "\n";
    }
  }
  const bool fixed_ok = o.fixed_d.empty() || eos.size() == 1;
  if (o.json_out) {
    json out{{"trials", rows}, {"passed", passed}, {"total", o.trials}};
    if (!o.fixed_d.empty()) out["distinct_eo_types"] = eos.size();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "passed " << passed << "/" << o.trials << "\n";
    if (!o.fixed_d.empty())
      std::cout << "distinct EO types for d=" << braces(o.fixed_d) << ": " << eos.size() << "\n";
  }
  return passed == o.trials && fixed_ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-torsion invariants of hyperelliptic curves y^2 - y = f(x) over GF(2^n)"};
  app.require_subcommand(1);
  bool json_out = false;
  app.add_flag("--json", json_out, "JSON output");

  AnalyzeOpts ao;
  auto* analyze = app.add_subcommand("analyze", "invariants of one curve, de Rham vs closed form");
  analyze->add_option("file", ao.path, "curve file (JSON)");
  analyze->add_option("--curve", ao.inline_curve, "curve given inline as JSON");
  analyze->add_flag("--json", ao.json_out, "JSON report");
  analyze->add_flag("--no-moebius", ao.no_moebius, "reject a pole at infinity instead of moving it");
  analyze->add_flag("--dump-module", ao.dump_module, "print the de Rham module with its basis labels");
  analyze->add_option("--field-deg", ao.field_deg, "override the extension degree n");
  analyze->add_option("--modulus", ao.modulus, "override the field modulus (integer bitmask)");

  std::vector<unsigned> cs;
  bool gc_json = false;
  auto* gc = app.add_subcommand("gc-info", "relations, summands and EO type of G_c");
  gc->add_option("c", cs, "one or more c >= 1")->required();
  gc->add_flag("--json", gc_json, "JSON output");

  unsigned genus = 0;
  std::optional<std::uint64_t> enum_seed;
  bool enum_verify = false;
  bool enum_json = false;
  auto* enumerate = app.add_subcommand("enumerate", "all strata of a given genus");
  enumerate->add_option("g", genus, "genus >= 1")->required();
  enumerate->add_flag("--verify", enum_verify, "realize every stratum by a random curve and verify it");
  enumerate->add_option("--seed", enum_seed, "seed for --verify (default 1)");
  enumerate->add_flag("--json", enum_json, "JSON output");

  VerifyOpts vo;
  std::string fixed_d;
  auto* verify = app.add_subcommand("verify", "random curves through the full cross-check");
  verify->add_option("--random", vo.trials, "number of trials")->required();
  verify->add_option("--dmax", vo.dmax, "largest ramification invariant d")->capture_default_str();
  verify->add_option("--gmax", vo.gmax, "largest genus")->capture_default_str();
  verify->add_option("--field-deg", vo.field_deg, "extension degree n")->capture_default_str();
  verify->add_option("--modulus", vo.modulus, "field modulus (integer bitmask)");
  verify->add_option("--seed", vo.seed, "seed")->capture_default_str();
  verify->add_option("--fixed-d", fixed_d, "fixed d-multiset, e.g. 5,3,1 (coefficients vary)");
  verify->add_option("--jobs", vo.jobs, "worker threads (default: all cores)");
  verify->add_flag("--json", vo.json_out, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*analyze) {
      ao.json_out = ao.json_out || json_out;
      return cmd_analyze(ao);
    }
    if (*gc) return cmd_gc_info(cs, gc_json || json_out);
    if (*enumerate) {
      if (genus == 0) throw InvalidCurve("genus must be >= 1");
      return cmd_enumerate(genus, enum_verify ? std::optional(enum_seed.value_or(1)) : std::nullopt,
                           enum_json || json_out);
    }
    if (*verify) {
      vo.json_out = vo.json_out || json_out;
      if (!fixed_d.empty()) {
        std::stringstream ss(fixed_d);
        for (std::string tok; std::getline(ss, tok, ',');) {
          try {
            std::size_t used = 0;
            const unsigned long d = std::stoul(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            vo.fixed_d.push_back(static_cast<unsigned>(d));
          } catch (const std::logic_error&) {
            throw ParseError("--fixed-d: '" + tok + "' is not a number");
          }
        }
      }
      return cmd_verify(vo);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
