#ifndef HYP2_IO_HPP
#define HYP2_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyp2/classify.hpp"

namespace hyp2::io {

using json = nlohmann::json;

inline constexpr const char* kActionConvention =
    "F(v) = F * v^(2), V(v) = V * v^(1/2), twists applied coordinatewise to v; "
    "column j holds the image of basis vector j; entries are GF(2^n) bitmasks";

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

namespace detail {

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::uint64_t as_uint(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw ParseError(std::string(what) + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

inline std::vector<Fe> elems(const FieldCtx& k, const json& arr, const char* what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<Fe> out;
  for (const auto& x : arr) out.push_back(k.elem(as_uint(x, what)));
  return out;
}

inline json to_ints(std::span<const Fe> v) {
  json a = json::array();
  for (Fe x : v) a.push_back(x.bits);
  return a;
}

inline json rows(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_ints(m.row(i)));
  return out;
}

inline Matrix matrix_from(const FieldCtx& k, const json& rows_json, std::size_t dim, const char* what) {
  if (!rows_json.is_array() || rows_json.size() != dim)
    throw ParseError(std::string(what) + " must have " + std::to_string(dim) + " rows");
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto r = elems(k, rows_json[i], what);
    if (r.size() != dim) throw ParseError(std::string(what) + " rows must have " + std::to_string(dim) + " entries");
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = r[j];
  }
  return m;
}

}  // namespace detail

/// {"n": int, "modulus": int}; the modulus is optional (default table).
inline FieldCtx field_from_json(const json& j) {
  const auto n = static_cast<unsigned>(detail::as_uint(detail::require(j, "n"), "n"));
  if (j.contains("modulus")) return {n, static_cast<std::uint32_t>(detail::as_uint(j.at("modulus"), "modulus"))};
  return FieldCtx(n);
}

/// Curve file: {"field": {...}, "f": {"num": [...], "den": [...]}} or
/// {"field": {...}, "branches": [{"alpha": a, "coeffs": [...]}]}. An f-form
/// input is normalized; a branch-form input must already be in standard form.
struct CurveInput {
  FieldCtx ctx;
  std::optional<RationalFn> f;
  std::optional<CurveData> branches;
};

inline CurveInput curve_input_from_json(const json& j) {
  CurveInput in{field_from_json(detail::require(j, "field")), std::nullopt, std::nullopt};
  const bool has_f = j.contains("f");
  const bool has_b = j.contains("branches");
  if (has_f == has_b) throw ParseError("curve file needs exactly one of \"f\" or \"branches\"");
  if (has_f) {
    const json& f = j.at("f");
    Poly num(detail::elems(in.ctx, detail::require(f, "num"), "num"));
    Poly den(detail::elems(in.ctx, detail::require(f, "den"), "den"));
    in.f = RationalFn(in.ctx, std::move(num), std::move(den));
  } else {
    std::vector<BranchDatum> bs;
    const json& arr = j.at("branches");
    if (!arr.is_array()) throw ParseError("\"branches\" must be an array");
    for (const auto& b : arr)
      bs.push_back({in.ctx.elem(detail::as_uint(detail::require(b, "alpha"), "alpha")),
                    detail::elems(in.ctx, detail::require(b, "coeffs"), "coeffs")});
    in.branches = CurveData(in.ctx, std::move(bs));
  }
  return in;
}

inline CurveData curve_from_json(const json& j, NormalizeOptions opts = {}) {
  CurveInput in = curve_input_from_json(j);
  if (in.branches) return *in.branches;
  return normalize(in.ctx, *in.f, opts);
}

inline json to_json(const CurveData& cd) {
  json bs = json::array();
  for (const auto& b : cd.branches()) bs.push_back({{"alpha", b.alpha.bits}, {"coeffs", detail::to_ints(b.coeffs)}});
  return {{"field", {{"n", cd.ctx().degree()}, {"modulus", cd.ctx().modulus()}}}, {"branches", bs}};
}

inline json to_json(const SemilinearModule& m) {
  return {{"convention", kActionConvention},
          {"n", m.ctx().degree()},
          {"modulus", m.ctx().modulus()},
          {"dim", m.dim()},
          {"F", detail::rows(m.f_mat())},
          {"V", detail::rows(m.v_mat())}};
}

/// Module plus a manifest mapping basis index to (kind, alpha, j).
inline json to_json(const DeRhamModule& dr) {
  json out = to_json(dr.module);
  json labels = json::array();
  for (std::size_t i = 0; i < dr.labels.size(); ++i) {
    const auto& l = dr.labels[i];
    labels.push_back({{"index", i}, {"kind", to_string(l.kind)}, {"alpha", l.alpha.bits}, {"j", l.j}});
  }
  out["labels"] = labels;
  out["base_point"] = dr.base_point.bits;
  return out;
}

inline SemilinearModule module_from_json(const json& j) {
  const FieldCtx k = field_from_json(j);
  const auto dim = static_cast<std::size_t>(detail::as_uint(detail::require(j, "dim"), "dim"));
  return {k, detail::matrix_from(k, detail::require(j, "F"), dim, "F"),
          detail::matrix_from(k, detail::require(j, "V"), dim, "V")};
}

inline json to_json(const EOType& e) { return e.nu; }

inline json to_json(const Decomposition& d) {
  return {{"r", d.r}, {"c", d.c_multiset}, {"text", to_string(d)}};
}

/// {stratum, decomposition, eo_type, a, r, g, verified} plus the individual
/// cross-checks.
inline json to_json(const VerifyReport& rep) {
  return {{"stratum", rep.inv.d_multiset},
          {"decomposition", to_json(rep.dec)},
          {"eo_type", to_json(rep.eo_engine)},
          {"eo_type_closed_form", to_json(rep.eo_closed)},
          {"a", rep.inv.a},
          {"a_engine", rep.a_engine},
          {"a_closed_form", rep.a_closed},
          {"r", rep.inv.r},
          {"p_rank_engine", rep.p_rank_engine},
          {"g", rep.inv.g},
          {"bt1", rep.bt1_ok},
          {"verified", rep.verified()}};
}

inline json to_json(const Stratum& s) {
  json out = {{"stratum", s.d_multiset}, {"decomposition", to_json(s.dec)}, {"eo_type", to_json(s.eo)},
              {"a", s.a},           {"r", s.r},                        {"g", s.g}};
  out["verified"] = s.verified ? json(*s.verified) : json(nullptr);
  return out;
}

}  // namespace hyp2::io

#endif  // HYP2_IO_HPP
