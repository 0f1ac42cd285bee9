#ifndef HYP2_CLASSIFY_HPP
#define HYP2_CLASSIFY_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hyp2/curve.hpp"
#include "hyp2/drham.hpp"
#include "hyp2/gc.hpp"

namespace hyp2 {

/// J[2] = (Z/2 + mu_2)^r + sum of G_c over c_multiset. c = 0 factors are
/// trivial and never stored.
struct Decomposition {
  unsigned r = 0;
  std::vector<unsigned> c_multiset;  // descending, entries >= 1

  [[nodiscard]] unsigned genus() const {
    return r + std::accumulate(c_multiset.begin(), c_multiset.end(), 0U);
  }
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

inline Decomposition decompose(const Invariants& inv) {
  Decomposition dec{inv.r, {}};
  for (unsigned d : inv.d_multiset)
    if (d > 1) dec.c_multiset.push_back((d - 1) / 2);
  std::sort(dec.c_multiset.begin(), dec.c_multiset.end(), std::greater<>());
  return dec;
}

/// "(Z/2⊕μ2)^2⊕G_3⊕G_1^2"; the ordinary factor alone prints as "(Z/2⊕μ2)".
inline std::string to_string(const Decomposition& dec) {
  std::vector<std::string> parts;
  if (dec.r == 1) parts.emplace_back("(Z/2⊕μ2)");
  if (dec.r > 1) parts.push_back("(Z/2⊕μ2)^" + std::to_string(dec.r));
  std::map<unsigned, unsigned, std::greater<>> counts;
  for (unsigned c : dec.c_multiset) ++counts[c];
  for (auto [c, n] : counts) parts.push_back("G_" + std::to_string(c) + (n > 1 ? "^" + std::to_string(n) : ""));
  if (parts.empty()) return "0";
  std::string s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) s += "⊕" + parts[i];
  return s;
}

/// r ordinary blocks followed by D(G_c) for each c.
inline SemilinearModule closed_form_module(const Decomposition& dec, const FieldCtx& ctx = FieldCtx(1)) {
  std::vector<SemilinearModule> parts;
  for (unsigned i = 0; i < dec.r; ++i) parts.push_back(build_ordinary(ctx));
  for (unsigned c : dec.c_multiset) parts.push_back(build_gc(c, ctx).module);
  return direct_sum(parts);
}

/// Engine vs closed form vs the a-number formula for one curve.
struct VerifyReport {
  Invariants inv;
  Decomposition dec;
  bool bt1_ok = false;
  EOType eo_engine;
  EOType eo_closed;
  unsigned a_engine = 0;     // g - nu_g on the de Rham module
  unsigned a_engine_v2 = 0;  // g - dim V^2 D on the de Rham module
  unsigned a_closed = 0;     // g - nu_g on the closed-form module
  unsigned p_rank_engine = 0;
  unsigned p_rank_closed = 0;

  [[nodiscard]] bool eo_equal() const { return eo_engine == eo_closed; }
  [[nodiscard]] bool a_agree() const { return a_engine == inv.a && a_closed == inv.a && a_engine_v2 == inv.a; }
  [[nodiscard]] bool p_rank_agree() const { return p_rank_engine == inv.r && p_rank_closed == inv.r; }
  [[nodiscard]] bool verified() const { return bt1_ok && eo_equal() && a_agree() && p_rank_agree(); }
};

inline VerifyReport verify_main(const CurveData& cd) {
  VerifyReport rep;
  rep.inv = invariants(cd);
  rep.dec = decompose(rep.inv);
  const SemilinearModule dr = build_drham(cd).module;
  const SemilinearModule cf = closed_form_module(rep.dec, cd.ctx());
  rep.bt1_ok = check_bt1(dr).ok() && check_bt1(cf).ok();
  if (!rep.bt1_ok) return rep;
  rep.eo_engine = eo_type(dr);
  rep.eo_closed = eo_type(cf);
  rep.a_engine = rep.eo_engine.a_number();
  rep.a_engine_v2 = a_number_from_v2(dr);
  rep.a_closed = rep.eo_closed.a_number();
  rep.p_rank_engine = rep.eo_engine.p_rank();
  rep.p_rank_closed = rep.eo_closed.p_rank();
  return rep;
}

/// Number of partitions of n (Euler's pentagonal recurrence).
inline std::uint64_t partition_count(unsigned n) {
  std::vector<std::uint64_t> p(n + 1, 0);
  p[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    std::int64_t acc = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      if (g1 > static_cast<int>(m)) break;
      const int sign = (k % 2 == 1) ? 1 : -1;
      acc += sign * static_cast<std::int64_t>(p[m - g1]);
      const int g2 = k * (3 * k + 1) / 2;
      if (g2 <= static_cast<int>(m)) acc += sign * static_cast<std::int64_t>(p[m - g2]);
    }
    p[m] = static_cast<std::uint64_t>(acc);
  }
  return p[n];
}

/// A stratum of hyperelliptic genus-g curves: its d-multiset (descending),
/// decomposition and engine-computed EO type.
struct Stratum {
  std::vector<unsigned> d_multiset;
  Decomposition dec;
  EOType eo;
  unsigned a = 0;
  unsigned r = 0;
  unsigned g = 0;
  std::optional<bool> verified;  // set when a realizing curve was checked
};

/// All multisets of odd d with sum(d + 1) = 2g + 2, i.e. partitions of g + 1
/// into parts (d + 1)/2, in descending lexicographic order.
inline std::vector<std::vector<unsigned>> d_multisets(unsigned g) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned rest, unsigned max_part) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (unsigned p = std::min(rest, max_part); p >= 1; --p) {
      cur.push_back(2 * p - 1);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(g + 1, g + 1);
  return out;
}

/// Smallest GF(2^n) with room for `points` distinct branch points.
inline FieldCtx smallest_field_for(std::size_t points) {
  unsigned n = 1;
  while ((std::size_t{1} << n) < points) ++n;
  return FieldCtx(n);
}

/// Strata of genus g with closed-form decomposition and engine EO type. With
/// `verify_seed`, each stratum is also realized by a random curve over the
/// smallest field that fits and run through verify_main.
inline std::vector<Stratum> enumerate_strata(unsigned g, std::optional<std::uint64_t> verify_seed = std::nullopt) {
  if (g < 1) throw InvalidCurve("genus must be >= 1");
  std::vector<Stratum> out;
  for (auto& ds : d_multisets(g)) {
    Stratum s;
    const Invariants inv = invariants_from_d(ds);
    s.d_multiset = std::move(ds);
    s.dec = decompose(inv);
    s.eo = eo_type(closed_form_module(s.dec));
    s.a = inv.a;
    s.r = inv.r;
    s.g = inv.g;
    if (verify_seed) {
      const CurveData cd = random_curve(smallest_field_for(s.d_multiset.size()), s.d_multiset, *verify_seed + out.size());
      const VerifyReport rep = verify_main(cd);
      s.verified = rep.verified() && rep.eo_engine == s.eo;
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Whether (Z/2 + mu_2)^r + sum G_c occurs for a hyperelliptic curve of
/// genus g: the c's padded with zeros to r + 1 entries must sum to g - r.
inline bool realizable(unsigned g, unsigned r, const std::vector<unsigned>& c_multiset) {
  if (r > g) return false;
  const auto nonzero = static_cast<unsigned>(std::count_if(c_multiset.begin(), c_multiset.end(), [](unsigned c) { return c > 0; }));
  const unsigned sum = std::accumulate(c_multiset.begin(), c_multiset.end(), 0U);
  return nonzero <= r + 1 && sum == g - r;
}

}  // namespace hyp2

#endif  // HYP2_CLASSIFY_HPP
