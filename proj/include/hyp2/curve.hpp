#ifndef HYP2_CURVE_HPP
#define HYP2_CURVE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hyp2/poly.hpp"

namespace hyp2 {

/// Branch point alpha with f_alpha(u) = sum_i coeffs[i] u^(2i+1), u = 1/(x - alpha).
struct BranchDatum {
  Fe alpha;
  std::vector<Fe> coeffs;  // a_{alpha,0..c}, last entry nonzero

  [[nodiscard]] unsigned c() const { return static_cast<unsigned>(coeffs.size()) - 1; }
  [[nodiscard]] unsigned d() const { return 2 * c() + 1; }
  friend bool operator==(const BranchDatum&, const BranchDatum&) = default;
};

/// A curve y^2 - y = f(x) in standard form: f = sum over branches of
/// f_alpha(1/(x - alpha)), no pole at infinity. Branches sorted by alpha.
class CurveData {
 public:
  CurveData(FieldCtx ctx, std::vector<BranchDatum> branches) : ctx_(ctx), branches_(std::move(branches)) {
    if (branches_.empty()) throw Unramified("a curve needs at least one branch point");
    std::sort(branches_.begin(), branches_.end(),
              [](const BranchDatum& a, const BranchDatum& b) { return a.alpha < b.alpha; });
    for (std::size_t i = 0; i < branches_.size(); ++i) {
      const auto& b = branches_[i];
      if (i > 0 && branches_[i - 1].alpha == b.alpha)
        throw InvalidCurve("branch point " + std::to_string(b.alpha.bits) + " listed twice");
      if (!ctx_.contains(b.alpha)) throw InvalidField("branch point outside the field");
      if (b.coeffs.empty() || b.coeffs.back().is_zero())
        throw InvalidCurve("branch " + std::to_string(b.alpha.bits) + " needs a nonzero leading coefficient");
      for (Fe a : b.coeffs)
        if (!ctx_.contains(a)) throw InvalidField("coefficient outside the field");
    }
  }

  [[nodiscard]] const FieldCtx& ctx() const { return ctx_; }
  [[nodiscard]] const std::vector<BranchDatum>& branches() const { return branches_; }

  friend bool operator==(const CurveData&, const CurveData&) = default;

 private:
  FieldCtx ctx_;
  std::vector<BranchDatum> branches_;
};

/// Genus, 2-rank, a-number (closed form) and the ramification invariants.
struct Invariants {
  unsigned g = 0;
  unsigned r = 0;
  unsigned a = 0;
  std::vector<unsigned> d_multiset;  // descending

  friend bool operator==(const Invariants&, const Invariants&) = default;
};

/// Invariants from a multiset of odd d's: g = r + sum c, r = #B - 1 and
/// a = (g + 1 - #{d = 1 mod 4}) / 2.
inline Invariants invariants_from_d(std::vector<unsigned> ds) {
  if (ds.empty()) throw Unramified("empty ramification data");
  std::sort(ds.begin(), ds.end(), std::greater<>());
  Invariants inv;
  inv.r = static_cast<unsigned>(ds.size()) - 1;
  unsigned sum_c = 0;
  unsigned one_mod_four = 0;
  for (unsigned d : ds) {
    if (d % 2 == 0) throw InvalidCurve("ramification invariant " + std::to_string(d) + " is even");
    sum_c += (d - 1) / 2;
    if (d % 4 == 1) ++one_mod_four;
  }
  inv.g = inv.r + sum_c;
  inv.a = (inv.g + 1 - one_mod_four) / 2;
  inv.d_multiset = std::move(ds);
  return inv;
}

inline Invariants invariants(const CurveData& cd) {
  std::vector<unsigned> ds;
  for (const auto& b : cd.branches()) ds.push_back(b.d());
  return invariants_from_d(std::move(ds));
}

/// f = sum_alpha f_alpha(1/(x - alpha)) as a reduced rational function.
inline RationalFn to_rational(const CurveData& cd) {
  PartialFractions pf;
  for (const auto& b : cd.branches()) {
    PoleTail t{b.alpha, std::vector<Fe>(b.d())};
    for (unsigned i = 0; i <= b.c(); ++i) t.coeffs[2 * i] = b.coeffs[i];
    pf.tails.push_back(std::move(t));
  }
  return recombine(cd.ctx(), pf);
}

struct NormalizeOptions {
  bool moebius = true;  // move a pole at infinity to a finite point
};

/// Standard form together with the Artin-Schreier witness: the input f
/// equals f_std + dropped_constant + epsilon^2 + epsilon (in the coordinate
/// after `moved_infinity_from`, if the Moebius pre-pass ran).
struct NormalizeResult {
  CurveData curve;
  RationalFn epsilon;
  Fe dropped_constant;
  std::optional<Fe> moved_infinity_from;  // beta of x -> 1/(x - beta)
};

namespace detail {

// Replaces every c u^(2m), m >= 1, by sqrt(c) u^m from the top down and
// records sqrt(c) u^m into eps (indexed like coeffs).
inline void halve_even_exponents(const FieldCtx& k, std::vector<Fe>& coeffs, std::vector<Fe>& eps) {
  eps.assign(coeffs.size(), kZero);
  for (std::size_t e = coeffs.size(); e-- > 1;) {
    if (e % 2 != 0 || coeffs[e].is_zero()) continue;
    const Fe root = k.sqrt(coeffs[e]);
    coeffs[e / 2] += root;
    eps[e / 2] += root;
    coeffs[e] = kZero;
  }
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

}  // namespace detail

inline NormalizeResult normalize_with_witness(const FieldCtx& k, const RationalFn& f, NormalizeOptions opts = {}) {
  const PartialFractions pf = partial_fractions(k, f);

  std::vector<Fe> poly(pf.poly_part.coeffs());
  std::vector<Fe> poly_eps;
  detail::halve_even_exponents(k, poly, poly_eps);
  const Fe constant = poly.empty() ? kZero : poly[0];
  if (poly.size() > 1) {
    if (!opts.moebius) throw PoleAtInfinity("f has a pole of order " + std::to_string(poly.size() - 1) + " at infinity");
    std::set<Fe> poles;
    for (const auto& r : find_roots(k, f.den())) poles.insert(r.value);
    for (std::uint32_t v = 0; v < k.order(); ++v) {
      if (poles.count(Fe(v))) continue;
      NormalizeResult res = normalize_with_witness(k, invert_about(k, f, Fe(v)), {.moebius = false});
      res.moved_infinity_from = Fe(v);
      return res;
    }
    throw FieldTooSmall("every field element is a pole of f; no room to move infinity");
  }

  // epsilon accumulates the polynomial part (constant term excluded) and the
  // sqrt terms of each tail.
  PartialFractions eps_pf{Poly(poly_eps), {}};
  std::vector<BranchDatum> branches;
  for (const auto& tail : pf.tails) {
    std::vector<Fe> u(tail.coeffs.size() + 1);  // u[e] = coefficient of u^e
    std::copy(tail.coeffs.begin(), tail.coeffs.end(), u.begin() + 1);
    std::vector<Fe> eps;
    detail::halve_even_exponents(k, u, eps);
    eps_pf.tails.push_back({tail.alpha, std::vector<Fe>(eps.begin() + (eps.empty() ? 0 : 1), eps.end())});
    if (u.empty()) continue;
    BranchDatum b{tail.alpha, {}};
    for (std::size_t e = 1; e < u.size(); e += 2) b.coeffs.push_back(u[e]);
    branches.push_back(std::move(b));
  }
  for (auto& t : eps_pf.tails)
    while (!t.coeffs.empty() && t.coeffs.back().is_zero()) t.coeffs.pop_back();
  std::erase_if(eps_pf.tails, [](const PoleTail& t) { return t.coeffs.empty(); });

  if (branches.empty()) throw Unramified("f is Artin-Schreier equivalent to a constant");
  return {CurveData(k, std::move(branches)), recombine(k, eps_pf), constant, std::nullopt};
}

/// Standard form of y^2 - y = f(x).
inline CurveData normalize(const FieldCtx& k, const RationalFn& f, NormalizeOptions opts = {}) {
  return normalize_with_witness(k, f, opts).curve;
}

/// Deterministic random curve with the given ramification invariants:
/// distinct random branch points, random coefficients, nonzero leading ones.
inline CurveData random_curve(const FieldCtx& k, const std::vector<unsigned>& d_multiset, std::uint64_t seed) {
  if (d_multiset.empty()) throw Unramified("empty ramification data");
  if (d_multiset.size() > k.order())
    throw FieldTooSmall(std::to_string(d_multiset.size()) + " branch points do not fit in GF(2^" +
                        std::to_string(k.degree()) + ")");
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> points(k.order());
  for (std::uint32_t v = 0; v < k.order(); ++v) points[v] = v;
  for (std::size_t i = 0; i < d_multiset.size(); ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, points.size() - 1);
    std::swap(points[i], points[pick(rng)]);
  }
  std::uniform_int_distribution<std::uint32_t> any(0, k.order() - 1);
  std::uniform_int_distribution<std::uint32_t> nonzero(1, k.order() - 1);
  std::vector<BranchDatum> branches;
  for (std::size_t i = 0; i < d_multiset.size(); ++i) {
    const unsigned d = d_multiset[i];
    if (d % 2 == 0) throw InvalidCurve("ramification invariant " + std::to_string(d) + " is even");
    BranchDatum b{Fe(points[i]), std::vector<Fe>((d - 1) / 2 + 1)};
    for (std::size_t j = 0; j + 1 < b.coeffs.size(); ++j) b.coeffs[j] = Fe(any(rng));
    b.coeffs.back() = Fe(nonzero(rng));
    branches.push_back(std::move(b));
  }
  return {k, std::move(branches)};
}

}  // namespace hyp2

#endif  // HYP2_CURVE_HPP
