#ifndef HYP2_GC_HPP
#define HYP2_GC_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hyp2/semilin.hpp"

namespace hyp2 {

/// D(G_c) on the labeled basis X_1..X_c, Y_1..Y_c (indices 0..c-1 and
/// c..2c-1). Signs vanish in characteristic 2.
struct GcModule {
  unsigned c;
  SemilinearModule module;

  [[nodiscard]] std::size_t x(unsigned j) const { return j - 1; }
  [[nodiscard]] std::size_t y(unsigned j) const { return c + j - 1; }
};

namespace detail {

inline Matrix operator_matrix(std::size_t dim, const std::vector<std::pair<std::size_t, std::size_t>>& images) {
  // images: (source basis index, target basis index), coefficient 1.
  Matrix m(dim, dim);
  for (auto [src, dst] : images) m(dst, src) = kOne;
  return m;
}

}  // namespace detail

namespace detail {

// The standard G_c action table with its two operators called P and Q:
// P(Y_j) = 0; Q(Y_j) = Y_2j for j <= c/2; P(X_j) = X_j/2 (j even) or
// Y_{c-(j-1)/2} (j odd); Q(X_j) = Y_{2c-2j+1} for j > c/2, else 0.
inline std::pair<Matrix, Matrix> gc_tables(unsigned c) {
  if (c < 1) throw DimensionMismatch("G_c needs c >= 1");
  const std::size_t dim = 2 * std::size_t{c};
  auto xi = [](unsigned j) { return std::size_t{j} - 1; };
  auto yi = [c](unsigned j) { return std::size_t{c} + j - 1; };
  std::vector<std::pair<std::size_t, std::size_t>> p;
  std::vector<std::pair<std::size_t, std::size_t>> q;
  for (unsigned j = 1; j <= c; ++j) {
    if (2 * j <= c) q.emplace_back(yi(j), yi(2 * j));
    p.emplace_back(xi(j), j % 2 == 0 ? xi(j / 2) : yi(c - (j - 1) / 2));
    if (2 * j > c) q.emplace_back(xi(j), yi(2 * c - 2 * j + 1));
  }
  return {operator_matrix(dim, p), operator_matrix(dim, q)};
}

}  // namespace detail

/// D(G_c): V(Y_j) = 0; F(Y_j) = Y_2j for j <= c/2; V(X_j) = X_j/2 (j even)
/// or Y_{c-(j-1)/2} (j odd); F(X_j) = Y_{2c-2j+1} for j > c/2, else 0.
///
/// That is, F = Q and V = P. With F = P and V = Q instead, the module has
/// Ekedahl-Oort type [0,0,1,2,3,3] at c = 6 and is wrong for most c >= 6;
/// F = Q, V = P gives [0,1,1,...,floor(c/2)] for every c and agrees with the
/// de Rham module of y^2 - y = x^(2c+1).
inline GcModule build_gc(unsigned c, const FieldCtx& ctx = FieldCtx(1)) {
  auto [p, q] = detail::gc_tables(c);
  return {c, SemilinearModule(ctx, std::move(q), std::move(p))};
}

/// The same table read with F = P and V = Q. The relations of gc_relations
/// annihilate it as written; it is D(G_c) only for some c.
inline GcModule build_gc_tabulated(unsigned c, const FieldCtx& ctx = FieldCtx(1)) {
  auto [p, q] = detail::gc_tables(c);
  return {c, SemilinearModule(ctx, std::move(p), std::move(q))};
}

/// [0,1,1,2,2,...,floor(c/2)]: nu_i = floor(i/2).
inline EOType gc_eo_closed(unsigned c) {
  EOType e;
  for (unsigned i = 1; i <= c; ++i) e.nu.push_back(i / 2);
  return e;
}

/// D(Z/2 + mu_2) on basis (u, w): F u = 0, V u = u, F w = w, V w = 0.
inline SemilinearModule build_ordinary(const FieldCtx& ctx = FieldCtx(1)) {
  return {ctx, detail::operator_matrix(2, {{1, 1}}), detail::operator_matrix(2, {{0, 0}})};
}

/// Generator combinatorics of D(G_c): for j in I = [ceil((c+1)/2), c],
/// j = 2^e(j) ell(j) with ell odd, s(j) = c - (ell-1)/2, m(j) = 2c - 2j + 1,
/// t(j) = 2^eps(j) m(j) in I, and iota the bijection with t(iota(j)) = s(j).
struct IotaData {
  unsigned c = 0;
  std::vector<unsigned> index;  // I, ascending
  std::map<unsigned, unsigned> ell, e, s, m, eps, t, iota;
};

inline IotaData iota_data(unsigned c) {
  if (c < 1) throw DimensionMismatch("iota_data needs c >= 1");
  IotaData d;
  d.c = c;
  for (unsigned j = (c + 2) / 2; j <= c; ++j) d.index.push_back(j);
  std::map<unsigned, unsigned> t_inv;
  for (unsigned j : d.index) {
    unsigned ell = j;
    unsigned e = 0;
    while (ell % 2 == 0) {
      ell /= 2;
      ++e;
    }
    d.ell[j] = ell;
    d.e[j] = e;
    d.s[j] = c - (ell - 1) / 2;
    const unsigned mj = 2 * c - 2 * j + 1;
    unsigned t = mj;
    unsigned eps = 0;
    while (t < d.index.front()) {
      t *= 2;
      ++eps;
    }
    d.m[j] = mj;
    d.eps[j] = eps;
    d.t[j] = t;
    t_inv[t] = j;
  }
  std::set<unsigned> s_vals;
  for (unsigned j : d.index) s_vals.insert(d.s[j]);
  if (s_vals.size() != d.index.size() || t_inv.size() != d.index.size() || *s_vals.begin() != d.index.front() ||
      *s_vals.rbegin() != c)
    throw DimensionMismatch("s or t fails to be a bijection of I for c = " + std::to_string(c));
  for (unsigned j : d.index) d.iota[j] = t_inv.at(d.s[j]);
  return d;
}

/// F^{f_power} X_j + V^{v_power} X_partner.
struct GcRelation {
  unsigned j;
  unsigned f_power;
  unsigned partner;
  unsigned v_power;
  friend bool operator==(const GcRelation&, const GcRelation&) = default;
};

inline std::vector<GcRelation> gc_relations(unsigned c) {
  const IotaData d = iota_data(c);
  std::vector<GcRelation> out;
  for (unsigned j : d.index) {
    const unsigned p = d.iota.at(j);
    out.push_back({j, d.e.at(j) + 1, p, d.eps.at(p) + 1});
  }
  return out;
}

/// Number of cycles of iota.
inline unsigned gc_summands(unsigned c) {
  const IotaData d = iota_data(c);
  std::set<unsigned> visited;
  unsigned cycles = 0;
  for (unsigned j : d.index) {
    if (visited.count(j)) continue;
    ++cycles;
    for (unsigned x = j; !visited.count(x); x = d.iota.at(x)) visited.insert(x);
  }
  return cycles;
}

/// op^power (v), op in {F, V}.
inline Vec apply_power(const SemilinearModule& m, Vec v, unsigned power, SlOp op) {
  for (unsigned i = 0; i < power; ++i) v = op == SlOp::F ? m.apply_f(v) : m.apply_v(v);
  return v;
}

/// How a relation's F and V are read when evaluated on a module.
enum class Reading { AsWritten, Exchanged };

/// Value of F^a X_j + V^b X_p in a module with X-basis index map `x`. With
/// Reading::Exchanged the word V^a X_j + F^b X_p is evaluated instead, which
/// is the form the relations take in build_gc.
template <class XIndex>
Vec evaluate_relation(const SemilinearModule& m, const GcRelation& r, XIndex x,
                      Reading reading = Reading::AsWritten) {
  const SlOp first = reading == Reading::AsWritten ? SlOp::F : SlOp::V;
  const SlOp second = reading == Reading::AsWritten ? SlOp::V : SlOp::F;
  return add(apply_power(m, m.basis_vector(x(r.j)), r.f_power, first),
             apply_power(m, m.basis_vector(x(r.partner)), r.v_power, second));
}

namespace detail {

inline std::string subscript(unsigned n) {
  static const char* const digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string s;
  for (char ch : std::to_string(n)) s += digits[ch - '0'];
  return s;
}

inline std::string superscript(unsigned n) {
  static const char* const digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  if (n == 1) return "";
  std::string s;
  for (char ch : std::to_string(n)) s += digits[ch - '0'];
  return s;
}

}  // namespace detail

/// Table form, e.g. "F³X₄+V²X₅".
inline std::string to_string(const GcRelation& r) {
  return "F" + detail::superscript(r.f_power) + "X" + detail::subscript(r.j) + "+V" +
         detail::superscript(r.v_power) + "X" + detail::subscript(r.partner);
}

inline std::string relations_text(const std::vector<GcRelation>& rels) {
  std::string s;
  for (std::size_t i = 0; i < rels.size(); ++i) s += (i ? ", " : "") + to_string(rels[i]);
  return s;
}

/// Generators X_{min I}..X_c in table form ("X₄-X₆", or "X₁" when |I| = 1).
inline std::string generators_text(unsigned c) {
  const unsigned lo = (c + 2) / 2;
  if (lo == c) return "X" + detail::subscript(c);
  return "X" + detail::subscript(lo) + "-X" + detail::subscript(c);
}

/// The rank-p^8 group scheme I_{4,3} with final type [0,0,1,1], on the basis
/// X_1..X_4, Y_1..Y_4 with the corrected action table.
inline SemilinearModule build_i43(const FieldCtx& ctx = FieldCtx(1)) {
  auto x = [](unsigned j) { return std::size_t{j} - 1; };
  auto y = [](unsigned j) { return std::size_t{j} + 3; };
  return {ctx,
          detail::operator_matrix(8, {{x(1), y(4)}, {x(2), y(3)}, {x(3), x(1)}, {x(4), y(2)}}),
          detail::operator_matrix(8, {{x(2), y(4)}, {x(3), y(2)}, {x(4), y(1)}, {y(1), y(3)}})};
}

/// Relations FX₂+V²X₄, F²X₃+VX₂, FX₄+VX₃ generating D(I_{4,3}).
inline std::vector<GcRelation> i43_relations() { return {{2, 1, 4, 2}, {3, 2, 2, 1}, {4, 1, 3, 1}}; }

/// D(G_7) written as E/E(F+V) + E/E(F^2+V^2) + E/E(V+F^3) + E/E(F^3+V) on the
/// 14 basis vectors 1_A, V_A | 1_B, V_B, V_B^2, F_B | 1_C, V_C, V_C^2, V_C^3 |
/// 1_C', F_C', F_C'^2, F_C'^3 (indices 0..13 in that order).
inline SemilinearModule build_g7_split(const FieldCtx& ctx = FieldCtx(1)) {
  enum : std::size_t { A1, VA, B1, VB, VB2, FB, C1, VC, VC2, VC3, D1, FD, FD2, FD3 };
  return {ctx,
          detail::operator_matrix(14, {{A1, VA}, {B1, FB}, {FB, VB2}, {C1, VC3}, {D1, FD}, {FD, FD2}, {FD2, FD3}}),
          detail::operator_matrix(14, {{A1, VA}, {B1, VB}, {VB, VB2}, {C1, VC}, {VC, VC2}, {VC2, VC3}, {D1, FD3}})};
}

/// Generators t_1..t_14 (basis indices into build_g7_split) of the listed
/// flag N_i = <t_1, ..., t_i> for this module, in the order
/// V_C^3, V_C^2, V_B^2, V_C, V_A, F_C'^3, V_B, 1_C, F_C'^2, 1_A, F_B, F_C', 1_C', 1_B.
/// This order is not stable: V(N_6) has dimension 2.
inline std::vector<std::size_t> g7_split_flag_generators() { return {9, 8, 4, 7, 1, 13, 3, 6, 12, 0, 5, 11, 10, 2}; }

/// Generators of the final filtration of build_g7_split. Here the canonical
/// filtration is already a complete flag, so this is the only one:
/// V_C^3, V_C^2, V_B^2, V_C, V_A, V_B, F_C'^3, 1_C, F_B, 1_A, F_C'^2, 1_B, F_C', 1_C'.
inline std::vector<std::size_t> g7_split_final_flag() { return {9, 8, 4, 7, 1, 3, 13, 6, 5, 0, 12, 2, 11, 10}; }

}  // namespace hyp2

#endif  // HYP2_GC_HPP
