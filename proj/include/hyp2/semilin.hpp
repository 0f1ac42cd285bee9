#ifndef HYP2_SEMILIN_HPP
#define HYP2_SEMILIN_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hyp2/matrix.hpp"

namespace hyp2 {

/// Subspace of k^dim, stored as its reduced row echelon basis. Two subspaces
/// are equal iff their echelon matrices are identical.
class Subspace {
 public:
  Subspace() = default;

  /// Span of the rows of `generators`.
  Subspace(const FieldCtx& k, Matrix generators) : basis_(std::move(generators)) {
    rref_in_place(k, basis_);
  }

  static Subspace zero(std::size_t dim) { return Subspace(Matrix(0, dim)); }
  static Subspace whole(std::size_t dim) { return Subspace(Matrix::identity(dim)); }
  static Subspace span(const FieldCtx& k, std::span<const Vec> vectors, std::size_t dim) {
    return {k, Matrix::from_rows(vectors, dim)};
  }

  [[nodiscard]] std::size_t dim() const { return basis_.rows(); }
  [[nodiscard]] std::size_t ambient() const { return basis_.cols(); }
  [[nodiscard]] const Matrix& basis() const { return basis_; }
  [[nodiscard]] std::vector<Vec> vectors() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row_vec(i));
    return out;
  }

  [[nodiscard]] bool contains(const FieldCtx& k, std::span<const Fe> v) const {
    Matrix m(dim() + 1, ambient());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < ambient(); ++j) m(i, j) = basis_(i, j);
    for (std::size_t j = 0; j < ambient(); ++j) m(dim(), j) = v[j];
    return rank(k, std::move(m)) == dim();
  }

  [[nodiscard]] bool contains(const FieldCtx& k, const Subspace& s) const {
    return sum(k, s).dim() == dim();
  }

  [[nodiscard]] Subspace sum(const FieldCtx& k, const Subspace& o) const {
    if (o.ambient() != ambient()) throw DimensionMismatch("subspaces of different ambient spaces");
    Matrix m(dim() + o.dim(), ambient());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < ambient(); ++j) m(i, j) = basis_(i, j);
    for (std::size_t i = 0; i < o.dim(); ++i)
      for (std::size_t j = 0; j < ambient(); ++j) m(dim() + i, j) = o.basis_(i, j);
    return {k, std::move(m)};
  }

  /// Rows q spanning the annihilator, so that v is in the subspace iff Q v = 0.
  [[nodiscard]] Matrix equations(const FieldCtx& k) const {
    return nullspace(k, basis_.rows() == 0 ? Matrix(0, ambient()) : basis_);
  }

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend bool operator<(const Subspace& a, const Subspace& b) { return a.key() < b.key(); }

 private:
  explicit Subspace(Matrix echelon) : basis_(std::move(echelon)) {}

  [[nodiscard]] std::pair<std::size_t, std::vector<std::uint32_t>> key() const {
    std::vector<std::uint32_t> flat;
    flat.reserve(dim() * ambient());
    for (std::size_t i = 0; i < dim(); ++i)
      for (Fe x : basis_.row(i)) flat.push_back(x.bits);
    return {dim(), std::move(flat)};
  }

  Matrix basis_;
};

/// Finite E-module over GF(2^n): F(v) = A v^(2) and V(v) = B v^(1/2), where
/// the twist squares (resp. square-roots) each coordinate of v. Column j of
/// A (resp. B) is the image of the j-th basis vector.
class SemilinearModule {
 public:
  SemilinearModule(FieldCtx ctx, Matrix f, Matrix v) : ctx_(ctx), f_(std::move(f)), v_(std::move(v)) {
    if (f_.rows() != f_.cols() || v_.rows() != v_.cols() || f_.rows() != v_.rows())
      throw DimensionMismatch("F and V must be square matrices of the same size");
    for (const Matrix* m : {&f_, &v_})
      for (std::size_t i = 0; i < m->rows(); ++i)
        for (Fe x : m->row(i))
          if (!ctx_.contains(x)) throw InvalidField("matrix entry outside the field");
  }

  [[nodiscard]] const FieldCtx& ctx() const { return ctx_; }
  [[nodiscard]] std::size_t dim() const { return f_.rows(); }
  [[nodiscard]] std::size_t genus() const { return dim() / 2; }
  [[nodiscard]] const Matrix& f_mat() const { return f_; }
  [[nodiscard]] const Matrix& v_mat() const { return v_; }

  [[nodiscard]] Vec apply_f(std::span<const Fe> x) const { return apply(ctx_, f_, frob(ctx_, Vec(x.begin(), x.end()))); }
  [[nodiscard]] Vec apply_v(std::span<const Fe> x) const {
    return apply(ctx_, v_, frob_inv(ctx_, Vec(x.begin(), x.end())));
  }

  [[nodiscard]] Vec basis_vector(std::size_t i) const {
    Vec e(dim());
    e.at(i) = kOne;
    return e;
  }

  friend bool operator==(const SemilinearModule&, const SemilinearModule&) = default;

 private:
  FieldCtx ctx_;
  Matrix f_;
  Matrix v_;
};

enum class SlOp { F, V, FInv, VInv };

/// Image or preimage of a subspace under F or V. Images are spans of the
/// images of a basis (the field is perfect). Preimages solve the linear
/// problem A w in S and then untwist the solution space coordinatewise.
inline Subspace sl_map(const SemilinearModule& m, const Subspace& s, SlOp which) {
  if (s.ambient() != m.dim()) throw DimensionMismatch("subspace and module dimensions differ");
  const FieldCtx& k = m.ctx();
  switch (which) {
    case SlOp::F:
    case SlOp::V: {
      std::vector<Vec> images;
      for (const auto& b : s.vectors()) images.push_back(which == SlOp::F ? m.apply_f(b) : m.apply_v(b));
      return Subspace::span(k, images, m.dim());
    }
    case SlOp::FInv:
    case SlOp::VInv: {
      const Matrix& lin = which == SlOp::FInv ? m.f_mat() : m.v_mat();
      const Matrix eqs = s.equations(k);
      const Matrix sol = eqs.rows() == 0 ? Matrix::identity(m.dim()) : nullspace(k, mul(k, eqs, lin));
      std::vector<Vec> untwisted;
      for (std::size_t i = 0; i < sol.rows(); ++i)
        untwisted.push_back(which == SlOp::FInv ? frob_inv(k, sol.row_vec(i)) : frob(k, sol.row_vec(i)));
      return Subspace::span(k, untwisted, m.dim());
    }
  }
  return s;
}

/// Outcome of the BT_1 validity check; witnesses describe each failure.
struct Bt1Report {
  bool fv_zero = false;
  bool vf_zero = false;
  bool ker_f_eq_im_v = false;
  bool ker_v_eq_im_f = false;
  std::vector<std::string> witnesses;

  [[nodiscard]] bool ok() const { return fv_zero && vf_zero && ker_f_eq_im_v && ker_v_eq_im_f; }
};

namespace detail {

inline std::optional<std::string> first_nonzero(const Matrix& m, const char* what) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero())
        return std::string(what) + " has entry " + std::to_string(m(i, j).bits) + " at (" + std::to_string(i) +
               "," + std::to_string(j) + ")";
  return std::nullopt;
}

}  // namespace detail

inline Bt1Report check_bt1(const SemilinearModule& m) {
  const FieldCtx& k = m.ctx();
  Bt1Report rep;
  // F V v = A (B v^(1/2))^(2) = A B^(2) v, and V F v = B A^(1/2) v.
  const Matrix fv = mul(k, m.f_mat(), frob(k, m.v_mat()));
  const Matrix vf = mul(k, m.v_mat(), frob_inv(k, m.f_mat()));
  auto w1 = detail::first_nonzero(fv, "FV");
  auto w2 = detail::first_nonzero(vf, "VF");
  rep.fv_zero = !w1;
  rep.vf_zero = !w2;
  if (w1) rep.witnesses.push_back(*w1);
  if (w2) rep.witnesses.push_back(*w2);

  const Subspace zero = Subspace::zero(m.dim());
  const Subspace whole = Subspace::whole(m.dim());
  const Subspace ker_f = sl_map(m, zero, SlOp::FInv);
  const Subspace im_v = sl_map(m, whole, SlOp::V);
  const Subspace ker_v = sl_map(m, zero, SlOp::VInv);
  const Subspace im_f = sl_map(m, whole, SlOp::F);
  rep.ker_f_eq_im_v = ker_f == im_v;
  rep.ker_v_eq_im_f = ker_v == im_f;
  if (!rep.ker_f_eq_im_v)
    rep.witnesses.push_back("dim ker F = " + std::to_string(ker_f.dim()) + ", dim im V = " + std::to_string(im_v.dim()));
  if (!rep.ker_v_eq_im_f)
    rep.witnesses.push_back("dim ker V = " + std::to_string(ker_v.dim()) + ", dim im F = " + std::to_string(im_f.dim()));
  return rep;
}

/// Final type [nu_1, ..., nu_g].
struct EOType {
  std::vector<unsigned> nu;

  [[nodiscard]] std::size_t genus() const { return nu.size(); }
  /// max{i : nu_i = i}, with nu_0 = 0.
  [[nodiscard]] unsigned p_rank() const {
    unsigned r = 0;
    for (std::size_t i = 0; i < nu.size(); ++i)
      if (nu[i] == i + 1) r = static_cast<unsigned>(i + 1);
    return r;
  }
  [[nodiscard]] unsigned a_number() const { return static_cast<unsigned>(nu.size()) - (nu.empty() ? 0 : nu.back()); }

  /// nu_1 in {0,1} and nu_i <= nu_{i+1} <= nu_i + 1.
  [[nodiscard]] bool well_formed() const {
    unsigned prev = 0;
    for (unsigned x : nu) {
      if (x < prev || x > prev + 1) return false;
      prev = x;
    }
    return true;
  }

  friend bool operator==(const EOType&, const EOType&) = default;
  friend auto operator<=>(const EOType&, const EOType&) = default;
};

inline std::string to_string(const EOType& e) {
  std::string s = "[";
  for (std::size_t i = 0; i < e.nu.size(); ++i) s += (i ? "," : "") + std::to_string(e.nu[i]);
  return s + "]";
}

/// The coarsest filtration stable under V and F^-1: closure of {0, whole}
/// under S -> V(S) and S -> F^-1(S), sorted by dimension. Throws NotAChain if
/// the closure is not totally ordered by inclusion.
inline std::vector<Subspace> canonical_filtration(const SemilinearModule& m) {
  const FieldCtx& k = m.ctx();
  std::vector<Subspace> todo{Subspace::zero(m.dim()), Subspace::whole(m.dim())};
  std::set<Subspace> seen(todo.begin(), todo.end());
  while (!todo.empty()) {
    Subspace s = std::move(todo.back());
    todo.pop_back();
    for (SlOp op : {SlOp::V, SlOp::FInv}) {
      Subspace t = sl_map(m, s, op);
      if (seen.insert(t).second) todo.push_back(std::move(t));
    }
  }
  std::vector<Subspace> chain(seen.begin(), seen.end());
  std::stable_sort(chain.begin(), chain.end(), [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i].dim() == chain[i + 1].dim() || !chain[i + 1].contains(k, chain[i]))
      throw NotAChain("canonical closure has incomparable subspaces of dimensions " +
                      std::to_string(chain[i].dim()) + " and " + std::to_string(chain[i + 1].dim()));
  }
  return chain;
}

/// Ekedahl-Oort type read off the canonical filtration. Between consecutive
/// canonical subspaces C < C', V is either zero or injective on C'/C, so
/// dim V(N_i) is constant or increases by one per step across the gap.
inline EOType eo_type(const SemilinearModule& m) {
  if (m.dim() % 2 != 0) throw DimensionMismatch("module dimension must be even");
  const auto chain = canonical_filtration(m);
  std::vector<unsigned> nu_full(m.dim() + 1, 0);
  std::size_t prev_dim = 0;
  std::size_t prev_v = 0;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const std::size_t d = chain[i].dim();
    const std::size_t v = sl_map(m, chain[i], SlOp::V).dim();
    const std::size_t gap = d - prev_dim;
    const std::size_t rise = v - prev_v;
    if (rise != 0 && rise != gap)
      throw MixedStep("V raises dimension by " + std::to_string(rise) + " across a canonical gap of " +
                      std::to_string(gap));
    for (std::size_t j = prev_dim + 1; j <= d; ++j)
      nu_full[j] = static_cast<unsigned>(prev_v + (rise == 0 ? 0 : j - prev_dim));
    prev_dim = d;
    prev_v = v;
  }
  return EOType{{nu_full.begin() + 1, nu_full.begin() + 1 + static_cast<std::ptrdiff_t>(m.genus())}};
}

inline unsigned p_rank(const SemilinearModule& m) { return eo_type(m).p_rank(); }
inline unsigned a_number(const SemilinearModule& m) { return eo_type(m).a_number(); }

/// a-number computed as g - dim V(V(D)), independently of the EO type.
inline unsigned a_number_from_v2(const SemilinearModule& m) {
  const Subspace v1 = sl_map(m, Subspace::whole(m.dim()), SlOp::V);
  return static_cast<unsigned>(m.genus() - sl_map(m, v1, SlOp::V).dim());
}

inline SemilinearModule direct_sum(std::span<const SemilinearModule> ms) {
  if (ms.empty()) throw DimensionMismatch("direct sum of no modules");
  std::vector<Matrix> fs;
  std::vector<Matrix> vs;
  for (const auto& m : ms) {
    if (!(m.ctx() == ms.front().ctx())) throw CtxMismatch("direct summands over different fields");
    fs.push_back(m.f_mat());
    vs.push_back(m.v_mat());
  }
  return {ms.front().ctx(), block_diagonal(fs), block_diagonal(vs)};
}

/// The same module in the basis given by the columns of p:
/// F' = P^-1 A P^(2), V' = P^-1 B P^(1/2).
inline SemilinearModule change_basis(const SemilinearModule& m, const Matrix& p) {
  const FieldCtx& k = m.ctx();
  const Matrix pinv = inverse(k, p);
  return {k, mul(k, pinv, mul(k, m.f_mat(), frob(k, p))), mul(k, pinv, mul(k, m.v_mat(), frob_inv(k, p)))};
}

}  // namespace hyp2

#endif  // HYP2_SEMILIN_HPP
