#ifndef HYP2_DRHAM_HPP
#define HYP2_DRHAM_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "hyp2/curve.hpp"
#include "hyp2/semilin.hpp"

namespace hyp2 {

enum class LabelKind { LambdaNil, SigmaNil, LambdaSs, SigmaSs };

inline const char* to_string(LabelKind k) {
  switch (k) {
    case LabelKind::LambdaNil: return "lambda_nil";
    case LabelKind::SigmaNil: return "sigma_nil";
    case LabelKind::LambdaSs: return "lambda_ss";
    case LabelKind::SigmaSs: return "sigma_ss";
  }
  return "?";
}

/// Basis vector of H^1_dR: lambda_{alpha,j} / sigma_{alpha,j} for
/// 1 <= j <= c_alpha, or the pair lambda_{alpha,0} - lambda_{base,0},
/// sigma_{alpha,0} for a non-base branch point (j = 0).
struct DeRhamLabel {
  LabelKind kind;
  Fe alpha;
  unsigned j;
  friend bool operator==(const DeRhamLabel&, const DeRhamLabel&) = default;
};

/// R_{alpha,j} = sum_{j/2 <= i <= c} a_i omega_{2i-j+1}; entry k of the
/// result is the coefficient of omega_k (index 0 unused).
inline std::vector<Fe> r_form(const BranchDatum& b, unsigned j) {
  std::vector<Fe> out(b.c() + 1);
  for (unsigned i = (j + 1) / 2; i <= b.c(); ++i) {
    const unsigned idx = 2 * i - j + 1;
    if (idx >= out.size()) out.resize(idx + 1);
    out[idx] += b.coeffs[i];
  }
  return out;
}

/// Cartier image of R_{alpha,j}: for odd j, sum_{i=(j+1)/2}^{c} sqrt(a_i)
/// omega_{i-(j-1)/2}; zero for even j. Indexed like r_form.
inline std::vector<Fe> cr_form(const FieldCtx& k, const BranchDatum& b, unsigned j) {
  std::vector<Fe> out(b.c() + 1);
  if (j % 2 == 0) return out;
  for (unsigned i = (j + 1) / 2; i <= b.c(); ++i) out[i - (j - 1) / 2] += k.sqrt(b.coeffs[i]);
  return out;
}

/// H^1_dR(X) as a semilinear module, with its basis labels. Labels are grouped
/// per branch point in ascending alpha order: for a non-base point
/// (lambda_ss, sigma_ss), then lambda_1..c, then sigma_1..c.
struct DeRhamModule {
  SemilinearModule module;
  std::vector<DeRhamLabel> labels;
  Fe base_point;
};

inline DeRhamModule build_drham(const CurveData& cd) {
  const FieldCtx& k = cd.ctx();
  const Fe base = cd.branches().front().alpha;
  std::vector<DeRhamLabel> labels;
  std::vector<std::size_t> lambda_at;  // first lambda_nil index per branch
  std::vector<std::size_t> sigma_at;
  for (const auto& b : cd.branches()) {
    if (b.alpha != base) {
      labels.push_back({LabelKind::LambdaSs, b.alpha, 0});
      labels.push_back({LabelKind::SigmaSs, b.alpha, 0});
    }
    lambda_at.push_back(labels.size());
    for (unsigned j = 1; j <= b.c(); ++j) labels.push_back({LabelKind::LambdaNil, b.alpha, j});
    sigma_at.push_back(labels.size());
    for (unsigned j = 1; j <= b.c(); ++j) labels.push_back({LabelKind::SigmaNil, b.alpha, j});
  }
  const std::size_t dim = labels.size();
  Matrix f(dim, dim);
  Matrix v(dim, dim);

  for (std::size_t bi = 0; bi < cd.branches().size(); ++bi) {
    const BranchDatum& b = cd.branches()[bi];
    const unsigned c = b.c();
    auto lam = [&](unsigned j) { return lambda_at[bi] + j - 1; };
    auto sig = [&](unsigned j) { return sigma_at[bi] + j - 1; };
    if (b.alpha != base) {
      const std::size_t ls = lambda_at[bi] - 2;
      const std::size_t ss = lambda_at[bi] - 1;
      v(ls, ls) = kOne;  // V lambda_ss = lambda_ss, F lambda_ss = 0
      f(ss, ss) = kOne;  // F sigma_ss = sigma_ss, V sigma_ss = 0
    }
    for (unsigned j = 1; j <= c; ++j) {
      // F lambda_j = 0; V lambda_j = lambda_{j/2} for even j.
      if (j % 2 == 0) v(lam(j / 2), lam(j)) = kOne;
      // F sigma_j = sigma_2j if 2j <= c, else lambda(R_{2j}).
      if (2 * j <= c) {
        f(sig(2 * j), sig(j)) = kOne;
      } else {
        const auto r = r_form(b, 2 * j);
        for (unsigned i = 1; i < r.size(); ++i) f(lam(i), sig(j)) += r[i];
      }
      // V sigma_j = lambda(C(R_j)) for odd j, 0 for even j.
      const auto cr = cr_form(k, b, j);
      for (unsigned i = 1; i < cr.size(); ++i) v(lam(i), sig(j)) += cr[i];
    }
  }
  return {SemilinearModule(k, std::move(f), std::move(v)), std::move(labels), base};
}

}  // namespace hyp2

#endif  // HYP2_DRHAM_HPP
