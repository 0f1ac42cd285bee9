#ifndef HYP2_POLY_HPP
#define HYP2_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "hyp2/field.hpp"

namespace hyp2 {

/// Dense univariate polynomial over GF(2^n), coefficient i at x^i. The
/// highest stored coefficient is nonzero; the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Fe> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Fe> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(Fe a) { return Poly(std::vector<Fe>{a}); }
  static Poly monomial(Fe a, std::size_t k) {
    std::vector<Fe> c(k + 1);
    c[k] = a;
    return Poly(std::move(c));
  }
  /// x - alpha (= x + alpha in characteristic 2).
  static Poly linear(Fe alpha) { return Poly({alpha, kOne}); }

  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] Fe lead() const { return c_.empty() ? kZero : c_.back(); }
  [[nodiscard]] Fe operator[](std::size_t i) const { return i < c_.size() ? c_[i] : kZero; }
  [[nodiscard]] const std::vector<Fe>& coeffs() const { return c_; }

  friend bool operator==(const Poly&, const Poly&) = default;

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Fe> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + b; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Fe> c_;
};

inline Poly scale(const FieldCtx& k, const Poly& p, Fe a) {
  std::vector<Fe> c(p.coeffs());
  for (auto& x : c) x = k.mul(x, a);
  return Poly(std::move(c));
}

inline Poly mul(const FieldCtx& k, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Fe> c(a.coeffs().size() + b.coeffs().size() - 1);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += k.mul(a[i], b[j]);
  }
  return Poly(std::move(c));
}

inline Poly pow(const FieldCtx& k, Poly p, unsigned e) {
  Poly acc = Poly::constant(kOne);
  for (; e != 0; e >>= 1, p = mul(k, p, p)) {
    if (e & 1U) acc = mul(k, acc, p);
  }
  return acc;
}

/// Quotient and remainder; throws DivisionByZero for b = 0.
inline std::pair<Poly, Poly> divmod(const FieldCtx& k, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by 0");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Fe> r(a.coeffs());
  std::vector<Fe> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const Fe lead_inv = k.inv(b.lead());
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    const Fe t = k.mul(r[static_cast<std::size_t>(i)], lead_inv);
    if (t.is_zero()) continue;
    q[static_cast<std::size_t>(i - db)] = t;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] += k.mul(t, b[static_cast<std::size_t>(j)]);
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

inline Poly monic(const FieldCtx& k, const Poly& p) {
  return p.is_zero() ? p : scale(k, p, k.inv(p.lead()));
}

/// Monic gcd (zero if both inputs are zero).
inline Poly gcd(const FieldCtx& k, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(k, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(k, a);
}

inline Fe eval(const FieldCtx& k, const Poly& p, Fe x) {
  Fe acc = kZero;
  for (int i = p.degree(); i >= 0; --i) acc = k.mul(acc, x) + p[static_cast<std::size_t>(i)];
  return acc;
}

/// p(x + shift), by Horner's rule on polynomials.
inline Poly taylor_shift(const FieldCtx& k, const Poly& p, Fe shift) {
  Poly acc;
  const Poly lin = Poly::linear(shift);
  for (int i = p.degree(); i >= 0; --i) acc = mul(k, acc, lin) + Poly::constant(p[static_cast<std::size_t>(i)]);
  return acc;
}

/// Coefficientwise Frobenius: p(x) -> p^(2)(x) with every coefficient squared.
inline Poly frobenius_coeffs(const FieldCtx& k, const Poly& p) {
  std::vector<Fe> c(p.coeffs());
  for (auto& x : c) x = k.square(x);
  return Poly(std::move(c));
}

/// Root with multiplicity.
struct Root {
  Fe value;
  unsigned multiplicity;
  friend bool operator==(const Root&, const Root&) = default;
};

/// All roots in the field, by exhaustive scan over the 2^n elements, with
/// multiplicities extracted by repeated division. Sorted by bitmask.
inline std::vector<Root> find_roots(const FieldCtx& k, const Poly& p) {
  if (p.is_zero()) throw InvalidCurve("find_roots of the zero polynomial");
  std::vector<Root> out;
  Poly rest = p;
  for (std::uint32_t v = 0; v < k.order() && rest.degree() > 0; ++v) {
    const Fe x(v);
    if (!eval(k, rest, x).is_zero()) continue;
    unsigned m = 0;
    const Poly lin = Poly::linear(x);
    for (;;) {
      auto [q, r] = divmod(k, rest, lin);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++m;
    }
    out.push_back({x, m});
  }
  return out;
}

/// Reduced fraction num/den: gcd(num, den) = 1 and den monic. The zero
/// function is 0/1.
class RationalFn {
 public:
  RationalFn() : den_(Poly::constant(kOne)) {}
  RationalFn(const FieldCtx& k, Poly num, Poly den) { assign(k, std::move(num), std::move(den)); }
  static RationalFn from_poly(Poly p) {
    RationalFn f;
    f.num_ = std::move(p);
    return f;
  }

  [[nodiscard]] const Poly& num() const { return num_; }
  [[nodiscard]] const Poly& den() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  friend bool operator==(const RationalFn&, const RationalFn&) = default;

 private:
  void assign(const FieldCtx& k, Poly num, Poly den) {
    if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num.is_zero()) {
      num_ = {};
      den_ = Poly::constant(kOne);
      return;
    }
    const Poly g = gcd(k, num, den);
    num = divmod(k, num, g).first;
    den = divmod(k, den, g).first;
    const Fe li = k.inv(den.lead());
    num_ = scale(k, num, li);
    den_ = scale(k, den, li);
  }

  Poly num_;
  Poly den_;
};

inline RationalFn add(const FieldCtx& k, const RationalFn& a, const RationalFn& b) {
  return {k, mul(k, a.num(), b.den()) + mul(k, b.num(), a.den()), mul(k, a.den(), b.den())};
}

inline RationalFn mul(const FieldCtx& k, const RationalFn& a, const RationalFn& b) {
  return {k, mul(k, a.num(), b.num()), mul(k, a.den(), b.den())};
}

/// f(beta + 1/x): moves the point x = beta to infinity and infinity to 0.
inline RationalFn invert_about(const FieldCtx& k, const RationalFn& f, Fe beta) {
  const Poly ns = taylor_shift(k, f.num(), beta);
  const Poly ds = taylor_shift(k, f.den(), beta);
  const int top = std::max(ns.degree(), ds.degree());
  auto reverse_to = [&](const Poly& p) {
    std::vector<Fe> c(static_cast<std::size_t>(top + 1));
    for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(top - i)] = p[static_cast<std::size_t>(i)];
    return Poly(std::move(c));
  };
  return {k, reverse_to(ns), reverse_to(ds)};
}

/// Principal part at a finite pole: f contains sum_i coeffs[i-1] (x - alpha)^-i.
struct PoleTail {
  Fe alpha;
  std::vector<Fe> coeffs;
  friend bool operator==(const PoleTail&, const PoleTail&) = default;
};

struct PartialFractions {
  Poly poly_part;
  std::vector<PoleTail> tails;  // sorted by alpha
  friend bool operator==(const PartialFractions&, const PartialFractions&) = default;
};

/// f = poly_part + sum over poles of the principal parts. Requires the
/// denominator to split into linear factors over the field.
inline PartialFractions partial_fractions(const FieldCtx& k, const RationalFn& f) {
  auto [q, rem] = divmod(k, f.num(), f.den());
  PartialFractions out{std::move(q), {}};
  if (f.den().degree() == 0) return out;

  const auto roots = find_roots(k, f.den());
  int split_degree = 0;
  for (const auto& r : roots) split_degree += static_cast<int>(r.multiplicity);
  if (split_degree != f.den().degree())
    throw FieldTooSmall("denominator has an irreducible factor of degree > 1 over GF(2^" +
                        std::to_string(k.degree()) + "); enlarge the field");

  for (const auto& [alpha, m] : roots) {
    // rem / den = N(u) / (u^m D(u)) with u = x - alpha; expand N/D to order m.
    const Poly cofactor = divmod(k, f.den(), pow(k, Poly::linear(alpha), m)).first;
    const Poly n_shift = taylor_shift(k, rem, alpha);
    const Poly d_shift = taylor_shift(k, cofactor, alpha);
    const Fe d0_inv = k.inv(d_shift[0]);
    std::vector<Fe> series(m);
    for (unsigned i = 0; i < m; ++i) {
      Fe acc = n_shift[i];
      for (unsigned j = 1; j <= i; ++j) acc += k.mul(d_shift[j], series[i - j]);
      series[i] = k.mul(acc, d0_inv);
    }
    PoleTail tail{alpha, std::vector<Fe>(m)};
    for (unsigned i = 1; i <= m; ++i) tail.coeffs[i - 1] = series[m - i];
    while (!tail.coeffs.empty() && tail.coeffs.back().is_zero()) tail.coeffs.pop_back();
    if (!tail.coeffs.empty()) out.tails.push_back(std::move(tail));
  }
  return out;
}

/// Inverse of partial_fractions.
inline RationalFn recombine(const FieldCtx& k, const PartialFractions& pf) {
  RationalFn acc = RationalFn::from_poly(pf.poly_part);
  for (const auto& t : pf.tails) {
    // sum_i b_i u^-i = (sum_i b_i u^(m-i)) / u^m
    const auto m = static_cast<unsigned>(t.coeffs.size());
    Poly numer;
    for (unsigned i = 1; i <= m; ++i) {
      numer = numer + mul(k, Poly::constant(t.coeffs[i - 1]), pow(k, Poly::linear(t.alpha), m - i));
    }
    acc = add(k, acc, RationalFn(k, numer, pow(k, Poly::linear(t.alpha), m)));
  }
  return acc;
}

}  // namespace hyp2

#endif  // HYP2_POLY_HPP
