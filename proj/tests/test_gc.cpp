#include <gtest/gtest.h>

#include <map>
#include <set>

#include "hyp2/classify.hpp"
#include "support/final_type_module.hpp"

namespace {

using namespace hyp2;

// Span of `gens` closed under F and V.
std::size_t closure_dim(const SemilinearModule& m, std::vector<Vec> gens) {
  Subspace s = Subspace::span(m.ctx(), gens, m.dim());
  for (;;) {
    const Subspace next = s.sum(m.ctx(), sl_map(m, s, SlOp::F)).sum(m.ctx(), sl_map(m, s, SlOp::V));
    if (next == s) return s.dim();
    s = next;
  }
}

std::vector<unsigned> floor_half(unsigned c) {
  std::vector<unsigned> nu;
  for (unsigned i = 1; i <= c; ++i) nu.push_back(i / 2);
  return nu;
}

TEST(Gc, ClosedFormExamples) {
  EXPECT_EQ(gc_eo_closed(1), EOType{{0}});
  EXPECT_EQ(gc_eo_closed(4), (EOType{{0, 1, 1, 2}}));
  EXPECT_EQ(gc_eo_closed(7), (EOType{{0, 1, 1, 2, 2, 3, 3}}));
}

TEST(Gc, SmallCasesByHand) {
  // c = 1: F X1 = V X1 = Y1.
  const GcModule g = build_gc(1);
  EXPECT_EQ(g.module.apply_f(g.module.basis_vector(g.x(1))), g.module.basis_vector(g.y(1)));
  EXPECT_EQ(g.module.apply_v(g.module.basis_vector(g.x(1))), g.module.basis_vector(g.y(1)));
  EXPECT_TRUE(is_zero(g.module.apply_f(g.module.basis_vector(g.y(1)))));
  EXPECT_TRUE(is_zero(g.module.apply_v(g.module.basis_vector(g.y(1)))));
  // c = 2: (F^2 + V^2) X2 = 0 and X2 generates.
  const GcModule g2 = build_gc(2);
  const Vec x2 = g2.module.basis_vector(g2.x(2));
  EXPECT_TRUE(is_zero(add(apply_power(g2.module, x2, 2, SlOp::F), apply_power(g2.module, x2, 2, SlOp::V))));
  EXPECT_EQ(closure_dim(g2.module, {x2}), 4U);
}

TEST(Gc, EoTypeMatchesClosedFormUpTo24) {
  for (unsigned c = 1; c <= 24; ++c) {
    const GcModule g = build_gc(c);
    ASSERT_TRUE(check_bt1(g.module).ok()) << c;
    EXPECT_EQ(eo_type(g.module), gc_eo_closed(c)) << c;
    EXPECT_EQ(gc_eo_closed(c), EOType{floor_half(c)});
  }
}

TEST(Gc, AgreesWithIndependentConstructions) {
  // The standard module of the final type floor(i/2), and the de Rham module
  // of a one-branch curve with d = 2c + 1, are both G_c.
  const FieldCtx k(3);
  for (unsigned c = 1; c <= 12; ++c) {
    const EOType e = eo_type(build_gc(c).module);
    EXPECT_EQ(eo_type(oracle::final_type_module(floor_half(c))), e) << c;
    EXPECT_EQ(eo_type(build_drham(random_curve(k, {2 * c + 1}, c)).module), e) << c;
  }
}

TEST(Gc, TabulatedReadingIsNotGcForEveryC) {
  // With F and V in the tabulated roles the module is still BT1, but at
  // c = 6 its canonical flag gives [0,0,1,2,3,3].
  const GcModule t = build_gc_tabulated(6);
  ASSERT_TRUE(check_bt1(t.module).ok());
  EXPECT_EQ(eo_type(t.module), (EOType{{0, 0, 1, 2, 3, 3}}));
  for (unsigned c : {1U, 2U, 3U, 4U, 5U, 7U, 8U, 10U}) EXPECT_EQ(eo_type(build_gc_tabulated(c).module), gc_eo_closed(c)) << c;
}

TEST(Gc, IotaInvariants) {
  for (unsigned c = 1; c <= 40; ++c) {
    const IotaData d = iota_data(c);
    EXPECT_EQ(d.index.size(), (c + 1) / 2);
    EXPECT_EQ(d.index.front(), (c + 2) / 2);  // ceil((c+1)/2)
    std::set<unsigned> s_vals, t_vals, iota_vals;
    for (unsigned j : d.index) {
      EXPECT_EQ(j, (1U << d.e.at(j)) * d.ell.at(j));
      EXPECT_EQ(d.ell.at(j) % 2, 1U);
      EXPECT_EQ(d.t.at(j), (1U << d.eps.at(j)) * d.m.at(j));
      EXPECT_EQ(d.t.at(d.iota.at(j)), d.s.at(j));
      s_vals.insert(d.s.at(j));
      t_vals.insert(d.t.at(j));
      iota_vals.insert(d.iota.at(j));
    }
    const std::set<unsigned> index(d.index.begin(), d.index.end());
    EXPECT_EQ(s_vals, index);
    EXPECT_EQ(t_vals, index);
    EXPECT_EQ(iota_vals, index);
  }
}

TEST(Gc, IotaExamples) {
  const IotaData d7 = iota_data(7);
  for (unsigned j : d7.index) EXPECT_EQ(d7.iota.at(j), j);
  // Partners read off the relation rows F^a X_j + V^b X_partner.
  const std::map<unsigned, unsigned> c5{{3, 5}, {4, 3}, {5, 4}};
  const std::map<unsigned, unsigned> c9{{5, 6}, {6, 9}, {7, 8}, {8, 5}, {9, 7}};
  EXPECT_EQ(iota_data(5).iota, c5);
  EXPECT_EQ(iota_data(9).iota, c9);
  EXPECT_EQ(gc_summands(5), 1U);
  EXPECT_EQ(gc_summands(9), 1U);
}

TEST(Gc, RelationTable) {
  const std::map<unsigned, std::string> rows{
      {1, "FX₁+VX₁"},
      {2, "F²X₂+V²X₂"},
      {3, "F²X₂+VX₂, FX₃+V²X₃"},
      {4, "FX₃+VX₃, F³X₄+V³X₄"},
      {5, "FX₃+V³X₅, F³X₄+VX₃, FX₅+VX₄"},
      {6, "F³X₄+V²X₅, FX₅+V³X₆, F²X₆+VX₄"},
      {7, "F³X₄+VX₄, FX₅+VX₅, F²X₆+V²X₆, FX₇+V³X₇"},
      {8, "FX₅+V²X₇, F²X₆+VX₅, FX₇+VX₆, F⁴X₈+V⁴X₈"},
      {9, "FX₅+VX₆, F²X₆+V⁴X₉, FX₇+V²X₈, F⁴X₈+VX₅, FX₉+VX₇"},
      {10, "F²X₆+VX₆, FX₇+VX₇, F⁴X₈+V²X₈, FX₉+V²X₉, F²X₁₀+V⁴X₁₀"},
  };
  for (const auto& [c, text] : rows) EXPECT_EQ(relations_text(gc_relations(c)), text) << c;
  const std::map<unsigned, unsigned> summands{{1, 1}, {2, 1}, {3, 2}, {4, 2},  {5, 1},
                                              {6, 1}, {7, 4}, {8, 2}, {9, 1}, {10, 5}};
  for (const auto& [c, n] : summands) EXPECT_EQ(gc_summands(c), n) << c;
  EXPECT_EQ(generators_text(5), "X₃-X₅");
  EXPECT_EQ(generators_text(10), "X₆-X₁₀");
  EXPECT_EQ(generators_text(1), "X₁");
}

TEST(Gc, RelationsAnnihilate) {
  for (unsigned c = 1; c <= 24; ++c) {
    const GcModule g = build_gc(c);
    const GcModule t = build_gc_tabulated(c);
    auto x = [&](unsigned j) { return g.x(j); };
    for (const auto& r : gc_relations(c)) {
      EXPECT_TRUE(is_zero(evaluate_relation(t.module, r, x))) << c << " " << to_string(r);
      EXPECT_TRUE(is_zero(evaluate_relation(g.module, r, x, Reading::Exchanged))) << c << " " << to_string(r);
    }
  }
}

TEST(Gc, GeneratorsAndANumber) {
  for (unsigned c = 1; c <= 24; ++c) {
    const GcModule g = build_gc(c);
    const IotaData d = iota_data(c);
    std::vector<Vec> gens;
    for (unsigned j : d.index) gens.push_back(g.module.basis_vector(g.x(j)));
    EXPECT_EQ(closure_dim(g.module, gens), 2 * c) << c;
    EXPECT_EQ(a_number(g.module), d.index.size()) << c;
    EXPECT_EQ(a_number_from_v2(g.module), (c + 1) / 2) << c;
  }
}

TEST(Gc, IotaIdentityExactlyWhenSummandsEqualANumber) {
  std::set<unsigned> identity;
  for (unsigned c = 1; c <= 24; ++c) {
    const IotaData d = iota_data(c);
    bool id = true;
    for (unsigned j : d.index) id = id && d.iota.at(j) == j;
    EXPECT_EQ(id, gc_summands(c) == d.index.size()) << c;
    if (id && c <= 10) identity.insert(c);
  }
  EXPECT_EQ(identity, (std::set<unsigned>{1, 2, 3, 4, 7, 10}));
}

// N_i = <t_1..t_i> for the given generator indices, N_0 = 0.
std::vector<Subspace> flag_from(const SemilinearModule& m, const std::vector<std::size_t>& gens) {
  std::vector<Subspace> n{Subspace::zero(m.dim())};
  std::vector<Vec> acc;
  for (std::size_t t : gens) {
    acc.push_back(m.basis_vector(t));
    n.push_back(Subspace::span(m.ctx(), acc, m.dim()));
  }
  return n;
}

TEST(Gc, SplitG7Module) {
  const SemilinearModule m = build_g7_split();
  ASSERT_TRUE(check_bt1(m).ok());
  EXPECT_EQ(eo_type(m), gc_eo_closed(7));
  const auto n = flag_from(m, g7_split_final_flag());
  for (std::size_t i = 0; i <= 14; ++i) {
    ASSERT_EQ(n[i].dim(), i);
    EXPECT_EQ(sl_map(m, n[i], SlOp::V), n[i / 2]) << i;
    EXPECT_EQ(sl_map(m, n[i], SlOp::FInv), n[7 + (i + 1) / 2]) << i;
  }
  // The canonical filtration is complete, so the final filtration is unique.
  const auto chain = canonical_filtration(m);
  ASSERT_EQ(chain.size(), 15U);
  for (std::size_t i = 0; i <= 14; ++i) EXPECT_EQ(chain[i], n[i]) << i;
}

TEST(Gc, SplitG7ListedFlagIsNotStable) {
  const SemilinearModule m = build_g7_split();
  const auto n = flag_from(m, g7_split_flag_generators());
  // N_6 = <V_C^3, V_C^2, V_B^2, V_C, V_A, F_C'^3> maps onto <V_C^3, V_C^2> only.
  EXPECT_EQ(sl_map(m, n[6], SlOp::V).dim(), 2U);
  // F(F_B) = V_B^2 lies in N_3 but F_B is not in N_9.
  EXPECT_NE(sl_map(m, n[3], SlOp::FInv), n[9]);
  std::size_t bad = 0;
  for (std::size_t i = 0; i <= 14; ++i) {
    bad += sl_map(m, n[i], SlOp::V) != n[i / 2];
    bad += sl_map(m, n[i], SlOp::FInv) != n[7 + (i + 1) / 2];
  }
  EXPECT_EQ(bad, 8U);
}

TEST(Gc, I43Fixture) {
  const SemilinearModule m = build_i43();
  ASSERT_TRUE(check_bt1(m).ok());
  EXPECT_EQ(eo_type(m), (EOType{{0, 0, 1, 1}}));
  for (const auto& r : i43_relations())
    EXPECT_TRUE(is_zero(evaluate_relation(m, r, [](unsigned j) { return std::size_t{j} - 1; }))) << to_string(r);
}

TEST(Gc, OrdinaryModule) {
  const SemilinearModule m = build_ordinary();
  EXPECT_TRUE(check_bt1(m).ok());
  EXPECT_EQ(eo_type(m), EOType{{1}});
  EXPECT_EQ(p_rank(m), 1U);
  EXPECT_EQ(a_number(m), 0U);
}

TEST(Gc, RejectsZero) {
  EXPECT_THROW(build_gc(0), DimensionMismatch);
  EXPECT_THROW(iota_data(0), DimensionMismatch);
}

}  // namespace
