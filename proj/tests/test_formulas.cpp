#include <zerosum/atoms.hpp>
#include <zerosum/formulas.hpp>

#include <gtest/gtest.h>

using namespace zerosum;

namespace {

std::string clause_of(std::vector<std::int64_t> f) {
  auto c = d_equals_dstar_known(Group::make(f));
  return c ? c->tag() : "none";
}

std::vector<Group> corpus() {
  std::vector<Group> out;
  for (auto f : std::vector<std::vector<std::int64_t>>{
           {2, 2}, {2, 4}, {3, 3}, {2, 6}, {4, 4}, {3, 9}, {6, 12},
           {2, 2, 2}, {2, 2, 4}, {3, 3, 3}, {2, 4, 8}, {6, 6, 6}, {3, 6, 6},
           {2, 2, 2, 2}, {2, 2, 4, 8}, {2, 2, 6, 6}, {3, 3, 3, 9}, {6, 6, 6, 6},
           {2, 2, 2, 2, 2}, {2, 6, 6, 6, 6}, {3, 3, 3, 3, 3}, {2, 2, 4, 4, 12},
           {2, 2, 2, 2, 2, 2}, {2, 2, 2, 6, 6, 12}})
    out.push_back(Group::make(f));
  return out;
}

} // namespace

TEST(DStar, Examples) {
  EXPECT_EQ(d_star(Group::make({2, 2, 2})), 4);
  EXPECT_EQ(d_star(Group::make({6})), 6);
  EXPECT_EQ(d_star(TrivialGroup{}), 1);
  EXPECT_EQ(d_star(GroupOrTrivial{TrivialGroup{}}), 1);
  EXPECT_EQ(d_star(Group::make({2, 2, 6})), 8);
}

TEST(Clauses, Examples) {
  EXPECT_EQ(clause_of({2, 4}), "clause:a");
  auto d = d_equals_dstar_known(Group::make({2, 2, 6}));
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->clause, 'd');
  EXPECT_EQ(d->detail, "m=1, n=3");
  EXPECT_EQ(clause_of({6, 6, 6, 6}), "none");
}

TEST(Clauses, EachPattern) {
  EXPECT_EQ(clause_of({12}), "clause:a");
  EXPECT_EQ(clause_of({3, 3, 9}), "clause:b");
  EXPECT_EQ(clause_of({2, 2, 2, 2, 2}), "clause:b");
  EXPECT_EQ(clause_of({2, 2, 12}), "clause:c");
  EXPECT_EQ(clause_of({3, 3, 18}), "clause:c");
  EXPECT_EQ(clause_of({3, 9, 18}), "none");
  EXPECT_EQ(clause_of({2, 4, 12}), "clause:d");
  EXPECT_EQ(clause_of({3, 6, 6}), "clause:e");
  EXPECT_EQ(clause_of({3, 6, 12}), "clause:e");
  EXPECT_EQ(clause_of({6, 6, 6}), "clause:f");
  EXPECT_EQ(clause_of({6, 6, 18}), "clause:f");
  EXPECT_EQ(clause_of({2, 2, 2, 6}), "clause:g");
  EXPECT_EQ(clause_of({2, 2, 2, 2, 140}), "clause:h");
  EXPECT_EQ(clause_of({2, 2, 2, 2, 138}), "none");
  EXPECT_EQ(clause_of({2, 2, 2, 2, 2, 300}), "clause:i");
  EXPECT_EQ(clause_of({2, 2, 2, 2, 2, 296}), "clause:c");
  EXPECT_EQ(clause_of({3, 3, 6}), "none");
  EXPECT_EQ(clause_of({6, 6, 12}), "none");
}

TEST(Bounds, LowerExamples) {
  EXPECT_EQ(beta_sep_lower_bound(Group::make({2, 2, 2, 2})), 5);
  EXPECT_EQ(beta_sep_lower_bound(Group::make({3, 3, 3})), 6);
  EXPECT_EQ(beta_sep_lower_bound(Group::make({2, 2})), 3);
}

TEST(Bounds, UpperExamples) {
  EXPECT_EQ(beta_sep_upper_bound_generic(Group::make({2, 2})), 3);
  EXPECT_EQ(beta_sep_upper_bound_generic(Group::make({3, 3, 3})), 6);
  EXPECT_EQ(beta_sep_upper_bound_generic(Group::make({2, 4})), 6);
}

TEST(Bounds, LowerNotAboveUpperAndAboveTail) {
  for (const auto &g : corpus()) {
    EXPECT_LE(beta_sep_lower_bound(g), beta_sep_upper_bound_generic(g)) << g.to_string();
    EXPECT_GT(beta_sep_lower_bound(g), beta_sep_tail_sum(g)) << g.to_string();
  }
}

TEST(MainTheorem, OddRankTrivialSubgroup) {
  auto t = main_theorem_value(Group::make({3, 3, 3}));
  EXPECT_EQ(t.kind, TheoremKind::Exact);
  EXPECT_EQ(t.value, 6);
  EXPECT_EQ(t.s, 2);
  EXPECT_EQ(t.p, 3);
  EXPECT_TRUE(is_trivial(t.subgroup));
  EXPECT_EQ(t.hypothesis_checked_by, "trivial_subgroup");
}

TEST(MainTheorem, EvenRankUpperBound) {
  auto t = main_theorem_value(Group::make({2, 2, 4, 8}));
  EXPECT_EQ(t.kind, TheoremKind::UpperBoundOnly);
  EXPECT_EQ(t.value, 13);
  EXPECT_EQ(t.s, 2);
  EXPECT_EQ(t.p, 2);
  ASSERT_FALSE(is_trivial(t.subgroup));
  EXPECT_EQ(std::get<Group>(t.subgroup), Group::make({2, 4}));
  EXPECT_EQ(t.hypothesis_checked_by, "clause:a");
}

TEST(MainTheorem, RankThreeWithFullExponentMiddle) {
  // 4 * (C2 + C4 + C4) is trivial
  auto t = main_theorem_value(Group::make({2, 4, 4}));
  EXPECT_EQ(t.kind, TheoremKind::Exact);
  EXPECT_EQ(t.value, 8);
  EXPECT_TRUE(is_trivial(t.subgroup));
}

TEST(MainTheorem, RejectsCyclic) {
  EXPECT_THROW(main_theorem_value(Group::make({5})), Error);
}

TEST(MainTheorem, UncoveredHypothesis) {
  // n_s G = C3 + C3 + C6, which no clause covers
  auto g = Group::make({2, 2, 2, 6, 6, 12});
  auto t = main_theorem_value(g);
  EXPECT_EQ(t.kind, TheoremKind::HypothesisUnverified);
  EXPECT_EQ(t.hypothesis_checked_by, "none");
  EXPECT_EQ(std::get<Group>(t.subgroup), Group::make({3, 3, 6}));

  TheoremOptions opts;
  opts.brute_force_hypothesis = true;
  opts.node_budget = 1000;
  auto b = main_theorem_value(g, opts);
  EXPECT_EQ(b.kind, TheoremKind::HypothesisUnverified);
  EXPECT_EQ(b.hypothesis_checked_by, "brute_force");
  EXPECT_NE(b.detail.find("incomplete"), std::string::npos);
}

// Whenever a clause certifies n_s G, a brute-force Davenport run agrees.
TEST(MainTheorem, ClauseAgreesWithBruteForce) {
  for (const auto &g : corpus()) {
    auto t = main_theorem_value(g);
    if (is_trivial(t.subgroup))
      continue;
    const auto &h = std::get<Group>(t.subgroup);
    if (h.order() > 32 || t.hypothesis_checked_by.rfind("clause:", 0) != 0)
      continue;
    EXPECT_EQ(davenport(h), d_star(h)) << g.to_string() << " H=" << h.to_string();
  }
}

TEST(Corollaries, Examples) {
  auto a = corollary_values(Group::make({2, 4}));
  ASSERT_TRUE(a);
  EXPECT_EQ(a->value, 5);
  auto b = corollary_values(Group::make({2, 2, 2, 2}));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->value, 5);
  EXPECT_EQ(b->source, "p_group_even_rank");
  auto c = corollary_values(Group::make({2, 6, 6, 6, 6}));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->value, 18);
  EXPECT_EQ(c->source, "rank_5");
  EXPECT_EQ(corollary_values(Group::make({2, 6}))->value, 7);
  EXPECT_FALSE(corollary_values(Group::make({6, 6, 6, 6})).has_value());
  EXPECT_FALSE(corollary_values(Group::make({5})).has_value());
}

TEST(Corollaries, WithinBoundsAndConsistentWithTheorem) {
  for (const auto &g : corpus()) {
    auto c = corollary_values(g);
    if (!c)
      continue;
    EXPECT_GE(c->value, beta_sep_lower_bound(g)) << g.to_string();
    EXPECT_LE(c->value, beta_sep_upper_bound_generic(g)) << g.to_string();
    if (g.rank() % 2 == 1 || g.is_p_group()) {
      auto t = main_theorem_value(g);
      EXPECT_NE(t.kind, TheoremKind::HypothesisUnverified) << g.to_string();
      EXPECT_EQ(c->value, t.value) << g.to_string();
    }
  }
}

TEST(Davenport, EqualsDStarOnClauseTaggedGroups) {
  for (auto f : std::vector<std::vector<std::int64_t>>{
           {2}, {9}, {2, 2}, {2, 4}, {3, 3}, {2, 6}, {4, 4}, {2, 8}, {3, 6},
           {2, 2, 2}, {2, 2, 4}, {2, 2, 6}}) {
    auto g = Group::make(f);
    if (!d_equals_dstar_known(g))
      continue;
    EXPECT_EQ(davenport(g), d_star(g)) << g.to_string();
  }
}
