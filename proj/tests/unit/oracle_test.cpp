#include "generators.hpp"
#include "oracles.hpp"

#include "rescalc/parse.hpp"

#include <gtest/gtest.h>

#include <set>

namespace rescalc {
namespace {

using testing::count_derivations;

TermP T(const std::string& text) { return parse_term(text); }

TEST(Oracle, CountsKnownDerivations) {
    auto o = parse_type("o");
    EXPECT_EQ(count_derivations(Fragment::SymRep, parse_context("x:o"), T("x"), o), 1u);
    EXPECT_EQ(count_derivations(Fragment::SymRep, parse_context("y:o"), T("x"), o), 0u);
    EXPECT_EQ(count_derivations(Fragment::SymRep, parse_context("y:o, x:o"), T("<x,y>"), parse_type("(o*o)")), 1u);
    EXPECT_EQ(count_derivations(Fragment::Rep, parse_context("y:o, x:o"), T("<x,y>"), parse_type("(o*o)")), 0u);
    EXPECT_EQ(count_derivations(Fragment::Rep, parse_context("x:o, y:o"), T("<x,y>"), parse_type("(o*o)")), 1u);
    EXPECT_EQ(count_derivations(Fragment::SymRep, parse_context("x:(), y:()"), T("<>[ := x][ := y]"), unit()), 1u);
    EXPECT_EQ(count_derivations(Fragment::SymRep, {}, T("<<>,<>>"), parse_type("(()*())")), 1u);
}

TEST(Oracle, AgreesWithTheChecker) {
    auto sig = testing::two_atoms(Kind::Representable);
    testing::Rng rng(91);
    for (int i = 0; i < 200; ++i) {
        auto system = i % 2 ? Fragment::Rep : Fragment::SymRep;
        auto t = testing::random_rep_term(rng, system, 9);
        EXPECT_NO_THROW(check(*sig, system, t.ctx, t.term, t.type));
        EXPECT_EQ(count_derivations(system, t.ctx, t.term, t.type), 1u) << to_string(t.term);
    }
}

TEST(Oracle, SingleMoves) {
    auto moves = testing::single_moves(clean(T("<s1[x:o := t], s2>")));
    std::set<std::string> keys;
    for (const auto& m : moves)
        keys.insert(testing::alpha_key(m));
    EXPECT_TRUE(keys.count(testing::alpha_key(T("<s1, s2>[x:o := t]"))));
    for (const auto& m : testing::single_moves(clean(T("\\<x:o>. <y>[y:o := x]"))))
        EXPECT_EQ(m->kind, TermKind::Abs) << to_string(m);
    auto in = testing::single_moves(clean(T("<x, y>[x:o := t]")));
    ASSERT_EQ(in.size(), 1u);
    EXPECT_EQ(testing::alpha_key(in[0]), testing::alpha_key(T("<x[x:o := t], y>")));
}

TEST(Oracle, ClosureOfCommutingUnits) {
    auto cls = testing::equiv_closure(T("<>[ := x][ := y]"));
    std::set<std::string> keys;
    for (const auto& c : cls)
        keys.insert(testing::alpha_key(c));
    EXPECT_TRUE(keys.count(testing::alpha_key(T("<>[ := y][ := x]"))));
    EXPECT_EQ(testing::equiv_closure(T("x")).size(), 1u);
}

TEST(Oracle, SubstituteByOccurrence) {
    auto s = T("<y, x>");
    auto r = testing::substitute_by_occurrence(s, {"x", "y"}, {T("a"), T("b")});
    EXPECT_EQ(to_string(r), "<b,a>");
    auto e = testing::substitute_by_occurrence(T("<p,q>[p:o,q:o := x]"), {"x"}, {T("<u,v>")});
    EXPECT_EQ(to_string(e), "<p,q>[p:o,q:o := <u,v>]");
}

TEST(Oracle, NormalGrammar) {
    auto ctx = parse_context("w:(o*o), z:o");
    EXPECT_TRUE(testing::in_normal_grammar(ctx, T("<z,<b,a>>[a:o,b:o := w]")));
    EXPECT_FALSE(testing::in_normal_grammar(ctx, T("<z,w>")));
    EXPECT_FALSE(testing::in_normal_grammar(ctx, T("<z,<b,a>>[a:o,b:o := <c,d>[c:o,d:o := w]]")));
    EXPECT_TRUE(testing::in_normal_grammar(ctx, T("<z,<b>[b:o := a],c>[a:o,c:o := w]")));
    EXPECT_TRUE(testing::in_normal_grammar(parse_context("x:()"), T("<>[ := x]")));
}

} // namespace
} // namespace rescalc
