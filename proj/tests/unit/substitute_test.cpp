#include "generators.hpp"
#include "oracles.hpp"

#include "rescalc/parse.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>

namespace rescalc {
namespace {

using Names = std::vector<std::string>;

TermP T(const std::string& text) { return parse_term(text); }

Errc failure(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error";
    return Errc::InvalidType;
}

TEST(Substitute, Examples) {
    EXPECT_TRUE(alpha_eq(substitute(var("x"), {"x"}, {T("<a,b>")}), T("<a,b>")));
    EXPECT_TRUE(alpha_eq(substitute(T("<y,x>"), {"x", "y"}, {var("u"), var("v")}), T("<v,u>")));
    EXPECT_TRUE(alpha_eq(substitute(T("<x,z>[z:o := y]"), {"y"}, {T("w[w:o := q]")}), T("<x,z>[z:o := w[w:o := q]]")));
    EXPECT_TRUE(alpha_eq(substitute(T("<a>"), {}, {}), T("<a>")));
}

TEST(Substitute, AvoidsCapture) {
    auto s = T("<x,y>[y:o := z]");
    auto r = substitute(s, {"x"}, {var("y")});
    EXPECT_EQ(free_vars(r), (Names{"y", "z"}));
    EXPECT_TRUE(alpha_eq(r, T("<y,b>[b:o := z]")));
    auto lam = substitute(T("\\<y:o>. f <y, x>"), {"x"}, {var("y")});
    EXPECT_TRUE(alpha_eq(lam, T("\\<b:o>. f <b, y>")));
}

TEST(Substitute, Errors) {
    EXPECT_EQ(failure([] { substitute(T("<x,y>"), {"x", "y"}, {var("u")}); }), Errc::ArityMismatch);
    EXPECT_EQ(failure([] { substitute(T("<x,y>"), {"x", "x"}, {var("u"), var("v")}); }), Errc::ArityMismatch);
    EXPECT_EQ(failure([] { substitute(T("<x,y>"), {"q"}, {var("u")}); }), Errc::NotFree);
    EXPECT_EQ(failure([] { substitute(T("<y>[y:o := z]"), {"y"}, {var("u")}); }), Errc::NotFree);
}

struct Instance {
    testing::TypedTerm s;
    std::vector<std::string> xs;
    std::vector<testing::TypedTerm> ts;
};

// A typed replacement at type a whose free variables are named r<k>_<n>.
testing::TypedTerm replacement(testing::Rng& rng, const TypeP& a, int k) {
    testing::TypedTerm t;
    if (rep_valid(a)) {
        t = testing::random_rep_term_at(rng, Fragment::SymRep, a, 12);
    } else {
        t.ctx = {{"f", arrow({}, a)}};
        t.term = app(var("f"), {});
        t.type = a;
    }
    std::map<std::string, std::string> renaming;
    for (auto& b : t.ctx) {
        auto name = "r" + std::to_string(k) + "_" + b.name;
        renaming[b.name] = name;
        b.name = name;
    }
    t.term = rename_free_safe(t.term, renaming);
    return t;
}

Instance random_instance(testing::Rng& rng) {
    Instance in;
    do
        in.s = testing::random_auto_term(rng, 20);
    while (in.s.ctx.empty());
    for (const auto& b : in.s.ctx) {
        if (!testing::coin(rng, 0.6))
            continue;
        in.xs.push_back(b.name);
        in.ts.push_back(replacement(rng, b.type, static_cast<int>(in.xs.size())));
    }
    return in;
}

std::vector<TermP> terms_of(const std::vector<testing::TypedTerm>& ts) {
    std::vector<TermP> out;
    for (const auto& t : ts)
        out.push_back(t.term);
    return out;
}

TEST(SubstituteProperty, SizeLaw) {
    testing::Rng rng(51);
    for (int i = 0; i < 400; ++i) {
        auto in = random_instance(rng);
        auto r = substitute(in.s.term, in.xs, terms_of(in.ts));
        std::size_t expected = size(in.s.term) - in.xs.size();
        for (const auto& t : in.ts)
            expected += size(t.term);
        EXPECT_EQ(size(r), expected);
    }
}

TEST(SubstituteProperty, AgreesWithOccurrenceOrderDefinition) {
    testing::Rng rng(52);
    for (int i = 0; i < 400; ++i) {
        auto in = random_instance(rng);
        auto by_name = substitute(in.s.term, in.xs, terms_of(in.ts));
        auto by_occurrence = testing::substitute_by_occurrence(in.s.term, in.xs, terms_of(in.ts));
        EXPECT_TRUE(alpha_eq(by_name, by_occurrence)) << to_string(in.s.term);
    }
}

TEST(SubstituteProperty, ReplacementsInAnyOrder) {
    testing::Rng rng(53);
    for (int i = 0; i < 200; ++i) {
        auto in = random_instance(rng);
        std::vector<std::size_t> idx(in.xs.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        Names xs;
        std::vector<TermP> ts;
        for (auto k : idx) {
            xs.push_back(in.xs[k]);
            ts.push_back(in.ts[k].term);
        }
        EXPECT_TRUE(alpha_eq(substitute(in.s.term, xs, ts), substitute(in.s.term, in.xs, terms_of(in.ts))));
    }
}

TEST(SubstituteProperty, SubjectSubstitution) {
    testing::Rng rng(54);
    auto sig = testing::two_atoms(Kind::Autonomous);
    for (int i = 0; i < 300; ++i) {
        auto in = random_instance(rng);
        auto r = substitute(in.s.term, in.xs, terms_of(in.ts));
        Context ctx;
        for (const auto& b : in.s.ctx) {
            auto it = std::find(in.xs.begin(), in.xs.end(), b.name);
            if (it == in.xs.end()) {
                ctx.push_back(b);
            } else {
                const auto& rctx = in.ts[static_cast<std::size_t>(it - in.xs.begin())].ctx;
                ctx.insert(ctx.end(), rctx.begin(), rctx.end());
            }
        }
        EXPECT_NO_THROW(check(*sig, Fragment::Auto, ctx, r, in.s.type)) << to_string(r);
    }
}

TEST(SubstituteProperty, Exchange) {
    testing::Rng rng(55);
    int exercised = 0;
    for (int i = 0; i < 400; ++i) {
        auto in = random_instance(rng);
        if (in.xs.empty() || in.ts[0].ctx.empty())
            continue;
        const auto& t = in.ts[0];
        std::string y = t.ctx[0].name;
        TermP u = replacement(rng, t.ctx[0].type, 99).term;
        auto lhs = substitute(substitute(in.s.term, {in.xs[0]}, {t.term}), {y}, {u});
        auto rhs = substitute(in.s.term, {in.xs[0]}, {substitute(t.term, {y}, {u})});
        EXPECT_TRUE(alpha_eq(lhs, rhs));
        ++exercised;
    }
    EXPECT_GT(exercised, 100);
}

} // namespace
} // namespace rescalc
