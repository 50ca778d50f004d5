#include "rescalc/rewrite.hpp"

#include <algorithm>
#include <map>

namespace rescalc {

const char* redex_kind_name(RedexKind k) {
    switch (k) {
    case RedexKind::Beta1: return "Beta1";
    case RedexKind::Beta2: return "Beta2";
    case RedexKind::Eta1: return "Eta1";
    case RedexKind::Eta2: return "Eta2";
    }
    return "?";
}

std::string FreshSupply::next() {
    for (;;) {
        std::string candidate = "y" + std::to_string(++counter_);
        if (avoid_.insert(candidate).second)
            return candidate;
    }
}

namespace {

using TypeMap = std::map<Position, TypeP>;

TypeMap typed_positions(const Signature& sig, Fragment system, const Context& ctx, const TermP& s) {
    DerivationP d;
    try {
        d = derive(sig, system, ctx, s);
    } catch (const Error& e) {
        throw Error(Errc::IllTyped, e.what(), e.where());
    }
    TypeMap out;
    for (auto& [pos, node] : derivation_nodes(d))
        out.emplace(pos, node->type);
    return out;
}

// The node reached by descending through explicit-substitution bodies.
const Term* strip_lets(const TermP& s) {
    const Term* t = s.get();
    while (t->kind == TermKind::ESub)
        t = t->kids[0].get();
    return t;
}

// Climbs out of the bodies of enclosing explicit substitutions and reports
// the constructor and child index reached, if any.
std::pair<const Term*, int> chain_parent(const TermP& root, Position pos) {
    while (!pos.empty()) {
        int last = pos.back();
        pos.pop_back();
        const Term* parent = subterm_at(root, pos).get();
        if (parent->kind != TermKind::ESub || last != 0)
            return {parent, last};
    }
    return {nullptr, -1};
}

bool eta1_reachable(const TermP& root, const Position& pos) {
    auto [parent, index] = chain_parent(root, pos);
    return !(parent && parent->kind == TermKind::ESub && index == 1);
}

bool eta2_reachable(const TermP& root, const Position& pos) {
    auto [parent, index] = chain_parent(root, pos);
    return !(parent && parent->kind == TermKind::App && index == 0);
}

bool is_eta1_site(const TermP& root, const Subterm& st, const TypeP& type) {
    return type->is_tensor() && !is_LT(st.term) && eta1_reachable(root, st.pos);
}

bool is_eta2_site(const TermP& root, const Subterm& st, const TypeP& type) {
    return type->is_arrow() && !is_AT(st.term) && eta2_reachable(root, st.pos);
}

std::vector<Redex> redexes_of(const TermP& s, const TypeMap& types) {
    std::vector<Redex> out;
    for (const auto& st : subterms(s)) {
        const auto& t = st.term;
        if (t->kind == TermKind::ESub) {
            const Term* inner = strip_lets(t->kids[1]);
            if (inner->kind == TermKind::List && inner->kids.size() == t->binders.size())
                out.push_back({st.pos, RedexKind::Beta1});
        }
        if (t->kind == TermKind::App) {
            const Term* inner = strip_lets(t->kids[0]);
            if (inner->kind == TermKind::Abs && inner->binders.size() + 1 == t->kids.size())
                out.push_back({st.pos, RedexKind::Beta2});
        }
        const TypeP& type = types.at(st.pos);
        if (is_eta1_site(s, st, type))
            out.push_back({st.pos, RedexKind::Eta1});
        if (is_eta2_site(s, st, type))
            out.push_back({st.pos, RedexKind::Eta2});
    }
    return out;
}

struct LetFrame {
    std::vector<Binder> binders;
    TermP arg;
};

// Splits L[core] into the frames of L (outermost first) and core.
TermP peel_lets(const TermP& s, std::vector<LetFrame>& frames) {
    TermP t = s;
    while (t->kind == TermKind::ESub) {
        frames.push_back({t->binders, t->kids[1]});
        t = t->kids[0];
    }
    return t;
}

TermP rewrap_lets(TermP core, const std::vector<LetFrame>& frames) {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it)
        core = esub(core, it->binders, it->arg);
    return core;
}

std::vector<std::string> binder_names(const std::vector<Binder>& bs) {
    std::vector<std::string> out;
    for (const auto& b : bs)
        out.push_back(b.name);
    return out;
}

TermP contract(const TermP& node, RedexKind kind, const TypeP& type, FreshSupply& fresh) {
    switch (kind) {
    case RedexKind::Beta1: {
        std::vector<LetFrame> frames;
        TermP lst = peel_lets(node->kids[1], frames);
        return rewrap_lets(substitute(node->kids[0], binder_names(node->binders), lst->kids), frames);
    }
    case RedexKind::Beta2: {
        std::vector<LetFrame> frames;
        TermP lam = peel_lets(node->kids[0], frames);
        std::vector<TermP> args(node->kids.begin() + 1, node->kids.end());
        return rewrap_lets(substitute(lam->kids[0], binder_names(lam->binders), args), frames);
    }
    case RedexKind::Eta1: {
        std::vector<Binder> bs;
        std::vector<TermP> vars;
        for (const auto& a : type->args) {
            bs.push_back({fresh.next(), a});
            vars.push_back(var(bs.back().name));
        }
        return esub(list(std::move(vars)), std::move(bs), node);
    }
    case RedexKind::Eta2: {
        std::vector<Binder> bs;
        std::vector<TermP> vars;
        for (const auto& a : type->args) {
            bs.push_back({fresh.next(), a});
            vars.push_back(var(bs.back().name));
        }
        return abs(std::move(bs), app(node, std::move(vars)));
    }
    }
    throw Error(Errc::InvalidRedex, "unknown redex kind");
}

TermP apply_redex(const TermP& s, const Redex& r, const TypeMap& types, FreshSupply& fresh) {
    TermP c = clean(s);
    fresh.avoid(all_names(c));
    TermP node = subterm_at(c, r.position);
    return replace_at(c, r.position, contract(node, r.kind, types.at(r.position), fresh));
}

Measures measures_of(const TermP& s, const TypeMap& types) {
    Measures m;
    m.size = size(s);
    for (const auto& st : subterms(s)) {
        const TypeP& type = types.at(st.pos);
        if (is_eta1_site(s, st, type))
            m.eta1 += type_size(type, SizeFlavor::Tensor1);
        if (is_eta2_site(s, st, type))
            m.eta2 += type_size(type, SizeFlavor::Arrow2);
    }
    return m;
}

} // namespace

std::vector<Redex> find_redexes(const Signature& sig, Fragment system, const Context& ctx, const TermP& s) {
    return redexes_of(s, typed_positions(sig, system, ctx, s));
}

TermP step(const Signature& sig, Fragment system, const Context& ctx, const TermP& s, const Redex& r,
           FreshSupply& fresh) {
    auto types = typed_positions(sig, system, ctx, s);
    auto all = redexes_of(s, types);
    if (std::find(all.begin(), all.end(), r) == all.end())
        throw Error(Errc::InvalidRedex, std::string("no ") + redex_kind_name(r.kind) + " redex here", r.position);
    for (const auto& b : ctx)
        fresh.avoid({b.name});
    return apply_redex(s, r, types, fresh);
}

TermP step(const Signature& sig, Fragment system, const Context& ctx, const TermP& s, const Redex& r) {
    FreshSupply fresh;
    return step(sig, system, ctx, s, r, fresh);
}

Measures measures(const Signature& sig, Fragment system, const Context& ctx, const TermP& s) {
    return measures_of(s, typed_positions(sig, system, ctx, s));
}

std::size_t measure(const Signature& sig, Fragment system, const Context& ctx, const TermP& s, MeasureKind kind) {
    if (kind == MeasureKind::Size)
        return size(s);
    auto m = measures(sig, system, ctx, s);
    return kind == MeasureKind::Eta1 ? m.eta1 : m.eta2;
}

std::vector<std::string> trace_lines(const Trace& t) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& st = t.steps[i];
        out.push_back("step " + std::to_string(i + 1) + ": " + redex_kind_name(st.redex.kind) + " @ " +
                      position_string(st.redex.position) + " ; size=" + std::to_string(st.after.size) +
                      " eta1=" + std::to_string(st.after.eta1) + " eta2=" + std::to_string(st.after.eta2));
    }
    return out;
}

std::size_t step_budget(const Measures& m) { return m.size + m.eta1 + m.eta2 + 16; }

Normalization normalize(const Signature& sig, Fragment system, const Context& ctx, const TermP& s) {
    auto types = typed_positions(sig, system, ctx, s);
    Normalization out;
    out.trace.initial = s;
    out.trace.start = measures_of(s, types);
    std::size_t budget = step_budget(out.trace.start);

    FreshSupply fresh(all_names(s));
    for (const auto& b : ctx)
        fresh.avoid({b.name});
    TermP cur = s;
    for (;;) {
        auto rs = redexes_of(cur, types);
        if (rs.empty())
            break;
        if (out.trace.steps.size() >= budget)
            throw Error(Errc::StepBudgetExceeded,
                        "normalization did not finish within " + std::to_string(budget) + " steps");
        cur = apply_redex(cur, rs.front(), types, fresh);
        types = typed_positions(sig, system, ctx, cur);
        out.trace.steps.push_back({rs.front(), cur, measures_of(cur, types)});
    }
    out.nf = cur;
    return out;
}

bool equivalent(const Signature& sig, Fragment system, const Context& ctx, const TermP& s, const TermP& t,
                const TypeP& a) {
    for (const auto& u : {s, t}) {
        try {
            check(sig, system, ctx, u, a);
        } catch (const Error& e) {
            throw Error(Errc::IllTyped, e.what(), e.where());
        }
    }
    return struct_equiv(normalize(sig, system, ctx, s).nf, normalize(sig, system, ctx, t).nf);
}

} // namespace rescalc
