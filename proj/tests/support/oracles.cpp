#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace rescalc::testing {

namespace {

bool same_names(const Context& ctx, const TermP& s) {
    auto fv = free_vars(s);
    auto names = context_names(ctx);
    std::sort(fv.begin(), fv.end());
    std::sort(names.begin(), names.end());
    return fv == names;
}

bool is_subsequence(const Context& part, const Context& whole) {
    std::size_t at = 0;
    for (const auto& b : whole)
        if (at < part.size() && part[at].name == b.name)
            ++at;
    return at == part.size();
}

// Calls f(blocks) for every way of reading ctx as an interleaving of `parts`
// premise contexts: each entry of ctx is sent to one block and every block
// keeps the order of ctx. Without symmetry the blocks must be consecutive.
void for_each_split(Fragment system, const Context& ctx, std::size_t parts,
                    const std::function<void(const std::vector<Context>&)>& f) {
    std::vector<std::size_t> owner(ctx.size(), 0);
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == ctx.size()) {
            std::vector<Context> blocks(parts);
            for (std::size_t j = 0; j < ctx.size(); ++j)
                blocks[owner[j]].push_back(ctx[j]);
            f(blocks);
            return;
        }
        for (std::size_t b = 0; b < parts; ++b) {
            if (system == Fragment::Rep && i > 0 && b < owner[i - 1])
                continue;
            owner[i] = b;
            go(i + 1);
        }
    };
    if (parts == 0) {
        if (ctx.empty())
            f({});
        return;
    }
    go(0);
}

} // namespace

std::uint64_t count_derivations(Fragment system, const Context& ctx, const TermP& s, const TypeP& a) {
    switch (s->kind) {
    case TermKind::Var:
        return ctx.size() == 1 && ctx[0].name == s->name && type_eq(ctx[0].type, a) ? 1 : 0;
    case TermKind::List: {
        if (!a->is_tensor() || a->args.size() != s->kids.size())
            return 0;
        std::uint64_t total = 0;
        for_each_split(system, ctx, s->kids.size(), [&](const std::vector<Context>& blocks) {
            std::uint64_t product = 1;
            for (std::size_t i = 0; i < blocks.size() && product > 0; ++i)
                product *= same_names(blocks[i], s->kids[i])
                               ? count_derivations(system, blocks[i], s->kids[i], a->args[i])
                               : 0;
            total += product;
        });
        return total;
    }
    case TermKind::ESub: {
        std::vector<TypeP> comps;
        for (const auto& b : s->binders)
            comps.push_back(b.type);
        TypeP arg_type = tensor(comps);
        auto splits = esub_split_candidates(ctx, s);
        if (system != Fragment::Rep)
            splits.resize(1);
        for (std::size_t split : splits) {
            std::uint64_t total = 0;
            for_each_split(system, ctx, 3, [&](const std::vector<Context>& blocks) {
                Context rest = blocks[0];
                rest.insert(rest.end(), blocks[2].begin(), blocks[2].end());
                if (blocks[0].size() != split || !is_subsequence(rest, ctx))
                    return;
                Context body_ctx = blocks[0];
                body_ctx.insert(body_ctx.end(), s->binders.begin(), s->binders.end());
                body_ctx.insert(body_ctx.end(), blocks[2].begin(), blocks[2].end());
                if (!same_names(body_ctx, s->kids[0]) || !same_names(blocks[1], s->kids[1]))
                    return;
                total += count_derivations(system, body_ctx, s->kids[0], a) *
                         count_derivations(system, blocks[1], s->kids[1], arg_type);
            });
            if (total > 0)
                return total;
        }
        return 0;
    }
    default: return 0;
    }
}

namespace {

bool mentions_any(const TermP& t, const std::vector<Binder>& bs) {
    return std::any_of(bs.begin(), bs.end(), [&](const Binder& b) { return is_free_in(b.name, t); });
}

void moves_at(const TermP& node, std::vector<TermP>& out) {
    for (std::size_t i = 0; i < node->kids.size(); ++i) {
        const TermP& kid = node->kids[i];
        if (kid->kind != TermKind::ESub)
            continue;
        if (binds_child(*node, i) && mentions_any(kid->kids[1], node->binders))
            continue;
        auto kids = node->kids;
        kids[i] = kid->kids[0];
        out.push_back(esub(with_kids(node, std::move(kids)), kid->binders, kid->kids[1]));
    }
    if (node->kind != TermKind::ESub)
        return;
    const TermP& body = node->kids[0];
    const TermP& arg = node->kids[1];
    for (std::size_t j = 0; j < body->kids.size(); ++j) {
        const TermP& target = body->kids[j];
        bool all_inside = std::all_of(node->binders.begin(), node->binders.end(),
                                      [&](const Binder& b) { return is_free_in(b.name, target); });
        if (!all_inside)
            continue;
        if (binds_child(*body, j) && mentions_any(arg, body->binders))
            continue;
        auto kids = body->kids;
        kids[j] = esub(target, node->binders, arg);
        out.push_back(with_kids(body, std::move(kids)));
    }
}

} // namespace

std::vector<TermP> single_moves(const TermP& s) {
    std::vector<TermP> out;
    for (const auto& sub : subterms(s)) {
        std::vector<TermP> local;
        moves_at(sub.term, local);
        for (auto& t : local)
            out.push_back(replace_at(s, sub.pos, std::move(t)));
    }
    return out;
}

std::string alpha_key(const TermP& s) { return to_string(alpha_canonical(s)); }

std::vector<TermP> equiv_closure(const TermP& s, std::size_t limit) {
    std::set<std::string> seen;
    std::vector<TermP> out{clean(s)};
    seen.insert(alpha_key(out.front()));
    for (std::size_t next = 0; next < out.size() && out.size() < limit; ++next) {
        TermP t = out[next];
        for (auto& u : single_moves(t))
            if (seen.insert(alpha_key(u)).second)
                out.push_back(std::move(u));
    }
    return out;
}

namespace {

void free_occurrences(const TermP& s, std::set<std::string>& bound, std::vector<std::string>& out) {
    if (s->kind == TermKind::Var) {
        if (!bound.count(s->name))
            out.push_back(s->name);
        return;
    }
    for (std::size_t i = 0; i < s->kids.size(); ++i) {
        std::vector<std::string> added;
        if (binds_child(*s, i))
            for (const auto& b : s->binders)
                if (bound.insert(b.name).second)
                    added.push_back(b.name);
        free_occurrences(s->kids[i], bound, out);
        for (const auto& x : added)
            bound.erase(x);
    }
}

std::vector<std::string> free_occurrences(const TermP& s) {
    std::set<std::string> bound;
    std::vector<std::string> out;
    free_occurrences(s, bound, out);
    return out;
}

using Pairs = std::vector<std::pair<std::string, TermP>>;

TermP deal(const TermP& s, const Pairs& pairs) {
    if (pairs.empty())
        return s;
    if (s->kind == TermKind::Var)
        return pairs.size() == 1 && pairs[0].first == s->name ? pairs[0].second : s;
    std::set<std::string> wanted;
    for (const auto& p : pairs)
        wanted.insert(p.first);
    std::vector<TermP> kids;
    std::size_t next = 0;
    for (const auto& kid : s->kids) {
        auto occ = free_occurrences(kid);
        std::size_t k = static_cast<std::size_t>(
            std::count_if(occ.begin(), occ.end(), [&](const std::string& x) { return wanted.count(x) > 0; }));
        Pairs mine(pairs.begin() + static_cast<std::ptrdiff_t>(next),
                   pairs.begin() + static_cast<std::ptrdiff_t>(next + k));
        next += k;
        kids.push_back(deal(kid, mine));
    }
    return with_kids(s, std::move(kids));
}

} // namespace

TermP substitute_by_occurrence(const TermP& s, const std::vector<std::string>& xs, const std::vector<TermP>& ts) {
    std::map<std::string, TermP> by_name;
    for (std::size_t i = 0; i < xs.size(); ++i)
        by_name[xs[i]] = ts[i];
    Pairs pairs;
    for (const auto& x : free_occurrences(s))
        if (auto it = by_name.find(x); it != by_name.end())
            pairs.emplace_back(x, it->second);
    return deal(s, pairs);
}

bool in_normal_grammar(const Context& ctx, const TermP& s) {
    std::map<std::string, TypeP> types;
    for (const auto& b : ctx)
        types[b.name] = b.type;
    TermP c = struct_canon(s);
    while (c->kind == TermKind::ESub) {
        if (c->kids[1]->kind != TermKind::Var)
            return false;
        for (const auto& b : c->binders)
            types[b.name] = b.type;
        c = c->kids[0];
    }
    std::function<bool(const TermP&)> core = [&](const TermP& v) {
        if (v->kind == TermKind::Var) {
            auto it = types.find(v->name);
            return it != types.end() && it->second->is_atom();
        }
        if (v->kind != TermKind::List)
            return false;
        return std::all_of(v->kids.begin(), v->kids.end(), core);
    };
    return core(c);
}

} // namespace rescalc::testing
