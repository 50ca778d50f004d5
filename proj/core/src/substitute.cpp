#include "rescalc/rewrite.hpp"

#include <algorithm>
#include <map>

namespace rescalc {

namespace {

using Routing = std::map<std::string, TermP>;

TermP subst_rec(const TermP& s, const Routing& routing, std::set<std::string>& avoid) {
    if (routing.empty())
        return s;
    if (s->kind == TermKind::Var) {
        auto it = routing.find(s->name);
        return it == routing.end() ? s : it->second;
    }
    auto binders = s->binders;
    std::vector<TermP> kids;
    kids.reserve(s->kids.size());
    for (std::size_t i = 0; i < s->kids.size(); ++i) {
        if (!binds_child(*s, i) || binders.empty()) {
            kids.push_back(subst_rec(s->kids[i], routing, avoid));
            continue;
        }
        Routing inner = routing;
        for (const auto& b : binders)
            inner.erase(b.name);
        std::set<std::string> incoming;
        for (const auto& [x, t] : inner)
            if (is_free_in(x, s->kids[i]))
                for (auto& y : free_vars(t))
                    incoming.insert(y);
        TermP child = s->kids[i];
        std::map<std::string, std::string> renaming;
        for (auto& b : binders)
            if (incoming.count(b.name)) {
                std::string fresh = fresh_name(b.name, avoid);
                avoid.insert(fresh);
                renaming[b.name] = fresh;
                b.name = fresh;
            }
        if (!renaming.empty())
            child = rename_free(child, renaming);
        kids.push_back(subst_rec(child, inner, avoid));
    }
    auto out = std::make_shared<Term>(*s);
    out->binders = std::move(binders);
    out->kids = std::move(kids);
    return out;
}

} // namespace

TermP substitute(const TermP& s, const std::vector<std::string>& xs, const std::vector<TermP>& ts) {
    if (xs.size() != ts.size())
        throw Error(Errc::ArityMismatch, "substituting " + std::to_string(ts.size()) + " terms for " +
                                             std::to_string(xs.size()) + " variables");
    Routing routing;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!is_free_in(xs[i], s))
            throw Error(Errc::NotFree, "variable " + xs[i] + " is not free in " + to_string(s));
        if (!routing.emplace(xs[i], ts[i]).second)
            throw Error(Errc::ArityMismatch, "variable " + xs[i] + " is substituted twice");
    }
    std::set<std::string> avoid = all_names(s);
    for (const auto& t : ts) {
        auto names = all_names(t);
        avoid.insert(names.begin(), names.end());
    }
    return subst_rec(s, routing, avoid);
}

} // namespace rescalc
