#include "rescalc/syntax.hpp"

#include <algorithm>
#include <functional>

namespace rescalc {

const char* fragment_name(Fragment f) {
    switch (f) {
    case Fragment::Rep: return "rep";
    case Fragment::SymRep: return "symrep";
    case Fragment::SymClosed: return "symclosed";
    case Fragment::Auto: return "auto";
    }
    return "?";
}

std::optional<Fragment> parse_fragment(const std::string& name) {
    if (name == "rep")
        return Fragment::Rep;
    if (name == "symrep")
        return Fragment::SymRep;
    if (name == "symclosed")
        return Fragment::SymClosed;
    if (name == "auto")
        return Fragment::Auto;
    return std::nullopt;
}

bool is_symmetric(Fragment f) { return f != Fragment::Rep; }

Kind fragment_kind(Fragment f) {
    switch (f) {
    case Fragment::Rep:
    case Fragment::SymRep: return Kind::Representable;
    case Fragment::SymClosed: return Kind::Closed;
    case Fragment::Auto: return Kind::Autonomous;
    }
    return Kind::Autonomous;
}

namespace {

TermP make(TermKind k, std::string name, std::vector<Binder> binders, std::vector<TermP> kids) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    t->name = std::move(name);
    t->binders = std::move(binders);
    t->kids = std::move(kids);
    return t;
}

} // namespace

TermP var(std::string name) { return make(TermKind::Var, std::move(name), {}, {}); }
TermP list(std::vector<TermP> elems) { return make(TermKind::List, {}, {}, std::move(elems)); }
TermP esub(TermP body, std::vector<Binder> binders, TermP arg) {
    return make(TermKind::ESub, {}, std::move(binders), {std::move(body), std::move(arg)});
}
TermP abs(std::vector<Binder> binders, TermP body) {
    return make(TermKind::Abs, {}, std::move(binders), {std::move(body)});
}
TermP app(TermP fun, std::vector<TermP> args) {
    std::vector<TermP> kids;
    kids.reserve(args.size() + 1);
    kids.push_back(std::move(fun));
    for (auto& a : args)
        kids.push_back(std::move(a));
    return make(TermKind::App, {}, {}, std::move(kids));
}
TermP gen(std::string f, std::vector<TermP> args) { return make(TermKind::Gen, std::move(f), {}, std::move(args)); }

TermP with_kids(const TermP& t, std::vector<TermP> kids) { return make(t->kind, t->name, t->binders, std::move(kids)); }

bool binds_child(const Term& t, std::size_t i) {
    return (t.kind == TermKind::ESub && i == 0) || t.kind == TermKind::Abs;
}

static bool bound_here(const Term& t, const std::string& x) {
    return std::any_of(t.binders.begin(), t.binders.end(), [&](const Binder& b) { return b.name == x; });
}

static void collect_free(const TermP& s, std::vector<std::string>& bound, std::vector<std::string>& out) {
    if (s->kind == TermKind::Var) {
        if (std::find(bound.begin(), bound.end(), s->name) == bound.end() &&
            std::find(out.begin(), out.end(), s->name) == out.end())
            out.push_back(s->name);
        return;
    }
    for (std::size_t i = 0; i < s->kids.size(); ++i) {
        std::size_t mark = bound.size();
        if (binds_child(*s, i))
            for (const auto& b : s->binders)
                bound.push_back(b.name);
        collect_free(s->kids[i], bound, out);
        bound.resize(mark);
    }
}

std::vector<std::string> free_vars(const TermP& s) {
    std::vector<std::string> bound, out;
    collect_free(s, bound, out);
    return out;
}

bool is_free_in(const std::string& x, const TermP& s) {
    if (s->kind == TermKind::Var)
        return s->name == x;
    for (std::size_t i = 0; i < s->kids.size(); ++i) {
        if (binds_child(*s, i) && bound_here(*s, x))
            continue;
        if (is_free_in(x, s->kids[i]))
            return true;
    }
    return false;
}

static void collect_occ(const std::vector<std::string>& xs, const TermP& s, std::vector<std::string>& bound,
                        std::vector<std::string>& out) {
    if (s->kind == TermKind::Var) {
        if (std::find(xs.begin(), xs.end(), s->name) != xs.end() &&
            std::find(bound.begin(), bound.end(), s->name) == bound.end())
            out.push_back(s->name);
        return;
    }
    for (std::size_t i = 0; i < s->kids.size(); ++i) {
        std::size_t mark = bound.size();
        if (binds_child(*s, i))
            for (const auto& b : s->binders)
                bound.push_back(b.name);
        collect_occ(xs, s->kids[i], bound, out);
        bound.resize(mark);
    }
}

std::vector<std::string> occurrences(const std::vector<std::string>& xs, const TermP& s) {
    std::vector<std::string> bound, out;
    collect_occ(xs, s, bound, out);
    return out;
}

std::size_t size(const TermP& s) {
    std::size_t n = 1;
    for (const auto& k : s->kids)
        n += size(k);
    return n;
}

bool is_LT(const TermP& s) {
    const Term* t = s.get();
    while (t->kind == TermKind::ESub)
        t = t->kids[0].get();
    return t->kind == TermKind::List;
}

bool is_AT(const TermP& s) {
    const Term* t = s.get();
    while (t->kind == TermKind::ESub)
        t = t->kids[0].get();
    return t->kind == TermKind::Abs;
}

static void collect_subterms(const TermP& s, Position& pos, std::vector<Subterm>& out) {
    out.push_back({pos, s});
    for (std::size_t i = 0; i < s->kids.size(); ++i) {
        pos.push_back(static_cast<int>(i));
        collect_subterms(s->kids[i], pos, out);
        pos.pop_back();
    }
}

std::vector<Subterm> subterms(const TermP& s) {
    std::vector<Subterm> out;
    Position pos;
    collect_subterms(s, pos, out);
    return out;
}

TermP subterm_at(const TermP& s, const Position& p) {
    TermP cur = s;
    for (int i : p) {
        if (i < 0 || static_cast<std::size_t>(i) >= cur->kids.size())
            throw Error(Errc::InvalidRedex, "position does not address a subterm", p);
        cur = cur->kids[i];
    }
    return cur;
}

static TermP replace_rec(const TermP& s, const Position& p, std::size_t depth, const TermP& r) {
    if (depth == p.size())
        return r;
    int i = p[depth];
    if (i < 0 || static_cast<std::size_t>(i) >= s->kids.size())
        throw Error(Errc::InvalidRedex, "position does not address a subterm", p);
    auto kids = s->kids;
    kids[i] = replace_rec(kids[i], p, depth + 1, r);
    return with_kids(s, std::move(kids));
}

TermP replace_at(const TermP& s, const Position& p, TermP replacement) { return replace_rec(s, p, 0, replacement); }

static void collect_names(const TermP& s, std::set<std::string>& out) {
    if (s->kind == TermKind::Var)
        out.insert(s->name);
    for (const auto& b : s->binders)
        out.insert(b.name);
    for (const auto& k : s->kids)
        collect_names(k, out);
}

std::set<std::string> all_names(const TermP& s) {
    std::set<std::string> out;
    collect_names(s, out);
    return out;
}

namespace {

// Rebuilds s, renaming every binder through `choose` and substituting bound
// occurrences accordingly.
TermP rename_binders(const TermP& s, std::map<std::string, std::string>& env,
                     const std::function<std::string(const std::string&)>& choose) {
    if (s->kind == TermKind::Var) {
        auto it = env.find(s->name);
        return it == env.end() ? s : var(it->second);
    }
    std::vector<Binder> binders = s->binders;
    std::map<std::string, std::string> inner;
    for (auto& b : binders) {
        std::string fresh = choose(b.name);
        inner[b.name] = fresh;
        b.name = fresh;
    }
    std::vector<TermP> kids;
    kids.reserve(s->kids.size());
    for (std::size_t i = 0; i < s->kids.size(); ++i) {
        if (!binds_child(*s, i)) {
            kids.push_back(rename_binders(s->kids[i], env, choose));
            continue;
        }
        std::map<std::string, std::string> scoped = env;
        for (const auto& [from, to] : inner)
            scoped[from] = to;
        kids.push_back(rename_binders(s->kids[i], scoped, choose));
    }
    auto out = std::make_shared<Term>();
    out->kind = s->kind;
    out->name = s->name;
    out->binders = std::move(binders);
    out->kids = std::move(kids);
    return out;
}

} // namespace

TermP alpha_canonical(const TermP& s) {
    int counter = 0;
    std::map<std::string, std::string> env;
    return rename_binders(s, env, [&](const std::string&) { return "%" + std::to_string(counter++); });
}

bool structurally_equal(const TermP& a, const TermP& b) {
    if (a == b)
        return true;
    if (a->kind != b->kind || a->name != b->name || a->binders.size() != b->binders.size() ||
        a->kids.size() != b->kids.size())
        return false;
    for (std::size_t i = 0; i < a->binders.size(); ++i)
        if (a->binders[i].name != b->binders[i].name || !type_eq(a->binders[i].type, b->binders[i].type))
            return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!structurally_equal(a->kids[i], b->kids[i]))
            return false;
    return true;
}

bool alpha_eq(const TermP& a, const TermP& b) { return structurally_equal(alpha_canonical(a), alpha_canonical(b)); }

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    if (!avoid.count(base))
        return base;
    for (int i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!avoid.count(candidate))
            return candidate;
    }
}

TermP clean(const TermP& s) {
    auto fv = free_vars(s);
    std::set<std::string> used(fv.begin(), fv.end());
    std::set<std::string> avoid = all_names(s);
    std::map<std::string, std::string> env;
    return rename_binders(s, env, [&](const std::string& name) {
        std::string chosen = name;
        if (used.count(name)) {
            chosen = fresh_name(name, avoid);
            avoid.insert(chosen);
        }
        used.insert(chosen);
        return chosen;
    });
}

TermP rename_free_safe(const TermP& s, const std::map<std::string, std::string>& renaming) {
    std::set<std::string> targets;
    for (const auto& [from, to] : renaming)
        targets.insert(to);
    std::set<std::string> avoid = all_names(s);
    avoid.insert(targets.begin(), targets.end());
    std::map<std::string, std::string> env = renaming;
    return rename_binders(s, env, [&](const std::string& name) {
        if (!targets.count(name))
            return name;
        std::string chosen = fresh_name(name, avoid);
        avoid.insert(chosen);
        return chosen;
    });
}

TermP rename_free(const TermP& s, const std::map<std::string, std::string>& renaming) {
    if (s->kind == TermKind::Var) {
        auto it = renaming.find(s->name);
        return it == renaming.end() ? s : var(it->second);
    }
    std::vector<TermP> kids;
    kids.reserve(s->kids.size());
    for (std::size_t i = 0; i < s->kids.size(); ++i) {
        if (binds_child(*s, i) && !s->binders.empty()) {
            auto inner = renaming;
            for (const auto& b : s->binders)
                inner.erase(b.name);
            kids.push_back(rename_free(s->kids[i], inner));
        } else {
            kids.push_back(rename_free(s->kids[i], renaming));
        }
    }
    return with_kids(s, std::move(kids));
}

static void find_violation(const TermP& s, Fragment f, Position& pos, std::optional<Position>& out) {
    if (out)
        return;
    bool bad = false;
    if (f == Fragment::Rep || f == Fragment::SymRep)
        bad = s->kind == TermKind::Abs || s->kind == TermKind::App;
    else if (f == Fragment::SymClosed)
        bad = s->kind == TermKind::List || s->kind == TermKind::ESub;
    if (bad) {
        out = pos;
        return;
    }
    for (std::size_t i = 0; i < s->kids.size(); ++i) {
        pos.push_back(static_cast<int>(i));
        find_violation(s->kids[i], f, pos, out);
        pos.pop_back();
    }
}

std::optional<Position> fragment_violation(const TermP& s, Fragment f) {
    std::optional<Position> out;
    Position pos;
    find_violation(s, f, pos, out);
    return out;
}

bool in_fragment(const TermP& s, Fragment f) { return !fragment_violation(s, f); }

static std::string binders_string(const std::vector<Binder>& bs) {
    std::string out;
    for (std::size_t i = 0; i < bs.size(); ++i) {
        if (i)
            out += ',';
        out += bs[i].name + ":" + to_string(bs[i].type);
    }
    return out;
}

static std::string join_terms(const std::vector<TermP>& ts, std::size_t from) {
    std::string out;
    for (std::size_t i = from; i < ts.size(); ++i) {
        if (i > from)
            out += ',';
        out += to_string(ts[i]);
    }
    return out;
}

static std::string wrap_if_abs(const TermP& s) {
    return s->kind == TermKind::Abs ? "(" + to_string(s) + ")" : to_string(s);
}

std::string to_string(const TermP& s) {
    switch (s->kind) {
    case TermKind::Var: return s->name;
    case TermKind::List: return "<" + join_terms(s->kids, 0) + ">";
    case TermKind::ESub:
        return wrap_if_abs(s->kids[0]) + "[" + binders_string(s->binders) + " := " + to_string(s->kids[1]) + "]";
    case TermKind::Abs: return "\\<" + binders_string(s->binders) + ">. " + to_string(s->kids[0]);
    case TermKind::App: return wrap_if_abs(s->kids[0]) + " <" + join_terms(s->kids, 1) + ">";
    case TermKind::Gen: return s->name + "(" + join_terms(s->kids, 0) + ")";
    }
    return "?";
}

} // namespace rescalc
