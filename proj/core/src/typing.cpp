#include "rescalc/typing.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace rescalc {

std::vector<std::string> context_names(const Context& ctx) {
    std::vector<std::string> out;
    out.reserve(ctx.size());
    for (const auto& b : ctx)
        out.push_back(b.name);
    return out;
}

std::vector<TypeP> context_types(const Context& ctx) {
    std::vector<TypeP> out;
    out.reserve(ctx.size());
    for (const auto& b : ctx)
        out.push_back(b.type);
    return out;
}

Context restrict_context(const Context& ctx, const std::vector<std::string>& names) {
    Context out;
    for (const auto& b : ctx)
        if (std::find(names.begin(), names.end(), b.name) != names.end())
            out.push_back(b);
    return out;
}

static int index_of(const Context& ctx, const std::string& name) {
    for (std::size_t i = 0; i < ctx.size(); ++i)
        if (ctx[i].name == name)
            return static_cast<int>(i);
    return -1;
}

std::vector<std::string> concatenation_order(const TermP& s) {
    switch (s->kind) {
    case TermKind::Var: return {s->name};
    case TermKind::Abs: {
        auto body = concatenation_order(s->kids[0]);
        std::vector<std::string> out;
        for (auto& x : body)
            if (std::none_of(s->binders.begin(), s->binders.end(), [&](const Binder& b) { return b.name == x; }))
                out.push_back(x);
        return out;
    }
    case TermKind::ESub: {
        auto body = concatenation_order(s->kids[0]);
        auto arg = concatenation_order(s->kids[1]);
        auto is_binder = [&](const std::string& x) {
            return std::any_of(s->binders.begin(), s->binders.end(), [&](const Binder& b) { return b.name == x; });
        };
        std::vector<std::string> out;
        bool placed = false;
        for (auto& x : body) {
            if (!is_binder(x)) {
                out.push_back(x);
                continue;
            }
            if (!placed) {
                out.insert(out.end(), arg.begin(), arg.end());
                placed = true;
            }
        }
        if (!placed)
            out.insert(out.end(), arg.begin(), arg.end());
        return out;
    }
    default: {
        std::vector<std::string> out;
        for (const auto& k : s->kids) {
            auto part = concatenation_order(k);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    }
}

std::size_t esub_split(const Context& ctx, const TermP& s) {
    const auto& body = s->kids[0];
    const auto& arg = s->kids[1];
    auto arg_fv = free_vars(arg);
    auto is_binder = [&](const std::string& x) {
        return std::any_of(s->binders.begin(), s->binders.end(), [&](const Binder& b) { return b.name == x; });
    };
    std::vector<std::string> rest;
    for (auto& x : free_vars(body))
        if (!is_binder(x))
            rest.push_back(x);
    Context rho = restrict_context(ctx, rest);

    int first_arg = -1;
    for (std::size_t i = 0; i < ctx.size() && first_arg < 0; ++i)
        if (std::find(arg_fv.begin(), arg_fv.end(), ctx[i].name) != arg_fv.end())
            first_arg = static_cast<int>(i);
    if (first_arg >= 0) {
        std::size_t n = 0;
        for (const auto& b : rho)
            if (index_of(ctx, b.name) < first_arg)
                ++n;
        return n;
    }
    if (s->binders.empty())
        return rho.size();
    std::size_t n = 0;
    for (const auto& x : concatenation_order(body)) {
        if (is_binder(x))
            break;
        ++n;
    }
    return std::min(n, rho.size());
}

std::vector<std::size_t> esub_split_candidates(const Context& ctx, const TermP& s) {
    std::size_t preferred = esub_split(ctx, s);
    std::vector<std::size_t> out{preferred};
    if (s->binders.empty() || !free_vars(s->kids[1]).empty())
        return out;
    std::size_t n = 0;
    for (const auto& x : free_vars(s->kids[0]))
        if (std::none_of(s->binders.begin(), s->binders.end(), [&](const Binder& b) { return b.name == x; }) &&
            index_of(ctx, x) >= 0)
            ++n;
    for (std::size_t k = 0; k <= n; ++k)
        if (k != preferred)
            out.push_back(k);
    return out;
}

namespace {

struct Checker {
    const Signature& sig;
    Fragment system;

    void check_type(const TypeP& t, const Position& pos) const {
        if (!kind_valid(fragment_kind(system), t))
            throw Error(Errc::FragmentViolation,
                        "type " + to_string(t) + " is outside the " + fragment_name(system) + " grammar", pos);
        std::set<std::string> atoms;
        collect_atoms(t, atoms);
        for (const auto& a : atoms)
            if (!sig.has_atom(a))
                throw Error(Errc::InvalidType, "atom '" + a + "' is not declared in the signature", pos);
    }

    Permutation merge_shuffle(const Context& ctx, const std::vector<Context>& parts, BlockProfile& blocks,
                              const Position& pos) const {
        std::vector<int> images;
        blocks.clear();
        for (const auto& part : parts) {
            blocks.push_back(static_cast<int>(part.size()));
            for (const auto& b : part)
                images.push_back(index_of(ctx, b.name) + 1);
        }
        Permutation pi(std::move(images));
        if (system == Fragment::Rep && !pi.is_identity())
            throw Error(Errc::ShuffleViolation,
                        "premise contexts must be concatenated in order, got shuffle " + pi.to_string(), pos);
        return pi;
    }

    DerivationP go(const Context& ctx, const TermP& s, Position& pos) const {
        auto d = std::make_shared<Derivation>();
        d->ctx = ctx;
        d->term = s;
        switch (s->kind) {
        case TermKind::Var: {
            if (ctx.size() != 1 || ctx[0].name != s->name)
                throw Error(Errc::ContextMismatch, "variable " + s->name + " needs the context " + s->name + ":_",
                            pos);
            d->rule = "var";
            d->type = ctx[0].type;
            d->blocks = {1};
            d->shuffle = Permutation::identity(1);
            return d;
        }
        case TermKind::List:
        case TermKind::Gen: {
            const ArrowDecl* decl = nullptr;
            if (s->kind == TermKind::Gen) {
                decl = sig.find_arrow(s->name);
                if (!decl)
                    throw Error(Errc::TypeMismatch, "unknown generator '" + s->name + "'", pos);
                if (decl->sources.size() != s->kids.size())
                    throw Error(Errc::TypeMismatch,
                                "generator '" + s->name + "' expects " + std::to_string(decl->sources.size()) +
                                    " arguments",
                                pos);
                for (const auto& t : decl->sources)
                    check_type(t, pos);
                check_type(decl->target, pos);
            }
            std::vector<Context> parts;
            std::vector<TypeP> types;
            for (std::size_t i = 0; i < s->kids.size(); ++i) {
                parts.push_back(restrict_context(ctx, free_vars(s->kids[i])));
                pos.push_back(static_cast<int>(i));
                auto p = go(parts.back(), s->kids[i], pos);
                if (decl && !type_eq(p->type, decl->sources[i]))
                    throw Error(Errc::TypeMismatch,
                                "argument has type " + to_string(p->type) + ", expected " +
                                    to_string(decl->sources[i]),
                                pos);
                pos.pop_back();
                types.push_back(p->type);
                d->premises.push_back(std::move(p));
            }
            d->rule = decl ? "gen" : "list";
            d->type = decl ? decl->target : tensor(std::move(types));
            d->shuffle = merge_shuffle(ctx, parts, d->blocks, pos);
            return d;
        }
        case TermKind::ESub: {
            for (const auto& b : s->binders)
                check_type(b.type, pos);
            auto arg_fv = free_vars(s->kids[1]);
            Context gamma = restrict_context(ctx, arg_fv);
            std::vector<std::string> rest;
            for (auto& x : free_vars(s->kids[0]))
                if (std::none_of(s->binders.begin(), s->binders.end(), [&](const Binder& b) { return b.name == x; }))
                    rest.push_back(x);
            Context rho = restrict_context(ctx, rest);
            pos.push_back(1);
            auto pa = go(gamma, s->kids[1], pos);
            if (!pa->type->is_tensor() || pa->type->args.size() != s->binders.size())
                throw Error(Errc::TypeMismatch,
                            "argument of type " + to_string(pa->type) + " cannot bind " +
                                std::to_string(s->binders.size()) + " variables",
                            pos);
            for (std::size_t i = 0; i < s->binders.size(); ++i)
                if (!type_eq(pa->type->args[i], s->binders[i].type))
                    throw Error(Errc::TypeMismatch,
                                "binder " + s->binders[i].name + " is annotated " + to_string(s->binders[i].type) +
                                    " but the argument provides " + to_string(pa->type->args[i]),
                                pos);
            pos.back() = 0;
            auto splits = esub_split_candidates(ctx, s);
            if (is_symmetric(system))
                splits.resize(1);
            Context delta, delta2;
            DerivationP pb;
            std::optional<Error> first_error;
            std::size_t depth = pos.size();
            for (std::size_t split : splits) {
                delta.assign(rho.begin(), rho.begin() + static_cast<std::ptrdiff_t>(split));
                delta2.assign(rho.begin() + static_cast<std::ptrdiff_t>(split), rho.end());
                Context body_ctx = delta;
                body_ctx.insert(body_ctx.end(), s->binders.begin(), s->binders.end());
                body_ctx.insert(body_ctx.end(), delta2.begin(), delta2.end());
                try {
                    pb = go(body_ctx, s->kids[0], pos);
                    break;
                } catch (const Error& e) {
                    pos.resize(depth);
                    if (!first_error)
                        first_error = e;
                }
            }
            if (!pb)
                throw *first_error;
            pos.pop_back();

            d->rule = "esub";
            d->type = pb->type;
            d->premises = {pb, pa};
            d->shuffle = merge_shuffle(ctx, {delta, gamma, delta2}, d->blocks, pos);
            return d;
        }
        case TermKind::Abs: {
            for (const auto& b : s->binders)
                check_type(b.type, pos);
            Context body_ctx = ctx;
            body_ctx.insert(body_ctx.end(), s->binders.begin(), s->binders.end());
            pos.push_back(0);
            auto pb = go(body_ctx, s->kids[0], pos);
            pos.pop_back();
            std::vector<TypeP> dom;
            for (const auto& b : s->binders)
                dom.push_back(b.type);
            d->rule = "abs";
            d->type = arrow(std::move(dom), pb->type);
            d->premises = {pb};
            d->blocks = {static_cast<int>(ctx.size())};
            d->shuffle = Permutation::identity(static_cast<int>(ctx.size()));
            return d;
        }
        case TermKind::App: {
            std::vector<Context> parts;
            for (std::size_t i = 0; i < s->kids.size(); ++i) {
                parts.push_back(restrict_context(ctx, free_vars(s->kids[i])));
                pos.push_back(static_cast<int>(i));
                auto p = go(parts.back(), s->kids[i], pos);
                pos.pop_back();
                d->premises.push_back(std::move(p));
            }
            const TypeP& ft = d->premises[0]->type;
            if (!ft->is_arrow() || ft->args.size() != s->kids.size() - 1)
                throw Error(Errc::TypeMismatch,
                            "cannot apply a term of type " + to_string(ft) + " to " +
                                std::to_string(s->kids.size() - 1) + " arguments",
                            pos);
            for (std::size_t i = 1; i < s->kids.size(); ++i)
                if (!type_eq(d->premises[i]->type, ft->args[i - 1])) {
                    pos.push_back(static_cast<int>(i));
                    throw Error(Errc::TypeMismatch,
                                "argument has type " + to_string(d->premises[i]->type) + ", expected " +
                                    to_string(ft->args[i - 1]),
                                pos);
                }
            d->rule = "app";
            d->type = ft->result;
            d->shuffle = merge_shuffle(ctx, parts, d->blocks, pos);
            return d;
        }
        }
        throw Error(Errc::IllTyped, "unknown term constructor", pos);
    }
};

struct LinearityScope {
    std::string name;
    int uses = 0;
};

void check_linear(const TermP& s, Position& pos, std::vector<LinearityScope>& scopes,
                  std::map<std::string, int>& free_uses) {
    if (s->kind == TermKind::Var) {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it)
            if (it->name == s->name) {
                if (++it->uses > 1)
                    throw Error(Errc::NotLinear, "bound variable " + s->name + " is used more than once", pos);
                return;
            }
        if (++free_uses[s->name] > 1)
            throw Error(Errc::NotLinear, "variable " + s->name + " is used more than once", pos);
        return;
    }
    std::set<std::string> seen;
    for (const auto& b : s->binders)
        if (!seen.insert(b.name).second)
            throw Error(Errc::NotLinear, "binder " + b.name + " is repeated", pos);
    for (std::size_t i = 0; i < s->kids.size(); ++i) {
        std::size_t mark = scopes.size();
        if (binds_child(*s, i))
            for (const auto& b : s->binders)
                scopes.push_back({b.name, 0});
        pos.push_back(static_cast<int>(i));
        check_linear(s->kids[i], pos, scopes, free_uses);
        pos.pop_back();
        if (binds_child(*s, i)) {
            for (std::size_t j = mark; j < scopes.size(); ++j)
                if (scopes[j].uses != 1)
                    throw Error(Errc::NotLinear,
                                "binder " + scopes[j].name + " is used " + std::to_string(scopes[j].uses) + " times",
                                pos);
            scopes.resize(mark);
        }
    }
}

void validate_input(const Checker& checker, const Context& ctx, const TermP& s) {
    if (auto bad = fragment_violation(s, checker.system))
        throw Error(Errc::FragmentViolation,
                    std::string("constructor not available in the ") + fragment_name(checker.system) + " system",
                    *bad);
    Position pos;
    std::vector<LinearityScope> scopes;
    std::map<std::string, int> free_uses;
    check_linear(s, pos, scopes, free_uses);

    std::set<std::string> names;
    for (const auto& b : ctx) {
        if (!names.insert(b.name).second)
            throw Error(Errc::ContextMismatch, "variable " + b.name + " is declared twice in the context");
        checker.check_type(b.type, {});
    }
    auto fv = free_vars(s);
    std::set<std::string> fvs(fv.begin(), fv.end());
    if (fvs != names) {
        std::string missing, extra;
        for (const auto& x : fvs)
            if (!names.count(x))
                missing += " " + x;
        for (const auto& x : names)
            if (!fvs.count(x))
                extra += " " + x;
        std::string msg = "context variables differ from the free variables of the term;";
        if (!missing.empty())
            msg += " undeclared:" + missing;
        if (!extra.empty())
            msg += " unused:" + extra;
        throw Error(Errc::ContextMismatch, msg);
    }
}

} // namespace

DerivationP derive(const Signature& sig, Fragment system, const Context& ctx, const TermP& s) {
    Checker checker{sig, system};
    validate_input(checker, ctx, s);
    Position pos;
    return checker.go(ctx, s, pos);
}

DerivationP check(const Signature& sig, Fragment system, const Context& ctx, const TermP& s, const TypeP& a) {
    Checker checker{sig, system};
    checker.check_type(a, {});
    auto d = derive(sig, system, ctx, s);
    if (!type_eq(d->type, a))
        throw Error(Errc::TypeMismatch, "term has type " + to_string(d->type) + ", expected " + to_string(a));
    return d;
}

Inference infer(const Signature& sig, Fragment system, const TermP& s,
                const std::map<std::string, TypeP>& free_types) {
    {
        Position pos;
        std::vector<LinearityScope> scopes;
        std::map<std::string, int> free_uses;
        check_linear(s, pos, scopes, free_uses);
    }
    Context ctx;
    for (const auto& x : concatenation_order(s)) {
        auto it = free_types.find(x);
        if (it == free_types.end())
            throw Error(Errc::ContextMismatch, "no type given for free variable " + x);
        ctx.push_back({x, it->second});
    }
    auto d = derive(sig, system, ctx, s);
    return {ctx, d->type, d};
}

namespace {

DerivationP permute_to(const DerivationP& d, const Context& target) {
    auto out = std::make_shared<Derivation>(*d);
    out->ctx = target;
    const auto& s = d->term;
    if (d->rule == "var")
        return out;
    if (d->rule == "abs") {
        Context body_ctx = target;
        body_ctx.insert(body_ctx.end(), s->binders.begin(), s->binders.end());
        out->premises = {permute_to(d->premises[0], body_ctx)};
        return out;
    }
    if (d->rule == "esub") {
        std::size_t split = esub_split(target, s);
        std::vector<std::string> rest;
        for (auto& x : free_vars(s->kids[0]))
            if (std::none_of(s->binders.begin(), s->binders.end(), [&](const Binder& b) { return b.name == x; }))
                rest.push_back(x);
        Context rho = restrict_context(target, rest);
        Context gamma = restrict_context(target, free_vars(s->kids[1]));
        Context body_ctx(rho.begin(), rho.begin() + static_cast<std::ptrdiff_t>(split));
        body_ctx.insert(body_ctx.end(), s->binders.begin(), s->binders.end());
        body_ctx.insert(body_ctx.end(), rho.begin() + static_cast<std::ptrdiff_t>(split), rho.end());
        out->premises = {permute_to(d->premises[0], body_ctx), permute_to(d->premises[1], gamma)};
        std::vector<int> images;
        auto delta_size = static_cast<int>(split);
        for (int i = 0; i < delta_size; ++i)
            images.push_back(index_of(target, rho[i].name) + 1);
        for (const auto& b : gamma)
            images.push_back(index_of(target, b.name) + 1);
        for (std::size_t i = split; i < rho.size(); ++i)
            images.push_back(index_of(target, rho[i].name) + 1);
        out->blocks = {delta_size, static_cast<int>(gamma.size()), static_cast<int>(rho.size() - split)};
        out->shuffle = Permutation(std::move(images));
        return out;
    }
    // Merging node: push the context permutation through the shuffle.
    std::vector<int> sigma_im;
    for (const auto& b : target)
        sigma_im.push_back(index_of(d->ctx, b.name) + 1);
    Permutation sigma(std::move(sigma_im));
    Permutation moved = compose(sigma.inverse(), d->shuffle);
    auto dec = shuffle_decompose(moved, d->blocks);
    out->shuffle = dec.shuffle;
    out->premises.clear();
    for (std::size_t i = 0; i < d->premises.size(); ++i) {
        Context part = act(d->premises[i]->ctx, dec.parts[i].inverse());
        out->premises.push_back(permute_to(d->premises[i], part));
    }
    return out;
}

} // namespace

DerivationP admissible_permute(const Signature& sig, Fragment system, const DerivationP& d, const Permutation& sigma) {
    (void)sig;
    if (!is_symmetric(system))
        throw Error(Errc::NotSymmetricSystem, "context permutation requires a symmetric system");
    if (sigma.degree() != static_cast<int>(d->ctx.size()))
        throw Error(Errc::DegreeMismatch, "permutation degree differs from the context length");
    return permute_to(d, act(d->ctx, sigma));
}

bool derivation_eq(const DerivationP& a, const DerivationP& b) {
    if (a->rule != b->rule || a->ctx.size() != b->ctx.size() || !type_eq(a->type, b->type) ||
        a->blocks != b->blocks || a->shuffle != b->shuffle || a->premises.size() != b->premises.size() ||
        !structurally_equal(a->term, b->term))
        return false;
    for (std::size_t i = 0; i < a->ctx.size(); ++i)
        if (a->ctx[i].name != b->ctx[i].name || !type_eq(a->ctx[i].type, b->ctx[i].type))
            return false;
    for (std::size_t i = 0; i < a->premises.size(); ++i)
        if (!derivation_eq(a->premises[i], b->premises[i]))
            return false;
    return true;
}

static void collect_nodes(const DerivationP& d, Position& pos, std::vector<std::pair<Position, DerivationP>>& out) {
    out.emplace_back(pos, d);
    for (std::size_t i = 0; i < d->premises.size(); ++i) {
        pos.push_back(static_cast<int>(i));
        collect_nodes(d->premises[i], pos, out);
        pos.pop_back();
    }
}

std::vector<std::pair<Position, DerivationP>> derivation_nodes(const DerivationP& d) {
    std::vector<std::pair<Position, DerivationP>> out;
    Position pos;
    collect_nodes(d, pos, out);
    return out;
}

static std::string context_string(const Context& ctx) {
    std::string out;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (i)
            out += ", ";
        out += ctx[i].name + ":" + to_string(ctx[i].type);
    }
    return out;
}

static void print_derivation(const DerivationP& d, int depth, std::string& out) {
    out += std::string(static_cast<std::size_t>(depth) * 2, ' ');
    std::string ctx = context_string(d->ctx);
    out += ctx.empty() ? "|- " : ctx + " |- ";
    out += to_string(d->term) + " : " + to_string(d->type) + "   (" + d->rule;
    if (d->rule != "var" && d->rule != "abs") {
        out += "; shuffle " + d->shuffle.to_string() + " over (";
        for (std::size_t i = 0; i < d->blocks.size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(d->blocks[i]);
        }
        out += ")";
    }
    out += ")\n";
    for (const auto& p : d->premises)
        print_derivation(p, depth + 1, out);
}

std::string to_string(const DerivationP& d) {
    std::string out;
    print_derivation(d, 0, out);
    return out;
}

static void strictify_into(const TypeP& a, std::vector<std::string>& out) {
    if (a->is_arrow())
        throw Error(Errc::NonRepresentableType, "cannot strictify " + to_string(a));
    if (a->is_atom()) {
        out.push_back(a->name);
        return;
    }
    for (const auto& x : a->args)
        strictify_into(x, out);
}

std::vector<std::string> strictify(const TypeP& a) {
    std::vector<std::string> out;
    strictify_into(a, out);
    return out;
}

std::vector<std::string> strictify(const Context& ctx) {
    std::vector<std::string> out;
    for (const auto& b : ctx)
        strictify_into(b.type, out);
    return out;
}

std::size_t type_size(const TypeP& a, SizeFlavor flavor) {
    if (a->is_atom())
        return 0;
    if (flavor == SizeFlavor::Rep && a->is_arrow())
        throw Error(Errc::FlavorMismatch, "representable size of " + to_string(a));
    if (flavor == SizeFlavor::Closed && a->is_tensor())
        throw Error(Errc::FlavorMismatch, "closed size of " + to_string(a));
    std::size_t n = 0;
    for (const auto& x : a->args)
        n += type_size(x, flavor);
    if (a->is_arrow())
        n += type_size(a->result, flavor);
    bool counted = (a->is_tensor() && flavor != SizeFlavor::Arrow2) || (a->is_arrow() && flavor != SizeFlavor::Tensor1);
    return n + (counted ? 1 : 0);
}

} // namespace rescalc
