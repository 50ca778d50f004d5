#include "generators.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace rescalc::testing {

SignatureP two_atoms(Kind kind) { return std::make_shared<const Signature>(discrete_signature(kind, {"o", "p"})); }

Permutation random_permutation(Rng& rng, int n) {
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 1);
    std::shuffle(images.begin(), images.end(), rng);
    return Permutation(std::move(images));
}

TypeP random_type(Rng& rng, Kind kind, int depth) {
    static const std::vector<std::string> atoms{"o", "p"};
    int roll = depth <= 0 ? 0 : uniform(rng, 0, 5);
    bool tensors = kind != Kind::Closed;
    bool arrows = kind != Kind::Representable;
    if (roll >= 3 && roll <= 4 && tensors) {
        std::vector<TypeP> parts;
        int k = uniform(rng, 0, 2);
        for (int i = 0; i < k; ++i)
            parts.push_back(random_type(rng, kind, depth - 1));
        return tensor(std::move(parts));
    }
    if (roll == 5 && arrows) {
        std::vector<TypeP> dom;
        int k = uniform(rng, kind == Kind::Closed ? 1 : 0, 2);
        for (int i = 0; i < k; ++i)
            dom.push_back(random_type(rng, kind, depth - 1));
        return arrow(std::move(dom), random_type(rng, kind, depth - 1));
    }
    return atom(pick(rng, atoms));
}

namespace {

// Splits xs into k order-preserving parts at random.
std::vector<std::vector<Binder>> random_split(Rng& rng, const std::vector<Binder>& xs, std::size_t k) {
    std::vector<std::vector<Binder>> parts(k);
    if (k == 0)
        return parts;
    for (const auto& x : xs)
        parts[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(k) - 1))].push_back(x);
    return parts;
}

std::vector<TermP> vars_of(const std::vector<Binder>& bs) {
    std::vector<TermP> out;
    for (const auto& b : bs)
        out.push_back(var(b.name));
    return out;
}

class AutoGen {
public:
    explicit AutoGen(Rng& rng) : rng_(rng) {}

    std::string fresh(const char* prefix) { return prefix + std::to_string(counter_++); }

    std::vector<Binder> fresh_binders(const std::vector<TypeP>& types) {
        std::vector<Binder> out;
        for (const auto& t : types)
            out.push_back({fresh("b"), t});
        return out;
    }

    TermP fallback(const std::vector<Binder>& must, const TypeP& a) {
        std::vector<TypeP> dom;
        for (const auto& b : must)
            dom.push_back(b.type);
        Binder f{fresh("f"), arrow(std::move(dom), a)};
        extras.push_back(f);
        return app(var(f.name), vars_of(must));
    }

    TermP gen(const std::vector<Binder>& must, const TypeP& a, int fuel) {
        if (must.size() == 1 && type_eq(must[0].type, a) && (fuel <= 0 || coin(rng_, 0.35)))
            return var(must[0].name);
        if (fuel <= 0)
            return fallback(must, a);
        std::vector<int> options{2, 3, 4};
        if (a->is_tensor())
            options.insert(options.end(), {0, 0, 0});
        if (a->is_arrow())
            options.insert(options.end(), {1, 1, 1});
        bool has_tensor_var =
            std::any_of(must.begin(), must.end(), [](const Binder& b) { return b.type->is_tensor(); });
        if (has_tensor_var)
            options.insert(options.end(), {5, 5});
        switch (pick(rng_, options)) {
        case 0: {
            auto parts = random_split(rng_, must, a->args.size());
            if (a->args.empty() && !must.empty())
                return fallback(must, a);
            std::vector<TermP> kids;
            for (std::size_t i = 0; i < a->args.size(); ++i)
                kids.push_back(gen(parts[i], a->args[i], fuel - 1));
            return list(std::move(kids));
        }
        case 1: {
            auto bs = fresh_binders(a->args);
            auto inner = must;
            inner.insert(inner.end(), bs.begin(), bs.end());
            return abs(bs, gen(inner, a->result, fuel - 1));
        }
        case 2: {
            auto parts = random_split(rng_, must, 2);
            std::vector<TypeP> comps;
            int k = uniform(rng_, 0, 2);
            for (int i = 0; i < k; ++i)
                comps.push_back(random_type(rng_, Kind::Autonomous, 1));
            TypeP t = tensor(comps);
            TermP arg = gen(parts[0], t, fuel - 1);
            auto bs = fresh_binders(comps);
            auto inner = parts[1];
            inner.insert(inner.end(), bs.begin(), bs.end());
            std::shuffle(inner.begin(), inner.end(), rng_);
            return esub(gen(inner, a, fuel - 1), bs, arg);
        }
        case 3: {
            int k = uniform(rng_, 0, 2);
            std::vector<TypeP> dom;
            for (int i = 0; i < k; ++i)
                dom.push_back(random_type(rng_, Kind::Autonomous, 1));
            auto parts = random_split(rng_, must, static_cast<std::size_t>(k) + 1);
            std::vector<TermP> kids{gen(parts[0], arrow(dom, a), fuel - 1)};
            std::vector<TermP> args;
            for (int i = 0; i < k; ++i)
                args.push_back(gen(parts[static_cast<std::size_t>(i) + 1], dom[static_cast<std::size_t>(i)], fuel - 1));
            return app(kids[0], std::move(args));
        }
        case 5: {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < must.size(); ++i)
                if (must[i].type->is_tensor())
                    idx.push_back(i);
            std::size_t chosen = pick(rng_, idx);
            auto bs = fresh_binders(must[chosen].type->args);
            std::vector<Binder> inner;
            for (std::size_t i = 0; i < must.size(); ++i)
                if (i != chosen)
                    inner.push_back(must[i]);
            inner.insert(inner.end(), bs.begin(), bs.end());
            std::shuffle(inner.begin(), inner.end(), rng_);
            return esub(gen(inner, a, fuel - 1), bs, var(must[chosen].name));
        }
        default: return fallback(must, a);
        }
    }

    std::vector<Binder> extras;

private:
    Rng& rng_;
    int counter_ = 0;
};

class RepGen {
public:
    RepGen(Rng& rng, Fragment system) : rng_(rng), system_(system) {}

    std::pair<TermP, Context> at(const TypeP& a, int fuel) {
        int roll = fuel <= 0 ? 0 : uniform(rng_, 0, 9);
        if (roll >= 1 && roll <= 4 && a->is_tensor()) {
            std::vector<TermP> kids;
            Context ctx;
            for (const auto& c : a->args) {
                auto [t, g] = at(c, fuel - 1);
                kids.push_back(t);
                ctx.insert(ctx.end(), g.begin(), g.end());
            }
            return {list(std::move(kids)), ctx};
        }
        if (roll >= 5) {
            auto [body, g] = at(a, fuel - 1);
            std::vector<Binder> bs;
            Context outer;
            std::size_t insert_at;
            if (system_ == Fragment::Rep) {
                std::size_t i = static_cast<std::size_t>(uniform(rng_, 0, static_cast<int>(g.size())));
                std::size_t j = static_cast<std::size_t>(uniform(rng_, static_cast<int>(i), static_cast<int>(std::min(g.size(), i + 3))));
                bs.assign(g.begin() + static_cast<std::ptrdiff_t>(i), g.begin() + static_cast<std::ptrdiff_t>(j));
                outer.assign(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(i));
                outer.insert(outer.end(), g.begin() + static_cast<std::ptrdiff_t>(j), g.end());
                insert_at = i;
            } else {
                for (const auto& b : g)
                    (coin(rng_, 0.4) && bs.size() < 3 ? bs : outer).push_back(b);
                std::shuffle(bs.begin(), bs.end(), rng_);
                insert_at = static_cast<std::size_t>(uniform(rng_, 0, static_cast<int>(outer.size())));
            }
            std::map<std::string, std::string> renaming;
            std::vector<TypeP> comps;
            for (auto& b : bs) {
                std::string fresh = "b" + std::to_string(counter_++);
                renaming[b.name] = fresh;
                b.name = fresh;
                comps.push_back(b.type);
            }
            auto [arg, ga] = at(tensor(comps), fuel - 1);
            outer.insert(outer.begin() + static_cast<std::ptrdiff_t>(insert_at), ga.begin(), ga.end());
            return {esub(rename_free(body, renaming), bs, arg), outer};
        }
        std::string x = "x" + std::to_string(counter_++);
        return {var(x), {{x, a}}};
    }

private:
    Rng& rng_;
    Fragment system_;
    int counter_ = 0;
};

} // namespace

TypedTerm random_auto_term(Rng& rng, std::size_t max_size) {
    for (;;) {
        AutoGen gen(rng);
        Context ctx;
        int n = uniform(rng, 0, 3);
        for (int i = 0; i < n; ++i)
            ctx.push_back({gen.fresh("x"), random_type(rng, Kind::Autonomous, 2)});
        TypeP a = random_type(rng, Kind::Autonomous, 2);
        TermP s = gen.gen(ctx, a, uniform(rng, 1, 4));
        if (size(s) > max_size)
            continue;
        ctx.insert(ctx.end(), gen.extras.begin(), gen.extras.end());
        std::shuffle(ctx.begin(), ctx.end(), rng);
        return {ctx, s, a};
    }
}

TypedTerm random_rep_term_at(Rng& rng, Fragment system, const TypeP& a, std::size_t max_size) {
    for (;;) {
        RepGen gen(rng, system);
        auto [s, ctx] = gen.at(a, uniform(rng, 1, 4));
        if (size(s) > max_size)
            continue;
        if (system != Fragment::Rep)
            std::shuffle(ctx.begin(), ctx.end(), rng);
        return {ctx, s, a};
    }
}

TypedTerm random_rep_term(Rng& rng, Fragment system, std::size_t max_size) {
    return random_rep_term_at(rng, system, random_type(rng, Kind::Representable, 2), max_size);
}

namespace {

struct Shape {
    TermP term;
    Context fv;
    TypeP type;
};

// Renames the free variables of a shape to f<n>, ... so that shapes can be
// combined without clashes.
Shape rename_apart(const Shape& s, int& counter) {
    std::map<std::string, std::string> renaming;
    Shape out = s;
    for (auto& b : out.fv) {
        std::string fresh = "f" + std::to_string(counter++);
        renaming[b.name] = fresh;
        b.name = fresh;
    }
    out.term = rename_free_safe(s.term, renaming);
    return out;
}

Shape normalize_names(const Shape& s) {
    std::map<std::string, std::string> renaming;
    Shape out = s;
    for (std::size_t i = 0; i < out.fv.size(); ++i) {
        std::string name = "x" + std::to_string(i + 1);
        renaming[out.fv[i].name] = name;
        out.fv[i].name = name;
    }
    out.term = alpha_canonical(rename_free_safe(s.term, renaming));
    return out;
}

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (total == 0)
            out.push_back(cur);
        return;
    }
    for (int first = 1; first <= total - (parts - 1); ++first) {
        cur.push_back(first);
        compositions(total - first, parts - 1, cur, out);
        cur.pop_back();
    }
}

void ordered_subsets(const Context& xs, std::vector<bool>& used, Context& cur, std::vector<Context>& out) {
    out.push_back(cur);
    if (cur.size() == 3)
        return;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (used[i])
            continue;
        used[i] = true;
        cur.push_back(xs[i]);
        ordered_subsets(xs, used, cur, out);
        cur.pop_back();
        used[i] = false;
    }
}

} // namespace

std::vector<TypedTerm> enumerate_symrep_terms(std::size_t max_size, const std::vector<TypeP>& leaf_types) {
    std::vector<std::vector<Shape>> by_size(max_size + 1);
    if (max_size >= 1) {
        for (const auto& t : leaf_types)
            by_size[1].push_back({var("x1"), {{"x1", t}}, t});
        by_size[1].push_back({list({}), {}, unit()});
    }
    for (std::size_t n = 2; n <= max_size; ++n) {
        std::vector<Shape> out;
        for (int k = 1; k <= static_cast<int>(n) - 1 && k <= 3; ++k) {
            std::vector<std::vector<int>> comps;
            std::vector<int> cur;
            compositions(static_cast<int>(n) - 1, k, cur, comps);
            for (const auto& comp : comps) {
                std::vector<std::size_t> idx(comp.size(), 0);
                for (;;) {
                    int counter = 0;
                    Shape s{nullptr, {}, nullptr};
                    std::vector<TermP> kids;
                    std::vector<TypeP> types;
                    bool empty = false;
                    for (std::size_t i = 0; i < comp.size(); ++i) {
                        const auto& pool = by_size[static_cast<std::size_t>(comp[i])];
                        if (pool.empty()) {
                            empty = true;
                            break;
                        }
                        Shape part = rename_apart(pool[idx[i]], counter);
                        kids.push_back(part.term);
                        types.push_back(part.type);
                        s.fv.insert(s.fv.end(), part.fv.begin(), part.fv.end());
                    }
                    if (empty)
                        break;
                    s.term = list(std::move(kids));
                    s.type = tensor(std::move(types));
                    out.push_back(normalize_names(s));
                    std::size_t pos = 0;
                    while (pos < comp.size()) {
                        if (++idx[pos] < by_size[static_cast<std::size_t>(comp[pos])].size())
                            break;
                        idx[pos++] = 0;
                    }
                    if (pos == comp.size())
                        break;
                }
            }
        }
        for (std::size_t sb = 1; sb + 2 <= n; ++sb) {
            std::size_t sa = n - 1 - sb;
            std::map<std::string, std::vector<const Shape*>> args_by_type;
            for (const auto& a : by_size[sa])
                args_by_type[to_string(a.type)].push_back(&a);
            for (const auto& body : by_size[sb]) {
                std::vector<Context> subsets;
                std::vector<bool> used(body.fv.size(), false);
                Context cur;
                ordered_subsets(body.fv, used, cur, subsets);
                for (const auto& chosen : subsets) {
                    std::vector<TypeP> comps;
                    for (const auto& b : chosen)
                        comps.push_back(b.type);
                    auto it = args_by_type.find(to_string(tensor(comps)));
                    if (it == args_by_type.end())
                        continue;
                    for (const Shape* arg : it->second) {
                        int counter = 0;
                        Shape b = rename_apart(body, counter);
                        Shape a = rename_apart(*arg, counter);
                        std::map<std::string, std::string> to_binder;
                        std::vector<Binder> bs;
                        for (std::size_t i = 0; i < chosen.size(); ++i) {
                            auto pos = std::find_if(body.fv.begin(), body.fv.end(),
                                                    [&](const Binder& x) { return x.name == chosen[i].name; }) -
                                       body.fv.begin();
                            std::string bname = "y" + std::to_string(i + 1);
                            to_binder[b.fv[static_cast<std::size_t>(pos)].name] = bname;
                            bs.push_back({bname, chosen[i].type});
                        }
                        Shape s{nullptr, {}, body.type};
                        for (const auto& x : b.fv)
                            if (!to_binder.count(x.name))
                                s.fv.push_back(x);
                        s.fv.insert(s.fv.end(), a.fv.begin(), a.fv.end());
                        s.term = esub(rename_free_safe(b.term, to_binder), bs, a.term);
                        out.push_back(normalize_names(s));
                    }
                }
            }
        }
        by_size[n] = std::move(out);
    }
    std::vector<TypedTerm> all;
    for (const auto& bucket : by_size)
        for (const auto& s : bucket)
            all.push_back({s.fv, s.term, s.type});
    return all;
}

} // namespace rescalc::testing
