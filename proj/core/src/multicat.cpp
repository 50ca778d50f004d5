#include "rescalc/multicat.hpp"

#include <functional>
#include <map>

namespace rescalc {

std::string source_var(std::size_t i) { return "v" + std::to_string(i); }

Context Morphism::context() const {
    Context ctx;
    for (std::size_t i = 0; i < source.size(); ++i)
        ctx.push_back({source_var(i + 1), source[i]});
    return ctx;
}

Morphism make_morphism(SignatureP sig, Fragment system, const Context& ctx, const TermP& s, const TypeP& a) {
    check(*sig, system, ctx, s, a);
    std::map<std::string, std::string> renaming;
    Morphism f;
    f.sig = std::move(sig);
    f.system = system;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        renaming[ctx[i].name] = source_var(i + 1);
        f.source.push_back(ctx[i].type);
    }
    f.target = a;
    f.rep = rename_free_safe(s, renaming);
    auto nf = normalize(*f.sig, system, f.context(), f.rep).nf;
    f.canon_nf = alpha_canonical(struct_canon(nf));
    return f;
}

bool operator==(const Morphism& f, const Morphism& g) {
    if (f.system != g.system || f.source.size() != g.source.size() || !type_eq(f.target, g.target))
        return false;
    for (std::size_t i = 0; i < f.source.size(); ++i)
        if (!type_eq(f.source[i], g.source[i]))
            return false;
    return structurally_equal(f.canon_nf, g.canon_nf);
}

std::string to_string(const Morphism& f) {
    std::string out = "[";
    auto ctx = f.context();
    for (std::size_t i = 0; i < ctx.size(); ++i)
        out += (i ? ", " : "") + ctx[i].name + ":" + to_string(ctx[i].type);
    out += ctx.empty() ? "|- " : " |- ";
    return out + to_string(f.rep) + " : " + to_string(f.target) + "]";
}

Morphism identity(SignatureP sig, Fragment system, const TypeP& a) {
    if (!type_valid(*sig, a) || !kind_valid(fragment_kind(system), a))
        throw Error(Errc::InvalidType, "type " + to_string(a) + " is not valid here");
    return make_morphism(std::move(sig), system, {{source_var(1), a}}, var(source_var(1)), a);
}

Morphism compose(const Morphism& f, const std::vector<Morphism>& gs) {
    if (gs.size() != f.source.size())
        throw Error(Errc::ShapeMismatch, "composing a morphism with " + std::to_string(f.source.size()) +
                                             " inputs with " + std::to_string(gs.size()) + " morphisms");
    Context ctx;
    std::vector<std::string> xs;
    std::vector<TermP> ts;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const auto& g = gs[i];
        if (g.system != f.system)
            throw Error(Errc::ShapeMismatch, "morphisms live in different systems");
        if (!type_eq(g.target, f.source[i]))
            throw Error(Errc::ShapeMismatch, "input " + std::to_string(i + 1) + " expects " +
                                                 to_string(f.source[i]) + " but receives " + to_string(g.target));
        std::map<std::string, std::string> renaming;
        for (std::size_t j = 0; j < g.source.size(); ++j) {
            std::string name = "w" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
            renaming[source_var(j + 1)] = name;
            ctx.push_back({name, g.source[j]});
        }
        xs.push_back(source_var(i + 1));
        ts.push_back(rename_free_safe(g.rep, renaming));
    }
    return make_morphism(f.sig, f.system, ctx, substitute(f.rep, xs, ts), f.target);
}

Morphism rep_elim(const Morphism& f, std::size_t k) {
    if (k >= f.source.size() || !f.source[k]->is_tensor())
        throw Error(Errc::NotATensor, "source position " + std::to_string(k) + " is not a tensor");
    auto avoid = all_names(f.rep);
    Context ctx;
    std::vector<TermP> comps;
    for (std::size_t i = 0; i < f.source.size(); ++i) {
        if (i != k) {
            ctx.push_back({source_var(i + 1), f.source[i]});
            continue;
        }
        for (const auto& c : f.source[k]->args) {
            std::string name = fresh_name("e" + std::to_string(comps.size() + 1), avoid);
            avoid.insert(name);
            ctx.push_back({name, c});
            comps.push_back(var(name));
        }
    }
    return make_morphism(f.sig, f.system, ctx, substitute(f.rep, {source_var(k + 1)}, {list(std::move(comps))}),
                         f.target);
}

Morphism rep_intro(const Morphism& f, std::size_t start, std::size_t count) {
    if (start + count > f.source.size())
        throw Error(Errc::SpanMismatch, "span [" + std::to_string(start) + ", " + std::to_string(start + count) +
                                            ") exceeds a source of length " + std::to_string(f.source.size()));
    std::string t = fresh_name("t", all_names(f.rep));
    std::vector<Binder> xs;
    std::vector<TypeP> comps;
    Context ctx;
    for (std::size_t i = 0; i < f.source.size(); ++i) {
        if (i >= start && i < start + count) {
            xs.push_back({source_var(i + 1), f.source[i]});
            comps.push_back(f.source[i]);
            if (i + 1 == start + count)
                ctx.push_back({t, tensor(comps)});
            continue;
        }
        if (i == start && count == 0)
            ctx.push_back({t, unit()});
        ctx.push_back({source_var(i + 1), f.source[i]});
    }
    if (count == 0 && start == f.source.size())
        ctx.push_back({t, unit()});
    return make_morphism(f.sig, f.system, ctx, esub(f.rep, std::move(xs), var(t)), f.target);
}

Morphism curry(const Morphism& f, std::size_t k) {
    if (k > f.source.size())
        throw Error(Errc::BadSuffix, "cannot curry " + std::to_string(k) + " of " +
                                         std::to_string(f.source.size()) + " inputs");
    auto ctx = f.context();
    std::size_t keep = ctx.size() - k;
    std::vector<Binder> xs(ctx.begin() + static_cast<std::ptrdiff_t>(keep), ctx.end());
    ctx.resize(keep);
    std::vector<TypeP> dom;
    for (const auto& b : xs)
        dom.push_back(b.type);
    return make_morphism(f.sig, f.system, ctx, abs(std::move(xs), f.rep), arrow(std::move(dom), f.target));
}

Morphism uncurry(const Morphism& f) {
    if (!f.target->is_arrow())
        throw Error(Errc::NotAnArrow, "target " + to_string(f.target) + " is not an arrow");
    auto ctx = f.context();
    auto avoid = all_names(f.rep);
    std::vector<TermP> args;
    for (const auto& a : f.target->args) {
        std::string name = fresh_name("a" + std::to_string(args.size() + 1), avoid);
        avoid.insert(name);
        ctx.push_back({name, a});
        args.push_back(var(name));
    }
    return make_morphism(f.sig, f.system, ctx, app(f.rep, std::move(args)), f.target->result);
}

Morphism sym_act(const Morphism& f, const Permutation& sigma) {
    if (!is_symmetric(f.system))
        throw Error(Errc::NotSymmetricSystem, std::string("the ") + fragment_name(f.system) + " system has no symmetry");
    if (sigma.degree() != static_cast<int>(f.source.size()))
        throw Error(Errc::DegreeMismatch, "permutation degree differs from the number of inputs");
    return make_morphism(f.sig, f.system, act(f.context(), sigma), f.rep, f.target);
}

Permutation sym_extract(const Morphism& f) {
    if (f.system != Fragment::SymRep)
        throw Error(Errc::NotSymRep, "permutation extraction needs the symrep system");
    if (!f.sig->discrete())
        throw Error(Errc::NonDiscrete, "permutation extraction needs a discrete signature");
    std::map<std::string, std::vector<int>> ranges;
    int next = 1;
    for (std::size_t i = 0; i < f.source.size(); ++i) {
        auto& range = ranges[source_var(i + 1)];
        for (std::size_t j = 0; j < strictify(f.source[i]).size(); ++j)
            range.push_back(next++);
    }

    TermP t = f.canon_nf;
    while (t->kind == TermKind::ESub) {
        const auto& arg = t->kids[1];
        if (arg->kind != TermKind::Var)
            throw Error(Errc::NotSymRep, "normal form has a compound substitution argument " + to_string(arg));
        auto whole = ranges.at(arg->name);
        std::size_t at = 0;
        for (const auto& b : t->binders) {
            std::size_t width = strictify(b.type).size();
            ranges[b.name].assign(whole.begin() + static_cast<std::ptrdiff_t>(at),
                                  whole.begin() + static_cast<std::ptrdiff_t>(at + width));
            at += width;
        }
        t = t->kids[0];
    }
    std::vector<int> images;
    std::function<void(const TermP&)> leaves = [&](const TermP& u) {
        if (u->kind == TermKind::Var) {
            const auto& r = ranges.at(u->name);
            images.insert(images.end(), r.begin(), r.end());
        } else if (u->kind == TermKind::List) {
            for (const auto& k : u->kids)
                leaves(k);
        } else {
            throw Error(Errc::NotSymRep, "unexpected " + to_string(u) + " in a symrep normal form");
        }
    };
    leaves(t);
    return Permutation(std::move(images));
}

bool operator==(const PermValue& a, const PermValue& b) {
    if (a.source.size() != b.source.size() || !type_eq(a.target, b.target) || a.perm != b.perm)
        return false;
    for (std::size_t i = 0; i < a.source.size(); ++i)
        if (!type_eq(a.source[i], b.source[i]))
            return false;
    return true;
}

PermValue PermModel::identity(const TypeP& a) {
    return {{a}, a, Permutation::identity(static_cast<int>(strictify(a).size()))};
}

PermValue PermModel::compose(const PermValue& f, const std::vector<PermValue>& gs) {
    if (gs.size() != f.source.size())
        throw Error(Errc::ShapeMismatch, "composite has the wrong number of inputs");
    PermValue out;
    std::vector<Permutation> parts;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (!type_eq(gs[i].target, f.source[i]))
            throw Error(Errc::ShapeMismatch, "composite input types disagree");
        out.source.insert(out.source.end(), gs[i].source.begin(), gs[i].source.end());
        parts.push_back(gs[i].perm);
    }
    out.target = f.target;
    out.perm = rescalc::compose(block_sum(parts), f.perm);
    return out;
}

PermValue PermModel::tensor(const std::vector<PermValue>& parts) {
    PermValue out;
    std::vector<TypeP> targets;
    std::vector<Permutation> perms;
    for (const auto& p : parts) {
        out.source.insert(out.source.end(), p.source.begin(), p.source.end());
        targets.push_back(p.target);
        perms.push_back(p.perm);
    }
    out.target = rescalc::tensor(std::move(targets));
    out.perm = block_sum(perms);
    return out;
}

PermValue PermModel::unlet(const PermValue& f, std::size_t start, std::size_t count) {
    if (start + count > f.source.size())
        throw Error(Errc::SpanMismatch, "unlet span exceeds the source");
    PermValue out = f;
    std::vector<TypeP> comps(f.source.begin() + static_cast<std::ptrdiff_t>(start),
                             f.source.begin() + static_cast<std::ptrdiff_t>(start + count));
    out.source.erase(out.source.begin() + static_cast<std::ptrdiff_t>(start),
                     out.source.begin() + static_cast<std::ptrdiff_t>(start + count));
    out.source.insert(out.source.begin() + static_cast<std::ptrdiff_t>(start), rescalc::tensor(std::move(comps)));
    return out;
}

PermValue PermModel::let(const PermValue& body, const Context& delta, const std::vector<Binder>& xs,
                         const Context& delta2, const PermValue& arg) {
    PermValue u = unlet(body, delta.size(), xs.size());
    std::vector<PermValue> gs;
    for (const auto& b : delta)
        gs.push_back(identity(b.type));
    gs.push_back(arg);
    for (const auto& b : delta2)
        gs.push_back(identity(b.type));
    return compose(u, gs);
}

PermValue PermModel::permute(const PermValue& f, const Permutation& sigma) {
    std::vector<int> offset{0};
    for (const auto& t : f.source)
        offset.push_back(offset.back() + static_cast<int>(strictify(t).size()));
    std::vector<int> images;
    for (int i = 1; i <= sigma.degree(); ++i) {
        int block = sigma(i) - 1;
        for (int j = offset[block] + 1; j <= offset[block + 1]; ++j)
            images.push_back(j);
    }
    Permutation expanded(std::move(images));
    return {act(f.source, sigma), f.target, rescalc::compose(expanded.inverse(), f.perm)};
}

namespace {

std::map<std::string, int> tally(const std::vector<TypeP>& ts) {
    std::map<std::string, int> out;
    for (const auto& t : ts)
        for (const auto& a : strictify(t))
            ++out[a];
    return out;
}

TallyValue checked(TallyValue v) {
    if (tally(v.source) != tally({v.target}))
        throw Error(Errc::StructureMismatch, "atom tallies of source and target differ");
    return v;
}

} // namespace

TallyValue TallyModel::identity(const TypeP& a) { return {{a}, a}; }

TallyValue TallyModel::compose(const TallyValue& f, const std::vector<TallyValue>& gs) {
    if (gs.size() != f.source.size())
        throw Error(Errc::ShapeMismatch, "composite has the wrong number of inputs");
    TallyValue out{{}, f.target};
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (!type_eq(gs[i].target, f.source[i]))
            throw Error(Errc::ShapeMismatch, "composite input types disagree");
        out.source.insert(out.source.end(), gs[i].source.begin(), gs[i].source.end());
    }
    return checked(std::move(out));
}

TallyValue TallyModel::tensor(const std::vector<TallyValue>& parts) {
    TallyValue out;
    std::vector<TypeP> targets;
    for (const auto& p : parts) {
        out.source.insert(out.source.end(), p.source.begin(), p.source.end());
        targets.push_back(p.target);
    }
    out.target = rescalc::tensor(std::move(targets));
    return checked(std::move(out));
}

TallyValue TallyModel::let(const TallyValue& body, const Context& delta, const std::vector<Binder>& xs,
                           const Context& delta2, const TallyValue& arg) {
    if (body.source.size() != delta.size() + xs.size() + delta2.size())
        throw Error(Errc::ShapeMismatch, "let body has the wrong number of inputs");
    TallyValue out{{}, body.target};
    for (const auto& b : delta)
        out.source.push_back(b.type);
    out.source.insert(out.source.end(), arg.source.begin(), arg.source.end());
    for (const auto& b : delta2)
        out.source.push_back(b.type);
    return checked(std::move(out));
}

TallyValue TallyModel::permute(const TallyValue& f, const Permutation& sigma) {
    return checked({act(f.source, sigma), f.target});
}

Morphism FreeModel::identity(const TypeP& a) { return rescalc::identity(sig_, system_, a); }

Morphism FreeModel::compose(const Morphism& f, const std::vector<Morphism>& gs) { return rescalc::compose(f, gs); }

Morphism FreeModel::tensor(const std::vector<Morphism>& parts) {
    Context ctx;
    std::vector<TermP> elems;
    std::vector<TypeP> targets;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        ctx.push_back({source_var(i + 1), parts[i].target});
        elems.push_back(var(source_var(i + 1)));
        targets.push_back(parts[i].target);
    }
    auto pairing = make_morphism(sig_, system_, ctx, list(std::move(elems)), rescalc::tensor(std::move(targets)));
    return rescalc::compose(pairing, parts);
}

Morphism FreeModel::let(const Morphism& body, const Context& delta, const std::vector<Binder>& xs,
                        const Context& delta2, const Morphism& arg) {
    auto u = rep_intro(body, delta.size(), xs.size());
    std::vector<Morphism> gs;
    for (const auto& b : delta)
        gs.push_back(identity(b.type));
    gs.push_back(arg);
    for (const auto& b : delta2)
        gs.push_back(identity(b.type));
    return rescalc::compose(u, gs);
}

Morphism FreeModel::permute(const Morphism& f, const Permutation& sigma) { return sym_act(f, sigma); }

Morphism FreeModel::lambda(const Morphism& body, std::size_t k) { return curry(body, k); }

Morphism FreeModel::apply(const Morphism& fun, const std::vector<Morphism>& args) {
    Context ctx{{source_var(1), fun.target}};
    std::vector<TermP> vars;
    std::vector<Morphism> gs{fun};
    for (std::size_t i = 0; i < args.size(); ++i) {
        ctx.push_back({source_var(i + 2), args[i].target});
        vars.push_back(var(source_var(i + 2)));
        gs.push_back(args[i]);
    }
    if (!fun.target->is_arrow())
        throw Error(Errc::StructureMismatch, "applying a morphism whose target is not an arrow");
    auto ev = make_morphism(sig_, system_, ctx, app(var(source_var(1)), std::move(vars)), fun.target->result);
    return rescalc::compose(ev, gs);
}

Morphism FreeModel::generator(const std::string& name, const ArrowDecl& decl) {
    Context ctx;
    std::vector<TermP> vars;
    for (std::size_t i = 0; i < decl.sources.size(); ++i) {
        ctx.push_back({source_var(i + 1), decl.sources[i]});
        vars.push_back(var(source_var(i + 1)));
    }
    return make_morphism(sig_, system_, ctx, gen(name, std::move(vars)), decl.target);
}

namespace {

struct Destructuring {
    std::vector<std::pair<std::vector<Binder>, std::string>> records;  // outermost first
    std::vector<std::pair<std::string, std::string>> leaves;            // (variable, atom)
};

void destructure(const std::string& name, const TypeP& type, std::set<std::string>& avoid, Destructuring& out) {
    if (type->is_atom()) {
        out.leaves.emplace_back(name, type->name);
        return;
    }
    if (type->is_arrow())
        throw Error(Errc::NonRepresentableType, "cannot destructure " + to_string(type));
    std::vector<Binder> bs;
    for (const auto& c : type->args) {
        std::string fresh = fresh_name("d" + std::to_string(avoid.size()), avoid);
        avoid.insert(fresh);
        bs.push_back({fresh, c});
    }
    out.records.emplace_back(bs, name);
    for (const auto& b : bs)
        destructure(b.name, b.type, avoid, out);
}

TermP build_shape(const TypeP& a, const std::vector<std::string>& assigned, std::size_t& next) {
    if (a->is_atom())
        return var(assigned[next++]);
    std::vector<TermP> elems;
    for (const auto& c : a->args)
        elems.push_back(build_shape(c, assigned, next));
    return list(std::move(elems));
}

struct Enumeration {
    std::vector<Morphism> classes;
    std::size_t inhabitants = 0;
};

Enumeration enumerate(SignatureP sig, Fragment system, const Context& ctx, const TypeP& a, std::size_t bound) {
    if (!sig->discrete())
        throw Error(Errc::NonDiscrete, "inhabitant enumeration needs a discrete signature");
    if (system != Fragment::Rep && system != Fragment::SymRep)
        throw Error(Errc::FragmentViolation, "inhabitant enumeration supports the rep and symrep systems");
    for (const auto& b : ctx)
        if (!type_valid(*sig, b.type) || !rep_valid(b.type))
            throw Error(Errc::InvalidType, "context type " + to_string(b.type) + " is not valid here");
    if (!type_valid(*sig, a) || !rep_valid(a))
        throw Error(Errc::InvalidType, "type " + to_string(a) + " is not valid here");

    std::set<std::string> avoid;
    for (const auto& b : ctx)
        avoid.insert(b.name);
    Destructuring d;
    for (const auto& b : ctx)
        destructure(b.name, b.type, avoid, d);
    auto target_atoms = strictify(a);

    Enumeration out;
    if (target_atoms.size() != d.leaves.size())
        return out;
    std::vector<std::string> assigned(target_atoms.size());
    std::vector<bool> used(d.leaves.size(), false);
    std::function<void(std::size_t)> choose = [&](std::size_t i) {
        if (i == target_atoms.size()) {
            std::size_t next = 0;
            TermP t = build_shape(a, assigned, next);
            for (auto it = d.records.rbegin(); it != d.records.rend(); ++it)
                t = esub(t, it->first, var(it->second));
            if (size(t) > bound)
                return;
            try {
                check(*sig, system, ctx, t, a);
            } catch (const Error&) {
                return;
            }
            ++out.inhabitants;
            auto m = make_morphism(sig, system, ctx, t, a);
            for (const auto& c : out.classes)
                if (c == m)
                    return;
            out.classes.push_back(std::move(m));
            return;
        }
        for (std::size_t j = 0; j < d.leaves.size(); ++j) {
            if (used[j] || d.leaves[j].second != target_atoms[i])
                continue;
            used[j] = true;
            assigned[i] = d.leaves[j].first;
            choose(i + 1);
            used[j] = false;
        }
    };
    choose(0);
    return out;
}

} // namespace

std::vector<Morphism> enumerate_normal_inhabitants(SignatureP sig, Fragment system, const Context& ctx,
                                                   const TypeP& a, std::size_t size_bound) {
    return enumerate(std::move(sig), system, ctx, a, size_bound).classes;
}

std::uint64_t realizable_permutations(const Context& ctx, const TypeP& a) {
    auto src = strictify(ctx);
    auto tgt = strictify(a);
    std::map<std::string, int> count;
    for (const auto& x : src)
        ++count[x];
    for (const auto& x : tgt)
        --count[x];
    std::uint64_t out = 1;
    for (const auto& [atom_name, n] : count)
        if (n != 0)
            return 0;
    std::map<std::string, int> mult;
    for (const auto& x : src)
        out *= static_cast<std::uint64_t>(++mult[x]);
    return out;
}

std::string CoherenceReport::text() const {
    std::string out = "judgment: " + judgment + "\n";
    out += std::string("system: ") + fragment_name(system) + "\n";
    out += "inhabitants: " + std::to_string(inhabitants) + "\n";
    out += "classes: " + std::to_string(classes.size()) + "\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
        out += "class " + std::to_string(i + 1) + ": " + to_string(classes[i].morphism.rep);
        if (classes[i].sym)
            out += "  sym " + classes[i].sym->to_string();
        out += "\n";
    }
    for (const auto& w : witnesses)
        out += "witness: " + w + "\n";
    out += std::string("verdict: ") + (pass ? "PASS" : "FAIL") + "\n";
    return out;
}

CoherenceReport coherence_report(SignatureP sig, Fragment system, const Context& ctx, const TypeP& a,
                                 std::size_t size_bound) {
    CoherenceReport report;
    report.system = system;
    std::string c;
    for (std::size_t i = 0; i < ctx.size(); ++i)
        c += (i ? ", " : "") + ctx[i].name + ":" + to_string(ctx[i].type);
    report.judgment = (c.empty() ? "" : c + " ") + "|- _ : " + to_string(a);
    auto e = enumerate(sig, system, ctx, a, size_bound);
    report.inhabitants = e.inhabitants;
    for (auto& m : e.classes) {
        std::optional<Permutation> sym;
        if (system == Fragment::SymRep)
            sym = sym_extract(m);
        report.classes.push_back({std::move(m), std::move(sym)});
    }
    if (system == Fragment::Rep) {
        for (std::size_t i = 1; i < report.classes.size(); ++i)
            report.witnesses.push_back(to_string(report.classes[0].morphism.rep) + " differs from " +
                                       to_string(report.classes[i].morphism.rep));
    } else {
        for (std::size_t i = 0; i < report.classes.size(); ++i)
            for (std::size_t j = i + 1; j < report.classes.size(); ++j)
                if (report.classes[i].sym == report.classes[j].sym)
                    report.witnesses.push_back(to_string(report.classes[i].morphism.rep) + " and " +
                                               to_string(report.classes[j].morphism.rep) + " share sym " +
                                               report.classes[i].sym->to_string());
    }
    report.pass = report.witnesses.empty();
    return report;
}

} // namespace rescalc
