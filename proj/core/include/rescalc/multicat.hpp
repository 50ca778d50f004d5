#pragma once

#include "rescalc/perm.hpp"
#include "rescalc/rewrite.hpp"
#include "rescalc/signature.hpp"
#include "rescalc/syntax.hpp"
#include "rescalc/typing.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rescalc {

// Name of the i-th source variable, counting from 1.
std::string source_var(std::size_t i);

// A morphism of the free multicategory: the class of a term typed over the
// source variables v1, ..., vn.
struct Morphism {
    SignatureP sig;
    Fragment system = Fragment::Auto;
    std::vector<TypeP> source;
    TypeP target;
    TermP rep;
    TermP canon_nf;

    Context context() const;
};

// Typechecks `ctx |- s : a` and packages it with the context renamed to the
// source-variable scheme.
Morphism make_morphism(SignatureP sig, Fragment system, const Context& ctx, const TermP& s, const TypeP& a);

bool operator==(const Morphism& f, const Morphism& g);
std::string to_string(const Morphism& f);

Morphism identity(SignatureP sig, Fragment system, const TypeP& a);
Morphism compose(const Morphism& f, const std::vector<Morphism>& gs);

// Splits the tensor at source position k (0-based) into its components.
Morphism rep_elim(const Morphism& f, std::size_t k);
// Merges `count` source entries starting at `start` into one tensor.
Morphism rep_intro(const Morphism& f, std::size_t start, std::size_t count);

Morphism curry(const Morphism& f, std::size_t k);
Morphism uncurry(const Morphism& f);

Morphism sym_act(const Morphism& f, const Permutation& sigma);

// The permutation sigma with act(strictify(source), sigma) = strictify(target)
// underlying a discrete SymRep morphism.
Permutation sym_extract(const Morphism& f);

// Generic target of interpretation. The default let/permute-free structure
// operations raise StructureMismatch.
template <class V>
class Model {
public:
    virtual ~Model() = default;
    virtual V identity(const TypeP& a) = 0;
    virtual V compose(const V& f, const std::vector<V>& gs) = 0;
    // From parts typed gamma_i |- a_i to gamma_1...gamma_n |- (a_1 * ... * a_n).
    virtual V tensor(const std::vector<V>& parts) = 0;
    // From delta, xs, delta' |- b and gamma |- (xs types) to delta, gamma, delta' |- b.
    virtual V let(const V& body, const Context& delta, const std::vector<Binder>& xs, const Context& delta2,
                  const V& arg) = 0;
    // Re-types f at act(source, sigma).
    virtual V permute(const V& f, const Permutation& sigma) = 0;
    virtual V lambda(const V&, std::size_t) { throw Error(Errc::StructureMismatch, "model has no closed structure"); }
    virtual V apply(const V&, const std::vector<V>&) {
        throw Error(Errc::StructureMismatch, "model has no closed structure");
    }
    virtual V generator(const std::string& name, const ArrowDecl&) {
        throw Error(Errc::StructureMismatch, "model does not interpret generator '" + name + "'");
    }
};

template <class V>
V interpret(Model<V>& model, const Signature& sig, const DerivationP& d) {
    std::vector<V> parts;
    for (const auto& p : d->premises)
        parts.push_back(interpret(model, sig, p));
    const auto& s = d->term;
    auto reorder = [&](V v) {
        return d->shuffle.is_identity() ? v : model.permute(v, d->shuffle.inverse());
    };
    switch (s->kind) {
    case TermKind::Var: return model.identity(d->type);
    case TermKind::List: return reorder(model.tensor(parts));
    case TermKind::Gen: return reorder(model.compose(model.generator(s->name, *sig.find_arrow(s->name)), parts));
    case TermKind::ESub: {
        const Context& body_ctx = d->premises[0]->ctx;
        auto n_delta = static_cast<std::size_t>(d->blocks[0]);
        Context delta(body_ctx.begin(), body_ctx.begin() + static_cast<std::ptrdiff_t>(n_delta));
        Context delta2(body_ctx.begin() + static_cast<std::ptrdiff_t>(n_delta + s->binders.size()), body_ctx.end());
        return reorder(model.let(parts[0], delta, s->binders, delta2, parts[1]));
    }
    case TermKind::Abs: return model.lambda(parts[0], s->binders.size());
    case TermKind::App: {
        std::vector<V> args(parts.begin() + 1, parts.end());
        return reorder(model.apply(parts[0], args));
    }
    }
    throw Error(Errc::StructureMismatch, "unknown term constructor");
}

template <class V>
V interpret(Model<V>& model, const Morphism& f) {
    return interpret(model, *f.sig, check(*f.sig, f.system, f.context(), f.rep, f.target));
}

// Objects are lists of types; a morphism gamma -> a is a permutation p with
// act(strictify(gamma), p) = strictify(a).
struct PermValue {
    std::vector<TypeP> source;
    TypeP target;
    Permutation perm;
};

bool operator==(const PermValue& a, const PermValue& b);

class PermModel : public Model<PermValue> {
public:
    PermValue identity(const TypeP& a) override;
    PermValue compose(const PermValue& f, const std::vector<PermValue>& gs) override;
    PermValue tensor(const std::vector<PermValue>& parts) override;
    PermValue let(const PermValue& body, const Context& delta, const std::vector<Binder>& xs, const Context& delta2,
                  const PermValue& arg) override;
    PermValue permute(const PermValue& f, const Permutation& sigma) override;
    // Replaces `count` source entries starting at `start` by their tensor.
    PermValue unlet(const PermValue& f, std::size_t start, std::size_t count);
};

// Objects are atom multisets; every morphism witnesses that its source and
// target have equal tallies.
struct TallyValue {
    std::vector<TypeP> source;
    TypeP target;
};

class TallyModel : public Model<TallyValue> {
public:
    TallyValue identity(const TypeP& a) override;
    TallyValue compose(const TallyValue& f, const std::vector<TallyValue>& gs) override;
    TallyValue tensor(const std::vector<TallyValue>& parts) override;
    TallyValue let(const TallyValue& body, const Context& delta, const std::vector<Binder>& xs,
                   const Context& delta2, const TallyValue& arg) override;
    TallyValue permute(const TallyValue& f, const Permutation& sigma) override;
};

// The free multicategory itself, with generators sent to themselves.
class FreeModel : public Model<Morphism> {
public:
    FreeModel(SignatureP sig, Fragment system) : sig_(std::move(sig)), system_(system) {}
    Morphism identity(const TypeP& a) override;
    Morphism compose(const Morphism& f, const std::vector<Morphism>& gs) override;
    Morphism tensor(const std::vector<Morphism>& parts) override;
    Morphism let(const Morphism& body, const Context& delta, const std::vector<Binder>& xs, const Context& delta2,
                 const Morphism& arg) override;
    Morphism permute(const Morphism& f, const Permutation& sigma) override;
    Morphism lambda(const Morphism& body, std::size_t k) override;
    Morphism apply(const Morphism& fun, const std::vector<Morphism>& args) override;
    Morphism generator(const std::string& name, const ArrowDecl& decl) override;

private:
    SignatureP sig_;
    Fragment system_;
};

// Normal inhabitants of ctx |- a, one per structural-equivalence class.
std::vector<Morphism> enumerate_normal_inhabitants(SignatureP sig, Fragment system, const Context& ctx,
                                                   const TypeP& a, std::size_t size_bound);

// Number of atom-respecting bijections strictify(ctx) -> strictify(a).
std::uint64_t realizable_permutations(const Context& ctx, const TypeP& a);

struct CoherenceClass {
    Morphism morphism;
    std::optional<Permutation> sym;
};

struct CoherenceReport {
    std::string judgment;
    Fragment system = Fragment::Rep;
    std::size_t inhabitants = 0;
    std::vector<CoherenceClass> classes;
    bool pass = true;
    std::vector<std::string> witnesses;

    std::string text() const;
};

CoherenceReport coherence_report(SignatureP sig, Fragment system, const Context& ctx, const TypeP& a,
                                 std::size_t size_bound);

} // namespace rescalc
