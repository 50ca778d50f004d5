#include "rescalc/signature.hpp"

#include "rescalc/error.hpp"

#include <algorithm>

namespace rescalc {

const char* kind_name(Kind k) {
    switch (k) {
    case Kind::Representable: return "representable";
    case Kind::Closed: return "closed";
    case Kind::Autonomous: return "autonomous";
    }
    return "?";
}

TypeP atom(std::string name) {
    auto t = std::make_shared<Type>();
    t->tag = Type::Tag::Atom;
    t->name = std::move(name);
    return t;
}

TypeP tensor(std::vector<TypeP> args) {
    auto t = std::make_shared<Type>();
    t->tag = Type::Tag::Tensor;
    t->args = std::move(args);
    return t;
}

TypeP unit() { return tensor({}); }

TypeP arrow(std::vector<TypeP> args, TypeP result) {
    auto t = std::make_shared<Type>();
    t->tag = Type::Tag::Arrow;
    t->args = std::move(args);
    t->result = std::move(result);
    return t;
}

bool type_eq(const TypeP& a, const TypeP& b) {
    if (a == b)
        return true;
    if (!a || !b || a->tag != b->tag || a->args.size() != b->args.size())
        return false;
    if (a->is_atom())
        return a->name == b->name;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!type_eq(a->args[i], b->args[i]))
            return false;
    return !a->is_arrow() || type_eq(a->result, b->result);
}

std::string to_string(const TypeP& a) {
    if (!a)
        return "?";
    switch (a->tag) {
    case Type::Tag::Atom:
        return a->name;
    case Type::Tag::Tensor: {
        std::string out = "(";
        for (std::size_t i = 0; i < a->args.size(); ++i) {
            if (i)
                out += '*';
            out += to_string(a->args[i]);
        }
        return out + ")";
    }
    case Type::Tag::Arrow: {
        std::string out = "[";
        for (std::size_t i = 0; i < a->args.size(); ++i) {
            if (i)
                out += ',';
            out += to_string(a->args[i]);
        }
        return out + "] -o " + to_string(a->result);
    }
    }
    return "?";
}

int tensor_depth(const TypeP& a) {
    int inner = 0;
    for (const auto& x : a->args)
        inner = std::max(inner, tensor_depth(x));
    if (a->is_arrow())
        inner = std::max(inner, tensor_depth(a->result));
    return inner + (a->is_tensor() ? 1 : 0);
}

bool rep_valid(const TypeP& a) {
    if (a->is_arrow())
        return false;
    return std::all_of(a->args.begin(), a->args.end(), rep_valid);
}

bool closed_valid(const TypeP& a) {
    if (a->is_tensor())
        return false;
    if (a->is_arrow() && !closed_valid(a->result))
        return false;
    return std::all_of(a->args.begin(), a->args.end(), closed_valid);
}

bool kind_valid(Kind k, const TypeP& a) {
    switch (k) {
    case Kind::Representable: return rep_valid(a);
    case Kind::Closed: return closed_valid(a);
    case Kind::Autonomous: return true;
    }
    return false;
}

void collect_atoms(const TypeP& a, std::set<std::string>& out) {
    if (a->is_atom())
        out.insert(a->name);
    for (const auto& x : a->args)
        collect_atoms(x, out);
    if (a->is_arrow())
        collect_atoms(a->result, out);
}

bool Signature::has_atom(const std::string& name) const {
    return std::find(atoms.begin(), atoms.end(), name) != atoms.end();
}

const ArrowDecl* Signature::find_arrow(const std::string& name) const {
    auto it = arrows.find(name);
    return it == arrows.end() ? nullptr : &it->second;
}

bool type_valid(const Signature& sig, const TypeP& t) {
    if (!kind_valid(sig.kind, t))
        return false;
    std::set<std::string> used;
    collect_atoms(t, used);
    return std::all_of(used.begin(), used.end(), [&](const std::string& n) { return sig.has_atom(n); });
}

Signature make_signature(Kind kind, std::vector<std::string> atoms,
                         std::vector<std::pair<std::string, ArrowDecl>> arrows) {
    Signature sig;
    sig.kind = kind;
    std::set<std::string> seen;
    for (auto& a : atoms) {
        if (!seen.insert(a).second)
            throw Error(Errc::DuplicateName, "atom '" + a + "' declared twice");
        sig.atoms.push_back(std::move(a));
    }
    for (auto& [name, decl] : arrows) {
        if (sig.arrows.count(name) || seen.count(name))
            throw Error(Errc::DuplicateName, "generator '" + name + "' declared twice");
        for (const auto& s : decl.sources)
            if (!type_valid(sig, s))
                throw Error(Errc::InvalidType, "source type " + to_string(s) + " of '" + name +
                                                   "' is not valid for a " + kind_name(kind) + " signature");
        if (!decl.target || !type_valid(sig, decl.target))
            throw Error(Errc::InvalidType, "target type of '" + name + "' is not valid for a " +
                                               kind_name(kind) + " signature");
        sig.arrows.emplace(name, std::move(decl));
    }
    return sig;
}

Signature discrete_signature(Kind kind, std::vector<std::string> atoms) {
    return make_signature(kind, std::move(atoms), {});
}

} // namespace rescalc
