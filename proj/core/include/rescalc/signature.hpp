#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace rescalc {

enum class Kind { Representable, Closed, Autonomous };

const char* kind_name(Kind k);

struct Type;
using TypeP = std::shared_ptr<const Type>;

// Atom(name) | Tensor(args) | Arrow(args, result). The arrow domain is kept
// as a plain list, never as a nested Tensor node.
struct Type {
    enum class Tag { Atom, Tensor, Arrow };

    Tag tag = Tag::Atom;
    std::string name;
    std::vector<TypeP> args;
    TypeP result;

    bool is_atom() const { return tag == Tag::Atom; }
    bool is_tensor() const { return tag == Tag::Tensor; }
    bool is_arrow() const { return tag == Tag::Arrow; }
};

TypeP atom(std::string name);
TypeP tensor(std::vector<TypeP> args);
TypeP unit();
TypeP arrow(std::vector<TypeP> args, TypeP result);

bool type_eq(const TypeP& a, const TypeP& b);
std::string to_string(const TypeP& a);

// Tensor nesting depth; atoms have depth 0.
int tensor_depth(const TypeP& a);

bool rep_valid(const TypeP& a);
bool closed_valid(const TypeP& a);
bool kind_valid(Kind k, const TypeP& a);

void collect_atoms(const TypeP& a, std::set<std::string>& out);

struct ArrowDecl {
    std::vector<TypeP> sources;
    TypeP target;
};

struct Signature {
    Kind kind = Kind::Autonomous;
    std::vector<std::string> atoms;
    std::map<std::string, ArrowDecl> arrows;

    bool has_atom(const std::string& name) const;
    const ArrowDecl* find_arrow(const std::string& name) const;
    bool discrete() const { return arrows.empty(); }
};

using SignatureP = std::shared_ptr<const Signature>;

Signature make_signature(Kind kind, std::vector<std::string> atoms,
                         std::vector<std::pair<std::string, ArrowDecl>> arrows);

Signature discrete_signature(Kind kind, std::vector<std::string> atoms);

// True iff every atom of t belongs to sig and t lies in the grammar of sig.kind.
bool type_valid(const Signature& sig, const TypeP& t);

} // namespace rescalc
