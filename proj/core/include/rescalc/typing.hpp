#pragma once

#include "rescalc/perm.hpp"
#include "rescalc/signature.hpp"
#include "rescalc/syntax.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace rescalc {

// An ordered, repetition-free list of variable bindings.
using Context = std::vector<Binder>;

std::vector<std::string> context_names(const Context& ctx);
std::vector<TypeP> context_types(const Context& ctx);
Context restrict_context(const Context& ctx, const std::vector<std::string>& names);

struct Derivation;
using DerivationP = std::shared_ptr<const Derivation>;

// One node of the unique typing derivation. Premises are aligned with the
// children of `term`. At merging nodes the premise contexts, concatenated in
// block order, are sent to positions of `ctx` by `shuffle`; for explicit
// substitutions the blocks are (delta, gamma, delta') where gamma types the
// argument and the body is typed under delta, binders, delta'.
struct Derivation {
    std::string rule;
    Context ctx;
    TermP term;
    TypeP type;
    std::vector<DerivationP> premises;
    BlockProfile blocks;
    Permutation shuffle;
};

DerivationP check(const Signature& sig, Fragment system, const Context& ctx, const TermP& s, const TypeP& a);

// Same as check but returns whatever type the term has under ctx.
DerivationP derive(const Signature& sig, Fragment system, const Context& ctx, const TermP& s);

struct Inference {
    Context ctx;
    TypeP type;
    DerivationP derivation;
};

// The context is built by identity merges (premise concatenation); free
// variable types come from `free_types`.
Inference infer(const Signature& sig, Fragment system, const TermP& s,
                const std::map<std::string, TypeP>& free_types);

// Free variables in premise-concatenation order.
std::vector<std::string> concatenation_order(const TermP& s);

// Number of body-context variables placed before the binders of the explicit
// substitution `s` when it is typed under ctx.
std::size_t esub_split(const Context& ctx, const TermP& s);

// Splits to try, preferred first. When the argument has no free variables the
// binders may sit anywhere in the body context; the remaining positions follow
// in ascending order and are used only by the non-symmetric system.
std::vector<std::size_t> esub_split_candidates(const Context& ctx, const TermP& s);

DerivationP admissible_permute(const Signature& sig, Fragment system, const DerivationP& d, const Permutation& sigma);

bool derivation_eq(const DerivationP& a, const DerivationP& b);

// Preorder list of (position, node) pairs.
std::vector<std::pair<Position, DerivationP>> derivation_nodes(const DerivationP& d);

std::string to_string(const DerivationP& d);

std::vector<std::string> strictify(const TypeP& a);
std::vector<std::string> strictify(const Context& ctx);

enum class SizeFlavor { Rep, Closed, Tensor1, Arrow2 };

std::size_t type_size(const TypeP& a, SizeFlavor flavor);

} // namespace rescalc
