#pragma once

#include "rescalc/signature.hpp"
#include "rescalc/syntax.hpp"
#include "rescalc/typing.hpp"

#include <set>
#include <string>
#include <vector>

namespace rescalc {

enum class RedexKind { Beta1, Beta2, Eta1, Eta2 };

const char* redex_kind_name(RedexKind k);

struct Redex {
    Position position;
    RedexKind kind;

    friend bool operator==(const Redex&, const Redex&) = default;
};

// Simultaneous linear substitution s{xs := ts}, capture avoiding.
TermP substitute(const TermP& s, const std::vector<std::string>& xs, const std::vector<TermP>& ts);

// All redexes of a well-typed term in preorder, Beta before Eta at a position.
std::vector<Redex> find_redexes(const Signature& sig, Fragment system, const Context& ctx, const TermP& s);

// Supplies fresh names y1, y2, ... that avoid a growing set of used names.
class FreshSupply {
public:
    explicit FreshSupply(std::set<std::string> avoid = {}) : avoid_(std::move(avoid)) {}
    std::string next();
    void avoid(const std::set<std::string>& names) { avoid_.insert(names.begin(), names.end()); }

private:
    std::set<std::string> avoid_;
    int counter_ = 0;
};

TermP step(const Signature& sig, Fragment system, const Context& ctx, const TermP& s, const Redex& r);
TermP step(const Signature& sig, Fragment system, const Context& ctx, const TermP& s, const Redex& r,
           FreshSupply& fresh);

enum class MeasureKind { Size, Eta1, Eta2 };

std::size_t measure(const Signature& sig, Fragment system, const Context& ctx, const TermP& s, MeasureKind kind);

struct Measures {
    std::size_t size = 0;
    std::size_t eta1 = 0;
    std::size_t eta2 = 0;

    friend bool operator==(const Measures&, const Measures&) = default;
};

Measures measures(const Signature& sig, Fragment system, const Context& ctx, const TermP& s);

struct TraceStep {
    Redex redex;
    TermP term;
    Measures after;
};

struct Trace {
    TermP initial;
    Measures start;
    std::vector<TraceStep> steps;
};

// One line per step: `step <n>: <kind> @ <path> ; size=<s> eta1=<e1> eta2=<e2>`.
std::vector<std::string> trace_lines(const Trace& t);

struct Normalization {
    TermP nf;
    Trace trace;
};

std::size_t step_budget(const Measures& m);

Normalization normalize(const Signature& sig, Fragment system, const Context& ctx, const TermP& s);

// Canonical representative of the structural-equivalence class: explicit
// substitutions are floated outward as far as their scoping allows and every
// resulting chain is put in a fixed order.
TermP struct_canon(const TermP& s);
bool struct_equiv(const TermP& s, const TermP& t);

bool equivalent(const Signature& sig, Fragment system, const Context& ctx, const TermP& s, const TermP& t,
                const TypeP& a);

} // namespace rescalc
