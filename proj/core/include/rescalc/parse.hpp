#pragma once

#include "rescalc/signature.hpp"
#include "rescalc/syntax.hpp"
#include "rescalc/typing.hpp"

#include <string>

namespace rescalc {

struct Judgment {
    Context ctx;
    TermP term;
    TypeP type;
};

// `ctx |- s == t : a`, the input of an equality query.
struct Equation {
    Context ctx;
    TermP lhs;
    TermP rhs;
    TypeP type;
};

struct SignatureDecl {
    std::vector<std::string> atoms;
    std::vector<std::pair<std::string, ArrowDecl>> arrows;
};

// Concrete syntax:
//   types     o | (a1 * ... * ak) | () | [a1, ..., ak] -o b
//   terms     x | <s1, ...> | s[x1:a1, ... := t] | \<x1:a1, ...>. s | s <t1, ...> | f(s1, ...)
//   judgment  x1:a1, ..., xn:an |- s : a
// Errors are reported as ParseError with the line and column in the message.
TypeP parse_type(const std::string& text);
TermP parse_term(const std::string& text);
Context parse_context(const std::string& text);
Judgment parse_judgment(const std::string& text);
Equation parse_equation(const std::string& text);

// `atoms o, p; arrow f : o, o -> (o * o);`
SignatureDecl parse_signature(const std::string& text);

std::string to_string(const Context& ctx);
std::string to_string(const Judgment& j);

} // namespace rescalc
