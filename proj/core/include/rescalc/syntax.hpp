#pragma once

#include "rescalc/error.hpp"
#include "rescalc/signature.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rescalc {

enum class Fragment { Rep, SymRep, SymClosed, Auto };

const char* fragment_name(Fragment f);
std::optional<Fragment> parse_fragment(const std::string& name);
bool is_symmetric(Fragment f);
// The grammar of types admitted by a fragment.
Kind fragment_kind(Fragment f);

enum class TermKind { Var, List, ESub, Abs, App, Gen };

struct Binder {
    std::string name;
    TypeP type;
};

struct Term;
using TermP = std::shared_ptr<const Term>;

// Children are stored uniformly in `kids`:
//   Var: none      List: elements       ESub: [body, arg]
//   Abs: [body]    App: [fun, args...]  Gen: arguments
struct Term {
    TermKind kind = TermKind::Var;
    std::string name;  // variable or generator name
    std::vector<Binder> binders;
    std::vector<TermP> kids;
};

TermP var(std::string name);
TermP list(std::vector<TermP> elems);
TermP esub(TermP body, std::vector<Binder> binders, TermP arg);
TermP abs(std::vector<Binder> binders, TermP body);
TermP app(TermP fun, std::vector<TermP> args);
TermP gen(std::string f, std::vector<TermP> args);

TermP with_kids(const TermP& t, std::vector<TermP> kids);

// Whether child `i` of t lies in the scope of t's binders.
bool binds_child(const Term& t, std::size_t i);

std::vector<std::string> free_vars(const TermP& s);
bool is_free_in(const std::string& x, const TermP& s);
std::vector<std::string> occurrences(const std::vector<std::string>& xs, const TermP& s);
std::size_t size(const TermP& s);

bool is_LT(const TermP& s);
bool is_AT(const TermP& s);

struct Subterm {
    Position pos;
    TermP term;
};

// Preorder (leftmost-outermost) enumeration of all subterm occurrences.
std::vector<Subterm> subterms(const TermP& s);
TermP subterm_at(const TermP& s, const Position& p);
TermP replace_at(const TermP& s, const Position& p, TermP replacement);

// Every name occurring in s, free or bound.
std::set<std::string> all_names(const TermP& s);

// Binders renamed to positional names; free names kept. Two terms are
// alpha-equivalent iff their canonical forms are structurally equal.
TermP alpha_canonical(const TermP& s);
bool structurally_equal(const TermP& a, const TermP& b);
bool alpha_eq(const TermP& a, const TermP& b);

// Renames binders so that no binder shadows a free name or another binder.
// Binders already distinct keep their names.
TermP clean(const TermP& s);

// Simultaneous renaming of free variables.
TermP rename_free(const TermP& s, const std::map<std::string, std::string>& renaming);

// Like rename_free, but binders that would capture a new name are renamed.
TermP rename_free_safe(const TermP& s, const std::map<std::string, std::string>& renaming);

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// First node outside the fragment's constructors, if any.
std::optional<Position> fragment_violation(const TermP& s, Fragment f);
bool in_fragment(const TermP& s, Fragment f);

std::string to_string(const TermP& s);

} // namespace rescalc
