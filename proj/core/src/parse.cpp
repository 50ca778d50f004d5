#include "rescalc/parse.hpp"

#include <cctype>

namespace rescalc {

namespace {

enum class Tok {
    Ident,
    LParen,
    RParen,
    LAngle,
    RAngle,
    LBrack,
    RBrack,
    Comma,
    Colon,
    Assign,
    Star,
    Backslash,
    Dot,
    Turnstile,
    Equals,
    Lollipop,
    Arrow,
    Semi,
    End,
};

const char* tok_text(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Star: return "'*'";
    case Tok::Backslash: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::Turnstile: return "'|-'";
    case Tok::Equals: return "'=='";
    case Tok::Lollipop: return "'-o'";
    case Tok::Arrow: return "'->'";
    case Tok::Semi: return "';'";
    case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) {
        throw Error(Errc::ParseError, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        int start_col = col;
        auto emit = [&](Tok k, std::size_t len) {
            out.push_back({k, src.substr(i, len), line, start_col});
            i += len;
            col += static_cast<int>(len);
        };
        auto next = [&](std::size_t k) { return i + k < src.size() ? src[i + k] : '\0'; };
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j]))
                ++j;
            emit(Tok::Ident, j - i);
            continue;
        }
        switch (c) {
        case '(': emit(Tok::LParen, 1); break;
        case ')': emit(Tok::RParen, 1); break;
        case '<': emit(Tok::LAngle, 1); break;
        case '>': emit(Tok::RAngle, 1); break;
        case '[': emit(Tok::LBrack, 1); break;
        case ']': emit(Tok::RBrack, 1); break;
        case ',': emit(Tok::Comma, 1); break;
        case '*': emit(Tok::Star, 1); break;
        case '\\': emit(Tok::Backslash, 1); break;
        case '.': emit(Tok::Dot, 1); break;
        case ';': emit(Tok::Semi, 1); break;
        case ':':
            if (next(1) == '=')
                emit(Tok::Assign, 2);
            else
                emit(Tok::Colon, 1);
            break;
        case '|':
            if (next(1) != '-')
                fail("expected '|-'");
            emit(Tok::Turnstile, 2);
            break;
        case '=':
            if (next(1) != '=')
                fail("expected '=='");
            emit(Tok::Equals, 2);
            break;
        case '-':
            if (next(1) == 'o' && !ident_char(next(2)))
                emit(Tok::Lollipop, 2);
            else if (next(1) == '>')
                emit(Tok::Arrow, 2);
            else
                fail("expected '-o' or '->'");
            break;
        default: fail(std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    const Token& peek() const { return toks_[pos_]; }
    bool at(Tok k) const { return peek().kind == k; }

    [[noreturn]] void fail(const std::string& msg) const {
        const auto& t = peek();
        throw Error(Errc::ParseError, std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg);
    }

    Token expect(Tok k) {
        if (!at(k))
            fail(std::string("expected ") + tok_text(k) + ", found " + tok_text(peek().kind) +
                 (peek().text.empty() ? "" : " '" + peek().text + "'"));
        return toks_[pos_++];
    }

    bool accept(Tok k) {
        if (!at(k))
            return false;
        ++pos_;
        return true;
    }

    void finish() {
        if (!at(Tok::End))
            fail(std::string("unexpected ") + tok_text(peek().kind) + " after the end of the input");
    }

    TypeP type() {
        if (at(Tok::Ident))
            return atom(expect(Tok::Ident).text);
        if (accept(Tok::LParen)) {
            std::vector<TypeP> parts;
            if (!at(Tok::RParen)) {
                parts.push_back(type());
                while (accept(Tok::Star))
                    parts.push_back(type());
            }
            expect(Tok::RParen);
            return tensor(std::move(parts));
        }
        if (accept(Tok::LBrack)) {
            std::vector<TypeP> dom;
            if (!at(Tok::RBrack)) {
                dom.push_back(type());
                while (accept(Tok::Comma))
                    dom.push_back(type());
            }
            expect(Tok::RBrack);
            expect(Tok::Lollipop);
            return arrow(std::move(dom), type());
        }
        fail(std::string("expected a type, found ") + tok_text(peek().kind));
    }

    Binder binder() {
        auto name = expect(Tok::Ident).text;
        expect(Tok::Colon);
        return {name, type()};
    }

    std::vector<Binder> binders(Tok stop) {
        std::vector<Binder> out;
        if (at(stop))
            return out;
        out.push_back(binder());
        while (accept(Tok::Comma))
            out.push_back(binder());
        return out;
    }

    std::vector<TermP> terms(Tok stop) {
        std::vector<TermP> out;
        if (at(stop))
            return out;
        out.push_back(term());
        while (accept(Tok::Comma))
            out.push_back(term());
        return out;
    }

    TermP term() {
        if (accept(Tok::Backslash)) {
            expect(Tok::LAngle);
            auto bs = binders(Tok::RAngle);
            expect(Tok::RAngle);
            expect(Tok::Dot);
            return abs(std::move(bs), term());
        }
        auto t = primary();
        for (;;) {
            if (accept(Tok::LAngle)) {
                auto args = terms(Tok::RAngle);
                expect(Tok::RAngle);
                t = app(t, std::move(args));
            } else if (accept(Tok::LBrack)) {
                auto bs = binders(Tok::Assign);
                expect(Tok::Assign);
                auto arg = term();
                expect(Tok::RBrack);
                t = esub(t, std::move(bs), arg);
            } else {
                return t;
            }
        }
    }

    TermP primary() {
        if (at(Tok::Ident)) {
            auto name = expect(Tok::Ident).text;
            if (accept(Tok::LParen)) {
                auto args = terms(Tok::RParen);
                expect(Tok::RParen);
                return gen(name, std::move(args));
            }
            return var(name);
        }
        if (accept(Tok::LAngle)) {
            auto elems = terms(Tok::RAngle);
            expect(Tok::RAngle);
            return list(std::move(elems));
        }
        if (accept(Tok::LParen)) {
            auto t = term();
            expect(Tok::RParen);
            return t;
        }
        fail(std::string("expected a term, found ") + tok_text(peek().kind));
    }

    Context context() { return binders(Tok::Turnstile); }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

TypeP parse_type(const std::string& text) {
    Parser p(text);
    auto t = p.type();
    p.finish();
    return t;
}

TermP parse_term(const std::string& text) {
    Parser p(text);
    auto t = p.term();
    p.finish();
    return t;
}

Context parse_context(const std::string& text) {
    Parser p(text);
    auto ctx = p.binders(Tok::End);
    p.finish();
    return ctx;
}

Judgment parse_judgment(const std::string& text) {
    Parser p(text);
    Judgment j;
    j.ctx = p.context();
    p.expect(Tok::Turnstile);
    j.term = p.term();
    p.expect(Tok::Colon);
    j.type = p.type();
    p.finish();
    return j;
}

Equation parse_equation(const std::string& text) {
    Parser p(text);
    Equation e;
    e.ctx = p.context();
    p.expect(Tok::Turnstile);
    e.lhs = p.term();
    p.expect(Tok::Equals);
    e.rhs = p.term();
    p.expect(Tok::Colon);
    e.type = p.type();
    p.finish();
    return e;
}

SignatureDecl parse_signature(const std::string& text) {
    Parser p(text);
    SignatureDecl out;
    while (!p.at(Tok::End)) {
        auto kw = p.expect(Tok::Ident).text;
        if (kw == "atoms") {
            if (!p.at(Tok::Semi)) {
                out.atoms.push_back(p.expect(Tok::Ident).text);
                while (p.accept(Tok::Comma))
                    out.atoms.push_back(p.expect(Tok::Ident).text);
            }
        } else if (kw == "arrow") {
            auto name = p.expect(Tok::Ident).text;
            p.expect(Tok::Colon);
            ArrowDecl decl;
            if (!p.at(Tok::Arrow)) {
                decl.sources.push_back(p.type());
                while (p.accept(Tok::Comma))
                    decl.sources.push_back(p.type());
            }
            p.expect(Tok::Arrow);
            decl.target = p.type();
            out.arrows.emplace_back(name, std::move(decl));
        } else {
            throw Error(Errc::ParseError, "unknown signature declaration '" + kw + "'");
        }
        p.expect(Tok::Semi);
    }
    return out;
}

std::string to_string(const Context& ctx) {
    std::string out;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (i)
            out += ", ";
        out += ctx[i].name + ":" + to_string(ctx[i].type);
    }
    return out;
}

std::string to_string(const Judgment& j) {
    std::string c = to_string(j.ctx);
    return (c.empty() ? "" : c + " ") + "|- " + to_string(j.term) + " : " + to_string(j.type);
}

} // namespace rescalc
