#pragma once

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "stablepb/program.hpp"

namespace stablepb {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

namespace detail {

enum class Tok { Ident, Int, LBrace, RBrace, LBrack, RBrack, Comma, Eq, Minus, Dot, If, Not, False, End };

struct Token {
    Tok kind;
    std::string text;
    long long value = 0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws_and_comments();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= text_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                id += text_[pos_];
                bump();
            }
            if (id == "not")
                tok_.kind = Tok::Not;
            else if (id == "false")
                tok_.kind = Tok::False;
            else {
                tok_.kind = Tok::Ident;
                tok_.text = id;
            }
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                int d = text_[pos_] - '0';
                if (v > (9223372036854775807LL - d) / 10)
                    throw ParseError(line_, col_, "integer literal too large");
                v = v * 10 + d;
                bump();
            }
            tok_.kind = Tok::Int;
            tok_.value = v;
            return;
        }
        switch (c) {
        case '{': tok_.kind = Tok::LBrace; bump(); return;
        case '}': tok_.kind = Tok::RBrace; bump(); return;
        case '[': tok_.kind = Tok::LBrack; bump(); return;
        case ']': tok_.kind = Tok::RBrack; bump(); return;
        case ',': tok_.kind = Tok::Comma; bump(); return;
        case '=': tok_.kind = Tok::Eq; bump(); return;
        case '-': tok_.kind = Tok::Minus; bump(); return;
        case '.': tok_.kind = Tok::Dot; bump(); return;
        case ':':
            bump();
            if (pos_ < text_.size() && text_[pos_] == '-') {
                bump();
                tok_.kind = Tok::If;
                return;
            }
            throw ParseError(line_, col_, "expected ':-'");
        default:
            throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
    }

    void skip_ws_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    Program parse() {
        Program p;
        while (lex_.peek().kind != Tok::End)
            p.rules.push_back(parse_rule(p.atoms));
        return p;
    }

private:
    Rule parse_rule(AtomTable& atoms) {
        Rule r;
        if (lex_.peek().kind == Tok::False) {
            lex_.next();
            r.head = WeightAtom::falsum();
        } else {
            r.head = parse_watom(atoms);
        }
        if (lex_.peek().kind == Tok::If) {
            lex_.next();
            r.body.push_back(parse_watom(atoms));
            while (lex_.peek().kind == Tok::Comma) {
                lex_.next();
                r.body.push_back(parse_watom(atoms));
            }
        }
        expect(Tok::Dot, "'.'");
        return r;
    }

    WeightAtom parse_watom(AtomTable& atoms) {
        WeightAtom w;
        Tok k = lex_.peek().kind;
        if (k == Tok::Int) {
            w.lower = lex_.next().value;
            k = lex_.peek().kind;
            if (k != Tok::LBrace && k != Tok::LBrack)
                fail("expected '{' or '[' after bound");
        } else if (k == Tok::Ident || k == Tok::Not) {
            // Sugar: a stands for 1{a}, not a for {a}0.
            auto [neg, atom] = parse_lit(atoms);
            return neg ? WeightAtom::unit_negation(atom) : WeightAtom::unit(atom);
        } else if (k != Tok::LBrace && k != Tok::LBrack) {
            fail("expected weight atom");
        }
        if (lex_.peek().kind == Tok::LBrace) {
            lex_.next();
            if (lex_.peek().kind != Tok::RBrace) {
                for (;;) {
                    auto [neg, atom] = parse_lit(atoms);
                    w.elems.push_back({atom, neg, 1});
                    if (lex_.peek().kind != Tok::Comma)
                        break;
                    lex_.next();
                }
            }
            expect(Tok::RBrace, "'}'");
        } else {
            expect(Tok::LBrack, "'['");
            if (lex_.peek().kind != Tok::RBrack) {
                for (;;) {
                    auto [neg, atom] = parse_lit(atoms);
                    expect(Tok::Eq, "'='");
                    bool minus = false;
                    if (lex_.peek().kind == Tok::Minus) {
                        lex_.next();
                        minus = true;
                    }
                    Token v = expect(Tok::Int, "weight");
                    w.elems.push_back({atom, neg, minus ? -v.value : v.value});
                    if (lex_.peek().kind != Tok::Comma)
                        break;
                    lex_.next();
                }
            }
            expect(Tok::RBrack, "']'");
        }
        if (lex_.peek().kind == Tok::Int)
            w.upper = lex_.next().value;
        return w;
    }

    std::pair<bool, AtomId> parse_lit(AtomTable& atoms) {
        bool neg = false;
        if (lex_.peek().kind == Tok::Not) {
            lex_.next();
            neg = true;
        }
        Token t = expect(Tok::Ident, "atom name");
        if (t.text.rfind("__aux_", 0) == 0)
            throw ParseError(t.line, t.col, "the prefix '__aux_' is reserved for generated atoms");
        return {neg, atoms.intern(t.text)};
    }

    Token expect(Tok kind, const char* what) {
        if (lex_.peek().kind != kind)
            fail(std::string("expected ") + what);
        return lex_.next();
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(lex_.peek().line, lex_.peek().col, msg);
    }

    Lexer lex_;
};

}  // namespace detail

/// Parse a program in the textual weight-constraint grammar.
inline Program parse_program(const std::string& text) {
    return detail::Parser(text).parse();
}

}  // namespace stablepb
