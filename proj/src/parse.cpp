#include "lts/syntax.hpp"
#include "lts/types.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace lts {

namespace {

enum class Tok { LParen, RParen, Colon, At, Atom, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

bool is_delimiter(char ch) {
    return std::isspace(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')' || ch == ':' || ch == ';' ||
           ch == '@';
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1;
    int column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            unsigned char ch = static_cast<unsigned char>(text[i]);
            if (ch == '\n') {
                ++line;
                column = 1;
            } else if ((ch & 0xC0) != 0x80) {
                ++column;
            }
        }
    };
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            advance(1);
        } else if (ch == ';') {
            while (i < text.size() && text[i] != '\n') advance(1);
        } else if (ch == '(' || ch == ')' || ch == ':' || ch == '@') {
            Tok kind = ch == '(' ? Tok::LParen : ch == ')' ? Tok::RParen : ch == ':' ? Tok::Colon : Tok::At;
            out.push_back({kind, std::string(1, ch), line, column});
            advance(1);
        } else {
            std::size_t start = i;
            std::size_t end = i;
            while (end < text.size() && !is_delimiter(text[end])) ++end;
            out.push_back({Tok::Atom, std::string(text.substr(start, end - start)), line, column});
            advance(end - start);
        }
    }
    out.push_back({Tok::End, "", line, column});
    return out;
}

bool looks_like_integer(std::string_view s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) return false;
    return std::all_of(s.begin() + start, s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
}

constexpr std::array<std::string_view, 6> kReserved = {"lambda", "if", "declare-refinement", "tt", "ff", "none"};

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }

    Token next() {
        Token t = peek();
        if (pos_ < tokens_.size() - 1) ++pos_;
        return t;
    }

    [[noreturn]] void fail(const std::string& message, const Token& at) const {
        throw SyntaxError(message, at.line, at.column, at.kind == Tok::End ? "<end of input>" : at.text);
    }

    Token expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail(std::string("expected ") + what, peek());
        return next();
    }

    void expect_end() {
        if (peek().kind != Tok::End) fail("unexpected trailing input", peek());
    }

    std::string identifier() {
        Token t = expect(Tok::Atom, "identifier");
        if (!is_valid_identifier(t.text)) fail("invalid identifier", t);
        return t.text;
    }

    Constant constant() {
        Token t = expect(Tok::Atom, "constant");
        auto c = constant_from_name(t.text);
        if (!c) fail("unknown constant", t);
        return *c;
    }

    Type type() {
        Token t = next();
        if (t.kind == Tok::Atom) {
            if (t.text == "Top") return Type::top();
            if (t.text == "Number") return Type::number();
            if (t.text == "True") return Type::true_type();
            if (t.text == "False") return Type::false_type();
            if (t.text == "Boolean") return Type::boolean();
            if (t.text == "Bot") return Type::bot();
            fail("unknown type", t);
        }
        if (t.kind != Tok::LParen) fail("expected type", t);
        Token head = expect(Tok::Atom, "type constructor");
        if (head.text == "U") {
            std::vector<Type> members;
            while (peek().kind != Tok::RParen) {
                if (peek().kind == Tok::End) fail("unterminated union", peek());
                members.push_back(type());
            }
            next();
            return Type::union_of(std::move(members));
        }
        if (head.text == "->") {
            Type arg = type();
            Type result = type();
            Latent latent;
            if (peek().kind == Tok::Colon) {
                next();
                latent = type();
            }
            expect(Tok::RParen, "')'");
            return Type::arrow(std::move(arg), std::move(result), std::move(latent));
        }
        if (head.text == "Refinement") {
            Constant c = constant();
            expect(Tok::RParen, "')'");
            return refinement(c);
        }
        fail("unknown type constructor", head);
    }

    Expr expr() {
        Token t = next();
        if (t.kind == Tok::Atom) {
            if (t.text == "#t") return Expr::boolean(true);
            if (t.text == "#f") return Expr::boolean(false);
            if (looks_like_integer(t.text)) {
                std::string digits = t.text[0] == '+' ? t.text.substr(1) : t.text;
                return Expr::num(Integer(digits));
            }
            if (auto c = constant_from_name(t.text)) return Expr::constant(*c);
            if (!is_valid_identifier(t.text)) fail("unexpected token", t);
            return Expr::var(t.text);
        }
        if (t.kind != Tok::LParen) fail("expected expression", t);
        if (peek().kind == Tok::Atom && peek().text == "lambda") {
            next();
            expect(Tok::LParen, "'(' before parameter");
            std::string param = identifier();
            expect(Tok::Colon, "':'");
            Type annot = type();
            expect(Tok::RParen, "')' after parameter type");
            Expr body = expr();
            expect(Tok::RParen, "')' closing lambda");
            return Expr::abs(std::move(param), std::move(annot), std::move(body));
        }
        if (peek().kind == Tok::Atom && peek().text == "if") {
            next();
            Expr test = expr();
            Expr then_branch = expr();
            Expr else_branch = expr();
            expect(Tok::RParen, "')' closing if");
            return Expr::if_(std::move(test), std::move(then_branch), std::move(else_branch));
        }
        Expr rator = expr();
        Expr rand = expr();
        expect(Tok::RParen, "')' closing application");
        return Expr::app(std::move(rator), std::move(rand));
    }

    VisiblePred pred() {
        if (peek().kind == Tok::Atom && peek(1).kind == Tok::End) {
            Token t = next();
            if (t.text == "tt") return VisiblePred::tt();
            if (t.text == "ff") return VisiblePred::ff();
            if (t.text == "none") return VisiblePred::none();
            if (!is_valid_identifier(t.text)) fail("invalid identifier", t);
            return VisiblePred::of_var(t.text);
        }
        Type t = type();
        expect(Tok::At, "'@'");
        return VisiblePred::type_of(std::move(t), identifier());
    }

    Program program() {
        std::vector<Constant> declared;
        while (peek().kind == Tok::LParen && peek(1).kind == Tok::Atom && peek(1).text == "declare-refinement") {
            next();
            next();
            declared.push_back(constant());
            expect(Tok::RParen, "')' closing declare-refinement");
        }
        Expr e = expr();
        expect_end();
        return Program{std::move(declared), std::move(e)};
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

bool is_valid_identifier(std::string_view name) {
    if (name.empty() || name[0] == '#') return false;
    if (std::any_of(name.begin(), name.end(), is_delimiter)) return false;
    if (looks_like_integer(name)) return false;
    if (constant_from_name(name)) return false;
    return std::find(kReserved.begin(), kReserved.end(), name) == kReserved.end();
}

Expr parse_expr(std::string_view text) {
    Parser p(text);
    Expr e = p.expr();
    p.expect_end();
    return e;
}

Type parse_type(std::string_view text) {
    Parser p(text);
    Type t = p.type();
    p.expect_end();
    return t;
}

VisiblePred parse_pred(std::string_view text) {
    Parser p(text);
    VisiblePred pred = p.pred();
    p.expect_end();
    return pred;
}

Program parse_program(std::string_view text) {
    Parser p(text);
    return p.program();
}

}  // namespace lts
