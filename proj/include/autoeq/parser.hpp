#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "autoeq/automorphism.hpp"
#include "autoeq/comm_poly.hpp"
#include "autoeq/free_poly.hpp"
#include "autoeq/groebner.hpp"
#include "autoeq/scalar.hpp"
#include "autoeq/uni_poly.hpp"

namespace autoeq {

/// Syntax error carrying a 1-based source position.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t line, std::size_t column)
        : error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

namespace detail {

struct Token {
    enum class Kind { number, ident, symbol, end } kind;
    std::string text;
    std::size_t offset;
};

class Lexer {
public:
    explicit Lexer(std::string text) : text_(std::move(text)) { scan(); }

    const Token& peek() const { return tokens_[pos_]; }
    Token next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }
    bool accept(const std::string& sym) {
        if (peek().kind == Token::Kind::symbol && peek().text == sym) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(const std::string& sym) {
        if (!accept(sym)) fail("expected '" + sym + "'", peek());
    }
    [[noreturn]] void fail(const std::string& what, const Token& at) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at.offset && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string found = at.kind == Token::Kind::end ? "end of input" : "'" + at.text + "'";
        throw parse_error(what + ", found " + found, line, col);
    }

private:
    void scan() {
        std::size_t i = 0;
        while (i < text_.size()) {
            char ch = text_[i];
            if (std::isspace(static_cast<unsigned char>(ch))) {
                ++i;
                continue;
            }
            std::size_t start = i;
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
                tokens_.push_back({Token::Kind::number, text_.substr(start, i - start), start});
            } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                while (i < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i])) || text_[i] == '_' ||
                                            text_[i] == '\''))
                    ++i;
                tokens_.push_back({Token::Kind::ident, text_.substr(start, i - start), start});
            } else if (std::string("+-*/^()[],;.").find(ch) != std::string::npos) {
                ++i;
                tokens_.push_back({Token::Kind::symbol, std::string(1, ch), start});
            } else {
                Token bad{Token::Kind::symbol, std::string(1, ch), start};
                tokens_.push_back({Token::Kind::end, "", text_.size()});
                fail("unexpected character", bad);
            }
        }
        tokens_.push_back({Token::Kind::end, "", text_.size()});
    }

    std::string text_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

/// Recursive descent over a ring described by callbacks.
template <class P>
struct Ring {
    std::function<P(const Scalar&)> constant;
    std::function<std::optional<P>(const std::string&)> atom;
    std::function<P(const P&, const P&)> commutator;
};

template <class P>
class ExprParser {
public:
    ExprParser(Lexer& lex, const Ring<P>& ring) : lex_(lex), ring_(ring) {}

    P expr() {
        bool negate = lex_.accept("-");
        if (!negate) lex_.accept("+");
        P acc = product();
        if (negate) acc = ring_.constant(Scalar(-1)) * acc;
        while (true) {
            if (lex_.accept("+")) {
                acc = acc + product();
            } else if (lex_.accept("-")) {
                acc = acc - product();
            } else {
                return acc;
            }
        }
    }

private:
    bool starts_factor() const {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::number || t.kind == Token::Kind::ident) return true;
        return t.kind == Token::Kind::symbol && (t.text == "(" || t.text == "[");
    }

    P product() {
        P acc = power();
        while (true) {
            Token star = lex_.peek();
            if (lex_.accept("*")) {
                if (lex_.peek().kind == Token::Kind::symbol && lex_.peek().text == "*")
                    lex_.fail("'**' is not an operator", star);
                acc = acc * power();
            } else if (starts_factor()) {
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    P power() {
        P base = primary();
        if (!lex_.accept("^")) return base;
        Token t = lex_.next();
        if (t.kind != Token::Kind::number) lex_.fail("exponent must be a natural number", t);
        if (lex_.peek().kind == Token::Kind::symbol && lex_.peek().text == "/")
            lex_.fail("exponent must be a natural number", lex_.peek());
        if (t.text.size() > 6) lex_.fail("exponent too large", t);
        return base.pow(std::stol(t.text));
    }

    P primary() {
        Token t = lex_.next();
        if (t.kind == Token::Kind::number) {
            Scalar value(Integer(t.text));
            if (lex_.accept("/")) {
                Token d = lex_.next();
                if (d.kind != Token::Kind::number) lex_.fail("expected denominator", d);
                Integer den(d.text);
                if (den == 0) lex_.fail("zero denominator", d);
                value /= Scalar(den);
            }
            return ring_.constant(value);
        }
        if (t.kind == Token::Kind::ident) {
            auto a = ring_.atom(t.text);
            if (!a) lex_.fail("unknown identifier", t);
            return *a;
        }
        if (t.kind == Token::Kind::symbol && t.text == "(") {
            P inner = expr();
            lex_.expect(")");
            return inner;
        }
        if (t.kind == Token::Kind::symbol && t.text == "[") {
            if (!ring_.commutator) lex_.fail("commutator bracket in commutative input", t);
            P f = expr();
            lex_.expect(",");
            P g = expr();
            lex_.expect("]");
            return ring_.commutator(f, g);
        }
        lex_.fail("expected a term", t);
    }

    Lexer& lex_;
    const Ring<P>& ring_;
};

inline Ring<FreePoly> free_ring() {
    Ring<FreePoly> r;
    r.constant = [](const Scalar& c) { return FreePoly::word("", c); };
    r.atom = [](const std::string& name) -> std::optional<FreePoly> {
        if (name == "x") return free_x();
        if (name == "y") return free_y();
        if (name == "C") return commutator_xy();
        return std::nullopt;
    };
    r.commutator = [](const FreePoly& f, const FreePoly& g) { return commutator(f, g); };
    return r;
}

inline Ring<CommPoly> comm_ring(const VarsPtr& vars) {
    Ring<CommPoly> r;
    r.constant = [vars](const Scalar& c) { return CommPoly(vars, c); };
    r.atom = [vars](const std::string& name) -> std::optional<CommPoly> {
        for (std::size_t i = 0; i < vars->size(); ++i)
            if ((*vars)[i] == name) return CommPoly::variable(vars, i);
        return std::nullopt;
    };
    return r;
}

template <class P>
P parse_whole(const std::string& text, const Ring<P>& ring) {
    Lexer lex(text);
    ExprParser<P> p(lex, ring);
    P value = p.expr();
    if (lex.peek().kind != Token::Kind::end) lex.fail("unexpected input", lex.peek());
    return value;
}

inline Scalar scalar_arg(Lexer& lex) {
    static const VarsPtr none = make_vars({});
    auto ring = comm_ring(none);
    ExprParser<CommPoly> p(lex, ring);
    Token at = lex.peek();
    CommPoly c = p.expr();
    if (!c.is_constant()) lex.fail("expected a number", at);
    return c.constant_term();
}

inline ElementaryAut elementary(Lexer& lex) {
    Token t = lex.next();
    if (t.kind != Token::Kind::ident) lex.fail("expected tau, affine or tri", t);
    if (t.text == "tau") return ElementaryAut::tau();
    if (t.text == "affine") {
        lex.expect("(");
        Affine m;
        m.a = scalar_arg(lex);
        lex.expect(",");
        m.c = scalar_arg(lex);
        lex.expect(",");
        m.e = scalar_arg(lex);
        lex.expect(";");
        m.b = scalar_arg(lex);
        lex.expect(",");
        m.d = scalar_arg(lex);
        lex.expect(",");
        m.f = scalar_arg(lex);
        lex.expect(")");
        if (is_zero(m.a * m.d - m.b * m.c)) lex.fail("singular affine map", t);
        return ElementaryAut(m);
    }
    if (t.text == "tri") {
        static const VarsPtr yv = make_vars({"y"});
        lex.expect("(");
        Triangular r;
        r.alpha = scalar_arg(lex);
        lex.expect(";");
        auto ring = comm_ring(yv);
        ExprParser<CommPoly> p(lex, ring);
        r.p = UniPoly::from_comm(p.expr(), 0);
        lex.expect(";");
        r.beta = scalar_arg(lex);
        lex.expect(";");
        r.eta = scalar_arg(lex);
        lex.expect(")");
        if (is_zero(r.alpha) || is_zero(r.beta)) lex.fail("triangular map with zero scaling", t);
        return ElementaryAut(r);
    }
    lex.fail("expected tau, affine or tri", t);
}

}  // namespace detail

/// Expression in the free algebra; `[f,g]` is f*g - g*f and `C` is [x,y].
inline FreePoly parse_free(const std::string& text) { return detail::parse_whole(text, detail::free_ring()); }

/// Expression in the polynomial ring over `vars`.
inline CommPoly parse_comm(const std::string& text, const VarsPtr& vars = xy_vars()) {
    return detail::parse_whole(text, detail::comm_ring(vars));
}

/// Words like `tri(1; y^2; 1; 0) . tau`, rightmost factor applied first.
inline AutWord parse_aut(const std::string& text) {
    detail::Lexer lex(text);
    AutWord w;
    do {
        w.factors.push_back(detail::elementary(lex));
    } while (lex.accept("."));
    if (lex.peek().kind != detail::Token::Kind::end) lex.fail("unexpected input", lex.peek());
    return w;
}

/// Inverse of AlgebraicSystem::to_text.
inline AlgebraicSystem parse_system(const std::string& text) {
    std::vector<std::pair<std::string, std::size_t>> lines;
    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        ++line_no;
        lines.emplace_back(text.substr(start, end - start), line_no);
        start = end + 1;
    }
    AlgebraicSystem sys;
    bool have_vars = false;
    struct Body {
        std::string text;
        std::size_t line, offset;
    };
    std::vector<Body> eqs;
    std::optional<Body> neq;
    for (const auto& [line, no] : lines) {
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        std::size_t colon = line.find(':');
        std::string key = colon == std::string::npos ? "" : line.substr(first, colon - first);
        std::string body = colon == std::string::npos ? "" : line.substr(colon + 1);
        if (key == "vars") {
            if (have_vars) throw parse_error("duplicate vars line", no, first + 1);
            have_vars = true;
            detail::Lexer lex(body);
            VarList names;
            while (lex.peek().kind == detail::Token::Kind::ident) {
                names.push_back(lex.next().text);
                if (std::count(names.begin(), names.end(), names.back()) > 1)
                    throw parse_error("duplicate variable " + names.back(), no, first + 1);
            }
            if (lex.peek().kind != detail::Token::Kind::end)
                throw parse_error("expected a variable name", no, colon + 2 + lex.peek().offset);
            sys.vars = make_vars(std::move(names));
        } else if (key == "eq") {
            eqs.push_back({body, no, colon + 1});
        } else if (key == "neq") {
            if (neq) throw parse_error("more than one inequation", no, first + 1);
            neq = Body{body, no, colon + 1};
        } else {
            throw parse_error("expected vars:, eq: or neq:", no, first + 1);
        }
    }
    if (!have_vars) throw parse_error("missing vars line", 1, 1);
    auto parse_at = [&](const Body& b) {
        try {
            return parse_comm(b.text, sys.vars);
        } catch (const parse_error& e) {
            std::string what = e.what();
            throw parse_error(what.substr(what.find(": ") + 2), b.line, b.offset + e.column());
        }
    };
    for (const auto& b : eqs) sys.equations.push_back(parse_at(b));
    if (neq) sys.inequation = parse_at(*neq);
    return sys;
}

}  // namespace autoeq
