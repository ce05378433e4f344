#include "formdim/expr_parser.hpp"

#include <cctype>
#include <cstdlib>

#include "formdim/errors.hpp"

namespace formdim {

namespace {

enum class Tok { Ident, Number, Plus, Minus, Star, Slash, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::string text;
    int column;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& current() const { return tok_; }

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        tok_.column = static_cast<int>(pos_) + 1;
        if (pos_ >= text_.size()) {
            tok_ = {Tok::End, "", tok_.column};
            return;
        }
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            tok_ = {Tok::Ident, text_.substr(start, pos_ - start), static_cast<int>(start) + 1};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
                ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                ++pos_;
                if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
                    ++pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
            tok_ = {Tok::Number, text_.substr(start, pos_ - start), static_cast<int>(start) + 1};
            return;
        }
        ++pos_;
        switch (c) {
        case '+': tok_ = {Tok::Plus, "+", tok_.column}; return;
        case '-': tok_ = {Tok::Minus, "-", tok_.column}; return;
        case '*': tok_ = {Tok::Star, "*", tok_.column}; return;
        case '/': tok_ = {Tok::Slash, "/", tok_.column}; return;
        case '(': tok_ = {Tok::LParen, "(", tok_.column}; return;
        case ')': tok_ = {Tok::RParen, ")", tok_.column}; return;
        case ',': tok_ = {Tok::Comma, ",", tok_.column}; return;
        default: tok_ = {Tok::End, std::string(1, c), tok_.column}; unexpected_ = true; return;
        }
    }

    bool unexpected_char() const { return unexpected_; }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    Token tok_{Tok::End, "", 1};
    bool unexpected_ = false;
};

class ExprParser {
public:
    ExprParser(const std::string& text, const SymbolTable& syms, int line)
        : lex_(text), syms_(syms), line_(line) {}

    ExprPtr parse() {
        ExprPtr e = parse_sum();
        if (lex_.current().kind != Tok::End || lex_.unexpected_char())
            fail("unexpected token '" + lex_.current().text + "'");
        return e;
    }

private:
    Lexer lex_;
    const SymbolTable& syms_;
    int line_;

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, line_ == 0 ? 1 : line_, lex_.current().column);
    }

    bool accept(Tok k) {
        if (lex_.current().kind == k) {
            lex_.advance();
            return true;
        }
        return false;
    }

    void expect(Tok k, const char* what) {
        if (!accept(k))
            fail(std::string("expected ") + what + " before '" + lex_.current().text + "'");
    }

    ExprPtr parse_sum() {
        std::vector<ExprPtr> terms;
        terms.push_back(parse_product());
        while (true) {
            if (accept(Tok::Plus)) {
                terms.push_back(parse_product());
            } else if (accept(Tok::Minus)) {
                ExprPtr rhs = parse_product();
                if (rhs->kind == ExprKind::NumericConstant)
                    terms.push_back(constant(-rhs->value));
                else
                    terms.push_back(mul(constant(-1.0), rhs));
            } else {
                break;
            }
        }
        if (terms.size() == 1)
            return terms[0];
        return sum(std::move(terms));
    }

    ExprPtr parse_product() {
        ExprPtr e = parse_unary();
        while (true) {
            if (accept(Tok::Star))
                e = mul(e, parse_unary());
            else if (accept(Tok::Slash))
                e = div(e, parse_unary());
            else
                return e;
        }
    }

    ExprPtr parse_unary() {
        if (accept(Tok::Minus)) {
            ExprPtr e = parse_unary();
            if (e->kind == ExprKind::NumericConstant)
                return constant(-e->value);
            return mul(constant(-1.0), e);
        }
        return parse_atom();
    }

    ExprPtr parse_atom() {
        const Token tok = lex_.current();
        if (accept(Tok::LParen)) {
            ExprPtr e = parse_sum();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (tok.kind == Tok::Number) {
            lex_.advance();
            return constant(std::strtod(tok.text.c_str(), nullptr));
        }
        if (tok.kind != Tok::Ident)
            fail("expected expression before '" + tok.text + "'");
        lex_.advance();
        if (lex_.current().kind == Tok::LParen)
            return parse_call(tok.text);
        return resolve(tok);
    }

    ExprPtr resolve(const Token& tok) {
        if (tok.text == "dx")
            return dx();
        if (tok.text == "ds")
            return ds();
        auto qi = syms_.quantities.find(tok.text);
        if (qi != syms_.quantities.end())
            return quantity_ref(qi->second);
        auto fi = syms_.fields.find(tok.text);
        if (fi != syms_.fields.end())
            return field(tok.text, fi->second);
        throw ParseError("undeclared identifier '" + tok.text + "'", line_ == 0 ? 1 : line_,
                         tok.column);
    }

    Rational parse_rational_literal() {
        bool negative = accept(Tok::Minus);
        bool parens = accept(Tok::LParen);
        if (parens)
            negative = negative || accept(Tok::Minus);
        const Token num = lex_.current();
        if (num.kind != Tok::Number || num.text.find('.') != std::string::npos)
            fail("expected an integer or p/q rational exponent");
        lex_.advance();
        std::int64_t n = std::strtoll(num.text.c_str(), nullptr, 10);
        std::int64_t d = 1;
        if (accept(Tok::Slash)) {
            const Token den = lex_.current();
            if (den.kind != Tok::Number || den.text.find('.') != std::string::npos)
                fail("expected a positive integer exponent denominator");
            lex_.advance();
            d = std::strtoll(den.text.c_str(), nullptr, 10);
            if (d <= 0)
                fail("exponent denominator must be positive");
        }
        if (parens)
            expect(Tok::RParen, "')'");
        return Rational(negative ? -n : n, d);
    }

    ExprPtr parse_call(const std::string& fn) {
        expect(Tok::LParen, "'('");

        if (fn == "identity") {
            const Token arg = lex_.current();
            if (arg.kind != Tok::Number || arg.text.find('.') != std::string::npos)
                fail("identity() takes an integer extent");
            lex_.advance();
            expect(Tok::RParen, "')'");
            return identity(static_cast<int>(std::strtol(arg.text.c_str(), nullptr, 10)));
        }
        if (fn == "pow") {
            ExprPtr base = parse_sum();
            expect(Tok::Comma, "','");
            const Rational r = parse_rational_literal();
            expect(Tok::RParen, "')'");
            return pow(base, r);
        }

        ExprPtr first = parse_sum();
        if (fn == "inner" || fn == "dot") {
            expect(Tok::Comma, "','");
            ExprPtr second = parse_sum();
            expect(Tok::RParen, "')'");
            return fn == "inner" ? inner(first, second) : dot(first, second);
        }
        expect(Tok::RParen, "')'");

        if (fn == "grad")
            return grad(first, syms_.dimension);
        if (fn == "div")
            return trace(grad(first, syms_.dimension));
        if (fn == "ln")
            return ln(first);
        if (fn == "sqrt")
            return formdim::sqrt(first);
        if (fn == "abs")
            return formdim::abs(first);
        if (fn == "det")
            return determinant(first);
        if (fn == "tr")
            return trace(first);
        if (fn == "sym")
            return sym(first);
        if (fn == "transpose")
            return transpose(first);
        fail("unknown function '" + fn + "'");
    }
};

} // namespace

ExprPtr parse_expression(const std::string& text, const SymbolTable& symbols, int line_offset) {
    return ExprParser(text, symbols, line_offset).parse();
}

} // namespace formdim
