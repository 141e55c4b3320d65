#include "cliffglue/absring.hpp"

#include <cctype>

namespace cliffglue {
namespace {

// Recursive-descent parser for
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | primary ('^' uint)?
//   primary:= rational | 'x'uint | 'abs' '(' 'x'uint ')' | '(' expr ')'
class Parser {
public:
    Parser(const std::string& text, AbsRing ring) : text_(text), ring_(ring) {}

    AbsElement parse() {
        AbsElement e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

private:
    AbsElement expr() {
        AbsElement e = term();
        for (;;) {
            skip_ws();
            if (consume('+')) {
                e = e + term();
            } else if (consume('-')) {
                e = e - term();
            } else {
                return e;
            }
        }
    }

    AbsElement term() {
        AbsElement e = factor();
        for (;;) {
            skip_ws();
            if (consume('*'))
                e = e * factor();
            else
                return e;
        }
    }

    AbsElement factor() {
        skip_ws();
        if (consume('-')) return -factor();
        AbsElement e = primary();
        skip_ws();
        if (consume('^')) {
            unsigned k = parse_uint();
            AbsElement r = AbsElement::constant(ring_, 1);
            for (unsigned i = 0; i < k; ++i) r = r * e;
            return r;
        }
        return e;
    }

    AbsElement primary() {
        skip_ws();
        if (consume('(')) {
            AbsElement e = expr();
            expect(')');
            return e;
        }
        if (peek() == 'x') {
            ++pos_;
            unsigned idx = parse_uint();
            if (idx >= ring_.num_vars) fail("variable index out of range");
            return AbsElement::variable(ring_, idx);
        }
        if (text_.compare(pos_, 3, "abs") == 0) {
            pos_ += 3;
            skip_ws();
            expect('(');
            skip_ws();
            expect('x');
            unsigned idx = parse_uint();
            skip_ws();
            expect(')');
            if (idx != ring_.abs_var)
                fail("abs(x" + std::to_string(idx) + ") does not match ring generator abs(x" +
                     std::to_string(ring_.abs_var) + ")");
            return AbsElement::abs_generator(ring_);
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            std::string num = text_.substr(start, pos_ - start);
            skip_ws();
            if (consume('/')) {
                skip_ws();
                std::size_t dstart = pos_;
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
                if (dstart == pos_) fail("expected denominator");
                num += "/" + text_.substr(dstart, pos_ - dstart);
            }
            return AbsElement::constant(ring_, parse_rat(num));
        }
        fail("unexpected character");
    }

    unsigned parse_uint() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_) fail("expected number");
        return static_cast<unsigned>(std::stoul(text_.substr(start, pos_ - start)));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!consume(c)) fail(std::string("expected '") + c + "'");
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw Error("parse error at offset " + std::to_string(pos_) + ": " + why);
    }

    const std::string& text_;
    AbsRing ring_;
    std::size_t pos_ = 0;
};

}  // namespace

AbsElement parse_abs_element(const std::string& text, AbsRing ring) {
    return Parser(text, ring).parse();
}

}  // namespace cliffglue
