#pragma once

#include "cliffglue/polynomial.hpp"

#include <string>

namespace cliffglue {

// Ring instance descriptor: polynomials in x0..x{n-1} extended by the single
// non-smooth generator |x_k|. Since |x_k|^2 = x_k^2 the extension has degree
// one and every element has a canonical representation f + g*|x_k|.
struct AbsRing {
    unsigned num_vars = 1;
    unsigned abs_var = 0;

    bool operator==(const AbsRing& o) const {
        return num_vars == o.num_vars && abs_var == o.abs_var;
    }
    bool operator!=(const AbsRing& o) const { return !(*this == o); }
};

class AbsElement {
public:
    AbsElement() : AbsElement(AbsRing{}) {}
    explicit AbsElement(AbsRing ring)
        : ring_(ring), smooth_(ring.num_vars), abs_(ring.num_vars) {
        check_ring_valid();
    }
    AbsElement(AbsRing ring, Polynomial smooth_part, Polynomial abs_part)
        : ring_(ring), smooth_(std::move(smooth_part)), abs_(std::move(abs_part)) {
        check_ring_valid();
        if (smooth_.num_vars() != ring_.num_vars || abs_.num_vars() != ring_.num_vars)
            throw Error("abs element parts disagree with ring num_vars");
    }

    static AbsElement constant(AbsRing ring, const Rat& c) {
        return {ring, Polynomial::constant(ring.num_vars, c), Polynomial(ring.num_vars)};
    }
    static AbsElement variable(AbsRing ring, unsigned index) {
        return {ring, Polynomial::variable(ring.num_vars, index), Polynomial(ring.num_vars)};
    }
    static AbsElement abs_generator(AbsRing ring) {
        return {ring, Polynomial(ring.num_vars), Polynomial::constant(ring.num_vars, 1)};
    }

    const AbsRing& ring() const { return ring_; }
    const Polynomial& smooth_part() const { return smooth_; }
    const Polynomial& abs_part() const { return abs_; }

    bool is_zero() const { return smooth_.is_zero() && abs_.is_zero(); }

    // A nonzero polynomial multiple of |x_k| has mismatched one-sided jets at
    // x_k = 0, so the represented function is smooth iff the abs part vanishes.
    bool is_smooth() const { return abs_.is_zero(); }

    AbsElement operator+(const AbsElement& o) const {
        require_same_ring(o);
        return {ring_, smooth_ + o.smooth_, abs_ + o.abs_};
    }
    AbsElement operator-() const { return {ring_, -smooth_, -abs_}; }
    AbsElement operator-(const AbsElement& o) const { return *this + (-o); }

    // (f1 + g1|x|)(f2 + g2|x|) = (f1 f2 + g1 g2 x^2) + (f1 g2 + f2 g1)|x|
    AbsElement operator*(const AbsElement& o) const {
        require_same_ring(o);
        Polynomial xk = Polynomial::variable(ring_.num_vars, ring_.abs_var);
        return {ring_, smooth_ * o.smooth_ + (abs_ * o.abs_) * (xk * xk),
                smooth_ * o.abs_ + o.smooth_ * abs_};
    }

    AbsElement scaled(const Rat& s) const { return {ring_, smooth_.scaled(s), abs_.scaled(s)}; }

    bool operator==(const AbsElement& o) const {
        return ring_ == o.ring_ && smooth_ == o.smooth_ && abs_ == o.abs_;
    }
    bool operator!=(const AbsElement& o) const { return !(*this == o); }

    Rat eval(const std::vector<Rat>& point) const {
        Rat a = point.at(ring_.abs_var);
        if (a < 0) a = -a;
        return smooth_.eval(point) + abs_.eval(point) * a;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string gen = "abs(x" + std::to_string(ring_.abs_var) + ")";
        if (abs_.is_zero()) return smooth_.to_string();
        std::string a = "(" + abs_.to_string() + ")*" + gen;
        if (smooth_.is_zero()) return a;
        return smooth_.to_string() + " + " + a;
    }

private:
    void check_ring_valid() const {
        if (ring_.num_vars == 0 || ring_.abs_var >= ring_.num_vars)
            throw Error("invalid abs ring parameters");
    }
    void require_same_ring(const AbsElement& o) const {
        if (ring_ != o.ring_) throw Error("abs ring mismatch");
    }

    AbsRing ring_;
    Polynomial smooth_;
    Polynomial abs_;
};

// Parses the plain-text grammar: rationals p/q, variables x0..x{n-1},
// operators + - * ^, parentheses, and abs(xk) where k is the ring's abs_var.
AbsElement parse_abs_element(const std::string& text, AbsRing ring);

}  // namespace cliffglue
