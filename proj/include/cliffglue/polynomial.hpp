#pragma once

#include "cliffglue/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace cliffglue {

// Sparse multivariate polynomial over the rationals. Monomials are exponent
// vectors of fixed length num_vars; zero coefficients are never stored, so
// equality is structural.
class Polynomial {
public:
    using Monomial = std::vector<unsigned>;

    Polynomial() = default;
    explicit Polynomial(unsigned num_vars) : num_vars_(num_vars) {}

    static Polynomial constant(unsigned num_vars, const Rat& c) {
        Polynomial p(num_vars);
        if (c != 0) p.terms_[Monomial(num_vars, 0)] = c;
        return p;
    }

    static Polynomial variable(unsigned num_vars, unsigned index) {
        if (index >= num_vars) throw Error("variable index out of range");
        Polynomial p(num_vars);
        Monomial m(num_vars, 0);
        m[index] = 1;
        p.terms_[m] = 1;
        return p;
    }

    unsigned num_vars() const { return num_vars_; }
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == Monomial(num_vars_, 0));
    }

    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw Error("polynomial is not constant");
        return terms_.begin()->second;
    }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) {
            unsigned t = 0;
            for (unsigned e : m) t += e;
            if (t > d) d = t;
        }
        return d;
    }

    void add_term(const Monomial& m, const Rat& c) {
        if (m.size() != num_vars_) throw Error("monomial length mismatch");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0) terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial operator+(const Polynomial& o) const {
        require_same_ring(o);
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    Polynomial operator-() const {
        Polynomial r(num_vars_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Polynomial operator*(const Polynomial& o) const {
        require_same_ring(o);
        Polynomial r(num_vars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                Monomial m(num_vars_);
                for (unsigned i = 0; i < num_vars_; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }

    Polynomial scaled(const Rat& s) const {
        Polynomial r(num_vars_);
        if (s == 0) return r;
        for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
        return r;
    }

    bool operator==(const Polynomial& o) const {
        return num_vars_ == o.num_vars_ && terms_ == o.terms_;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Rat eval(const std::vector<Rat>& point) const {
        if (point.size() != num_vars_) throw Error("evaluation point dimension mismatch");
        Rat total = 0;
        for (const auto& [m, c] : terms_) {
            Rat v = c;
            for (unsigned i = 0; i < num_vars_; ++i)
                for (unsigned e = 0; e < m[i]; ++e) v *= point[i];
            total += v;
        }
        return total;
    }

    // Deterministic printer: monomials in the (lexicographic) map order.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rat a = c;
            if (first) {
                if (a < 0) {
                    out += "-";
                    a = -a;
                }
            } else {
                out += (a < 0) ? " - " : " + ";
                if (a < 0) a = -a;
            }
            first = false;
            std::string vars;
            for (unsigned i = 0; i < num_vars_; ++i) {
                if (m[i] == 0) continue;
                if (!vars.empty()) vars += "*";
                vars += "x" + std::to_string(i);
                if (m[i] > 1) vars += "^" + std::to_string(m[i]);
            }
            if (vars.empty()) {
                out += rat_to_string(a);
            } else {
                if (a != 1) out += rat_to_string(a) + "*";
                out += vars;
            }
        }
        return out;
    }

private:
    void require_same_ring(const Polynomial& o) const {
        if (num_vars_ != o.num_vars_) throw Error("polynomial ring mismatch (num_vars)");
    }

    unsigned num_vars_ = 0;
    std::map<Monomial, Rat> terms_;
};

}  // namespace cliffglue
