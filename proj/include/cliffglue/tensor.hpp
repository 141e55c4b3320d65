#pragma once

#include "cliffglue/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cliffglue {

// Element of the tensor algebra on R^n: exact-coefficient combination of
// words over the basis indices 0..n-1. The degree cap bounds word length;
// the Clifford quotient never needs words longer than 2n.
class TensorElement {
public:
    using Word = std::vector<std::uint8_t>;

    explicit TensorElement(unsigned n, unsigned degree_cap = 0)
        : n_(n), cap_(degree_cap ? degree_cap : n) {}

    static TensorElement basis_word(unsigned n, const Word& w, unsigned degree_cap = 0) {
        TensorElement t(n, degree_cap ? degree_cap : std::max<unsigned>(n, w.size()));
        t.add_term(w, 1);
        return t;
    }

    unsigned n() const { return n_; }
    unsigned degree_cap() const { return cap_; }
    const std::map<Word, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Word& w, const Rat& c) {
        if (w.size() > cap_) throw Error("tensor word exceeds degree cap");
        for (auto i : w)
            if (i >= n_) throw Error("tensor word index out of range");
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            if (c != 0) terms_[w] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TensorElement operator+(const TensorElement& o) const {
        require_compatible(o);
        TensorElement r = *this;
        for (const auto& [w, c] : o.terms_) r.add_term(w, c);
        return r;
    }

    TensorElement operator-() const {
        TensorElement r(n_, cap_);
        for (const auto& [w, c] : terms_) r.terms_[w] = -c;
        return r;
    }
    TensorElement operator-(const TensorElement& o) const { return *this + (-o); }

    TensorElement scaled(const Rat& s) const {
        TensorElement r(n_, cap_);
        if (s == 0) return r;
        for (const auto& [w, c] : terms_) r.terms_[w] = c * s;
        return r;
    }

    // Tensor-product concatenation of words.
    TensorElement operator*(const TensorElement& o) const {
        require_compatible(o);
        TensorElement r(n_, cap_);
        for (const auto& [wa, ca] : terms_)
            for (const auto& [wb, cb] : o.terms_) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.add_term(w, ca * cb);
            }
        return r;
    }

    bool operator==(const TensorElement& o) const {
        return n_ == o.n_ && terms_ == o.terms_;
    }
    bool operator!=(const TensorElement& o) const { return !(*this == o); }

    // Degree of a homogeneous element; throws on mixed degrees.
    unsigned homogeneous_degree() const {
        if (terms_.empty()) return 0;
        unsigned d = static_cast<unsigned>(terms_.begin()->first.size());
        for (const auto& [w, c] : terms_)
            if (w.size() != d) throw Error("tensor element is not homogeneous");
        return d;
    }

private:
    void require_compatible(const TensorElement& o) const {
        if (n_ != o.n_) throw Error("tensor dimension mismatch");
    }

    unsigned n_;
    unsigned cap_;
    std::map<Word, Rat> terms_;
};

// Normalized symmetrization: (1/d!) sum over permutations of each word.
TensorElement sym(const TensorElement& t);
// Normalized antisymmetrization with permutation signs.
TensorElement alt(const TensorElement& t);

}  // namespace cliffglue
