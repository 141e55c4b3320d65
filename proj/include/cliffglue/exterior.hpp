#pragma once

#include "cliffglue/rational.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace cliffglue {

using Blade = std::uint32_t;  // bit i set = basis index i present, ascending order

inline unsigned blade_size(Blade b) { return static_cast<unsigned>(__builtin_popcount(b)); }

// "1", "e1", "e12", ... (1-based indices, ascending).
std::string blade_to_string(Blade b);

// Sign of merging two disjoint ascending index sets into one ascending set:
// (-1)^(number of transpositions), counted as pairs (a,b) with a in `left`,
// b in `right`, a > b.
int shuffle_sign(Blade left, Blade right);

// Element of the exterior algebra on R^n with exact coefficients, indexed by
// ascending basis subsets.
class ExteriorElement {
public:
    ExteriorElement() = default;
    explicit ExteriorElement(unsigned n) : n_(n) {}

    static ExteriorElement unit(unsigned n) {
        ExteriorElement e(n);
        e.comps_[0] = 1;
        return e;
    }
    static ExteriorElement basis_blade(unsigned n, Blade b) {
        ExteriorElement e(n);
        if (b >> n) throw Error("blade out of range");
        e.comps_[b] = 1;
        return e;
    }
    static ExteriorElement basis_vector(unsigned n, unsigned i) {
        if (i >= n) throw Error("basis index out of range");
        return basis_blade(n, Blade(1) << i);
    }

    unsigned n() const { return n_; }
    const std::map<Blade, Rat>& comps() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    Rat coeff(Blade b) const {
        auto it = comps_.find(b);
        return it == comps_.end() ? Rat(0) : it->second;
    }

    void add_term(Blade b, const Rat& c) {
        if (b >> n_) throw Error("blade out of range");
        auto it = comps_.find(b);
        if (it == comps_.end()) {
            if (c != 0) comps_[b] = c;
        } else {
            it->second += c;
            if (it->second == 0) comps_.erase(it);
        }
    }

    ExteriorElement operator+(const ExteriorElement& o) const {
        require_compatible(o);
        ExteriorElement r = *this;
        for (const auto& [b, c] : o.comps_) r.add_term(b, c);
        return r;
    }
    ExteriorElement operator-() const {
        ExteriorElement r(n_);
        for (const auto& [b, c] : comps_) r.comps_[b] = -c;
        return r;
    }
    ExteriorElement operator-(const ExteriorElement& o) const { return *this + (-o); }

    ExteriorElement scaled(const Rat& s) const {
        ExteriorElement r(n_);
        if (s == 0) return r;
        for (const auto& [b, c] : comps_) r.comps_[b] = c * s;
        return r;
    }

    bool operator==(const ExteriorElement& o) const {
        return n_ == o.n_ && comps_ == o.comps_;
    }
    bool operator!=(const ExteriorElement& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void require_compatible(const ExteriorElement& o) const {
        if (n_ != o.n_) throw Error("exterior dimension mismatch");
    }

    unsigned n_ = 0;
    std::map<Blade, Rat> comps_;
};

// Bilinear extension of the basis rule: zero on overlapping subsets,
// otherwise the shuffle-signed union.
ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b);

}  // namespace cliffglue
