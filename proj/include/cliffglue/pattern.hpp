#pragma once

#include "cliffglue/absring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cliffglue {

// Per-entry shape of plots into a matrix (or vector) space: which kinds of
// terms may appear, ordinary smooth ("poly") and/or multiples of the abs
// generator. Both flags false means the entry is forced zero.
struct EntryPattern {
    bool poly = false;
    bool abs = false;

    static constexpr EntryPattern zero() { return {false, false}; }
    static constexpr EntryPattern poly_only() { return {true, false}; }
    static constexpr EntryPattern abs_only() { return {false, true}; }
    static constexpr EntryPattern full() { return {true, true}; }

    bool is_zero() const { return !poly && !abs; }
    bool subset_of(EntryPattern o) const { return (!poly || o.poly) && (!abs || o.abs); }

    EntryPattern operator|(EntryPattern o) const { return {poly || o.poly, abs || o.abs}; }
    EntryPattern operator&(EntryPattern o) const { return {poly && o.poly, abs && o.abs}; }
    bool operator==(const EntryPattern& o) const = default;

    // Term-kind product: poly*poly -> poly, poly*abs -> abs and, because
    // |x|^2 = x^2, abs*abs -> poly.
    EntryPattern operator*(EntryPattern o) const {
        EntryPattern r;
        r.poly = (poly && o.poly) || (abs && o.abs);
        r.abs = (poly && o.abs) || (abs && o.poly);
        return r;
    }

    char token() const {
        if (is_zero()) return 'Z';
        if (poly && abs) return 'B';
        return poly ? 'P' : 'A';
    }
    static EntryPattern from_token(char c);
};

struct MatrixPattern {
    unsigned n = 0;
    std::vector<EntryPattern> cells;  // row-major n*n

    MatrixPattern() = default;
    explicit MatrixPattern(unsigned size) : n(size), cells(size * size) {}

    static MatrixPattern all_poly(unsigned size) {
        MatrixPattern p(size);
        for (auto& c : p.cells) c = EntryPattern::poly_only();
        return p;
    }
    static MatrixPattern all_allowed(unsigned size) {
        MatrixPattern p(size);
        for (auto& c : p.cells) c = EntryPattern::full();
        return p;
    }
    static MatrixPattern identity_poly(unsigned size) {
        MatrixPattern p(size);
        for (unsigned i = 0; i < size; ++i) p.at(i, i) = EntryPattern::poly_only();
        return p;
    }

    EntryPattern& at(unsigned i, unsigned j) { return cells[i * n + j]; }
    EntryPattern at(unsigned i, unsigned j) const { return cells[i * n + j]; }

    bool subset_of(const MatrixPattern& o) const;
    MatrixPattern operator|(const MatrixPattern& o) const;
    bool operator==(const MatrixPattern& o) const = default;

    std::string to_string() const;
    // One row per line, tokens P/A/B/Z separated by spaces.
    static MatrixPattern parse(const std::string& grid);
};

struct VectorPattern {
    std::vector<EntryPattern> coords;

    VectorPattern() = default;
    explicit VectorPattern(std::vector<EntryPattern> c) : coords(std::move(c)) {}
    unsigned size() const { return static_cast<unsigned>(coords.size()); }
    bool subset_of(const VectorPattern& o) const;
    bool operator==(const VectorPattern& o) const = default;
};

MatrixPattern pattern_product(const MatrixPattern& a, const MatrixPattern& b);
VectorPattern pattern_apply(const MatrixPattern& a, const VectorPattern& v);

// Least fixpoint containing the generators plus the all-poly constants of the
// ambient (sub)algebra, closed under sums and products. The constraint marks
// the ambient algebra's structurally allowed entries (default: everything).
MatrixPattern algebra_closure(const std::vector<MatrixPattern>& generators, unsigned size,
                              const std::optional<MatrixPattern>& constraint = std::nullopt);

// Greatest pattern P <= constraint whose conforming matrices act on
// v-conforming plots without leaving them, and which is stable under
// multiplication by the ambient all-poly constants. Shrinking fixpoint over
// the finite flag lattice; see the per-flag admissibility rule in the source.
MatrixPattern max_smooth_action_pattern(const VectorPattern& v, const MatrixPattern& constraint);

enum class MatrixFn { trace, det };

// Composes the function with a symbolic plot and decides smoothness exactly
// (trace as the diagonal sum, det by cofactor expansion in the abs ring).
bool check_function_smooth(MatrixFn fn, const std::vector<std::vector<AbsElement>>& plot);

AbsElement matrix_det(const std::vector<std::vector<AbsElement>>& m);

}  // namespace cliffglue
