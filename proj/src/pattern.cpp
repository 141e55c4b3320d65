#include "cliffglue/pattern.hpp"

#include <sstream>

namespace cliffglue {

EntryPattern EntryPattern::from_token(char c) {
    switch (c) {
        case 'Z':
        case 'z':
            return zero();
        case 'P':
        case 'p':
            return poly_only();
        case 'A':
        case 'a':
            return abs_only();
        case 'B':
        case 'b':
            return full();
        default:
            throw Error(std::string("unknown pattern token '") + c + "'");
    }
}

bool MatrixPattern::subset_of(const MatrixPattern& o) const {
    if (n != o.n) throw Error("pattern size mismatch");
    for (unsigned i = 0; i < n * n; ++i)
        if (!cells[i].subset_of(o.cells[i])) return false;
    return true;
}

MatrixPattern MatrixPattern::operator|(const MatrixPattern& o) const {
    if (n != o.n) throw Error("pattern size mismatch");
    MatrixPattern r(n);
    for (unsigned i = 0; i < n * n; ++i) r.cells[i] = cells[i] | o.cells[i];
    return r;
}

std::string MatrixPattern::to_string() const {
    std::string out;
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            if (j) out += ' ';
            out += at(i, j).token();
        }
        if (i + 1 < n) out += '\n';
    }
    return out;
}

MatrixPattern MatrixPattern::parse(const std::string& grid) {
    std::vector<std::vector<EntryPattern>> rows;
    std::istringstream in(grid);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        std::vector<EntryPattern> row;
        while (ls >> tok) {
            if (tok.size() != 1) throw Error("pattern token must be a single letter: " + tok);
            row.push_back(EntryPattern::from_token(tok[0]));
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error("empty pattern grid");
    unsigned n = static_cast<unsigned>(rows.size());
    MatrixPattern p(n);
    for (unsigned i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw Error("pattern grid is not square");
        for (unsigned j = 0; j < n; ++j) p.at(i, j) = rows[i][j];
    }
    return p;
}

bool VectorPattern::subset_of(const VectorPattern& o) const {
    if (coords.size() != o.coords.size()) throw Error("vector pattern size mismatch");
    for (unsigned i = 0; i < coords.size(); ++i)
        if (!coords[i].subset_of(o.coords[i])) return false;
    return true;
}

MatrixPattern pattern_product(const MatrixPattern& a, const MatrixPattern& b) {
    if (a.n != b.n) throw Error("pattern size mismatch");
    MatrixPattern r(a.n);
    for (unsigned i = 0; i < a.n; ++i)
        for (unsigned k = 0; k < a.n; ++k) {
            EntryPattern acc;
            for (unsigned j = 0; j < a.n; ++j) acc = acc | (a.at(i, j) * b.at(j, k));
            r.at(i, k) = acc;
        }
    return r;
}

VectorPattern pattern_apply(const MatrixPattern& a, const VectorPattern& v) {
    if (a.n != v.size()) throw Error("pattern size mismatch");
    VectorPattern r(std::vector<EntryPattern>(a.n));
    for (unsigned i = 0; i < a.n; ++i) {
        EntryPattern acc;
        for (unsigned j = 0; j < a.n; ++j) acc = acc | (a.at(i, j) * v.coords[j]);
        r.coords[i] = acc;
    }
    return r;
}

MatrixPattern algebra_closure(const std::vector<MatrixPattern>& generators, unsigned size,
                              const std::optional<MatrixPattern>& constraint) {
    if (generators.empty()) throw Error("algebra_closure needs at least one generator");
    MatrixPattern allowed = constraint.value_or(MatrixPattern::all_allowed(size));
    if (allowed.n != size) throw Error("constraint size mismatch");

    MatrixPattern p(size);
    for (const auto& g : generators) {
        if (g.n != size) throw Error("generator size mismatch");
        if (!g.subset_of(allowed)) throw Error("generator escapes the ambient constraint");
        p = p | g;
    }
    // all-poly constants of the ambient algebra
    for (unsigned i = 0; i < size * size; ++i)
        if (!allowed.cells[i].is_zero()) p.cells[i] = p.cells[i] | EntryPattern::poly_only();

    for (;;) {
        MatrixPattern next = p | pattern_product(p, p);
        if (next == p) return p;
        p = next;
    }
}

MatrixPattern max_smooth_action_pattern(const VectorPattern& vin, const MatrixPattern& constraint) {
    unsigned n = constraint.n;
    if (vin.size() != n) throw Error("vector pattern size mismatch");

    // A vector space diffeology contains every ordinary smooth plot, so each
    // coordinate admits polynomial terms no matter how it was declared.
    VectorPattern v = vin;
    for (auto& c : v.coords) c.poly = true;

    // Per-flag admissibility. A term kind f may appear at entry (i,j) only if
    // the entry is structurally allowed, evaluation against the j-th and i-th
    // coordinate directions stays plot-shaped (f <= v_i and f <= v_j), and
    // multiplying any term of the j-th coordinate lands inside the i-th one.
    auto admissible = [&](unsigned i, unsigned j, bool abs_flag) {
        if (constraint.at(i, j).is_zero()) return false;
        EntryPattern f = abs_flag ? EntryPattern::abs_only() : EntryPattern::poly_only();
        if (!f.subset_of(v.coords[i]) || !f.subset_of(v.coords[j])) return false;
        EntryPattern vj = v.coords[j];
        if (vj.poly && !(f * EntryPattern::poly_only()).subset_of(v.coords[i])) return false;
        if (vj.abs && !(f * EntryPattern::abs_only()).subset_of(v.coords[i])) return false;
        return true;
    };

    MatrixPattern p(n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            p.at(i, j) = {admissible(i, j, false), admissible(i, j, true)};

    // Closure under multiplication by the ambient all-poly constants, which
    // moves flags along allowed entries: right multiplication copies column j
    // into column k whenever (j,k) is allowed, left multiplication copies row
    // j into row i whenever (i,j) is allowed. Any flag that would be copied
    // onto a cell not carrying it is removed, until stable.
    for (bool changed = true; changed;) {
        changed = false;
        for (unsigned j = 0; j < n; ++j)
            for (unsigned k = 0; k < n; ++k) {
                if (constraint.at(j, k).is_zero()) continue;
                for (unsigned i = 0; i < n; ++i) {
                    EntryPattern kept = p.at(i, j) & p.at(i, k);
                    if (kept != p.at(i, j)) {
                        p.at(i, j) = kept;
                        changed = true;
                    }
                }
            }
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                if (constraint.at(i, j).is_zero()) continue;
                for (unsigned k = 0; k < n; ++k) {
                    EntryPattern kept = p.at(j, k) & p.at(i, k);
                    if (kept != p.at(j, k)) {
                        p.at(j, k) = kept;
                        changed = true;
                    }
                }
            }
    }
    return p;
}

AbsElement matrix_det(const std::vector<std::vector<AbsElement>>& m) {
    std::size_t n = m.size();
    if (n == 0) throw Error("determinant of empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw Error("determinant of non-square matrix");
    if (n == 1) return m[0][0];
    AbsRing ring = m[0][0].ring();
    AbsElement det(ring);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<AbsElement>> minor;
        minor.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<AbsElement> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        AbsElement term = m[0][j] * matrix_det(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

bool check_function_smooth(MatrixFn fn, const std::vector<std::vector<AbsElement>>& plot) {
    std::size_t n = plot.size();
    if (n == 0) throw Error("empty plot matrix");
    for (const auto& row : plot) {
        if (row.size() != n) throw Error("plot matrix is not square");
        for (const auto& e : row)
            if (e.ring() != plot[0][0].ring()) throw Error("abs ring mismatch in plot matrix");
    }
    if (fn == MatrixFn::trace) {
        AbsElement tr(plot[0][0].ring());
        for (std::size_t i = 0; i < n; ++i) tr = tr + plot[i][i];
        return tr.is_smooth();
    }
    return matrix_det(plot).is_smooth();
}

}  // namespace cliffglue
