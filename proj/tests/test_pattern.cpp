#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cliffglue/pattern.hpp"

#include <random>

using namespace cliffglue;

namespace {

const AbsRing kRing{1, 0};

MatrixPattern grid(const std::string& s) { return MatrixPattern::parse(s); }

// Random element conforming to an entry pattern.
AbsElement conforming(std::mt19937_64& rng, EntryPattern p) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    Polynomial f(1), g(1);
    if (p.poly)
        for (unsigned d = 0; d < 3; ++d) f.add_term({d}, Rat(coeff(rng)));
    if (p.abs)
        for (unsigned d = 0; d < 3; ++d) g.add_term({d}, Rat(coeff(rng)));
    return {kRing, f, g};
}

bool conforms(const AbsElement& e, EntryPattern p) {
    if (!p.poly && !e.smooth_part().is_zero()) return false;
    if (!p.abs && !e.abs_part().is_zero()) return false;
    return true;
}

MatrixPattern random_pattern(std::mt19937_64& rng, unsigned n) {
    std::uniform_int_distribution<int> flag(0, 3);
    MatrixPattern p(n);
    for (auto& c : p.cells) {
        int f = flag(rng);
        c = {(f & 1) != 0, (f & 2) != 0};
    }
    return p;
}

}  // namespace

TEST_CASE("pattern product follows the term-kind rules") {
    // abs at (2,2) times a poly constant at (2,1) puts abs at (2,1)
    MatrixPattern a = grid("Z Z\nZ A");
    MatrixPattern b = grid("Z Z\nP Z");
    CHECK(pattern_product(a, b) == grid("Z Z\nA Z"));

    // identity-shaped poly pattern is neutral
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        MatrixPattern p = random_pattern(rng, 3);
        CHECK(pattern_product(MatrixPattern::identity_poly(3), p) == p);
    }

    // abs squared becomes poly
    CHECK(pattern_product(a, a) == grid("Z Z\nZ P"));
}

TEST_CASE("closure of the single abs generator fills the whole algebra") {
    MatrixPattern gen = grid("Z Z\nZ A");
    MatrixPattern closure = algebra_closure({gen}, 2);
    CHECK(closure == grid("B B\nB B"));
}

TEST_CASE("closure of all-poly generators is all-poly") {
    MatrixPattern closure = algebra_closure({MatrixPattern::all_poly(2)}, 2);
    CHECK(closure == MatrixPattern::all_poly(2));
}

TEST_CASE("closure inside the block algebra keeps abs in the corner") {
    MatrixPattern gen = grid("Z Z Z\nZ Z Z\nZ Z A");
    MatrixPattern constraint = grid("B B Z\nB B Z\nZ Z B");
    MatrixPattern closure = algebra_closure({gen}, 3, constraint);
    CHECK(closure == grid("P P Z\nP P Z\nZ Z B"));
}

TEST_CASE("closure is idempotent and monotone") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        unsigned n = 2 + (t % 3);  // up to 4
        MatrixPattern g1 = random_pattern(rng, n);
        MatrixPattern g2 = random_pattern(rng, n);
        MatrixPattern small = algebra_closure({g1}, n);
        CHECK(algebra_closure({small}, n) == small);
        MatrixPattern big = algebra_closure({g1, g2}, n);
        CHECK(small.subset_of(big));
    }
}

TEST_CASE("pattern product is sound for conforming matrices") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 40; ++t) {
        unsigned n = 2 + (t % 2);
        MatrixPattern pa = random_pattern(rng, n);
        MatrixPattern pb = random_pattern(rng, n);
        std::vector<std::vector<AbsElement>> ma, mb;
        for (unsigned i = 0; i < n; ++i) {
            ma.emplace_back();
            mb.emplace_back();
            for (unsigned j = 0; j < n; ++j) {
                ma[i].push_back(conforming(rng, pa.at(i, j)));
                mb[i].push_back(conforming(rng, pb.at(i, j)));
            }
        }
        MatrixPattern prod = pattern_product(pa, pb);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned k = 0; k < n; ++k) {
                AbsElement entry(kRing);
                for (unsigned j = 0; j < n; ++j) entry = entry + ma[i][j] * mb[j][k];
                CHECK(conforms(entry, prod.at(i, k)));
            }
    }
}

TEST_CASE("maximal smoothly-acting pattern on the plane with one abs direction") {
    VectorPattern v({EntryPattern::poly_only(), EntryPattern::full()});
    MatrixPattern lower_triangular = grid("B Z\nB B");
    CHECK(max_smooth_action_pattern(v, lower_triangular) == grid("P Z\nP P"));
}

TEST_CASE("maximal smoothly-acting pattern for the standard plane is all-poly") {
    VectorPattern v({EntryPattern::poly_only(), EntryPattern::poly_only()});
    CHECK(max_smooth_action_pattern(v, MatrixPattern::all_allowed(2)) ==
          MatrixPattern::all_poly(2));
}

TEST_CASE("maximal smoothly-acting pattern in the block algebra keeps abs in the corner") {
    VectorPattern v({EntryPattern::poly_only(), EntryPattern::poly_only(), EntryPattern::full()});
    MatrixPattern constraint = grid("B B Z\nB B Z\nZ Z B");
    CHECK(max_smooth_action_pattern(v, constraint) == grid("P P Z\nP P Z\nZ Z B"));
}

TEST_CASE("smoothly-acting patterns map conforming plots to conforming plots") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
        unsigned n = 2 + (t % 3);
        VectorPattern v{std::vector<EntryPattern>(n)};
        std::uniform_int_distribution<int> flag(0, 2);
        for (auto& c : v.coords)
            c = flag(rng) == 0 ? EntryPattern::poly_only() : EntryPattern::full();
        MatrixPattern p = max_smooth_action_pattern(v, random_pattern(rng, n));

        std::vector<std::vector<AbsElement>> m;
        std::vector<AbsElement> s;
        for (unsigned i = 0; i < n; ++i) {
            m.emplace_back();
            for (unsigned j = 0; j < n; ++j) m[i].push_back(conforming(rng, p.at(i, j)));
            s.push_back(conforming(rng, v.coords[i]));
        }
        for (unsigned i = 0; i < n; ++i) {
            AbsElement out(kRing);
            for (unsigned j = 0; j < n; ++j) out = out + m[i][j] * s[j];
            CHECK(conforms(out, v.coords[i]));
        }
    }
}

TEST_CASE("trace and determinant detect the non-smooth plots") {
    AbsElement zero(kRing);
    AbsElement one = AbsElement::constant(kRing, 1);
    AbsElement a = AbsElement::abs_generator(kRing);

    // diag(0, |x|): the trace is |x|
    CHECK_FALSE(check_function_smooth(MatrixFn::trace, {{zero, zero}, {zero, a}}));
    // diag(1, |x|): the determinant is |x|
    CHECK_FALSE(check_function_smooth(MatrixFn::det, {{one, zero}, {zero, a}}));

    AbsElement x = AbsElement::variable(kRing, 0);
    CHECK(check_function_smooth(MatrixFn::trace, {{x, one}, {x * x, x}}));
    CHECK(check_function_smooth(MatrixFn::det, {{x, one}, {x * x, x}}));

    // |x|^2 on the diagonal: the determinant of diag(|x|, |x|) is smooth but
    // the trace is not
    CHECK(check_function_smooth(MatrixFn::det, {{a, zero}, {zero, a}}));
    CHECK_FALSE(check_function_smooth(MatrixFn::trace, {{a, zero}, {zero, a}}));
}

TEST_CASE("determinant by cofactor expansion matches the 3x3 rule") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 10; ++t) {
        std::vector<std::vector<AbsElement>> m(3, std::vector<AbsElement>(3, AbsElement(kRing)));
        for (auto& row : m)
            for (auto& e : row) e = conforming(rng, EntryPattern::full());
        AbsElement direct = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                            m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                            m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        CHECK(matrix_det(m) == direct);
    }
}
