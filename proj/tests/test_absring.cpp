#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cliffglue/absring.hpp"

#include <random>

using namespace cliffglue;

namespace {

const AbsRing kRing{1, 0};  // functions of x0 extended by |x0|

AbsElement parse(const std::string& s) { return parse_abs_element(s, kRing); }

AbsElement random_element(std::mt19937_64& rng, unsigned max_degree = 3) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    Polynomial f(1), g(1);
    for (unsigned d = 0; d <= max_degree; ++d) {
        f.add_term({d}, Rat(coeff(rng)));
        g.add_term({d}, Rat(coeff(rng)));
    }
    return {kRing, f, g};
}

}  // namespace

TEST_CASE("addition is componentwise") {
    AbsElement x = AbsElement::variable(kRing, 0);
    AbsElement a = AbsElement::abs_generator(kRing);

    CHECK(x + a == parse("x0 + abs(x0)"));
    CHECK(x.scaled(0) + a + (-a) == AbsElement(kRing));

    // (x^2, 3) + (1, -3) collapses to a smooth element
    AbsElement left{kRing, Polynomial::variable(1, 0) * Polynomial::variable(1, 0),
                    Polynomial::constant(1, 3)};
    AbsElement right{kRing, Polynomial::constant(1, 1), Polynomial::constant(1, -3)};
    AbsElement sum = left + right;
    CHECK(sum == parse("x0^2 + 1"));
    CHECK(sum.is_smooth());
}

TEST_CASE("multiplication folds the abs square into the smooth part") {
    AbsElement a = AbsElement::abs_generator(kRing);
    CHECK(a * a == parse("x0^2"));
    CHECK((a * a).is_smooth());

    AbsElement one = AbsElement::constant(kRing, 1);
    AbsElement fg = parse("x0^3 - 2 + (x0 + 1/2)*abs(x0)");
    CHECK(one * fg == fg);

    // (x + |x|)(x - |x|) = 0
    AbsElement x = AbsElement::variable(kRing, 0);
    CHECK((x + a) * (x - a) == AbsElement(kRing));
}

TEST_CASE("smoothness is decided by the abs part") {
    CHECK(parse("x0^3 + 1").is_smooth());
    CHECK_FALSE(AbsElement::abs_generator(kRing).is_smooth());
    // x*|x| is C^1 but not C^infinity
    CHECK_FALSE(parse("x0 * abs(x0)").is_smooth());
}

TEST_CASE("the smoothness test agrees with the one-sided jet comparison") {
    // g(x)*|x| equals g(x)*x for x > 0 and -g(x)*x for x < 0; all one-sided
    // derivatives at the origin agree exactly when those polynomials coincide
    auto jets_match = [](const AbsElement& e) {
        Polynomial x = Polynomial::variable(1, 0);
        Polynomial right = e.abs_part() * x;
        return right == -right;
    };
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        AbsElement e = random_element(rng);
        CHECK(e.is_smooth() == jets_match(e));
    }
    CHECK(jets_match(parse("x0^2 - 7")));
    CHECK_FALSE(jets_match(parse("x0 * abs(x0)")));
}

TEST_CASE("ring mismatch is rejected") {
    AbsElement a = AbsElement::variable(kRing, 0);
    AbsElement b = AbsElement::variable(AbsRing{2, 1}, 0);
    CHECK_THROWS_AS(a + b, Error);
    CHECK_THROWS_AS(a * b, Error);
}

TEST_CASE("ring axioms hold on random triples") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        AbsElement a = random_element(rng), b = random_element(rng), c = random_element(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("pure abs elements square to smooth elements") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> coeff(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        Polynomial g(1);
        for (unsigned d = 0; d < 4; ++d) g.add_term({d}, Rat(coeff(rng)));
        AbsElement a{kRing, Polynomial(1), g};
        CHECK((a * a).is_smooth());
    }
}

TEST_CASE("smooth elements are closed under the ring operations") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        AbsElement a = random_element(rng), b = random_element(rng);
        AbsElement sa{kRing, a.smooth_part(), Polynomial(1)};
        AbsElement sb{kRing, b.smooth_part(), Polynomial(1)};
        CHECK((sa + sb).is_smooth());
        CHECK((sa * sb).is_smooth());
    }
}

TEST_CASE("parser and printer round-trip deterministically") {
    AbsElement e = parse("1/2 - x0^2 + (3*x0 - 2)*abs(x0)");
    CHECK(parse(e.to_string()) == e);
    CHECK(e.to_string() == parse(e.to_string()).to_string());

    CHECK_THROWS_AS(parse("abs(x1)"), Error);   // wrong generator
    CHECK_THROWS_AS(parse("x7"), Error);        // out of range
    CHECK_THROWS_AS(parse("1 + "), Error);      // truncated
    CHECK_THROWS_AS(parse("1/0"), Error);       // zero denominator
}

TEST_CASE("evaluation agrees with the represented function") {
    AbsElement e = parse("x0^2 - 1 + (2*x0)*abs(x0)");
    // at x = -3/2: 9/4 - 1 + (-3)*3/2 = 5/4 - 9/2 = -13/4
    CHECK(e.eval({Rat(-3, 2)}) == Rat(-13, 4));
    CHECK(e.eval({Rat(0)}) == Rat(-1));
}
