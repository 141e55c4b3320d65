#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cliffglue/clifford.hpp"  // binomial
#include "cliffglue/exterior.hpp"
#include "cliffglue/matrix.hpp"
#include "cliffglue/tensor.hpp"

#include <random>

using namespace cliffglue;

namespace {

TensorElement word(unsigned n, std::initializer_list<std::uint8_t> idx) {
    return TensorElement::basis_word(n, TensorElement::Word(idx), 8);
}

TensorElement random_homogeneous(std::mt19937_64& rng, unsigned n, unsigned degree) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> index(0, static_cast<int>(n) - 1);
    TensorElement t(n, 8);
    for (int terms = 0; terms < 5; ++terms) {
        TensorElement::Word w(degree);
        for (auto& i : w) i = static_cast<std::uint8_t>(index(rng));
        t.add_term(w, Rat(coeff(rng)));
    }
    return t;
}

ExteriorElement random_exterior(std::mt19937_64& rng, unsigned n, unsigned degree) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    ExteriorElement e(n);
    for (Blade b = 0; b < (Blade(1) << n); ++b)
        if (blade_size(b) == degree) e.add_term(b, Rat(coeff(rng)));
    return e;
}

}  // namespace

TEST_CASE("symmetrization of simple words") {
    TensorElement e12 = word(2, {0, 1});
    TensorElement expected = word(2, {0, 1}).scaled(Rat(1, 2)) + word(2, {1, 0}).scaled(Rat(1, 2));
    CHECK(sym(e12) == expected);
    CHECK(sym(word(2, {0, 0})) == word(2, {0, 0}));
}

TEST_CASE("antisymmetrization of simple words") {
    TensorElement e12 = word(2, {0, 1});
    TensorElement expected = word(2, {0, 1}).scaled(Rat(1, 2)) - word(2, {1, 0}).scaled(Rat(1, 2));
    CHECK(alt(e12) == expected);
    CHECK(alt(word(2, {0, 0})).is_zero());
}

TEST_CASE("sym and alt are idempotent on random degree-3 elements") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 50; ++t) {
        TensorElement x = random_homogeneous(rng, 3, 3);
        CHECK(sym(sym(x)) == sym(x));
        CHECK(alt(alt(x)) == alt(x));
    }
}

TEST_CASE("non-homogeneous input is rejected") {
    TensorElement mixed = word(2, {0}) + word(2, {0, 1});
    CHECK_THROWS_AS(sym(mixed), Error);
    CHECK_THROWS_AS(alt(mixed), Error);
}

TEST_CASE("wedge on basis blades") {
    ExteriorElement e1 = ExteriorElement::basis_vector(2, 0);
    ExteriorElement e2 = ExteriorElement::basis_vector(2, 1);
    ExteriorElement e12 = ExteriorElement::basis_blade(2, 0b11);

    CHECK(wedge(e1, e2) == e12);
    CHECK(wedge(e2, e1) == -e12);
    CHECK(wedge(e1 + e2, e1 - e2) == e12.scaled(-2));
    CHECK(wedge(e1, e1).is_zero());
}

TEST_CASE("wedge is associative and graded-commutative") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 60; ++t) {
        unsigned n = 2 + (t % 3);  // up to 4
        std::uniform_int_distribution<int> deg(0, static_cast<int>(n));
        unsigned da = deg(rng), db = deg(rng), dc = deg(rng);
        ExteriorElement a = random_exterior(rng, n, da);
        ExteriorElement b = random_exterior(rng, n, db);
        ExteriorElement c = random_exterior(rng, n, dc);
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
        ExteriorElement ba = wedge(b, a);
        if ((da * db) % 2 == 1) ba = -ba;
        CHECK(wedge(a, b) == ba);
    }
}

TEST_CASE("graded dimensions are binomial") {
    for (unsigned n = 0; n <= 6; ++n) {
        unsigned long long total = 0;
        for (unsigned k = 0; k <= n; ++k) {
            unsigned long long count = 0;
            for (Blade b = 0; b < (Blade(1) << n); ++b)
                if (blade_size(b) == k) ++count;
            CHECK(count == binomial(n, k));
            total += count;
        }
        CHECK(total == (1ull << n));
    }
}

TEST_CASE("alt images of degree-k words span a space of dimension C(n,k)") {
    for (unsigned n = 2; n <= 4; ++n) {
        for (unsigned k = 1; k <= n; ++k) {
            // enumerate all degree-k words, collect their alt images as rows
            std::vector<TensorElement::Word> words;
            TensorElement::Word w(k, 0);
            for (;;) {
                words.push_back(w);
                unsigned pos = 0;
                while (pos < k && w[pos] + 1u == n) {
                    w[pos] = 0;
                    ++pos;
                }
                if (pos == k) break;
                ++w[pos];
            }
            // word index within degree k: mixed radix n^k
            auto word_index = [&](const TensorElement::Word& u) {
                std::size_t idx = 0;
                for (auto i : u) idx = idx * n + i;
                return idx;
            };
            std::size_t cols = 1;
            for (unsigned i = 0; i < k; ++i) cols *= n;
            RatMatrix rows(words.size(), cols);
            for (std::size_t r = 0; r < words.size(); ++r) {
                TensorElement img = alt(TensorElement::basis_word(n, words[r], 8));
                for (const auto& [u, c] : img.terms()) rows(r, word_index(u)) = c;
            }
            CHECK(rows.rank() == binomial(n, k));
        }
    }
}
