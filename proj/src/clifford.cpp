#include "cliffglue/clifford.hpp"

namespace cliffglue {

AlgebraHandle make_algebra(BilinearForm q, Rat lambda) {
    if (lambda <= 0) throw Error("convention scale lambda must be positive");
    auto alg = std::make_shared<CliffordAlgebra>();
    alg->n = q.n();
    alg->q = std::move(q);
    alg->lambda = std::move(lambda);
    return alg;
}

Multivector Multivector::operator+(const Multivector& o) const {
    if (!same_algebra(o)) throw Error("algebra mismatch");
    Multivector r = *this;
    for (const auto& [b, c] : o.comps_) r.add_term(b, c);
    return r;
}

Multivector Multivector::operator-() const {
    Multivector r(alg_);
    for (const auto& [b, c] : comps_) r.comps_[b] = -c;
    return r;
}

Multivector Multivector::scaled(const Rat& s) const {
    Multivector r(alg_);
    if (s == 0) return r;
    for (const auto& [b, c] : comps_) r.comps_[b] = c * s;
    return r;
}

namespace {

// Rewrites an index word into the ascending blade basis:
//   e_i e_j -> -e_j e_i - 2 lambda q_ij   (i > j)
//   e_i e_i -> -lambda q_ii
// Each step reduces (length, inversions) lexicographically, so the recursion
// terminates.
void normalize_word(const CliffordAlgebra& alg, std::vector<std::uint8_t>& word,
                    const Rat& coeff, Multivector& out) {
    if (coeff == 0) return;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        std::uint8_t a = word[i];
        std::uint8_t b = word[i + 1];
        if (a < b) continue;
        std::vector<std::uint8_t> rest;
        rest.reserve(word.size() - 2);
        rest.insert(rest.end(), word.begin(), word.begin() + i);
        rest.insert(rest.end(), word.begin() + i + 2, word.end());
        if (a == b) {
            Rat c = coeff * (-alg.lambda) * alg.q(a, a);
            normalize_word(alg, rest, c, out);
            return;
        }
        std::vector<std::uint8_t> swapped = word;
        std::swap(swapped[i], swapped[i + 1]);
        normalize_word(alg, swapped, -coeff, out);
        Rat c = coeff * Rat(-2) * alg.lambda * alg.q(a, b);
        normalize_word(alg, rest, c, out);
        return;
    }
    Blade blade = 0;
    for (auto idx : word) blade |= Blade(1) << idx;
    out.add_term(blade, coeff);
}

std::vector<std::uint8_t> blade_word(Blade b) {
    std::vector<std::uint8_t> w;
    for (unsigned i = 0; i < 32; ++i)
        if (b & (Blade(1) << i)) w.push_back(static_cast<std::uint8_t>(i));
    return w;
}

}  // namespace

Multivector Multivector::operator*(const Multivector& o) const {
    if (!same_algebra(o)) throw Error("algebra mismatch");
    Multivector r(alg_);
    for (const auto& [ba, ca] : comps_)
        for (const auto& [bb, cb] : o.comps_) {
            std::vector<std::uint8_t> word = blade_word(ba);
            std::vector<std::uint8_t> right = blade_word(bb);
            word.insert(word.end(), right.begin(), right.end());
            normalize_word(*alg_, word, ca * cb, r);
        }
    return r;
}

std::string Multivector::to_string() const {
    if (comps_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [b, c] : comps_) {
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
        if (b == 0) {
            out += rat_to_string(a);
        } else {
            if (a != 1) out += rat_to_string(a) + "*";
            out += blade_to_string(b);
        }
    }
    return out;
}

std::pair<Multivector, Multivector> grade_split(const Multivector& a) {
    Multivector even(a.algebra());
    Multivector odd(a.algebra());
    for (const auto& [b, c] : a.comps()) {
        if (blade_size(b) % 2 == 0)
            even.add_term(b, c);
        else
            odd.add_term(b, c);
    }
    return {even, odd};
}

unsigned filtration_level(const Multivector& a) {
    unsigned level = 0;
    for (const auto& [b, c] : a.comps()) level = std::max(level, blade_size(b));
    return level;
}

unsigned long long binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    unsigned long long r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

FiltrationDims filtration_dims(unsigned n, unsigned k) {
    if (k > n) throw Error("filtration level out of range");
    FiltrationDims d{0, binomial(n, k)};
    for (unsigned r = 0; r <= k; ++r) d.cl_dim += binomial(n, r);
    return d;
}

TargetAlgebra<Multivector> multivector_target(const AlgebraHandle& alg) {
    TargetAlgebra<Multivector> t;
    t.unit = Multivector::unit(alg);
    t.zero = Multivector(alg);
    t.mul = [](const Multivector& a, const Multivector& b) { return a * b; };
    t.add = [](const Multivector& a, const Multivector& b) { return a + b; };
    t.scale = [](const Multivector& a, const Rat& s) { return a.scaled(s); };
    t.eq = [](const Multivector& a, const Multivector& b) { return a == b; };
    return t;
}

TargetAlgebra<RatMatrix> matrix_target(std::size_t dim) {
    TargetAlgebra<RatMatrix> t;
    t.unit = RatMatrix::identity(dim);
    t.zero = RatMatrix(dim, dim);
    t.mul = [](const RatMatrix& a, const RatMatrix& b) { return a * b; };
    t.add = [](const RatMatrix& a, const RatMatrix& b) { return a + b; };
    t.scale = [](const RatMatrix& a, const Rat& s) { return a.scaled(s); };
    t.eq = [](const RatMatrix& a, const RatMatrix& b) { return a == b; };
    return t;
}

ExteriorElement action_c(const std::vector<Rat>& v, const ExteriorElement& a,
                         const BilinearForm& q) {
    unsigned n = a.n();
    if (v.size() != n || q.n() != n) throw Error("dimension mismatch in action");
    ExteriorElement vect(n);
    for (unsigned i = 0; i < n; ++i) vect.add_term(Blade(1) << i, v[i]);
    ExteriorElement eps = wedge(vect, a);

    // contraction: i(v)(e_S) = sum over s in S of sign * q(v, e_s) * e_{S minus s},
    // sign alternating with the position of s within S.
    ExteriorElement contr(n);
    for (const auto& [blade, c] : a.comps()) {
        int pos = 0;
        for (unsigned s = 0; s < n; ++s) {
            if (!(blade & (Blade(1) << s))) continue;
            Rat qv = 0;
            for (unsigned i = 0; i < n; ++i) qv += v[i] * q(i, s);
            int sign = (pos % 2 == 0) ? 1 : -1;
            contr.add_term(blade & ~(Blade(1) << s), c * qv * sign);
            ++pos;
        }
    }
    return eps - contr;
}

RatMatrix action_generator_matrix(const BilinearForm& q, unsigned i) {
    unsigned n = q.n();
    if (i >= n) throw Error("generator index out of range");
    std::size_t dim = std::size_t(1) << n;
    std::vector<Rat> v(n, 0);
    v[i] = 1;
    RatMatrix m(dim, dim);
    for (Blade b = 0; b < dim; ++b) {
        ExteriorElement img = action_c(v, ExteriorElement::basis_blade(n, b), q);
        for (const auto& [ob, oc] : img.comps()) m(ob, b) = oc;
    }
    return m;
}

SigmaResult sigma_map(const AlgebraHandle& alg) {
    if (alg->lambda != 1)
        throw Error("sigma requires the lambda = 1 convention (c(v)^2 = -q(v,v))");
    unsigned n = alg->n;
    std::size_t dim = std::size_t(1) << n;
    std::vector<RatMatrix> gens;
    gens.reserve(n);
    for (unsigned i = 0; i < n; ++i) gens.push_back(action_generator_matrix(alg->q, i));
    auto ext = universal_extend<RatMatrix>(alg, gens, matrix_target(dim));

    RatMatrix transition(dim, dim);
    for (Blade b = 0; b < dim; ++b) {
        RatMatrix op = ext(Multivector::basis_blade(alg, b));
        for (std::size_t r = 0; r < dim; ++r) transition(r, b) = op(r, 0);  // column of c(x)(1)
    }
    SigmaResult res{std::move(transition), alg->q.nondegenerate(), false};
    res.matrix_invertible = res.transition.rank() == dim;
    return res;
}

ExteriorElement sigma(const Multivector& x) {
    const AlgebraHandle& alg = x.algebra();
    if (!alg) throw Error("multivector without algebra handle");
    SigmaResult m = sigma_map(alg);
    unsigned n = alg->n;
    ExteriorElement out(n);
    std::size_t dim = std::size_t(1) << n;
    for (const auto& [b, c] : x.comps())
        for (std::size_t r = 0; r < dim; ++r)
            if (m.transition(r, b) != 0) out.add_term(static_cast<Blade>(r), c * m.transition(r, b));
    return out;
}

}  // namespace cliffglue
