#pragma once

#include "cliffglue/exterior.hpp"
#include "cliffglue/matrix.hpp"

#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace cliffglue {

// Symmetric bilinear form on R^n, possibly degenerate. The Clifford relation
// is v.w + w.v = -2*lambda*q(v,w) with the convention scale lambda carried by
// the algebra handle, not the form.
class BilinearForm {
public:
    BilinearForm() = default;
    BilinearForm(unsigned n, RatMatrix q) : n_(n), q_(std::move(q)) {
        if (q_.rows() != n_ || q_.cols() != n_) throw Error("bilinear form shape mismatch");
        if (!q_.is_symmetric()) throw Error("bilinear form must be symmetric");
    }

    static BilinearForm identity(unsigned n) { return {n, RatMatrix::identity(n)}; }
    static BilinearForm zero(unsigned n) { return {n, RatMatrix(n, n)}; }
    static BilinearForm diagonal(std::vector<Rat> d) {
        unsigned n = static_cast<unsigned>(d.size());
        RatMatrix q(n, n);
        for (unsigned i = 0; i < n; ++i) q(i, i) = std::move(d[i]);
        return {n, std::move(q)};
    }

    unsigned n() const { return n_; }
    const RatMatrix& matrix() const { return q_; }
    const Rat& operator()(unsigned i, unsigned j) const { return q_(i, j); }

    Rat apply(const std::vector<Rat>& v, const std::vector<Rat>& w) const {
        if (v.size() != n_ || w.size() != n_) throw Error("bilinear form argument size");
        Rat s = 0;
        for (unsigned i = 0; i < n_; ++i)
            for (unsigned j = 0; j < n_; ++j) s += v[i] * q_(i, j) * w[j];
        return s;
    }

    std::size_t rank() const { return q_.rank(); }
    bool nondegenerate() const { return rank() == n_; }
    PsdResult psd() const { return psd_rank(q_); }

    bool operator==(const BilinearForm& o) const { return n_ == o.n_ && q_ == o.q_; }

private:
    unsigned n_ = 0;
    RatMatrix q_;
};

// Immutable algebra descriptor shared by all its elements.
struct CliffordAlgebra {
    unsigned n;
    BilinearForm q;
    Rat lambda;  // relation scale, > 0

    bool operator==(const CliffordAlgebra& o) const {
        return n == o.n && q == o.q && lambda == o.lambda;
    }
};

using AlgebraHandle = std::shared_ptr<const CliffordAlgebra>;

AlgebraHandle make_algebra(BilinearForm q, Rat lambda = 1);

// Blade-indexed element of Cl(V,q): coefficients on ascending products of
// basis vectors, 2^n of them.
class Multivector {
public:
    Multivector() = default;
    explicit Multivector(AlgebraHandle alg) : alg_(std::move(alg)) {}

    static Multivector scalar(AlgebraHandle alg, const Rat& c) {
        Multivector m(std::move(alg));
        m.add_term(0, c);
        return m;
    }
    static Multivector unit(AlgebraHandle alg) { return scalar(std::move(alg), 1); }
    static Multivector basis_blade(AlgebraHandle alg, Blade b) {
        Multivector m(std::move(alg));
        m.add_term(b, 1);
        return m;
    }
    static Multivector basis_vector(AlgebraHandle alg, unsigned i) {
        if (i >= alg->n) throw Error("basis index out of range");
        return basis_blade(std::move(alg), Blade(1) << i);
    }
    static Multivector from_vector(AlgebraHandle alg, const std::vector<Rat>& coords) {
        if (coords.size() != alg->n) throw Error("vector size mismatch");
        Multivector m(alg);
        for (unsigned i = 0; i < alg->n; ++i) m.add_term(Blade(1) << i, coords[i]);
        return m;
    }

    const AlgebraHandle& algebra() const { return alg_; }
    const std::map<Blade, Rat>& comps() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    Rat coeff(Blade b) const {
        auto it = comps_.find(b);
        return it == comps_.end() ? Rat(0) : it->second;
    }

    void add_term(Blade b, const Rat& c) {
        if (!alg_) throw Error("multivector without algebra handle");
        if (b >> alg_->n) throw Error("blade out of range");
        auto it = comps_.find(b);
        if (it == comps_.end()) {
            if (c != 0) comps_[b] = c;
        } else {
            it->second += c;
            if (it->second == 0) comps_.erase(it);
        }
    }

    Multivector operator+(const Multivector& o) const;
    Multivector operator-() const;
    Multivector operator-(const Multivector& o) const { return *this + (-o); }
    Multivector scaled(const Rat& s) const;
    // Clifford product by word rewriting; see clifford.cpp.
    Multivector operator*(const Multivector& o) const;

    bool operator==(const Multivector& o) const {
        return same_algebra(o) && comps_ == o.comps_;
    }
    bool operator!=(const Multivector& o) const { return !(*this == o); }

    bool same_algebra(const Multivector& o) const {
        if (alg_ == o.alg_) return true;
        return alg_ && o.alg_ && *alg_ == *o.alg_;
    }

    std::string to_string() const;

private:
    AlgebraHandle alg_;
    std::map<Blade, Rat> comps_;
};

// Even/odd split by blade parity; even + odd == input.
std::pair<Multivector, Multivector> grade_split(const Multivector& a);

// Largest word length appearing, i.e. the filtration level of the element.
unsigned filtration_level(const Multivector& a);

struct FiltrationDims {
    unsigned long long cl_dim;        // dim Cl^k = sum_{r<=k} C(n,r)
    unsigned long long quotient_dim;  // dim Cl^k/Cl^{k-1} = C(n,k)
};
FiltrationDims filtration_dims(unsigned n, unsigned k);
unsigned long long binomial(unsigned n, unsigned k);

// Value semantics for a target algebra: everything universal_extend needs.
template <class Elem>
struct TargetAlgebra {
    Elem unit;
    std::function<Elem(const Elem&, const Elem&)> mul;
    std::function<Elem(const Elem&, const Elem&)> add;
    std::function<Elem(const Elem&, const Rat&)> scale;
    std::function<bool(const Elem&, const Elem&)> eq;
    Elem zero;
};

struct RelationViolation {
    unsigned i, j;  // offending basis pair
};

class ExtendError : public Error {
public:
    ExtendError(RelationViolation v, const std::string& what) : Error(what), violation(v) {}
    RelationViolation violation;
};

// The unique unital algebra morphism Cl(V,q) -> A extending the linear map
// given by basis images, provided those satisfy the Clifford relation
// f(ei) f(ej) + f(ej) f(ei) = -2 lambda q(i,j) 1_A for all pairs. Blades map
// to ordered products of the images.
template <class Elem>
std::function<Elem(const Multivector&)> universal_extend(const AlgebraHandle& alg,
                                                         std::vector<Elem> images,
                                                         TargetAlgebra<Elem> target) {
    if (images.size() != alg->n) throw Error("universal_extend: wrong number of basis images");
    for (unsigned i = 0; i < alg->n; ++i)
        for (unsigned j = i; j < alg->n; ++j) {
            Elem anti = target.add(target.mul(images[i], images[j]),
                                   target.mul(images[j], images[i]));
            Elem expect = target.scale(target.unit, Rat(-2) * alg->lambda * alg->q(i, j));
            if (!target.eq(anti, expect))
                throw ExtendError({i, j}, "universal_extend: Clifford relation fails for basis pair (" +
                                              std::to_string(i) + "," + std::to_string(j) + ")");
        }
    return [alg, images = std::move(images), target = std::move(target)](const Multivector& x) {
        if (!x.algebra() || !(*x.algebra() == *alg))
            throw Error("universal_extend: element from a different algebra");
        Elem acc = target.zero;
        for (const auto& [blade, c] : x.comps()) {
            Elem prod = target.unit;
            for (unsigned i = 0; i < alg->n; ++i)
                if (blade & (Blade(1) << i)) prod = target.mul(prod, images[i]);
            acc = target.add(acc, target.scale(prod, c));
        }
        return acc;
    };
}

TargetAlgebra<Multivector> multivector_target(const AlgebraHandle& alg);
TargetAlgebra<RatMatrix> matrix_target(std::size_t dim);

// c(v) = eps(v) - i(v): wedge by v minus q-contraction by v.
ExteriorElement action_c(const std::vector<Rat>& v, const ExteriorElement& a,
                         const BilinearForm& q);

// Operator matrix of c(e_i) on the 2^n exterior fibre (blade-index order).
RatMatrix action_generator_matrix(const BilinearForm& q, unsigned i);

struct SigmaResult {
    RatMatrix transition;      // 2^n x 2^n matrix of sigma on the blade basis
    bool form_nondegenerate;   // hypothesis under which sigma is asserted
    bool matrix_invertible;    // what the exact rank computation says
};

// sigma(x) = c(x)(1), the extended action applied to the exterior unit.
// Requires lambda = 1 so the extension's relation precondition holds.
SigmaResult sigma_map(const AlgebraHandle& alg);
ExteriorElement sigma(const Multivector& x);

}  // namespace cliffglue
