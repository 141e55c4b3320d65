#include "cliffglue/cliffbundle.hpp"

namespace cliffglue {

CliffordBundle::CliffordBundle(const PseudoBundle& b, Rat lambda)
    : bundle_(&b), lambda_(std::move(lambda)), metric_(b) {
    for (const auto& c : b.charts())
        if (!rank_profile_realizable(c.dual, c.base_dim))
            throw Error("chart " + c.id + " has an unrealizable dual rank profile");
}

AlgebraHandle CliffordBundle::algebra_at(const BasePoint& p) const {
    ResolvedPoint r = bundle_->resolve(p);
    return make_algebra(BilinearForm(r.chart->fibre_dim, metric_.eval(p)), lambda_);
}

AlgebraHandle CliffordBundle::chart_algebra_at(const std::string& chart_id,
                                               const std::vector<Rat>& coords) const {
    const Chart& c = bundle_->chart(chart_id);
    if (!c.metric) throw Error("chart " + chart_id + " carries no metric");
    return make_algebra(BilinearForm(c.fibre_dim, c.metric->eval(coords)), lambda_);
}

CliffordBundle clifford_bundle(const PseudoBundle& b, Rat lambda) {
    return CliffordBundle(b, std::move(lambda));
}

Multivector CliffordLift::apply(const Multivector& x) const {
    if (!x.algebra() || !(*x.algebra() == *source))
        throw Error("clifford lift applied to element of a different algebra");
    Multivector out(target);
    for (const auto& [b, c] : x.comps())
        for (std::size_t r = 0; r < matrix.rows(); ++r)
            if (matrix(r, b) != 0) out.add_term(static_cast<Blade>(r), c * matrix(r, b));
    return out;
}

CliffordLift induced_clifford_lift(const PseudoBundle& b, const Gluing& g,
                                   std::size_t locus_index, const Rat& lambda) {
    const Chart& src = b.chart(g.source);
    const Chart& tgt = b.chart(g.target);
    if (!src.metric || !tgt.metric) throw Error("induced clifford lift needs metrics");
    if (locus_index >= g.locus.size()) throw Error("locus index out of range");
    const RatMatrix& L = g.lifts[locus_index];

    AlgebraHandle a1 = make_algebra(
        BilinearForm(src.fibre_dim, src.metric->eval(g.locus[locus_index].first)), lambda);
    AlgebraHandle a2 = make_algebra(
        BilinearForm(tgt.fibre_dim, tgt.metric->eval(g.locus[locus_index].second)), lambda);

    std::vector<Multivector> images;
    images.reserve(src.fibre_dim);
    for (unsigned i = 0; i < src.fibre_dim; ++i) {
        std::vector<Rat> col(tgt.fibre_dim);
        for (unsigned r = 0; r < tgt.fibre_dim; ++r) col[r] = L(r, i);
        images.push_back(Multivector::from_vector(a2, col));
    }
    auto ext = universal_extend<Multivector>(a1, images, multivector_target(a2));

    std::size_t dim1 = std::size_t(1) << src.fibre_dim;
    std::size_t dim2 = std::size_t(1) << tgt.fibre_dim;
    RatMatrix m(dim2, dim1);
    for (Blade blade = 0; blade < dim1; ++blade) {
        Multivector img = ext(Multivector::basis_blade(a1, blade));
        for (const auto& [ob, oc] : img.comps()) m(ob, blade) = oc;
    }
    return {std::move(m), a1, a2};
}

CheckResult clifford_lift_multiplicative(const CliffordLift& lift) {
    std::size_t dim1 = std::size_t(1) << lift.source->n;
    Multivector unit_img = lift.apply(Multivector::unit(lift.source));
    if (unit_img != Multivector::unit(lift.target)) return {false, "unit is not preserved"};
    for (Blade a = 0; a < dim1; ++a)
        for (Blade b = 0; b < dim1; ++b) {
            Multivector lhs = lift.apply(Multivector::basis_blade(lift.source, a) *
                                         Multivector::basis_blade(lift.source, b));
            Multivector rhs = lift.apply(Multivector::basis_blade(lift.source, a)) *
                              lift.apply(Multivector::basis_blade(lift.source, b));
            if (lhs != rhs)
                return {false, "multiplicativity fails on blade pair (" + blade_to_string(a) +
                                   ", " + blade_to_string(b) + ")"};
        }
    return {true, ""};
}

namespace {

std::vector<BasePoint> with_locus_points(const PseudoBundle& b,
                                         const std::vector<BasePoint>& extra) {
    std::vector<BasePoint> pts = b.locus_points();
    for (const auto& p : extra) pts.push_back(p);
    return pts;
}

}  // namespace

CheckResult verify_phi_iso(const PseudoBundle& b, const Rat& lambda,
                           const std::vector<BasePoint>& sample_points,
                           const MetricOverride& override_metric) {
    CliffordBundle cb(b, lambda);

    // The gluing side: every fibre lift must extend to an algebra morphism.
    for (const auto& g : b.gluings())
        for (std::size_t k = 0; k < g.locus.size(); ++k) {
            CliffordLift lift = induced_clifford_lift(b, g, k, lambda);
            CheckResult mult = clifford_lift_multiplicative(lift);
            if (!mult.ok)
                return {false, "induced lift across " + g.source + "->" + g.target + ": " +
                                   mult.witness};
        }

    for (const auto& p : with_locus_points(b, sample_points)) {
        ResolvedPoint r = b.resolve(p);
        // Clifford algebra of the glued bundle at p, with the induced metric.
        RatMatrix q_glued = override_metric ? override_metric(p) : cb.algebra_at(p)->q.matrix();
        AlgebraHandle glued =
            make_algebra(BilinearForm(r.chart->fibre_dim, q_glued), lambda);
        // Fibre of the glued family of chartwise Clifford algebras at p: the
        // representative chart's own algebra.
        AlgebraHandle chartwise = cb.chart_algebra_at(r.rep.chart, r.rep.coords);

        std::size_t dim = std::size_t(1) << r.chart->fibre_dim;
        for (Blade a = 0; a < dim; ++a)
            for (Blade c = 0; c < dim; ++c) {
                Multivector lhs =
                    Multivector::basis_blade(glued, a) * Multivector::basis_blade(glued, c);
                Multivector rhs =
                    Multivector::basis_blade(chartwise, a) * Multivector::basis_blade(chartwise, c);
                if (lhs.comps() != rhs.comps())
                    return {false, "fibre tables differ at " + p.to_string() + " on blade pair (" +
                                       blade_to_string(a) + ", " + blade_to_string(c) +
                                       "): " + lhs.to_string() + " vs " + rhs.to_string()};
            }
    }
    return {true, ""};
}

RatMatrix exterior_lift(const RatMatrix& m) {
    unsigned k1 = static_cast<unsigned>(m.cols());
    unsigned k2 = static_cast<unsigned>(m.rows());
    std::size_t d1 = std::size_t(1) << k1;
    std::size_t d2 = std::size_t(1) << k2;
    RatMatrix out(d2, d1);
    for (Blade s = 0; s < d1; ++s) {
        std::vector<std::size_t> cols;
        for (unsigned j = 0; j < k1; ++j)
            if (s & (Blade(1) << j)) cols.push_back(j);
        for (Blade t = 0; t < d2; ++t) {
            if (blade_size(t) != cols.size()) continue;
            std::vector<std::size_t> rows;
            for (unsigned i = 0; i < k2; ++i)
                if (t & (Blade(1) << i)) rows.push_back(i);
            out(t, s) = cols.empty() ? Rat(1) : m.submatrix(rows, cols).determinant();
        }
    }
    return out;
}

ExteriorBundle exterior_bundle(const PseudoBundle& b) { return ExteriorBundle(b); }

StandardAction::StandardAction(CliffordBundle cb) : cb_(std::move(cb)) {
    if (cb_.lambda() != 1)
        throw Error(
            "standard action requires lambda = 1: the generators of a lambda != 1 algebra "
            "violate c(v)c(w) + c(w)c(v) = -2 q(v,w) id on the exterior fibre");
}

std::vector<RatMatrix> StandardAction::generators_at(const BasePoint& p) const {
    AlgebraHandle alg = cb_.algebra_at(p);
    std::vector<RatMatrix> gens;
    gens.reserve(alg->n);
    for (unsigned i = 0; i < alg->n; ++i) gens.push_back(action_generator_matrix(alg->q, i));
    return gens;
}

std::vector<RatMatrix> StandardAction::chart_generators_at(const std::string& chart_id,
                                                           const std::vector<Rat>& coords) const {
    AlgebraHandle alg = cb_.chart_algebra_at(chart_id, coords);
    std::vector<RatMatrix> gens;
    gens.reserve(alg->n);
    for (unsigned i = 0; i < alg->n; ++i) gens.push_back(action_generator_matrix(alg->q, i));
    return gens;
}

StandardAction standard_action(const CliffordBundle& cb) { return StandardAction(cb); }

CheckResult check_action_compat(const PseudoBundle& b, const Gluing& g, const Rat& lambda,
                                const std::vector<RatMatrix>* module_lifts) {
    if (lambda != 1)
        throw Error(
            "action compatibility is defined for the lambda = 1 convention; other scales do "
            "not act on the exterior fibre");
    const Chart& src = b.chart(g.source);
    const Chart& tgt = b.chart(g.target);
    if (!src.metric || !tgt.metric) throw Error("action compatibility needs metrics");
    if (module_lifts && module_lifts->size() != g.locus.size())
        throw Error("one module lift per locus point required");

    std::size_t d1 = std::size_t(1) << src.fibre_dim;
    std::size_t d2 = std::size_t(1) << tgt.fibre_dim;

    for (std::size_t k = 0; k < g.locus.size(); ++k) {
        const RatMatrix& L = g.lifts[k];
        RatMatrix mod = module_lifts ? (*module_lifts)[k] : exterior_lift(L);
        if (mod.rows() != d2 || mod.cols() != d1)
            return {false, "module lift shape mismatch at locus " + std::to_string(k)};

        BilinearForm q1(src.fibre_dim, src.metric->eval(g.locus[k].first));
        BilinearForm q2(tgt.fibre_dim, tgt.metric->eval(g.locus[k].second));

        std::vector<RatMatrix> c2;
        c2.reserve(tgt.fibre_dim);
        for (unsigned j = 0; j < tgt.fibre_dim; ++j) c2.push_back(action_generator_matrix(q2, j));

        // generator intertwining: mod . c1(e_i) = c2(F(e_i)) . mod
        for (unsigned i = 0; i < src.fibre_dim; ++i) {
            RatMatrix lhs = mod * action_generator_matrix(q1, i);
            RatMatrix rhs(d2, d2);
            for (unsigned j = 0; j < tgt.fibre_dim; ++j)
                if (L(j, i) != 0) rhs = rhs + c2[j].scaled(L(j, i));
            rhs = rhs * mod;
            if (lhs != rhs)
                return {false, "action compatibility fails at locus " + std::to_string(k) +
                                   " on generator e" + std::to_string(i + 1)};
        }

        // the module lift must respect the exterior product on the fibres
        for (Blade a = 0; a < d1; ++a)
            for (Blade c = 0; c < d1; ++c) {
                ExteriorElement ia(tgt.fibre_dim), ic(tgt.fibre_dim), iprod(tgt.fibre_dim);
                for (std::size_t r = 0; r < d2; ++r) {
                    if (mod(r, a) != 0) ia.add_term(static_cast<Blade>(r), mod(r, a));
                    if (mod(r, c) != 0) ic.add_term(static_cast<Blade>(r), mod(r, c));
                }
                ExteriorElement src_prod =
                    wedge(ExteriorElement::basis_blade(src.fibre_dim, a),
                          ExteriorElement::basis_blade(src.fibre_dim, c));
                for (const auto& [sb, sc] : src_prod.comps())
                    for (std::size_t r = 0; r < d2; ++r)
                        if (mod(r, sb) != 0) iprod.add_term(static_cast<Blade>(r), sc * mod(r, sb));
                if (iprod != wedge(ia, ic))
                    return {false, "module lift does not respect the exterior product at locus " +
                                       std::to_string(k) + " on blade pair (" + blade_to_string(a) +
                                       ", " + blade_to_string(c) + ")"};
            }
    }
    return {true, ""};
}

InducedAction::InducedAction(const PseudoBundle& b, Rat lambda)
    : action_(CliffordBundle(b, lambda)) {
    for (const auto& g : b.gluings()) {
        CheckResult r = check_action_compat(b, g, lambda);
        if (!r.ok)
            throw Error("incompatible actions across " + g.source + "->" + g.target + ": " +
                        r.witness);
    }
}

std::vector<RatMatrix> InducedAction::generators_at(const BasePoint& p) const {
    return action_.generators_at(p);
}

CheckResult InducedAction::verify_relations(const std::vector<BasePoint>& points) const {
    for (const auto& p : points) {
        AlgebraHandle alg = action_.clifford().algebra_at(p);
        std::vector<RatMatrix> gens = generators_at(p);
        std::size_t dim = std::size_t(1) << alg->n;
        for (unsigned i = 0; i < alg->n; ++i)
            for (unsigned j = 0; j < alg->n; ++j) {
                RatMatrix anti = gens[i] * gens[j] + gens[j] * gens[i];
                RatMatrix expect = RatMatrix::identity(dim).scaled(Rat(-2) * alg->q(i, j));
                if (anti != expect)
                    return {false, "generator relation fails at " + p.to_string() + " for pair (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")"};
            }
    }
    return {true, ""};
}

}  // namespace cliffglue
