#pragma once

#include "cliffglue/clifford.hpp"
#include "cliffglue/pseudobundle.hpp"

#include <functional>

namespace cliffglue {

// Fibrewise family of Clifford algebras over a glued bundle: at every base
// point the algebra of the owning fibre with the induced metric evaluated
// there. Fibre dimension is 2^(fibre dim) everywhere.
class CliffordBundle {
public:
    CliffordBundle(const PseudoBundle& b, Rat lambda);

    const PseudoBundle& bundle() const { return *bundle_; }
    const Rat& lambda() const { return lambda_; }

    // Resolved fibre: representative chart's fibre with the induced metric.
    AlgebraHandle algebra_at(const BasePoint& p) const;
    // Unresolved per-chart fibre: the chart's own metric, identifications
    // ignored. This is the "Clifford algebra of the factor" side of the
    // gluing comparison.
    AlgebraHandle chart_algebra_at(const std::string& chart_id,
                                   const std::vector<Rat>& coords) const;

private:
    const PseudoBundle* bundle_;
    Rat lambda_;
    InducedMetric metric_;
};

CliffordBundle clifford_bundle(const PseudoBundle& b, Rat lambda);

// Fibrewise algebra morphism induced by a vector lift: the 2^k2 x 2^k1 matrix
// of the universal extension of (lift followed by inclusion).
struct CliffordLift {
    RatMatrix matrix;
    AlgebraHandle source;
    AlgebraHandle target;

    Multivector apply(const Multivector& x) const;
};

// Requires compatible metrics at the locus point (otherwise the extension's
// relation precondition fails and an ExtendError escapes).
CliffordLift induced_clifford_lift(const PseudoBundle& b, const Gluing& g,
                                   std::size_t locus_index, const Rat& lambda);

struct CheckResult {
    bool ok = true;
    std::string witness;
};

// Exhaustive unit/multiplicativity check of a fibre algebra morphism over all
// blade pairs.
CheckResult clifford_lift_multiplicative(const CliffordLift& lift);

// Fibrewise comparison of "glue the Clifford bundles along F^Cl" against
// "Clifford bundle of the glued bundle with the induced metric": equal
// multiplication tables at every locus point and at the given sample points,
// under the canonical blade identification. The optional override replaces
// the induced-metric evaluation (used to inject faults).
using MetricOverride = std::function<RatMatrix(const BasePoint&)>;
CheckResult verify_phi_iso(const PseudoBundle& b, const Rat& lambda,
                           const std::vector<BasePoint>& sample_points = {},
                           const MetricOverride& override_metric = nullptr);

// Exterior-power matrix of a linear map: blade-indexed minors; the degree-1
// block is the map itself, the degree-0 block is 1.
RatMatrix exterior_lift(const RatMatrix& m);

// Fibrewise exterior-algebra bundle: over each base point the exterior
// algebra of the resolved fibre, of dimension 2^k. The product is
// metric-independent, so only the dimension varies over the base.
class ExteriorBundle {
public:
    explicit ExteriorBundle(const PseudoBundle& b) : bundle_(&b) {}

    unsigned vector_dim_at(const BasePoint& p) const {
        return bundle_->resolve(p).chart->fibre_dim;
    }
    unsigned fibre_dim_at(const BasePoint& p) const { return 1u << vector_dim_at(p); }
    ExteriorElement unit_at(const BasePoint& p) const {
        return ExteriorElement::unit(vector_dim_at(p));
    }
    ExteriorElement product_at(const BasePoint& p, const ExteriorElement& a,
                               const ExteriorElement& b) const {
        if (a.n() != vector_dim_at(p) || b.n() != vector_dim_at(p))
            throw Error("exterior element does not live on the fibre at " + p.to_string());
        return wedge(a, b);
    }

private:
    const PseudoBundle* bundle_;
};

ExteriorBundle exterior_bundle(const PseudoBundle& b);

// The generator operator matrices of the standard action c = wedge minus
// contraction on the exterior fibre at a base point. Requires lambda = 1:
// with any other convention the generators violate the module precondition
// c(v)c(w) + c(w)c(v) = -2 q(v,w) id. Holds the Clifford bundle by value;
// the underlying PseudoBundle must outlive it.
class StandardAction {
public:
    explicit StandardAction(CliffordBundle cb);

    // Resolved action on the glued bundle (target fibre at identified points).
    std::vector<RatMatrix> generators_at(const BasePoint& p) const;
    // Chartwise action, identifications ignored.
    std::vector<RatMatrix> chart_generators_at(const std::string& chart_id,
                                               const std::vector<Rat>& coords) const;

    const CliffordBundle& clifford() const { return cb_; }

private:
    CliffordBundle cb_;
};

StandardAction standard_action(const CliffordBundle& cb);

// Def-style compatibility of the chartwise actions across one gluing: the
// module lift intertwines c_source with c_target composed with F^Cl on every
// generator, and the lift respects the exterior product (blade pairs). The
// default module lift is the exterior extension of the vector lift.
CheckResult check_action_compat(const PseudoBundle& b, const Gluing& g, const Rat& lambda,
                                const std::vector<RatMatrix>* module_lifts = nullptr);

// Piecewise action on the glued module bundle; construction refuses
// incompatible actions.
class InducedAction {
public:
    InducedAction(const PseudoBundle& b, Rat lambda);

    std::vector<RatMatrix> generators_at(const BasePoint& p) const;
    // Anticommutator relation of the generators against the induced metric at
    // the given points.
    CheckResult verify_relations(const std::vector<BasePoint>& points) const;

private:
    StandardAction action_;
};

}  // namespace cliffglue
