#pragma once

#include "cliffglue/matrix.hpp"
#include "cliffglue/polynomial.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cliffglue {

// Pointwise rank of the fibre's smooth dual: a default value with finitely
// many exceptional base points.
struct DualProfile {
    unsigned default_rank = 0;
    std::vector<std::pair<std::vector<Rat>, unsigned>> exceptions;

    unsigned rank_at(const std::vector<Rat>& point) const {
        for (const auto& [p, r] : exceptions)
            if (p == point) return r;
        return default_rank;
    }
};

// A continuous symmetric-matrix field can drop rank on a closed set but
// cannot jump above its generic value at an isolated point.
bool rank_profile_realizable(const DualProfile& profile, unsigned base_dim);

// Symmetric fibre_dim x fibre_dim matrix of polynomials in the chart's base
// coordinates.
struct PseudoMetricChart {
    unsigned fibre_dim = 0;
    std::vector<Polynomial> entries;  // row-major fibre_dim^2, symmetric

    static PseudoMetricChart constant(const RatMatrix& m, unsigned base_dim);
    static PseudoMetricChart from_polynomials(unsigned fibre_dim, std::vector<Polynomial> e);

    const Polynomial& at(unsigned i, unsigned j) const { return entries[i * fibre_dim + j]; }
    RatMatrix eval(const std::vector<Rat>& base_point) const;
};

// Trivial piece R^{base_dim} x R^{fibre_dim} -> R^{base_dim}.
struct Chart {
    std::string id;
    unsigned base_dim = 0;
    unsigned fibre_dim = 0;
    DualProfile dual;
    std::optional<PseudoMetricChart> metric;
};

struct BasePoint {
    std::string chart;
    std::vector<Rat> coords;

    bool operator==(const BasePoint& o) const = default;
    bool operator<(const BasePoint& o) const {
        if (chart != o.chart) return chart < o.chart;
        return coords < o.coords;
    }
    std::string to_string() const;
};

// Point-supported identification of the source chart's fibres with (subspaces
// of) the target chart's fibres: per locus point a base identification plus a
// fibrewise-linear lift, fibre(source) -> fibre(target).
struct Gluing {
    std::string source;
    std::string target;
    std::vector<std::pair<std::vector<Rat>, std::vector<Rat>>> locus;  // (src pt, tgt pt)
    std::vector<RatMatrix> lifts;  // one per locus point, fibre(target) x fibre(source)
};

class PseudoBundle;

// Where a base point actually lives after all identifications: the owning
// chart of the class representative, plus the composed fibre lift from the
// queried chart into the representative's fibre.
struct ResolvedPoint {
    BasePoint rep;
    const Chart* chart = nullptr;
    RatMatrix lift;  // fibre(query chart) -> fibre(rep chart)
    bool identified = false;
};

class PseudoBundle {
public:
    PseudoBundle() = default;
    PseudoBundle(std::vector<Chart> charts, std::vector<Gluing> gluings);

    const std::vector<Chart>& charts() const { return charts_; }
    const std::vector<Gluing>& gluings() const { return gluings_; }

    const Chart& chart(const std::string& id) const;
    bool has_chart(const std::string& id) const;

    ResolvedPoint resolve(const BasePoint& p) const;
    unsigned fibre_dim_at(const BasePoint& p) const { return resolve(p).chart->fibre_dim; }

    // All locus endpoints, deduplicated, in deterministic order.
    std::vector<BasePoint> locus_points() const;

private:
    void validate();
    void build_identifications();

    std::vector<Chart> charts_;
    std::vector<Gluing> gluings_;
    // locus point -> (representative, composed lift); identity for the rest
    std::map<BasePoint, std::pair<BasePoint, RatMatrix>> resolution_;
};

PseudoBundle glue(const PseudoBundle& b1, const PseudoBundle& b2, const Gluing& g);

enum class OpKind { sum, tensor };

// Fibrewise direct sum / tensor product of two bundles over the same base
// structure (same chart ids, base dims, and gluing loci). Lifts combine
// blockwise, respectively as Kronecker products.
PseudoBundle direct_sum(const PseudoBundle& b1, const PseudoBundle& b2);
PseudoBundle tensor_product(const PseudoBundle& b1, const PseudoBundle& b2);

// Fibrewise dual. Requires constant dual profiles; across each gluing the
// declared dual dimensions must agree and the restriction of the lift to the
// smooth-dual block must be invertible, otherwise the dual gluing is
// obstructed and an Error is thrown.
PseudoBundle dual(const PseudoBundle& b);

struct CompatWitness {
    std::size_t locus_index = 0;
    unsigned i = 0, j = 0;
    Rat lhs, rhs;
    std::string to_string() const;
};

struct CompatResult {
    bool ok = true;
    std::optional<CompatWitness> witness;
};

// Exact check of g1(y)(v,w) = g2(f(y))(Lv, Lw) on all basis pairs at every
// locus point of the gluing.
CompatResult check_compatible(const PseudoBundle& b, const Gluing& g);

// Piecewise metric evaluator on the glued base: the owning chart's metric
// away from the loci, the representative (target) chart's metric at
// identified points. Construction refuses incompatible metrics.
class InducedMetric {
public:
    explicit InducedMetric(const PseudoBundle& b);
    RatMatrix eval(const BasePoint& p) const;
    const PseudoBundle& bundle() const { return *bundle_; }

private:
    const PseudoBundle* bundle_;
};

struct CommutesResult {
    bool ok = true;
    std::string witness;
};

struct GluingPair {
    PseudoBundle b1;
    PseudoBundle b2;
    Gluing g;
};

// Structural equality of two bundles: charts, profiles, metrics, gluings.
CommutesResult compare_bundles(const PseudoBundle& a, const PseudoBundle& b);

// Builds (op then glue) and (glue then op) for the two pairs and compares
// them fibrewise, lifts included.
CommutesResult verify_operation_gluing_commutes(OpKind kind, const GluingPair& p,
                                                const GluingPair& q);

// The two code paths, exposed so faults can be injected between build and
// comparison.
PseudoBundle build_op_then_glue(OpKind kind, const GluingPair& p, const GluingPair& q);
PseudoBundle build_glue_then_op(OpKind kind, const GluingPair& p, const GluingPair& q);

// Exact PSD + rank-vs-profile verification of every chart metric at the locus
// points plus `samples` deterministic pseudo-random rational points per chart.
struct MetricProfileResult {
    bool ok = true;
    std::string witness;
};
MetricProfileResult verify_metric_profiles(const PseudoBundle& b, unsigned samples = 10,
                                           std::uint64_t seed = 2024);

}  // namespace cliffglue
