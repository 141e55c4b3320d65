#include "cliffglue/pseudobundle.hpp"

#include <algorithm>
#include <set>

namespace cliffglue {

bool rank_profile_realizable(const DualProfile& profile, unsigned base_dim) {
    for (const auto& [point, rank] : profile.exceptions) {
        if (point.size() != base_dim) throw Error("exception point dimension mismatch");
        if (rank > profile.default_rank) return false;
    }
    return true;
}

PseudoMetricChart PseudoMetricChart::constant(const RatMatrix& m, unsigned base_dim) {
    if (!m.is_symmetric()) throw Error("pseudo-metric matrix must be symmetric");
    PseudoMetricChart g;
    g.fibre_dim = static_cast<unsigned>(m.rows());
    g.entries.reserve(g.fibre_dim * g.fibre_dim);
    for (unsigned i = 0; i < g.fibre_dim; ++i)
        for (unsigned j = 0; j < g.fibre_dim; ++j)
            g.entries.push_back(Polynomial::constant(base_dim, m(i, j)));
    return g;
}

PseudoMetricChart PseudoMetricChart::from_polynomials(unsigned fibre_dim,
                                                      std::vector<Polynomial> e) {
    if (e.size() != std::size_t(fibre_dim) * fibre_dim)
        throw Error("pseudo-metric entry count mismatch");
    PseudoMetricChart g;
    g.fibre_dim = fibre_dim;
    g.entries = std::move(e);
    for (unsigned i = 0; i < fibre_dim; ++i)
        for (unsigned j = i + 1; j < fibre_dim; ++j)
            if (g.at(i, j) != g.at(j, i))
                throw Error("pseudo-metric must be symmetric as a polynomial matrix");
    return g;
}

RatMatrix PseudoMetricChart::eval(const std::vector<Rat>& base_point) const {
    RatMatrix m(fibre_dim, fibre_dim);
    for (unsigned i = 0; i < fibre_dim; ++i)
        for (unsigned j = 0; j < fibre_dim; ++j) m(i, j) = at(i, j).eval(base_point);
    return m;
}

std::string BasePoint::to_string() const {
    std::string s = chart + "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ",";
        s += rat_to_string(coords[i]);
    }
    return s + ")";
}

PseudoBundle::PseudoBundle(std::vector<Chart> charts, std::vector<Gluing> gluings)
    : charts_(std::move(charts)), gluings_(std::move(gluings)) {
    validate();
    build_identifications();
}

const Chart& PseudoBundle::chart(const std::string& id) const {
    for (const auto& c : charts_)
        if (c.id == id) return c;
    throw Error("unknown chart: " + id);
}

bool PseudoBundle::has_chart(const std::string& id) const {
    for (const auto& c : charts_)
        if (c.id == id) return true;
    return false;
}

void PseudoBundle::validate() {
    std::set<std::string> ids;
    for (const auto& c : charts_) {
        if (!ids.insert(c.id).second) throw Error("duplicate chart id: " + c.id);
        if (c.dual.default_rank > c.fibre_dim)
            throw Error("dual rank exceeds fibre dimension in chart " + c.id);
        for (const auto& [p, r] : c.dual.exceptions) {
            if (p.size() != c.base_dim)
                throw Error("dual exception point dimension mismatch in chart " + c.id);
            if (r > c.fibre_dim) throw Error("dual rank exceeds fibre dimension in chart " + c.id);
        }
        if (c.metric && c.metric->fibre_dim != c.fibre_dim)
            throw Error("metric fibre dimension mismatch in chart " + c.id);
        if (c.metric)
            for (const auto& e : c.metric->entries)
                if (e.num_vars() != c.base_dim)
                    throw Error("metric entries must be polynomials in the base coordinates of " +
                                c.id);
    }
    for (const auto& g : gluings_) {
        const Chart& src = chart(g.source);
        const Chart& tgt = chart(g.target);
        if (g.lifts.size() != g.locus.size())
            throw Error("gluing needs one lift per locus point");
        std::set<std::vector<Rat>> seen_src, seen_tgt;
        for (std::size_t k = 0; k < g.locus.size(); ++k) {
            const auto& [sp, tp] = g.locus[k];
            if (sp.size() != src.base_dim || tp.size() != tgt.base_dim)
                throw Error("locus point dimension mismatch in gluing " + g.source + "->" +
                            g.target);
            if (!seen_src.insert(sp).second || !seen_tgt.insert(tp).second)
                throw Error("gluing base map must be injective on the locus");
            if (g.lifts[k].rows() != tgt.fibre_dim || g.lifts[k].cols() != src.fibre_dim)
                throw Error("lift shape mismatch in gluing " + g.source + "->" + g.target);
        }
    }
}

void PseudoBundle::build_identifications() {
    // Directed identification edges between locus points; each point may be
    // the source of at most one (conflicting lifts are rejected).
    struct Edge {
        BasePoint to;
        RatMatrix lift;
    };
    std::map<BasePoint, Edge> out;
    std::set<BasePoint> nodes;
    for (const auto& g : gluings_)
        for (std::size_t k = 0; k < g.locus.size(); ++k) {
            BasePoint from{g.source, g.locus[k].first};
            BasePoint to{g.target, g.locus[k].second};
            nodes.insert(from);
            nodes.insert(to);
            auto it = out.find(from);
            if (it != out.end()) {
                if (it->second.to == to && it->second.lift == g.lifts[k]) continue;
                throw Error("conflicting identification at " + from.to_string());
            }
            out.emplace(from, Edge{to, g.lifts[k]});
        }

    for (const auto& p : nodes) {
        // follow the out-edges to the sink; the walk is bounded by the node
        // count, anything longer is a cycle
        BasePoint cur = p;
        RatMatrix lift = RatMatrix::identity(chart(p.chart).fibre_dim);
        std::size_t steps = 0;
        while (true) {
            auto it = out.find(cur);
            if (it == out.end()) break;
            lift = it->second.lift * lift;
            cur = it->second.to;
            if (++steps > nodes.size()) throw Error("cyclic identification through " + p.to_string());
        }
        resolution_[p] = {cur, lift};
    }
}

ResolvedPoint PseudoBundle::resolve(const BasePoint& p) const {
    const Chart& own = chart(p.chart);
    if (p.coords.size() != own.base_dim)
        throw Error("base point dimension mismatch for chart " + p.chart);
    auto it = resolution_.find(p);
    if (it == resolution_.end())
        return {p, &own, RatMatrix::identity(own.fibre_dim), false};
    ResolvedPoint r;
    r.rep = it->second.first;
    r.chart = &chart(r.rep.chart);
    r.lift = it->second.second;
    r.identified = !(r.rep == p);
    return r;
}

std::vector<BasePoint> PseudoBundle::locus_points() const {
    std::set<BasePoint> pts;
    for (const auto& g : gluings_)
        for (const auto& [sp, tp] : g.locus) {
            pts.insert({g.source, sp});
            pts.insert({g.target, tp});
        }
    return {pts.begin(), pts.end()};
}

PseudoBundle glue(const PseudoBundle& b1, const PseudoBundle& b2, const Gluing& g) {
    bool forward = b1.has_chart(g.source) && b2.has_chart(g.target);
    bool backward = b2.has_chart(g.source) && b1.has_chart(g.target);
    if (!forward && !backward)
        throw Error("gluing must connect a chart of one bundle with a chart of the other");
    std::vector<Chart> charts = b1.charts();
    for (const auto& c : b2.charts()) charts.push_back(c);
    std::vector<Gluing> gluings = b1.gluings();
    for (const auto& gl : b2.gluings()) gluings.push_back(gl);
    gluings.push_back(g);
    return PseudoBundle(std::move(charts), std::move(gluings));
}

namespace {

void require_same_base(const PseudoBundle& a, const PseudoBundle& b) {
    if (a.charts().size() != b.charts().size() || a.gluings().size() != b.gluings().size())
        throw Error("bundles are not over the same base structure");
    for (std::size_t i = 0; i < a.charts().size(); ++i) {
        const Chart& ca = a.charts()[i];
        const Chart& cb = b.charts()[i];
        if (ca.id != cb.id || ca.base_dim != cb.base_dim)
            throw Error("bundles are not over the same base structure");
    }
    for (std::size_t i = 0; i < a.gluings().size(); ++i) {
        const Gluing& ga = a.gluings()[i];
        const Gluing& gb = b.gluings()[i];
        if (ga.source != gb.source || ga.target != gb.target || ga.locus != gb.locus)
            throw Error("bundles are not glued along the same loci");
    }
}

PseudoBundle combine(const PseudoBundle& b1, const PseudoBundle& b2, OpKind kind) {
    require_same_base(b1, b2);
    std::vector<Chart> charts;
    for (std::size_t ci = 0; ci < b1.charts().size(); ++ci) {
        const Chart& c1 = b1.charts()[ci];
        const Chart& c2 = b2.charts()[ci];
        Chart c;
        c.id = c1.id;
        c.base_dim = c1.base_dim;
        if (kind == OpKind::sum) {
            c.fibre_dim = c1.fibre_dim + c2.fibre_dim;
            c.dual.default_rank = c1.dual.default_rank + c2.dual.default_rank;
        } else {
            c.fibre_dim = c1.fibre_dim * c2.fibre_dim;
            c.dual.default_rank = c1.dual.default_rank * c2.dual.default_rank;
        }
        // exceptional ranks combine pointwise over the union of exception points
        std::set<std::vector<Rat>> expts;
        for (const auto& [p, r] : c1.dual.exceptions) expts.insert(p);
        for (const auto& [p, r] : c2.dual.exceptions) expts.insert(p);
        for (const auto& p : expts) {
            unsigned r = kind == OpKind::sum ? c1.dual.rank_at(p) + c2.dual.rank_at(p)
                                             : c1.dual.rank_at(p) * c2.dual.rank_at(p);
            c.dual.exceptions.emplace_back(p, r);
        }
        if (c1.metric && c2.metric) {
            PseudoMetricChart g;
            g.fibre_dim = c.fibre_dim;
            g.entries.resize(std::size_t(c.fibre_dim) * c.fibre_dim, Polynomial(c.base_dim));
            if (kind == OpKind::sum) {
                for (unsigned i = 0; i < c1.fibre_dim; ++i)
                    for (unsigned j = 0; j < c1.fibre_dim; ++j)
                        g.entries[i * c.fibre_dim + j] = c1.metric->at(i, j);
                for (unsigned i = 0; i < c2.fibre_dim; ++i)
                    for (unsigned j = 0; j < c2.fibre_dim; ++j)
                        g.entries[(c1.fibre_dim + i) * c.fibre_dim + (c1.fibre_dim + j)] =
                            c2.metric->at(i, j);
            } else {
                for (unsigned i1 = 0; i1 < c1.fibre_dim; ++i1)
                    for (unsigned j1 = 0; j1 < c1.fibre_dim; ++j1)
                        for (unsigned i2 = 0; i2 < c2.fibre_dim; ++i2)
                            for (unsigned j2 = 0; j2 < c2.fibre_dim; ++j2)
                                g.entries[(i1 * c2.fibre_dim + i2) * c.fibre_dim +
                                          (j1 * c2.fibre_dim + j2)] =
                                    c1.metric->at(i1, j1) * c2.metric->at(i2, j2);
            }
            c.metric = std::move(g);
        }
        charts.push_back(std::move(c));
    }
    std::vector<Gluing> gluings;
    for (std::size_t gi = 0; gi < b1.gluings().size(); ++gi) {
        const Gluing& g1 = b1.gluings()[gi];
        const Gluing& g2 = b2.gluings()[gi];
        Gluing g;
        g.source = g1.source;
        g.target = g1.target;
        g.locus = g1.locus;
        for (std::size_t k = 0; k < g1.lifts.size(); ++k)
            g.lifts.push_back(kind == OpKind::sum
                                  ? RatMatrix::block_diag(g1.lifts[k], g2.lifts[k])
                                  : RatMatrix::kronecker(g1.lifts[k], g2.lifts[k]));
        gluings.push_back(std::move(g));
    }
    return PseudoBundle(std::move(charts), std::move(gluings));
}

}  // namespace

PseudoBundle direct_sum(const PseudoBundle& b1, const PseudoBundle& b2) {
    return combine(b1, b2, OpKind::sum);
}

PseudoBundle tensor_product(const PseudoBundle& b1, const PseudoBundle& b2) {
    return combine(b1, b2, OpKind::tensor);
}

PseudoBundle dual(const PseudoBundle& b) {
    std::vector<Chart> charts;
    for (const auto& c : b.charts()) {
        if (!c.dual.exceptions.empty())
            throw Error("dual of a chart with a non-constant dual profile is not a chart");
        Chart d;
        d.id = c.id;
        d.base_dim = c.base_dim;
        d.fibre_dim = c.dual.default_rank;
        d.dual.default_rank = c.dual.default_rank;  // the dual of a standard fibre
        charts.push_back(std::move(d));
    }
    std::vector<Gluing> gluings;
    for (const auto& g : b.gluings()) {
        const Chart& src = b.chart(g.source);
        const Chart& tgt = b.chart(g.target);
        unsigned ds = src.dual.default_rank;
        unsigned dt = tgt.dual.default_rank;
        if (ds != dt)
            throw Error("dual gluing obstructed: dual dimensions differ across " + g.source +
                        "->" + g.target + " (" + std::to_string(ds) + " vs " +
                        std::to_string(dt) + ")");
        Gluing d;
        d.source = g.source;
        d.target = g.target;
        d.locus = g.locus;
        std::vector<std::size_t> rows(dt), cols(ds);
        for (unsigned i = 0; i < dt; ++i) rows[i] = i;
        for (unsigned j = 0; j < ds; ++j) cols[j] = j;
        for (const auto& lift : g.lifts) {
            RatMatrix restricted = lift.submatrix(rows, cols).transpose();
            if (!restricted.invertible())
                throw Error("dual gluing obstructed: restricted lift is not invertible across " +
                            g.source + "->" + g.target);
            d.lifts.push_back(restricted.inverse());
        }
        gluings.push_back(std::move(d));
    }
    return PseudoBundle(std::move(charts), std::move(gluings));
}

std::string CompatWitness::to_string() const {
    return "locus " + std::to_string(locus_index) + ", basis pair (" + std::to_string(i) + "," +
           std::to_string(j) + "): " + rat_to_string(lhs) + " != " + rat_to_string(rhs);
}

CompatResult check_compatible(const PseudoBundle& b, const Gluing& g) {
    const Chart& src = b.chart(g.source);
    const Chart& tgt = b.chart(g.target);
    if (!src.metric || !tgt.metric) throw Error("compatibility check needs metrics on both charts");
    for (std::size_t k = 0; k < g.locus.size(); ++k) {
        RatMatrix g1 = src.metric->eval(g.locus[k].first);
        RatMatrix g2 = tgt.metric->eval(g.locus[k].second);
        RatMatrix pulled = g.lifts[k].transpose() * g2 * g.lifts[k];
        for (unsigned i = 0; i < src.fibre_dim; ++i)
            for (unsigned j = 0; j < src.fibre_dim; ++j)
                if (g1(i, j) != pulled(i, j))
                    return {false, CompatWitness{k, i, j, g1(i, j), pulled(i, j)}};
    }
    return {true, std::nullopt};
}

InducedMetric::InducedMetric(const PseudoBundle& b) : bundle_(&b) {
    for (const auto& c : b.charts())
        if (!c.metric) throw Error("induced pseudo-metric needs a metric on every chart");
    for (const auto& g : b.gluings()) {
        CompatResult r = check_compatible(b, g);
        if (!r.ok)
            throw Error("incompatible pseudo-metrics across " + g.source + "->" + g.target +
                        " at " + r.witness->to_string());
    }
}

RatMatrix InducedMetric::eval(const BasePoint& p) const {
    ResolvedPoint r = bundle_->resolve(p);
    return r.chart->metric->eval(r.rep.coords);
}

CommutesResult compare_bundles(const PseudoBundle& a, const PseudoBundle& b) {
    if (a.charts().size() != b.charts().size())
        return {false, "chart count differs"};
    for (std::size_t i = 0; i < a.charts().size(); ++i) {
        const Chart& ca = a.charts()[i];
        const Chart& cb = b.charts()[i];
        if (ca.id != cb.id) return {false, "chart id mismatch at index " + std::to_string(i)};
        if (ca.base_dim != cb.base_dim || ca.fibre_dim != cb.fibre_dim)
            return {false, "chart dimensions differ on " + ca.id};
        if (ca.dual.default_rank != cb.dual.default_rank)
            return {false, "dual profile differs on " + ca.id};
        bool ma = ca.metric.has_value(), mb = cb.metric.has_value();
        if (ma != mb) return {false, "metric presence differs on " + ca.id};
        if (ma && ca.metric->entries != cb.metric->entries)
            return {false, "metrics differ on " + ca.id};
    }
    if (a.gluings().size() != b.gluings().size()) return {false, "gluing count differs"};
    for (std::size_t i = 0; i < a.gluings().size(); ++i) {
        const Gluing& ga = a.gluings()[i];
        const Gluing& gb = b.gluings()[i];
        if (ga.source != gb.source || ga.target != gb.target)
            return {false, "gluing endpoints differ at index " + std::to_string(i)};
        if (ga.locus != gb.locus) return {false, "gluing loci differ at index " + std::to_string(i)};
        for (std::size_t k = 0; k < ga.lifts.size(); ++k)
            if (ga.lifts[k] != gb.lifts[k])
                return {false, "lift matrices differ across " + ga.source + "->" + ga.target +
                                   " at locus " + std::to_string(k)};
    }
    // fibre dimensions on the glued base, including at identified points
    for (const auto& p : a.locus_points()) {
        if (a.fibre_dim_at(p) != b.fibre_dim_at(p))
            return {false, "fibre dimension differs at " + p.to_string()};
    }
    return {true, ""};
}

PseudoBundle build_op_then_glue(OpKind kind, const GluingPair& p, const GluingPair& q) {
    if (p.g.source != q.g.source || p.g.target != q.g.target || p.g.locus != q.g.locus)
        throw Error("the two gluings must cover the same base identification");
    PseudoBundle s1 = kind == OpKind::sum ? direct_sum(p.b1, q.b1) : tensor_product(p.b1, q.b1);
    PseudoBundle s2 = kind == OpKind::sum ? direct_sum(p.b2, q.b2) : tensor_product(p.b2, q.b2);
    Gluing g;
    g.source = p.g.source;
    g.target = p.g.target;
    g.locus = p.g.locus;
    for (std::size_t k = 0; k < p.g.lifts.size(); ++k)
        g.lifts.push_back(kind == OpKind::sum
                              ? RatMatrix::block_diag(p.g.lifts[k], q.g.lifts[k])
                              : RatMatrix::kronecker(p.g.lifts[k], q.g.lifts[k]));
    return glue(s1, s2, g);
}

PseudoBundle build_glue_then_op(OpKind kind, const GluingPair& p, const GluingPair& q) {
    PseudoBundle g1 = glue(p.b1, p.b2, p.g);
    PseudoBundle g2 = glue(q.b1, q.b2, q.g);
    return kind == OpKind::sum ? direct_sum(g1, g2) : tensor_product(g1, g2);
}

CommutesResult verify_operation_gluing_commutes(OpKind kind, const GluingPair& p,
                                                const GluingPair& q) {
    return compare_bundles(build_op_then_glue(kind, p, q), build_glue_then_op(kind, p, q));
}

MetricProfileResult verify_metric_profiles(const PseudoBundle& b, unsigned samples,
                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (const auto& c : b.charts()) {
        if (!c.metric) continue;
        std::vector<std::vector<Rat>> points;
        for (const auto& g : b.gluings()) {
            for (const auto& [sp, tp] : g.locus) {
                if (g.source == c.id) points.push_back(sp);
                if (g.target == c.id) points.push_back(tp);
            }
        }
        for (unsigned s = 0; s < samples; ++s) {
            std::vector<Rat> pt(c.base_dim);
            for (auto& x : pt) x = random_rat(rng, 20, 4);
            points.push_back(std::move(pt));
        }
        if (c.base_dim == 0) points.push_back({});
        for (const auto& [p, r] : c.dual.exceptions) points.push_back(p);
        for (const auto& pt : points) {
            RatMatrix m = c.metric->eval(pt);
            PsdResult psd = psd_rank(m);
            if (!psd.psd)
                return {false, "metric of " + c.id + " is not positive semidefinite at " +
                                   BasePoint{c.id, pt}.to_string()};
            unsigned want = c.dual.rank_at(pt);
            if (psd.rank != want)
                return {false, "metric rank " + std::to_string(psd.rank) + " of " + c.id + " at " +
                                   BasePoint{c.id, pt}.to_string() + " differs from profile rank " +
                                   std::to_string(want)};
        }
    }
    return {true, ""};
}

}  // namespace cliffglue
