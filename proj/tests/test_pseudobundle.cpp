#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cliffglue/pseudobundle.hpp"
#include "cliffglue/worked_example.hpp"

#include <random>

using namespace cliffglue;

namespace {

Chart trivial_chart(std::string id, unsigned base_dim, unsigned fibre_dim) {
    Chart c;
    c.id = std::move(id);
    c.base_dim = base_dim;
    c.fibre_dim = fibre_dim;
    c.dual.default_rank = fibre_dim;
    return c;
}

RatMatrix random_matrix(std::mt19937_64& rng, unsigned rows, unsigned cols) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    RatMatrix m(rows, cols);
    for (unsigned i = 0; i < rows; ++i)
        for (unsigned j = 0; j < cols; ++j) m(i, j) = Rat(coeff(rng));
    return m;
}

template <class F>
std::string thrown_message(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

GluingPair random_pair(std::mt19937_64& rng, unsigned k1, unsigned k2, const std::string& suffix) {
    GluingPair p;
    p.b1 = PseudoBundle({trivial_chart("S" + suffix, 1, k1)}, {});
    p.b2 = PseudoBundle({trivial_chart("T" + suffix, 1, k2)}, {});
    p.g.source = "S" + suffix;
    p.g.target = "T" + suffix;
    p.g.locus = {{{Rat(0)}, {Rat(0)}}};
    p.g.lifts = {random_matrix(rng, k2, k1)};
    return p;
}

}  // namespace

TEST_CASE("gluing the two lines into the plane produces the wedge bundle") {
    PseudoBundle b = wedge_lines_bundle();
    CHECK(b.charts().size() == 3);

    // the fibre over the identified origin is the plane chart's fibre
    ResolvedPoint r = b.resolve({kWedgeChartLineX, {Rat(0)}});
    CHECK(r.identified);
    CHECK(r.chart->id == kWedgeChartPlane);
    CHECK(r.chart->fibre_dim == 2);
    CHECK(r.lift == RatMatrix::from_rows({{Rat(1)}, {Rat(0)}}));

    ResolvedPoint ry = b.resolve({kWedgeChartLineY, {Rat(0)}});
    CHECK(ry.chart->fibre_dim == 2);
    CHECK(ry.lift == RatMatrix::from_rows({{Rat(0)}, {Rat(1)}}));

    // away from the locus the fibres stay one-dimensional
    CHECK(b.fibre_dim_at({kWedgeChartLineX, {Rat(5)}}) == 1);
    CHECK_FALSE(b.resolve({kWedgeChartLineX, {Rat(5)}}).identified);
}

TEST_CASE("gluing with an empty locus is a disjoint union") {
    PseudoBundle b1({trivial_chart("A", 1, 2)}, {});
    PseudoBundle b2({trivial_chart("B", 1, 3)}, {});
    Gluing g;
    g.source = "A";
    g.target = "B";
    PseudoBundle u = glue(b1, b2, g);
    CHECK(u.charts().size() == 2);
    CHECK(u.locus_points().empty());
    CHECK(u.fibre_dim_at({"A", {Rat(0)}}) == 2);
    CHECK(u.fibre_dim_at({"B", {Rat(0)}}) == 3);
}

TEST_CASE("conflicting identifications are rejected") {
    std::vector<Chart> charts = {trivial_chart("A", 1, 1), trivial_chart("B", 1, 1)};
    Gluing g1{"A", "B", {{{Rat(0)}, {Rat(0)}}}, {RatMatrix::identity(1)}};
    Gluing g2{"A", "B", {{{Rat(0)}, {Rat(0)}}}, {RatMatrix::identity(1).scaled(2)}};
    CHECK(thrown_message([&] { PseudoBundle(charts, {g1, g2}); })
              .find("conflicting identification") != std::string::npos);
    // the same gluing twice is just redundant
    CHECK_NOTHROW(PseudoBundle(charts, {g1, g1}));
    // a cycle of identifications has no receiving fibre
    Gluing back{"B", "A", {{{Rat(0)}, {Rat(0)}}}, {RatMatrix::identity(1)}};
    CHECK(thrown_message([&] { PseudoBundle(charts, {g1, back}); }).find("cyclic") !=
          std::string::npos);
}

TEST_CASE("chained identifications compose their lifts") {
    std::vector<Chart> charts = {trivial_chart("A", 1, 1), trivial_chart("B", 1, 2),
                                 trivial_chart("C", 1, 2)};
    RatMatrix embed = RatMatrix::from_rows({{Rat(1)}, {Rat(2)}});
    RatMatrix rot = RatMatrix::from_rows({{Rat(0), Rat(-1)}, {Rat(1), Rat(0)}});
    Gluing ab{"A", "B", {{{Rat(0)}, {Rat(1)}}}, {embed}};
    Gluing bc{"B", "C", {{{Rat(1)}, {Rat(2)}}}, {rot}};
    PseudoBundle b(charts, {ab, bc});
    ResolvedPoint r = b.resolve({"A", {Rat(0)}});
    CHECK(r.rep == BasePoint{"C", {Rat(2)}});
    CHECK(r.lift == rot * embed);
}

TEST_CASE("direct sum and tensor product combine fibre dimensions") {
    PseudoBundle a({trivial_chart("X", 1, 2)}, {});
    PseudoBundle b({trivial_chart("X", 1, 3)}, {});
    CHECK(direct_sum(a, b).chart("X").fibre_dim == 5);
    CHECK(tensor_product(a, b).chart("X").fibre_dim == 6);
    CHECK(direct_sum(a, b).chart("X").dual.default_rank == 5);
    CHECK(tensor_product(a, b).chart("X").dual.default_rank == 6);
}

TEST_CASE("direct sum and tensor product combine fibres and lifts") {
    std::mt19937_64 rng(61);
    GluingPair p = random_pair(rng, 2, 3, "1");
    PseudoBundle g1 = glue(p.b1, p.b2, p.g);

    PseudoBundle sum = direct_sum(g1, g1);
    CHECK(sum.chart("S1").fibre_dim == 4);
    CHECK(sum.chart("T1").fibre_dim == 6);
    CHECK(sum.gluings()[0].lifts[0] == RatMatrix::block_diag(p.g.lifts[0], p.g.lifts[0]));

    PseudoBundle tens = tensor_product(g1, g1);
    CHECK(tens.chart("S1").fibre_dim == 4);
    CHECK(tens.chart("T1").fibre_dim == 9);
    CHECK(tens.gluings()[0].lifts[0] == RatMatrix::kronecker(p.g.lifts[0], p.g.lifts[0]));
}

TEST_CASE("dual bundle keeps standard fibres and detects the obstruction") {
    PseudoBundle b = wedge_lines_bundle();
    // chartwise, the dual of the x-line chart has a one-dimensional fibre
    PseudoBundle single({b.chart(kWedgeChartLineX)}, {});
    PseudoBundle d = dual(single);
    CHECK(d.chart(kWedgeChartLineX).fibre_dim == 1);

    // across the gluing the dual dimensions 1 vs 2 differ, so the dual gluing
    // is obstructed
    CHECK(thrown_message([&] { dual(b); }).find("dual gluing obstructed") != std::string::npos);

    // equal dual dimensions but a rank-deficient restricted lift
    std::vector<Chart> charts = {trivial_chart("A", 1, 2), trivial_chart("B", 1, 2)};
    RatMatrix collapse(2, 2);
    collapse(0, 0) = 1;  // rank one
    Gluing g{"A", "B", {{{Rat(0)}, {Rat(0)}}}, {collapse}};
    PseudoBundle bb(charts, {g});
    CHECK(thrown_message([&] { dual(bb); }).find("not invertible") != std::string::npos);

    // invertible lift: the dual lift is the inverse transpose
    RatMatrix shear = RatMatrix::from_rows({{Rat(1), Rat(1)}, {Rat(0), Rat(1)}});
    Gluing gs{"A", "B", {{{Rat(0)}, {Rat(0)}}}, {shear}};
    PseudoBundle bs(charts, {gs});
    PseudoBundle ds = dual(bs);
    CHECK(ds.gluings()[0].lifts[0] == shear.transpose().inverse());
}

TEST_CASE("metric compatibility across the wedge gluings") {
    PseudoBundle b = wedge_lines_bundle();
    for (const auto& g : b.gluings()) CHECK(check_compatible(b, g).ok);

    // scaling one line metric breaks compatibility with a concrete witness
    std::vector<Chart> charts;
    for (Chart c : b.charts()) {
        if (c.id == kWedgeChartLineX) {
            std::vector<Polynomial> scaled;
            for (const auto& e : c.metric->entries) scaled.push_back(e.scaled(2));
            c.metric = PseudoMetricChart::from_polynomials(1, scaled);
        }
        charts.push_back(std::move(c));
    }
    PseudoBundle broken(charts, b.gluings());
    bool found = false;
    for (const auto& g : broken.gluings()) {
        CompatResult r = check_compatible(broken, g);
        if (!r.ok) {
            found = true;
            CHECK(r.witness->i == 0);
            CHECK(r.witness->j == 0);
            CHECK(r.witness->lhs == Rat(2));
            CHECK(r.witness->rhs == Rat(1));
        }
    }
    CHECK(found);
    CHECK_THROWS_AS(InducedMetric{broken}, Error);
}

TEST_CASE("a zero lift against a zero source metric is compatible") {
    std::vector<Chart> charts = {trivial_chart("A", 1, 1), trivial_chart("B", 1, 2)};
    charts[0].metric = PseudoMetricChart::constant(RatMatrix(1, 1), 1);  // zero form
    charts[0].dual.default_rank = 0;
    charts[1].metric = PseudoMetricChart::constant(RatMatrix::identity(2), 1);
    Gluing g{"A", "B", {{{Rat(0)}, {Rat(0)}}}, {RatMatrix(2, 1)}};
    PseudoBundle b(charts, {g});
    CHECK(check_compatible(b, g).ok);
}

TEST_CASE("the induced metric follows the owning chart and the identifications") {
    PseudoBundle b = wedge_lines_bundle();
    InducedMetric metric(b);

    // (x^2 + 1) at x = 1
    RatMatrix at_x1 = metric.eval({kWedgeChartLineX, {Rat(1)}});
    CHECK(at_x1 == RatMatrix::from_rows({{Rat(2)}}));

    // the identified origin carries the plane chart's scalar product
    CHECK(metric.eval({kWedgeChartLineX, {Rat(0)}}) == RatMatrix::identity(2));
    CHECK(metric.eval({kWedgeChartLineY, {Rat(0)}}) == RatMatrix::identity(2));
    CHECK(metric.eval({kWedgeChartPlane, {}}) == RatMatrix::identity(2));

    // (y^2 + 1) at y = 2
    CHECK(metric.eval({kWedgeChartLineY, {Rat(2)}}) == RatMatrix::from_rows({{Rat(5)}}));

    // away from the loci the evaluator equals the chart metric as a function
    std::mt19937_64 rng(79);
    for (int t = 0; t < 20; ++t) {
        Rat x = random_rat(rng, 30, 7);
        if (x == 0) continue;
        CHECK(metric.eval({kWedgeChartLineX, {x}}) ==
              b.chart(kWedgeChartLineX).metric->eval({x}));
        CHECK(metric.eval({kWedgeChartLineY, {x}}) ==
              b.chart(kWedgeChartLineY).metric->eval({x}));
    }

    // at identified points it equals the target chart's metric exactly
    for (const auto& g : b.gluings())
        for (std::size_t k = 0; k < g.locus.size(); ++k)
            CHECK(metric.eval({g.source, g.locus[k].first}) ==
                  b.chart(g.target).metric->eval(g.locus[k].second));
}

TEST_CASE("rank profile realizability") {
    DualProfile jump{0, {{{Rat(0)}, 1}}};
    CHECK_FALSE(rank_profile_realizable(jump, 1));

    DualProfile constant{1, {}};
    CHECK(rank_profile_realizable(constant, 1));

    // rank may drop at a closed subset: diag(1, x^2) drops from 2 to 1 at 0
    DualProfile drop{2, {{{Rat(0)}, 1}}};
    CHECK(rank_profile_realizable(drop, 1));

    // lowering an exceptional rank never flips realizable to unrealizable
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<int> rank(0, 4);
    for (int t = 0; t < 100; ++t) {
        unsigned def = static_cast<unsigned>(rank(rng));
        unsigned exc = static_cast<unsigned>(rank(rng));
        DualProfile p{def, {{{Rat(0)}, exc}}};
        if (rank_profile_realizable(p, 1)) {
            for (unsigned lower = 0; lower <= exc; ++lower) {
                DualProfile q{def, {{{Rat(0)}, lower}}};
                CHECK(rank_profile_realizable(q, 1));
            }
        }
    }
}

TEST_CASE("witness profile for the rank-drop case is exact") {
    // diag(1, x^2) has rank 1 at the origin and rank 2 elsewhere
    Chart c = trivial_chart("W", 1, 2);
    Polynomial x = Polynomial::variable(1, 0);
    c.metric = PseudoMetricChart::from_polynomials(
        2, {Polynomial::constant(1, 1), Polynomial(1), Polynomial(1), x * x});
    c.dual.default_rank = 2;
    c.dual.exceptions = {{{Rat(0)}, 1}};
    PseudoBundle b({c}, {});
    CHECK(verify_metric_profiles(b).ok);
}

TEST_CASE("gluing commutes with direct sum and tensor product") {
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<int> dim(1, 3);
    for (int t = 0; t < 50; ++t) {
        GluingPair p = random_pair(rng, dim(rng), dim(rng), "1");
        GluingPair q = random_pair(rng, dim(rng), dim(rng), "1");
        CHECK(verify_operation_gluing_commutes(OpKind::sum, p, q).ok);
        CHECK(verify_operation_gluing_commutes(OpKind::tensor, p, q).ok);
    }
}

TEST_CASE("a corrupted combined lift is detected") {
    std::mt19937_64 rng(73);
    std::uniform_int_distribution<int> dim(1, 3);
    for (int t = 0; t < 50; ++t) {
        GluingPair p = random_pair(rng, dim(rng), dim(rng), "1");
        GluingPair q = random_pair(rng, dim(rng), dim(rng), "1");
        OpKind kind = (t % 2) ? OpKind::sum : OpKind::tensor;

        PseudoBundle a = build_op_then_glue(kind, p, q);
        std::vector<Gluing> gluings = a.gluings();
        std::uniform_int_distribution<std::size_t> row(0, gluings.back().lifts[0].rows() - 1);
        std::uniform_int_distribution<std::size_t> col(0, gluings.back().lifts[0].cols() - 1);
        gluings.back().lifts[0](row(rng), col(rng)) += 1;
        PseudoBundle corrupted(a.charts(), gluings);

        CommutesResult r = compare_bundles(corrupted, build_glue_then_op(kind, p, q));
        CHECK_FALSE(r.ok);
        CHECK(r.witness.find("lift") != std::string::npos);
    }
}

TEST_CASE("metric profiles of the wedge bundle verify exactly") {
    PseudoBundle b = wedge_lines_bundle();
    CHECK(verify_metric_profiles(b).ok);

    // break the profile: claim full rank for a vanished metric
    std::vector<Chart> charts;
    for (Chart c : b.charts()) {
        if (c.id == kWedgeChartLineX)
            c.metric = PseudoMetricChart::constant(RatMatrix(1, 1), 1);  // zero form, rank 0
        charts.push_back(std::move(c));
    }
    PseudoBundle degenerate(charts, b.gluings());
    CHECK_FALSE(verify_metric_profiles(degenerate).ok);
}
