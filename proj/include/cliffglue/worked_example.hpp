#pragma once

#include "cliffglue/cliffbundle.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>

namespace cliffglue {

// The wedge-of-two-lines configuration: a point chart carrying a plane fibre
// with the standard scalar product, and two line charts with line fibres and
// the metrics x^2+1, y^2+1, glued into the origin by the coordinate
// embeddings.
PseudoBundle wedge_lines_bundle();

inline const char* kWedgeChartPlane = "V0";
inline const char* kWedgeChartLineX = "V1";
inline const char* kWedgeChartLineY = "V2";

// Reference presentation of the wedge-lines example that the reproduction
// report cross-checks, kept verbatim including its known defects. Structure
// constants are polynomials in the chart's base coordinates; keys are
// (left, right) blade pairs, values map result blades to coefficients.
struct ReferenceTable {
    unsigned fibre_dim = 0;
    unsigned base_dim = 0;
    std::map<std::pair<Blade, Blade>, std::map<Blade, Polynomial>> products;

    Multivector expected_product(const AlgebraHandle& alg, Blade left, Blade right,
                                 const std::vector<Rat>& base_point) const;
};

// Clifford tables of the reference presentation (lambda = 2 convention).
const ReferenceTable& reference_clifford_table_plane();
const ReferenceTable& reference_clifford_table_line_x();
const ReferenceTable& reference_clifford_table_line_y();
// Exterior product tables of the reference presentation.
const ReferenceTable& reference_exterior_table_plane();
const ReferenceTable& reference_exterior_table_line();

// Reference generator action tables (lambda = 1 convention): out/in blade
// matrices with polynomial entries in the base coordinate.
struct ReferenceAction {
    unsigned fibre_dim = 0;
    unsigned base_dim = 0;
    std::vector<std::vector<std::vector<Polynomial>>> generators;  // [gen][out][in]

    RatMatrix expected_matrix(unsigned gen, const std::vector<Rat>& base_point) const;
};
const ReferenceAction& reference_action_plane();
const ReferenceAction& reference_action_line_x();
const ReferenceAction& reference_action_line_y();

struct TableDeviation {
    Blade left = 0, right = 0;
    std::string computed;
    std::string reference;
    std::vector<Rat> base_point;
};

// Blade-pair comparison of the computed Clifford (resp. exterior) product
// against the reference table, evaluated at one base point.
std::vector<TableDeviation> clifford_table_deviations(const ReferenceTable& ref,
                                                      const AlgebraHandle& alg,
                                                      const std::vector<Rat>& base_point);
std::vector<TableDeviation> exterior_table_deviations(const ReferenceTable& ref,
                                                      const std::vector<Rat>& base_point);
std::vector<std::string> action_deviations(const ReferenceAction& ref, const BilinearForm& q,
                                           const std::vector<Rat>& base_point);

// Full reproduction report: chart Clifford tables, glued tables at sample
// points, exterior tables, action tables, and the deviations of the computed
// algebra from the reference presentation.
nlohmann::json worked_example_report();

// Deterministic sample coordinates used by the report and the tests.
const std::vector<Rat>& worked_example_sample_values();

}  // namespace cliffglue
