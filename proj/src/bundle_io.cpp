#include "cliffglue/bundle_io.hpp"

#include "cliffglue/absring.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace cliffglue {
namespace {

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what) {}
};

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(strip(cur));
    return out;
}

// "(a, b, ...)" -> rational tuple; "()" -> empty
std::vector<Rat> parse_tuple(const std::string& s, std::size_t line) {
    std::string t = strip(s);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw ParseError(line, "expected a parenthesized tuple, got '" + s + "'");
    std::string inner = strip(t.substr(1, t.size() - 2));
    std::vector<Rat> out;
    if (inner.empty()) return out;
    for (const auto& part : split(inner, ','))
        out.push_back(parse_rat(part));
    return out;
}

Polynomial parse_metric_entry(const std::string& text, unsigned base_dim, std::size_t line) {
    // polynomials only; parse in the abs ring and reject abs terms
    AbsRing ring{std::max(base_dim, 1u), 0};
    AbsElement e = [&] {
        try {
            return parse_abs_element(text, ring);
        } catch (const Error& err) {
            throw ParseError(line, std::string("bad metric entry: ") + err.what());
        }
    }();
    if (!e.is_smooth()) throw ParseError(line, "metric entries must be polynomials");
    if (base_dim > 0) return e.smooth_part();
    if (!e.smooth_part().is_constant())
        throw ParseError(line, "metric entry over a point base must be constant");
    return Polynomial::constant(0, e.smooth_part().constant_value());
}

struct ChartDraft {
    Chart chart;
    std::vector<std::string> metric_rows;
    std::size_t line = 0;
    bool has_base = false, has_fibre = false, has_dual = false;
};

struct GluingDraft {
    Gluing gluing;
    std::vector<std::pair<std::string, std::size_t>> pending_lifts;
    std::size_t line = 0;
};

}  // namespace

PseudoBundle parse_bundle_description(std::istream& in) {
    std::vector<ChartDraft> charts;
    std::vector<GluingDraft> gluings;
    enum class Section { none, chart, gluing } section = Section::none;

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = strip(raw);
        if (line.empty()) continue;

        if (line == "[chart]") {
            charts.emplace_back();
            charts.back().line = lineno;
            section = Section::chart;
            continue;
        }
        if (line == "[gluing]") {
            gluings.emplace_back();
            gluings.back().line = lineno;
            section = Section::gluing;
            continue;
        }

        auto space = line.find_first_of(" \t");
        std::string key = space == std::string::npos ? line : line.substr(0, space);
        std::string value = space == std::string::npos ? "" : strip(line.substr(space + 1));

        if (section == Section::chart) {
            ChartDraft& d = charts.back();
            if (key == "id") {
                d.chart.id = value;
            } else if (key == "base_dim") {
                d.chart.base_dim = static_cast<unsigned>(std::stoul(value));
                d.has_base = true;
            } else if (key == "fibre_dim") {
                d.chart.fibre_dim = static_cast<unsigned>(std::stoul(value));
                d.has_fibre = true;
            } else if (key == "dual_default") {
                d.chart.dual.default_rank = static_cast<unsigned>(std::stoul(value));
                d.has_dual = true;
            } else if (key == "dual_exception") {
                auto close = value.find(')');
                if (close == std::string::npos) throw ParseError(lineno, "expected '(point) rank'");
                std::vector<Rat> pt = parse_tuple(value.substr(0, close + 1), lineno);
                unsigned rank = static_cast<unsigned>(std::stoul(strip(value.substr(close + 1))));
                d.chart.dual.exceptions.emplace_back(std::move(pt), rank);
            } else if (key == "metric") {
                for (const auto& row : split(value, ';')) d.metric_rows.push_back(row);
            } else {
                throw ParseError(lineno, "unknown chart key '" + key + "'");
            }
        } else if (section == Section::gluing) {
            GluingDraft& d = gluings.back();
            if (key == "source") {
                d.gluing.source = value;
            } else if (key == "target") {
                d.gluing.target = value;
            } else if (key == "point") {
                auto arrow = value.find("->");
                if (arrow == std::string::npos)
                    throw ParseError(lineno, "expected '(src) -> (tgt)'");
                d.gluing.locus.emplace_back(parse_tuple(value.substr(0, arrow), lineno),
                                            parse_tuple(value.substr(arrow + 2), lineno));
            } else if (key == "lift") {
                d.pending_lifts.emplace_back(value, lineno);
            } else {
                throw ParseError(lineno, "unknown gluing key '" + key + "'");
            }
        } else {
            throw ParseError(lineno, "content outside of a [chart] or [gluing] section");
        }
    }

    std::vector<Chart> final_charts;
    for (auto& d : charts) {
        if (d.chart.id.empty()) throw ParseError(d.line, "chart without id");
        if (!d.has_base || !d.has_fibre)
            throw ParseError(d.line, "chart " + d.chart.id + " needs base_dim and fibre_dim");
        if (!d.has_dual) d.chart.dual.default_rank = d.chart.fibre_dim;
        if (!d.metric_rows.empty()) {
            unsigned k = d.chart.fibre_dim;
            if (d.metric_rows.size() != k)
                throw ParseError(d.line, "metric of " + d.chart.id + " needs " + std::to_string(k) +
                                             " rows");
            std::vector<Polynomial> entries;
            for (const auto& row : d.metric_rows) {
                auto cols = split(row, ',');
                if (cols.size() != k)
                    throw ParseError(d.line, "metric row of " + d.chart.id + " needs " +
                                                 std::to_string(k) + " entries");
                for (const auto& c : cols)
                    entries.push_back(parse_metric_entry(c, d.chart.base_dim, d.line));
            }
            d.chart.metric = PseudoMetricChart::from_polynomials(k, std::move(entries));
        }
        final_charts.push_back(std::move(d.chart));
    }

    auto fibre_dim_of = [&](const std::string& id, std::size_t line) -> unsigned {
        for (const auto& c : final_charts)
            if (c.id == id) return c.fibre_dim;
        throw ParseError(line, "gluing references unknown chart '" + id + "'");
    };

    std::vector<Gluing> final_gluings;
    for (auto& d : gluings) {
        if (d.gluing.source.empty() || d.gluing.target.empty())
            throw ParseError(d.line, "gluing needs source and target");
        if (d.pending_lifts.size() != d.gluing.locus.size())
            throw ParseError(d.line, "gluing needs exactly one lift per point");
        unsigned rows = fibre_dim_of(d.gluing.target, d.line);
        unsigned cols = fibre_dim_of(d.gluing.source, d.line);
        for (const auto& [text, line] : d.pending_lifts) {
            RatMatrix lift(rows, cols);
            auto row_texts = split(text, ';');
            if (row_texts.size() != rows) throw ParseError(line, "lift needs fibre(target) rows");
            for (unsigned i = 0; i < rows; ++i) {
                auto col_texts = split(row_texts[i], ',');
                if (col_texts.size() != cols)
                    throw ParseError(line, "lift needs fibre(source) columns");
                for (unsigned j = 0; j < cols; ++j) lift(i, j) = parse_rat(col_texts[j]);
            }
            d.gluing.lifts.push_back(std::move(lift));
        }
        final_gluings.push_back(std::move(d.gluing));
    }

    return PseudoBundle(std::move(final_charts), std::move(final_gluings));
}

PseudoBundle parse_bundle_description_string(const std::string& text) {
    std::istringstream in(text);
    return parse_bundle_description(in);
}

PseudoBundle load_bundle_description(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open bundle description: " + path);
    return parse_bundle_description(in);
}

nlohmann::json bundle_to_json(const PseudoBundle& b) {
    using nlohmann::json;
    json charts = json::array();
    for (const auto& c : b.charts()) {
        json jc{{"id", c.id},
                {"base_dim", c.base_dim},
                {"fibre_dim", c.fibre_dim},
                {"dual_default", c.dual.default_rank}};
        if (!c.dual.exceptions.empty()) {
            json ex = json::array();
            for (const auto& [p, r] : c.dual.exceptions) {
                json pt = json::array();
                for (const auto& x : p) pt.push_back(rat_to_string(x));
                ex.push_back(json{{"point", pt}, {"rank", r}});
            }
            jc["dual_exceptions"] = ex;
        }
        if (c.metric) {
            json rows = json::array();
            for (unsigned i = 0; i < c.fibre_dim; ++i) {
                json row = json::array();
                for (unsigned j = 0; j < c.fibre_dim; ++j)
                    row.push_back(c.metric->at(i, j).to_string());
                rows.push_back(row);
            }
            jc["metric"] = rows;
        }
        charts.push_back(std::move(jc));
    }
    json gluings = json::array();
    for (const auto& g : b.gluings()) {
        json points = json::array();
        for (std::size_t k = 0; k < g.locus.size(); ++k) {
            json sp = json::array(), tp = json::array();
            for (const auto& x : g.locus[k].first) sp.push_back(rat_to_string(x));
            for (const auto& x : g.locus[k].second) tp.push_back(rat_to_string(x));
            json lift = json::array();
            for (std::size_t i = 0; i < g.lifts[k].rows(); ++i) {
                json row = json::array();
                for (std::size_t j = 0; j < g.lifts[k].cols(); ++j)
                    row.push_back(rat_to_string(g.lifts[k](i, j)));
                lift.push_back(row);
            }
            points.push_back(json{{"source_point", sp}, {"target_point", tp}, {"lift", lift}});
        }
        gluings.push_back(json{{"source", g.source}, {"target", g.target}, {"points", points}});
    }
    return json{{"charts", charts}, {"gluings", gluings}};
}

}  // namespace cliffglue
