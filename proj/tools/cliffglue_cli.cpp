#include "cliffglue/bundle_io.hpp"
#include "cliffglue/cliffbundle.hpp"
#include "cliffglue/pattern.hpp"
#include "cliffglue/worked_example.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using cliffglue::Rat;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

struct Results {
    json list = json::array();
    bool all_ok = true;

    void add(const std::string& name, bool ok, const std::string& witness = "") {
        json r{{"name", name}, {"status", ok ? "pass" : "fail"}};
        if (!ok && !witness.empty()) r["witness"] = witness;
        list.push_back(std::move(r));
        all_ok = all_ok && ok;
    }
};

cliffglue::BilinearForm parse_form(const std::string& spec, unsigned dim) {
    using cliffglue::BilinearForm;
    using cliffglue::RatMatrix;
    if (spec == "I") return BilinearForm::identity(dim);
    if (spec == "0") return BilinearForm::zero(dim);
    if (spec.rfind("diag:", 0) == 0) {
        std::vector<Rat> d;
        std::stringstream ss(spec.substr(5));
        std::string tok;
        while (std::getline(ss, tok, ',')) d.push_back(cliffglue::parse_rat(tok));
        if (d.size() != dim) throw cliffglue::Error("diagonal form needs --dim entries");
        return BilinearForm::diagonal(std::move(d));
    }
    // full matrix "a,b;c,d"
    RatMatrix q(dim, dim);
    std::stringstream rows(spec);
    std::string row;
    unsigned i = 0;
    while (std::getline(rows, row, ';')) {
        std::stringstream cols(row);
        std::string tok;
        unsigned j = 0;
        while (std::getline(cols, tok, ',')) {
            if (i >= dim || j >= dim) throw cliffglue::Error("form matrix larger than --dim");
            q(i, j) = cliffglue::parse_rat(tok);
            ++j;
        }
        if (j != dim) throw cliffglue::Error("form matrix row has wrong length");
        ++i;
    }
    if (i != dim) throw cliffglue::Error("form matrix has wrong number of rows");
    return {dim, std::move(q)};
}

int run_clifford_table(unsigned dim, const std::string& form_spec, const std::string& lambda_s) {
    auto alg = cliffglue::make_algebra(parse_form(form_spec, dim), cliffglue::parse_rat(lambda_s));
    json table = json::array();
    std::size_t blades = std::size_t(1) << dim;
    for (cliffglue::Blade l = 0; l < blades; ++l)
        for (cliffglue::Blade r = 0; r < blades; ++r) {
            cliffglue::Multivector prod = cliffglue::Multivector::basis_blade(alg, l) *
                                          cliffglue::Multivector::basis_blade(alg, r);
            json result = json::array();
            for (const auto& [b, c] : prod.comps())
                result.push_back(json{{"blade", cliffglue::blade_to_string(b)},
                                      {"coeff", cliffglue::rat_to_string(c)}});
            table.push_back(json{{"left", cliffglue::blade_to_string(l)},
                                 {"right", cliffglue::blade_to_string(r)},
                                 {"result", result}});
        }
    emit(json{{"command", "clifford-table"},
              {"dim", dim},
              {"form", form_spec},
              {"lambda", lambda_s},
              {"entries", table.size()},
              {"table", table}});
    return kExitPass;
}

std::vector<cliffglue::BasePoint> parse_samples(const std::vector<std::string>& specs) {
    std::vector<cliffglue::BasePoint> pts;
    for (const auto& s : specs) {
        auto colon = s.find(':');
        if (colon == std::string::npos)
            throw cliffglue::Error("sample point must look like chart:(coords)");
        cliffglue::BasePoint p;
        p.chart = s.substr(0, colon);
        std::string tuple = s.substr(colon + 1);
        if (tuple.size() < 2 || tuple.front() != '(' || tuple.back() != ')')
            throw cliffglue::Error("sample point must look like chart:(coords)");
        std::stringstream ss(tuple.substr(1, tuple.size() - 2));
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) p.coords.push_back(cliffglue::parse_rat(tok));
        pts.push_back(std::move(p));
    }
    return pts;
}

// Single-chart sub-bundle, used to replay each gluing as a two-factor pair.
cliffglue::PseudoBundle chart_only(const cliffglue::PseudoBundle& b, const std::string& id) {
    return cliffglue::PseudoBundle({b.chart(id)}, {});
}

int run_glue_check(const std::string& path, const std::string& lambda_s,
                   const std::vector<std::string>& sample_specs) {
    cliffglue::PseudoBundle b = cliffglue::load_bundle_description(path);
    Rat lambda = cliffglue::parse_rat(lambda_s);
    std::vector<cliffglue::BasePoint> samples = parse_samples(sample_specs);

    Results results;
    for (const auto& c : b.charts())
        results.add("rank_profile_realizable:" + c.id,
                    cliffglue::rank_profile_realizable(c.dual, c.base_dim));

    bool metrics_everywhere = true;
    for (const auto& c : b.charts()) metrics_everywhere = metrics_everywhere && c.metric.has_value();

    if (metrics_everywhere) {
        auto profile = cliffglue::verify_metric_profiles(b);
        results.add("metric_profiles", profile.ok, profile.witness);
        for (const auto& g : b.gluings()) {
            auto compat = cliffglue::check_compatible(b, g);
            results.add("metric_compatibility:" + g.source + "->" + g.target, compat.ok,
                        compat.ok ? "" : compat.witness->to_string());
        }
    }

    for (const auto& g : b.gluings()) {
        cliffglue::GluingPair pair{chart_only(b, g.source), chart_only(b, g.target), g};
        for (auto kind : {cliffglue::OpKind::sum, cliffglue::OpKind::tensor}) {
            auto r = cliffglue::verify_operation_gluing_commutes(kind, pair, pair);
            std::string name = kind == cliffglue::OpKind::sum ? "gluing_commutes_sum"
                                                              : "gluing_commutes_tensor";
            results.add(name + ":" + g.source + "->" + g.target, r.ok, r.witness);
        }
    }

    if (metrics_everywhere) {
        bool compat_all = true;
        for (const auto& g : b.gluings()) compat_all = compat_all && cliffglue::check_compatible(b, g).ok;
        if (compat_all) {
            auto phi = cliffglue::verify_phi_iso(b, lambda, samples);
            results.add("phi_iso", phi.ok, phi.witness);
            if (lambda == 1) {
                for (const auto& g : b.gluings()) {
                    auto act = cliffglue::check_action_compat(b, g, lambda);
                    results.add("action_compat:" + g.source + "->" + g.target, act.ok, act.witness);
                }
            }
        }
    }

    emit(json{{"command", "glue-check"},
              {"input", path},
              {"bundle", cliffglue::bundle_to_json(b)},
              {"results", results.list}});
    return results.all_ok ? kExitPass : kExitCheckFailed;
}

int run_compat_check(const std::string& path) {
    cliffglue::PseudoBundle b = cliffglue::load_bundle_description(path);
    Results results;
    json induced = json::array();
    for (const auto& g : b.gluings()) {
        auto compat = cliffglue::check_compatible(b, g);
        results.add("metric_compatibility:" + g.source + "->" + g.target, compat.ok,
                    compat.ok ? "" : compat.witness->to_string());
    }
    if (results.all_ok) {
        cliffglue::InducedMetric metric(b);
        for (const auto& p : b.locus_points()) {
            cliffglue::RatMatrix m = metric.eval(p);
            json rows = json::array();
            for (std::size_t i = 0; i < m.rows(); ++i) {
                json row = json::array();
                for (std::size_t j = 0; j < m.cols(); ++j)
                    row.push_back(cliffglue::rat_to_string(m(i, j)));
                rows.push_back(row);
            }
            induced.push_back(json{{"point", p.to_string()}, {"metric", rows}});
        }
        auto profile = cliffglue::verify_metric_profiles(b);
        results.add("metric_profiles", profile.ok, profile.witness);
    }
    emit(json{{"command", "compat-check"},
              {"input", path},
              {"induced_metric_at_loci", induced},
              {"results", results.list}});
    return results.all_ok ? kExitPass : kExitCheckFailed;
}

int run_matdiff(const std::string& path, const std::string& action_spec) {
    std::ifstream in(path);
    if (!in) throw cliffglue::Error("cannot open generator description: " + path);
    std::vector<std::string> blocks;
    std::string block, line;
    bool in_constraint = false;
    std::string constraint_text;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) {
            if (!block.empty()) {
                (in_constraint ? constraint_text : blocks.emplace_back()) = block;
                block.clear();
                in_constraint = false;
            }
            continue;
        }
        if (line.find("constraint") != std::string::npos &&
            line.find_first_not_of("constraint \t\r") == std::string::npos) {
            if (!block.empty()) {
                blocks.push_back(block);
                block.clear();
            }
            in_constraint = true;
            continue;
        }
        block += line + "\n";
    }
    if (!block.empty()) (in_constraint ? constraint_text : blocks.emplace_back()) = block;
    if (blocks.empty()) throw cliffglue::Error("no generator grids in " + path);

    std::vector<cliffglue::MatrixPattern> generators;
    for (const auto& b : blocks) generators.push_back(cliffglue::MatrixPattern::parse(b));
    unsigned n = generators[0].n;
    std::optional<cliffglue::MatrixPattern> constraint;
    if (!constraint_text.empty()) constraint = cliffglue::MatrixPattern::parse(constraint_text);

    cliffglue::MatrixPattern closure = cliffglue::algebra_closure(generators, n, constraint);
    json report{{"command", "matdiff"},
                {"input", path},
                {"size", n},
                {"closure", closure.to_string()}};

    if (!action_spec.empty()) {
        std::vector<cliffglue::EntryPattern> coords;
        std::stringstream ss(action_spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            std::string t = tok;
            t.erase(0, t.find_first_not_of(" \t"));
            if (t.empty()) throw cliffglue::Error("empty action pattern token");
            coords.push_back(cliffglue::EntryPattern::from_token(t[0]));
        }
        cliffglue::VectorPattern v(std::move(coords));
        cliffglue::MatrixPattern c = constraint.value_or(cliffglue::MatrixPattern::all_allowed(n));
        report["max_smooth_action"] = cliffglue::max_smooth_action_pattern(v, c).to_string();
    }
    emit(report);
    return kExitPass;
}

int run_rank_profile(unsigned default_rank, unsigned base_dim,
                     const std::vector<std::string>& exception_specs) {
    cliffglue::DualProfile profile;
    profile.default_rank = default_rank;
    json exceptions = json::array();
    for (const auto& spec : exception_specs) {
        auto colon = spec.rfind(':');
        if (colon == std::string::npos)
            throw cliffglue::Error("exception must look like point:rank, e.g. 0:1 or (0,1):2");
        std::string pt_text = spec.substr(0, colon);
        unsigned rank = static_cast<unsigned>(std::stoul(spec.substr(colon + 1)));
        std::vector<Rat> pt;
        if (!pt_text.empty() && pt_text.front() == '(') {
            std::stringstream ss(pt_text.substr(1, pt_text.size() - 2));
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) pt.push_back(cliffglue::parse_rat(tok));
        } else {
            pt.push_back(cliffglue::parse_rat(pt_text));
        }
        if (pt.size() != base_dim)
            throw cliffglue::Error("exception point dimension differs from --base-dim");
        exceptions.push_back(json{{"point", pt_text}, {"rank", rank}});
        profile.exceptions.emplace_back(std::move(pt), rank);
    }
    bool realizable = cliffglue::rank_profile_realizable(profile, base_dim);
    json report{{"command", "rank-profile"},
                {"default", default_rank},
                {"exceptions", exceptions},
                {"realizable", realizable}};
    if (!realizable) {
        for (const auto& [p, r] : profile.exceptions)
            if (r > profile.default_rank) {
                report["witness"] = "rank " + std::to_string(r) +
                                    " at an isolated point exceeds the surrounding rank " +
                                    std::to_string(profile.default_rank);
                break;
            }
    }
    emit(report);
    return realizable ? kExitPass : kExitCheckFailed;
}

int run_reproduce() {
    json report = cliffglue::worked_example_report();
    emit(report);
    for (const auto& c : report["checks"])
        if (c["status"] != "pass") return kExitCheckFailed;
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Clifford algebra and glued pseudo-bundle toolkit"};
    app.require_subcommand(1);

    unsigned dim = 2;
    std::string form = "I";
    std::string lambda = "1";
    auto* table = app.add_subcommand("clifford-table", "emit a blade multiplication table");
    table->add_option("--dim", dim, "vector space dimension")->required();
    table->add_option("--form", form, "I, 0, diag:a,b,... or a,b;c,d");
    table->add_option("--lambda", lambda, "relation scale");

    std::string glue_file;
    std::string glue_lambda = "1";
    std::vector<std::string> glue_samples;
    auto* glue = app.add_subcommand("glue-check", "validate a bundle description and run the gluing checks");
    glue->add_option("file", glue_file, "bundle description")->required();
    glue->add_option("--lambda", glue_lambda, "relation scale for the fibre algebras");
    glue->add_option("--sample-points", glue_samples, "extra sample points, chart:(coords)");

    std::string compat_file;
    auto* compat = app.add_subcommand("compat-check", "check metric compatibility across the gluings");
    compat->add_option("file", compat_file, "bundle description")->required();

    auto* reproduce = app.add_subcommand("reproduce-sec7", "rebuild the wedge-of-lines example and report deviations");
    (void)reproduce;

    std::string matdiff_file;
    std::string action_spec;
    auto* matdiff = app.add_subcommand("matdiff", "closure of generated matrix-algebra patterns");
    matdiff->add_option("file", matdiff_file, "generator grids (tokens P/A/B/Z)")->required();
    matdiff->add_option("--action", action_spec, "vector pattern, e.g. P,A: also compute the maximal smoothly-acting pattern");

    unsigned default_rank = 0;
    unsigned base_dim = 1;
    std::vector<std::string> exceptions;
    auto* rank = app.add_subcommand("rank-profile", "decide whether a dual rank profile admits a pseudo-metric");
    rank->add_option("--default", default_rank, "rank away from the exceptions")->required();
    rank->add_option("--base-dim", base_dim, "base dimension");
    rank->add_option("--exception", exceptions, "point:rank, repeatable");

    CLI11_PARSE(app, argc, argv);

    try {
        if (table->parsed()) return run_clifford_table(dim, form, lambda);
        if (glue->parsed()) return run_glue_check(glue_file, glue_lambda, glue_samples);
        if (compat->parsed()) return run_compat_check(compat_file);
        if (reproduce->parsed()) return run_reproduce();
        if (matdiff->parsed()) return run_matdiff(matdiff_file, action_spec);
        if (rank->parsed()) return run_rank_profile(default_rank, base_dim, exceptions);
    } catch (const std::exception& e) {
        emit(json{{"error", e.what()}});
        return kExitInputError;
    }
    return kExitInputError;
}
