// Drives the command-line binary end to end: deterministic reports, exit
// codes, and the file formats. The binary path arrives as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

std::string g_binary;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = g_binary + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("cli_fixture_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

const char* kWedgeDescription = R"(# wedge of two lines with a plane fibre over the crossing
[chart]
id V0
base_dim 0
fibre_dim 2
dual_default 2
metric 1, 0; 0, 1

[chart]
id V1
base_dim 1
fibre_dim 1
dual_default 1
metric x0^2 + 1

[chart]
id V2
base_dim 1
fibre_dim 1
dual_default 1
metric x0^2 + 1

[gluing]
source V1
target V0
point (0) -> ()
lift 1; 0

[gluing]
source V2
target V0
point (0) -> ()
lift 0; 1
)";

}  // namespace

TEST_CASE("clifford-table lists the blade products") {
    RunResult r = run("clifford-table --dim 2 --form I --lambda 2");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["entries"] == 16);
    bool found = false;
    for (const auto& e : j["table"])
        if (e["left"] == "e1" && e["right"] == "e1") {
            found = true;
            CHECK(e["result"].size() == 1);
            CHECK(e["result"][0]["blade"] == "1");
            CHECK(e["result"][0]["coeff"] == "-2");
        }
    CHECK(found);
}

TEST_CASE("reports are byte-identical across runs") {
    for (const std::string& args :
         {std::string("clifford-table --dim 3 --form diag:1,0,-2 --lambda 1"),
          std::string("reproduce-sec7"), std::string("rank-profile --default 2 --exception 0:1")}) {
        RunResult a = run(args);
        RunResult b = run(args);
        CHECK(a.output == b.output);
        CHECK(a.exit_code == b.exit_code);
    }
}

TEST_CASE("glue-check accepts the wedge bundle") {
    std::string path = write_temp("wedge.bundle", kWedgeDescription);
    RunResult r = run("glue-check " + path + " --sample-points 'V1:(1)' --sample-points 'V2:(2)'");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    for (const auto& res : j["results"]) CHECK(res["status"] == "pass");
    CHECK(j["bundle"]["charts"].size() == 3);
    std::remove(path.c_str());
}

TEST_CASE("compat-check reports the induced metric and catches scaling faults") {
    std::string good = write_temp("good.bundle", kWedgeDescription);
    RunResult ok = run("compat-check " + good);
    CHECK(ok.exit_code == 0);
    auto j = nlohmann::json::parse(ok.output);
    CHECK(j["induced_metric_at_loci"].size() > 0);
    std::remove(good.c_str());

    std::string broken_text = kWedgeDescription;
    auto pos = broken_text.find("metric x0^2 + 1");
    broken_text.replace(pos, 15, "metric 2*x0^2 + 2");
    std::string broken = write_temp("broken.bundle", broken_text);
    RunResult bad = run("compat-check " + broken);
    CHECK(bad.exit_code == 1);
    auto jb = nlohmann::json::parse(bad.output);
    bool witnessed = false;
    for (const auto& res : jb["results"])
        if (res["status"] == "fail" && res.contains("witness")) witnessed = true;
    CHECK(witnessed);
    std::remove(broken.c_str());
}

TEST_CASE("parse failures exit with the input-error code and a location") {
    std::string path = write_temp("bad.bundle", "[chart]\nid X\nbase_dim oops\n");
    RunResult r = run("glue-check " + path);
    CHECK(r.exit_code == 2);
    CHECK(nlohmann::json::parse(r.output).contains("error"));
    std::remove(path.c_str());

    std::string bad_lift = write_temp("badlift.bundle",
                                      "[chart]\nid A\nbase_dim 1\nfibre_dim 1\n"
                                      "[chart]\nid B\nbase_dim 1\nfibre_dim 2\n"
                                      "[gluing]\nsource A\ntarget B\npoint (0) -> (0)\nlift 1\n");
    RunResult rl = run("glue-check " + bad_lift);
    CHECK(rl.exit_code == 2);
    auto j = nlohmann::json::parse(rl.output);
    std::string msg = j["error"];
    CHECK(msg.find("line") != std::string::npos);
    std::remove(bad_lift.c_str());
}

TEST_CASE("matdiff computes closures and action patterns") {
    std::string gen = write_temp("gen.pattern", "Z Z\nZ A\n");
    RunResult r = run("matdiff " + gen);
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["closure"] == "B B\nB B");
    std::remove(gen.c_str());

    std::string block = write_temp("block.pattern",
                                   "Z Z Z\nZ Z Z\nZ Z A\n\nconstraint\nB B Z\nB B Z\nZ Z B\n");
    RunResult rb = run("matdiff " + block + " --action P,P,A");
    CHECK(rb.exit_code == 0);
    auto jb = nlohmann::json::parse(rb.output);
    CHECK(jb["closure"] == "P P Z\nP P Z\nZ Z B");
    CHECK(jb["max_smooth_action"] == "P P Z\nP P Z\nZ Z B");
    std::remove(block.c_str());
}

TEST_CASE("rank-profile exit codes follow realizability") {
    RunResult no = run("rank-profile --default 0 --exception 0:1");
    CHECK(no.exit_code == 1);
    auto j = nlohmann::json::parse(no.output);
    CHECK(j["realizable"] == false);
    CHECK(j.contains("witness"));

    CHECK(run("rank-profile --default 1").exit_code == 0);
    CHECK(run("rank-profile --default 2 --exception 0:1").exit_code == 0);
    CHECK(run("rank-profile --default 2 --base-dim 2 --exception '(0,1):3'").exit_code == 1);
}

TEST_CASE("reproduce-sec7 flags the reference deviations") {
    RunResult r = run("reproduce-sec7");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["paper_deviations"].size() >= 1);
    bool scalar_term = false;
    for (const auto& d : j["paper_deviations"])
        if (d["computed"] == "-4" && d["printed"] == "-1") scalar_term = true;
    CHECK(scalar_term);
    for (const auto& c : j["checks"]) CHECK(c["status"] == "pass");
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <binary path>\n");
        return 1;
    }
    g_binary = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    return ctx.run();
}
