#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "meritfair/cli.hpp"

namespace fs = std::filesystem;
using meritfair::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("meritfair_cli_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

std::string example_population_csv() {
    std::string csv = "id,J,X,attrs\n";
    auto add = [&](const char* sex, int j, int n) {
        for (int i = 0; i < n; ++i) csv += std::string(sex) + std::to_string(j) + "_" + std::to_string(i) + "," +
                                           std::to_string(j) + ",,sex=" + sex + "\n";
    };
    add("M", 0, 2000);
    add("M", 1, 4000);
    add("F", 0, 500);
    add("F", 1, 3500);
    return csv;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("audit reproduces the example from files") {
        TempDir dir;
        const auto pop = dir.write("pop.csv", example_population_csv());
        const auto proc = dir.write("proc.json", R"({"type":"randomized","attribute":"sex","rates":{"M":["3/4","1/10"],"F":["3/4","1/10"]}})");
        const auto r = invoke({"audit", "--population", pop, "--procedure", proc, "--attribute", "sex"});
        REQUIRE(r.code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        CHECK(doc["contingency"]["totals"]["guilty_convicted"]["exact"] == "1875");
        CHECK(doc["contingency"]["totals"]["innocent_convicted"]["exact"] == "750");
        CHECK(doc["fair"] == true);
        CHECK(doc["verdicts"].size() == 1);
        CHECK(doc["verdicts"][0]["fair"] == true);
        CHECK(doc["justice"]["groups"][1]["guilty_share"]["exact"] == "15/29");
        CHECK(doc["absolute_singletons"]["fair"] == true);

        const auto csv = invoke({"audit", "--population", pop, "--procedure", proc, "--attribute", "sex", "--format", "csv"});
        CHECK(csv.code == 0);
        CHECK(csv.out.find("sex=M,0,2000,3/4,0.75000000,1500,500") != std::string::npos);
    }

    TEST_CASE("audit errors and warnings") {
        TempDir dir;
        const auto pop = dir.write("pop.csv", "id,J,X,attrs\na,1,,sex=M\nb,0,,sex=F\n");
        const auto missing = invoke({"audit", "--population", pop, "--procedure", (dir.path / "nope.json").string(),
                                     "--attribute", "sex"});
        CHECK(missing.code == 1);
        CHECK(missing.err.find("nope.json") != std::string::npos);
        CHECK(missing.out.empty());

        const auto proc = dir.write("g.json", R"({"type":"randomized","rates":{"global":[0.5,0.5]}})");
        const auto warn = invoke({"audit", "--population", pop, "--procedure", proc, "--attribute", "sex", "--trials",
                                  "10", "--tolerance", "0"});
        CHECK(warn.code == 0);
        CHECK(warn.err.find("warning") != std::string::npos);

        const auto no_warn = invoke({"audit", "--population", pop, "--procedure", proc, "--attribute", "sex",
                                     "--trials", "10"});
        CHECK(no_warn.err.empty());
        CHECK(nlohmann::json::parse(no_warn.out)["tolerance"] == 1e-9);

        CHECK(invoke({"audit"}).code == 1);
        CHECK(invoke({}).code == 1);
        CHECK(invoke({"frobnicate"}).code == 1);
    }

    TEST_CASE("classify") {
        const auto r = invoke({"classify", "--h", "0.75", "--k", "0.1"});
        CHECK(r.code == 0);
        CHECK(r.out == "ImperfectlyJust\n");
        const auto j = invoke({"classify", "--h", "1", "--k", "1", "--format", "json"});
        const auto doc = nlohmann::json::parse(j.out);
        CHECK(doc["class"] == "EveryoneConvicted");
        CHECK(doc["merit_agnostic"] == true);
        CHECK(invoke({"classify", "--h", "2", "--k", "0"}).code == 1);
    }

    TEST_CASE("witness exit codes") {
        TempDir dir;
        const auto perfect = dir.write("perfect.csv", "id,J,X,attrs\na,1,1,\nb,0,0,\n");
        const auto ok = invoke({"witness", "--population", perfect});
        CHECK(ok.code == 0);
        CHECK(ok.out.find("no violation") != std::string::npos);

        const auto imperfect = dir.write("imperfect.csv", "id,J,X,attrs\na,1,1,\nb,1,0,\nc,0,0,\n");
        const auto bad = invoke({"witness", "--population", imperfect, "--format", "json"});
        CHECK(bad.code == 2);
        const auto doc = nlohmann::json::parse(bad.out);
        CHECK(doc["violation_found"] == true);
        CHECK(doc["exhaustive_search"]["contains_witness"] == true);
        CHECK(doc["witness"]["violated_merit_classes"] == nlohmann::json::array({1}));

        const auto unlabelled = dir.write("u.csv", "id,J,X,attrs\na,1,,\n");
        CHECK(invoke({"witness", "--population", unlabelled}).code == 1);
    }

    TEST_CASE("simulate") {
        TempDir dir;
        const auto pop = dir.write("pop.csv", example_population_csv());
        const auto proc = dir.write("g.json", R"({"type":"randomized","rates":{"global":["3/4","1/10"]}})");
        const auto a = invoke({"simulate", "--population", pop, "--procedure", proc, "--seed", "9", "--trials", "3",
                               "--attribute", "sex"});
        const auto b = invoke({"simulate", "--population", pop, "--procedure", proc, "--seed", "9", "--trials", "3",
                               "--attribute", "sex"});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        const auto doc = nlohmann::json::parse(a.out);
        CHECK(doc["groups"].size() == 3);
        CHECK(doc["groups"][0]["expected"]["h"]["exact"] == "3/4");

        const auto det = dir.write("d.json", R"({"type":"deterministic"})");
        CHECK(invoke({"simulate", "--population", pop, "--procedure", det}).code == 1);
    }

    TEST_CASE("example1 is deterministic in every format") {
        const auto a = invoke({"example1"});
        const auto b = invoke({"example1"});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out.find("GUILTY CONVICTED 1875") != std::string::npos);
        CHECK(a.out.find("NOT GUILTY CONVICTED 750") != std::string::npos);
        CHECK(a.out.find("12000") != std::string::npos);
        CHECK(a.out.find("375/725") == std::string::npos);  // printed in lowest terms
        CHECK(a.out.find("15/29") != std::string::npos);

        const auto csv = invoke({"example1", "--format", "csv"});
        CHECK(csv.out.find("group-fair,M,0,2000,1500,500") != std::string::npos);
        CHECK(csv.out.find("group-fair,F,1,3500,350,3150") != std::string::npos);
        CHECK(csv.out.find("global,all,0,2500,1875,625") != std::string::npos);

        const auto doc = nlohmann::json::parse(invoke({"example1", "--format", "json"}).out);
        CHECK(doc["stages"][1]["verdict"]["fair"] == true);
        CHECK(doc["stages"][1]["procedure_class"] == "ImperfectlyJust");
    }

    TEST_CASE("roc-export") {
        TempDir dir;
        const auto pts = dir.write("pts.csv", "label,h,k\nA,1,0\nex1,3/4,1/10\n");
        const auto svg = invoke({"roc-export", "--points", pts});
        CHECK(svg.code == 0);
        CHECK(svg.out.rfind("<?xml", 0) == 0);
        CHECK(svg.out.find(">ex1</text>") != std::string::npos);
        const auto csv = invoke({"roc-export", "--points", pts, "--format", "csv"});
        CHECK(csv.out.find("ex1,0.75000000,0.10000000") != std::string::npos);

        const auto out_file = (dir.path / "fig.svg").string();
        CHECK(invoke({"roc-export", "--out", out_file}).code == 0);
        CHECK(fs::file_size(out_file) > 0);

        const auto dup = dir.write("dup.csv", "label,h,k\nA,1,0\nA,0,0\n");
        CHECK(invoke({"roc-export", "--points", dup}).code == 1);
    }

    TEST_CASE("verify") {
        const auto r = invoke({"verify", "--n", "6", "--trials", "50", "--seed", "1"});
        CHECK(r.code == 0);
        CHECK(r.out.rfind("PASS", 0) == 0);
    }
}
