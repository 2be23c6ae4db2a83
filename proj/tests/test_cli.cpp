#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

// CLI_BIN and DATA_DIR are injected by the build
#ifndef CLI_BIN
#error "CLI_BIN must be defined"
#endif
#ifndef DATA_DIR
#error "DATA_DIR must be defined"
#endif

namespace {

using nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string tmp = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                      "/metricgeo_cli_test_out.txt";
    std::string cmd = std::string(CLI_BIN) + " " + args + " > " + tmp + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream f(tmp);
    std::stringstream ss;
    ss << f.rdbuf();
    r.out = ss.str();
    return r;
}

std::string data(const std::string& name) { return std::string(DATA_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

} // namespace

TEST_CASE("validate: exit codes 0 / 1 / 2") {
    auto good = run("validate " + data("square.json"));
    CHECK(good.exit_code == 0);
    auto doc = json::parse(good.out);
    CHECK(doc.at("status") == "ok");
    CHECK(doc.at("payload").at("report").at("ok") == true);

    auto bad_file = write_temp("bad_metric.json",
                               R"({"n":3,"kind":"metric","d":[[0,1,3],[1,0,1],[3,1,0]]})");
    auto bad = run("validate " + bad_file);
    CHECK(bad.exit_code == 1);
    CHECK(json::parse(bad.out).at("status") == "property-false");

    CHECK(run("validate /does/not/exist.json").exit_code == 2);
    auto junk = write_temp("junk.json", "not json at all {");
    CHECK(run("validate " + junk).exit_code == 2);
}

TEST_CASE("validate accepts lower-triangular CSV input") {
    auto csv = write_temp("tri.csv", "\n1\n1,1\n");
    auto r = run("validate " + csv);
    CHECK(r.exit_code == 0);
}

TEST_CASE("embed: tree valence certificate and exit 1") {
    auto r = run("embed --space tree --valence 3 " + data("equilateral4.json"));
    CHECK(r.exit_code == 1);
    auto doc = json::parse(r.out);
    CHECK(doc.at("status") == "property-false");
    CHECK(doc.at("payload").at("result").at("certificate") == "degree 4 branch point required");

    CHECK(run("embed --space tree --valence 4 " + data("equilateral4.json")).exit_code == 0);
    CHECK(run("embed --space euclidean --dim 3 " + data("equilateral4.json")).exit_code == 0);
    CHECK(run("embed --space euclidean --dim 2 " + data("equilateral4.json")).exit_code == 1);
    CHECK(run("embed --space banana --dim 2 " + data("equilateral4.json")).exit_code == 2);
}

TEST_CASE("tree build: realization and four-point rejection") {
    auto good = run("tree build --valence 3 " + data("path3.json"));
    CHECK(good.exit_code == 0);
    auto doc = json::parse(good.out);
    CHECK(doc.at("payload").at("four_point") == true);

    auto bad = run("tree build " + data("square.json"));
    CHECK(bad.exit_code == 1);
    CHECK(json::parse(bad.out).at("payload").at("four_point") == false);
}

TEST_CASE("homog: exit reflects the verdict") {
    CHECK(run("homog " + data("equilateral4.json")).exit_code == 0);
    CHECK(run("homog " + data("path3.json")).exit_code == 1);
    CHECK(run("homog --k 1 " + data("path3.json")).exit_code == 1);
    CHECK(run("homog --k 4 " + data("equilateral4.json")).exit_code == 0);
}

TEST_CASE("fingerprint and member") {
    auto r = run("fingerprint --n 2 --mode injective " + data("path3.json"));
    CHECK(r.exit_code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc.at("payload").at("vectors").size() == 2);

    CHECK(run("member --space euclidean --dim 2 --vector 1,1,1").exit_code == 0);
    CHECK(run("member --space tree --valence 3 --vector 1,1,1,1,1,1").exit_code == 1);
    CHECK(run("member --space euclidean --dim 2 --vector 1,1").exit_code == 2);  // bad length
}

TEST_CASE("extend: end-to-end over a tripod") {
    // tripod with center 3, legs 1
    std::string tree = R"({"vertices":[{"id":0,"label":"0"},{"id":1,"label":"1"},
        {"id":2,"label":"2"},{"id":3,"label":null}],
        "edges":[{"u":0,"v":3,"len":1},{"u":1,"v":3,"len":1},{"u":2,"v":3,"len":1}],
        "valence_budget":3})";
    auto tree_file = write_temp("tripod.json", tree);
    auto map_file = write_temp("tripod_map.json", R"({"domain":[0,1],"image":[1,0]})");
    auto r = run("extend --source " + tree_file + " --map " + map_file + " --points 2,3");
    CHECK(r.exit_code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc.at("payload").at("extended") == true);
    CHECK(doc.at("payload").at("verified") == true);

    auto bad_map = write_temp("bad_map.json", R"({"domain":[0,1],"image":[0,3]})");
    CHECK(run("extend --source " + tree_file + " --map " + bad_map + " --points 2").exit_code == 2);
}

TEST_CASE("ramsey subcommands") {
    CHECK(run("ramsey near --delta 0.5 " + data("square.json")).exit_code == 0);
    auto r = run("ramsey equi --r 1 " + data("equilateral4.json"));
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out).at("payload").at("size") == 4);
    CHECK(run("ramsey near --delta -1 " + data("square.json")).exit_code == 2);
}

TEST_CASE("demo nonclosed: payload and CSV side output") {
    std::string csv = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                      "/nonclosed_out.csv";
    auto r = run("demo nonclosed --valence 3 --k 4 --eps 0.1,0.01,0.001 --csv " + csv);
    CHECK(r.exit_code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc.at("payload").at("limit_member") == false);
    CHECK(doc.at("payload").at("gap_exhibited") == true);
    std::ifstream f(csv);
    REQUIRE(f.good());
    int lines = 0;
    std::string line;
    while (std::getline(f, line)) ++lines;
    CHECK(lines == 4);  // three comb vectors plus the all-ones limit
}

TEST_CASE("demo rpn-triples emits the dataset and its report") {
    auto r = run("demo rpn-triples");
    CHECK(r.exit_code == 0);
    auto doc = json::parse(r.out);
    const auto& p = doc.at("payload");
    CHECK(p.at("matrix").at("n") == 6);
    CHECK_FALSE(p.at("triples_isometric").is_null());
    CHECK(p.at("triple_map_extends") == false);
    CHECK(p.at("homog").at("verdict") == false);
}

TEST_CASE("output is byte-identical across runs") {
    auto a = run("demo rpn-triples");
    auto b = run("demo rpn-triples");
    CHECK(a.out == b.out);
    auto c = run("embed --space euclidean --dim 2 " + data("square.json"));
    auto d = run("embed --space euclidean --dim 2 " + data("square.json"));
    CHECK(c.out == d.out);
}

TEST_CASE("unknown subcommand exits 2") {
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("embed --space euclidean").exit_code == 2);  // missing file
}
