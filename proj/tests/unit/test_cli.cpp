#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "helpers.hpp"
#include "satr/cli.hpp"
#include "satr/io.hpp"

using namespace satr;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "satr");
    std::vector<const char*> argv;
    for (auto& s : args) argv.push_back(s.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() / ("satr_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    }
};

}  // namespace

TEST_CASE("cli: planted instance solves and its certificate checks") {
    TempDir t;
    Run g = run({"gen-random", "--n", "40", "--seed", "5", "--mutate-rate", "0"});
    REQUIRE(g.code == kExitYes);
    json gj = json::parse(g.out);
    CHECK(gj["label"] == "YES");
    const std::string inst = t.write("inst.json", g.out);

    Run s = run({"solve", inst, "--trace"});
    CHECK(s.code == kExitYes);
    json sj = json::parse(s.out);
    CHECK(sj["answer"] == "YES");
    CHECK(sj["trace"].is_array());
    const std::string verdict = t.write("verdict.json", s.out);
    CHECK(run({"check", inst, verdict}).code == kExitYes);
    // the planted witness too
    CHECK(run({"check", inst, inst}).code == kExitYes);

    SUBCASE("a dart moved to another vertex is rejected") {
        json cert = sj["certificate"];
        auto& rot = cert["rotations"];
        auto it = rot.begin();
        auto jt = std::next(it);
        std::swap((*it)[0], (*jt)[0]);
        CHECK(run({"check", inst, t.write("bad.json", cert.dump())}).code == kExitRejected);
    }
    SUBCASE("a missing dummy is rejected") {
        json cert = sj["certificate"];
        if (!cert["dummies"].empty()) {
            cert["dummies"].erase(0);
            CHECK(run({"check", inst, t.write("bad.json", cert.dump())}).code == kExitRejected);
        }
    }
}

TEST_CASE("cli: solve and oracle agree on generated instances") {
    TempDir t;
    int no = 0, yes = 0, skipped = 0;
    for (int seed = 1; seed <= 500; ++seed) {
        INFO("seed " << seed);
        Run g = run({"gen-random", "--n", "8", "--seed", std::to_string(seed), "--mutate-rate", "0.7"});
        REQUIRE(g.code == kExitYes);
        json gj = json::parse(g.out);
        const std::string inst = t.write("g.json", g.out);
        Run s = run({"solve", inst});
        Run o = run({"oracle", inst});
        if (o.code == kExitLimit) {
            // unmutated instances keep their planted label
            CHECK(gj["label"] == (gj["mutated"] == true ? "unknown" : "YES"));
            if (gj["label"] == "YES") CHECK(s.code == kExitYes);
            ++skipped;
            continue;
        }
        CHECK(s.code == o.code);
        CHECK((gj["label"] == "YES") == (o.code == kExitYes));
        (s.code == kExitYes ? yes : no)++;
        if (s.code == kExitYes) CHECK(run({"check", inst, t.write("v.json", s.out)}).code == kExitYes);
    }
    MESSAGE("yes " << yes << " no " << no << " over the oracle limits " << skipped);
    CHECK(no > 0);
    CHECK(skipped < 25);
}

TEST_CASE("cli: output is deterministic") {
    TempDir t;
    Run a = run({"gen-random", "--n", "200", "--seed", "9"});
    Run b = run({"gen-random", "--n", "200", "--seed", "9"});
    CHECK(a.out == b.out);
    const std::string inst = t.write("i.json", a.out);
    CHECK(run({"solve", inst, "--trace"}).out == run({"solve", inst, "--trace"}).out);
    const std::string cnf = std::string(SATR_DATA_DIR) + "/corpus/f01_v4_c4.cnf";
    CHECK(run({"gen-hardness", "--cnf", cnf}).out == run({"gen-hardness", "--cnf", cnf}).out);
}

TEST_CASE("cli: exit codes") {
    TempDir t;
    const std::string bad = t.write("bad.json", "{\"vertices\": [");
    CHECK(run({"solve", bad}).code == kExitMalformed);
    CHECK(run({"solve", (t.dir / "missing.json").string()}).code == kExitMalformed);
    CHECK(run({"frobnicate"}).code == kExitMalformed);
    CHECK(run({"oracle", bad, "--max-nodes", "0"}).code == kExitMalformed);
    const std::string loop = t.write("loop.json", R"({"vertices":[0,1],"edges":[{"id":"a","u":0,"v":0}],"crossings":[]})");
    CHECK(run({"solve", loop}).code == kExitMalformed);

    // a 4-cycle drawn as a bowtie
    const std::string inst = t.write(
        "k.json", instance_to_json(testutil::make_at(4, {{0, 1}, {2, 3}, {0, 2}, {1, 3}}, {{0, 1}})).dump());
    Run s = run({"solve", inst});
    CHECK(s.code == kExitYes);
    CHECK(run({"oracle", inst, "--max-rotations", "1"}).code == kExitLimit);

    const std::string big = t.write(
        "big.json", instance_to_json(testutil::make_at(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}, {{0, 1}, {1, 2}, {2, 3}})).dump());
    CHECK(run({"solve", big}).code == kExitLimit);
    Run st = run({"stats", big});
    CHECK(st.code == kExitYes);
    CHECK(json::parse(st.out)["lambda"] == 4);

    const std::string cnf = t.write("two.cnf", "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
    CHECK(run({"gen-hardness", "--cnf", cnf}).code == kExitMalformed);
    CHECK(run({"gen-hardness", "--cnf", t.write("junk.cnf", "hello")}).code == kExitMalformed);
}

TEST_CASE("cli: gen-hardness report") {
    TempDir t;
    const std::string cnf = std::string(SATR_DATA_DIR) + "/corpus/f02_v5_c6.cnf";
    const std::string report = (t.dir / "r.json").string();
    Run h = run({"gen-hardness", "--cnf", cnf, "--report", report});
    REQUIRE(h.code == kExitYes);
    json r = json::parse(testutil::read_file(report));
    CHECK(r["ok"] == true);
    CHECK(r["lambda"] == 6);
    CHECK(r["max_degree"] == 3);
    CHECK(r["shapes"]["prism"] == 6);
    ATGraph a = instance_from_json(json::parse(h.out));
    CHECK(a.graph.vertex_count() == 144 * 6);
}
