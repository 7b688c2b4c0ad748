#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "helpers.hpp"
#include "satr/hardness.hpp"
#include "satr/io.hpp"
#include "satr/oracle.hpp"
#include "satr/spqr.hpp"

using namespace satr;

namespace {

std::vector<std::string> corpus_files() {
    std::vector<std::string> out;
    for (auto& e : std::filesystem::directory_iterator(std::string(SATR_DATA_DIR) + "/corpus"))
        if (e.path().extension() == ".cnf") out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

// the cube: each clause leaves out a different variable
const char* kCube =
    "c cube\n"
    "p cnf 4 4\n"
    "1 2 3 0\n"
    "-1 2 4 0\n"
    "1 -3 -4 0\n"
    "2 3 -4 0\n";

std::set<std::string> component_of(const GadgetInstance& gi, const std::string& symbol) {
    CrossingGraph cg = build_crossing_graph(gi.a);
    int e = gi.edge_of.at(symbol);
    for (auto& comp : crossing_components(cg))
        if (std::find(comp.begin(), comp.end(), e) != comp.end()) {
            std::set<std::string> ids;
            for (int x : comp) ids.insert(gi.a.graph.edges[x].id);
            return ids;
        }
    return {};
}

}  // namespace

TEST_CASE("dimacs: parse and reject") {
    CNF f = parse_dimacs(kCube);
    CHECK(f.variables == 4);
    REQUIRE(f.clauses.size() == 4);
    CHECK(f.clauses[1][0].var == 0);
    CHECK(f.clauses[1][0].negated);
    CHECK(parse_dimacs(to_dimacs(f)).clauses.size() == 4);
    CHECK(to_dimacs(parse_dimacs(to_dimacs(f))) == to_dimacs(f));
    // clauses may span lines
    CHECK(parse_dimacs("p cnf 3 1\n1 -2\n3 0\n").clauses.size() == 1);
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 1 2 0\n"), MalformedInput);
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 0\n"), MalformedInput);
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 4 0\n"), MalformedInput);
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), MalformedInput);
    CHECK_THROWS_AS(parse_dimacs("1 2 3 0\n"), MalformedInput);
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 x 0\n"), MalformedInput);
}

TEST_CASE("variable-clause graph and precondition") {
    SUBCASE("one clause is a star") {
        auto g = build_variable_clause_graph(parse_dimacs("p cnf 3 1\n1 -2 3 0\n"));
        CHECK(g.node_count() == 4);
        CHECK(g.edges.size() == 3);
        CHECK_FALSE(check_precondition(g).ok);
    }
    SUBCASE("two clauses over the same variables") {
        auto g = build_variable_clause_graph(parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n"));
        auto p = check_precondition(g);
        CHECK_FALSE(p.ok);
        CHECK(p.why == "not 3-connected");
    }
    SUBCASE("cube") {
        auto g = build_variable_clause_graph(parse_dimacs(kCube));
        CHECK(check_precondition(g).ok);
    }
    SUBCASE("corpus") {
        auto files = corpus_files();
        CHECK(files.size() >= 5);
        for (auto& path : files) {
            INFO(path);
            CHECK(check_precondition(build_variable_clause_graph(parse_dimacs(testutil::read_file(path)))).ok);
        }
    }
}

TEST_CASE("skeleton") {
    auto g = build_variable_clause_graph(parse_dimacs(kCube));
    SkeletonGraph s = build_skeleton(g);
    CHECK(s.n == 24);
    CHECK(s.edges.size() == 48);
    for (auto& cyc : s.var_cycle) CHECK(cyc.size() == 3);
    std::vector<int> deg(s.n, 0);
    for (auto [u, v] : s.edges) ++deg[u], ++deg[v];
    CHECK(std::all_of(deg.begin(), deg.end(), [](int d) { return d == 4; }));
    // 3-connected: the SPQR tree is a single rigid node
    SPQRTree t = build_spqr(s.n, s.edges);
    int rigid = 0, other = 0;
    for (int x : t.alive_nodes()) {
        if (t.nodes[x].type == SPQRTree::Type::R) ++rigid;
        else if (t.nodes[x].type != SPQRTree::Type::Q) ++other;
    }
    CHECK(rigid == 1);
    CHECK(other == 0);
    CHECK(genus_defect(s.embedding) == 0);
}

TEST_CASE("split gadget components") {
    GadgetInstance s = split_gadget();
    HardnessReport r = self_check(s);
    CHECK(r.ok);
    CHECK(r.lambda == 6);
    CHECK(r.shapes == std::map<std::string, int>{{"K2", 2}, {"P3", 3}, {"P4", 2}, {"double-star", 1}});
    CHECK(component_of(s, "c3") == std::set<std::string>{"c3", "g3", "pi13.3", "pi23.3", "psi13.3", "psi23.3"});
    CHECK(component_of(s, "l2") == std::set<std::string>{"l2", "b2", "f2"});
    CHECK(component_of(s, "c1") == std::set<std::string>{"c1", "g1", "pi13.1", "psi13.1"});
    CHECK(component_of(s, "pi23.2") == std::set<std::string>{"pi23.2", "psi23.2"});
    CHECK(component_of(s, "a1") == std::set<std::string>{"a1"});
    CHECK(s.a.graph.edge_count() == 42);
    CHECK(split_gadget(false).a.graph.edge_count() == 36);
}

TEST_CASE("assemble: cube formula") {
    CNF f = parse_dimacs(kCube);
    GadgetInstance gi = assemble(f);
    HardnessReport r = self_check(gi);
    for (auto& p : r.problems) MESSAGE(p);
    CHECK(r.ok);
    CHECK(gi.split_gadgets == 12);
    CHECK(gi.clauses == 4);
    CHECK(r.size_six == 16);
    CHECK(gi.a.graph.vertex_count() == 144 * 4);
    CHECK(gi.a.graph.edge_count() == 144 * 4);
    CHECK(gi.a.crossings.size() == 81 * 4);
    // clause component: two triangles plus the matching
    auto prism = component_of(gi, "c1.x.c");
    CHECK(prism == std::set<std::string>{"c1.x.c", "c1.y.c", "c1.z.c", "c1.x.g", "c1.y.g", "c1.z.g"});
    // a skeleton edge with its two crossers
    auto at_var = component_of(gi, "x1.s1.a1");
    CHECK(at_var.size() == 3);
    CHECK(at_var.count(gi.a.graph.edges[gi.edge_of.at("x1.s1.e1")].id));
    // identified edges share one index
    CHECK(gi.edge_of.at("x1.s2.a3") == gi.edge_of.at("x1.s1.a2"));
    CHECK(gi.edge_of.at("x2.s1.e3") == gi.edge_of.at("x2.s3.e2"));
    // deterministic output
    CHECK(instance_to_json(assemble(f).a).dump() == instance_to_json(gi.a).dump());
}

TEST_CASE("assemble: literal polarity picks the clause path") {
    CNF f = parse_dimacs(kCube);
    GadgetInstance gi = assemble(f);
    // every clause path entry edge is one of a variable gadget's exits
    int neg = 0, pos = 0;
    for (int c = 0; c < 4; ++c)
        for (char r : std::string("xyz")) {
            const std::string p = "c" + std::to_string(c + 1) + "." + r + ".";
            int a = gi.edge_of.at(p + "a"), e = gi.edge_of.at(p + "e");
            const std::string& ida = gi.a.graph.edges[a].id;
            const std::string& ide = gi.a.graph.edges[e].id;
            REQUIRE(ida.size() > 3);
            CHECK(ida.substr(0, ida.size() - 2) == ide.substr(0, ide.size() - 2));
            if (ida.substr(ida.size() - 2) == "e1") ++neg;
            else if (ida.substr(ida.size() - 2) == "a1") ++pos;
        }
    int lits_neg = 0;
    for (auto& cl : f.clauses)
        for (auto& l : cl) lits_neg += l.negated;
    CHECK(neg == lits_neg);
    CHECK(pos + neg == 12);
}

TEST_CASE("assemble: corpus passes the self-check") {
    for (auto& path : corpus_files()) {
        INFO(path);
        GadgetInstance gi = assemble(parse_dimacs(testutil::read_file(path)));
        HardnessReport r = self_check(gi);
        CHECK(r.ok);
        CHECK(r.max_degree == 3);
        CHECK(r.crossing_graph_planar);
    }
}

TEST_CASE("assemble: rejects formulas outside the precondition") {
    CHECK_THROWS_AS(assemble(parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n")), std::invalid_argument);
}

TEST_CASE("oracle: a lone split gadget is realizable") {
    CHECK(brute_force_satr(split_gadget(false).a).yes);
}
