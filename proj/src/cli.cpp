#include "satr/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <random>
#include <sstream>

#include "satr/acp.hpp"
#include "satr/hardness.hpp"
#include "satr/io.hpp"
#include "satr/oracle.hpp"
#include "satr/planted.hpp"

namespace satr {

namespace {

// Files may hold a bare instance or a wrapper with an "instance" field (as
// written by gen-random); certificates likewise.
ATGraph instance_of(const json& j) { return instance_from_json(j.contains("instance") ? j.at("instance") : j); }

void emit(const json& j, const std::string& path, std::ostream& out) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw MalformedInput("cannot write " + path);
    f << text;
}

json stats_json(const ATGraph& a) {
    CrossingGraph cg = build_crossing_graph(a);
    json j;
    j["vertices"] = a.graph.vertex_count();
    j["edges"] = a.graph.edge_count();
    j["crossings"] = a.crossings.size();
    j["lambda"] = lambda(a);
    int maxdeg = 0;
    for (auto& adj : cg.adj) maxdeg = std::max(maxdeg, static_cast<int>(adj.size()));
    j["max_crossing_degree"] = maxdeg;
    std::map<std::string, int> sizes, kinds;
    for (auto& comp : crossing_components(cg)) {
        if (comp.size() < 2) continue;
        ++sizes[std::to_string(comp.size())];
        if (comp.size() == 2) ++kinds["K2"];
        else if (comp.size() == 3) {
            int links = 0;
            for (int e : comp) links += static_cast<int>(cg.adj[e].size());
            ++kinds[links == 6 ? "K3" : "P3"];
        }
    }
    j["component_sizes"] = sizes;
    j["component_kinds"] = kinds;
    return j;
}

// Toggle one non-adjacent edge pair in or out of the crossing set, keeping
// lambda <= 3.  Returns false when no such toggle was found.
bool mutate(ATGraph& a, std::mt19937_64& rng) {
    const int m = a.graph.edge_count();
    if (m < 2) return false;
    std::uniform_int_distribution<int> pick(0, m - 1);
    for (int tries = 0; tries < 1000; ++tries) {
        int e = pick(rng), f = pick(rng);
        if (e == f || a.graph.adjacent_edges(e, f)) continue;
        ATGraph b = a;
        std::pair<int, int> p{std::min(e, f), std::max(e, f)};
        auto it = std::find(b.crossings.begin(), b.crossings.end(), p);
        if (it != b.crossings.end()) b.crossings.erase(it);
        else b.crossings.insert(std::upper_bound(b.crossings.begin(), b.crossings.end(), p), p);
        if (lambda(b) > 3) continue;
        a = std::move(b);
        return true;
    }
    return false;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simple AT-graph realizability for crossing components of at most three edges"};
    app.require_subcommand(1);
    std::string input, cert, output, cnf;
    bool trace = false;
    OracleLimits lim;
    std::uint64_t seed = 1;
    PlantedOptions popt;
    popt.n = 30;
    double mutate_rate = 0.2;

    auto* solve_cmd = app.add_subcommand("solve", "decide an instance and print the verdict");
    solve_cmd->add_option("instance", input, "instance JSON")->required();
    solve_cmd->add_option("-o,--out", output, "output file (default stdout)");
    solve_cmd->add_flag("--trace", trace, "include the reduction trace");

    auto* check_cmd = app.add_subcommand("check", "check a certificate; exit 0 if valid, 1 if not");
    check_cmd->add_option("instance", input, "instance JSON")->required();
    check_cmd->add_option("certificate", cert, "certificate or verdict JSON")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "decide an instance by exhaustive search");
    oracle_cmd->add_option("instance", input, "instance JSON")->required();
    oracle_cmd->add_option("-o,--out", output, "output file (default stdout)");
    oracle_cmd->add_option("--max-nodes", lim.max_nodes, "planarization vertex limit")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--max-darts", lim.max_darts, "planarization dart limit")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--max-rotations", lim.max_rotations, "partial rotation limit")->check(CLI::PositiveNumber);

    auto* hard_cmd = app.add_subcommand("gen-hardness", "build the lambda=6 instance of a formula");
    hard_cmd->add_option("--cnf", cnf, "DIMACS CNF file")->required();
    hard_cmd->add_option("-o,--out", output, "output file (default stdout)");
    std::string report;
    hard_cmd->add_option("--report", report, "write the structural self-check here");

    auto* rand_cmd = app.add_subcommand("gen-random", "planted instance with a known witness");
    rand_cmd->add_option("--n", popt.n, "host vertices")->check(CLI::Range(4, 100000000));
    rand_cmd->add_option("--seed", seed, "random seed");
    rand_cmd->add_option("--pattern-rate", popt.pattern_rate, "chance that a face gets a crossing pattern")
        ->check(CLI::Range(0.0, 1.0));
    rand_cmd->add_option("--mutate-rate", mutate_rate, "chance of toggling one crossing pair")->check(CLI::Range(0.0, 1.0));
    rand_cmd->add_option("-o,--out", output, "output file (default stdout)");
    rand_cmd->add_option("--max-nodes", lim.max_nodes, "oracle vertex limit for mutated instances")
        ->check(CLI::PositiveNumber);
    rand_cmd->add_option("--max-rotations", lim.max_rotations, "oracle rotation limit for mutated instances")
        ->check(CLI::PositiveNumber);

    auto* stats_cmd = app.add_subcommand("stats", "sizes and crossing-component histogram");
    stats_cmd->add_option("instance", input, "instance JSON")->required();
    stats_cmd->add_option("-o,--out", output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitYes;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitMalformed;
    }

    try {
        if (solve_cmd->parsed()) {
            ATGraph a = instance_of(read_json_file(input));
            Trace tr;
            Verdict v;
            try {
                v = solve(a, trace ? &tr : nullptr);
            } catch (const ComponentTooLarge& e) {
                err << "outside the solver's scope: " << e.what() << "\n";
                return kExitLimit;
            }
            json j = verdict_to_json(a, v);
            if (trace) j["trace"] = tr;
            emit(j, output, out);
            return v.yes ? kExitYes : kExitNo;
        }
        if (check_cmd->parsed()) {
            ATGraph a = instance_of(read_json_file(input));
            json cj = read_json_file(cert);
            if (cj.contains("certificate")) cj = cj.at("certificate");
            try {
                if (check_certificate(a, certificate_from_json(a, cj))) {
                    out << "valid\n";
                    return kExitYes;
                }
            } catch (const MalformedCertificate& e) {
                err << "malformed certificate: " << e.what() << "\n";
            }
            out << "invalid\n";
            return kExitRejected;
        }
        if (oracle_cmd->parsed()) {
            ATGraph a = instance_of(read_json_file(input));
            Verdict v = brute_force_satr(a, lim);
            emit(verdict_to_json(a, v), output, out);
            return v.yes ? kExitYes : kExitNo;
        }
        if (hard_cmd->parsed()) {
            std::ifstream in(cnf);
            if (!in) throw MalformedInput("cannot open " + cnf);
            std::stringstream ss;
            ss << in.rdbuf();
            GadgetInstance gi;
            try {
                gi = assemble(parse_dimacs(ss.str()));
            } catch (const std::invalid_argument& e) {
                throw MalformedInput(e.what());
            }
            HardnessReport r = self_check(gi);
            if (!report.empty()) {
                json rj;
                rj["ok"] = r.ok;
                rj["lambda"] = r.lambda;
                rj["max_degree"] = r.max_degree;
                rj["crossing_graph_planar"] = r.crossing_graph_planar;
                rj["shapes"] = r.shapes;
                rj["size_six"] = r.size_six;
                rj["split_gadgets"] = gi.split_gadgets;
                rj["clauses"] = gi.clauses;
                rj["problems"] = r.problems;
                emit(rj, report, out);
            }
            if (!r.ok) {
                for (auto& p : r.problems) err << "self-check: " << p << "\n";
                return kExitInternal;
            }
            emit(instance_to_json(gi.a), output, out);
            return kExitYes;
        }
        if (rand_cmd->parsed()) {
            Planted p = planted_instance(popt, seed);
            std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
            json j;
            const bool mutated = std::uniform_real_distribution<double>(0, 1)(rng) < mutate_rate && mutate(p.a, rng);
            j["instance"] = instance_to_json(p.a);
            j["seed"] = seed;
            j["mutated"] = mutated;
            if (!mutated) {
                j["label"] = "YES";
                j["certificate"] = certificate_to_json(p.a, p.witness);
            } else {
                try {
                    Verdict v = brute_force_satr(p.a, lim);
                    j["label"] = v.yes ? "YES" : "NO";
                    if (v.yes) j["certificate"] = certificate_to_json(p.a, *v.witness);
                } catch (const LimitExceeded&) {
                    j["label"] = "unknown";
                }
            }
            emit(j, output, out);
            return kExitYes;
        }
        if (stats_cmd->parsed()) {
            emit(stats_json(instance_of(read_json_file(input))), output, out);
            return kExitYes;
        }
    } catch (const MalformedInput& e) {
        err << "malformed input: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const LimitExceeded& e) {
        err << "limit exceeded: " << e.what() << "\n";
        return kExitLimit;
    } catch (const json::exception& e) {
        err << "malformed input: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace satr
