#include "satr/io.hpp"

#include <fstream>
#include <map>

namespace satr {

namespace {

std::string id_of(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw MalformedInput("ids must be strings or integers");
}

json vertex_json(const Graph& g, int v) {
    if (g.numeric_ids) return std::stoll(g.vertices[v]);
    return g.vertices[v];
}

std::string dummy_prefix(const Graph& g) {
    std::string pre = "x";
    for (;;) {
        bool clash = false;
        for (auto& v : g.vertices)
            if (v.rfind(pre, 0) == 0) clash = true;
        if (!clash) return pre;
        pre += "_";
    }
}

}  // namespace

ATGraph instance_from_json(const json& j) {
    try {
        ATGraph a;
        std::map<std::string, int> vid, eid;
        bool numeric = true;
        for (const json& v : j.at("vertices")) {
            if (!v.is_number_integer()) numeric = false;
            std::string s = id_of(v);
            if (!vid.emplace(s, a.graph.vertex_count()).second) throw MalformedInput("duplicate vertex " + s);
            a.graph.vertices.push_back(s);
        }
        a.graph.numeric_ids = numeric && !a.graph.vertices.empty();
        for (const json& e : j.at("edges")) {
            Edge ed;
            ed.id = id_of(e.at("id"));
            auto u = vid.find(id_of(e.at("u")));
            auto v = vid.find(id_of(e.at("v")));
            if (u == vid.end() || v == vid.end()) throw MalformedInput("edge " + ed.id + " uses unknown vertex");
            ed.u = u->second;
            ed.v = v->second;
            if (!eid.emplace(ed.id, a.graph.edge_count()).second) throw MalformedInput("duplicate edge " + ed.id);
            a.graph.edges.push_back(ed);
        }
        if (j.contains("crossings"))
            for (const json& c : j.at("crossings")) {
                if (!c.is_array() || c.size() != 2) throw MalformedInput("crossing must be a pair");
                auto x = eid.find(id_of(c[0]));
                auto y = eid.find(id_of(c[1]));
                if (x == eid.end() || y == eid.end()) throw MalformedInput("crossing uses unknown edge");
                a.crossings.emplace_back(std::min(x->second, y->second), std::max(x->second, y->second));
            }
        a.check();
        return a;
    } catch (const json::exception& ex) {
        throw MalformedInput(ex.what());
    }
}

json instance_to_json(const ATGraph& a) {
    json j;
    j["vertices"] = json::array();
    for (int v = 0; v < a.graph.vertex_count(); ++v) j["vertices"].push_back(vertex_json(a.graph, v));
    j["edges"] = json::array();
    for (const Edge& e : a.graph.edges)
        j["edges"].push_back({{"id", e.id}, {"u", vertex_json(a.graph, e.u)}, {"v", vertex_json(a.graph, e.v)}});
    j["crossings"] = json::array();
    for (auto [e, f] : a.crossings) j["crossings"].push_back({a.graph.edges[e].id, a.graph.edges[f].id});
    return j;
}

std::string dummy_name(const Graph& g, int d) { return dummy_prefix(g) + std::to_string(d); }

json certificate_to_json(const ATGraph& a, PlanarizationCertificate w) {
    const Graph& g = a.graph;
    canonicalize(g, w);
    const std::string pre = dummy_prefix(g);
    json j;
    j["dummies"] = json::array();
    for (size_t d = 0; d < w.dummies.size(); ++d)
        j["dummies"].push_back({{"id", pre + std::to_string(d)},
                                {"pair", {g.edges[w.dummies[d].first].id, g.edges[w.dummies[d].second].id}}});
    j["routes"] = json::object();
    for (int e = 0; e < g.edge_count(); ++e) {
        json r = json::array();
        for (int d : w.routes[e]) r.push_back(pre + std::to_string(d));
        j["routes"][g.edges[e].id] = r;
    }
    j["rotations"] = json::object();
    const int n = g.vertex_count();
    for (size_t x = 0; x < w.rotations.size(); ++x) {
        json r = json::array();
        for (const CertDart& cd : w.rotations[x]) r.push_back({g.edges[cd.edge].id, cd.seg, cd.end});
        std::string key = static_cast<int>(x) < n ? g.vertices[x] : pre + std::to_string(x - n);
        j["rotations"][key] = r;
    }
    return j;
}

PlanarizationCertificate certificate_from_json(const ATGraph& a, const json& j) {
    try {
        const Graph& g = a.graph;
        std::map<std::string, int> eid, node;
        for (int e = 0; e < g.edge_count(); ++e) eid[g.edges[e].id] = e;
        for (int v = 0; v < g.vertex_count(); ++v) node[g.vertices[v]] = v;
        PlanarizationCertificate w;
        std::map<std::string, int> did;
        for (const json& d : j.at("dummies")) {
            std::string id = id_of(d.at("id"));
            if (node.count(id) || did.count(id)) throw MalformedCertificate("dummy id clashes: " + id);
            did[id] = static_cast<int>(w.dummies.size());
            const json& p = d.at("pair");
            if (!p.is_array() || p.size() != 2) throw MalformedCertificate("dummy pair must have two edges");
            auto x = eid.find(id_of(p[0]));
            auto y = eid.find(id_of(p[1]));
            if (x == eid.end() || y == eid.end()) throw MalformedCertificate("dummy pair uses unknown edge");
            w.dummies.emplace_back(x->second, y->second);
        }
        for (auto& [k, v] : did) node[k] = g.vertex_count() + v;
        w.routes.assign(g.edge_count(), {});
        for (auto it = j.at("routes").begin(); it != j.at("routes").end(); ++it) {
            auto e = eid.find(it.key());
            if (e == eid.end()) throw MalformedCertificate("route for unknown edge " + it.key());
            for (const json& d : it.value()) {
                auto x = did.find(id_of(d));
                if (x == did.end()) throw MalformedCertificate("route uses unknown dummy");
                w.routes[e->second].push_back(x->second);
            }
        }
        w.rotations.assign(g.vertex_count() + w.dummies.size(), {});
        std::vector<char> given(w.rotations.size(), 0);
        for (auto it = j.at("rotations").begin(); it != j.at("rotations").end(); ++it) {
            auto x = node.find(it.key());
            if (x == node.end()) throw MalformedCertificate("rotation for unknown node " + it.key());
            given[x->second] = 1;
            for (const json& dj : it.value()) {
                if (!dj.is_array() || dj.size() != 3) throw MalformedCertificate("dart must be [edge, seg, end]");
                auto e = eid.find(id_of(dj[0]));
                if (e == eid.end()) throw MalformedCertificate("dart uses unknown edge");
                w.rotations[x->second].push_back({e->second, dj[1].get<int>(), dj[2].get<int>()});
            }
        }
        return w;
    } catch (const json::exception& ex) {
        throw MalformedCertificate(ex.what());
    }
}

json verdict_to_json(const ATGraph& a, const Verdict& v) {
    json j;
    j["answer"] = v.yes ? "YES" : "NO";
    if (v.yes && v.witness) j["certificate"] = certificate_to_json(a, *v.witness);
    if (!v.yes) j["reason"] = reason_name(v.reason);
    return j;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw MalformedInput(ex.what());
    }
}

ATGraph read_instance_file(const std::string& path) { return instance_from_json(read_json_file(path)); }

}  // namespace satr
