#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "acp_internal.hpp"
#include "satr/oracle.hpp"

namespace satr {

// committed table text, embedded at build time
extern const char* const kUntangleTable;

namespace {

int role_count(ComponentKind k) { return k == ComponentKind::K2 ? 2 : 3; }

std::vector<std::pair<int, int>> role_crossings(ComponentKind k) {
    switch (k) {
        case ComponentKind::K2: return {{0, 1}};
        case ComponentKind::P3: return {{0, 2}, {1, 2}};
        case ComponentKind::K3: return {{0, 1}, {0, 2}, {1, 2}};
    }
    return {};
}

// Hub 0 joined to one leaf per portion; role r runs between the leaves of
// its two portions.  The hub pins the portions around one face.
std::optional<Untangled> realize(ComponentKind kind, const std::vector<int>& portions) {
    const int k = role_count(kind);
    ATGraph a;
    for (int i = 0; i <= 2 * k; ++i) a.graph.vertices.push_back(std::to_string(i));
    for (int r = 0; r < k; ++r) a.graph.edges.push_back({"r" + std::to_string(r), 1 + 2 * r, 2 + 2 * r});
    for (int p = 0; p < 2 * k; ++p) a.graph.edges.push_back({"h" + std::to_string(p), 0, 1 + p});
    a.crossings = role_crossings(kind);
    OracleOptions opt;
    std::vector<int> hub;
    for (auto it = portions.rbegin(); it != portions.rend(); ++it) hub.push_back(k + *it);
    opt.pinned[0] = hub;
    auto all = enumerate_realizations(a, opt);
    if (all.empty()) return std::nullopt;
    auto key = [](const PlanarizationCertificate& w) { return std::tie(w.dummies, w.routes, w.rotations); };
    const PlanarizationCertificate* best = &all[0];
    for (auto& w : all)
        if (key(w) < key(*best)) best = &w;
    Untangled u;
    u.dummies = best->dummies;
    u.routes.assign(best->routes.begin(), best->routes.begin() + k);
    for (size_t d = 0; d < u.dummies.size(); ++d) {
        std::vector<std::array<int, 3>> rot;
        for (const CertDart& cd : best->rotations[2 * k + 1 + d]) rot.push_back({cd.edge, cd.seg, cd.end});
        u.rotations.push_back(rot);
    }
    return u;
}

std::string line_of(ComponentKind kind, const std::vector<int>& portions, const Untangled& u) {
    std::ostringstream os;
    os << kind_name(kind);
    for (int p : portions) os << ' ' << p;
    os << " ;";
    for (auto [a, b] : u.dummies) os << ' ' << a << '-' << b;
    os << " ;";
    for (auto& r : u.routes) {
        os << ' ';
        if (r.empty()) os << '-';
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    }
    os << " ;";
    for (size_t d = 0; d < u.rotations.size(); ++d) {
        if (d) os << " /";
        for (auto& x : u.rotations[d]) os << ' ' << x[0] << '.' << x[1] << '.' << x[2];
    }
    return os.str();
}

using Key = std::pair<std::string, std::vector<int>>;

std::map<Key, Untangled> parse_table(const std::string& text) {
    std::map<Key, Untangled> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> parts;
        std::string part;
        std::istringstream ls(line);
        while (std::getline(ls, part, ';')) parts.push_back(part);
        if (parts.size() != 4) throw std::runtime_error("bad untangle table line: " + line);
        std::istringstream head(parts[0]);
        Key key;
        head >> key.first;
        for (int p; head >> p;) key.second.push_back(p);
        Untangled u;
        std::istringstream ds(parts[1]);
        for (std::string t; ds >> t;) {
            auto dash = t.find('-');
            u.dummies.push_back({std::stoi(t.substr(0, dash)), std::stoi(t.substr(dash + 1))});
        }
        std::istringstream rs(parts[2]);
        for (std::string t; rs >> t;) {
            std::vector<int> r;
            if (t != "-") {
                std::istringstream ts(t);
                for (std::string x; std::getline(ts, x, ',');) r.push_back(std::stoi(x));
            }
            u.routes.push_back(r);
        }
        std::istringstream xs(parts[3]);
        for (std::string grp; std::getline(xs, grp, '/');) {
            std::istringstream gs(grp);
            std::vector<std::array<int, 3>> rot;
            for (std::string t; gs >> t;) {
                int a, b, c;
                char d1, d2;
                std::istringstream ts(t);
                ts >> a >> d1 >> b >> d2 >> c;
                rot.push_back({a, b, c});
            }
            u.rotations.push_back(rot);
        }
        out[key] = u;
    }
    return out;
}

const std::map<Key, Untangled>& table() {
    static std::once_flag once;
    static std::map<Key, Untangled> t;
    std::call_once(once, [] { t = parse_table(kUntangleTable); });
    return t;
}

}  // namespace

std::optional<Untangled> untangle(ComponentKind kind, const std::vector<int>& portions) {
    std::vector<int> p = portions;
    auto zero = std::find(p.begin(), p.end(), 0);
    if (zero == p.end()) throw std::invalid_argument("portion rotation without portion 0");
    std::rotate(p.begin(), zero, p.end());
    auto it = table().find({kind_name(kind), p});
    if (it == table().end()) return std::nullopt;
    return it->second;
}

std::string untangle_table_text() { return kUntangleTable; }

std::string generate_untangle_table() {
    std::string out;
    for (ComponentKind kind : {ComponentKind::K2, ComponentKind::P3, ComponentKind::K3}) {
        for (auto& o : detail::cyclic_orders(2 * role_count(kind))) {
            auto u = realize(kind, o);
            if (u) out += line_of(kind, o, *u) + "\n";
        }
    }
    return out;
}

}  // namespace satr
