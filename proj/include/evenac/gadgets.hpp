#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "evenac/budget.hpp"
#include "evenac/cycles.hpp"
#include "evenac/graph.hpp"
#include "evenac/oracles.hpp"

namespace evenac {

// Wall encoding. Horizontal lines j = 0..rows; line 0 spans x = 1..2c+1,
// inner lines span x = 0..2c+1, the top line spans x = 1..2c+1 when rows-1
// is even and x = 0..2c otherwise. Rungs join line j to line j+1 at
// x = 2i+1 (j even) or x = 2i (j odd), i = 0..c. A vertex (x, j) lies in
// class U when x+j is odd and in class V otherwise.

struct WallSpec {
    int rows = 0;
    int cols = 0;
    std::vector<std::pair<int, int>> coords;  // (x, j) per vertex id
    std::vector<int> cls;                     // 1 = U, 0 = V
    LabeledGraph graph;

    std::optional<Vertex> at(int x, int j) const {
        auto it = index.find({x, j});
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
    std::pair<int, int> span(int j) const {
        if (j == 0) return {1, 2 * cols + 1};
        if (j < rows) return {0, 2 * cols + 1};
        return (rows - 1) % 2 == 0 ? std::pair{1, 2 * cols + 1} : std::pair{0, 2 * cols};
    }

    std::map<std::pair<int, int>, Vertex> index;
};

inline WallSpec elementary_wall(int rows, int cols) {
    if (rows < 2 || cols < 2) throw PreconditionError("a wall needs at least 2 rows and 2 columns");
    WallSpec w;
    w.rows = rows;
    w.cols = cols;
    for (int j = 0; j <= rows; ++j) {
        auto [lo, hi] = w.span(j);
        for (int x = lo; x <= hi; ++x) {
            w.index[{x, j}] = static_cast<Vertex>(w.coords.size());
            w.coords.emplace_back(x, j);
            w.cls.push_back((x + j) % 2);
        }
    }
    EdgeList edges;
    for (int j = 0; j <= rows; ++j) {
        auto [lo, hi] = w.span(j);
        for (int x = lo; x < hi; ++x) edges.emplace_back(*w.at(x, j), *w.at(x + 1, j));
        if (j == rows) continue;
        for (int i = 0; i <= cols; ++i) {
            int x = j % 2 == 0 ? 2 * i + 1 : 2 * i;
            edges.emplace_back(*w.at(x, j), *w.at(x, j + 1));
        }
    }
    w.graph = LabeledGraph(static_cast<int>(w.coords.size()), edges);
    return w;
}

struct GadgetSpec {
    int h = 1;
    std::optional<int> wall_size;  // desk-scale override of the 10h x 10h wall
    int ell = 5;
    std::optional<int> m;

    int size() const { return wall_size ? *wall_size : 10 * h; }
};

struct VertexRole {
    std::string kind;  // wall, u, v, a, sub, extra
    int x = -1;
    int y = -1;
    int cls = -1;
    int index = -1;  // position in A for kind "a"
};

/// One edge of the long gadget and the path standing for it in the final graph.
struct Chain {
    std::string kind;  // wall, top, uW, vW, uA, vA
    Path path;
};

struct GadgetLayout {
    GadgetSpec spec;
    int rows = 0;
    int cols = 0;
    Vertex u = -1;
    Vertex v = -1;
    VertexList a;
    std::vector<VertexRole> roles;
    std::vector<Chain> chains;

    EdgeList top_row_edges() const {
        EdgeList out;
        for (const Chain& c : chains)
            if (c.kind == "top")
                for (const Edge& e : path_edges(c.path)) out.push_back(e);
        std::sort(out.begin(), out.end());
        return out;
    }
};

struct Gadget {
    LabeledGraph graph;
    GadgetLayout layout;
};

/// The cycles the gadget defeats: long even A-cycles, or A-cycles of length
/// divisible by m for the modular gadget.
inline CyclePredicate gadget_target(const GadgetSpec& spec) {
    CyclePredicate p;
    p.meets_a = true;
    if (spec.m) {
        p.modulus = std::pair{*spec.m, 0};
    } else {
        p.even = true;
        p.min_length = spec.ell;
    }
    return p;
}

inline Gadget long_gadget(const GadgetSpec& spec) {
    if (spec.m) throw PreconditionError("the long gadget takes no modulus");
    if (spec.ell < 5) throw PreconditionError("ell must be at least 5");
    const int r = spec.size();
    if (r < 2 || r % 2 != 0) throw PreconditionError("wall size must be even and at least 2");
    WallSpec w = elementary_wall(r, r);
    const int nw = w.graph.n();
    const Vertex u = nw, v = nw + 1;
    LabeledGraph g(nw + 2 + r);
    for (const Edge& e : w.graph.edges()) g.add_edge(e.u, e.v);
    for (int j = 1; j < r; j += 2) {
        g.add_edge(u, *w.at(0, j));
        g.add_edge(v, *w.at(2 * r + 1, j));
    }
    for (int i = 0; i < r; ++i) {
        g.add_edge(u, nw + 2 + i);
        g.add_edge(v, nw + 2 + i);
        g.mark_a(nw + 2 + i);
    }
    // suppress the U-class vertices of the top line
    std::vector<bool> protect(static_cast<std::size_t>(g.n()), true);
    auto [lo, hi] = w.span(r);
    for (int x = lo; x <= hi; ++x)
        if ((x + r) % 2 == 1) protect[static_cast<std::size_t>(*w.at(x, r))] = false;
    Surgery s = suppress_degree_two(g, protect);

    Gadget out;
    out.graph = s.graph;
    GadgetLayout& lay = out.layout;
    lay.spec = spec;
    lay.rows = lay.cols = r;
    for (Vertex x = 0; x < s.graph.n(); ++x) {
        Vertex o = s.origin[static_cast<std::size_t>(x)];
        VertexRole role;
        if (o < nw) {
            role.kind = "wall";
            role.x = w.coords[static_cast<std::size_t>(o)].first;
            role.y = w.coords[static_cast<std::size_t>(o)].second;
            role.cls = w.cls[static_cast<std::size_t>(o)];
        } else if (o == u) {
            role.kind = "u";
            lay.u = x;
        } else if (o == v) {
            role.kind = "v";
            lay.v = x;
        } else {
            role.kind = "a";
            role.index = o - nw - 2;
            lay.a.push_back(x);
        }
        lay.roles.push_back(role);
    }
    for (const Edge& e : s.graph.edges()) {
        auto kind_of = [&](Vertex p) { return lay.roles[static_cast<std::size_t>(p)].kind; };
        std::string ku = kind_of(e.u), kv = kind_of(e.v);
        if (ku > kv) std::swap(ku, kv);
        std::string kind;
        if (s.edge_origin.at(e).size() > 2)
            kind = "top";
        else if (ku == "a")
            kind = kv == "u" ? "uA" : "vA";
        else if (kv == "wall" && ku == "wall")
            kind = "wall";
        else
            kind = (ku == "u" || kv == "u") ? "uW" : "vW";
        lay.chains.push_back({kind, {e.u, e.v}});
    }
    return out;
}

inline Gadget mod_gadget(const GadgetSpec& spec) {
    if (!spec.m || *spec.m <= 2) throw PreconditionError("the modular gadget needs m > 2");
    GadgetSpec base = spec;
    base.m.reset();
    Gadget lg = long_gadget(base);
    const int m = *spec.m;
    Gadget out;
    out.layout = lg.layout;
    out.layout.spec = spec;
    out.layout.chains.clear();
    int next = lg.graph.n();
    EdgeList edges;
    for (const Chain& c : lg.layout.chains) {
        int len = c.kind == "uA" ? m - 2 : (c.kind == "vA" || c.kind == "top") ? 1 : m;
        Path p{c.path.front()};
        for (int i = 1; i < len; ++i) {
            p.push_back(next++);
            out.layout.roles.push_back({"sub", -1, -1, -1, -1});
        }
        p.push_back(c.path.back());
        for (const Edge& e : path_edges(p)) edges.push_back(e);
        out.layout.chains.push_back({c.kind, p});
    }
    out.graph = LabeledGraph(next, edges, lg.graph.a());
    return out;
}

inline nlohmann::ordered_json gadget_sidecar(const Gadget& g) {
    const GadgetLayout& l = g.layout;
    nlohmann::ordered_json j;
    j["spec"] = {{"h", l.spec.h},
                 {"wall_size", l.spec.size()},
                 {"ell", l.spec.ell},
                 {"m", l.spec.m ? nlohmann::ordered_json(*l.spec.m) : nlohmann::ordered_json(nullptr)}};
    j["rows"] = l.rows;
    j["cols"] = l.cols;
    j["u"] = l.u;
    j["v"] = l.v;
    j["a"] = l.a;
    auto roles = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < l.roles.size(); ++i) {
        const VertexRole& r = l.roles[i];
        nlohmann::ordered_json e{{"id", i}, {"kind", r.kind}};
        if (r.kind == "wall") {
            e["x"] = r.x;
            e["y"] = r.y;
            e["class"] = r.cls == 1 ? "U" : "V";
        }
        if (r.kind == "a") e["index"] = r.index;
        roles.push_back(e);
    }
    j["roles"] = roles;
    auto chains = nlohmann::ordered_json::array();
    for (const Chain& c : l.chains) chains.push_back({{"kind", c.kind}, {"path", c.path}});
    j["chains"] = chains;
    return j;
}

inline GadgetLayout layout_from_sidecar(const nlohmann::json& j) {
    GadgetLayout l;
    try {
        const auto& s = j.at("spec");
        l.spec.h = s.at("h").get<int>();
        l.spec.wall_size = s.at("wall_size").get<int>();
        l.spec.ell = s.at("ell").get<int>();
        if (!s.at("m").is_null()) l.spec.m = s.at("m").get<int>();
        l.rows = j.at("rows").get<int>();
        l.cols = j.at("cols").get<int>();
        l.u = j.at("u").get<int>();
        l.v = j.at("v").get<int>();
        l.a = j.at("a").get<VertexList>();
        for (const auto& r : j.at("roles")) {
            VertexRole role;
            role.kind = r.at("kind").get<std::string>();
            if (r.contains("x")) role.x = r.at("x").get<int>();
            if (r.contains("y")) role.y = r.at("y").get<int>();
            if (r.contains("class")) role.cls = r.at("class").get<std::string>() == "U" ? 1 : 0;
            if (r.contains("index")) role.index = r.at("index").get<int>();
            l.roles.push_back(role);
        }
        for (const auto& c : j.at("chains")) l.chains.push_back({c.at("kind").get<std::string>(), c.at("path").get<Path>()});
    } catch (const nlohmann::json::exception& ex) {
        throw Error(std::string("malformed gadget sidecar: ") + ex.what());
    }
    return l;
}

struct GadgetProperty {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct GadgetReport {
    std::vector<GadgetProperty> properties;
    int packing_number = 0;
    std::int64_t target_cycles = 0;
    std::optional<int> min_hitting_set;

    bool pass() const {
        return std::all_of(properties.begin(), properties.end(), [](const GadgetProperty& p) { return p.pass; });
    }
    const GadgetProperty* find(const std::string& name) const {
        for (const auto& p : properties)
            if (p.name == name) return &p;
        return nullptr;
    }
    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["pass"] = pass();
        auto arr = nlohmann::ordered_json::array();
        for (const auto& p : properties) arr.push_back({{"name", p.name}, {"pass", p.pass}, {"detail", p.detail}});
        j["properties"] = arr;
        j["packing_number"] = packing_number;
        j["target_cycles"] = target_cycles;
        j["min_hitting_set"] = min_hitting_set ? nlohmann::ordered_json(*min_hitting_set) : nlohmann::ordered_json(nullptr);
        return j;
    }
};

/// Checks (i) the parity property of the wall (and, for the modular gadget,
/// the length of every chain), (ii) at most one edge-disjoint target cycle,
/// (iii) every target cycle meets the wall; also reports whether every target
/// cycle uses a top-row edge. With `with_hitting` the exact minimum edge
/// hitting set size is computed too.
inline GadgetReport verify_gadget(const LabeledGraph& g, const GadgetLayout& layout, bool with_hitting = false,
                                  const OracleBudget& budget = OracleBudget::from_env()) {
    if (layout.roles.size() != static_cast<std::size_t>(g.n()) || layout.chains.empty())
        throw PreconditionError("gadget id maps missing or out of date");
    GadgetReport rep;
    auto present = [&](const Chain& c) {
        for (const Edge& e : path_edges(c.path))
            if (!g.has_edge(e)) return false;
        return true;
    };

    // (i) parity on the wall skeleton (chain endpoints), top-row chains excluded
    {
        std::map<Vertex, std::vector<Vertex>> adj;
        for (const Chain& c : layout.chains)
            if (c.kind == "wall" && present(c)) {
                adj[c.path.front()].push_back(c.path.back());
                adj[c.path.back()].push_back(c.path.front());
            }
        std::map<Vertex, int> color;
        std::string detail;
        bool ok = true;
        for (auto& [s, nb] : adj) {
            if (color.count(s)) continue;
            color[s] = 0;
            std::vector<Vertex> q{s};
            for (std::size_t i = 0; i < q.size(); ++i)
                for (Vertex y : adj[q[i]]) {
                    if (!color.count(y)) {
                        color[y] = 1 - color[q[i]];
                        q.push_back(y);
                    } else if (color[y] == color[q[i]]) {
                        ok = false;
                        detail = "wall minus top row is not bipartite";
                    }
                }
        }
        std::set<int> ucls, vcls;
        for (const Chain& c : layout.chains) {
            if (!present(c)) continue;
            Vertex end = c.path.front() == layout.u || c.path.front() == layout.v ? c.path.back() : c.path.front();
            if (c.kind == "uW" && color.count(end)) ucls.insert(color[end]);
            if (c.kind == "vW" && color.count(end)) vcls.insert(color[end]);
        }
        if (ucls.size() > 1 || vcls.size() > 1 || (!ucls.empty() && ucls == vcls)) {
            ok = false;
            detail = "neighbours of u and v are not split across the two classes";
        }
        for (const Chain& c : layout.chains)
            if (c.kind == "top" && present(c) && color.count(c.path.front()) && color.count(c.path.back()) &&
                color[c.path.front()] != color[c.path.back()]) {
                ok = false;
                detail = "a top-row edge joins different classes";
            }
        if (ok) detail = "u-v wall paths are odd unless they use an odd number of top-row edges";
        rep.properties.push_back({"parity", ok, detail});
    }
    if (layout.spec.m) {
        const int m = *layout.spec.m;
        bool ok = true;
        std::string detail = "wall and attachment chains have length m, u-A chains m-2, v-A and top-row chains 1";
        for (const Chain& c : layout.chains) {
            int want = c.kind == "uA" ? m - 2 : (c.kind == "vA" || c.kind == "top") ? 1 : m;
            int len = static_cast<int>(c.path.size()) - 1;
            if (len != want) {
                ok = false;
                detail = c.kind + " chain of length " + std::to_string(len) + ", expected " + std::to_string(want);
                break;
            }
        }
        rep.properties.push_back({"chain-lengths", ok, detail});
    }

    const CyclePredicate pred = gadget_target(layout.spec);
    // (ii) packing number
    auto pk = max_edge_disjoint_packing(g, pred, 2, budget);
    rep.packing_number = pk.count;
    rep.properties.push_back({"packing", pk.count <= 1, "edge-disjoint target cycles: " + std::to_string(pk.count)});

    // (iii) every target cycle meets the wall; and uses a top-row edge
    std::vector<bool> wall(static_cast<std::size_t>(g.n()), false);
    for (const Chain& c : layout.chains)
        if (c.kind == "wall" || c.kind == "top")
            for (Vertex x : c.path) wall[static_cast<std::size_t>(x)] = true;
    std::set<Edge> top;
    for (const Edge& e : layout.top_row_edges()) top.insert(e);
    std::optional<VertexList> off_wall, no_top;
    BudgetMeter meter(budget);
    meter.require_vertices(g.n());
    visit_cycles(
        g, pred,
        [&](const Path& p) {
            ++rep.target_cycles;
            meter.require_cycles(rep.target_cycles);
            bool meets = false;
            for (Vertex x : p) meets = meets || wall[static_cast<std::size_t>(x)];
            if (!meets && !off_wall) off_wall = Cycle(p).vertices();
            bool uses_top = false;
            for (std::size_t i = 0; i < p.size() && !uses_top; ++i) uses_top = top.count(Edge(p[i], p[(i + 1) % p.size()])) > 0;
            if (!uses_top && !no_top) no_top = Cycle(p).vertices();
            return true;
        },
        meter);
    auto show = [](const VertexList& c) {
        std::string s;
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + std::to_string(c[i]);
        return s;
    };
    rep.properties.push_back({"meets-wall", !off_wall,
                              off_wall ? "target cycle avoiding the wall: " + show(*off_wall)
                                       : std::to_string(rep.target_cycles) + " target cycles all meet the wall"});
    rep.properties.push_back({"uses-top-row", !no_top,
                              no_top ? "target cycle without a top-row edge: " + show(*no_top)
                                     : "every target cycle uses a top-row edge"});
    if (with_hitting) rep.min_hitting_set = static_cast<int>(min_edge_hitting_set(g, pred, budget).size());
    return rep;
}

}  // namespace evenac
