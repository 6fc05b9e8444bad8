#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace evenac {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

using Vertex = int;
using VertexList = std::vector<Vertex>;
using Path = VertexList;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

    Vertex other(Vertex x) const { return x == u ? v : u; }
    bool has(Vertex x) const { return x == u || x == v; }
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeList = std::vector<Edge>;

inline EdgeList path_edges(const Path& p) {
    EdgeList out;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) out.emplace_back(p[i], p[i + 1]);
    return out;
}

/// Simple undirected graph on dense ids 0..n-1 with a distinguished vertex
/// set A and an optional hitting vertex z. Values are immutable once built;
/// all surgery returns fresh graphs.
class LabeledGraph {
public:
    LabeledGraph() = default;

    explicit LabeledGraph(int n) : adj_(static_cast<std::size_t>(n)), in_a_(static_cast<std::size_t>(n), false) {}

    LabeledGraph(int n, const EdgeList& edges, const VertexList& a = {}, std::optional<Vertex> z = std::nullopt)
        : LabeledGraph(n) {
        for (const Edge& e : edges) add_edge(e.u, e.v);
        for (Vertex x : a) mark_a(x);
        if (z) set_z(*z);
    }

    int n() const { return static_cast<int>(adj_.size()); }
    int m() const { return static_cast<int>(edges_.size()); }

    const std::vector<Vertex>& neighbors(Vertex x) const { return adj_.at(static_cast<std::size_t>(x)); }
    int degree(Vertex x) const { return static_cast<int>(neighbors(x).size()); }

    bool has_edge(Vertex x, Vertex y) const {
        if (x < 0 || y < 0 || x >= n() || y >= n()) return false;
        const auto& nb = adj_[static_cast<std::size_t>(x)];
        return std::binary_search(nb.begin(), nb.end(), y);
    }
    bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }

    /// Edges in lexicographic order; index in this list is the edge id.
    const EdgeList& edges() const { return edges_; }

    int edge_id(Vertex x, Vertex y) const {
        Edge e(x, y);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) return -1;
        return static_cast<int>(it - edges_.begin());
    }

    bool in_a(Vertex x) const { return x >= 0 && x < n() && in_a_[static_cast<std::size_t>(x)]; }
    VertexList a() const {
        VertexList out;
        for (Vertex x = 0; x < n(); ++x)
            if (in_a_[static_cast<std::size_t>(x)]) out.push_back(x);
        return out;
    }
    const std::optional<Vertex>& z() const { return z_; }

    // Builders. Used while constructing a graph; they keep the canonical form.
    void add_edge(Vertex x, Vertex y) {
        check_vertex(x);
        check_vertex(y);
        if (x == y) throw PreconditionError("loop at vertex " + std::to_string(x));
        if (has_edge(x, y)) throw PreconditionError("parallel edge " + std::to_string(x) + "-" + std::to_string(y));
        insert_sorted(adj_[static_cast<std::size_t>(x)], y);
        insert_sorted(adj_[static_cast<std::size_t>(y)], x);
        Edge e(x, y);
        edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
    }
    void mark_a(Vertex x) {
        check_vertex(x);
        in_a_[static_cast<std::size_t>(x)] = true;
    }
    void set_a(const VertexList& a) {
        std::fill(in_a_.begin(), in_a_.end(), false);
        for (Vertex x : a) mark_a(x);
    }
    void set_z(std::optional<Vertex> z) {
        if (z) check_vertex(*z);
        z_ = z;
    }

    friend bool operator==(const LabeledGraph& l, const LabeledGraph& r) {
        return l.adj_ == r.adj_ && l.in_a_ == r.in_a_ && l.z_ == r.z_;
    }

private:
    void check_vertex(Vertex x) const {
        if (x < 0 || x >= n()) throw PreconditionError("vertex id " + std::to_string(x) + " out of range");
    }
    static void insert_sorted(std::vector<Vertex>& v, Vertex x) { v.insert(std::lower_bound(v.begin(), v.end(), x), x); }

    std::vector<std::vector<Vertex>> adj_;
    std::vector<bool> in_a_;
    std::optional<Vertex> z_;
    EdgeList edges_;
};

/// A cycle stored in canonical form: rotated to its minimum vertex and
/// oriented toward the smaller of that vertex's two cycle neighbours.
class Cycle {
public:
    Cycle() = default;
    explicit Cycle(VertexList vertices) : vertices_(canonicalize(std::move(vertices))) {}

    const VertexList& vertices() const { return vertices_; }
    int length() const { return static_cast<int>(vertices_.size()); }
    bool even() const { return vertices_.size() % 2 == 0; }
    bool contains(Vertex x) const { return std::find(vertices_.begin(), vertices_.end(), x) != vertices_.end(); }

    EdgeList edges() const {
        EdgeList out;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            out.emplace_back(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
        std::sort(out.begin(), out.end());
        return out;
    }

    bool meets(const LabeledGraph& g) const {
        return std::any_of(vertices_.begin(), vertices_.end(), [&](Vertex x) { return g.in_a(x); });
    }

    /// Canonical order: shorter first, then lexicographic on the vertex list.
    friend bool operator<(const Cycle& l, const Cycle& r) {
        if (l.length() != r.length()) return l.length() < r.length();
        return l.vertices_ < r.vertices_;
    }
    friend bool operator==(const Cycle& l, const Cycle& r) { return l.vertices_ == r.vertices_; }

    static VertexList canonicalize(VertexList v) {
        if (v.size() < 3) return v;
        auto it = std::min_element(v.begin(), v.end());
        std::rotate(v.begin(), it, v.end());
        if (v[v.size() - 1] < v[1]) std::reverse(v.begin() + 1, v.end());
        return v;
    }

private:
    VertexList vertices_;
};

/// Structural validity of a cycle inside a host graph: length >= 3, distinct
/// vertices, consecutive pairs (and last-first) are edges.
inline bool is_cycle_of(const LabeledGraph& g, const VertexList& v) {
    if (v.size() < 3) return false;
    std::set<Vertex> seen(v.begin(), v.end());
    if (seen.size() != v.size()) return false;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!g.has_edge(v[i], v[(i + 1) % v.size()])) return false;
    return true;
}

inline bool is_path_of(const LabeledGraph& g, const Path& p) {
    if (p.empty()) return false;
    std::set<Vertex> seen(p.begin(), p.end());
    if (seen.size() != p.size()) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!g.has_edge(p[i], p[i + 1])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Graph file format

inline LabeledGraph parse_graph(std::istream& in) {
    std::string raw;
    int lineno = 0;
    std::optional<std::pair<int, int>> header;
    LabeledGraph g;
    int edge_lines = 0;
    bool have_z = false;
    auto read_id = [&](std::istringstream& ss, const char* what) {
        long long x;
        if (!(ss >> x)) throw ParseError(lineno, std::string("expected ") + what);
        if (!header) throw ParseError(lineno, "record before header line");
        if (x < 0 || x >= header->first)
            throw ParseError(lineno, "vertex id " + std::to_string(x) + " out of range");
        return static_cast<Vertex>(x);
    };
    auto expect_end = [&](std::istringstream& ss) {
        std::string rest;
        if (ss >> rest) throw ParseError(lineno, "trailing token '" + rest + "'");
    };
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ss(raw);
        std::string tag;
        if (!(ss >> tag)) continue;
        if (tag == "p") {
            if (header) throw ParseError(lineno, "duplicate header");
            long long n, m;
            if (!(ss >> n >> m) || n < 0 || m < 0) throw ParseError(lineno, "malformed header");
            expect_end(ss);
            header = {static_cast<int>(n), static_cast<int>(m)};
            g = LabeledGraph(static_cast<int>(n));
        } else if (tag == "e") {
            Vertex u = read_id(ss, "edge endpoint");
            Vertex v = read_id(ss, "edge endpoint");
            expect_end(ss);
            if (u == v) throw ParseError(lineno, "loop at vertex " + std::to_string(u));
            if (g.has_edge(u, v))
                throw ParseError(lineno, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
            g.add_edge(u, v);
            ++edge_lines;
        } else if (tag == "a") {
            Vertex x = read_id(ss, "vertex id");
            expect_end(ss);
            g.mark_a(x);
        } else if (tag == "z") {
            Vertex x = read_id(ss, "vertex id");
            expect_end(ss);
            if (have_z) throw ParseError(lineno, "multiple z lines");
            have_z = true;
            g.set_z(x);
        } else {
            throw ParseError(lineno, "unknown record '" + tag + "'");
        }
    }
    if (!header) throw ParseError(lineno, "missing header line 'p <n> <m>'");
    if (edge_lines != header->second)
        throw ParseError(lineno, "header declares " + std::to_string(header->second) + " edges, found " +
                                     std::to_string(edge_lines));
    return g;
}

inline LabeledGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

inline std::string serialize_graph(const LabeledGraph& g) {
    std::ostringstream out;
    out << "p " << g.n() << ' ' << g.m() << '\n';
    for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
    for (Vertex x : g.a()) out << "a " << x << '\n';
    if (g.z()) out << "z " << *g.z() << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Basic queries

/// BFS shortest path from `s` to any vertex satisfying `is_target`, using only
/// vertices accepted by `allowed` (the source is always allowed).
template <class Allowed, class Target>
std::optional<Path> bfs_path(const LabeledGraph& g, Vertex s, Allowed allowed, Target is_target) {
    std::vector<Vertex> parent(static_cast<std::size_t>(g.n()), -2);
    std::queue<Vertex> q;
    parent[static_cast<std::size_t>(s)] = -1;
    q.push(s);
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop();
        if (is_target(x)) {
            Path p;
            for (Vertex y = x; y != -1; y = parent[static_cast<std::size_t>(y)]) p.push_back(y);
            std::reverse(p.begin(), p.end());
            return p;
        }
        for (Vertex y : g.neighbors(x)) {
            if (parent[static_cast<std::size_t>(y)] != -2 || !allowed(y)) continue;
            parent[static_cast<std::size_t>(y)] = x;
            q.push(y);
        }
    }
    return std::nullopt;
}

inline std::optional<Path> shortest_path(const LabeledGraph& g, Vertex s, Vertex t) {
    return bfs_path(g, s, [](Vertex) { return true; }, [t](Vertex x) { return x == t; });
}

/// Connected components restricted to vertices with `keep[v]` true.
inline std::vector<VertexList> components(const LabeledGraph& g, const std::vector<bool>& keep) {
    std::vector<VertexList> out;
    std::vector<bool> seen(static_cast<std::size_t>(g.n()), false);
    for (Vertex s = 0; s < g.n(); ++s) {
        if (!keep[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)]) continue;
        VertexList comp{s};
        seen[static_cast<std::size_t>(s)] = true;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (Vertex y : g.neighbors(comp[i]))
                if (keep[static_cast<std::size_t>(y)] && !seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = true;
                    comp.push_back(y);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline bool is_connected(const LabeledGraph& g) {
    if (g.n() == 0) return true;
    return components(g, std::vector<bool>(static_cast<std::size_t>(g.n()), true)).size() == 1;
}

inline LabeledGraph remove_edges(const LabeledGraph& g, const EdgeList& drop) {
    std::set<Edge> d(drop.begin(), drop.end());
    LabeledGraph out(g.n());
    for (const Edge& e : g.edges())
        if (!d.count(e)) out.add_edge(e.u, e.v);
    out.set_a(g.a());
    out.set_z(g.z());
    return out;
}

/// Keeps all ids; edges incident to removed vertices are dropped.
inline LabeledGraph remove_vertices(const LabeledGraph& g, const std::vector<bool>& removed) {
    LabeledGraph out(g.n());
    for (const Edge& e : g.edges())
        if (!removed[static_cast<std::size_t>(e.u)] && !removed[static_cast<std::size_t>(e.v)]) out.add_edge(e.u, e.v);
    out.set_a(g.a());
    out.set_z(g.z());
    return out;
}

/// Result of surgery: the new graph, the original id of every new vertex (-1
/// for vertices created by the surgery) and, per new edge, the path of
/// original vertices it stands for (new vertices appear as -1 inside it).
struct Surgery {
    LabeledGraph graph;
    std::vector<Vertex> origin;
    std::map<Edge, Path> edge_origin;
};

/// Subgraph induced on `keep` (sorted ids), compacted to 0..|keep|-1.
inline Surgery induced_subgraph(const LabeledGraph& g, const VertexList& keep_sorted, const EdgeList* only = nullptr) {
    std::vector<Vertex> to_new(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < keep_sorted.size(); ++i) to_new[static_cast<std::size_t>(keep_sorted[i])] = static_cast<Vertex>(i);
    Surgery s{LabeledGraph(static_cast<int>(keep_sorted.size())), keep_sorted, {}};
    auto take = [&](const Edge& e) {
        Vertex a = to_new[static_cast<std::size_t>(e.u)], b = to_new[static_cast<std::size_t>(e.v)];
        if (a < 0 || b < 0) return;
        s.graph.add_edge(a, b);
        s.edge_origin[Edge(a, b)] = {e.u, e.v};
    };
    if (only)
        for (const Edge& e : *only) take(e);
    else
        for (const Edge& e : g.edges()) take(e);
    for (Vertex x : keep_sorted)
        if (g.in_a(x)) s.graph.mark_a(to_new[static_cast<std::size_t>(x)]);
    if (g.z() && to_new[static_cast<std::size_t>(*g.z())] >= 0) s.graph.set_z(to_new[static_cast<std::size_t>(*g.z())]);
    return s;
}

/// Replaces edge `e` by a path of length `t` through t-1 fresh vertices
/// (appended after the existing ids, not in A).
inline Surgery subdivide_edge(const LabeledGraph& g, Edge e, int t) {
    if (!g.has_edge(e)) throw PreconditionError("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " absent");
    if (t < 1) throw PreconditionError("subdivision length must be positive");
    Surgery s{LabeledGraph(g.n() + t - 1), {}, {}};
    for (Vertex x = 0; x < g.n(); ++x) s.origin.push_back(x);
    for (int i = 0; i < t - 1; ++i) s.origin.push_back(-1);
    for (const Edge& f : g.edges()) {
        if (f == e) continue;
        s.graph.add_edge(f.u, f.v);
        s.edge_origin[f] = {f.u, f.v};
    }
    Path chain{e.u};
    for (int i = 0; i < t - 1; ++i) chain.push_back(g.n() + i);
    chain.push_back(e.v);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        s.graph.add_edge(chain[i], chain[i + 1]);
        s.edge_origin[Edge(chain[i], chain[i + 1])] = {e.u, e.v};
    }
    s.graph.set_a(g.a());
    s.graph.set_z(g.z());
    return s;
}

/// Repeatedly replaces an unprotected degree-2 vertex (smallest id first) by
/// an edge between its neighbours; a step that would create a parallel edge
/// is skipped. The hitting vertex z is never suppressed.
inline Surgery suppress_degree_two(const LabeledGraph& g, const std::vector<bool>& protect) {
    const int n = g.n();
    std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n));
    std::map<Edge, Path> paths;
    for (const Edge& e : g.edges()) {
        adj[static_cast<std::size_t>(e.u)].insert(e.v);
        adj[static_cast<std::size_t>(e.v)].insert(e.u);
        paths[e] = {e.u, e.v};
    }
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    auto oriented = [&](Vertex from, Vertex to) {
        Path p = paths.at(Edge(from, to));
        if (p.front() != from) std::reverse(p.begin(), p.end());
        return p;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex x = 0; x < n; ++x) {
            const auto ux = static_cast<std::size_t>(x);
            if (!alive[ux] || (ux < protect.size() && protect[ux]) || g.z() == x) continue;
            if (adj[ux].size() != 2) continue;
            Vertex a = *adj[ux].begin(), b = *adj[ux].rbegin();
            if (adj[static_cast<std::size_t>(a)].count(b)) continue;
            Path left = oriented(a, x), right = oriented(x, b);
            left.insert(left.end(), right.begin() + 1, right.end());
            paths.erase(Edge(a, x));
            paths.erase(Edge(x, b));
            paths[Edge(a, b)] = left;
            adj[static_cast<std::size_t>(a)].erase(x);
            adj[static_cast<std::size_t>(b)].erase(x);
            adj[static_cast<std::size_t>(a)].insert(b);
            adj[static_cast<std::size_t>(b)].insert(a);
            adj[ux].clear();
            alive[ux] = false;
            changed = true;
        }
    }
    std::vector<Vertex> to_new(static_cast<std::size_t>(n), -1);
    Surgery s;
    for (Vertex x = 0; x < n; ++x)
        if (alive[static_cast<std::size_t>(x)]) {
            to_new[static_cast<std::size_t>(x)] = static_cast<Vertex>(s.origin.size());
            s.origin.push_back(x);
        }
    s.graph = LabeledGraph(static_cast<int>(s.origin.size()));
    for (auto& [e, p] : paths) {
        Edge ne(to_new[static_cast<std::size_t>(e.u)], to_new[static_cast<std::size_t>(e.v)]);
        s.graph.add_edge(ne.u, ne.v);
        Path q = p;
        if (to_new[static_cast<std::size_t>(q.front())] != ne.u) std::reverse(q.begin(), q.end());
        s.edge_origin[ne] = q;
    }
    for (Vertex x = 0; x < n; ++x)
        if (alive[static_cast<std::size_t>(x)] && g.in_a(x)) s.graph.mark_a(to_new[static_cast<std::size_t>(x)]);
    if (g.z()) s.graph.set_z(to_new[static_cast<std::size_t>(*g.z())]);
    return s;
}

inline Surgery suppress_degree_two(const LabeledGraph& g, const VertexList& protect) {
    std::vector<bool> p(static_cast<std::size_t>(g.n()), false);
    for (Vertex x : protect) p.at(static_cast<std::size_t>(x)) = true;
    return suppress_degree_two(g, p);
}

}  // namespace evenac
