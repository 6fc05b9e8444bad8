#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "evenac/budget.hpp"
#include "evenac/flow.hpp"
#include "evenac/graph.hpp"

namespace evenac {

/// Closed description of a target cycle class: evenness, meeting A, a
/// minimum length and an optional residue class of the length.
struct CyclePredicate {
    bool even = false;
    bool meets_a = false;
    int min_length = 3;
    std::optional<std::pair<int, int>> modulus;  // (m, residue)

    static CyclePredicate even_a() { return {true, true, 3, std::nullopt}; }

    bool accepts_length(int len) const {
        if (len < min_length) return false;
        if (even && len % 2 != 0) return false;
        if (modulus && len % modulus->first != modulus->second) return false;
        return true;
    }
    bool accepts(const LabeledGraph& g, const Cycle& c) const {
        return accepts_length(c.length()) && (!meets_a || c.meets(g));
    }

    /// Tokens joined by commas: even, A, min=<l>, mod=<m>:<r>; "all" when empty.
    std::string to_string() const {
        std::vector<std::string> t;
        if (even) t.push_back("even");
        if (meets_a) t.push_back("A");
        if (min_length > 3) t.push_back("min=" + std::to_string(min_length));
        if (modulus) t.push_back("mod=" + std::to_string(modulus->first) + ":" + std::to_string(modulus->second));
        if (t.empty()) return "all";
        std::string s;
        for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i];
        return s;
    }

    static CyclePredicate parse(const std::string& text) {
        CyclePredicate p;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty() || tok == "all") continue;
            if (tok == "even") {
                p.even = true;
            } else if (tok == "A" || tok == "a") {
                p.meets_a = true;
            } else if (tok.rfind("min=", 0) == 0) {
                p.min_length = std::max(3, std::stoi(tok.substr(4)));
            } else if (tok.rfind("mod=", 0) == 0) {
                auto colon = tok.find(':');
                int m = std::stoi(tok.substr(4, colon == std::string::npos ? std::string::npos : colon - 4));
                int r = colon == std::string::npos ? 0 : std::stoi(tok.substr(colon + 1));
                if (m < 1 || r < 0 || r >= m) throw PreconditionError("bad modulus token '" + tok + "'");
                p.modulus = std::pair{m, r};
            } else {
                throw PreconditionError("unknown predicate token '" + tok + "'");
            }
        }
        return p;
    }

    friend bool operator==(const CyclePredicate&, const CyclePredicate&) = default;
};

namespace detail {

// Vertices of the 2-connected pieces through `root` inside the subgraph on
// `alive`, as edge-adjacency restricted to that block. Each entry of the
// result is one block through root (adjacency lists over global ids).
inline std::vector<std::vector<std::vector<Vertex>>> blocks_through(const LabeledGraph& g, Vertex root,
                                                                    const std::vector<bool>& alive) {
    const int n = g.n();
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    std::vector<std::size_t> next(static_cast<std::size_t>(n), 0);
    std::vector<Edge> estack;
    std::vector<std::vector<std::vector<Vertex>>> out;
    int timer = 0;
    std::vector<Vertex> st{root};
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    while (!st.empty()) {
        Vertex x = st.back();
        const auto ux = static_cast<std::size_t>(x);
        const auto& nb = g.neighbors(x);
        if (next[ux] < nb.size()) {
            Vertex y = nb[next[ux]++];
            const auto uy = static_cast<std::size_t>(y);
            if (!alive[uy]) continue;
            if (disc[uy] < 0) {
                parent[uy] = x;
                disc[uy] = low[uy] = timer++;
                estack.emplace_back(x, y);
                st.push_back(y);
            } else if (y != parent[ux] && disc[uy] < disc[ux]) {
                estack.emplace_back(x, y);
                low[ux] = std::min(low[ux], disc[uy]);
            }
            continue;
        }
        st.pop_back();
        Vertex p = parent[ux];
        if (p < 0) continue;
        const auto up = static_cast<std::size_t>(p);
        low[up] = std::min(low[up], low[ux]);
        if (low[ux] >= disc[up]) {
            Edge stop(p, x);
            EdgeList es;
            bool through_root = false;
            while (true) {
                Edge e = estack.back();
                estack.pop_back();
                es.push_back(e);
                through_root = through_root || e.has(root);
                if (e == stop) break;
            }
            if (!through_root || es.size() < 3) continue;
            std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
            for (const Edge& e : es) {
                adj[static_cast<std::size_t>(e.u)].push_back(e.v);
                adj[static_cast<std::size_t>(e.v)].push_back(e.u);
            }
            for (auto& l : adj) std::sort(l.begin(), l.end());
            out.push_back(std::move(adj));
        }
    }
    return out;
}

}  // namespace detail

/// Calls `visit(path)` for each cycle matching `pred`, where `path` lists the
/// cycle's vertices starting at its root. Each cycle is reported once.
/// Returning false from `visit` stops the search; the return value tells
/// whether the enumeration ran to completion.
template <class Visit>
bool visit_cycles(const LabeledGraph& g, const CyclePredicate& pred, Visit&& visit, BudgetMeter& meter) {
    const int n = g.n();
    VertexList roots;
    if (pred.meets_a)
        roots = g.a();
    else
        for (Vertex x = 0; x < n; ++x) roots.push_back(x);
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    std::vector<bool> on_path(static_cast<std::size_t>(n), false);
    Path path;
    for (Vertex r : roots) {
        for (auto& adj : detail::blocks_through(g, r, alive)) {
            path.assign(1, r);
            on_path[static_cast<std::size_t>(r)] = true;
            // iterative DFS: idx[i] is the next neighbour slot of path[i]
            std::vector<std::size_t> idx{0};
            while (!path.empty()) {
                Vertex x = path.back();
                auto& slot = idx.back();
                const auto& nb = adj[static_cast<std::size_t>(x)];
                if (slot >= nb.size()) {
                    on_path[static_cast<std::size_t>(x)] = false;
                    path.pop_back();
                    idx.pop_back();
                    continue;
                }
                Vertex y = nb[slot++];
                if (y == r) {
                    if (path.size() >= 3 && path[1] < x && pred.accepts_length(static_cast<int>(path.size()))) {
                        if (!visit(std::as_const(path))) {
                            for (Vertex v : path) on_path[static_cast<std::size_t>(v)] = false;
                            return false;
                        }
                    }
                    continue;
                }
                if (on_path[static_cast<std::size_t>(y)]) continue;
                meter.expand();
                on_path[static_cast<std::size_t>(y)] = true;
                path.push_back(y);
                idx.push_back(0);
            }
        }
        alive[static_cast<std::size_t>(r)] = false;
    }
    return true;
}

/// All cycles satisfying `pred`, in canonical order (length, then vertex
/// list), truncated at `cap`. Graphs above the vertex cap are only searched
/// when a cap is given; the result is then the first `cap` cycles found.
inline std::vector<Cycle> enumerate_cycles(const LabeledGraph& g, const CyclePredicate& pred,
                                           std::optional<std::size_t> cap = std::nullopt,
                                           const OracleBudget& budget = {}) {
    BudgetMeter meter(budget);
    const bool exact = g.n() <= budget.max_vertices;
    if (!exact && !cap) meter.require_vertices(g.n());
    std::vector<Cycle> out;
    if (cap && *cap == 0) return out;
    visit_cycles(
        g, pred,
        [&](const Path& p) {
            out.emplace_back(p);
            meter.require_cycles(static_cast<std::int64_t>(out.size()));
            return exact || out.size() < *cap;
        },
        meter);
    std::sort(out.begin(), out.end());
    if (cap && out.size() > *cap) out.resize(*cap);
    return out;
}

/// Some cycle satisfying `pred`, if any exists.
inline std::optional<Cycle> find_cycle(const LabeledGraph& g, const CyclePredicate& pred,
                                       const OracleBudget& budget = {}) {
    BudgetMeter meter(budget);
    std::optional<Cycle> found;
    visit_cycles(
        g, pred,
        [&](const Path& p) {
            found = Cycle(p);
            return false;
        },
        meter);
    return found;
}

// ---------------------------------------------------------------------------
// Theta graphs

class InternalError : public Error {
public:
    using Error::Error;
};

/// Two branch vertices joined by three internally disjoint paths; each path
/// runs from branch_u to branch_v. a_flags[i] tells whether path i has a
/// vertex in A (branch vertices included).
struct ThetaWitness {
    Vertex branch_u = -1;
    Vertex branch_v = -1;
    std::array<Path, 3> paths;
    std::array<bool, 3> a_flags{false, false, false};

    int length(int i) const { return static_cast<int>(paths[static_cast<std::size_t>(i)].size()) - 1; }

    /// Empty string when the structure is a valid theta graph, else the reason.
    std::string defect() const {
        if (branch_u == branch_v) return "branch vertices coincide";
        int unit = 0;
        std::set<Vertex> interior;
        for (const Path& p : paths) {
            if (p.size() < 2 || p.front() != branch_u || p.back() != branch_v) return "path does not join branch vertices";
            if (p.size() == 2) ++unit;
            for (std::size_t i = 1; i + 1 < p.size(); ++i) {
                if (p[i] == branch_u || p[i] == branch_v) return "path revisits a branch vertex";
                if (!interior.insert(p[i]).second) return "paths are not internally disjoint";
            }
        }
        if (unit > 1) return "more than one unsubdivided edge";
        return {};
    }

    void compute_flags(const LabeledGraph& g) {
        for (std::size_t i = 0; i < 3; ++i)
            a_flags[i] = std::any_of(paths[i].begin(), paths[i].end(), [&](Vertex x) { return g.in_a(x); });
    }

    EdgeList edges() const {
        EdgeList out;
        for (const Path& p : paths)
            for (const Edge& e : path_edges(p)) out.push_back(e);
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline Cycle union_cycle(const ThetaWitness& t, int i, int j) {
    const Path& p = t.paths[static_cast<std::size_t>(i)];
    const Path& q = t.paths[static_cast<std::size_t>(j)];
    VertexList v(p.begin(), p.end());
    for (std::size_t k = q.size() - 1; k-- > 1;) v.push_back(q[k]);
    return Cycle(v);
}

/// Even A-cycle formed by two of the theta's paths. Requires at least two
/// A-meeting paths; the smallest index pair with even total length wins.
inline Cycle even_a_cycle_from_theta(const ThetaWitness& theta) {
    if (auto d = theta.defect(); !d.empty()) throw PreconditionError("not a theta graph: " + d);
    int flagged = 0;
    for (bool f : theta.a_flags) flagged += f ? 1 : 0;
    if (flagged < 2) throw PreconditionError("fewer than two subdivided edges meet A");
    static constexpr std::array<std::pair<int, int>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (auto [i, j] : kPairs) {
        bool meets = theta.a_flags[static_cast<std::size_t>(i)] || theta.a_flags[static_cast<std::size_t>(j)];
        if (meets && (theta.length(i) + theta.length(j)) % 2 == 0) return union_cycle(theta, i, j);
    }
    throw InternalError("three path lengths without an even pairwise sum");
}

/// Theta formed by a cycle C and a C-path P: branch vertices are the ends of
/// P; paths are P and the two arcs of C.
inline ThetaWitness theta_from_cycle_and_path(const LabeledGraph& g, const Cycle& c, const Path& p) {
    const VertexList& cv = c.vertices();
    if (p.size() < 2) throw PreconditionError("C-path needs at least one edge");
    Vertex x = p.front(), y = p.back();
    if (x == y) throw PreconditionError("C-path endpoints coincide");
    auto pos = [&](Vertex v) -> int {
        auto it = std::find(cv.begin(), cv.end(), v);
        return it == cv.end() ? -1 : static_cast<int>(it - cv.begin());
    };
    int px = pos(x), py = pos(y);
    if (px < 0 || py < 0) throw PreconditionError("C-path endpoints must lie on the cycle");
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
        if (pos(p[i]) >= 0) throw PreconditionError("C-path touches the cycle internally");
    std::set<Edge> cedges;
    for (const Edge& e : c.edges()) cedges.insert(e);
    for (const Edge& e : path_edges(p))
        if (cedges.count(e)) throw PreconditionError("C-path uses an edge of the cycle");
    const int len = c.length();
    Path fwd, bwd;
    for (int i = px;; i = (i + 1) % len) {
        fwd.push_back(cv[static_cast<std::size_t>(i)]);
        if (i == py) break;
    }
    for (int i = px;; i = (i - 1 + len) % len) {
        bwd.push_back(cv[static_cast<std::size_t>(i)]);
        if (i == py) break;
    }
    ThetaWitness t;
    t.branch_u = x;
    t.branch_v = y;
    t.paths = {p, fwd, bwd};
    t.compute_flags(g);
    if (auto d = t.defect(); !d.empty()) throw PreconditionError("cycle plus path is not a theta graph: " + d);
    return t;
}

// ---------------------------------------------------------------------------
// a-b-c paths

struct SeparatorVertex {
    Vertex x;
    friend bool operator==(const SeparatorVertex&, const SeparatorVertex&) = default;
};

using AbcResult = std::variant<Path, SeparatorVertex>;

/// A path a ... b ... c, or a vertex other than b separating b from {a, c}.
/// Two internally disjoint b-{a,c} paths come from a unit vertex-capacity
/// flow; if both reach the same end the rerouting path Q is spliced in at its
/// first vertex (seen from the other end) on the two paths.
inline AbcResult abc_path(const LabeledGraph& g, Vertex a, Vertex b, Vertex c,
                          const std::vector<bool>* blocked = nullptr) {
    if (a == b || b == c || a == c) throw PreconditionError("a, b, c must be distinct");
    std::vector<bool> sinks(static_cast<std::size_t>(g.n()), false);
    sinks[static_cast<std::size_t>(a)] = sinks[static_cast<std::size_t>(c)] = true;
    FanPaths fan = fan_paths(g, b, sinks, 2, /*distinct_ends=*/false, blocked);
    if (fan.paths.size() < 2) {
        if (fan.separator.empty()) {
            // b cannot reach {a, c} at all: a separates trivially
            return SeparatorVertex{a};
        }
        return SeparatorVertex{fan.separator.front()};
    }
    Path p1 = fan.paths[0], p2 = fan.paths[1];
    if (p1.back() != p2.back()) {
        if (p1.back() == c) std::swap(p1, p2);
        Path out(p1.rbegin(), p1.rend());
        out.insert(out.end(), p2.begin() + 1, p2.end());
        return out;
    }
    // both paths end in `end`; route from the other endpoint to them
    const Vertex end = p1.back();
    const Vertex other = end == a ? c : a;
    std::vector<bool> on12(static_cast<std::size_t>(g.n()), false);
    for (Vertex v : p1) on12[static_cast<std::size_t>(v)] = true;
    for (Vertex v : p2) on12[static_cast<std::size_t>(v)] = true;
    auto allowed = [&](Vertex v) { return v != end && (!blocked || !(*blocked)[static_cast<std::size_t>(v)]); };
    // Q runs from `other` to b avoiding `end`; its first vertex on P1 ∪ P2 is where we splice
    auto q = bfs_path(g, other, allowed, [&](Vertex v) { return on12[static_cast<std::size_t>(v)]; });
    if (!q) return SeparatorVertex{end};
    const Vertex hit = q->back();
    auto at = [](const Path& p, Vertex v) { return std::find(p.begin(), p.end(), v); };
    if (at(p1, hit) == p1.end()) std::swap(p1, p2);
    // other Q hit P1 b P2 end
    Path out = *q;
    for (auto it = std::make_reverse_iterator(at(p1, hit)); it != p1.rend(); ++it) out.push_back(*it);
    out.insert(out.end(), p2.begin() + 1, p2.end());
    if (other == c) std::reverse(out.begin(), out.end());
    return out;
}

/// Brute-force check used by tests: does removing x disconnect b from both a and c?
inline bool separates(const LabeledGraph& g, Vertex x, Vertex a, Vertex b, Vertex c) {
    if (x == b) return false;
    auto reach = bfs_path(g, b, [&](Vertex v) { return v != x; }, [&](Vertex v) { return (v == a || v == c) && v != x; });
    return !reach.has_value();
}

}  // namespace evenac
