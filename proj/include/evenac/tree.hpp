#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "evenac/graph.hpp"

namespace evenac {

/// An acyclic connected graph on vertices 0..n-1.
class Tree {
public:
    Tree() = default;

    /// Validates |E| = n-1 and connectivity; throws PreconditionError otherwise.
    static Tree from_edges(int n, const EdgeList& edges) {
        if (n < 1) throw PreconditionError("a tree needs at least one vertex");
        if (static_cast<int>(edges.size()) != n - 1) throw PreconditionError("a tree on n vertices has n-1 edges");
        Tree t;
        t.adj_.assign(static_cast<std::size_t>(n), {});
        for (const Edge& e : edges) {
            if (e.u < 0 || e.v >= n || e.u == e.v) throw PreconditionError("tree edge out of range");
            t.adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
            t.adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
        }
        for (auto& l : t.adj_) std::sort(l.begin(), l.end());
        t.edges_ = edges;
        std::sort(t.edges_.begin(), t.edges_.end());
        if (std::adjacent_find(t.edges_.begin(), t.edges_.end()) != t.edges_.end())
            throw PreconditionError("parallel tree edge");
        if (static_cast<int>(t.bfs(0).order.size()) != n) throw PreconditionError("tree is not connected");
        return t;
    }

    int n() const { return static_cast<int>(adj_.size()); }
    const EdgeList& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
    bool is_leaf(Vertex v) const { return degree(v) == 1; }

    VertexList leaves() const {
        VertexList out;
        for (Vertex v = 0; v < n(); ++v)
            if (is_leaf(v)) out.push_back(v);
        return out;
    }
    int max_degree() const {
        int d = 0;
        for (Vertex v = 0; v < n(); ++v) d = std::max(d, degree(v));
        return d;
    }

    struct Bfs {
        std::vector<Vertex> order;
        std::vector<Vertex> parent;
        std::vector<int> depth;
    };
    Bfs bfs(Vertex root) const {
        Bfs b;
        b.parent.assign(static_cast<std::size_t>(n()), -2);
        b.depth.assign(static_cast<std::size_t>(n()), -1);
        b.parent[static_cast<std::size_t>(root)] = -1;
        b.depth[static_cast<std::size_t>(root)] = 0;
        b.order.push_back(root);
        for (std::size_t i = 0; i < b.order.size(); ++i) {
            Vertex x = b.order[i];
            for (Vertex y : neighbors(x))
                if (b.parent[static_cast<std::size_t>(y)] == -2) {
                    b.parent[static_cast<std::size_t>(y)] = x;
                    b.depth[static_cast<std::size_t>(y)] = b.depth[static_cast<std::size_t>(x)] + 1;
                    b.order.push_back(y);
                }
        }
        return b;
    }

    Path path(Vertex from, Vertex to) const {
        Bfs b = bfs(to);
        Path p;
        for (Vertex x = from; x != -1; x = b.parent[static_cast<std::size_t>(x)]) p.push_back(x);
        return p;
    }

    /// A longest path by double BFS; ties go to the smallest id.
    Path longest_path() const {
        auto farthest = [&](Vertex s) {
            Bfs b = bfs(s);
            Vertex best = s;
            for (Vertex v = 0; v < n(); ++v)
                if (b.depth[static_cast<std::size_t>(v)] > b.depth[static_cast<std::size_t>(best)]) best = v;
            return best;
        };
        Vertex x = farthest(0);
        Vertex y = farthest(x);
        return path(x, y);
    }
    int diameter() const { return static_cast<int>(longest_path().size()) - 1; }

private:
    std::vector<std::vector<Vertex>> adj_;
    EdgeList edges_;
};

/// A connected piece of a tree given by its vertices and edges (both sorted).
struct Subtree {
    VertexList vertices;
    EdgeList edges;
    VertexList marked;  // the Z-vertices or leaves credited to this subtree

    friend bool operator==(const Subtree&, const Subtree&) = default;
};

/// Empty when `s` is a connected subgraph of `t` (edges inside `t`, vertex set
/// spanned by the edges), otherwise a description of the defect.
inline std::string subtree_defect(const Tree& t, const Subtree& s) {
    if (s.vertices.empty()) return "empty subtree";
    if (s.edges.size() + 1 != s.vertices.size()) return "edge count does not match a tree";
    std::set<Vertex> vs(s.vertices.begin(), s.vertices.end());
    if (vs.size() != s.vertices.size()) return "repeated vertex";
    for (const Edge& e : s.edges) {
        const auto& nb = t.neighbors(e.u);
        if (!std::binary_search(nb.begin(), nb.end(), e.v)) return "edge not in tree";
        if (!vs.count(e.u) || !vs.count(e.v)) return "edge leaves the vertex set";
    }
    // |E| = |V| - 1 and acyclic (subgraph of a tree) imply connected
    for (Vertex m : s.marked)
        if (!vs.count(m)) return "credited vertex outside subtree";
    return {};
}

/// Greedy bottom-up grouping: each vertex collects the unfinished pieces of
/// its children (in id order) and closes a subtree as soon as it holds `s`
/// vertices of Z. Pieces share at most their top vertex, so the result is
/// edge-disjoint. A vertex of Z is credited to one subtree only.
inline std::vector<Subtree> subtrees_meeting_z(const Tree& t, const VertexList& z, int s) {
    if (s < 1) throw PreconditionError("s must be at least 1");
    std::vector<bool> in_z(static_cast<std::size_t>(t.n()), false);
    for (Vertex v : z) in_z.at(static_cast<std::size_t>(v)) = true;
    Tree::Bfs b = t.bfs(0);
    struct Piece {
        VertexList vertices;
        EdgeList edges;
        VertexList marked;
    };
    std::vector<Piece> open(static_cast<std::size_t>(t.n()));
    std::vector<Subtree> out;
    auto close = [&](Piece& p) {
        Subtree st{p.vertices, p.edges, p.marked};
        std::sort(st.vertices.begin(), st.vertices.end());
        std::sort(st.edges.begin(), st.edges.end());
        std::sort(st.marked.begin(), st.marked.end());
        out.push_back(std::move(st));
    };
    for (auto it = b.order.rbegin(); it != b.order.rend(); ++it) {
        Vertex v = *it;
        Piece acc{{v}, {}, {}};
        if (in_z[static_cast<std::size_t>(v)]) acc.marked.push_back(v);
        auto flush = [&]() {
            if (static_cast<int>(acc.marked.size()) >= s) {
                close(acc);
                acc = Piece{{v}, {}, {}};
            }
        };
        flush();
        for (Vertex c : t.neighbors(v)) {
            if (b.parent[static_cast<std::size_t>(c)] != v) continue;
            Piece& child = open[static_cast<std::size_t>(c)];
            if (child.marked.empty()) continue;
            acc.vertices.insert(acc.vertices.end(), child.vertices.begin(), child.vertices.end());
            acc.edges.insert(acc.edges.end(), child.edges.begin(), child.edges.end());
            acc.edges.emplace_back(v, c);
            acc.marked.insert(acc.marked.end(), child.marked.begin(), child.marked.end());
            child = Piece{};
            flush();
        }
        open[static_cast<std::size_t>(v)] = std::move(acc);
    }
    return out;
}

/// Vertex-disjoint subtrees each holding three leaves of `t`: repeatedly take
/// the deepest vertex whose current subtree holds at least three original
/// leaves (smallest id among the deepest), cut that subtree off, then prune
/// leaves that were not leaves of `t`. The root is recomputed each round as
/// the smallest vertex of degree at least two.
inline std::vector<Subtree> three_leaf_subtrees(const Tree& t) {
    if (t.max_degree() < 3) throw PreconditionError("three-leaf packing needs a vertex of degree at least 3");
    const int n = t.n();
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = t.degree(v);
    std::vector<Subtree> out;
    auto kill = [&](Vertex v) {
        alive[static_cast<std::size_t>(v)] = false;
        for (Vertex y : t.neighbors(v))
            if (alive[static_cast<std::size_t>(y)]) --deg[static_cast<std::size_t>(y)];
    };
    while (true) {
        Vertex root = -1;
        for (Vertex v = 0; v < n && root < 0; ++v)
            if (alive[static_cast<std::size_t>(v)] && deg[static_cast<std::size_t>(v)] >= 2) root = v;
        if (root < 0) break;
        // rooted traversal of the alive part
        std::vector<Vertex> order{root}, parent(static_cast<std::size_t>(n), -2);
        std::vector<int> depth(static_cast<std::size_t>(n), 0);
        parent[static_cast<std::size_t>(root)] = -1;
        for (std::size_t i = 0; i < order.size(); ++i)
            for (Vertex y : t.neighbors(order[i]))
                if (alive[static_cast<std::size_t>(y)] && parent[static_cast<std::size_t>(y)] == -2) {
                    parent[static_cast<std::size_t>(y)] = order[i];
                    depth[static_cast<std::size_t>(y)] = depth[static_cast<std::size_t>(order[i])] + 1;
                    order.push_back(y);
                }
        std::vector<int> leaves_below(static_cast<std::size_t>(n), 0);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            Vertex v = *it;
            if (t.is_leaf(v)) leaves_below[static_cast<std::size_t>(v)] += 1;
            if (Vertex p = parent[static_cast<std::size_t>(v)]; p >= 0)
                leaves_below[static_cast<std::size_t>(p)] += leaves_below[static_cast<std::size_t>(v)];
        }
        Vertex pick = -1;
        for (Vertex v : order) {
            if (leaves_below[static_cast<std::size_t>(v)] < 3) continue;
            if (pick < 0 || depth[static_cast<std::size_t>(v)] > depth[static_cast<std::size_t>(pick)] ||
                (depth[static_cast<std::size_t>(v)] == depth[static_cast<std::size_t>(pick)] && v < pick))
                pick = v;
        }
        if (pick < 0) break;
        Subtree st;
        std::vector<Vertex> stack{pick};
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            st.vertices.push_back(x);
            if (t.is_leaf(x)) st.marked.push_back(x);
            for (Vertex y : t.neighbors(x))
                if (alive[static_cast<std::size_t>(y)] && parent[static_cast<std::size_t>(y)] == x) {
                    st.edges.emplace_back(x, y);
                    stack.push_back(y);
                }
        }
        std::sort(st.vertices.begin(), st.vertices.end());
        std::sort(st.edges.begin(), st.edges.end());
        std::sort(st.marked.begin(), st.marked.end());
        for (Vertex x : st.vertices) kill(x);
        out.push_back(std::move(st));
        // prune leaves that are not leaves of the original tree
        bool changed = true;
        while (changed) {
            changed = false;
            for (Vertex v = 0; v < n; ++v)
                if (alive[static_cast<std::size_t>(v)] && !t.is_leaf(v) && deg[static_cast<std::size_t>(v)] <= 1) {
                    kill(v);
                    changed = true;
                }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Degree / three-leaf / long-path trichotomy

struct MaxDegreeWitness {
    Vertex vertex;
};
struct ThreeLeafWitness {
    std::vector<Subtree> subtrees;
};
struct LongPathWitness {
    Path path;
};
using TrichotomyWitness = std::variant<MaxDegreeWitness, ThreeLeafWitness, LongPathWitness>;

inline std::string witness_tag(const TrichotomyWitness& w) {
    switch (w.index()) {
        case 0: return "max-degree";
        case 1: return "three-leaf";
        default: return "long-path";
    }
}

/// Independent checker: empty string when `w` proves its outcome on `t`.
inline std::string witness_defect(const Tree& t, int alpha, int beta, int gamma, const TrichotomyWitness& w) {
    if (auto* d = std::get_if<MaxDegreeWitness>(&w)) {
        if (d->vertex < 0 || d->vertex >= t.n()) return "vertex out of range";
        return t.degree(d->vertex) >= alpha ? "" : "degree below alpha";
    }
    if (auto* p = std::get_if<LongPathWitness>(&w)) {
        if (static_cast<int>(p->path.size()) - 1 < gamma) return "path shorter than gamma";
        std::set<Vertex> seen;
        for (std::size_t i = 0; i < p->path.size(); ++i) {
            if (!seen.insert(p->path[i]).second) return "path repeats a vertex";
            if (i > 0) {
                const auto& nb = t.neighbors(p->path[i - 1]);
                if (!std::binary_search(nb.begin(), nb.end(), p->path[i])) return "path uses a non-edge";
            }
        }
        return {};
    }
    const auto& tl = std::get<ThreeLeafWitness>(w);
    if (static_cast<int>(tl.subtrees.size()) < beta) return "fewer than beta subtrees";
    std::set<Vertex> used;
    for (const Subtree& s : tl.subtrees) {
        if (auto d = subtree_defect(t, s); !d.empty()) return d;
        int leaves = 0;
        for (Vertex x : s.vertices) {
            if (!used.insert(x).second) return "subtrees are not vertex-disjoint";
            if (t.is_leaf(x)) ++leaves;
        }
        if (leaves < 3) return "subtree holds fewer than three leaves";
    }
    return {};
}

/// Checks in order: a vertex of degree >= alpha (smallest id of maximum
/// degree), beta three-leaf subtrees, a path of length >= gamma.
inline TrichotomyWitness tree_trichotomy(const Tree& t, int alpha, int beta, int gamma) {
    if (alpha < 1 || beta < 1 || gamma < 1) throw PreconditionError("alpha, beta, gamma must be positive");
    if (static_cast<long long>(t.n()) < static_cast<long long>(alpha) * beta * gamma)
        throw PreconditionError("tree has fewer than alpha*beta*gamma vertices");
    Vertex best = 0;
    for (Vertex v = 1; v < t.n(); ++v)
        if (t.degree(v) > t.degree(best)) best = v;
    if (t.degree(best) >= alpha) return MaxDegreeWitness{best};
    if (t.max_degree() >= 3) {
        auto subs = three_leaf_subtrees(t);
        if (static_cast<int>(subs.size()) >= beta) {
            subs.resize(static_cast<std::size_t>(beta));
            return ThreeLeafWitness{std::move(subs)};
        }
    }
    Path p = t.longest_path();
    if (static_cast<int>(p.size()) - 1 >= gamma) return LongPathWitness{std::move(p)};
    throw PreconditionError("no trichotomy outcome holds for this tree and parameters");
}

}  // namespace evenac
