#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stack>
#include <string>
#include <utility>
#include <vector>

#include "evenac/graph.hpp"

namespace evenac {

class DisconnectedError : public Error {
public:
    DisconnectedError(std::vector<VertexList> comps)
        : Error(describe(comps)), components_(std::move(comps)) {}
    const std::vector<VertexList>& components() const { return components_; }

private:
    static std::string describe(const std::vector<VertexList>& comps) {
        std::string s = "graph is disconnected; components:";
        for (const auto& c : comps) {
            s += " {";
            for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
            s += "}";
        }
        return s;
    }
    std::vector<VertexList> components_;
};

/// Blocks and cutvertices of a connected graph arranged as a tree. Tree nodes
/// 0..blocks()-1 are blocks, the following ones are cutvertices in ascending
/// vertex order.
class BlockTree {
public:
    BlockTree() = default;

    int block_count() const { return static_cast<int>(blocks_.size()); }
    int node_count() const { return static_cast<int>(blocks_.size() + cutvertices_.size()); }
    bool is_block(int node) const { return node < block_count(); }

    const std::vector<VertexList>& blocks() const { return blocks_; }
    const VertexList& block(int b) const { return blocks_.at(static_cast<std::size_t>(b)); }
    const EdgeList& block_edges(int b) const { return block_edges_.at(static_cast<std::size_t>(b)); }
    const VertexList& cutvertices() const { return cutvertices_; }

    Vertex cutvertex_of(int node) const { return cutvertices_.at(static_cast<std::size_t>(node - block_count())); }
    std::optional<int> cut_node(Vertex v) const {
        auto it = std::lower_bound(cutvertices_.begin(), cutvertices_.end(), v);
        if (it == cutvertices_.end() || *it != v) return std::nullopt;
        return block_count() + static_cast<int>(it - cutvertices_.begin());
    }
    bool is_cutvertex(Vertex v) const { return cut_node(v).has_value(); }

    const std::vector<int>& neighbors(int node) const { return tree_adj_.at(static_cast<std::size_t>(node)); }
    int degree(int node) const { return static_cast<int>(neighbors(node).size()); }

    /// (block node, cutvertex node) incidences.
    std::vector<std::pair<int, int>> tree_edges() const {
        std::vector<std::pair<int, int>> out;
        for (int b = 0; b < block_count(); ++b)
            for (int c : neighbors(b)) out.emplace_back(b, c);
        return out;
    }

    int block_of_edge(const Edge& e) const { return edge_block_.at(e); }

    std::vector<int> blocks_containing(Vertex v) const {
        std::vector<int> out;
        for (int b = 0; b < block_count(); ++b)
            if (std::binary_search(blocks_[static_cast<std::size_t>(b)].begin(), blocks_[static_cast<std::size_t>(b)].end(), v))
                out.push_back(b);
        return out;
    }

    bool block_contains(int b, Vertex v) const {
        const auto& bl = blocks_.at(static_cast<std::size_t>(b));
        return std::binary_search(bl.begin(), bl.end(), v);
    }

    /// Vertices of all blocks among `nodes` (cutvertex nodes contribute their vertex).
    VertexList vertices_of(const std::vector<int>& nodes) const {
        VertexList out;
        for (int x : nodes) {
            if (is_block(x))
                out.insert(out.end(), block(x).begin(), block(x).end());
            else
                out.push_back(cutvertex_of(x));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Tree path between two nodes (inclusive).
    std::vector<int> tree_path(int from, int to) const {
        std::vector<int> parent(static_cast<std::size_t>(node_count()), -2);
        std::vector<int> q{from};
        parent[static_cast<std::size_t>(from)] = -1;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (int y : neighbors(q[i]))
                if (parent[static_cast<std::size_t>(y)] == -2) {
                    parent[static_cast<std::size_t>(y)] = q[i];
                    q.push_back(y);
                }
        std::vector<int> p;
        for (int x = to; x != -1; x = parent[static_cast<std::size_t>(x)]) p.push_back(x);
        std::reverse(p.begin(), p.end());
        return p;
    }

    /// Nodes of the component of the tree minus `cut` that contains `start`.
    std::vector<int> branch(int cut, int start) const {
        std::vector<bool> seen(static_cast<std::size_t>(node_count()), false);
        seen[static_cast<std::size_t>(cut)] = true;
        seen[static_cast<std::size_t>(start)] = true;
        std::vector<int> out{start};
        for (std::size_t i = 0; i < out.size(); ++i)
            for (int y : neighbors(out[i]))
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = true;
                    out.push_back(y);
                }
        std::sort(out.begin(), out.end());
        return out;
    }

    static BlockTree build(std::vector<VertexList> blocks, std::vector<EdgeList> block_edges) {
        std::vector<std::size_t> order(blocks.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return blocks[l] < blocks[r]; });
        BlockTree t;
        for (std::size_t i : order) {
            t.blocks_.push_back(blocks[i]);
            std::sort(block_edges[i].begin(), block_edges[i].end());
            t.block_edges_.push_back(block_edges[i]);
        }
        std::map<Vertex, int> count;
        for (const auto& b : t.blocks_)
            for (Vertex v : b) ++count[v];
        for (auto& [v, c] : count)
            if (c >= 2) t.cutvertices_.push_back(v);
        t.tree_adj_.assign(static_cast<std::size_t>(t.node_count()), {});
        for (int b = 0; b < t.block_count(); ++b)
            for (Vertex v : t.blocks_[static_cast<std::size_t>(b)])
                if (auto c = t.cut_node(v)) {
                    t.tree_adj_[static_cast<std::size_t>(b)].push_back(*c);
                    t.tree_adj_[static_cast<std::size_t>(*c)].push_back(b);
                }
        for (auto& nb : t.tree_adj_) std::sort(nb.begin(), nb.end());
        for (int b = 0; b < t.block_count(); ++b)
            for (const Edge& e : t.block_edges_[static_cast<std::size_t>(b)]) t.edge_block_[e] = b;
        return t;
    }

private:
    std::vector<VertexList> blocks_;
    std::vector<EdgeList> block_edges_;
    VertexList cutvertices_;
    std::vector<std::vector<int>> tree_adj_;
    std::map<Edge, int> edge_block_;
};

/// Blocks of G (minus `removed`, if given) by lowpoint DFS. Bridges are
/// blocks of their own. The remaining graph must be connected.
inline BlockTree block_tree(const LabeledGraph& g, std::optional<Vertex> removed = std::nullopt) {
    const int n = g.n();
    std::vector<bool> keep(static_cast<std::size_t>(n), true);
    if (removed) keep.at(static_cast<std::size_t>(*removed)) = false;
    auto comps = components(g, keep);
    if (comps.size() > 1) throw DisconnectedError(comps);
    if (comps.empty()) return BlockTree{};
    if (comps[0].size() == 1) return BlockTree::build({{comps[0][0]}}, {{}});

    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> next(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    std::vector<Edge> estack;
    std::vector<VertexList> blocks;
    std::vector<EdgeList> bedges;
    int timer = 0;
    Vertex root = comps[0][0];
    std::stack<Vertex> st;
    st.push(root);
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    while (!st.empty()) {
        Vertex x = st.top();
        const auto ux = static_cast<std::size_t>(x);
        const auto& nb = g.neighbors(x);
        if (next[ux] < nb.size()) {
            Vertex y = nb[next[ux]++];
            const auto uy = static_cast<std::size_t>(y);
            if (!keep[uy]) continue;
            if (disc[uy] < 0) {
                parent[uy] = x;
                disc[uy] = low[uy] = timer++;
                estack.emplace_back(x, y);
                st.push(y);
            } else if (y != parent[ux] && disc[uy] < disc[ux]) {
                estack.emplace_back(x, y);
                low[ux] = std::min(low[ux], disc[uy]);
            }
            continue;
        }
        st.pop();
        Vertex p = parent[ux];
        if (p < 0) continue;
        const auto up = static_cast<std::size_t>(p);
        low[up] = std::min(low[up], low[ux]);
        if (low[ux] >= disc[up]) {
            Edge stop(p, x);
            EdgeList es;
            VertexList vs;
            while (true) {
                Edge e = estack.back();
                estack.pop_back();
                es.push_back(e);
                vs.push_back(e.u);
                vs.push_back(e.v);
                if (e == stop) break;
            }
            std::sort(vs.begin(), vs.end());
            vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
            blocks.push_back(std::move(vs));
            bedges.push_back(std::move(es));
        }
    }
    return BlockTree::build(std::move(blocks), std::move(bedges));
}

}  // namespace evenac
