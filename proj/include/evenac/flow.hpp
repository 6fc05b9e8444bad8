#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <vector>

#include "evenac/graph.hpp"

namespace evenac {

// Augmenting-path max flow on small integral networks.
class FlowNetwork {
public:
    static constexpr int kInf = std::numeric_limits<int>::max() / 4;

    explicit FlowNetwork(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {}

    int add_arc(int from, int to, int cap) {
        arcs_.push_back({to, cap, 0, head_[static_cast<std::size_t>(from)]});
        head_[static_cast<std::size_t>(from)] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({from, 0, 0, head_[static_cast<std::size_t>(to)]});
        head_[static_cast<std::size_t>(to)] = static_cast<int>(arcs_.size()) - 1;
        return static_cast<int>(arcs_.size()) - 2;
    }

    /// Pushes flow until `limit` units or no augmenting path remains.
    int max_flow(int s, int t, int limit = kInf) {
        int total = 0;
        while (total < limit) {
            std::vector<int> via(head_.size(), -1);
            std::vector<bool> seen(head_.size(), false);
            std::queue<int> q;
            q.push(s);
            seen[static_cast<std::size_t>(s)] = true;
            while (!q.empty() && !seen[static_cast<std::size_t>(t)]) {
                int x = q.front();
                q.pop();
                for (int a = head_[static_cast<std::size_t>(x)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
                    const Arc& arc = arcs_[static_cast<std::size_t>(a)];
                    if (arc.cap - arc.flow <= 0 || seen[static_cast<std::size_t>(arc.to)]) continue;
                    seen[static_cast<std::size_t>(arc.to)] = true;
                    via[static_cast<std::size_t>(arc.to)] = a;
                    q.push(arc.to);
                }
            }
            if (!seen[static_cast<std::size_t>(t)]) break;
            for (int x = t; x != s;) {
                int a = via[static_cast<std::size_t>(x)];
                arcs_[static_cast<std::size_t>(a)].flow += 1;
                arcs_[static_cast<std::size_t>(a ^ 1)].flow -= 1;
                x = arcs_[static_cast<std::size_t>(a ^ 1)].to;
            }
            ++total;
        }
        return total;
    }

    std::vector<bool> residual_reachable(int s) const {
        std::vector<bool> seen(head_.size(), false);
        std::vector<int> st{s};
        seen[static_cast<std::size_t>(s)] = true;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int a = head_[static_cast<std::size_t>(x)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
                const Arc& arc = arcs_[static_cast<std::size_t>(a)];
                if (arc.cap - arc.flow > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
                    seen[static_cast<std::size_t>(arc.to)] = true;
                    st.push_back(arc.to);
                }
            }
        }
        return seen;
    }

    int flow_on(int arc) const { return arcs_[static_cast<std::size_t>(arc)].flow; }
    void add_flow(int arc, int f) {
        arcs_[static_cast<std::size_t>(arc)].flow += f;
        arcs_[static_cast<std::size_t>(arc ^ 1)].flow -= f;
    }
    int target(int arc) const { return arcs_[static_cast<std::size_t>(arc)].to; }
    int first_arc(int node) const { return head_[static_cast<std::size_t>(node)]; }
    int next_arc(int arc) const { return arcs_[static_cast<std::size_t>(arc)].next; }
    bool forward(int arc) const { return (arc & 1) == 0; }

private:
    struct Arc {
        int to, cap, flow, next;
    };
    std::vector<int> head_;
    std::vector<Arc> arcs_;
};

struct EdgeDisjointPaths {
    std::vector<Path> paths;
    EdgeList min_cut;  // filled when fewer than `limit` paths exist
};

/// Up to `limit` pairwise edge-disjoint s-t paths in g; when fewer exist the
/// minimum s-t edge cut is returned alongside.
inline EdgeDisjointPaths edge_disjoint_paths(const LabeledGraph& g, Vertex s, Vertex t, int limit) {
    FlowNetwork net(g.n());
    std::vector<std::pair<int, int>> arc_of;  // per edge id: (u->v arc, v->u arc)
    for (const Edge& e : g.edges()) arc_of.emplace_back(net.add_arc(e.u, e.v, 1), net.add_arc(e.v, e.u, 1));
    int f = net.max_flow(s, t, limit);
    // cancel opposing flow on the same edge
    for (auto& [a, b] : arc_of) {
        int c = std::min(net.flow_on(a), net.flow_on(b));
        if (c > 0) {
            net.add_flow(a, -c);
            net.add_flow(b, -c);
        }
    }
    EdgeDisjointPaths out;
    for (int i = 0; i < f; ++i) {
        Path p{s};
        std::vector<bool> on(static_cast<std::size_t>(g.n()), false);
        on[static_cast<std::size_t>(s)] = true;
        Vertex x = s;
        while (x != t) {
            int a = net.first_arc(x);
            for (; a >= 0; a = net.next_arc(a))
                if (net.forward(a) && net.flow_on(a) > 0) break;
            net.add_flow(a, -1);
            x = net.target(a);
            if (on[static_cast<std::size_t>(x)]) {  // drop the closed loop
                while (p.back() != x) {
                    on[static_cast<std::size_t>(p.back())] = false;
                    p.pop_back();
                }
            } else {
                on[static_cast<std::size_t>(x)] = true;
                p.push_back(x);
            }
        }
        out.paths.push_back(std::move(p));
    }
    if (f < limit) {
        // recompute residual on a fresh run to read off the cut
        FlowNetwork fresh(g.n());
        for (const Edge& e : g.edges()) {
            fresh.add_arc(e.u, e.v, 1);
            fresh.add_arc(e.v, e.u, 1);
        }
        fresh.max_flow(s, t);
        auto side = fresh.residual_reachable(s);
        for (const Edge& e : g.edges())
            if (side[static_cast<std::size_t>(e.u)] != side[static_cast<std::size_t>(e.v)]) out.min_cut.push_back(e);
    }
    std::sort(out.paths.begin(), out.paths.end());
    return out;
}

struct FanPaths {
    std::vector<Path> paths;    // each from s to a sink, interior avoiding all sinks
    VertexList separator;       // minimum separator when fewer than `limit` paths exist
};

/// Up to `limit` paths from s to the vertex set `sinks` that pairwise share
/// only s (and, when `distinct_ends` is false, possibly their final sink).
/// Vertices with `blocked` set are unusable.
inline FanPaths fan_paths(const LabeledGraph& g, Vertex s, const std::vector<bool>& sinks, int limit,
                          bool distinct_ends, const std::vector<bool>* blocked = nullptr) {
    const int n = g.n();
    auto in = [](Vertex v) { return 2 * v; };
    auto out = [](Vertex v) { return 2 * v + 1; };
    const int super = 2 * n;
    auto usable = [&](Vertex v) { return v == s || !blocked || !(*blocked)[static_cast<std::size_t>(v)]; };
    auto build = [&]() {
        FlowNetwork net(2 * n + 1);
        for (Vertex v = 0; v < n; ++v) {
            if (!usable(v)) continue;
            const bool sink = sinks[static_cast<std::size_t>(v)] && v != s;
            int cap = (v == s || (sink && !distinct_ends)) ? FlowNetwork::kInf : 1;
            net.add_arc(in(v), out(v), cap);
            if (sink) net.add_arc(out(v), super, FlowNetwork::kInf);
        }
        for (const Edge& e : g.edges())
            for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                if (!usable(x) || !usable(y) || y == s) continue;
                if (sinks[static_cast<std::size_t>(x)] && x != s) continue;  // paths stop at their first sink
                net.add_arc(out(x), in(y), 1);
            }
        return net;
    };
    FlowNetwork net = build();
    int f = net.max_flow(out(s), super, limit);
    FanPaths res;
    for (int i = 0; i < f; ++i) {
        Path p{s};
        int node = out(s);
        while (node != super) {
            int a = net.first_arc(node);
            for (; a >= 0; a = net.next_arc(a))
                if (net.forward(a) && net.flow_on(a) > 0) break;
            net.add_flow(a, -1);
            node = net.target(a);
            if (node != super && node % 2 == 0) p.push_back(node / 2);
        }
        res.paths.push_back(std::move(p));
    }
    if (f < limit) {
        FlowNetwork full = build();
        full.max_flow(out(s), super);
        auto side = full.residual_reachable(out(s));
        std::set<Vertex> sep;
        for (Vertex v = 0; v < n; ++v) {
            if (!usable(v) || v == s) continue;
            if (side[static_cast<std::size_t>(in(v))] && !side[static_cast<std::size_t>(out(v))]) sep.insert(v);
        }
        for (const Edge& e : g.edges())
            for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                if (!usable(x) || !usable(y) || y == s) continue;
                if (side[static_cast<std::size_t>(out(x))] && !side[static_cast<std::size_t>(in(y))]) sep.insert(y);
            }
        res.separator.assign(sep.begin(), sep.end());
    }
    return res;
}

}  // namespace evenac
