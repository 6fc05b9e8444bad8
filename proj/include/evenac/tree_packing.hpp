#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "evenac/pipeline.hpp"

namespace evenac {

/// The block tree of G - z with every leaf outside the kept A-blocks pruned
/// and every remaining degree-2 node outside them suppressed. Node i of
/// `tree` is block-tree node `bt_node[i]`.
struct ReducedTree {
    std::vector<int> bt_node;
    Tree tree;
    bool empty() const { return bt_node.empty(); }
};

inline ReducedTree build_reduced_tree(const PipelineState& s) {
    const BlockTree& bt = s.bt;
    const int nn = bt.node_count();
    std::vector<bool> keep(static_cast<std::size_t>(nn), false);
    for (int b : s.a_s) keep[static_cast<std::size_t>(b)] = true;
    for (int b : s.a_sbar) keep[static_cast<std::size_t>(b)] = true;
    std::vector<std::set<int>> adj(static_cast<std::size_t>(nn));
    for (int x = 0; x < nn; ++x) adj[static_cast<std::size_t>(x)].insert(bt.neighbors(x).begin(), bt.neighbors(x).end());
    std::vector<bool> alive(static_cast<std::size_t>(nn), true);
    ReducedTree rt;
    if (std::none_of(keep.begin(), keep.end(), [](bool b) { return b; })) return rt;

    std::vector<int> queue;
    for (int x = 0; x < nn; ++x)
        if (!keep[static_cast<std::size_t>(x)] && adj[static_cast<std::size_t>(x)].size() <= 1) queue.push_back(x);
    while (!queue.empty()) {
        int x = queue.back();
        queue.pop_back();
        if (!alive[static_cast<std::size_t>(x)]) continue;
        alive[static_cast<std::size_t>(x)] = false;
        for (int y : adj[static_cast<std::size_t>(x)]) {
            adj[static_cast<std::size_t>(y)].erase(x);
            if (!keep[static_cast<std::size_t>(y)] && adj[static_cast<std::size_t>(y)].size() <= 1) queue.push_back(y);
        }
        adj[static_cast<std::size_t>(x)].clear();
    }
    for (int x = 0; x < nn; ++x) {
        if (!alive[static_cast<std::size_t>(x)] || keep[static_cast<std::size_t>(x)]) continue;
        auto& ax = adj[static_cast<std::size_t>(x)];
        if (ax.size() != 2) continue;
        int p = *ax.begin(), q = *std::next(ax.begin());
        adj[static_cast<std::size_t>(p)].erase(x);
        adj[static_cast<std::size_t>(q)].erase(x);
        adj[static_cast<std::size_t>(p)].insert(q);
        adj[static_cast<std::size_t>(q)].insert(p);
        ax.clear();
        alive[static_cast<std::size_t>(x)] = false;
    }
    std::vector<int> id(static_cast<std::size_t>(nn), -1);
    for (int x = 0; x < nn; ++x)
        if (alive[static_cast<std::size_t>(x)]) {
            id[static_cast<std::size_t>(x)] = static_cast<int>(rt.bt_node.size());
            rt.bt_node.push_back(x);
        }
    EdgeList edges;
    for (int x : rt.bt_node)
        for (int y : adj[static_cast<std::size_t>(x)])
            if (x < y) edges.emplace_back(id[static_cast<std::size_t>(x)], id[static_cast<std::size_t>(y)]);
    rt.tree = Tree::from_edges(static_cast<int>(rt.bt_node.size()), edges);
    return rt;
}

/// Empty when `rt` is consistent with `s`: kept blocks present, leaves and
/// degree-2 nodes all kept, and each tree edge a block-tree path through
/// removed nodes only.
inline std::string reduced_tree_defect(const PipelineState& s, const ReducedTree& rt) {
    std::set<int> keep(s.a_s.begin(), s.a_s.end());
    keep.insert(s.a_sbar.begin(), s.a_sbar.end());
    std::set<int> present(rt.bt_node.begin(), rt.bt_node.end());
    for (int b : keep)
        if (!present.count(b)) return "kept A-block missing";
    for (int i = 0; i < rt.tree.n(); ++i) {
        int x = rt.bt_node[static_cast<std::size_t>(i)];
        if (rt.tree.degree(i) <= 2 && !keep.count(x) && rt.tree.n() > 1) return "unkept node of degree at most 2";
        for (int j : rt.tree.neighbors(i)) {
            auto path = s.bt.tree_path(x, rt.bt_node[static_cast<std::size_t>(j)]);
            for (std::size_t p = 1; p + 1 < path.size(); ++p)
                if (present.count(path[p])) return "tree edge passes through a kept node";
        }
    }
    return {};
}

namespace detail {

/// A path from x through some A-vertex to z whose vertices other than x and
/// z lie in the region mask of `nodes`.
inline Path route_through_a(const PipelineState& s, const std::vector<int>& nodes, Vertex x) {
    const LabeledGraph& g = s.g;
    Mask m = s.region_mask(nodes);
    m[static_cast<std::size_t>(x)] = true;
    m[static_cast<std::size_t>(s.z)] = true;
    Mask blocked = complement(m);
    for (Vertex a = 0; a < g.n(); ++a) {
        if (!m[static_cast<std::size_t>(a)] || !g.in_a(a) || a == x || a == s.z) continue;
        AbcResult r = abc_path(g, x, a, s.z, &blocked);
        if (auto* p = std::get_if<Path>(&r)) return *p;
    }
    if (g.in_a(x)) {
        auto p = bfs_path(g, x, [&](Vertex v) { return m[static_cast<std::size_t>(v)]; }, [&](Vertex v) { return v == s.z; });
        if (p) return *p;
    }
    throw InternalError("no path to z through A inside a block-tree branch");
}

/// Three paths from attachment vertices of the block-tree node `center` to z
/// through A, joined inside `center` into a theta graph.
inline ThetaWitness claw_theta(const PipelineState& s, int center, const std::array<Vertex, 3>& xs,
                               const std::array<std::vector<int>, 3>& regions) {
    std::array<Path, 3> q;
    for (int j = 0; j < 3; ++j)
        q[static_cast<std::size_t>(j)] = route_through_a(s, regions[static_cast<std::size_t>(j)], xs[static_cast<std::size_t>(j)]);
    if (!s.bt.is_block(center)) return make_theta(s.g, xs[0], s.z, q[0], q[1], q[2]);
    auto sp = spider(s.g, s.block_mask(center), xs);
    if (!sp) throw InternalError("block is not connected");
    std::array<Path, 3> p;
    for (int j = 0; j < 3; ++j)
        p[static_cast<std::size_t>(j)] = concat(sp->legs[static_cast<std::size_t>(j)], q[static_cast<std::size_t>(j)]);
    return make_theta(s.g, sp->center, s.z, p[0], p[1], p[2]);
}

inline Vertex attachment(const BlockTree& bt, int center, int first_step) {
    return bt.is_block(center) ? bt.cutvertex_of(first_step) : bt.cutvertex_of(center);
}

inline std::vector<int> expand_path(const PipelineState& s, const ReducedTree& rt, const Path& tp) {
    std::vector<int> out;
    for (std::size_t i = 0; i + 1 < tp.size(); ++i) {
        auto seg = s.bt.tree_path(rt.bt_node[static_cast<std::size_t>(tp[i])], rt.bt_node[static_cast<std::size_t>(tp[i + 1])]);
        out.insert(out.end(), seg.begin() + (out.empty() ? 0 : 1), seg.end());
    }
    if (out.empty() && !tp.empty()) out.push_back(rt.bt_node[static_cast<std::size_t>(tp[0])]);
    return out;
}

inline Vertex tree_median(const Tree& t, Vertex a, Vertex b, Vertex c) {
    Path ab = t.path(a, b), ac = t.path(a, c), bc = t.path(b, c);
    for (Vertex x : ab)
        if (std::find(ac.begin(), ac.end(), x) != ac.end() && std::find(bc.begin(), bc.end(), x) != bc.end()) return x;
    throw InternalError("three tree vertices without a median");
}

inline Certificate claw_packing(const PipelineState& s, const ReducedTree& rt, const std::vector<Subtree>& subs) {
    const int k = s.k;
    const BlockTree& bt = s.bt;
    std::vector<Cycle> cycles;
    for (int i = 0; i < k; ++i) {
        const Subtree& st = subs.at(static_cast<std::size_t>(i));
        VertexList leaves;
        for (Vertex x : st.vertices)
            if (rt.tree.is_leaf(x)) leaves.push_back(x);
        if (leaves.size() < 3) throw PreconditionError("subtree holds fewer than three leaves of the reduced tree");
        Vertex m = tree_median(rt.tree, leaves[0], leaves[1], leaves[2]);
        const int center = rt.bt_node[static_cast<std::size_t>(m)];
        std::array<Vertex, 3> xs{};
        std::array<std::vector<int>, 3> regions;
        for (int j = 0; j < 3; ++j) {
            std::vector<int> bp = expand_path(s, rt, rt.tree.path(m, leaves[static_cast<std::size_t>(j)]));
            xs[static_cast<std::size_t>(j)] = attachment(bt, center, bp[1]);
            std::vector<int> region(bp.begin() + 1, bp.end());
            const int leaf_bt = bp.back();
            const int before = bp[bp.size() - 2];
            for (int y : bt.neighbors(leaf_bt))
                if (y != before) {
                    auto br = bt.branch(leaf_bt, y);
                    region.insert(region.end(), br.begin(), br.end());
                }
            regions[static_cast<std::size_t>(j)] = region;
        }
        cycles.push_back(even_a_cycle_from_theta(claw_theta(s, center, xs, regions)));
    }
    check_packing(s.g, cycles);
    std::sort(cycles.begin(), cycles.end());
    return Certificate::packing(k, cycles);
}

/// Depth-first spanning tree of g[mask] from `root`, as edges in graph ids.
inline EdgeList dfs_tree(const LabeledGraph& g, const Mask& mask, Vertex root) {
    EdgeList out;
    std::vector<bool> seen(static_cast<std::size_t>(g.n()), false);
    std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
    seen[static_cast<std::size_t>(root)] = true;
    while (!stack.empty()) {
        auto& [v, i] = stack.back();
        const auto& nb = g.neighbors(v);
        if (i == nb.size()) {
            stack.pop_back();
            continue;
        }
        Vertex y = nb[i++];
        if (!mask[static_cast<std::size_t>(y)] || seen[static_cast<std::size_t>(y)]) continue;
        seen[static_cast<std::size_t>(y)] = true;
        out.emplace_back(v, y);
        stack.push_back({y, 0});
    }
    return out;
}

inline EdgeList bfs_tree(const LabeledGraph& g, const Mask& mask, Vertex root) {
    EdgeList out;
    std::vector<bool> seen(static_cast<std::size_t>(g.n()), false);
    std::vector<Vertex> q{root};
    seen[static_cast<std::size_t>(root)] = true;
    for (std::size_t h = 0; h < q.size(); ++h)
        for (Vertex y : g.neighbors(q[h]))
            if (mask[static_cast<std::size_t>(y)] && !seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = true;
                out.emplace_back(q[h], y);
                q.push_back(y);
            }
    return out;
}

inline Certificate star_packing(const PipelineState& s, const ReducedTree& rt, Vertex tx) {
    const int k = s.k;
    const BlockTree& bt = s.bt;
    const LabeledGraph& g = s.g;
    const int center = rt.bt_node[static_cast<std::size_t>(tx)];
    std::vector<Vertex> xs;
    std::vector<std::vector<int>> regions;
    for (Vertex ty : rt.tree.neighbors(tx)) {
        if (static_cast<int>(xs.size()) == 3 * k) break;
        auto bp = bt.tree_path(center, rt.bt_node[static_cast<std::size_t>(ty)]);
        xs.push_back(attachment(bt, center, bp[1]));
        regions.push_back(bt.branch(center, bp[1]));
    }
    if (static_cast<int>(xs.size()) < 3 * k) throw PreconditionError("star centre has degree below 3k");
    std::vector<Cycle> cycles;
    auto route3 = [&](const std::array<std::size_t, 3>& tr) {
        std::array<Path, 3> q;
        for (int j = 0; j < 3; ++j)
            q[static_cast<std::size_t>(j)] = route_through_a(s, regions[tr[static_cast<std::size_t>(j)]], xs[tr[static_cast<std::size_t>(j)]]);
        return q;
    };
    if (!bt.is_block(center)) {
        for (int t = 0; t < k; ++t) {
            std::array<std::size_t, 3> tr{static_cast<std::size_t>(3 * t), static_cast<std::size_t>(3 * t + 1), static_cast<std::size_t>(3 * t + 2)};
            auto q = route3(tr);
            cycles.push_back(even_a_cycle_from_theta(make_theta(g, xs[0], s.z, q[0], q[1], q[2])));
        }
    } else {
        // spanning tree of the centre block plus one pendant per attachment;
        // pendants are grouped three at a time into edge-disjoint subtrees and
        // each theta takes its legs inside its own subtree
        const Mask bm = s.block_mask(center);
        const VertexList& bv = bt.block(center);
        std::map<Vertex, int> local;
        for (std::size_t i = 0; i < bv.size(); ++i) local[bv[i]] = static_cast<int>(i);
        const int nb = static_cast<int>(bv.size());
        for (int attempt = 0; attempt < 2 && cycles.empty(); ++attempt) {
            EdgeList ge = attempt == 0 ? dfs_tree(g, bm, bv.front()) : bfs_tree(g, bm, bv.front());
            EdgeList te;
            for (const Edge& e : ge) te.emplace_back(local[e.u], local[e.v]);
            VertexList pend;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                te.emplace_back(local[xs[i]], nb + static_cast<int>(i));
                pend.push_back(nb + static_cast<int>(i));
            }
            Tree t = Tree::from_edges(nb + static_cast<int>(xs.size()), te);
            auto subs = subtrees_meeting_z(t, pend, 3);
            if (static_cast<int>(subs.size()) < k) continue;
            for (int i = 0; i < k; ++i) {
                const auto& mk = subs[static_cast<std::size_t>(i)].marked;
                std::array<std::size_t, 3> tr{static_cast<std::size_t>(mk[0] - nb), static_cast<std::size_t>(mk[1] - nb),
                                              static_cast<std::size_t>(mk[2] - nb)};
                auto q = route3(tr);
                std::array<Vertex, 3> loc{local[xs[tr[0]]], local[xs[tr[1]]], local[xs[tr[2]]]};
                Vertex med = tree_median(t, loc[0], loc[1], loc[2]);
                std::array<Path, 3> p;
                for (int j = 0; j < 3; ++j) {
                    Path leg;
                    for (Vertex x : t.path(med, loc[static_cast<std::size_t>(j)])) leg.push_back(bv[static_cast<std::size_t>(x)]);
                    p[static_cast<std::size_t>(j)] = concat(leg, q[static_cast<std::size_t>(j)]);
                }
                cycles.push_back(even_a_cycle_from_theta(make_theta(g, bv[static_cast<std::size_t>(med)], s.z, p[0], p[1], p[2])));
            }
        }
        if (cycles.empty()) throw InternalError("could not group star attachments into k edge-disjoint subtrees of three");
    }
    check_packing(g, cycles);
    std::sort(cycles.begin(), cycles.end());
    return Certificate::packing(k, cycles);
}

inline Certificate long_path_packing(const PipelineState& s, const ReducedTree& rt, const Path& tpath) {
    const int k = s.k;
    const BlockTree& bt = s.bt;
    const LabeledGraph& g = s.g;
    const Tree& t = rt.tree;
    std::vector<std::size_t> branchy;
    for (std::size_t i = 0; i < tpath.size(); ++i)
        if (t.degree(tpath[i]) >= 3) branchy.push_back(i);
    if (static_cast<int>(branchy.size()) >= 3 * k) {
        std::set<Vertex> on_path(tpath.begin(), tpath.end());
        std::vector<Subtree> subs;
        for (int gi = 0; gi < k; ++gi) {
            std::set<Vertex> vs;
            std::set<Edge> es;
            Subtree st;
            std::size_t lo = branchy[static_cast<std::size_t>(3 * gi)], hi = branchy[static_cast<std::size_t>(3 * gi + 2)];
            for (std::size_t i = lo; i <= hi; ++i) {
                vs.insert(tpath[i]);
                if (i > lo) es.insert(Edge(tpath[i - 1], tpath[i]));
            }
            for (int j = 0; j < 3; ++j) {
                Vertex v = tpath[branchy[static_cast<std::size_t>(3 * gi + j)]];
                Vertex prev = v, cur = -1;
                for (Vertex y : t.neighbors(v))
                    if (!on_path.count(y)) {
                        cur = y;
                        break;
                    }
                while (true) {
                    vs.insert(cur);
                    es.insert(Edge(prev, cur));
                    if (t.is_leaf(cur)) break;
                    Vertex nxt = -1;
                    for (Vertex y : t.neighbors(cur))
                        if (y != prev) {
                            nxt = y;
                            break;
                        }
                    prev = cur;
                    cur = nxt;
                }
                st.marked.push_back(cur);
            }
            st.vertices.assign(vs.begin(), vs.end());
            st.edges.assign(es.begin(), es.end());
            subs.push_back(std::move(st));
        }
        return claw_packing(s, rt, subs);
    }

    std::vector<int> bpath = expand_path(s, rt, tpath);
    std::vector<std::size_t> kpos;
    {
        std::set<int> two;
        for (std::size_t i = 1; i + 1 < tpath.size(); ++i)
            if (t.degree(tpath[i]) == 2) two.insert(rt.bt_node[static_cast<std::size_t>(tpath[i])]);
        for (std::size_t i = 0; i < bpath.size() && static_cast<int>(kpos.size()) < 12 * k; ++i)
            if (two.count(bpath[i])) kpos.push_back(i);
    }
    if (static_cast<int>(kpos.size()) < 12 * k) throw PreconditionError("long path has fewer than 12k degree-2 nodes");
    for (std::size_t i : kpos)
        if (!bt.is_block(bpath[i]) || i == 0 || i + 1 == bpath.size()) throw InternalError("kept node on the path is not an interior block");

    auto through_block = [&](int b, Vertex from, Vertex to, bool via_a) {
        Mask bm = s.block_mask(b);
        if (via_a) {
            VertexList av = s.a_in_block(b);
            bool touches = false;
            for (Vertex a : av)
                if (a == from || a == to) touches = true;
            for (Vertex a : av) {
                if (a == from || a == to) continue;
                Mask blocked = complement(bm);
                AbcResult r = abc_path(g, from, a, to, &blocked);
                if (auto* p = std::get_if<Path>(&r)) return *p;
            }
            if (!touches) throw InternalError("cannot route through the A-vertex of a block");
        }
        auto p = bfs_path(g, from, [&](Vertex v) { return bm[static_cast<std::size_t>(v)]; }, [&](Vertex v) { return v == to; });
        if (!p) throw InternalError("block without a path between its cutvertices");
        return *p;
    };

    struct Piece {
        Path p;
        Path q;  // from a vertex of p to z
    };
    std::vector<Piece> pieces;
    std::size_t start = kpos[0] - 1;
    for (int sidx = 0; sidx < 3 * k; ++sidx) {
        const std::size_t i1 = kpos[static_cast<std::size_t>(4 * sidx)], i2 = kpos[static_cast<std::size_t>(4 * sidx + 1)],
                          i3 = kpos[static_cast<std::size_t>(4 * sidx + 2)], i4 = kpos[static_cast<std::size_t>(4 * sidx + 3)];
        const std::size_t end = i4 + 1;
        Piece pc;
        pc.p = {bt.cutvertex_of(bpath[start])};
        for (std::size_t i = start + 1; i < end; i += 2)
            pc.p = concat(pc.p, through_block(bpath[i], bt.cutvertex_of(bpath[i - 1]), bt.cutvertex_of(bpath[i + 1]), i == i1 || i == i4));
        if (!is_simple_path(pc.p)) throw InternalError("string of blocks produced a non-simple path");
        Mask on_p = mask_of(g.n(), pc.p);
        std::optional<Path> q;
        auto to_z_beyond = [&](int cut_node, int away_from) -> std::optional<Path> {
            const Vertex c = bt.cutvertex_of(cut_node);
            for (int y : bt.neighbors(cut_node)) {
                if (y == away_from) continue;
                Mask m = s.region_mask(bt.branch(cut_node, y));
                m[static_cast<std::size_t>(c)] = true;
                auto p = bfs_path(g, c, [&](Vertex v) { return m[static_cast<std::size_t>(v)]; },
                                  [&](Vertex v) { return s.z_nbr[static_cast<std::size_t>(v)]; });
                if (p) {
                    p->push_back(s.z);
                    return p;
                }
            }
            return std::nullopt;
        };
        for (std::size_t i = i2 - 1; i <= i3 + 1 && !q; ++i) {
            const int node = bpath[i];
            const int prev = bpath[i - 1 < bpath.size() ? i - 1 : i], next = bpath[i + 1 < bpath.size() ? i + 1 : i];
            if (bt.is_block(node)) {
                Mask bm = s.block_mask(node);
                for (Vertex w : bt.block(node))
                    if (s.z_nbr[static_cast<std::size_t>(w)] && on_p[static_cast<std::size_t>(w)]) {
                        q = Path{w, s.z};
                        break;
                    }
                if (!q)
                    for (Vertex w : bt.block(node)) {
                        if (!s.z_nbr[static_cast<std::size_t>(w)]) continue;
                        auto in = bfs_path(g, w, [&](Vertex v) { return bm[static_cast<std::size_t>(v)]; },
                                           [&](Vertex v) { return on_p[static_cast<std::size_t>(v)]; });
                        if (!in) continue;
                        Path qq = reversed(*in);
                        qq.push_back(s.z);
                        q = qq;
                        break;
                    }
                if (!q && bt.degree(node) >= 3)
                    for (int y : bt.neighbors(node)) {
                        if (y == prev || y == next) continue;
                        const Vertex c = bt.cutvertex_of(y);
                        auto in = bfs_path(g, c, [&](Vertex v) { return bm[static_cast<std::size_t>(v)]; },
                                           [&](Vertex v) { return on_p[static_cast<std::size_t>(v)]; });
                        auto out = to_z_beyond(y, node);
                        if (!in || !out) continue;
                        q = concat(reversed(*in), *out);
                        break;
                    }
            } else if (bt.degree(node) >= 3) {
                for (int y : bt.neighbors(node)) {
                    if (y == prev || y == next) continue;
                    const Vertex c = bt.cutvertex_of(node);
                    Mask m = s.region_mask(bt.branch(node, y));
                    m[static_cast<std::size_t>(c)] = true;
                    auto p = bfs_path(g, c, [&](Vertex v) { return m[static_cast<std::size_t>(v)]; },
                                      [&](Vertex v) { return s.z_nbr[static_cast<std::size_t>(v)]; });
                    if (p) {
                        p->push_back(s.z);
                        q = p;
                        break;
                    }
                }
            }
        }
        if (!q) throw InternalError("two kept blocks of a long path lie in a common string");
        pc.q = *q;
        pieces.push_back(std::move(pc));
        start = end;
    }
    std::vector<Cycle> cycles;
    for (int gi = 0; gi < k; ++gi) {
        const Piece& a = pieces[static_cast<std::size_t>(3 * gi)];
        const Piece& b = pieces[static_cast<std::size_t>(3 * gi + 1)];
        const Piece& c = pieces[static_cast<std::size_t>(3 * gi + 2)];
        Path w = concat(concat(a.p, b.p), c.p);
        auto at = [&](Vertex x) { return static_cast<std::size_t>(std::find(w.begin(), w.end(), x) - w.begin()); };
        std::size_t x0 = at(a.q.front()), x1 = at(b.q.front()), x2 = at(c.q.front());
        if (!(x0 < x1 && x1 < x2 && x2 < w.size())) throw InternalError("attachment order along the long path is broken");
        Path back(w.begin() + static_cast<std::ptrdiff_t>(x0), w.begin() + static_cast<std::ptrdiff_t>(x1) + 1);
        Path fwd(w.begin() + static_cast<std::ptrdiff_t>(x1), w.begin() + static_cast<std::ptrdiff_t>(x2) + 1);
        ThetaWitness th = make_theta(g, w[x1], s.z, b.q, concat(reversed(back), a.q), concat(fwd, c.q));
        cycles.push_back(even_a_cycle_from_theta(th));
    }
    check_packing(g, cycles);
    std::sort(cycles.begin(), cycles.end());
    return Certificate::packing(k, cycles);
}

}  // namespace detail

/// Turns a trichotomy witness on the reduced tree (parameters 3k, k, 15k)
/// into k edge-disjoint even A-cycles.
inline Certificate packing_from_tree_witness(const PipelineState& s, const ReducedTree& rt, const TrichotomyWitness& w) {
    const int k = s.k;
    if (rt.empty()) throw PreconditionError("reduced tree is empty");
    if (auto d = witness_defect(rt.tree, 3 * k, k, 15 * k, w); !d.empty())
        throw PreconditionError("witness does not hold on the reduced tree: " + d);
    if (auto* md = std::get_if<MaxDegreeWitness>(&w)) return detail::star_packing(s, rt, md->vertex);
    if (auto* tl = std::get_if<ThreeLeafWitness>(&w)) return detail::claw_packing(s, rt, tl->subtrees);
    return detail::long_path_packing(s, rt, std::get<LongPathWitness>(w).path);
}

}  // namespace evenac
