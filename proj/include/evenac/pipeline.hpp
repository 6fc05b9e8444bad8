#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "evenac/block_tree.hpp"
#include "evenac/certificate.hpp"
#include "evenac/cycles.hpp"
#include "evenac/flow.hpp"
#include "evenac/graph.hpp"
#include "evenac/tree.hpp"

namespace evenac {

/// The input breaks the single-hitting-vertex contract. When the breach was
/// found constructively the offending even A-cycle (avoiding z) is attached.
class AssumptionError : public Error {
public:
    explicit AssumptionError(const std::string& what, std::optional<Cycle> witness = std::nullopt)
        : Error(what), witness_(std::move(witness)) {}
    const std::optional<Cycle>& witness() const { return witness_; }

private:
    std::optional<Cycle> witness_;
};

using Mask = std::vector<bool>;

namespace detail {

inline Mask mask_of(int n, const VertexList& vs) {
    Mask m(static_cast<std::size_t>(n), false);
    for (Vertex v : vs) m[static_cast<std::size_t>(v)] = true;
    return m;
}

inline Mask complement(Mask m) {
    m.flip();
    return m;
}

/// Same vertex ids, only the edges with both ends inside `keep`.
inline LabeledGraph restrict_to(const LabeledGraph& g, const Mask& keep) {
    return remove_vertices(g, complement(keep));
}

inline bool is_simple_path(const Path& p) {
    std::set<Vertex> s(p.begin(), p.end());
    return s.size() == p.size();
}

inline ThetaWitness make_theta(const LabeledGraph& g, Vertex u, Vertex v, Path p1, Path p2, Path p3) {
    ThetaWitness t;
    t.branch_u = u;
    t.branch_v = v;
    t.paths = {std::move(p1), std::move(p2), std::move(p3)};
    t.compute_flags(g);
    if (auto d = t.defect(); !d.empty()) throw InternalError("constructed theta graph is invalid: " + d);
    for (const Path& p : t.paths)
        if (!is_path_of(g, p)) throw InternalError("theta path is not a path of the graph");
    return t;
}

/// Even A-cycles must be pairwise edge-disjoint; anything else is a bug.
inline void check_packing(const LabeledGraph& g, const std::vector<Cycle>& cycles) {
    std::set<Edge> used;
    for (const Cycle& c : cycles) {
        if (!is_cycle_of(g, c.vertices()) || !c.even() || !c.meets(g))
            throw InternalError("constructed packing contains a non-target cycle");
        for (const Edge& e : c.edges())
            if (!used.insert(e).second) throw InternalError("constructed packing is not edge-disjoint");
    }
}

/// Smallest subtree of g[mask] holding three terminals: a centre minimising
/// the summed BFS distance (smallest id on ties) and its three legs. Legs run
/// from the centre to each terminal and share only the centre.
struct Spider {
    Vertex center = -1;
    std::array<Path, 3> legs;
};

inline std::optional<Spider> spider(const LabeledGraph& g, const Mask& mask, const std::array<Vertex, 3>& term) {
    const int n = g.n();
    std::array<std::vector<int>, 3> dist;
    for (int i = 0; i < 3; ++i) {
        auto& d = dist[static_cast<std::size_t>(i)];
        d.assign(static_cast<std::size_t>(n), -1);
        std::vector<Vertex> q{term[static_cast<std::size_t>(i)]};
        d[static_cast<std::size_t>(q[0])] = 0;
        for (std::size_t h = 0; h < q.size(); ++h)
            for (Vertex y : g.neighbors(q[h]))
                if (mask[static_cast<std::size_t>(y)] && d[static_cast<std::size_t>(y)] < 0) {
                    d[static_cast<std::size_t>(y)] = d[static_cast<std::size_t>(q[h])] + 1;
                    q.push_back(y);
                }
    }
    Vertex best = -1;
    int best_sum = 0;
    for (Vertex c = 0; c < n; ++c) {
        if (!mask[static_cast<std::size_t>(c)]) continue;
        int s = 0;
        bool ok = true;
        for (const auto& d : dist) {
            if (d[static_cast<std::size_t>(c)] < 0) ok = false;
            s += d[static_cast<std::size_t>(c)];
        }
        if (ok && (best < 0 || s < best_sum)) {
            best = c;
            best_sum = s;
        }
    }
    if (best < 0) return std::nullopt;
    Spider sp;
    sp.center = best;
    auto in_mask = [&](Vertex y) { return mask[static_cast<std::size_t>(y)]; };
    for (int i = 0; i < 3; ++i) {
        Vertex t = term[static_cast<std::size_t>(i)];
        sp.legs[static_cast<std::size_t>(i)] = *bfs_path(g, best, in_mask, [t](Vertex y) { return y == t; });
    }
    return sp;
}

/// A path w1 ... v ... w2 inside `mask` whose ends lie in `targets` and whose
/// other vertices avoid `targets`; empty when two such fan paths do not exist.
inline std::optional<Path> ear_through(const LabeledGraph& g, const Mask& mask, Vertex v, const Mask& targets) {
    Mask sinks = targets;
    sinks[static_cast<std::size_t>(v)] = false;
    Mask blocked = complement(mask);
    FanPaths fan = fan_paths(g, v, sinks, 2, /*distinct_ends=*/true, &blocked);
    if (fan.paths.size() < 2) return std::nullopt;
    Path p(fan.paths[0].rbegin(), fan.paths[0].rend());
    p.insert(p.end(), fan.paths[1].begin() + 1, fan.paths[1].end());
    return p;
}

inline Path reversed(Path p) {
    std::reverse(p.begin(), p.end());
    return p;
}

inline Path concat(Path a, const Path& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.back() != b.front()) throw InternalError("path concatenation at mismatched ends");
    a.insert(a.end(), b.begin() + 1, b.end());
    return a;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pipeline state

/// A string b0 B1 b1 ... Bl bl of the block tree of G - z.
struct StringPath {
    std::vector<int> nodes;   // b0, B1, b1, ..., Bl, bl as block-tree nodes
    VertexList cutvertices;   // b0 .. bl
    std::vector<int> blocks;  // B1 .. Bl
    VertexList vertices;      // union of the blocks, sorted
};

/// Everything the pipeline derives from (G, A, z, k) for one 2-connected G.
struct PipelineState {
    LabeledGraph g;
    Vertex z = -1;
    int k = 0;
    BlockTree bt;  // of G - z
    Mask z_nbr;
    std::vector<int> a_blocks;  // blocks of G - z meeting A
    std::vector<StringPath> strings;
    std::vector<int> string_of_block;  // -1 when in no string
    std::vector<int> a_s;              // first A-block of each string
    std::vector<int> a_sbar;           // A-blocks in no string

    VertexList a_in_block(int b) const {
        VertexList out;
        for (Vertex v : bt.block(b))
            if (g.in_a(v)) out.push_back(v);
        return out;
    }
    bool block_has_z_nbr(int b) const {
        for (Vertex v : bt.block(b))
            if (z_nbr[static_cast<std::size_t>(v)]) return true;
        return false;
    }
    Mask block_mask(int b) const { return detail::mask_of(g.n(), bt.block(b)); }

    /// Vertices of the given block-tree nodes, leaving out cutvertices whose
    /// own node is not among them (so disjoint node sets give disjoint masks).
    Mask region_mask(const std::vector<int>& nodes) const {
        std::set<int> ns(nodes.begin(), nodes.end());
        Mask m(static_cast<std::size_t>(g.n()), false);
        for (int x : nodes) {
            if (!bt.is_block(x)) {
                m[static_cast<std::size_t>(bt.cutvertex_of(x))] = true;
                continue;
            }
            for (Vertex v : bt.block(x)) {
                auto c = bt.cut_node(v);
                if (!c || ns.count(*c)) m[static_cast<std::size_t>(v)] = true;
            }
        }
        return m;
    }
};

/// Strings are maximal runs of block-tree nodes in which every block has
/// degree 2 and no neighbour of z, and every interior cutvertex has degree 2,
/// trimmed to start before the first and end after the last block meeting A.
inline std::vector<StringPath> find_strings(const PipelineState& s) {
    const BlockTree& bt = s.bt;
    auto good_block = [&](int b) { return bt.degree(b) == 2 && !s.block_has_z_nbr(b); };
    std::vector<bool> seen(static_cast<std::size_t>(bt.block_count()), false);
    std::vector<StringPath> out;
    for (int start = 0; start < bt.block_count(); ++start) {
        if (seen[static_cast<std::size_t>(start)] || !good_block(start)) continue;
        // walk to one end of the run, then collect it in order
        auto step = [&](int block, int cut) -> std::optional<std::pair<int, int>> {
            if (bt.degree(cut) != 2) return std::nullopt;
            int next = bt.neighbors(cut)[0] == block ? bt.neighbors(cut)[1] : bt.neighbors(cut)[0];
            if (!good_block(next)) return std::nullopt;
            int far = bt.neighbors(next)[0] == cut ? bt.neighbors(next)[1] : bt.neighbors(next)[0];
            return std::pair{next, far};
        };
        int block = start, out_cut = bt.neighbors(start)[0];
        while (auto nx = step(block, out_cut)) {
            if (nx->first == start) break;  // cannot happen in a tree
            block = nx->first;
            out_cut = nx->second;
        }
        // now `block` is an end of the run and `out_cut` its outer cutvertex
        std::vector<int> run{out_cut, block};
        int in_cut = bt.neighbors(block)[0] == out_cut ? bt.neighbors(block)[1] : bt.neighbors(block)[0];
        run.push_back(in_cut);
        seen[static_cast<std::size_t>(block)] = true;
        while (auto nx = step(block, in_cut)) {
            block = nx->first;
            in_cut = nx->second;
            seen[static_cast<std::size_t>(block)] = true;
            run.push_back(block);
            run.push_back(in_cut);
        }
        int first = -1, last = -1;
        for (std::size_t i = 1; i < run.size(); i += 2)
            if (!s.a_in_block(run[i]).empty()) {
                if (first < 0) first = static_cast<int>(i);
                last = static_cast<int>(i);
            }
        if (first < 0) continue;
        StringPath sp;
        sp.nodes.assign(run.begin() + first - 1, run.begin() + last + 2);
        std::set<Vertex> vs;
        for (std::size_t i = 0; i < sp.nodes.size(); ++i) {
            if (i % 2 == 0) {
                sp.cutvertices.push_back(bt.cutvertex_of(sp.nodes[i]));
            } else {
                sp.blocks.push_back(sp.nodes[i]);
                vs.insert(bt.block(sp.nodes[i]).begin(), bt.block(sp.nodes[i]).end());
            }
        }
        sp.vertices.assign(vs.begin(), vs.end());
        out.push_back(std::move(sp));
    }
    std::sort(out.begin(), out.end(), [](const StringPath& l, const StringPath& r) { return l.vertices < r.vertices; });
    return out;
}

/// Empty when `sp` satisfies the string conditions in `s`, else the reason.
inline std::string string_defect(const PipelineState& s, const StringPath& sp) {
    const BlockTree& bt = s.bt;
    if (sp.nodes.size() < 3 || sp.nodes.size() % 2 == 0) return "a string alternates cutvertex, block, ..., cutvertex";
    for (std::size_t i = 0; i < sp.nodes.size(); ++i) {
        int x = sp.nodes[i];
        if ((i % 2 == 1) != bt.is_block(x)) return "node kinds do not alternate";
        if (i > 0) {
            const auto& nb = bt.neighbors(x);
            if (!std::binary_search(nb.begin(), nb.end(), sp.nodes[i - 1])) return "consecutive nodes are not adjacent";
        }
        if (i % 2 == 1) {
            if (bt.degree(x) != 2) return "block of degree other than 2";
            if (s.block_has_z_nbr(x)) return "block contains a neighbour of z";
        } else if (i > 0 && i + 1 < sp.nodes.size() && bt.degree(x) != 2) {
            return "interior cutvertex of degree other than 2";
        }
    }
    if (s.a_in_block(sp.nodes[1]).empty() || s.a_in_block(sp.nodes[sp.nodes.size() - 2]).empty())
        return "end blocks must meet A";
    // maximality: the run cannot be extended to another A-block
    for (int end : {0, static_cast<int>(sp.nodes.size()) - 1}) {
        int cut = sp.nodes[static_cast<std::size_t>(end)];
        int inner = sp.nodes[static_cast<std::size_t>(end == 0 ? 1 : end - 1)];
        int prev_cut = cut, prev_block = inner;
        while (bt.degree(prev_cut) == 2) {
            int nb = bt.neighbors(prev_cut)[0] == prev_block ? bt.neighbors(prev_cut)[1] : bt.neighbors(prev_cut)[0];
            if (bt.degree(nb) != 2 || s.block_has_z_nbr(nb)) break;
            if (!s.a_in_block(nb).empty()) return "string is not maximal";
            prev_block = nb;
            prev_cut = bt.neighbors(nb)[0] == prev_cut ? bt.neighbors(nb)[1] : bt.neighbors(nb)[0];
        }
    }
    return {};
}

/// Builds the block tree of G - z and the string bookkeeping. G must contain
/// z and G - z must be connected.
inline PipelineState build_state(const LabeledGraph& g, int k) {
    if (!g.z()) throw PreconditionError("the pipeline needs a hitting vertex z");
    PipelineState s;
    s.g = g;
    s.z = *g.z();
    s.k = k;
    s.bt = block_tree(g, s.z);
    s.z_nbr.assign(static_cast<std::size_t>(g.n()), false);
    for (Vertex y : g.neighbors(s.z)) s.z_nbr[static_cast<std::size_t>(y)] = true;
    for (int b = 0; b < s.bt.block_count(); ++b)
        if (!s.a_in_block(b).empty()) s.a_blocks.push_back(b);
    s.strings = find_strings(s);
    s.string_of_block.assign(static_cast<std::size_t>(s.bt.block_count()), -1);
    for (std::size_t i = 0; i < s.strings.size(); ++i) {
        for (int b : s.strings[i].blocks) s.string_of_block[static_cast<std::size_t>(b)] = static_cast<int>(i);
        s.a_s.push_back(s.strings[i].blocks.front());
    }
    for (int b : s.a_blocks)
        if (s.string_of_block[static_cast<std::size_t>(b)] < 0) s.a_sbar.push_back(b);
    return s;
}

/// Leaf blocks of the block tree of G - z that contain no neighbour of z.
inline std::vector<int> leaf_blocks_missing_z(const PipelineState& s) {
    std::vector<int> out;
    if (s.bt.block_count() < 2) return out;
    for (int b = 0; b < s.bt.block_count(); ++b)
        if (s.bt.degree(b) == 1 && !s.block_has_z_nbr(b)) out.push_back(b);
    return out;
}

/// Is `c` heavy for the vertex set `vs`: does it use an edge inside `vs`
/// incident with a vertex of A?
inline bool is_heavy(const LabeledGraph& g, const Cycle& c, const Mask& vs) {
    for (const Edge& e : c.edges())
        if (vs[static_cast<std::size_t>(e.u)] && vs[static_cast<std::size_t>(e.v)] && (g.in_a(e.u) || g.in_a(e.v)))
            return true;
    return false;
}

// ---------------------------------------------------------------------------
// Block degree (A-vertices see at most two neighbours inside their block)

struct BlockDegreeViolation {
    Vertex a = -1;
    VertexList block;
    ThetaWitness theta;
    Cycle cycle;  // even A-cycle avoiding z
};

namespace detail {

inline std::optional<BlockDegreeViolation> block_degree_in(const LabeledGraph& g, const BlockTree& bt) {
    for (int b = 0; b < bt.block_count(); ++b) {
        Mask inb = mask_of(g.n(), bt.block(b));
        for (Vertex a : bt.block(b)) {
            if (!g.in_a(a)) continue;
            VertexList nb;
            for (Vertex y : g.neighbors(a))
                if (inb[static_cast<std::size_t>(y)] && bt.block_of_edge(Edge(a, y)) == b) nb.push_back(y);
            if (nb.size() < 3) continue;
            Mask rest = inb;
            rest[static_cast<std::size_t>(a)] = false;
            auto sp = spider(g, rest, {nb[0], nb[1], nb[2]});
            if (!sp) throw InternalError("block minus one vertex is disconnected");
            std::array<Path, 3> paths;
            for (int i = 0; i < 3; ++i) {
                Path p{a};
                const Path& leg = sp->legs[static_cast<std::size_t>(i)];
                p.insert(p.end(), leg.rbegin(), leg.rend());
                paths[static_cast<std::size_t>(i)] = p;
            }
            BlockDegreeViolation v;
            v.a = a;
            v.block = bt.block(b);
            v.theta = make_theta(g, a, sp->center, paths[0], paths[1], paths[2]);
            v.cycle = even_a_cycle_from_theta(v.theta);
            return v;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// For every block B of G - z and every a in A within B: a must have at most
/// two neighbours in B. A breach yields the theta graph formed by a smallest
/// tree of B - a through three neighbours, and the even A-cycle inside it.
inline std::optional<BlockDegreeViolation> check_block_degree(const LabeledGraph& g) {
    if (!g.z()) throw PreconditionError("check_block_degree needs a hitting vertex z");
    Mask keep(static_cast<std::size_t>(g.n()), true);
    keep[static_cast<std::size_t>(*g.z())] = false;
    for (const VertexList& comp : components(g, keep)) {
        if (comp.size() < 3) continue;
        Surgery sub = induced_subgraph(g, comp);
        sub.graph.set_z(std::nullopt);
        auto v = detail::block_degree_in(sub.graph, block_tree(sub.graph));
        if (!v) continue;
        auto back = [&](Vertex x) { return sub.origin[static_cast<std::size_t>(x)]; };
        v->a = back(v->a);
        for (Vertex& x : v->block) x = back(x);
        std::sort(v->block.begin(), v->block.end());
        v->theta.branch_u = back(v->theta.branch_u);
        v->theta.branch_v = back(v->theta.branch_v);
        for (Path& p : v->theta.paths)
            for (Vertex& x : p) x = back(x);
        VertexList cv = v->cycle.vertices();
        for (Vertex& x : cv) x = back(x);
        v->cycle = Cycle(cv);
        return v;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Block hitting sets

/// Output of a per-block or per-string step: an edge set, or a packing when
/// the step's counting claim fails on this instance.
struct PartResult {
    std::optional<Certificate> packing;
    EdgeList edges;
    std::string branch;
};

namespace detail {

[[noreturn]] inline void violation_from_theta(const ThetaWitness& t, const std::string& why) {
    throw AssumptionError(why, even_a_cycle_from_theta(t));
}

}  // namespace detail

/// Edge set meeting every B-heavy even A-cycle, or a packing of k even
/// A-cycles when at least 3k segments of the A-cycle through B are attached.
inline PartResult block_hitting_set(const PipelineState& s, int b) {
    const LabeledGraph& g = s.g;
    const BlockTree& bt = s.bt;
    const int n = g.n();
    const int k = s.k;
    PartResult res;
    VertexList av = s.a_in_block(b);
    auto b_edges_at = [&](const std::set<Vertex>& at) {
        EdgeList out;
        for (const Edge& e : bt.block_edges(b))
            if (at.count(e.u) || at.count(e.v)) out.push_back(e);
        return out;
    };
    if (av.size() <= 2) {
        res.edges = b_edges_at(std::set<Vertex>(av.begin(), av.end()));
        res.branch = "at most two A-vertices";
        return res;
    }
    if (auto v = detail::block_degree_in(g, bt)) throw AssumptionError("A-vertex with three neighbours in its block", v->cycle);

    const Mask inb = s.block_mask(b);
    const Vertex a0 = av.front();
    VertexList nb;
    for (Vertex y : g.neighbors(a0))
        if (inb[static_cast<std::size_t>(y)]) nb.push_back(y);
    if (nb.size() != 2) throw InternalError("A-vertex of a 2-connected block without two block neighbours");
    auto arc = bfs_path(g, nb[0], [&](Vertex y) { return inb[static_cast<std::size_t>(y)] && y != a0; },
                        [&](Vertex y) { return y == nb[1]; });
    if (!arc) throw InternalError("block minus one vertex is disconnected");
    VertexList cyc{a0};
    cyc.insert(cyc.end(), arc->begin(), arc->end());
    const Cycle c_obj(cyc);
    const int len = static_cast<int>(cyc.size());
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < len; ++i) pos[static_cast<std::size_t>(cyc[static_cast<std::size_t>(i)])] = i;
    Mask on_c(static_cast<std::size_t>(n), false);
    for (Vertex v : cyc) on_c[static_cast<std::size_t>(v)] = true;

    // every A-vertex of B lies on C
    for (Vertex a : av) {
        if (on_c[static_cast<std::size_t>(a)]) continue;
        auto ear = detail::ear_through(g, inb, a, on_c);
        if (!ear) throw InternalError("no C-path through an A-vertex inside a 2-connected block");
        detail::violation_from_theta(theta_from_cycle_and_path(g, c_obj, *ear), "A-vertex of a block off the A-cycle");
    }
    std::sort(av.begin(), av.end(), [&](Vertex x, Vertex y) { return pos[static_cast<std::size_t>(x)] < pos[static_cast<std::size_t>(y)]; });
    const int t = static_cast<int>(av.size());
    std::vector<int> apos(static_cast<std::size_t>(t + 1));
    for (int i = 0; i < t; ++i) apos[static_cast<std::size_t>(i)] = pos[static_cast<std::size_t>(av[static_cast<std::size_t>(i)])];
    apos[static_cast<std::size_t>(t)] = len;
    auto seg_of_interior = [&](Vertex v) {
        int p = pos[static_cast<std::size_t>(v)];
        for (int i = 0; i < t; ++i)
            if (apos[static_cast<std::size_t>(i)] < p && p < apos[static_cast<std::size_t>(i + 1)]) return i;
        return -1;  // an A-vertex
    };

    // bridges of C inside B: chords and components of B - C with their feet
    std::vector<std::set<Vertex>> seg_extra(static_cast<std::size_t>(t));
    auto place = [&](const VertexList& inner, const std::set<Vertex>& feet) {
        std::map<int, Vertex> seg_foot;
        for (Vertex f : feet) {
            int sg = seg_of_interior(f);
            if (sg < 0) throw AssumptionError("A-vertex with three neighbours in its block");
            seg_foot.emplace(sg, f);
        }
        if (seg_foot.size() > 1) {
            Vertex x = seg_foot.begin()->second, y = std::next(seg_foot.begin())->second;
            Path p;
            if (inner.empty()) {
                p = {x, y};
            } else {
                Mask inner_m = detail::mask_of(n, inner);
                auto q = bfs_path(g, x, [&](Vertex v) { return inner_m[static_cast<std::size_t>(v)] || v == y; },
                                  [&](Vertex v) { return v == y; });
                if (!q) throw InternalError("bridge feet are not connected through the bridge");
                p = *q;
            }
            detail::violation_from_theta(theta_from_cycle_and_path(g, c_obj, p), "C-path joining two segments");
        }
        int sg = seg_foot.begin()->first;
        seg_extra[static_cast<std::size_t>(sg)].insert(inner.begin(), inner.end());
    };
    for (const Edge& e : bt.block_edges(b)) {
        if (!on_c[static_cast<std::size_t>(e.u)] || !on_c[static_cast<std::size_t>(e.v)]) continue;
        int d = std::abs(pos[static_cast<std::size_t>(e.u)] - pos[static_cast<std::size_t>(e.v)]);
        if (d == 1 || d == len - 1) continue;
        place({}, {e.u, e.v});
    }
    Mask off = inb;
    for (Vertex v : cyc) off[static_cast<std::size_t>(v)] = false;
    for (const VertexList& comp : components(g, off)) {
        std::set<Vertex> feet;
        for (Vertex v : comp)
            for (Vertex y : g.neighbors(v))
                if (on_c[static_cast<std::size_t>(y)]) feet.insert(y);
        place(comp, feet);
    }

    // segment vertex sets S_i minus a_{i+1}; attached when holding a cutvertex of G - z or a z-neighbour
    auto seg_vertices = [&](int i) {
        VertexList out;
        for (int p = apos[static_cast<std::size_t>(i)]; p < apos[static_cast<std::size_t>(i + 1)]; ++p)
            out.push_back(cyc[static_cast<std::size_t>(p)]);
        out.insert(out.end(), seg_extra[static_cast<std::size_t>(i)].begin(), seg_extra[static_cast<std::size_t>(i)].end());
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<int> attached;
    std::vector<Vertex> anchor;  // chosen z-neighbour or cutvertex per attached segment
    for (int i = 0; i < t; ++i) {
        VertexList sv = seg_vertices(i);
        Vertex w = -1;
        for (Vertex v : sv)
            if (s.z_nbr[static_cast<std::size_t>(v)]) {
                w = v;
                break;
            }
        if (w < 0)
            for (Vertex v : sv)
                if (bt.is_cutvertex(v)) {
                    w = v;
                    break;
                }
        if (w >= 0) {
            attached.push_back(i);
            anchor.push_back(w);
        }
    }

    if (static_cast<int>(attached.size()) < 3 * k) {
        std::set<Vertex> ends;
        for (int i : attached) {
            ends.insert(av[static_cast<std::size_t>(i)]);
            ends.insert(av[static_cast<std::size_t>((i + 1) % t)]);
        }
        res.edges = b_edges_at(ends);
        res.branch = std::to_string(attached.size()) + " attached segments (< 3k)";
        return res;
    }

    // 3k attached segments: C-z paths Q through each, then k theta graphs
    std::vector<Path> q(attached.size());
    std::vector<Vertex> qc(attached.size());
    for (std::size_t j = 0; j < attached.size(); ++j) {
        const int i = attached[j];
        const Vertex w = anchor[j];
        Path inner;
        if (on_c[static_cast<std::size_t>(w)]) {
            inner = {w};
        } else {
            const auto& extra = seg_extra[static_cast<std::size_t>(i)];
            auto p = bfs_path(g, w, [&](Vertex v) { return extra.count(v) > 0 || on_c[static_cast<std::size_t>(v)]; },
                              [&](Vertex v) { return on_c[static_cast<std::size_t>(v)]; });
            if (!p) throw InternalError("bridge vertex without a path to C");
            inner = detail::reversed(*p);  // from C to w
        }
        Path outer;
        if (s.z_nbr[static_cast<std::size_t>(w)]) {
            outer = {w, s.z};
        } else {
            int other = -1;
            for (int ob : bt.blocks_containing(w))
                if (ob != b) {
                    other = ob;
                    break;
                }
            std::vector<int> br = bt.branch(*bt.cut_node(w), other);
            Mask rm = s.region_mask(br);
            rm[static_cast<std::size_t>(w)] = true;
            auto p = bfs_path(g, w, [&](Vertex v) { return rm[static_cast<std::size_t>(v)]; },
                              [&](Vertex v) { return s.z_nbr[static_cast<std::size_t>(v)]; });
            if (!p) throw AssumptionError("branch of the block tree without a neighbour of z");
            outer = *p;
            outer.push_back(s.z);
        }
        q[j] = detail::concat(inner, outer);
        qc[j] = q[j].front();
    }
    auto forward_arc = [&](Vertex from, Vertex to) {
        Path p;
        for (int i = pos[static_cast<std::size_t>(from)];; i = (i + 1) % len) {
            p.push_back(cyc[static_cast<std::size_t>(i)]);
            if (cyc[static_cast<std::size_t>(i)] == to) break;
        }
        return p;
    };
    std::vector<Cycle> cycles;
    for (int tt = 0; tt < k; ++tt) {
        const std::size_t j0 = static_cast<std::size_t>(3 * tt), j1 = j0 + 1, j2 = j0 + 2;
        Path p1 = q[j1];
        Path p2 = detail::concat(detail::reversed(forward_arc(qc[j0], qc[j1])), q[j0]);
        Path p3 = detail::concat(forward_arc(qc[j1], qc[j2]), q[j2]);
        ThetaWitness th = detail::make_theta(g, qc[j1], s.z, p1, p2, p3);
        cycles.push_back(even_a_cycle_from_theta(th));
    }
    detail::check_packing(g, cycles);
    res.packing = Certificate::packing(k, cycles);
    res.branch = std::to_string(attached.size()) + " attached segments (>= 3k): packing";
    return res;
}

// ---------------------------------------------------------------------------
// String hitting sets

inline PartResult string_hitting_set(const PipelineState& s, int si) {
    const LabeledGraph& g = s.g;
    const StringPath& sp = s.strings.at(static_cast<std::size_t>(si));
    const int k = s.k;
    const int n = g.n();
    PartResult res;
    std::vector<int> ablocks;
    for (int b : sp.blocks)
        if (!s.a_in_block(b).empty()) ablocks.push_back(b);

    if (static_cast<int>(ablocks.size()) < 2 * k) {
        std::set<Edge> f;
        for (int b : ablocks) {
            PartResult pb = block_hitting_set(s, b);
            if (pb.packing) return pb;
            f.insert(pb.edges.begin(), pb.edges.end());
        }
        res.edges.assign(f.begin(), f.end());
        res.branch = "fewer than 2k A-blocks: union of block sets";
        return res;
    }

    const Vertex b0 = sp.cutvertices.front(), bl = sp.cutvertices.back();
    const int limit = 10 * k;
    Mask in_s = detail::mask_of(n, sp.vertices);
    std::optional<EdgeList> best;
    std::string best_name;
    auto consider = [&](const LabeledGraph& h, Vertex x, Vertex y, const std::string& name) {
        EdgeDisjointPaths r = edge_disjoint_paths(h, x, y, limit + 1);
        if (static_cast<int>(r.paths.size()) <= limit && (!best || r.min_cut.size() < best->size())) {
            best = r.min_cut;
            best_name = name;
        }
    };
    {
        Mask drop = in_s;
        drop[static_cast<std::size_t>(b0)] = false;
        consider(remove_vertices(g, drop), s.z, b0, "z|b0 cut");
    }
    {
        Mask drop = in_s;
        drop[static_cast<std::size_t>(bl)] = false;
        consider(remove_vertices(g, drop), s.z, bl, "z|bl cut");
    }
    consider(detail::restrict_to(g, in_s), b0, bl, "b0|bl cut inside the string");
    if (best) {
        res.edges = *best;
        std::sort(res.edges.begin(), res.edges.end());
        res.branch = "small separator (" + best_name + ")";
        return res;
    }

    // No separator of size <= 10k: 2k edge-disjoint cycles through the string,
    // one designated A-vertex on each, paired into theta graphs.
    const int need = 2 * k;
    Mask outer_keep(static_cast<std::size_t>(n), true);
    for (Vertex v : sp.vertices) outer_keep[static_cast<std::size_t>(v)] = false;
    outer_keep[static_cast<std::size_t>(b0)] = outer_keep[static_cast<std::size_t>(bl)] = true;
    LabeledGraph outer_g = detail::restrict_to(g, outer_keep);
    if (outer_g.has_edge(b0, bl)) outer_g = remove_edges(outer_g, {Edge(b0, bl)});
    EdgeDisjointPaths outer = edge_disjoint_paths(outer_g, b0, bl, need);
    if (static_cast<int>(outer.paths.size()) < need) throw InternalError("outer b0-bl paths missing despite no small cut");

    struct BlockPaths {
        std::vector<Path> paths;
        int a_path = -1;  // index of the path through the designated A-vertex
        Vertex a = -1;
    };
    std::vector<BlockPaths> per(sp.blocks.size());
    std::vector<int> designated(static_cast<std::size_t>(need), -1);  // cycle j -> block position
    int next_designated = 0;
    for (std::size_t i = 0; i < sp.blocks.size(); ++i) {
        const int b = sp.blocks[i];
        const Vertex from = sp.cutvertices[i], to = sp.cutvertices[i + 1];
        Mask inb = s.block_mask(b);
        LabeledGraph gb = detail::restrict_to(g, inb);
        const bool is_designated = next_designated < need && !s.a_in_block(b).empty();
        EdgeDisjointPaths ep = edge_disjoint_paths(gb, from, to, need + 1);
        if (static_cast<int>(ep.paths.size()) < need + 1) throw InternalError("string block with too few edge-disjoint paths");
        BlockPaths bp;
        bp.paths = ep.paths;
        if (is_designated) {
            VertexList av = s.a_in_block(b);
            Vertex a = av.front();
            for (Vertex x : av)
                if (x != from && x != to) {
                    a = x;
                    break;
                }
            bp.a = a;
            for (std::size_t p = 0; p < bp.paths.size(); ++p)
                if (std::find(bp.paths[p].begin(), bp.paths[p].end(), a) != bp.paths[p].end()) bp.a_path = static_cast<int>(p);
            if (bp.a_path < 0) {
                Mask on_w(static_cast<std::size_t>(n), false);
                for (const Path& p : bp.paths)
                    for (Vertex v : p) on_w[static_cast<std::size_t>(v)] = true;
                auto ear = detail::ear_through(gb, inb, a, on_w);
                if (!ear) throw InternalError("no ear through a designated A-vertex");
                auto holder = [&](Vertex w) {
                    for (std::size_t p = 0; p < bp.paths.size(); ++p)
                        if (std::find(bp.paths[p].begin(), bp.paths[p].end(), w) != bp.paths[p].end()) return p;
                    throw InternalError("ear end on no path");
                };
                std::size_t c1 = holder(ear->front()), c2 = holder(ear->back());
                EdgeList u;
                for (const Edge& e : path_edges(bp.paths[c1])) u.push_back(e);
                if (c2 != c1)
                    for (const Edge& e : path_edges(bp.paths[c2])) u.push_back(e);
                for (const Edge& e : path_edges(*ear)) u.push_back(e);
                std::sort(u.begin(), u.end());
                u.erase(std::unique(u.begin(), u.end()), u.end());
                LabeledGraph ug(n, u, g.a());
                AbcResult r = abc_path(ug, from, a, to);
                if (!std::holds_alternative<Path>(r)) throw InternalError("rerouting through an A-vertex failed");
                bp.paths[c1] = std::get<Path>(r);
                bp.a_path = static_cast<int>(c1);
                if (c2 != c1) {
                    bp.paths.erase(bp.paths.begin() + static_cast<std::ptrdiff_t>(c2));
                    if (c2 < c1) bp.a_path -= 1;
                }
            }
            designated[static_cast<std::size_t>(next_designated++)] = static_cast<int>(i);
        }
        per[i] = std::move(bp);
    }
    if (next_designated < need) throw InternalError("string has fewer than 2k A-blocks");

    std::vector<VertexList> cyc(static_cast<std::size_t>(need));
    for (int j = 0; j < need; ++j) {
        Path walk{b0};
        for (std::size_t i = 0; i < per.size(); ++i) {
            const BlockPaths& bp = per[i];
            int idx;
            if (designated[static_cast<std::size_t>(j)] == static_cast<int>(i)) {
                idx = bp.a_path;
            } else {
                // j-th path among those that are not the designated one
                int seen = -1;
                idx = -1;
                for (int p = 0; p < static_cast<int>(bp.paths.size()); ++p) {
                    if (p == bp.a_path) continue;
                    if (++seen == j) {
                        idx = p;
                        break;
                    }
                }
                if (idx < 0) throw InternalError("not enough block paths");
            }
            walk = detail::concat(walk, bp.paths[static_cast<std::size_t>(idx)]);
        }
        const Path& op = outer.paths[static_cast<std::size_t>(j)];
        for (std::size_t x = op.size() - 1; x-- > 1;) walk.push_back(op[x]);
        if (!detail::is_simple_path(walk)) throw InternalError("glued string cycle is not simple");
        cyc[static_cast<std::size_t>(j)] = walk;
    }
    std::vector<Cycle> cycles;
    for (int tt = 0; tt < k; ++tt) {
        const VertexList& c1 = cyc[static_cast<std::size_t>(2 * tt)];
        const VertexList& c2 = cyc[static_cast<std::size_t>(2 * tt + 1)];
        const Vertex a2 = per[static_cast<std::size_t>(designated[static_cast<std::size_t>(2 * tt + 1)])].a;
        Mask on1 = detail::mask_of(n, c1);
        const int l2 = static_cast<int>(c2.size());
        int at = static_cast<int>(std::find(c2.begin(), c2.end(), a2) - c2.begin());
        Path fwd{a2}, bwd{a2};
        for (int i = (at + 1) % l2;; i = (i + 1) % l2) {
            fwd.push_back(c2[static_cast<std::size_t>(i)]);
            if (on1[static_cast<std::size_t>(c2[static_cast<std::size_t>(i)])]) break;
        }
        for (int i = (at - 1 + l2) % l2;; i = (i - 1 + l2) % l2) {
            bwd.push_back(c2[static_cast<std::size_t>(i)]);
            if (on1[static_cast<std::size_t>(c2[static_cast<std::size_t>(i)])]) break;
        }
        Path ear = detail::concat(detail::reversed(bwd), fwd);
        ThetaWitness th = theta_from_cycle_and_path(g, Cycle(c1), ear);
        cycles.push_back(even_a_cycle_from_theta(th));
    }
    detail::check_packing(g, cycles);
    res.packing = Certificate::packing(k, cycles);
    res.branch = "no separator of size <= 10k: packing";
    return res;
}

// ---------------------------------------------------------------------------
// z in A

/// With z in A: k even cycles through z when deg(z) >= 4k, else the edges at z.
inline Certificate handle_z_in_a(const LabeledGraph& g, int k) {
    if (!g.z()) throw PreconditionError("handle_z_in_A needs a hitting vertex z");
    const Vertex z = *g.z();
    if (!g.in_a(z)) throw PreconditionError("z is not in A");
    if (k < 1) throw PreconditionError("k must be positive");
    const int d = g.degree(z);
    if (d < 4 * k) {
        EdgeList f;
        for (Vertex y : g.neighbors(z)) f.emplace_back(z, y);
        std::sort(f.begin(), f.end());
        return Certificate::hitting(k, f, std::vector<std::string>(f.size(), "z-incident"));
    }
    // tree on G - z (BFS from its smallest vertex) plus one pendant
    // subdivision vertex per edge at z
    const int n = g.n();
    std::vector<int> id(static_cast<std::size_t>(n), -1);
    VertexList back;
    for (Vertex v = 0; v < n; ++v)
        if (v != z) {
            id[static_cast<std::size_t>(v)] = static_cast<int>(back.size());
            back.push_back(v);
        }
    Vertex root = back.front();
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -2);
    parent[static_cast<std::size_t>(root)] = -1;
    std::vector<Vertex> order{root};
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Vertex y : g.neighbors(order[i]))
            if (y != z && parent[static_cast<std::size_t>(y)] == -2) {
                parent[static_cast<std::size_t>(y)] = order[i];
                order.push_back(y);
            }
    if (order.size() != back.size()) throw PreconditionError("G - z is disconnected; G is not 2-connected");
    EdgeList tedges;
    for (Vertex v : order)
        if (parent[static_cast<std::size_t>(v)] >= 0)
            tedges.emplace_back(id[static_cast<std::size_t>(v)], id[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])]);
    const int base = static_cast<int>(back.size());
    const VertexList& zn = g.neighbors(z);
    for (std::size_t i = 0; i < zn.size(); ++i) tedges.emplace_back(id[static_cast<std::size_t>(zn[i])], base + static_cast<int>(i));
    Tree t = Tree::from_edges(base + static_cast<int>(zn.size()), tedges);
    Tree::Bfs tb = t.bfs(0);
    std::array<VertexList, 2> cls;
    for (std::size_t i = 0; i < zn.size(); ++i) {
        int leaf = base + static_cast<int>(i);
        cls[static_cast<std::size_t>(tb.depth[static_cast<std::size_t>(leaf)] % 2)].push_back(leaf);
    }
    VertexList zset = cls[0].size() >= cls[1].size() ? cls[0] : cls[1];
    zset.resize(static_cast<std::size_t>(2 * k));
    auto subs = subtrees_meeting_z(t, zset, 2);
    if (static_cast<int>(subs.size()) < k) throw InternalError("subtree grouping produced fewer than k pairs");
    std::vector<Cycle> cycles;
    for (int i = 0; i < k; ++i) {
        const Subtree& st = subs[static_cast<std::size_t>(i)];
        Path tp = t.path(st.marked[0], st.marked[1]);
        VertexList cyc{z};
        for (std::size_t j = 1; j + 1 < tp.size(); ++j) cyc.push_back(back[static_cast<std::size_t>(tp[j])]);
        cycles.emplace_back(cyc);
    }
    detail::check_packing(g, cycles);
    std::sort(cycles.begin(), cycles.end());
    return Certificate::packing(k, cycles);
}

}  // namespace evenac
