#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evenac/budget.hpp"
#include "evenac/oracles.hpp"
#include "evenac/pipeline.hpp"
#include "evenac/tree_packing.hpp"

namespace evenac {

/// One size claim made along the way: `size` must not exceed `bound`.
struct LedgerEntry {
    std::string lemma;  // "z-incident", "block:F_B", "string:F_S", "assembled", "oracle"
    std::string scope;  // where in the instance, e.g. "H0/S1"
    long long size = 0;
    long long bound = 0;
};

/// Record of which branches fired and how every produced edge set compares
/// with the size it is supposed to respect.
struct BoundLedger {
    int k = 0;
    std::vector<std::string> events;
    std::vector<LedgerEntry> entries;

    bool within_bounds() const {
        for (const auto& e : entries)
            if (e.size > e.bound) return false;
        return true;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["k"] = k;
        j["events"] = events;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& e : entries)
            arr.push_back({{"lemma", e.lemma}, {"scope", e.scope}, {"size", e.size}, {"bound", e.bound}});
        j["entries"] = arr;
        j["within_bounds"] = within_bounds();
        return j;
    }
};

struct SolveResult {
    Certificate certificate;
    BoundLedger ledger;
};

struct SolveOptions {
    bool checked = true;  // confirm up front that G - z has no even A-cycle
    OracleBudget budget{};
};

namespace detail {

inline long long cube(long long x) { return x * x * x; }

/// Runs the single-z argument on a 2-connected graph h (z set) for one k.
/// Returns either a packing of exactly k cycles or a hitting set with
/// provenance, both in h's vertex ids.
inline Certificate run_pipeline(const LabeledGraph& h, int k, BoundLedger& ledger, const std::string& scope,
                                const OracleBudget& budget) {
    const Vertex z = *h.z();
    if (h.in_a(z)) {
        Certificate c = handle_z_in_a(h, k);
        if (c.is_packing()) {
            ledger.events.push_back(scope + ": z in A with degree >= 4k, cycles through z");
        } else {
            ledger.events.push_back(scope + ": z in A with degree < 4k, edges at z");
            ledger.entries.push_back({"z-incident", scope, static_cast<long long>(c.edges.size()), 4LL * k});
        }
        return c;
    }
    if (k == 1 && h.n() <= budget.max_vertices) {
        // one cycle is a packing; none means nothing needs hitting
        if (auto c = find_cycle(h, CyclePredicate::even_a(), budget)) {
            ledger.events.push_back(scope + ": k = 1, an even A-cycle exists");
            return Certificate::packing(1, {*c});
        }
        ledger.events.push_back(scope + ": k = 1, no even A-cycle");
        ledger.entries.push_back({"assembled", scope, 0, single_z_bound(1)});
        return Certificate::hitting(1, {}, {});
    }
    if (auto v = check_block_degree(h))
        throw AssumptionError("vertex of A with three neighbours inside its block of G - z", v->cycle);

    PipelineState s = build_state(h, k);
    if (!leaf_blocks_missing_z(s).empty()) throw AssumptionError("leaf block of G - z without a neighbour of z");

    const long long count = static_cast<long long>(s.a_s.size() + s.a_sbar.size());
    const long long threshold = 45 * cube(k);
    ledger.events.push_back(scope + ": k = " + std::to_string(k) + ", " + std::to_string(s.strings.size()) + " strings, " +
                            std::to_string(s.a_sbar.size()) + " A-blocks outside strings, threshold " +
                            std::to_string(threshold));
    if (count >= threshold) {
        ReducedTree rt = build_reduced_tree(s);
        TrichotomyWitness w = tree_trichotomy(rt.tree, 3 * k, k, 15 * k);
        ledger.events.push_back(scope + ": reduced tree outcome " + witness_tag(w));
        return packing_from_tree_witness(s, rt, w);
    }

    std::map<Edge, std::string> f;
    for (std::size_t i = 0; i < s.strings.size(); ++i) {
        const std::string sc = scope + "/S" + std::to_string(i);
        PartResult r = string_hitting_set(s, static_cast<int>(i));
        ledger.events.push_back(sc + ": " + r.branch);
        if (r.packing) return *r.packing;
        ledger.entries.push_back({"string:F_S", sc, static_cast<long long>(r.edges.size()), 24LL * k * k});
        for (const Edge& e : r.edges) f.emplace(e, "string:F_S");
    }
    for (int b : s.a_sbar) {
        const std::string sc = scope + "/B" + std::to_string(b);
        PartResult r = block_hitting_set(s, b);
        ledger.events.push_back(sc + ": " + r.branch);
        if (r.packing) return *r.packing;
        ledger.entries.push_back({"block:F_B", sc, static_cast<long long>(r.edges.size()), 12LL * k});
        for (const Edge& e : r.edges) f.emplace(e, "block:F_B");
    }
    EdgeList edges;
    std::vector<std::string> prov;
    for (const auto& [e, tag] : f) {
        edges.push_back(e);
        prov.push_back(tag);
    }
    ledger.entries.push_back({"assembled", scope, static_cast<long long>(edges.size()), single_z_bound(k)});
    return Certificate::hitting(k, edges, prov, single_z_bound(k));
}

inline Cycle map_cycle(const Cycle& c, const std::vector<Vertex>& origin) {
    VertexList v;
    for (Vertex x : c.vertices()) v.push_back(origin[static_cast<std::size_t>(x)]);
    return Cycle(v);
}

}  // namespace detail

/// Either k edge-disjoint even A-cycles or an edge set of size at most
/// 1080 k^5 meeting every even A-cycle, for graphs where every even A-cycle
/// passes through z. Each block of G containing z is handled on its own with
/// increasing k' until it yields an edge set; the per-block packings are
/// combined when they add up to k.
inline SolveResult solve_single_z(const LabeledGraph& g, int k, const SolveOptions& opt = {}) {
    if (k < 1) throw PreconditionError("k must be positive");
    if (!g.z()) throw PreconditionError("single-z mode needs a vertex z");
    const Vertex z = *g.z();
    SolveResult res;
    res.ledger.k = k;
    if (opt.checked) {
        Mask drop(static_cast<std::size_t>(g.n()), false);
        drop[static_cast<std::size_t>(z)] = true;
        LabeledGraph gz = remove_vertices(g, drop);
        gz.set_z(std::nullopt);
        if (auto c = find_cycle(gz, CyclePredicate::even_a(), opt.budget))
            throw AssumptionError("G - z contains an even A-cycle", *c);
        res.ledger.events.push_back("checked: G - z has no even A-cycle");
    }

    VertexList comp;
    for (const VertexList& c : components(g, Mask(static_cast<std::size_t>(g.n()), true)))
        if (std::binary_search(c.begin(), c.end(), z)) comp = c;
    Surgery gc = induced_subgraph(g, comp);
    BlockTree bt = block_tree(gc.graph);
    const Vertex zc = *gc.graph.z();

    struct Part {
        Surgery sub;              // block of gc, ids relative to gc
        std::vector<Certificate> packings;  // packings[i] has i+1 cycles
        std::optional<Certificate> hitting;
    };
    std::vector<Part> parts;
    for (int b = 0; b < bt.block_count(); ++b) {
        const VertexList& bv = bt.block(b);
        if (bv.size() < 3 || !std::binary_search(bv.begin(), bv.end(), zc)) continue;
        parts.push_back({induced_subgraph(gc.graph, bv), {}, std::nullopt});
    }
    res.ledger.events.push_back(std::to_string(parts.size()) + " blocks of G contain z and a cycle");

    auto to_g = [&](const Part& p, Vertex x) {
        return gc.origin[static_cast<std::size_t>(p.sub.origin[static_cast<std::size_t>(x)])];
    };
    int total = 0;
    for (std::size_t i = 0; i < parts.size() && total < k; ++i) {
        Part& p = parts[i];
        const std::string scope = "H" + std::to_string(i);
        for (int kk = 1; total + kk - 1 < k; ++kk) {
            Certificate c = detail::run_pipeline(p.sub.graph, kk, res.ledger, scope, opt.budget);
            if (!c.is_packing()) {
                p.hitting = c;
                break;
            }
            p.packings.push_back(c);
            if (total + kk == k) break;
        }
        total += static_cast<int>(p.packings.size());
    }

    if (total >= k) {
        std::vector<Cycle> cycles;
        int need = k;
        for (const Part& p : parts) {
            if (p.packings.empty() || need == 0) continue;
            int take = std::min<int>(need, static_cast<int>(p.packings.size()));
            for (const Cycle& c : p.packings[static_cast<std::size_t>(take - 1)].cycles) {
                VertexList v;
                for (Vertex x : c.vertices()) v.push_back(to_g(p, x));
                cycles.emplace_back(v);
            }
            need -= take;
        }
        std::sort(cycles.begin(), cycles.end());
        res.ledger.events.push_back("blocks together hold " + std::to_string(k) + " edge-disjoint even A-cycles");
        res.certificate = Certificate::packing(k, cycles);
        return res;
    }

    std::map<Edge, std::string> f;
    for (const Part& p : parts) {
        if (!p.hitting) continue;
        for (std::size_t j = 0; j < p.hitting->edges.size(); ++j) {
            const Edge& e = p.hitting->edges[j];
            f.emplace(Edge(to_g(p, e.u), to_g(p, e.v)), p.hitting->provenance[j]);
        }
    }
    EdgeList edges;
    std::vector<std::string> prov;
    for (const auto& [e, tag] : f) {
        edges.push_back(e);
        prov.push_back(tag);
    }
    res.ledger.entries.push_back({"assembled", "G", static_cast<long long>(edges.size()), single_z_bound(k)});
    res.certificate = Certificate::hitting(k, edges, prov, single_z_bound(k));
    return res;
}

/// Exact answer for desk-scale graphs: a packing of k cycles when one
/// exists, otherwise a minimum edge set meeting every even A-cycle. When one
/// vertex meets every even A-cycle the single-z construction is run as well
/// and its size is recorded in the ledger next to the exact optimum.
inline SolveResult solve_general(const LabeledGraph& g, int k, const OracleBudget& budget = {}) {
    if (k < 1) throw PreconditionError("k must be positive");
    SolveResult res;
    res.ledger.k = k;
    const CyclePredicate pred = CyclePredicate::even_a();
    PackingResult pr = max_edge_disjoint_packing(g, pred, k, budget);
    if (pr.count >= k) {
        std::vector<Cycle> cycles(pr.cycles.begin(), pr.cycles.begin() + k);
        std::sort(cycles.begin(), cycles.end());
        res.ledger.events.push_back("oracle: found " + std::to_string(k) + " edge-disjoint even A-cycles");
        res.certificate = Certificate::packing(k, cycles);
        return res;
    }
    EdgeList hs = min_edge_hitting_set(g, pred, budget);
    res.ledger.events.push_back("oracle: packing number " + std::to_string(pr.count) + " < k, minimum edge hitting set " +
                                std::to_string(hs.size()));
    res.ledger.entries.push_back({"oracle", "G", static_cast<long long>(hs.size()), static_cast<long long>(hs.size())});
    VertexList xs = min_vertex_hitting_set(g, pred, budget);
    if (xs.size() == 1) {
        LabeledGraph gz = g;
        gz.set_z(xs[0]);
        SolveOptions opt;
        opt.checked = false;
        opt.budget = budget;
        SolveResult sz = solve_single_z(gz, k, opt);
        for (const auto& e : sz.ledger.events) res.ledger.events.push_back("single-z[z=" + std::to_string(xs[0]) + "] " + e);
        for (auto e : sz.ledger.entries) {
            e.scope = "single-z/" + e.scope;
            res.ledger.entries.push_back(e);
        }
        if (sz.certificate.is_packing()) throw InternalError("single-z run found a packing the exact oracle missed");
    } else {
        res.ledger.events.push_back("minimum vertex hitting set has size " + std::to_string(xs.size()) +
                                    ", single-z construction not applicable");
    }
    res.certificate = Certificate::hitting(k, hs, std::vector<std::string>(hs.size(), "oracle"));
    return res;
}

}  // namespace evenac
