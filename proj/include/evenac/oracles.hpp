#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "evenac/budget.hpp"
#include "evenac/certificate.hpp"
#include "evenac/cycles.hpp"
#include "evenac/graph.hpp"

namespace evenac {

namespace detail {

// Cycles of one predicate as fixed-width bit rows over edge ids (or vertex
// ids), stored contiguously.
class BitFamily {
public:
    BitFamily(int universe, std::size_t rows)
        : words_(std::max(1, (universe + 63) / 64)), bits_(rows * static_cast<std::size_t>(words_), 0) {}

    int words() const { return words_; }
    std::size_t rows() const { return bits_.size() / static_cast<std::size_t>(words_); }
    std::uint64_t* row(std::size_t i) { return bits_.data() + i * static_cast<std::size_t>(words_); }
    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * static_cast<std::size_t>(words_); }

    void set(std::size_t i, int bit) { row(i)[bit / 64] |= std::uint64_t{1} << (bit % 64); }
    bool test(std::size_t i, int bit) const { return (row(i)[bit / 64] >> (bit % 64)) & 1U; }

    bool disjoint(std::size_t i, std::size_t j) const {
        const auto *a = row(i), *b = row(j);
        for (int w = 0; w < words_; ++w)
            if (a[w] & b[w]) return false;
        return true;
    }
    bool disjoint_mask(std::size_t i, const std::vector<std::uint64_t>& m) const {
        const auto* a = row(i);
        for (int w = 0; w < words_; ++w)
            if (a[w] & m[static_cast<std::size_t>(w)]) return false;
        return true;
    }
    int lowest(std::size_t i) const {
        const auto* a = row(i);
        for (int w = 0; w < words_; ++w)
            if (a[w]) return w * 64 + std::countr_zero(a[w]);
        return -1;
    }
    int highest(std::size_t i) const {
        const auto* a = row(i);
        for (int w = words_ - 1; w >= 0; --w)
            if (a[w]) return w * 64 + 63 - std::countl_zero(a[w]);
        return -1;
    }

private:
    int words_;
    std::vector<std::uint64_t> bits_;
};

inline BitFamily edge_family(const LabeledGraph& g, const std::vector<Cycle>& cycles) {
    BitFamily f(g.m(), cycles.size());
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (const Edge& e : cycles[i].edges()) f.set(i, g.edge_id(e.u, e.v));
    return f;
}

inline BitFamily vertex_family(const LabeledGraph& g, const std::vector<Cycle>& cycles) {
    BitFamily f(g.n(), cycles.size());
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (Vertex x : cycles[i].vertices()) f.set(i, x);
    return f;
}

inline std::vector<Cycle> oracle_cycles(const LabeledGraph& g, const CyclePredicate& pred, const OracleBudget& budget) {
    BudgetMeter(budget).require_vertices(g.n());
    return enumerate_cycles(g, pred, std::nullopt, budget);
}

// Exact minimum hitting set over a bit family, lexicographically smallest
// among the minimum ones. Elements are chosen in increasing order; the next
// element never exceeds the smallest "largest element" among the cycles not
// yet hit, otherwise that cycle could no longer be hit.
class MinHitter {
public:
    MinHitter(const BitFamily& fam, int universe, BudgetMeter& meter)
        : fam_(fam), universe_(universe), meter_(meter) {
        top_.resize(fam_.rows());
        for (std::size_t i = 0; i < top_.size(); ++i) top_[i] = fam_.highest(i);
    }

    std::vector<int> solve() {
        std::vector<std::size_t> all(rows());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        if (all.empty()) return {};
        for (int size = lower_bound(all, -1);; ++size) {
            chosen_.clear();
            if (dfs(all, -1, size)) return chosen_;
            if (size > universe_) throw InternalError("hitting set search exceeded the universe");
        }
    }

private:
    std::size_t rows() const { return top_.size(); }

    // Greedy count of pairwise disjoint cycles using only elements > last.
    int lower_bound(const std::vector<std::size_t>& unhit, int last) {
        std::vector<std::uint64_t> used(static_cast<std::size_t>(fam_.words()), 0);
        for (int b = 0; b <= last && b < fam_.words() * 64; ++b) used[static_cast<std::size_t>(b / 64)] |= std::uint64_t{1} << (b % 64);
        int count = 0;
        for (std::size_t i : unhit) {
            if (!fam_.disjoint_mask(i, used)) continue;
            ++count;
            const auto* r = fam_.row(i);
            for (int w = 0; w < fam_.words(); ++w) used[static_cast<std::size_t>(w)] |= r[w];
        }
        return count;
    }

    bool dfs(const std::vector<std::size_t>& unhit, int last, int size) {
        meter_.expand();
        if (unhit.empty()) return true;
        const int left = size - static_cast<int>(chosen_.size());
        if (left <= 0) return false;
        int cap = universe_;
        for (std::size_t i : unhit) cap = std::min(cap, top_[i]);
        if (cap <= last) return false;
        if (lower_bound(unhit, last) > left) return false;
        std::vector<bool> useful(static_cast<std::size_t>(cap + 1), false);
        for (std::size_t i : unhit)
            for (int b = last + 1; b <= cap; ++b)
                if (!useful[static_cast<std::size_t>(b)] && fam_.test(i, b)) useful[static_cast<std::size_t>(b)] = true;
        std::vector<std::size_t> next;
        for (int b = last + 1; b <= cap; ++b) {
            if (!useful[static_cast<std::size_t>(b)]) continue;
            next.clear();
            for (std::size_t i : unhit)
                if (!fam_.test(i, b)) next.push_back(i);
            chosen_.push_back(b);
            if (dfs(next, b, size)) return true;
            chosen_.pop_back();
        }
        return false;
    }

    const BitFamily& fam_;
    int universe_;
    BudgetMeter& meter_;
    std::vector<int> top_;
    std::vector<int> chosen_;
};

}  // namespace detail

struct PackingResult {
    int count = 0;
    std::vector<Cycle> cycles;  // pairwise edge-disjoint witnesses, count of them
};

/// Maximum number of pairwise edge-disjoint cycles satisfying `pred`, capped
/// at `k_target` (search stops once that many are found). Branch and bound:
/// branch on the lowest edge still used by a candidate cycle (take one cycle
/// through it, or forbid the edge); bound by the edge-degree count
/// sum_v floor(d_v/2) / shortest length over the surviving cycles.
inline PackingResult max_edge_disjoint_packing(const LabeledGraph& g, const CyclePredicate& pred, int k_target,
                                               const OracleBudget& budget = OracleBudget::from_env()) {
    if (k_target < 0) throw PreconditionError("k_target must be non-negative");
    auto cycles = detail::oracle_cycles(g, pred, budget);
    PackingResult best;
    if (k_target == 0 || cycles.empty()) return best;
    auto fam = detail::edge_family(g, cycles);
    BudgetMeter meter(budget);
    std::vector<std::size_t> stack;

    // greedy start
    {
        std::vector<std::size_t> pick;
        for (std::size_t i = 0; i < cycles.size() && static_cast<int>(pick.size()) < k_target; ++i)
            if (std::all_of(pick.begin(), pick.end(), [&](std::size_t j) { return fam.disjoint(i, j); })) pick.push_back(i);
        best.count = static_cast<int>(pick.size());
        for (std::size_t i : pick) best.cycles.push_back(cycles[i]);
    }
    auto upper = [&](const std::vector<std::size_t>& rem) {
        std::vector<int> deg(static_cast<std::size_t>(g.n()), 0);
        std::vector<std::uint64_t> uni(static_cast<std::size_t>(fam.words()), 0);
        int minlen = g.n() + 1;
        for (std::size_t i : rem) {
            const auto* r = fam.row(i);
            for (int w = 0; w < fam.words(); ++w) uni[static_cast<std::size_t>(w)] |= r[w];
            minlen = std::min(minlen, cycles[i].length());
        }
        for (int id = 0; id < g.m(); ++id)
            if ((uni[static_cast<std::size_t>(id / 64)] >> (id % 64)) & 1U) {
                ++deg[static_cast<std::size_t>(g.edges()[static_cast<std::size_t>(id)].u)];
                ++deg[static_cast<std::size_t>(g.edges()[static_cast<std::size_t>(id)].v)];
            }
        int half = 0;
        for (int d : deg) half += d / 2;
        return half / minlen;
    };
    std::function<void(const std::vector<std::size_t>&)> rec = [&](const std::vector<std::size_t>& rem) {
        meter.expand();
        const int have = static_cast<int>(stack.size());
        if (have > best.count) {
            best.count = have;
            best.cycles.clear();
            for (std::size_t i : stack) best.cycles.push_back(cycles[i]);
        }
        if (best.count >= k_target || rem.empty()) return;
        if (have + upper(rem) <= best.count) return;
        int e = fam.words() * 64;
        for (std::size_t i : rem) e = std::min(e, fam.lowest(i));
        std::vector<std::size_t> next;
        for (std::size_t i : rem) {
            if (!fam.test(i, e)) continue;
            next.clear();
            const bool any_suffices = have + 2 > best.count && have + 2 >= k_target;
            for (std::size_t j : rem) {
                if (j != i && fam.disjoint(i, j)) {
                    next.push_back(j);
                    if (any_suffices) break;
                }
            }
            meter.expand();
            stack.push_back(i);
            rec(next);
            stack.pop_back();
            if (best.count >= k_target) return;
        }
        next.clear();
        for (std::size_t i : rem)
            if (!fam.test(i, e)) next.push_back(i);
        rec(next);
    };
    std::vector<std::size_t> all(cycles.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    rec(all);
    std::sort(best.cycles.begin(), best.cycles.end());
    return best;
}

/// Minimum edge set meeting every cycle satisfying `pred`; among minimum sets
/// the lexicographically smallest (edges in lexicographic order) is returned.
inline EdgeList min_edge_hitting_set(const LabeledGraph& g, const CyclePredicate& pred,
                                     const OracleBudget& budget = OracleBudget::from_env()) {
    auto cycles = detail::oracle_cycles(g, pred, budget);
    auto fam = detail::edge_family(g, cycles);
    BudgetMeter meter(budget);
    detail::MinHitter h(fam, g.m(), meter);
    EdgeList out;
    for (int id : h.solve()) out.push_back(g.edges()[static_cast<std::size_t>(id)]);
    return out;
}

/// Minimum vertex set meeting every cycle satisfying `pred` (lexicographically
/// smallest among the minimum ones).
inline VertexList min_vertex_hitting_set(const LabeledGraph& g, const CyclePredicate& pred,
                                         const OracleBudget& budget = OracleBudget::from_env()) {
    auto cycles = detail::oracle_cycles(g, pred, budget);
    auto fam = detail::vertex_family(g, cycles);
    BudgetMeter meter(budget);
    detail::MinHitter h(fam, g.n(), meter);
    auto ids = h.solve();
    return VertexList(ids.begin(), ids.end());
}

// ---------------------------------------------------------------------------
// Certificate verification

struct VerificationReport {
    bool pass = false;
    bool inconclusive = false;
    std::vector<std::string> failures;
    std::optional<VertexList> counterexample;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["pass"] = pass;
        j["inconclusive"] = inconclusive;
        j["failures"] = failures;
        if (counterexample)
            j["counterexample"] = *counterexample;
        else
            j["counterexample"] = nullptr;
        return j;
    }
};

/// Checks a certificate from scratch against G; provenance tags are ignored.
/// A budget overrun yields an inconclusive, failing report.
inline VerificationReport verify_certificate(const LabeledGraph& g, int k, const Certificate& cert,
                                             const CyclePredicate& pred = CyclePredicate::even_a(),
                                             const OracleBudget& budget = OracleBudget::from_env()) {
    VerificationReport r;
    auto fail = [&](std::string msg) { r.failures.push_back(std::move(msg)); };
    if (cert.k != k) fail("certificate is for k=" + std::to_string(cert.k) + ", expected k=" + std::to_string(k));
    if (cert.is_packing()) {
        if (static_cast<int>(cert.cycles.size()) != k)
            fail("packing has " + std::to_string(cert.cycles.size()) + " cycles, expected " + std::to_string(k));
        std::set<Edge> used;
        for (std::size_t i = 0; i < cert.cycles.size(); ++i) {
            const Cycle& c = cert.cycles[i];
            const std::string tag = "cycle " + std::to_string(i);
            if (!is_cycle_of(g, c.vertices())) {
                fail(tag + " is not a cycle of the graph");
                if (!r.counterexample) r.counterexample = c.vertices();
                continue;
            }
            if (pred.even && !c.even()) fail(tag + " has odd length");
            if (pred.meets_a && !c.meets(g)) fail(tag + " avoids A");
            if (!pred.accepts_length(c.length()) && !(pred.even && !c.even())) fail(tag + " has a rejected length");
            for (const Edge& e : c.edges())
                if (!used.insert(e).second) fail(tag + " reuses edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        }
    } else {
        std::set<Edge> f;
        for (const Edge& e : cert.edges) {
            if (!g.has_edge(e)) fail("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not in the graph");
            if (!f.insert(e).second) fail("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " listed twice");
        }
        try {
            BudgetMeter(budget).require_vertices(g.n());
            LabeledGraph rest = remove_edges(g, EdgeList(f.begin(), f.end()));
            if (auto c = find_cycle(rest, pred, budget)) {
                fail("a target cycle avoids the edge set");
                r.counterexample = c->vertices();
            }
        } catch (const BudgetError& ex) {
            r.inconclusive = true;
            fail(std::string("inconclusive: ") + ex.what());
        }
    }
    r.pass = r.failures.empty();
    return r;
}

}  // namespace evenac
