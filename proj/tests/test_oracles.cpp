#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "evenac/evenac.hpp"
#include "support/random_graphs.hpp"

using namespace evenac;

namespace {

LabeledGraph load(const std::string& name) {
    std::ifstream in(std::string(EVENAC_TEST_DATA) + "/" + name);
    return parse_graph(in);
}

nlohmann::json load_json(const std::string& name) {
    std::ifstream in(std::string(EVENAC_TEST_DATA) + "/" + name);
    return nlohmann::json::parse(in);
}

// Largest packing by trying every subset of target cycles (tiny inputs only).
int brute_packing(const LabeledGraph& g, const std::vector<Cycle>& cycles) {
    int best = 0;
    const std::size_t n = cycles.size();
    std::function<void(std::size_t, std::set<Edge>&, int)> go = [&](std::size_t i, std::set<Edge>& used, int count) {
        best = std::max(best, count);
        if (i == n || count + static_cast<int>(n - i) <= best) return;
        auto es = cycles[i].edges();
        bool free = std::none_of(es.begin(), es.end(), [&](const Edge& e) { return used.count(e) > 0; });
        if (free) {
            for (const Edge& e : es) used.insert(e);
            go(i + 1, used, count + 1);
            for (const Edge& e : es) used.erase(e);
        }
        go(i + 1, used, count);
    };
    std::set<Edge> used;
    go(0, used, 0);
    (void)g;
    return best;
}

// Smallest edge set meeting all cycles, by increasing subset size.
int brute_edge_hitting(const LabeledGraph& g, const std::vector<Cycle>& cycles) {
    const int m = g.m();
    for (int size = 0; size <= m; ++size) {
        std::vector<bool> pick(static_cast<std::size_t>(m), false);
        std::fill(pick.begin(), pick.begin() + size, true);
        do {
            std::set<Edge> f;
            for (int i = 0; i < m; ++i)
                if (pick[static_cast<std::size_t>(i)]) f.insert(g.edges()[static_cast<std::size_t>(i)]);
            bool all = std::all_of(cycles.begin(), cycles.end(), [&](const Cycle& c) {
                auto es = c.edges();
                return std::any_of(es.begin(), es.end(), [&](const Edge& e) { return f.count(e) > 0; });
            });
            if (all) return size;
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return m;
}

}  // namespace

TEST(Packing, TwoC4Example) {
    LabeledGraph g = load("two_c4.graph");
    auto r = max_edge_disjoint_packing(g, CyclePredicate::even_a(), 5);
    EXPECT_EQ(r.count, 2);
    ASSERT_EQ(r.cycles.size(), 2U);
    auto e0 = r.cycles[0].edges(), e1 = r.cycles[1].edges();
    for (const Edge& e : e0) EXPECT_EQ(std::count(e1.begin(), e1.end(), e), 0);
}

TEST(Packing, StopsAtTarget) {
    LabeledGraph g = load("two_c4.graph");
    EXPECT_EQ(max_edge_disjoint_packing(g, CyclePredicate::even_a(), 1).count, 1);
    EXPECT_EQ(max_edge_disjoint_packing(g, CyclePredicate::even_a(), 0).count, 0);
    EXPECT_THROW(max_edge_disjoint_packing(g, CyclePredicate::even_a(), -1), PreconditionError);
}

TEST(Packing, MatchesBruteForce) {
    std::mt19937 rng(17);
    for (int i = 0; i < 120; ++i) {
        LabeledGraph g = testkit::random_connected(rng, 4 + i % 6, 2 + i % 6, 0.35);
        auto cycles = enumerate_cycles(g, CyclePredicate::even_a());
        if (cycles.size() > 22) continue;
        int want = brute_packing(g, cycles);
        auto got = max_edge_disjoint_packing(g, CyclePredicate::even_a(), 100);
        EXPECT_EQ(got.count, want);
        EXPECT_EQ(static_cast<int>(got.cycles.size()), got.count);
        EXPECT_EQ(min_edge_hitting_set(g, CyclePredicate::even_a()).size(),
                  static_cast<std::size_t>(brute_edge_hitting(g, cycles)));
    }
}

TEST(HittingSet, EdgeAndVertexVersions) {
    LabeledGraph c4 = load("c4.graph");
    EXPECT_EQ(min_edge_hitting_set(c4, CyclePredicate::even_a()).size(), 1U);
    LabeledGraph k4 = load("k4.graph");
    // K4 with A = {0}: the three 4-cycles each use two edges at 0 and pairwise share one
    EXPECT_EQ(min_edge_hitting_set(k4, CyclePredicate::even_a()).size(), 2U);
    EXPECT_EQ(min_vertex_hitting_set(k4, CyclePredicate::even_a()), (VertexList{0}));
    LabeledGraph tri(3, {{0, 1}, {1, 2}, {0, 2}}, {0});
    EXPECT_TRUE(min_edge_hitting_set(tri, CyclePredicate::even_a()).empty());
}

TEST(HittingSet, ResultHitsEverything) {
    std::mt19937 rng(23);
    for (int i = 0; i < 80; ++i) {
        LabeledGraph g = testkit::random_connected(rng, 5 + i % 5, 3 + i % 5, 0.3);
        EdgeList f = min_edge_hitting_set(g, CyclePredicate::even_a());
        EXPECT_FALSE(find_cycle(remove_edges(g, f), CyclePredicate::even_a()).has_value());
        VertexList x = min_vertex_hitting_set(g, CyclePredicate::even_a());
        std::vector<bool> drop(static_cast<std::size_t>(g.n()), false);
        for (Vertex v : x) drop[static_cast<std::size_t>(v)] = true;
        EXPECT_FALSE(find_cycle(remove_vertices(g, drop), CyclePredicate::even_a()).has_value());
    }
}

TEST(Verify, AcceptsAndRejects) {
    LabeledGraph g = load("two_c4.graph");
    auto good = Certificate::packing(2, {Cycle({0, 1, 2, 3}), Cycle({0, 4, 5, 6})});
    EXPECT_TRUE(verify_certificate(g, 2, good).pass);
    EXPECT_FALSE(verify_certificate(g, 3, good).pass);

    Certificate bad = certificate_from_json(load_json("two_c4_bad_cert.json"));
    auto rep = verify_certificate(g, bad.k, bad);
    EXPECT_FALSE(rep.pass);
    ASSERT_TRUE(rep.counterexample.has_value());
    EXPECT_EQ(Cycle(*rep.counterexample), Cycle({0, 4, 5, 6}));

    Certificate reused = certificate_from_json(load_json("two_c4_reused_cert.json"));
    EXPECT_FALSE(verify_certificate(g, reused.k, reused).pass);

    auto odd = Certificate::packing(1, {Cycle({0, 1, 2})});
    EXPECT_FALSE(verify_certificate(LabeledGraph(3, {{0, 1}, {1, 2}, {0, 2}}, {0}), 1, odd).pass);
    auto missing = Certificate::hitting(1, {Edge(0, 9)}, {"oracle"});
    EXPECT_FALSE(verify_certificate(g, 1, missing).pass);
}

TEST(Verify, InconclusiveOverBudget) {
    LabeledGraph big(80);
    for (int i = 0; i + 1 < 80; ++i) big.add_edge(i, i + 1);
    auto rep = verify_certificate(big, 1, Certificate::hitting(1, {}, {}));
    EXPECT_FALSE(rep.pass);
    EXPECT_TRUE(rep.inconclusive);
}

TEST(CertificateJson, RoundTrip) {
    auto p = Certificate::packing(2, {Cycle({0, 1, 2, 3}), Cycle({0, 4, 5, 6})});
    EXPECT_EQ(certificate_from_json(nlohmann::json::parse(to_json(p).dump())), p);
    auto h = Certificate::hitting(3, {Edge(0, 1), Edge(2, 5)}, {"z-incident", "block:F_B"}, single_z_bound(3));
    auto back = certificate_from_json(nlohmann::json::parse(to_json(h).dump()));
    EXPECT_EQ(back, h);
    EXPECT_EQ(to_json(h)["kind"], "hitting");
    EXPECT_EQ(single_z_bound(2), 1080LL * 32);
    EXPECT_THROW(certificate_from_json(nlohmann::json::parse(R"({"kind":"nope"})")), Error);
}
