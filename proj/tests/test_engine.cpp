#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "evenac/evenac.hpp"
#include "support/instances.hpp"
#include "support/random_graphs.hpp"

using namespace evenac;
using namespace evenac::testkit;

namespace {

LabeledGraph load(const std::string& name) {
    std::ifstream in(std::string(EVENAC_TEST_DATA) + "/" + name);
    return parse_graph(in);
}

OracleBudget wide_budget() {
    OracleBudget b;
    b.max_vertices = 400;
    return b;
}

bool edge_set_meets(const EdgeList& f, const Cycle& c) {
    std::set<Edge> fs(f.begin(), f.end());
    auto es = c.edges();
    return std::any_of(es.begin(), es.end(), [&](const Edge& e) { return fs.count(e) > 0; });
}

void expect_packing(const LabeledGraph& g, const Certificate& c, int k) {
    ASSERT_TRUE(c.is_packing());
    // structural checks only; no enumeration needed for packings
    auto rep = verify_certificate(g, k, c, CyclePredicate::even_a(), wide_budget());
    EXPECT_TRUE(rep.pass) << (rep.failures.empty() ? "" : rep.failures.front());
}

// Vertices of a string, for the heavy-cycle test.
Mask heavy_mask_for_string(const PipelineState& s, const StringPath& sp) { return detail::mask_of(s.g.n(), sp.vertices); }

}  // namespace

// ---------------------------------------------------------------------------
// Worked examples

TEST(Examples, TwoDisjointFourCycles) {
    LabeledGraph g = load("two_c4.graph");
    SolveResult r = solve_single_z(g, 2);
    expect_packing(g, r.certificate, 2);
}

TEST(Examples, SingleFourCycle) {
    LabeledGraph g = load("c4.graph");
    SolveResult r = solve_single_z(g, 2);
    ASSERT_FALSE(r.certificate.is_packing());
    EXPECT_TRUE(verify_certificate(g, 2, r.certificate).pass);
    EXPECT_LE(static_cast<long long>(r.certificate.edges.size()), single_z_bound(2));
    EXPECT_TRUE(r.ledger.within_bounds());
}

TEST(Examples, K4GeneralMode) {
    LabeledGraph g = load("k4.graph");
    SolveResult r = solve_general(g, 2);
    ASSERT_FALSE(r.certificate.is_packing());
    EXPECT_EQ(r.certificate.edges.size(), 2U);
    EXPECT_TRUE(verify_certificate(g, 2, r.certificate).pass);
    SolveResult one = solve_general(g, 1);
    expect_packing(g, one.certificate, 1);
}

TEST(Examples, EmptyAGivesEmptySet) {
    LabeledGraph g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    SolveResult r = solve_general(g, 3);
    ASSERT_FALSE(r.certificate.is_packing());
    EXPECT_TRUE(r.certificate.edges.empty());
}

TEST(Examples, ZInAWithSmallDegree) {
    LabeledGraph g = load("k4.graph");
    g.set_z(0);
    SolveResult r = solve_single_z(g, 2);
    ASSERT_FALSE(r.certificate.is_packing());
    EXPECT_EQ(r.certificate.edges.size(), 3U);
    for (const auto& tag : r.certificate.provenance) EXPECT_EQ(tag, "z-incident");
    EXPECT_TRUE(verify_certificate(g, 2, r.certificate).pass);
}

TEST(Examples, ZInAWithLargeDegree) {
    LabeledGraph g = wheel_z_in_a(8);
    Certificate c = handle_z_in_a(g, 2);
    expect_packing(g, c, 2);
    SolveResult r = solve_single_z(g, 2);
    expect_packing(g, r.certificate, 2);
    LabeledGraph small = wheel_z_in_a(7);
    Certificate h = handle_z_in_a(small, 2);
    EXPECT_FALSE(h.is_packing());
    EXPECT_EQ(h.edges.size(), 7U);
    EXPECT_LE(static_cast<int>(h.edges.size()), 4 * 2 - 1);
}

TEST(Examples, BrokenInstanceIsRejectedWithWitness) {
    LabeledGraph g = load("broken_single_z.graph");
    try {
        solve_single_z(g, 2);
        FAIL() << "accepted an instance whose G - z has an even A-cycle";
    } catch (const AssumptionError& e) {
        ASSERT_TRUE(e.witness().has_value());
        Cycle c = *e.witness();
        EXPECT_TRUE(c.even());
        EXPECT_TRUE(c.meets(g));
        EXPECT_FALSE(c.contains(*g.z()));
    }
}

TEST(Examples, Preconditions) {
    LabeledGraph g = load("k4.graph");
    EXPECT_THROW(solve_single_z(g, 1), PreconditionError);  // no z
    g.set_z(1);
    EXPECT_THROW(solve_single_z(g, 0), PreconditionError);
    EXPECT_THROW(solve_general(g, 0), PreconditionError);
}

// ---------------------------------------------------------------------------
// Block degree

TEST(BlockDegree, K4ContainsTheta) {
    LabeledGraph g = load("k4.graph");
    auto v = detail::block_degree_in(g, block_tree(g));
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->a, 0);
    EXPECT_EQ(v->theta.defect(), "");
    EXPECT_TRUE(v->cycle.even());
    EXPECT_TRUE(v->cycle.meets(g));
    EXPECT_TRUE(is_cycle_of(g, v->cycle.vertices()));
}

TEST(BlockDegree, OkCases) {
    EXPECT_FALSE(check_block_degree(odd_cycle_with_z(13, 6)).has_value());
    LabeledGraph bridge(3, {{0, 1}, {1, 2}}, {1});
    EXPECT_FALSE(detail::block_degree_in(bridge, block_tree(bridge)).has_value());
}

TEST(BlockDegree, ViolationStopsThePipeline) {
    // K4 on 0..3 with 0 in A, plus z joined to 1 and 2: G - z still holds K4
    LabeledGraph g(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {4, 1}, {4, 2}}, {0}, 4);
    SolveOptions opt;
    opt.checked = false;
    EXPECT_THROW(solve_single_z(g, 2, opt), AssumptionError);
}

// ---------------------------------------------------------------------------
// Block hitting sets

TEST(BlockHittingSet, ManyAttachedSegmentsGivePacking) {
    LabeledGraph g = odd_cycle_with_z(13, 6);
    PipelineState s = build_state(g, 2);
    ASSERT_EQ(s.a_sbar.size(), 1U);
    PartResult r = block_hitting_set(s, s.a_sbar[0]);
    ASSERT_TRUE(r.packing.has_value());
    expect_packing(g, *r.packing, 2);
    SolveResult full = solve_single_z(g, 2);
    expect_packing(g, full.certificate, 2);
}

TEST(BlockHittingSet, ThreeSegmentsAndKOne) {
    LabeledGraph g = c9_three_segments();
    PipelineState s = build_state(g, 1);
    PartResult r = block_hitting_set(s, s.a_sbar.at(0));
    ASSERT_TRUE(r.packing.has_value());
    expect_packing(g, *r.packing, 1);
}

TEST(BlockHittingSet, FewSegmentsGiveEdgeSet) {
    LabeledGraph g = c9_three_segments();
    PipelineState s = build_state(g, 2);
    const int b = s.a_sbar.at(0);
    PartResult r = block_hitting_set(s, b);
    ASSERT_FALSE(r.packing.has_value());
    EXPECT_LE(static_cast<int>(r.edges.size()), 12 * 2);
    Mask bm = s.block_mask(b);
    for (const Cycle& c : enumerate_cycles(g, CyclePredicate::even_a()))
        if (is_heavy(g, c, bm)) EXPECT_TRUE(edge_set_meets(r.edges, c));
}

TEST(BlockHittingSet, SeventhCycleWithOneAttachment) {
    // C7 with A = {0, 2, 4}; z attached to vertex 1 and (for 2-connectivity) vertex 5
    LabeledGraph g(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {0, 6}, {7, 1}, {7, 5}}, {0, 2, 4}, 7);
    PipelineState s = build_state(g, 1);
    PartResult r = block_hitting_set(s, s.a_sbar.at(0));
    ASSERT_FALSE(r.packing.has_value());
    EXPECT_LE(static_cast<int>(r.edges.size()), 12);
    Mask bm = s.block_mask(s.a_sbar.at(0));
    for (const Cycle& c : enumerate_cycles(g, CyclePredicate::even_a()))
        if (is_heavy(g, c, bm)) EXPECT_TRUE(edge_set_meets(r.edges, c));
}

TEST(BlockHittingSet, AtMostTwoAVertices) {
    LabeledGraph g = triangle_chain(3);
    PipelineState s = build_state(g, 2);
    for (int b : s.a_sbar) {
        PartResult r = block_hitting_set(s, b);
        ASSERT_FALSE(r.packing.has_value());
        EXPECT_LE(r.edges.size(), 4U);
        for (const Edge& e : r.edges) EXPECT_TRUE(g.in_a(e.u) || g.in_a(e.v));
    }
}

// ---------------------------------------------------------------------------
// Strings

TEST(Strings, TriangleRunFormsOneString) {
    LabeledGraph g = triangle_string(3);
    PipelineState s = build_state(g, 2);
    ASSERT_EQ(s.strings.size(), 1U);
    EXPECT_EQ(s.strings[0].blocks.size(), 3U);
    EXPECT_EQ(string_defect(s, s.strings[0]), "");
    for (int b : s.strings[0].blocks) EXPECT_FALSE(s.block_has_z_nbr(b));
    EXPECT_TRUE(s.a_sbar.empty());
}

TEST(Strings, BlockTouchingZSplitsStrings) {
    LabeledGraph g = two_strings(2);
    PipelineState s = build_state(g, 2);
    ASSERT_EQ(s.strings.size(), 2U);
    std::set<Vertex> seen;
    for (const auto& sp : s.strings) {
        EXPECT_EQ(string_defect(s, sp), "");
        for (int b : sp.blocks) EXPECT_FALSE(s.block_has_z_nbr(b));
        for (int b : sp.blocks) EXPECT_TRUE(seen.insert(b).second);
    }
}

TEST(Strings, FewABlocksUseBlockSets) {
    LabeledGraph g = triangle_string(1);
    PipelineState s = build_state(g, 1);
    ASSERT_EQ(s.strings.size(), 1U);
    PartResult r = string_hitting_set(s, 0);
    EXPECT_EQ(r.branch, "fewer than 2k A-blocks: union of block sets");
    EXPECT_LE(static_cast<int>(r.edges.size()), 12);
}

TEST(Strings, SmallSeparator) {
    LabeledGraph g = triangle_string(4);
    PipelineState s = build_state(g, 2);
    ASSERT_EQ(s.strings.size(), 1U);
    PartResult r = string_hitting_set(s, 0);
    ASSERT_FALSE(r.packing.has_value());
    EXPECT_EQ(r.branch.rfind("small separator", 0), 0U) << r.branch;
    EXPECT_LE(static_cast<int>(r.edges.size()), 10 * 2);
    Mask sm = heavy_mask_for_string(s, s.strings[0]);
    for (const Cycle& c : enumerate_cycles(g, CyclePredicate::even_a()))
        if (is_heavy(g, c, sm)) EXPECT_TRUE(edge_set_meets(r.edges, c));
    SolveResult full = solve_single_z(g, 2);
    EXPECT_TRUE(verify_certificate(g, 2, full.certificate).pass);
}

TEST(Strings, FatStringGivesPacking) {
    LabeledGraph g = fat_string(11);
    PipelineState s = build_state(g, 1);
    ASSERT_EQ(s.strings.size(), 1U);
    PartResult r = string_hitting_set(s, 0);
    EXPECT_EQ(r.branch, "no separator of size <= 10k: packing");
    ASSERT_TRUE(r.packing.has_value());
    expect_packing(g, *r.packing, 1);
    SolveOptions opt;
    opt.checked = false;  // 72 vertices: above the oracle cap
    SolveResult full = solve_single_z(g, 1, opt);
    expect_packing(g, full.certificate, 1);
}

// ---------------------------------------------------------------------------
// Reduced tree and tree witnesses

TEST(ReducedTree, ChainKeepsItsABlocks) {
    // every block is an A-block; the degree-2 cutvertices between them are suppressed
    LabeledGraph g = triangle_chain(5);
    PipelineState s = build_state(g, 1);
    ReducedTree rt = build_reduced_tree(s);
    EXPECT_EQ(reduced_tree_defect(s, rt), "");
    EXPECT_EQ(rt.tree.n(), 5);
    EXPECT_EQ(rt.tree.diameter(), 4);
    for (int x : rt.bt_node) EXPECT_TRUE(s.bt.is_block(x));
}

TEST(ReducedTree, ABlockFreeBranchesArePruned) {
    LabeledGraph g = two_claws();
    PipelineState s = build_state(g, 2);
    ReducedTree rt = build_reduced_tree(s);
    EXPECT_EQ(reduced_tree_defect(s, rt), "");
    // six arms and two centres; the connecting triangle is suppressed
    EXPECT_EQ(rt.tree.n(), 8);
    EXPECT_EQ(rt.tree.leaves().size(), 6U);
}

TEST(ReducedTree, RandomInstancesSatisfyPostcondition) {
    std::mt19937 rng(31);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        LabeledGraph g = random_single_z(rng, 3 + i % 8, 2 + i % 4, 0.5, false);
        if (!is_connected(g)) continue;
        PipelineState s = build_state(g, 2);
        ReducedTree rt = build_reduced_tree(s);
        if (rt.empty()) continue;
        EXPECT_EQ(reduced_tree_defect(s, rt), "");
        ++checked;
    }
    EXPECT_GT(checked, 50);
}

TEST(TreeWitness, StarWithKTwo) {
    LabeledGraph g = triangle_star(6);
    PipelineState s = build_state(g, 2);
    ReducedTree rt = build_reduced_tree(s);
    Vertex centre = -1;
    for (Vertex v = 0; v < rt.tree.n(); ++v)
        if (rt.tree.degree(v) >= 6) centre = v;
    ASSERT_GE(centre, 0);
    Certificate c = packing_from_tree_witness(s, rt, MaxDegreeWitness{centre});
    expect_packing(g, c, 2);
}

TEST(TreeWitness, ClawsWithKOneAndTwo) {
    LabeledGraph g = two_claws();
    for (int k : {1, 2}) {
        PipelineState s = build_state(g, k);
        ReducedTree rt = build_reduced_tree(s);
        auto subs = three_leaf_subtrees(rt.tree);
        ASSERT_GE(static_cast<int>(subs.size()), k);
        subs.resize(static_cast<std::size_t>(k));
        Certificate c = packing_from_tree_witness(s, rt, ThreeLeafWitness{subs});
        expect_packing(g, c, k);
    }
}

TEST(TreeWitness, LongPathWithKTwo) {
    LabeledGraph g = triangle_chain(31);
    PipelineState s = build_state(g, 2);
    ReducedTree rt = build_reduced_tree(s);
    Path p = rt.tree.longest_path();
    ASSERT_GE(static_cast<int>(p.size()) - 1, 30);
    Certificate c = packing_from_tree_witness(s, rt, LongPathWitness{p});
    expect_packing(g, c, 2);
}

TEST(TreeWitness, InvalidWitnessRejected) {
    LabeledGraph g = triangle_star(6);
    PipelineState s = build_state(g, 3);
    ReducedTree rt = build_reduced_tree(s);
    EXPECT_THROW(packing_from_tree_witness(s, rt, MaxDegreeWitness{0}), PreconditionError);
}

TEST(TreeWitness, EndToEndAboveThreshold) {
    SolveOptions opt;
    opt.checked = false;
    for (const LabeledGraph& g : {triangle_star(45), triangle_chain(45)}) {
        SolveResult r = solve_single_z(g, 1, opt);
        expect_packing(g, r.certificate, 1);
        bool tree_route = std::any_of(r.ledger.events.begin(), r.ledger.events.end(),
                                      [](const std::string& e) { return e.find("reduced tree outcome") != std::string::npos; });
        EXPECT_TRUE(tree_route);
    }
}

// ---------------------------------------------------------------------------
// Leaf blocks must see z

TEST(Assumptions, LeafBlockWithoutZNeighbour) {
    // C5 on 0..4 (A = {0}) with z joined to 1 and 3, plus a pendant triangle 2-5-6
    LabeledGraph g(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {2, 5}, {5, 6}, {2, 6}, {7, 1}, {7, 3}}, {0}, 7);
    PipelineState s = build_state(g, 2);
    EXPECT_FALSE(leaf_blocks_missing_z(s).empty());
}

// ---------------------------------------------------------------------------
// Random single-z instances

TEST(RandomSingleZ, CertificatesVerifyAndRespectBounds) {
    std::mt19937 rng(2024);
    int solved = 0;
    for (int i = 0; i < 150; ++i) {
        LabeledGraph g = random_single_z(rng, 2 + i % 6, 2 + i % 5, 0.5, i % 10 == 0);
        Mask drop(static_cast<std::size_t>(g.n()), false);
        drop[static_cast<std::size_t>(*g.z())] = true;
        if (find_cycle(remove_vertices(g, drop), CyclePredicate::even_a())) continue;
        for (int k = 1; k <= 3; ++k) {
            SolveResult r;
            try {
                r = solve_single_z(g, k);
            } catch (const AssumptionError&) {
                continue;  // leaf block without a z-neighbour
            }
            auto rep = verify_certificate(g, k, r.certificate);
            EXPECT_TRUE(rep.pass) << serialize_graph(g) << " k=" << k;
            EXPECT_TRUE(r.ledger.within_bounds());
            if (!r.certificate.is_packing())
                EXPECT_LE(static_cast<long long>(r.certificate.edges.size()), single_z_bound(k));
            ++solved;
        }
    }
    EXPECT_GT(solved, 100);
}

TEST(RandomSingleZ, EveryEvenACycleIsHeavySomewhere) {
    std::mt19937 rng(77);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        LabeledGraph g = random_single_z(rng, 2 + i % 6, 2 + i % 4, 0.5, false);
        if (!is_connected(g) || block_tree(g).block_count() != 1) continue;  // 2-connected only
        if (check_block_degree(g)) continue;
        PipelineState s = build_state(g, 1);
        if (!leaf_blocks_missing_z(s).empty()) continue;
        std::vector<Mask> ys;
        for (const auto& sp : s.strings) ys.push_back(detail::mask_of(g.n(), sp.vertices));
        for (int b : s.a_sbar) ys.push_back(s.block_mask(b));
        for (const Cycle& c : enumerate_cycles(g, CyclePredicate::even_a())) {
            bool heavy = std::any_of(ys.begin(), ys.end(), [&](const Mask& m) { return is_heavy(g, c, m); });
            EXPECT_TRUE(heavy);
        }
        ++checked;
    }
    EXPECT_GT(checked, 10);
}

TEST(Determinism, RepeatedRunsAgree) {
    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i) {
        LabeledGraph g = random_connected(rng, 8, 4, 0.4);
        auto a = to_json(solve_general(g, 2).certificate).dump();
        auto b = to_json(solve_general(g, 2).certificate).dump();
        EXPECT_EQ(a, b);
    }
    LabeledGraph g = triangle_string(4);
    auto r1 = solve_single_z(g, 2), r2 = solve_single_z(g, 2);
    EXPECT_EQ(to_json(r1.certificate).dump(), to_json(r2.certificate).dump());
    EXPECT_EQ(r1.ledger.to_json().dump(), r2.ledger.to_json().dump());
}
