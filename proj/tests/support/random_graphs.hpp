#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "evenac/evenac.hpp"

namespace evenac::testkit {

/// Random connected graph with n vertices and about n + extra edges.
inline LabeledGraph random_connected(std::mt19937& rng, int n, int extra, double a_prob) {
    std::set<Edge> es;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        es.emplace(pick(rng), v);
    }
    std::uniform_int_distribution<int> any(0, n - 1);
    for (int i = 0; i < extra * 4 && static_cast<int>(es.size()) < n - 1 + extra; ++i) {
        int a = any(rng), b = any(rng);
        if (a != b) es.emplace(a, b);
    }
    std::bernoulli_distribution in_a(a_prob);
    VertexList a;
    for (int v = 0; v < n; ++v)
        if (in_a(rng)) a.push_back(v);
    return LabeledGraph(n, EdgeList(es.begin(), es.end()), a);
}

/// G - z is a chain-and-tree of blocks whose cycles are odd or avoid A, so
/// every even A-cycle has to pass through z. z is the last vertex and gets
/// `z_edges` random neighbours.
inline LabeledGraph random_single_z(std::mt19937& rng, int blocks, int z_edges, double a_prob, bool z_in_a) {
    std::vector<Edge> es;
    int n = 1;
    VertexList a;
    std::bernoulli_distribution in_a(a_prob), coin(0.5);
    std::uniform_int_distribution<int> len_pick(1, 7);
    for (int b = 0; b < blocks; ++b) {
        std::uniform_int_distribution<int> at_pick(0, n - 1);
        Vertex at = at_pick(rng);
        int len = len_pick(rng);  // 1: bridge, else a cycle of length len
        if (len == 1 || len == 2) {
            es.emplace_back(at, n);
            if (in_a(rng)) a.push_back(n);
            ++n;
            continue;
        }
        bool odd = len % 2 == 1;
        bool with_a = odd && in_a(rng);
        Vertex prev = at;
        for (int i = 1; i < len; ++i) {
            es.emplace_back(prev, n);
            prev = n;
            if (with_a && coin(rng)) a.push_back(n);
            ++n;
        }
        es.emplace_back(prev, at);
    }
    // drop A from vertices lying on even cycles only is already ensured;
    // cutvertices on even cycles would break the contract, so only keep A
    // vertices whose cycles are odd (checked by the caller with the oracle)
    const Vertex z = n++;
    std::uniform_int_distribution<int> any(0, z - 1);
    std::set<Vertex> nb;
    for (int i = 0; i < z_edges * 3 && static_cast<int>(nb.size()) < z_edges; ++i) nb.insert(any(rng));
    for (Vertex y : nb) es.emplace_back(z, y);
    if (z_in_a) a.push_back(z);
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return LabeledGraph(n, es, a, z);
}

}  // namespace evenac::testkit
