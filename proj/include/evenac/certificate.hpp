#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "evenac/graph.hpp"

namespace evenac {

enum class CertificateKind { Packing, HittingSet };

/// Either k edge-disjoint target cycles or an edge set meeting all of them,
/// with the origin tag of every edge ("z-incident", "block:F_B",
/// "string:F_S", or "oracle" for the exact fallback).
struct Certificate {
    CertificateKind kind = CertificateKind::HittingSet;
    int k = 0;
    std::vector<Cycle> cycles;
    EdgeList edges;
    std::vector<std::string> provenance;
    std::optional<long long> bound_claimed;

    static Certificate packing(int k, std::vector<Cycle> cycles) {
        Certificate c;
        c.kind = CertificateKind::Packing;
        c.k = k;
        c.cycles = std::move(cycles);
        return c;
    }
    static Certificate hitting(int k, EdgeList edges, std::vector<std::string> provenance,
                               std::optional<long long> bound = std::nullopt) {
        Certificate c;
        c.kind = CertificateKind::HittingSet;
        c.k = k;
        c.edges = std::move(edges);
        c.provenance = std::move(provenance);
        c.bound_claimed = bound;
        return c;
    }
    bool is_packing() const { return kind == CertificateKind::Packing; }

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

inline long long single_z_bound(int k) {
    long long kk = k;
    return 1080LL * kk * kk * kk * kk * kk;
}

inline nlohmann::ordered_json to_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["kind"] = c.is_packing() ? "packing" : "hitting";
    j["k"] = c.k;
    if (c.is_packing()) {
        auto arr = nlohmann::ordered_json::array();
        for (const Cycle& cy : c.cycles) arr.push_back(cy.vertices());
        j["cycles"] = arr;
    } else {
        auto arr = nlohmann::ordered_json::array();
        for (const Edge& e : c.edges) arr.push_back({e.u, e.v});
        j["edges"] = arr;
        j["provenance"] = c.provenance;
    }
    if (c.bound_claimed)
        j["bound_claimed"] = *c.bound_claimed;
    else
        j["bound_claimed"] = nullptr;
    return j;
}

/// Reads a certificate without validating it against any graph. Cycles are
/// kept in the order given so that tampered input survives to the verifier.
inline Certificate certificate_from_json(const nlohmann::json& j) {
    Certificate c;
    try {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "packing")
            c.kind = CertificateKind::Packing;
        else if (kind == "hitting")
            c.kind = CertificateKind::HittingSet;
        else
            throw Error("unknown certificate kind '" + kind + "'");
        c.k = j.at("k").get<int>();
        if (c.is_packing()) {
            for (const auto& cy : j.at("cycles")) c.cycles.emplace_back(cy.get<VertexList>());
        } else {
            for (const auto& e : j.at("edges")) {
                auto pr = e.get<std::vector<int>>();
                if (pr.size() != 2) throw Error("edge entry must have two endpoints");
                c.edges.emplace_back(pr[0], pr[1]);
            }
            if (j.contains("provenance")) c.provenance = j.at("provenance").get<std::vector<std::string>>();
        }
        if (j.contains("bound_claimed") && !j.at("bound_claimed").is_null())
            c.bound_claimed = j.at("bound_claimed").get<long long>();
    } catch (const nlohmann::json::exception& ex) {
        throw Error(std::string("malformed certificate: ") + ex.what());
    }
    return c;
}

}  // namespace evenac
