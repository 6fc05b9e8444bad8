#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "evenac/graph.hpp"

namespace evenac {

/// Exceeding a cap aborts with BudgetError; a partial result is never returned.
class BudgetError : public Error {
public:
    using Error::Error;
};

struct OracleBudget {
    int max_vertices = 64;
    std::int64_t max_cycles = 4'000'000;
    std::int64_t max_nodes_expanded = 2'000'000'000;
    double time_cap = 600.0;  // seconds

    bool valid() const { return max_vertices > 0 && max_cycles > 0 && max_nodes_expanded > 0 && time_cap > 0; }

    /// Default budget, with the node cap overridable through EVENAC_BUDGET_NODES.
    static OracleBudget from_env() {
        OracleBudget b;
        if (const char* s = std::getenv("EVENAC_BUDGET_NODES")) {
            long long v = std::atoll(s);
            if (v > 0) b.max_nodes_expanded = v;
        }
        return b;
    }
};

// Tracks consumption of one budget across a single oracle call.
class BudgetMeter {
public:
    explicit BudgetMeter(const OracleBudget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {
        if (!b.valid()) throw PreconditionError("oracle budget caps must be positive");
    }

    void expand(std::int64_t nodes = 1) {
        nodes_ += nodes;
        if (nodes_ > budget_.max_nodes_expanded) throw BudgetError("node expansion cap exceeded");
        if ((nodes_ & 0xFFFF) == 0) check_time();
    }
    void check_time() const {
        std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
        if (el.count() > budget_.time_cap) throw BudgetError("time cap exceeded");
    }
    void require_vertices(int n) const {
        if (n > budget_.max_vertices)
            throw BudgetError("instance has " + std::to_string(n) + " vertices, cap is " +
                              std::to_string(budget_.max_vertices));
    }
    void require_cycles(std::int64_t c) const {
        if (c > budget_.max_cycles) throw BudgetError("cycle cap exceeded");
    }
    const OracleBudget& budget() const { return budget_; }
    std::int64_t nodes() const { return nodes_; }

private:
    OracleBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::int64_t nodes_ = 0;
};

}  // namespace evenac
