// Command-line front end: solve, verify, gadget, oracle.
//
// Exit status: 0 success or pass, 1 failed verification or broken input
// contract, 2 usage, parse or budget errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "evenac/evenac.hpp"

namespace {

using namespace evenac;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : Error {
    using Error::Error;
};

LabeledGraph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    return parse_graph(in);
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
        throw UsageError("'" + path + "' is not valid JSON: " + ex.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

std::string cycle_text(const VertexList& v) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? " " : "") << v[i];
    return s.str();
}

struct BudgetFlags {
    int max_vertices = 0;
    long long max_cycles = 0;
    long long max_nodes = 0;
    double time_cap = 0;

    void attach(CLI::App* app) {
        app->add_option("--max-vertices", max_vertices, "oracle vertex cap");
        app->add_option("--max-cycles", max_cycles, "oracle cycle-enumeration cap");
        app->add_option("--max-nodes", max_nodes, "oracle search-node cap (default from EVENAC_BUDGET_NODES)");
        app->add_option("--time-cap", time_cap, "oracle wall-clock cap in seconds");
    }
    OracleBudget get() const {
        OracleBudget b = OracleBudget::from_env();
        if (max_vertices > 0) b.max_vertices = max_vertices;
        if (max_cycles > 0) b.max_cycles = max_cycles;
        if (max_nodes > 0) b.max_nodes_expanded = max_nodes;
        if (time_cap > 0) b.time_cap = time_cap;
        return b;
    }
};

// ---------------------------------------------------------------------------

struct SolveCmd {
    std::string input, output = "-", summary;
    int k = 0;
    std::string mode = "single-z";
    bool trusted = false;
    BudgetFlags budget;

    int run() const {
        LabeledGraph g = read_graph(input);
        if (k < 1) throw UsageError("--k must be at least 1");
        SolveResult r;
        if (mode == "single-z") {
            if (!g.z()) throw UsageError("single-z mode needs a 'z' line in the input graph");
            SolveOptions opt;
            opt.checked = !trusted;
            opt.budget = budget.get();
            r = solve_single_z(g, k, opt);
        } else {
            r = solve_general(g, k, budget.get());
        }
        write_text(output, to_json(r.certificate).dump(2) + "\n");

        std::ostringstream s;
        s << "mode: " << mode << ", k = " << k << ", n = " << g.n() << ", m = " << g.m() << "\n";
        if (r.certificate.is_packing())
            s << "result: packing of " << r.certificate.cycles.size() << " edge-disjoint even A-cycles\n";
        else
            s << "result: hitting set of " << r.certificate.edges.size() << " edges"
              << (r.certificate.bound_claimed ? " (bound " + std::to_string(*r.certificate.bound_claimed) + ")" : "") << "\n";
        s << "branches:\n";
        for (const auto& e : r.ledger.events) s << "  " << e << "\n";
        s << "bound ledger:\n";
        if (r.ledger.entries.empty()) s << "  (no edge sets produced)\n";
        for (const auto& e : r.ledger.entries)
            s << "  " << e.lemma << " " << e.scope << ": " << e.size << " <= " << e.bound << (e.size <= e.bound ? "" : "  VIOLATED")
              << "\n";
        s << "45k^3 threshold: " << 45LL * k * k * k << "\n";
        if (summary.empty())
            std::cerr << s.str();
        else
            write_text(summary, s.str());
        return r.ledger.within_bounds() ? kOk : kFail;
    }
};

struct VerifyCmd {
    std::string input, cert, sidecar, pred = "even,A", output = "-";
    int k = 0;
    bool hitting = false;
    BudgetFlags budget;

    int run() const {
        LabeledGraph g = read_graph(input);
        if (!sidecar.empty()) {
            GadgetLayout layout = layout_from_sidecar(read_json(sidecar));
            GadgetReport rep = verify_gadget(g, layout, hitting, budget.get());
            write_text(output, rep.to_json().dump(2) + "\n");
            return rep.pass() ? kOk : kFail;
        }
        if (cert.empty()) throw UsageError("verify needs --cert or --sidecar");
        Certificate c = certificate_from_json(read_json(cert));
        VerificationReport rep = verify_certificate(g, k > 0 ? k : c.k, c, CyclePredicate::parse(pred), budget.get());
        write_text(output, rep.to_json().dump(2) + "\n");
        if (!rep.pass) {
            for (const auto& f : rep.failures) std::cerr << "failure: " << f << "\n";
            if (rep.counterexample) std::cerr << "counterexample cycle: " << cycle_text(*rep.counterexample) << "\n";
        }
        if (rep.inconclusive) return kUsage;
        return rep.pass ? kOk : kFail;
    }
};

struct GadgetCmd {
    std::string kind;
    int wall = 0, h = 1, ell = 5, m = 0;
    std::string output;
    bool check = false, hitting = false;
    BudgetFlags budget;

    int run() const {
        GadgetSpec spec;
        spec.h = h;
        if (wall > 0) spec.wall_size = wall;
        spec.ell = ell;
        if (kind == "mod") {
            if (m < 2) throw UsageError("mod gadget needs --m >= 2");
            spec.m = m;
        }
        Gadget gd = kind == "long" ? long_gadget(spec) : mod_gadget(spec);
        if (output.empty()) throw UsageError("gadget needs --output PREFIX");
        write_text(output + ".graph", serialize_graph(gd.graph));
        write_text(output + ".json", gadget_sidecar(gd).dump(2) + "\n");
        if (!check) return kOk;
        GadgetReport rep = verify_gadget(gd.graph, gd.layout, hitting, budget.get());
        std::cout << rep.to_json().dump(2) << "\n";
        return rep.pass() ? kOk : kFail;
    }
};

struct OracleCmd {
    std::string query, input, pred = "even,A", output = "-";
    int k_target = 0;
    BudgetFlags budget;

    int run() const {
        LabeledGraph g = read_graph(input);
        CyclePredicate p = CyclePredicate::parse(pred);
        OracleBudget b = budget.get();
        ordered_json j;
        j["query"] = query;
        j["predicate"] = p.to_string();
        if (query == "packing") {
            PackingResult r = max_edge_disjoint_packing(g, p, k_target > 0 ? k_target : g.m(), b);
            j["count"] = r.count;
            auto arr = ordered_json::array();
            for (const Cycle& c : r.cycles) arr.push_back(c.vertices());
            j["cycles"] = arr;
        } else if (query == "edge-hitting") {
            auto arr = ordered_json::array();
            for (const Edge& e : min_edge_hitting_set(g, p, b)) arr.push_back({e.u, e.v});
            j["size"] = arr.size();
            j["edges"] = arr;
        } else if (query == "vertex-hitting") {
            VertexList vs = min_vertex_hitting_set(g, p, b);
            j["size"] = vs.size();
            j["vertices"] = vs;
        } else {
            auto cycles = enumerate_cycles(g, p, std::nullopt, b);
            j["count"] = cycles.size();
            auto arr = ordered_json::array();
            for (const Cycle& c : cycles) arr.push_back(c.vertices());
            j["cycles"] = arr;
        }
        write_text(output, j.dump(2) + "\n");
        return kOk;
    }
};

int dispatch(int argc, char** argv) {
    CLI::App app{"Edge packing and covering of even A-cycles"};
    app.require_subcommand(1);

    SolveCmd solve;
    auto* s = app.add_subcommand("solve", "packing or hitting-set certificate for (G, A, k)");
    s->add_option("--input,-i", solve.input, "graph file")->required();
    s->add_option("--k", solve.k, "number of cycles asked for")->required();
    s->add_option("--mode", solve.mode, "single-z or general")->check(CLI::IsMember({"single-z", "general"}));
    s->add_flag("--trusted", solve.trusted, "skip the check that G - z has no even A-cycle");
    s->add_option("--output,-o", solve.output, "certificate JSON (default stdout)");
    s->add_option("--summary", solve.summary, "human summary file (default stderr)");
    solve.budget.attach(s);

    VerifyCmd verify;
    auto* v = app.add_subcommand("verify", "check a certificate or a gadget from scratch");
    v->add_option("--input,-i", verify.input, "graph file")->required();
    v->add_option("--cert", verify.cert, "certificate JSON");
    v->add_option("--sidecar", verify.sidecar, "gadget sidecar JSON (checks gadget properties instead)");
    v->add_option("--k", verify.k, "override k from the certificate");
    v->add_option("--pred", verify.pred, "cycle predicate, e.g. even,A or A,mod=3:0");
    v->add_flag("--hitting", verify.hitting, "with --sidecar: also compute the minimum edge hitting set");
    v->add_option("--output,-o", verify.output, "report JSON (default stdout)");
    verify.budget.attach(v);

    GadgetCmd gadget;
    auto* gcmd = app.add_subcommand("gadget", "generate a lower-bound gadget");
    gcmd->set_help_flag("--help", "print this help message and exit");  // frees -h for --h
    gcmd->add_option("kind", gadget.kind, "long or mod")->required()->check(CLI::IsMember({"long", "mod"}));
    gcmd->add_option("--wall", gadget.wall, "wall size override (rows = cols)");
    gcmd->add_option("--h", gadget.h, "hitting-set parameter h (wall 10h x 10h)");
    gcmd->add_option("--ell", gadget.ell, "length threshold for long cycles");
    gcmd->add_option("--m", gadget.m, "modulus for the mod gadget");
    gcmd->add_option("--output,-o", gadget.output, "output prefix: writes PREFIX.graph and PREFIX.json")->required();
    gcmd->add_flag("--check", gadget.check, "verify the gadget properties after writing");
    gcmd->add_flag("--hitting", gadget.hitting, "with --check: also compute the minimum edge hitting set");
    gadget.budget.attach(gcmd);

    OracleCmd oracle;
    auto* o = app.add_subcommand("oracle", "exact desk-scale answers");
    o->add_option("query", oracle.query, "packing, edge-hitting, vertex-hitting or enumerate")
        ->required()
        ->check(CLI::IsMember({"packing", "edge-hitting", "vertex-hitting", "enumerate"}));
    o->add_option("--input,-i", oracle.input, "graph file")->required();
    o->add_option("--pred", oracle.pred, "cycle predicate");
    o->add_option("--k-target", oracle.k_target, "stop the packing search at this count");
    o->add_option("--output,-o", oracle.output, "report JSON (default stdout)");
    oracle.budget.attach(o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*s) return solve.run();
        if (*v) return verify.run();
        if (*gcmd) return gadget.run();
        return oracle.run();
    } catch (const AssumptionError& e) {
        std::cerr << "violation: " << e.what() << "\n";
        if (e.witness()) std::cerr << "even A-cycle avoiding z: " << cycle_text(e.witness()->vertices()) << "\n";
        return kFail;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}

}  // namespace

int main(int argc, char** argv) { return dispatch(argc, argv); }
