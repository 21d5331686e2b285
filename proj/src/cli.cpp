#include "conngraph/cli.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conngraph/bounds.hpp"
#include "conngraph/errors.hpp"
#include "conngraph/graph.hpp"
#include "conngraph/io.hpp"
#include "conngraph/montecarlo.hpp"
#include "conngraph/spectral.hpp"

namespace conngraph::cli {
namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct GraphArgs {
    std::optional<std::size_t> complete;
    std::optional<std::size_t> complete_minus_cycle;
    std::optional<std::string> edge_list;

    void add_to(CLI::App& app) {
        auto* group = app.add_option_group("graph", "template graph (exactly one)");
        group->add_option("--complete", complete, "complete graph K_N");
        group->add_option("--complete-minus-cycle", complete_minus_cycle, "K_N minus a Hamiltonian cycle");
        group->add_option("--edge-list", edge_list, "edge-list file");
        group->require_option(1);
    }

    std::string family() const {
        if (complete) return family_name(GraphFamily::Complete);
        if (complete_minus_cycle) return family_name(GraphFamily::CompleteMinusCycle);
        return family_name(GraphFamily::EdgeList);
    }

    UnderlyingGraph build() const {
        if (complete) return conngraph::complete(*complete);
        if (complete_minus_cycle) return conngraph::complete_minus_cycle(*complete_minus_cycle);
        return load_edge_list(*edge_list);
    }
};

json graph_json(const GraphArgs& args, const UnderlyingGraph& g) {
    return {{"family", args.family()}, {"n", g.n()}, {"m", g.m()}};
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void check_p(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("--p must lie in (0, 1)");
}

// Exact connectivity probability for templates too small for the bounds:
// n = 1 is always connected, n = 2 is connected iff its single edge appears.
double tiny_graph_probability(const UnderlyingGraph& g, double p_hat) { return g.n() == 1 ? 1.0 : p_hat; }

struct Common {
    bool as_json = false;
    std::size_t n_cap = kDefaultNCap;
};

void add_n_cap(CLI::App& app, Common& c) {
    app.add_option("--n-cap", c.n_cap, "upper limit on the N range")->envname("CONNGRAPH_N_CAP")->check(CLI::PositiveNumber);
}

// --- bound -------------------------------------------------------------------

struct BoundArgs {
    GraphArgs graph;
    Common common;
    double p = 0.0;
    std::optional<std::size_t> T;
};

int cmd_bound(const BoundArgs& a, std::ostream& out) {
    check_p(a.p);
    const UnderlyingGraph g = a.graph.build();
    const std::size_t T = a.T.value_or(1);
    const double p_hat = union_edge_probability(a.p, T);

    json j{{"command", "bound"}, {"graph", graph_json(a.graph, g)}, {"p", a.p}};
    j["T"] = a.T ? json(*a.T) : json(nullptr);
    j["p_hat"] = p_hat;
    if (g.n() < 3) {
        j["exact"] = true;
        j["bound"] = tiny_graph_probability(g, p_hat);
    } else {
        const ModelParams params = ModelParams::for_union(g, a.p, T);
        j["exact"] = false;
        j.update(to_json(connectivity_bound(params, BoundOptions{a.common.n_cap})));
    }

    if (a.common.as_json) {
        print_json(out, j);
        return kOk;
    }
    out << "graph: " << a.graph.family() << " n=" << g.n() << " m=" << g.m() << '\n';
    out << "p: " << fmt(a.p);
    if (a.T) out << "  T: " << *a.T << "  p_hat: " << fmt(p_hat);
    out << '\n';
    if (j["exact"].get<bool>()) {
        out << "probability (exact, not bound): " << fmt(j["bound"].get<double>()) << '\n';
        return kOk;
    }
    out << "bound: " << fmt(j["bound"].get<double>()) << '\n';
    out << "maximizing N: " << j["maximizing_N"].get<std::size_t>() << '\n';
    out << "N range: [2, " << j["n_search_max"].get<std::size_t>() << "]\n";
    out << "mu: " << fmt(j["mu"].get<double>()) << "  sigma^2: " << fmt(j["sigma_squared"].get<double>())
        << "  S: " << fmt(j["S"].get<double>()) << '\n';
    return kOk;
}

// --- tstar -------------------------------------------------------------------

struct TStarArgs {
    GraphArgs graph;
    Common common;
    double p = 0.0;
    double epsilon = 0.0;
    std::size_t t_max = kDefaultTMax;
    std::optional<std::string> csv;
    bool trace = false;
};

void write_trace_csv(const std::string& path, const TStarResult& r) {
    std::ofstream f(path);
    if (!f) throw InvalidParameter("cannot write '" + path + "'");
    f << "T,p_hat,bound,n_star\n";
    for (const auto& t : r.trace)
        f << t.T << ',' << format_real(t.p_hat) << ',' << format_real(t.bound) << ',' << t.maximizing_N << '\n';
}

int cmd_tstar(const TStarArgs& a, std::ostream& out) {
    check_p(a.p);
    if (!(a.epsilon > 0.0 && a.epsilon < 1.0)) throw InvalidParameter("--epsilon must lie in (0, 1)");
    const UnderlyingGraph g = a.graph.build();

    TStarResult r;
    bool exact = false;
    if (g.n() < 3) {
        exact = true;
        r.epsilon = a.epsilon;
        for (std::size_t T = 1; T <= a.t_max; ++T) {
            const double value = tiny_graph_probability(g, union_edge_probability(a.p, T));
            r.trace.push_back({T, union_edge_probability(a.p, T), value, 0});
            if (value >= 1.0 - a.epsilon) {
                r.t_star = T;
                break;
            }
        }
        if (r.t_star == 0) {
            throw TStarNotFound("no T <= " + std::to_string(a.t_max) + " reaches the target",
                                static_cast<long long>(a.t_max), r.trace.back().bound);
        }
    } else {
        r = t_star(g, a.p, a.epsilon, a.t_max, BoundOptions{a.common.n_cap});
    }
    if (a.csv) write_trace_csv(*a.csv, r);

    if (a.common.as_json) {
        json j{{"command", "tstar"}, {"graph", graph_json(a.graph, g)}, {"p", a.p}, {"exact", exact}};
        j.update(to_json(r, a.trace));
        print_json(out, j);
        return kOk;
    }
    out << "graph: " << a.graph.family() << " n=" << g.n() << " m=" << g.m() << '\n';
    out << "T*: " << r.t_star << '\n';
    out << (exact ? "probability at T* (exact): " : "bound at T*: ") << fmt(r.bound()) << " (target "
        << fmt(1.0 - a.epsilon) << ")\n";
    out << "p_hat(T*): " << fmt(r.trace.back().p_hat) << '\n';
    if (a.trace) {
        for (const auto& t : r.trace) out << "  T=" << t.T << " p_hat=" << fmt(t.p_hat) << " bound=" << fmt(t.bound) << '\n';
    }
    return kOk;
}

// --- simulate ----------------------------------------------------------------

struct SimulateArgs {
    GraphArgs graph;
    Common common;
    double p = 0.0;
    std::size_t T = 1;
    std::uint64_t trials = 10'000;
    std::uint64_t seed = 0;
    double confidence = kDefaultConfidence;
    double margin = 0.0;
    bool moments = false;
    std::size_t workers = 0;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    if (!(a.p >= 0.0 && a.p <= 1.0)) throw InvalidParameter("--p must lie in [0, 1]");
    if (a.trials == 0) throw InvalidParameter("--trials must be at least 1");
    if (a.T == 0) throw InvalidParameter("--T must be at least 1");
    if (!(a.confidence > 0.0 && a.confidence < 1.0)) throw InvalidParameter("--confidence must lie in (0, 1)");
    const UnderlyingGraph g = a.graph.build();
    MonteCarloOptions options;
    options.workers = a.workers;
    options.confidence = a.confidence;

    const EmpiricalEstimate est = empirical_connectivity(g, a.p, a.T, a.trials, a.seed, options);
    const double p_hat = union_edge_probability(a.p, a.T);

    std::optional<double> bound;
    bool exact = false;
    if (g.n() < 3) {
        bound = tiny_graph_probability(g, p_hat);
        exact = true;
    } else if (a.p > 0.0 && a.p < 1.0) {
        bound = connectivity_bound(ModelParams::for_union(g, a.p, a.T), BoundOptions{a.common.n_cap})
                    .probability_lower_bound;
    }
    const bool sound = !bound || *bound <= est.ci_high + a.margin;

    std::optional<Lambda2Moments> moments;
    if (a.moments && g.n() >= 2) moments = empirical_lambda2_moments(g, p_hat, a.trials, a.seed, options);

    if (a.common.as_json) {
        json j{{"command", "simulate"}, {"graph", graph_json(a.graph, g)}, {"p", a.p}, {"T", a.T},
               {"p_hat", p_hat}, {"seed", a.seed}};
        j.update(to_json(est));
        j["bound"] = bound ? json(*bound) : json(nullptr);
        j["exact"] = exact;
        j["verdict"] = sound ? "SOUND" : "UNSOUND";
        if (moments) j["moments"] = to_json(*moments);
        print_json(out, j);
        return kOk;
    }
    out << "graph: " << a.graph.family() << " n=" << g.n() << " m=" << g.m() << '\n';
    out << "p: " << fmt(a.p) << "  T: " << a.T << "  p_hat: " << fmt(p_hat) << '\n';
    out << "trials: " << est.trials << "  connected: " << est.successes << '\n';
    out << "estimate: " << fmt(est.point) << "  " << fmt(100.0 * a.confidence) << "% CI: [" << fmt(est.ci_low)
        << ", " << fmt(est.ci_high) << "]\n";
    if (bound) out << (exact ? "exact probability: " : "bound: ") << fmt(*bound) << "  verdict: " << (sound ? "SOUND" : "UNSOUND") << '\n';
    if (moments) {
        out << "E[lambda2] ~ " << fmt(moments->mean) << " (se " << fmt(moments->se_mean) << ")  E[lambda2^2] ~ "
            << fmt(moments->mean_square) << " (se " << fmt(moments->se_mean_square) << ")\n";
    }
    return kOk;
}

// --- exact -------------------------------------------------------------------

struct ExactArgs {
    GraphArgs graph;
    Common common;
    double p = 0.0;
    std::size_t cap = kDefaultEnumerationCap;
    std::size_t workers = 0;
};

int cmd_exact(const ExactArgs& a, std::ostream& out) {
    if (!(a.p >= 0.0 && a.p <= 1.0)) throw InvalidParameter("--p must lie in [0, 1]");
    const UnderlyingGraph g = a.graph.build();
    MonteCarloOptions options;
    options.workers = a.workers;
    const ExactProbability e = exact_connectivity(g, a.p, a.cap, options);
    if (a.common.as_json) {
        json j{{"command", "exact"}, {"graph", graph_json(a.graph, g)}, {"p", a.p}};
        j.update(to_json(e));
        print_json(out, j);
        return kOk;
    }
    out << "graph: " << a.graph.family() << " n=" << g.n() << " m=" << g.m() << '\n';
    out << "probability: " << format_real(e.value) << '\n';
    out << "connected subsets: " << e.connected_subsets << " of " << e.total_subsets << '\n';
    return kOk;
}

// --- sweep -------------------------------------------------------------------

struct SweepArgs {
    SweepSpec spec;
    std::string family = "complete";
    std::optional<std::string> csv;
    bool as_json = false;
};

int cmd_sweep(SweepArgs a, std::ostream& out) {
    a.spec.family = parse_family(a.family);
    const std::vector<SweepRow> rows = run_sweep(a.spec);
    if (a.csv) {
        std::ofstream f(*a.csv);
        if (!f) throw InvalidParameter("cannot write '" + *a.csv + "'");
        write_csv(f, rows);
    }
    if (a.as_json) {
        json j{{"command", "sweep"}, {"rows", json::array()}};
        for (const auto& r : rows) j["rows"].push_back(to_json(r));
        print_json(out, j);
    } else if (!a.csv) {
        write_csv(out, rows);
    }
    return kOk;
}

// --- spectrum-check ----------------------------------------------------------

struct SpectrumCheckArgs {
    std::vector<std::size_t> n_values{4, 5};
    bool as_json = false;
};

int cmd_spectrum_check(const SpectrumCheckArgs& a, std::ostream& out) {
    json cases = json::array();
    bool all_agree = true;
    for (std::size_t n : a.n_values) {
        if (n < 2 || n > 7) throw InvalidParameter("spectrum-check supports 2 <= n <= 7");
        const UnderlyingGraph kn = complete(n);
        const std::uint64_t total = std::uint64_t{1} << kn.m();
        std::uint64_t mismatches = 0;
        std::uint64_t connected = 0;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            std::vector<std::uint8_t> present(kn.m());
            for (std::size_t k = 0; k < kn.m(); ++k) present[k] = (mask >> k) & 1;
            const SampledGraph s(kn, std::move(present));
            const bool by_paths = is_connected(s);
            const bool by_spectrum = algebraic_connectivity(s) > zero_eigenvalue_threshold(n);
            connected += by_paths ? 1 : 0;
            mismatches += by_paths != by_spectrum ? 1 : 0;
        }
        all_agree = all_agree && mismatches == 0;
        cases.push_back({{"n", n}, {"subgraphs", total}, {"connected", connected}, {"mismatches", mismatches}});
        if (!a.as_json) {
            out << "K_" << n << ": " << total << " subgraphs, " << connected << " connected, " << mismatches
                << " mismatches\n";
        }
    }
    if (a.as_json) {
        print_json(out, {{"command", "spectrum-check"}, {"cases", cases}, {"agree", all_agree}});
    } else {
        out << (all_agree ? "spectral and path connectivity agree\n" : "MISMATCH between spectral and path connectivity\n");
    }
    return all_agree ? kOk : kFailure;
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case Error::Kind::DisconnectedTemplate: return kDisconnectedTemplate;
        case Error::Kind::TStarNotFound: return kTStarNotFound;
        case Error::Kind::TooManyEdges: return kEnumerationCap;
        case Error::Kind::InvalidEdge:
        case Error::Kind::InvalidParameter:
        case Error::Kind::MismatchedParents:
        case Error::Kind::EmptyUnion: return kUsage;
        default: return kFailure;
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Connectivity bounds for Erdos-Renyi graphs over a template and their unions"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    BoundArgs bound_args;
    auto* bound = app.add_subcommand("bound", "lower bound on the connectivity probability");
    bound_args.graph.add_to(*bound);
    bound->add_option("--p", bound_args.p, "edge probability in (0, 1)")->required();
    bound->add_option("--T", bound_args.T, "union horizon")->check(CLI::PositiveNumber);
    bound->add_flag("--json", bound_args.common.as_json, "JSON output");
    add_n_cap(*bound, bound_args.common);

    TStarArgs tstar_args;
    auto* tstar = app.add_subcommand("tstar", "smallest horizon T whose union bound reaches 1 - epsilon");
    tstar_args.graph.add_to(*tstar);
    tstar->add_option("--p", tstar_args.p, "edge probability in (0, 1)")->required();
    tstar->add_option("--epsilon", tstar_args.epsilon, "allowed failure probability")->required();
    tstar->add_option("--t-max", tstar_args.t_max, "largest T scanned")->envname("CONNGRAPH_T_MAX")->check(CLI::PositiveNumber);
    tstar->add_option("--csv", tstar_args.csv, "write the scan trace as CSV");
    tstar->add_flag("--trace", tstar_args.trace, "include the scan trace in the report");
    tstar->add_flag("--json", tstar_args.common.as_json, "JSON output");
    add_n_cap(*tstar, tstar_args.common);

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo connectivity estimate next to the bound");
    sim_args.graph.add_to(*simulate);
    simulate->add_option("--p", sim_args.p, "edge probability")->required();
    simulate->add_option("--T", sim_args.T, "union horizon");
    simulate->add_option("--trials", sim_args.trials, "Monte Carlo trials")->envname("CONNGRAPH_TRIALS");
    simulate->add_option("--seed", sim_args.seed, "base seed")->envname("CONNGRAPH_SEED");
    simulate->add_option("--confidence", sim_args.confidence, "Wilson interval confidence")->envname("CONNGRAPH_CONFIDENCE");
    simulate->add_option("--margin", sim_args.margin, "slack added to the upper CI edge for the verdict");
    simulate->add_option("--workers", sim_args.workers, "worker threads (0 = all cores)")->envname("CONNGRAPH_WORKERS");
    simulate->add_flag("--moments", sim_args.moments, "also estimate E[lambda2] and E[lambda2^2]");
    simulate->add_flag("--json", sim_args.common.as_json, "JSON output");
    add_n_cap(*simulate, sim_args.common);

    ExactArgs exact_args;
    auto* exact = app.add_subcommand("exact", "exact connectivity probability by enumeration");
    exact_args.graph.add_to(*exact);
    exact->add_option("--p", exact_args.p, "edge probability")->required();
    exact->add_option("--enum-cap", exact_args.cap, "largest edge count enumerated");
    exact->add_option("--workers", exact_args.workers, "worker threads (0 = all cores)")->envname("CONNGRAPH_WORKERS");
    exact->add_flag("--json", exact_args.common.as_json, "JSON output");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "bound (and optional estimate) over an (n, p) grid");
    sweep->add_option("--family", sweep_args.family, "complete | complete-minus-cycle | edge-list");
    sweep->add_option("--n-values", sweep_args.spec.n_values, "vertex counts")->delimiter(',');
    sweep->add_option("--p-values", sweep_args.spec.p_values, "edge probabilities")->delimiter(',')->required();
    sweep->add_option("--edge-list", sweep_args.spec.edge_list_path, "edge-list file for the edge-list family");
    sweep->add_option("--T", sweep_args.spec.T, "union horizon");
    sweep->add_flag("--simulate", sweep_args.spec.simulate, "append Monte Carlo estimate columns");
    sweep->add_option("--trials", sweep_args.spec.trials, "Monte Carlo trials")->envname("CONNGRAPH_TRIALS");
    sweep->add_option("--seed", sweep_args.spec.seed, "base seed")->envname("CONNGRAPH_SEED");
    sweep->add_option("--confidence", sweep_args.spec.confidence, "Wilson interval confidence")->envname("CONNGRAPH_CONFIDENCE");
    sweep->add_option("--mc-n-max", sweep_args.spec.mc_n_max, "largest n given Monte Carlo columns");
    sweep->add_option("--n-cap", sweep_args.spec.n_cap, "upper limit on the N range")->envname("CONNGRAPH_N_CAP")->check(CLI::PositiveNumber);
    sweep->add_option("--workers", sweep_args.spec.workers, "worker threads (0 = all cores)")->envname("CONNGRAPH_WORKERS");
    sweep->add_option("--csv", sweep_args.csv, "write the dataset as CSV to this path");
    sweep->add_flag("--json", sweep_args.as_json, "JSON output");

    SpectrumCheckArgs spectrum_args;
    auto* spectrum = app.add_subcommand("spectrum-check", "lambda_2 > 1e-8 n versus path connectivity on all subgraphs of K_n");
    spectrum->add_option("--n-values", spectrum_args.n_values, "complete graphs to enumerate")->delimiter(',');
    spectrum->add_flag("--json", spectrum_args.as_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*bound) return cmd_bound(bound_args, out);
        if (*tstar) return cmd_tstar(tstar_args, out);
        if (*simulate) return cmd_simulate(sim_args, out);
        if (*exact) return cmd_exact(exact_args, out);
        if (*sweep) return cmd_sweep(sweep_args, out);
        if (*spectrum) return cmd_spectrum_check(spectrum_args, out);
    } catch (const TStarNotFound& e) {
        err << "error: " << e.what() << '\n';
        if (tstar_args.common.as_json) {
            print_json(out, {{"command", "tstar"}, {"error", "TStarNotFound"}, {"best_T", e.best_t()},
                             {"best_bound", e.best_bound()}});
        } else {
            out << "T* not found; best bound " << fmt(e.best_bound()) << " at T = " << e.best_t() << '\n';
        }
        return kTStarNotFound;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

}  // namespace conngraph::cli
