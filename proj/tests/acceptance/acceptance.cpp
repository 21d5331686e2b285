// Acceptance suite: one PASS/FAIL line per criterion. `--criterion N` runs a
// single criterion; without it all ten run. Exit status is nonzero if any
// selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conngraph/bounds.hpp"
#include "conngraph/cli.hpp"
#include "conngraph/errors.hpp"
#include "conngraph/graph.hpp"
#include "conngraph/montecarlo.hpp"
#include "conngraph/spectral.hpp"

using namespace conngraph;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

constexpr std::uint64_t kSeed = 20240601;
const MonteCarloOptions k99{0, 0.99};

Outcome c1() {
    const auto exact = exact_connectivity(complete(3), 0.5);
    const auto est = empirical_connectivity(complete(3), 0.5, 1, 100'000, kSeed, k99);
    const bool pass = exact.value == 0.5 && est.ci_low <= 0.5 && 0.5 <= est.ci_high;
    return {pass, "exact=" + num(exact.value) + " mc=" + num(est.point) + " ci99=[" + num(est.ci_low) + ", " +
                      num(est.ci_high) + "]"};
}

Outcome c2() {
    const auto exact = exact_connectivity(complete(4), 0.5);
    const auto est = empirical_connectivity(complete(4), 0.5, 1, 100'000, kSeed + 1, k99);
    const bool pass = exact.value == 0.59375 && exact.connected_subsets == 38 && est.ci_low <= exact.value &&
                      exact.value <= est.ci_high;
    return {pass, "exact=" + num(exact.value) + " (" + std::to_string(exact.connected_subsets) + "/64) mc=" +
                      num(est.point) + " ci99=[" + num(est.ci_low) + ", " + num(est.ci_high) + "]"};
}

Outcome c3() {
    std::vector<UnderlyingGraph> graphs;
    for (std::size_t n = 3; n <= 8; ++n) graphs.push_back(complete(n));
    for (std::size_t n = 5; n <= 8; ++n) graphs.push_back(complete_minus_cycle(n));
    std::size_t cells = 0, exact_cells = 0, violations = 0;
    std::uint64_t seed = kSeed + 100;
    for (const auto& g : graphs) {
        for (double p : {0.1, 0.3, 0.5, 0.7, 0.8, 0.9, 0.95, 0.99}) {
            ++cells;
            const double b = connectivity_bound(ModelParams(g, p)).probability_lower_bound;
            if (g.m() <= kDefaultEnumerationCap) {
                ++exact_cells;
                if (b > exact_connectivity(g, p).value) ++violations;
            }
            const auto est = empirical_connectivity(g, p, 1, 10'000, seed++);
            if (b > est.point + 4 * est.half_width()) ++violations;
        }
    }
    return {violations == 0, std::to_string(cells) + " cells (" + std::to_string(exact_cells) + " exact), " +
                                 std::to_string(violations) + " violations"};
}

Outcome c4() {
    double worst = 0.0;
    for (std::size_t n = 3; n <= 50; ++n) {
        for (int k = 1; k <= 19; ++k) {
            const double p = 0.05 * k;
            const double a = connectivity_bound(ModelParams(complete(n), p)).probability_lower_bound;
            const double b = connectivity_bound_complete(n, p).probability_lower_bound;
            const double scale = std::max(std::abs(a), std::abs(b));
            if (scale > 0.0) worst = std::max(worst, std::abs(a - b) / scale);
        }
    }
    return {worst <= 1e-9, "max relative difference " + num(worst)};
}

Outcome c5() {
    const UnderlyingGraph g = complete(10);
    const ModelParams params(g, 0.5);
    const auto ell = empirical_ell_moments(g, 0.5, 100'000, kSeed + 5);
    const auto l2 = empirical_lambda2_moments(g, 0.5, 100'000, kSeed + 6);
    const BoundResult b = connectivity_bound(params);
    const double mu = ell_mean(params);
    const double sigma2 = ell_variance(params);
    const double l2_lower = lambda2_mean_lower(params, b.maximizing_N);
    const double l2sq_upper = lambda2_sq_mean_upper(params);
    const bool mean_ok = std::abs(ell.mean - mu) <= 4 * ell.se_mean;
    const bool var_ok = std::abs(ell.variance - sigma2) <= 0.05 * sigma2;
    const bool l2_ok = l2.mean >= l2_lower - 4 * l2.se_mean;
    const bool l2sq_ok = l2.mean_square <= l2sq_upper + 4 * l2.se_mean_square;
    return {mean_ok && var_ok && l2_ok && l2sq_ok,
            "mean(l)=" + num(ell.mean) + " vs " + num(mu) + ", var(l)=" + num(ell.variance) + " vs " + num(sigma2) +
                ", E[l2]=" + num(l2.mean) + " >= " + num(l2_lower) + ", E[l2^2]=" + num(l2.mean_square) +
                " <= " + num(l2sq_upper)};
}

Outcome c6() {
    const double p_hat = union_edge_probability(0.3, 3);
    const auto est = empirical_connectivity(complete(6), 0.3, 3, 100'000, kSeed + 7, k99);
    const double exact = exact_connectivity(complete(6), 0.657).value;
    return {est.ci_low <= exact && exact <= est.ci_high,
            "p_hat=" + num(p_hat) + " exact(K6, 0.657)=" + num(exact) + " mc=" + num(est.point) + " ci99=[" +
                num(est.ci_low) + ", " + num(est.ci_high) + "]"};
}

Outcome c7() {
    const auto c = coupled_monotonicity_check(complete(5), 0.2, 0.8, 10'000, kSeed + 8);
    return {c.dominance_violations == 0, std::to_string(c.dominance_violations) + " dominance violations; connected " +
                                             std::to_string(c.low.successes) + " at 0.2, " +
                                             std::to_string(c.high.successes) + " at 0.8"};
}

nlohmann::json sweep(const std::string& family) {
    std::vector<std::string> args{"conngraph", "sweep", "--family", family, "--n-values", "10,50,100,500,1000",
                                  "--p-values", "0.80,0.85,0.90,0.95,0.99,0.999", "--json"};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    if (cli::run(static_cast<int>(argv.size()), argv.data(), out, err) != 0) throw std::runtime_error(err.str());
    return nlohmann::json::parse(out.str())["rows"];
}

Outcome c8() {
    const auto kn = sweep("complete");
    const auto kncn = sweep("complete-minus-cycle");
    std::size_t range_bad = 0, order_bad = 0, mono_bad = 0;
    for (std::size_t i = 0; i < kn.size(); ++i) {
        const double a = kn[i]["bound"], b = kncn[i]["bound"];
        range_bad += (a < 0 || a > 1) + (b < 0 || b > 1);
        order_bad += b > a;
    }
    // Rows are n-outer, p-inner: p = 0.80 first, 0.999 last.
    for (std::size_t i = 0; i < kn.size(); i += 6) mono_bad += kn[i + 5]["bound"].get<double>() < kn[i]["bound"].get<double>();
    return {kn.size() == 30 && kncn.size() == 30 && range_bad + order_bad + mono_bad == 0,
            std::to_string(kn.size() + kncn.size()) + " rows; out of range " + std::to_string(range_bad) +
                ", KnCn > Kn " + std::to_string(order_bad) + ", p=0.999 < p=0.80 " + std::to_string(mono_bad)};
}

Outcome c9() {
    const TStarResult r = t_star(complete(3), 0.5, 0.2);
    bool early = false;
    for (std::size_t i = 0; i + 1 < r.trace.size(); ++i) early = early || r.trace[i].bound >= 0.8;
    const bool first_ok = r.bound() >= 0.8 && !early && r.trace.size() == r.t_star;
    std::string detail = "eps=0.2: T*=" + std::to_string(r.t_star) + " bound=" + num(r.bound());

    bool second_ok = false;
    try {
        const TStarResult s = t_star(complete(3), 0.5, 0.01, 100'000);
        detail += "; eps=0.01: expected TStarNotFound, got T*=" + std::to_string(s.t_star) + " bound=" + num(s.bound());
    } catch (const TStarNotFound& e) {
        second_ok = true;
        detail += "; eps=0.01: TStarNotFound (best " + num(e.best_bound()) + ")";
    }
    return {first_ok && second_ok, detail};
}

Outcome c10() {
    const UnderlyingGraph k5 = complete(5);
    std::size_t mismatches = 0, connected = 0;
    for (std::uint32_t mask = 0; mask < (1u << k5.m()); ++mask) {
        std::vector<std::uint8_t> present(k5.m());
        for (std::size_t k = 0; k < k5.m(); ++k) present[k] = (mask >> k) & 1;
        const SampledGraph s(k5, std::move(present));
        const bool by_paths = is_connected(s);
        connected += by_paths;
        mismatches += by_paths != (algebraic_connectivity(s) > zero_eigenvalue_threshold(5));
    }
    return {mismatches == 0, "1024 subgraphs, " + std::to_string(connected) + " connected, " +
                                 std::to_string(mismatches) + " mismatches"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    std::vector<int> selected;
    app.add_option("--criterion", selected, "criteria to run (default: all)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);
    if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    const std::vector<std::function<Outcome()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
    bool all = true;
    for (int k : selected) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << " (" << num(secs) << " s) " << o.detail
                  << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
