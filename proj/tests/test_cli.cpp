#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conngraph/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "conngraph");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = conngraph::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
    const Run r = run(std::move(args));
    INFO(r.err);
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bound") {
    const Run r = run({"bound", "--complete", "3", "--p", "0.5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("bound: 0\n") != std::string::npos);
    CHECK(r.out.find("maximizing N: 2") != std::string::npos);

    const auto j = run_json({"bound", "--complete", "3", "--p", "0.999", "--json"});
    CHECK(j.at("command") == "bound");
    CHECK(j.at("bound").get<double>() == doctest::Approx(0.9043476190919673).epsilon(1e-12));
    CHECK(j.at("maximizing_N") == 3);
    CHECK(j.at("T").is_null());

    const auto u = run_json({"bound", "--complete-minus-cycle", "6", "--p", "0.3", "--T", "4", "--json"});
    CHECK(u.at("T") == 4);
    CHECK(u.at("p_hat").get<double>() == doctest::Approx(1 - 0.7 * 0.7 * 0.7 * 0.7));
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"bound", "--p", "0.5"}).code == 2);
    CHECK(run({"bound", "--complete", "3", "--complete-minus-cycle", "5", "--p", "0.5"}).code == 2);
    CHECK(run({"bound", "--complete", "3", "--p", "1.5"}).code == 2);
    CHECK(run({"bound", "--complete", "3", "--p", "abc"}).code == 2);
    CHECK(run({"bound", "--complete-minus-cycle", "3", "--p", "0.5"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("disconnected edge list") {
    const std::string path = "cli_disconnected.txt";
    {
        std::ofstream f(path);
        f << "4\n0 1\n2 3\n";
    }
    const Run r = run({"bound", "--edge-list", path, "--p", "0.5"});
    CHECK(r.code == 3);
    CHECK(r.err.find("not connected") != std::string::npos);
    std::remove(path.c_str());
    CHECK(run({"bound", "--complete-minus-cycle", "4", "--p", "0.5"}).code == 3);
}

TEST_CASE("tiny templates are answered exactly") {
    const auto one = run_json({"bound", "--complete", "1", "--p", "0.3", "--json"});
    CHECK(one.at("exact") == true);
    CHECK(one.at("bound") == 1.0);
    const auto two = run_json({"bound", "--complete", "2", "--p", "0.3", "--T", "2", "--json"});
    CHECK(two.at("exact") == true);
    CHECK(two.at("bound").get<double>() == doctest::Approx(0.51));
    const Run text = run({"bound", "--complete", "2", "--p", "0.3"});
    CHECK(text.out.find("exact") != std::string::npos);
}

TEST_CASE("tstar") {
    const auto j = run_json({"tstar", "--complete", "3", "--p", "0.5", "--epsilon", "0.2", "--json", "--trace"});
    CHECK(j.at("t_star") == 8);
    CHECK(j.at("trace").size() == 8);
    CHECK(run_json({"tstar", "--complete", "3", "--p", "0.999", "--epsilon", "0.2", "--json"}).at("t_star") == 1);

    const Run nf = run({"tstar", "--complete-minus-cycle", "5", "--p", "0.5", "--epsilon", "0.01"});
    CHECK(nf.code == 4);
    CHECK(nf.out.find("best bound") != std::string::npos);
    const Run nfj = run({"tstar", "--complete-minus-cycle", "5", "--p", "0.5", "--epsilon", "0.01", "--json"});
    CHECK(nfj.code == 4);
    CHECK(nlohmann::json::parse(nfj.out).at("best_bound") == 0.0);
    CHECK(run({"tstar", "--complete", "3", "--p", "0.5", "--epsilon", "0.2", "--t-max", "3"}).code == 4);
    CHECK(run({"tstar", "--complete", "3", "--p", "0.5", "--epsilon", "0"}).code == 2);
}

TEST_CASE("tstar trace CSV") {
    const std::string path = "cli_trace.csv";
    CHECK(run({"tstar", "--complete", "4", "--p", "0.5", "--epsilon", "0.1", "--csv", path}).code == 0);
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "T,p_hat,bound,n_star");
    f.close();
    std::remove(path.c_str());
}

TEST_CASE("simulate") {
    const auto j = run_json({"simulate", "--complete", "6", "--p", "0.5", "--trials", "2000", "--seed", "3", "--json"});
    CHECK(j.at("verdict") == "SOUND");
    CHECK(j.at("ci_low").get<double>() <= j.at("estimate").get<double>());
    CHECK(j.at("bound").get<double>() <= j.at("ci_high").get<double>());
    const auto again = run_json({"simulate", "--complete", "6", "--p", "0.5", "--trials", "2000", "--seed", "3", "--json"});
    CHECK(j == again);
    CHECK(run({"simulate", "--complete", "6", "--p", "0.5", "--trials", "0"}).code == 2);
    const auto m = run_json({"simulate", "--complete", "4", "--p", "1", "--trials", "20", "--moments", "--json"});
    CHECK(m.at("moments").at("mean_lambda2").get<double>() == doctest::Approx(4.0));
}

TEST_CASE("exact") {
    const auto k3 = run_json({"exact", "--complete", "3", "--p", "0.5", "--json"});
    CHECK(k3.at("probability") == 0.5);
    CHECK(k3.at("connected_subsets") == 4);
    const auto k4 = run_json({"exact", "--complete", "4", "--p", "0.5", "--json"});
    CHECK(k4.at("probability").get<double>() == doctest::Approx(38.0 / 64.0));
    CHECK(run({"exact", "--complete", "8", "--p", "0.5"}).code == 5);
}

TEST_CASE("sweep") {
    const Run r = run({"sweep", "--n-values", "5,6", "--p-values", "0.5,0.9"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("family,n,p,T,p_hat,bound,n_star,estimate,ci_low,ci_high\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : r.out) lines += c == '\n';
    CHECK(lines == 5);
    const auto j = run_json({"sweep", "--family", "complete-minus-cycle", "--n-values", "7", "--p-values", "0.5",
                             "--simulate", "--trials", "100", "--json"});
    CHECK(j.at("rows").size() == 1);
    CHECK(j.at("rows")[0].contains("estimate"));
    CHECK(run({"sweep", "--n-values", "5", "--p-values", "0"}).code == 2);
    CHECK(run({"sweep", "--family", "petersen", "--n-values", "5", "--p-values", "0.5"}).code == 2);
}

TEST_CASE("spectrum-check") {
    const Run r = run({"spectrum-check", "--n-values", "3,4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0 mismatches") != std::string::npos);
    CHECK(run({"spectrum-check", "--n-values", "9"}).code == 2);
}

}  // TEST_SUITE
