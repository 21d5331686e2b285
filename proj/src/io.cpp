#include "conngraph/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "conngraph/errors.hpp"

namespace conngraph {
namespace {

std::string strip(const std::string& line) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = line.find_last_not_of(" \t\r");
    return line.substr(first, last - first + 1);
}

// Parses exactly the given integer fields from a line; anything else is an error.
bool parse_fields(const std::string& line, std::size_t* out, std::size_t count) {
    std::istringstream ss(line);
    for (std::size_t i = 0; i < count; ++i) {
        long long v = -1;
        if (!(ss >> v) || v < 0) return false;
        out[i] = static_cast<std::size_t>(v);
    }
    std::string rest;
    return !(ss >> rest);
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw InvalidParameter("malformed number '" + s + "'");
    return v;
}

std::size_t parse_count(const std::string& s) {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw InvalidParameter("malformed integer '" + s + "'");
    return static_cast<std::size_t>(v);
}

}  // namespace

UnderlyingGraph read_edge_list(std::istream& in) {
    std::string raw;
    std::optional<std::size_t> n;
    std::vector<VertexPair> pairs;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = strip(raw);
        if (line.empty() || line.front() == '#') continue;
        std::size_t fields[2];
        if (!n) {
            if (!parse_fields(line, fields, 1)) {
                throw InvalidParameter("edge list line " + std::to_string(line_no) + ": expected vertex count");
            }
            n = fields[0];
            continue;
        }
        if (!parse_fields(line, fields, 2)) {
            throw InvalidParameter("edge list line " + std::to_string(line_no) + ": expected 'i j'");
        }
        pairs.emplace_back(fields[0], fields[1]);
    }
    if (!n) throw InvalidParameter("edge list has no vertex count");
    return from_edge_list(*n, pairs);
}

UnderlyingGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open edge list '" + path + "'");
    return read_edge_list(in);
}

std::string family_name(GraphFamily family) {
    switch (family) {
        case GraphFamily::Complete: return "complete";
        case GraphFamily::CompleteMinusCycle: return "complete-minus-cycle";
        case GraphFamily::EdgeList: return "edge-list";
    }
    return "unknown";
}

GraphFamily parse_family(const std::string& name) {
    if (name == "complete") return GraphFamily::Complete;
    if (name == "complete-minus-cycle") return GraphFamily::CompleteMinusCycle;
    if (name == "edge-list") return GraphFamily::EdgeList;
    throw InvalidParameter("unknown graph family '" + name + "'");
}

void validate(const SweepSpec& spec) {
    if (spec.p_values.empty()) throw InvalidParameter("sweep needs at least one p value");
    if (spec.family != GraphFamily::EdgeList && spec.n_values.empty()) {
        throw InvalidParameter("sweep needs at least one n value");
    }
    for (double p : spec.p_values)
        if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("sweep p values must lie in (0, 1)");
    for (std::size_t n : spec.n_values) {
        if (n < 3) throw InvalidParameter("sweep n values must be at least 3");
        if (spec.family == GraphFamily::CompleteMinusCycle && n < 5) {
            throw InvalidParameter("complete-minus-cycle needs n >= 5");
        }
    }
    if (spec.T && *spec.T == 0) throw InvalidParameter("T must be at least 1");
    if (spec.simulate && spec.trials == 0) throw InvalidParameter("trials must be at least 1");
    if (spec.family == GraphFamily::EdgeList && spec.edge_list_path.empty()) {
        throw InvalidParameter("edge-list family needs a path");
    }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    validate(spec);

    std::vector<UnderlyingGraph> graphs;
    if (spec.family == GraphFamily::EdgeList) {
        graphs.push_back(load_edge_list(spec.edge_list_path));
        if (graphs.back().n() < 3) throw InvalidParameter("sweep needs n >= 3");
    } else {
        for (std::size_t n : spec.n_values)
            graphs.push_back(spec.family == GraphFamily::Complete ? complete(n) : complete_minus_cycle(n));
    }

    const BoundOptions bound_options{spec.n_cap};
    MonteCarloOptions mc_options;
    mc_options.workers = spec.workers;
    mc_options.confidence = spec.confidence;

    std::vector<SweepRow> rows;
    for (const UnderlyingGraph& g : graphs) {
        for (double p : spec.p_values) {
            SweepRow row;
            row.family = family_name(spec.family);
            row.n = g.n();
            row.p = p;
            row.T = spec.T;
            const ModelParams params = spec.T ? ModelParams::for_union(g, p, *spec.T) : ModelParams(g, p);
            if (spec.T) row.p_hat = params.p();
            const BoundResult bound = connectivity_bound(params, bound_options);
            row.bound = bound.probability_lower_bound;
            row.n_star = bound.maximizing_N;
            if (spec.simulate && g.n() <= spec.mc_n_max) {
                const EmpiricalEstimate est =
                    empirical_connectivity(g, p, spec.T.value_or(1), spec.trials, spec.seed, mc_options);
                row.estimate = est.point;
                row.ci_low = est.ci_low;
                row.ci_high = est.ci_high;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kCsvHeader << '\n';
    const auto opt_real = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
    for (const SweepRow& r : rows) {
        out << r.family << ',' << r.n << ',' << format_real(r.p) << ',' << (r.T ? std::to_string(*r.T) : "") << ','
            << opt_real(r.p_hat) << ',' << format_real(r.bound) << ',' << r.n_star << ',' << opt_real(r.estimate)
            << ',' << opt_real(r.ci_low) << ',' << opt_real(r.ci_high) << '\n';
    }
}

std::vector<SweepRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip(line) != kCsvHeader) throw InvalidParameter("CSV header mismatch");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty()) continue;
        const auto f = split_commas(line);
        if (f.size() != 10) throw InvalidParameter("CSV row has " + std::to_string(f.size()) + " fields");
        const auto opt_real = [](const std::string& s) -> std::optional<double> {
            if (s.empty()) return std::nullopt;
            return parse_real(s);
        };
        SweepRow r;
        r.family = f[0];
        r.n = parse_count(f[1]);
        r.p = parse_real(f[2]);
        if (!f[3].empty()) r.T = parse_count(f[3]);
        r.p_hat = opt_real(f[4]);
        r.bound = parse_real(f[5]);
        r.n_star = parse_count(f[6]);
        r.estimate = opt_real(f[7]);
        r.ci_low = opt_real(f[8]);
        r.ci_high = opt_real(f[9]);
        rows.push_back(std::move(r));
    }
    return rows;
}

nlohmann::json to_json(const BoundResult& r) {
    return {{"bound", r.probability_lower_bound},
            {"maximizing_N", r.maximizing_N},
            {"n_search_max", r.n_search_max},
            {"numerator", r.numerator},
            {"denominator", r.denominator},
            {"S", r.s_value},
            {"mu", r.mu},
            {"sigma_squared", r.sigma_squared}};
}

nlohmann::json to_json(const TStarResult& r, bool include_trace) {
    nlohmann::json j{{"t_star", r.t_star}, {"epsilon", r.epsilon}, {"bound", r.bound()},
                     {"p_hat", r.trace.back().p_hat}, {"maximizing_N", r.trace.back().maximizing_N}};
    if (include_trace) {
        nlohmann::json trace = nlohmann::json::array();
        for (const auto& t : r.trace)
            trace.push_back({{"T", t.T}, {"p_hat", t.p_hat}, {"bound", t.bound}, {"maximizing_N", t.maximizing_N}});
        j["trace"] = std::move(trace);
    }
    return j;
}

nlohmann::json to_json(const EmpiricalEstimate& e) {
    return {{"trials", e.trials},   {"successes", e.successes}, {"estimate", e.point},
            {"ci_low", e.ci_low},   {"ci_high", e.ci_high},     {"confidence", e.confidence}};
}

nlohmann::json to_json(const ExactProbability& e) {
    return {{"probability", e.value}, {"connected_subsets", e.connected_subsets}, {"total_subsets", e.total_subsets}};
}

nlohmann::json to_json(const Lambda2Moments& m) {
    return {{"trials", m.trials},
            {"mean_lambda2", m.mean},
            {"mean_lambda2_squared", m.mean_square},
            {"se_mean_lambda2", m.se_mean},
            {"se_mean_lambda2_squared", m.se_mean_square}};
}

nlohmann::json to_json(const SweepRow& r) {
    const auto opt = [](const auto& v) -> nlohmann::json { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    return {{"family", r.family},       {"n", r.n},           {"p", r.p},
            {"T", opt(r.T)},            {"p_hat", opt(r.p_hat)}, {"bound", r.bound},
            {"n_star", r.n_star},       {"estimate", opt(r.estimate)}, {"ci_low", opt(r.ci_low)},
            {"ci_high", opt(r.ci_high)}};
}

}  // namespace conngraph
