#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conngraph/bounds.hpp"
#include "conngraph/graph.hpp"
#include "conngraph/montecarlo.hpp"

namespace conngraph {

/// Edge-list text: the first non-comment line holds n, every further
/// non-empty line holds "i j" (0-indexed). '#' starts a comment line. LF and
/// CRLF both accepted. Malformed input is InvalidParameter.
UnderlyingGraph read_edge_list(std::istream& in);
UnderlyingGraph load_edge_list(const std::string& path);

enum class GraphFamily { Complete, CompleteMinusCycle, EdgeList };

std::string family_name(GraphFamily family);
GraphFamily parse_family(const std::string& name);

struct SweepSpec {
    GraphFamily family = GraphFamily::Complete;
    std::vector<std::size_t> n_values;
    std::vector<double> p_values;
    std::optional<std::size_t> T;
    std::string edge_list_path;

    bool simulate = false;
    std::uint64_t trials = 10'000;
    std::uint64_t seed = 0;
    double confidence = kDefaultConfidence;
    /// Monte Carlo columns are left empty for n above this.
    std::size_t mc_n_max = 1000;
    std::size_t n_cap = kDefaultNCap;
    std::size_t workers = 0;
};

struct SweepRow {
    std::string family;
    std::size_t n = 0;
    double p = 0.0;
    std::optional<std::size_t> T;
    std::optional<double> p_hat;
    double bound = 0.0;
    std::size_t n_star = 0;
    std::optional<double> estimate;
    std::optional<double> ci_low;
    std::optional<double> ci_high;

    bool operator==(const SweepRow&) const = default;
};

/// Throws InvalidParameter on an invalid sweep (empty lists, p outside (0, 1),
/// n < 3 or n unsupported by the family).
void validate(const SweepSpec& spec);

/// One row per (n, p), n outer and p inner.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr const char* kCsvHeader = "family,n,p,T,p_hat,bound,n_star,estimate,ci_low,ci_high";

/// Reals are written with 17 significant digits so they re-parse exactly.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(std::istream& in);

/// printf "%.17g".
std::string format_real(double value);

nlohmann::json to_json(const BoundResult& result);
nlohmann::json to_json(const TStarResult& result, bool include_trace);
nlohmann::json to_json(const EmpiricalEstimate& estimate);
nlohmann::json to_json(const ExactProbability& exact);
nlohmann::json to_json(const Lambda2Moments& moments);
nlohmann::json to_json(const SweepRow& row);

}  // namespace conngraph
