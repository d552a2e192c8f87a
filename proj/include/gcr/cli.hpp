#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcr/search.hpp"
#include "gcr/spec_file.hpp"

namespace gcr::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 2;
inline constexpr int exit_resource_limit = 3;

/// Runs one `gcr` command. `args` excludes the program name.
auto run(std::vector<std::string> args, std::ostream& out, std::ostream& err) -> int;

/// Name of the report field holding the elapsed time; the only field that
/// differs between two runs with the same inputs.
inline constexpr char const* wall_clock_field = "wall_clock_seconds";

[[nodiscard]] auto run_report(SpecFile const& spec, SearchConfig const& cfg, SearchResult const& result,
    double seconds) -> nlohmann::ordered_json;

[[nodiscard]] auto without_wall_clock(nlohmann::ordered_json report) -> nlohmann::ordered_json;

struct IndicatorRow {
    std::size_t run = 0;
    Algorithm algorithm = Algorithm::Nsga3;
    double hv = 0.0;
    double igd = 0.0;
    std::size_t front_size = 0;
};

/// `runs` runs of every algorithm; run r is seeded with cfg.seed + r.
[[nodiscard]] auto compare_runs(SpecFile const& spec, SearchConfig cfg, std::vector<Algorithm> const& algorithms,
    std::size_t runs) -> std::vector<IndicatorRow>;

/// Per-algorithm summaries plus Kruskal-Wallis, Mann-Whitney and A12 for
/// every pair of algorithms, on HV and on IGD.
[[nodiscard]] auto compare_stats(std::vector<IndicatorRow> const& rows, std::vector<Algorithm> const& algorithms)
    -> nlohmann::ordered_json;

}  // namespace gcr::cli
