#include "gcr/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "gcr/analysis.hpp"
#include "gcr/parser.hpp"

namespace gcr::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Bad input detected after argument parsing.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

auto goals_json(std::vector<Formula> const& fs) -> Json
{
    auto arr = Json::array();
    for (auto const& f : fs) {
        arr.push_back(pretty(f));
    }
    return arr;
}

auto fitness_json(FitnessVector const& v) -> Json
{
    Json j;
    j["consistency"] = v.consistency;
    j["resolved"] = v.resolved;
    j["syntactic"] = v.syntactic;
    j["semantic"] = v.semantic;
    return j;
}

auto candidate_json(Candidate const& c) -> Json
{
    Json j;
    j["birth"] = c.birth;
    j["goals"] = goals_json(c.spec.goals);
    j["fitness"] = fitness_json(c.fitness);
    j["valid"] = is_valid(c.fitness);
    return j;
}

auto config_json(SearchConfig const& cfg) -> Json
{
    Json j;
    j["algorithm"] = std::string(algorithm_name(cfg.algorithm));
    j["population"] = cfg.population;
    j["budget"] = cfg.budget;
    j["crossover_probability"] = cfg.crossover_probability;
    j["tournament_size"] = cfg.tournament_size;
    j["weights"] = { cfg.weights.consistency, cfg.weights.resolved, cfg.weights.syntactic, cfg.weights.semantic };
    j["bound"] = cfg.bound;
    j["seed"] = cfg.seed;
    j["timeout_secs"] = std::chrono::duration<double>(cfg.limits.timeout).count();
    return j;
}

auto spec_json(SpecFile const& spec) -> Json
{
    Json j;
    j["name"] = spec.name;
    j["aps"] = spec.alphabet.names();
    j["dom"] = goals_json(spec.dom);
    j["goals"] = goals_json(spec.goals);
    j["bcs"] = goals_json(spec.bcs);
    return j;
}

/// JSON has no infinity; unbounded values become the string "inf".
auto number_json(double x) -> Json
{
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return x;
}

auto format_number(double x) -> std::string
{
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    std::ostringstream s;
    s << std::setprecision(6) << x;
    return s.str();
}

void write_output(std::string const& text, std::string const& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw InputError("cannot write " + path);
    }
    file << text;
}

auto median(std::vector<double> xs) -> double
{
    if (xs.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::sort(xs.begin(), xs.end());
    auto const n = xs.size();
    if (n % 2 == 1) {
        return xs[n / 2];
    }
    auto const lo = xs[n / 2 - 1];
    auto const hi = xs[n / 2];
    return std::isinf(lo) || std::isinf(hi) ? hi : (lo + hi) / 2.0;
}

auto parse_algorithm_list(std::vector<std::string> const& names) -> std::vector<Algorithm>
{
    std::vector<Algorithm> out;
    for (auto const& n : names) {
        auto a = parse_algorithm(n);
        if (!a) {
            throw InputError("unknown algorithm '" + n + "' (expected nsga3, wbga, amosa or unguided)");
        }
        out.push_back(*a);
    }
    return out;
}

auto load_for_search(std::string const& path) -> std::pair<SpecFile, Problem>
{
    auto spec = load_spec_file(path);
    if (spec.bcs.empty()) {
        throw InputError(path + ": no boundary conditions declared (add a 'bc:' line)");
    }
    auto problem = spec.problem();
    return { std::move(spec), std::move(problem) };
}

/// Flags shared by resolve and compare.
struct SearchFlags {
    std::string algorithm = "nsga3";
    std::size_t population = 100;
    std::size_t budget = 1000;
    double crossover = 0.1;
    std::vector<double> weights{ 0.1, 0.7, 0.1, 0.1 };
    std::size_t bound = 5;
    std::uint64_t seed = 1;
    double timeout_secs = 300.0;

    void add_to(CLI::App& app, bool with_algorithm)
    {
        if (with_algorithm) {
            app.add_option("--algorithm", algorithm, "nsga3, wbga, amosa or unguided")->capture_default_str();
        }
        app.add_option("--population", population, "population size")->capture_default_str();
        app.add_option("--budget", budget, "individuals generated per run")->capture_default_str();
        app.add_option("--crossover-prob", crossover, "crossover probability")->capture_default_str();
        app.add_option("--weights", weights, "objective weights a,b,c,d (consistency, resolved, syntactic, semantic)")
            ->delimiter(',')
            ->expected(4);
        app.add_option("--bound,--k", bound, "lasso bound k")->capture_default_str();
        app.add_option("--seed", seed, "random seed")->capture_default_str();
        app.add_option("--timeout-secs", timeout_secs, "time limit per satisfiability query")->capture_default_str();
    }

    [[nodiscard]] auto config() const -> SearchConfig
    {
        SearchConfig cfg;
        auto a = parse_algorithm(algorithm);
        if (!a) {
            throw InputError("unknown algorithm '" + algorithm + "' (expected nsga3, wbga, amosa or unguided)");
        }
        cfg.algorithm = *a;
        cfg.population = population;
        cfg.budget = budget;
        cfg.crossover_probability = crossover;
        if (weights.size() != 4) {
            throw InputError("--weights needs four values");
        }
        cfg.weights = Weights{ weights[0], weights[1], weights[2], weights[3] };
        cfg.bound = bound;
        cfg.seed = seed;
        if (!(timeout_secs > 0.0)) {
            throw InputError("--timeout-secs must be positive");
        }
        cfg.limits.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(timeout_secs * 1000.0));
        try {
            cfg.validate();
        } catch (std::invalid_argument const& e) {
            throw InputError(e.what());
        }
        return cfg;
    }
};

auto resolve_text(SpecFile const& spec, SearchConfig const& cfg, SearchResult const& result, double seconds) -> std::string
{
    std::ostringstream out;
    out << (spec.name.empty() ? std::string("specification") : spec.name) << ": " << algorithm_name(cfg.algorithm)
        << ", seed " << cfg.seed << ", " << result.generated.size() << " individuals, " << std::fixed
        << std::setprecision(2) << seconds << " s\n";
    out.unsetf(std::ios::fixed);
    if (result.front.empty()) {
        out << "no valid resolution found\n";
        return out.str();
    }
    out << result.front.size() << " non-dominated resolution" << (result.front.size() == 1 ? "" : "s") << "\n\n";
    out << "  #  syntactic  semantic  goals\n";
    std::size_t i = 0;
    for (auto const& c : result.front.members()) {
        ++i;
        out << std::setw(3) << i << "  " << std::left << std::setw(9) << format_number(c.fitness.syntactic) << "  "
            << std::setw(8) << format_number(c.fitness.semantic) << std::right;
        for (std::size_t g = 0; g < c.spec.goals.size(); ++g) {
            out << (g == 0 ? "  " : "\n                           ") << pretty(c.spec.goals[g]);
        }
        out << '\n';
    }
    return out.str();
}

auto front_csv(SearchResult const& result) -> std::string
{
    std::ostringstream out;
    out << "birth,consistency,resolved,syntactic,semantic,goals\n";
    out << std::setprecision(17);
    for (auto const& c : result.front.members()) {
        std::string goals;
        for (auto const& g : c.spec.goals) {
            goals += (goals.empty() ? "" : "; ") + pretty(g);
        }
        out << c.birth << ',' << c.fitness.consistency << ',' << c.fitness.resolved << ',' << c.fitness.syntactic << ','
            << c.fitness.semantic << ",\"" << goals << "\"\n";
    }
    return out.str();
}

auto yes_no(bool b) -> char const* { return b ? "yes" : "no"; }

auto rows_csv(std::vector<IndicatorRow> const& rows) -> std::string
{
    std::ostringstream out;
    out << "run,algorithm,hv,igd\n" << std::setprecision(17);
    for (auto const& r : rows) {
        out << r.run << ',' << algorithm_name(r.algorithm) << ',' << r.hv << ',';
        if (std::isinf(r.igd)) {
            out << "inf";
        } else {
            out << r.igd;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace

auto run_report(SpecFile const& spec, SearchConfig const& cfg, SearchResult const& result, double seconds) -> Json
{
    Json j;
    j["spec"] = spec_json(spec);
    j["config"] = config_json(cfg);
    j["seed"] = cfg.seed;
    j["generated"] = result.generated.size();
    auto cands = Json::array();
    for (auto const& c : result.generated) {
        cands.push_back(candidate_json(c));
    }
    j["candidates"] = std::move(cands);
    auto front = Json::array();
    for (auto const& c : result.front.members()) {
        front.push_back(candidate_json(c));
    }
    j["front"] = std::move(front);
    j[wall_clock_field] = seconds;
    return j;
}

auto without_wall_clock(Json report) -> Json
{
    report.erase(wall_clock_field);
    return report;
}

auto compare_runs(SpecFile const& spec, SearchConfig cfg, std::vector<Algorithm> const& algorithms, std::size_t runs)
    -> std::vector<IndicatorRow>
{
    auto const problem = spec.problem();
    auto const base_seed = cfg.seed;
    std::vector<IndicatorRow> rows;
    for (auto a : algorithms) {
        for (std::size_t r = 0; r < runs; ++r) {
            cfg.algorithm = a;
            cfg.seed = base_seed + r;
            auto const result = run_search(problem, cfg);
            auto const pts = similarity_front(result.front);
            rows.push_back(IndicatorRow{ r, a, hypervolume(pts), igd(pts), pts.size() });
        }
    }
    return rows;
}

auto compare_stats(std::vector<IndicatorRow> const& rows, std::vector<Algorithm> const& algorithms) -> Json
{
    auto const samples = [&](Algorithm a, bool hv) {
        Sample s;
        for (auto const& r : rows) {
            if (r.algorithm == a) {
                s.push_back(hv ? r.hv : r.igd);
            }
        }
        return s;
    };
    // Listing an algorithm twice compares it with itself; summarize it once.
    std::vector<Algorithm> distinct;
    for (auto a : algorithms) {
        if (std::find(distinct.begin(), distinct.end(), a) == distinct.end()) {
            distinct.push_back(a);
        }
    }
    Json j;
    auto summary = Json::array();
    for (auto a : distinct) {
        auto const hv = samples(a, true);
        auto const ig = samples(a, false);
        std::size_t with_front = 0;
        for (auto const& r : rows) {
            with_front += r.algorithm == a && r.front_size > 0 ? 1 : 0;
        }
        Json s;
        s["algorithm"] = std::string(algorithm_name(a));
        s["runs"] = hv.size();
        s["runs_with_resolutions"] = with_front;
        s["hv_median"] = number_json(median(hv));
        s["igd_median"] = number_json(median(ig));
        summary.push_back(std::move(s));
    }
    j["algorithms"] = std::move(summary);
    auto pairs = Json::array();
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
        for (std::size_t k = i + 1; k < algorithms.size(); ++k) {
            for (bool hv : { true, false }) {
                auto const a = samples(algorithms[i], hv);
                auto const b = samples(algorithms[k], hv);
                if (a.empty() || b.empty()) {
                    continue;
                }
                auto const kw = kruskal_wallis({ a, b });
                auto const mw = mann_whitney(a, b);
                Json p;
                p["indicator"] = hv ? "hv" : "igd";
                p["a"] = std::string(algorithm_name(algorithms[i]));
                p["b"] = std::string(algorithm_name(algorithms[k]));
                p["kruskal_wallis"] = { { "h", kw.statistic }, { "p", kw.p_value } };
                p["mann_whitney"] = { { "u", mw.statistic }, { "p", mw.p_value } };
                p["a12"] = a12(a, b).effect_size;
                pairs.push_back(std::move(p));
            }
        }
    }
    j["comparisons"] = std::move(pairs);
    return j;
}

auto run(std::vector<std::string> args, std::ostream& out, std::ostream& err) -> int
{
    CLI::App app{ "Search for goal-conflict resolutions of LTL specifications", "gcr" };
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "show help for every command");

    std::string format;
    std::string out_path;
    auto const add_common = [&](CLI::App* cmd, std::string const& default_format) {
        cmd->add_option("--format", format, "json, csv or text")
            ->check(CLI::IsMember({ "json", "csv", "text" }))
            ->default_str(default_format);
        cmd->add_option("--out", out_path, "write output to this file instead of stdout");
    };

    SearchFlags search;
    std::string spec_path;
    auto* resolve = app.add_subcommand("resolve", "search for resolutions of a specification");
    resolve->add_option("spec", spec_path, "specification file")->required();
    search.add_to(*resolve, true);
    std::optional<double> max_dissimilarity;
    resolve->add_option("--max-dissimilarity", max_dissimilarity,
        "keep only resolutions whose semantic dissimilarity (1 - semantic similarity) is below this value");
    add_common(resolve, "text");

    auto* check = app.add_subcommand("check-bc", "check the boundary conditions of a specification");
    check->add_option("spec", spec_path, "specification file")->required();
    std::size_t check_bound = 5;
    double check_timeout = 300.0;
    check->add_option("--bound,--k", check_bound, "lasso bound k")->capture_default_str();
    check->add_option("--timeout-secs", check_timeout, "time limit per satisfiability query")->capture_default_str();
    add_common(check, "text");

    auto* count = app.add_subcommand("count", "count lasso bases of length k satisfying a formula");
    std::string formula_text;
    std::size_t count_bound = 5;
    std::vector<std::string> aps;
    count->add_option("formula", formula_text, "LTL formula")->required();
    count->add_option("--k,--bound", count_bound, "base length")->capture_default_str();
    count->add_option("--aps", aps, "atomic propositions (defaults to those in the formula)")->delimiter(',');
    add_common(count, "text");

    auto* compare = app.add_subcommand("compare", "compare algorithms by HV and IGD over seeded runs");
    compare->add_option("spec", spec_path, "specification file")->required();
    std::size_t runs = 10;
    std::vector<std::string> algorithm_names{ "nsga3", "wbga", "amosa", "unguided" };
    std::string stats_path;
    search.add_to(*compare, false);
    compare->add_option("--runs", runs, "runs per algorithm")->capture_default_str();
    compare->add_option("--algorithms", algorithm_names, "algorithms to compare")->delimiter(',');
    compare->add_option("--stats", stats_path, "also write the statistics JSON to this file");
    add_common(compare, "csv");

    auto* eval = app.add_subcommand("eval-trace", "evaluate a formula on a lasso trace");
    std::string trace_text;
    eval->add_option("formula", formula_text, "LTL formula")->required();
    eval->add_option("trace", trace_text, R"(trace JSON, e.g. {"base": [["p"], []], "loop": 1})")->required();
    eval->add_option("--aps", aps, "atomic propositions (defaults to those in the formula and trace)")->delimiter(',');
    add_common(eval, "text");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e, out, err);
    } catch (CLI::CallForAllHelp const& e) {
        return app.exit(e, out, err);
    } catch (CLI::ParseError const& e) {
        app.exit(e, out, err);
        return exit_input_error;
    }
    if (format.empty()) {
        format = compare->parsed() ? "csv" : "text";
    }

    try {
        if (resolve->parsed()) {
            auto const cfg = search.config();
            auto const [spec, problem] = load_for_search(spec_path);
            auto const start = std::chrono::steady_clock::now();
            auto result = run_search(problem, cfg);
            if (max_dissimilarity) {
                ParetoArchive kept;
                for (auto const& c : result.front.members()) {
                    if (1.0 - c.fitness.semantic < *max_dissimilarity) {
                        kept.insert(c);
                    }
                }
                result.front = std::move(kept);
            }
            auto const seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (format == "text") {
                out << resolve_text(spec, cfg, result, seconds);
                if (!out_path.empty()) {
                    write_output(run_report(spec, cfg, result, seconds).dump(2) + "\n", out_path, out);
                }
            } else if (format == "csv") {
                write_output(front_csv(result), out_path, out);
            } else {
                write_output(run_report(spec, cfg, result, seconds).dump(2) + "\n", out_path, out);
            }
            return exit_ok;
        }
        if (check->parsed()) {
            auto const spec = load_spec_file(spec_path);
            if (spec.bcs.empty()) {
                throw InputError(spec_path + ": no boundary conditions declared (add a 'bc:' line)");
            }
            Limits limits;
            limits.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(check_timeout * 1000.0));
            auto const s = spec.specification();
            Json reports = Json::array();
            std::ostringstream text;
            for (auto const& bc : spec.bcs) {
                auto const r = check_bc(s, bc, check_bound, limits);
                Json j;
                j["bc"] = pretty(bc);
                j["inconsistency"] = r.inconsistency;
                j["minimality"] = r.minimality;
                j["non_triviality"] = r.non_triviality;
                j["holds"] = r.holds;
                reports.push_back(std::move(j));
                text << "bc " << pretty(bc) << " (k = " << check_bound << ")\n";
                text << "  inconsistency   " << yes_no(r.inconsistency) << '\n';
                text << "  minimality     ";
                for (std::size_t i = 0; i < r.minimality.size(); ++i) {
                    text << ' ' << pretty(spec.goals[i]) << ": " << yes_no(r.minimality[i]);
                }
                text << '\n';
                text << "  non-triviality  " << yes_no(r.non_triviality) << '\n';
                text << "  " << (r.holds ? "boundary condition" : "not a boundary condition") << '\n';
            }
            write_output(format == "json" ? reports.dump(2) + "\n" : text.str(), out_path, out);
            return exit_ok;
        }
        if (count->parsed()) {
            auto const f = parse(formula_text);
            Alphabet alphabet;
            if (aps.empty()) {
                auto const names = atoms(f);
                alphabet = Alphabet(std::vector<std::string>(names.begin(), names.end()));
            } else {
                alphabet = Alphabet(aps);
            }
            auto const n = count_bases(f, alphabet, count_bound);
            if (format == "json") {
                Json j;
                j["formula"] = pretty(f);
                j["aps"] = alphabet.names();
                j["k"] = count_bound;
                j["count"] = n;
                write_output(j.dump(2) + "\n", out_path, out);
            } else {
                write_output(std::to_string(n) + "\n", out_path, out);
            }
            return exit_ok;
        }
        if (compare->parsed()) {
            auto const cfg = search.config();
            auto const algorithms = parse_algorithm_list(algorithm_names);
            if (algorithms.empty()) {
                throw InputError("--algorithms is empty");
            }
            auto const [spec, problem] = load_for_search(spec_path);
            auto const rows = compare_runs(spec, cfg, algorithms, runs);
            auto const stats = compare_stats(rows, algorithms);
            if (!stats_path.empty()) {
                write_output(stats.dump(2) + "\n", stats_path, out);
            }
            if (format == "json") {
                Json j;
                auto arr = Json::array();
                for (auto const& r : rows) {
                    arr.push_back(Json{ { "run", r.run }, { "algorithm", std::string(algorithm_name(r.algorithm)) },
                        { "hv", r.hv }, { "igd", number_json(r.igd) }, { "front_size", r.front_size } });
                }
                j["runs"] = std::move(arr);
                j["stats"] = stats;
                write_output(j.dump(2) + "\n", out_path, out);
            } else if (format == "csv") {
                write_output(rows_csv(rows), out_path, out);
            } else {
                std::ostringstream text;
                for (auto const& s : stats["algorithms"]) {
                    text << std::left << std::setw(9) << s["algorithm"].get<std::string>() << std::right
                         << " runs with resolutions " << s["runs_with_resolutions"].get<std::size_t>() << "/"
                         << s["runs"].get<std::size_t>() << ", median HV " << s["hv_median"].dump()
                         << ", median IGD " << s["igd_median"].dump() << '\n';
                }
                for (auto const& p : stats["comparisons"]) {
                    text << p["indicator"].get<std::string>() << ' ' << p["a"].get<std::string>() << " vs "
                         << p["b"].get<std::string>() << ": KW p = "
                         << format_number(p["kruskal_wallis"]["p"].get<double>())
                         << ", MWU p = " << format_number(p["mann_whitney"]["p"].get<double>())
                         << ", A12 = " << format_number(p["a12"].get<double>()) << '\n';
                }
                write_output(text.str(), out_path, out);
            }
            return exit_ok;
        }
        if (eval->parsed()) {
            auto const f = parse(formula_text);
            auto const trace_json = nlohmann::json::parse(trace_text);
            Alphabet alphabet;
            if (aps.empty()) {
                auto names = atoms(f);
                if (trace_json.is_object() && trace_json.contains("base") && trace_json["base"].is_array()) {
                    for (auto const& state : trace_json["base"]) {
                        for (auto const& a : state) {
                            names.insert(a.get<std::string>());
                        }
                    }
                }
                alphabet = Alphabet(std::vector<std::string>(names.begin(), names.end()));
            } else {
                alphabet = Alphabet(aps);
            }
            auto const trace = trace_from_json(trace_json, alphabet);
            auto const verdict = eval_lasso(f, trace, alphabet);
            if (format == "json") {
                Json j;
                j["formula"] = pretty(f);
                j["trace"] = trace_to_json(trace, alphabet);
                j["holds"] = verdict;
                write_output(j.dump(2) + "\n", out_path, out);
            } else {
                write_output(std::string(verdict ? "true" : "false") + "\n", out_path, out);
            }
            return exit_ok;
        }
    } catch (ResourceLimitError const& e) {
        err << "gcr: resource limit reached: " << e.what() << '\n';
        return exit_resource_limit;
    } catch (SpecFileError const& e) {
        err << "gcr: " << spec_path << ": " << e.what() << '\n';
        return exit_input_error;
    } catch (nlohmann::json::exception const& e) {
        err << "gcr: invalid JSON: " << e.what() << '\n';
        return exit_input_error;
    } catch (std::exception const& e) {
        err << "gcr: " << e.what() << '\n';
        return exit_input_error;
    }
    return exit_input_error;
}

}  // namespace gcr::cli
