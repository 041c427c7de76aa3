// polignac: prime-gap census tooling, IP-set machinery, and the desk-scale
// witness pipeline. One command per process; sieve work may use threads but
// every output is deterministic and byte-stable for csv/json.
//
// Exit codes: 0 success, 2 usage or invalid configuration, 3 cache error,
// 4 source exhausted, 5 failure outcome (report still emitted).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polignac/census_io.hpp"
#include "polignac/format.hpp"
#include "polignac/pipeline.hpp"

namespace {

using namespace polignac;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCache = 3;
constexpr int kExitExhausted = 4;
constexpr int kExitFailure = 5;

std::vector<uint64_t> parse_u64_list(const std::string& text) {
    std::vector<uint64_t> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw ConfigError("expected a comma-separated number list, got '" + tok + "'");
        out.push_back(std::stoull(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::optional<std::string> default_cache_path(uint64_t limit) {
    const char* dir = std::getenv("POLIGNAC_CACHE_DIR");
    if (!dir || !*dir) return std::nullopt;
    return std::string(dir) + "/census-" + std::to_string(limit) + ".csv";
}

GapCensus census_with_cache(SieveLimit limit, uint64_t segment_size, unsigned threads,
                            std::optional<std::string> cache_path) {
    if (!cache_path) cache_path = default_cache_path(limit.value());
    if (!cache_path) return gap_census(limit, segment_size, threads);
    CacheOutcome outcome;
    auto census = census_cached(*cache_path, limit, segment_size, threads, &outcome);
    switch (outcome) {
        case CacheOutcome::Hit: std::cerr << "cache hit: " << *cache_path << "\n"; break;
        case CacheOutcome::Recomputed:
            std::cerr << "cache limit mismatch, recomputed: " << *cache_path << "\n";
            break;
        case CacheOutcome::Computed:
            std::cerr << "cache written: " << *cache_path << "\n";
            break;
    }
    return census;
}

struct CommonSieveOpts {
    uint64_t limit = 1000000;
    uint64_t segment_size = kDefaultSegmentSize;
    unsigned threads = 1;
    std::string cache;
    std::string format = "human";

    std::optional<std::string> cache_path() const {
        return cache.empty() ? std::nullopt : std::optional<std::string>(cache);
    }
};

void add_sieve_opts(CLI::App* cmd, CommonSieveOpts& opts, bool with_format = true) {
    cmd->add_option("--limit", opts.limit, "sieve limit (inclusive, >= 3)")
        ->capture_default_str();
    cmd->add_option("--segment-size", opts.segment_size, "sieve segment size")
        ->capture_default_str();
    cmd->add_option("--threads", opts.threads, "sieve worker threads")
        ->capture_default_str();
    cmd->add_option("--cache", opts.cache,
                    "census cache file (default: $POLIGNAC_CACHE_DIR/census-<limit>.csv)");
    if (with_format)
        cmd->add_option("--format", opts.format, "output format: human|csv|json")
            ->capture_default_str();
}

int cmd_census(const CommonSieveOpts& opts) {
    auto fmt = parse_output_format(opts.format);
    auto census = census_with_cache(SieveLimit(opts.limit), opts.segment_size,
                                    opts.threads, opts.cache_path());
    switch (fmt) {
        case OutputFormat::Csv: std::cout << census_to_csv(census); break;
        case OutputFormat::Json: std::cout << dump_json(census_to_json(census)); break;
        case OutputFormat::Human: std::cout << census_human(census); break;
    }
    return kExitOk;
}

int cmd_pol(const CommonSieveOpts& opts, uint64_t threshold) {
    auto fmt = parse_output_format(opts.format);
    auto census = census_with_cache(SieveLimit(opts.limit), opts.segment_size,
                                    opts.threads, opts.cache_path());
    auto pol = empirical_pol(census, threshold);
    switch (fmt) {
        case OutputFormat::Csv: std::cout << pol_to_csv(pol, census); break;
        case OutputFormat::Json: std::cout << dump_json(pol_to_json(pol, census)); break;
        case OutputFormat::Human: std::cout << pol_human(pol, census); break;
    }
    return kExitOk;
}

int cmd_admissible_check(const std::string& tuple_text, const std::string& format) {
    auto fmt = parse_output_format(format);
    Tuple tuple(parse_u64_list(tuple_text));
    auto check = is_admissible(tuple);
    switch (fmt) {
        case OutputFormat::Json:
            std::cout << dump_json(admissible_check_to_json(tuple, check));
            break;
        case OutputFormat::Csv:
            std::cout << "admissible,covering_prime\n"
                      << (check.admissible ? "true" : "false") << ','
                      << (check.covering_prime ? std::to_string(*check.covering_prime)
                                               : std::string())
                      << "\n";
            break;
        case OutputFormat::Human:
            if (check.admissible)
                std::cout << "admissible\n";
            else
                std::cout << "inadmissible: p=" << *check.covering_prime << "\n";
            break;
    }
    return kExitOk;
}

int cmd_admissible_construct(const std::string& set, uint64_t count, uint64_t window,
                             uint64_t budget, const std::string& format) {
    auto fmt = parse_output_format(format);
    auto spec = GeneratorSpec::parse(set);
    auto seq = construct_admissible(GeneratorStream(spec), count, window, budget);
    switch (fmt) {
        case OutputFormat::Json:
            std::cout << dump_json(admissible_construct_to_json(set, count, budget, seq));
            break;
        case OutputFormat::Csv:
            std::cout << admissible_construct_to_csv(seq);
            break;
        case OutputFormat::Human: {
            std::cout << "admissible tuple:";
            for (uint64_t v : seq.tuple.elements()) std::cout << ' ' << v;
            std::cout << "\nchoices:\n";
            for (size_t i = 0; i < seq.choices.size(); ++i)
                std::cout << "  b" << i + 1 << " = " << seq.tuple.elements()[i] << "  (mod "
                          << seq.choices[i].prime << " -> " << seq.choices[i].residue
                          << ", survivors " << seq.choices[i].survivors << ")\n";
            break;
        }
    }
    return kExitOk;
}

int print_values(const char* command, const std::string& set, const char* arg_name,
                 uint64_t arg, const std::vector<uint64_t>& values,
                 const std::string& format) {
    auto fmt = parse_output_format(format);
    switch (fmt) {
        case OutputFormat::Json:
            std::cout << dump_json(values_to_json(command, set, arg_name, arg, values));
            break;
        case OutputFormat::Csv:
            std::cout << values_to_csv(values);
            break;
        case OutputFormat::Human: {
            for (size_t i = 0; i < values.size(); ++i)
                std::cout << values[i] << (i + 1 < values.size() ? ',' : '\n');
            if (values.empty()) std::cout << "(empty)\n";
            break;
        }
    }
    return kExitOk;
}

int cmd_ramsey_verify(uint64_t r, uint64_t s, unsigned n, const std::string& format) {
    auto fmt = parse_output_format(format);
    if (fmt == OutputFormat::Csv)
        throw ConfigError("ramsey verify supports --format human|json");
    auto result = verify_ramsey_exhaustive(r, s, n);
    if (fmt == OutputFormat::Json) {
        std::cout << dump_json(ramsey_verify_to_json(r, s, n, result));
    } else {
        std::cout << (result.holds ? "true" : "false") << "\n";
        if (result.counterexample) {
            auto edges = complete_graph_edges(n);
            std::cout << "counterexample coloring (blue edges):";
            for (unsigned e = 0; e < edges.size(); ++e)
                if ((*result.counterexample >> e) & 1)
                    std::cout << " (" << edges[e].first + 1 << "," << edges[e].second + 1
                              << ")";
            std::cout << "\n";
        }
    }
    return kExitOk;
}

int cmd_ramsey_bound(uint64_t r, uint64_t s, const std::string& format) {
    auto fmt = parse_output_format(format);
    if (fmt == OutputFormat::Csv)
        throw ConfigError("ramsey bound supports --format human|json");
    RamseyQuery q(r, s);
    auto bound = ramsey_bound(q);
    if (fmt == OutputFormat::Json) {
        std::cout << dump_json(ramsey_bound_to_json(q, bound));
    } else {
        std::cout << bound.value << (bound.exact ? " (exact)" : " (upper bound)")
                  << (bound.saturated ? " (saturated)" : "") << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"prime gap census, IP sets, and de Polignac witness pipeline"};
    app.require_subcommand(1);

    // census
    CommonSieveOpts census_opts;
    auto* census_cmd = app.add_subcommand("census", "consecutive prime gap census");
    add_sieve_opts(census_cmd, census_opts);

    // pol
    CommonSieveOpts pol_opts;
    uint64_t pol_threshold = 100;
    auto* pol_cmd = app.add_subcommand("pol", "empirical de Polignac set");
    add_sieve_opts(pol_cmd, pol_opts);
    pol_cmd->add_option("--threshold", pol_threshold, "minimum gap multiplicity")
        ->capture_default_str();

    // admissible
    auto* adm_cmd = app.add_subcommand("admissible", "admissible tuple tools");
    adm_cmd->require_subcommand(1);
    std::string adm_tuple, adm_format = "human";
    auto* adm_check = adm_cmd->add_subcommand("check", "test a tuple for admissibility");
    adm_check->add_option("tuple", adm_tuple, "comma-separated tuple, e.g. 0,2,6")
        ->required();
    adm_check->add_option("--format", adm_format, "output format")->capture_default_str();

    std::string con_set, con_format = "human";
    uint64_t con_count = 0, con_window = 100, con_budget = kDefaultPullBudget;
    auto* adm_construct =
        adm_cmd->add_subcommand("construct", "extract an admissible tuple from a stream");
    adm_construct->add_option("--set", con_set, "generator spec (list:...|geom:a,r|digits|rough:c)")
        ->required();
    adm_construct->add_option("--count", con_count, "tuple length")->required();
    adm_construct->add_option("--window", con_window, "tally window")->capture_default_str();
    adm_construct->add_option("--budget", con_budget, "max elements pulled")
        ->capture_default_str();
    adm_construct->add_option("--format", con_format, "output format")->capture_default_str();

    // fs
    auto* fs_cmd = app.add_subcommand("fs", "finite-sums set tools");
    fs_cmd->require_subcommand(1);
    std::string fs_set, fs_format = "human";
    uint64_t fs_bound = 0, fs_value = 0, fs_count = 0, fs_target = 0;

    auto* fs_enum = fs_cmd->add_subcommand("enumerate", "all finite sums up to a bound");
    fs_enum->add_option("--set", fs_set, "generator spec")->required();
    fs_enum->add_option("--bound", fs_bound, "inclusive bound")->required();
    fs_enum->add_option("--format", fs_format, "output format")->capture_default_str();

    auto* fs_cont = fs_cmd->add_subcommand("contains", "finite-sums membership with certificate");
    fs_cont->add_option("--set", fs_set, "generator spec")->required();
    fs_cont->add_option("--value", fs_value, "value to test")->required();
    fs_cont->add_option("--format", fs_format, "output format")->capture_default_str();

    auto* fs_partial = fs_cmd->add_subcommand("partial-sums", "prefix sums of the generators");
    fs_partial->add_option("--set", fs_set, "generator spec")->required();
    fs_partial->add_option("--count", fs_count, "how many prefix sums")->required();
    fs_partial->add_option("--format", fs_format, "output format")->capture_default_str();

    auto* fs_block = fs_cmd->add_subcommand("block-witness",
                                            "consecutive-block decomposition of a target");
    fs_block->add_option("--set", fs_set, "generator spec")->required();
    fs_block->add_option("--target", fs_target, "target value")->required();
    fs_block->add_option("--format", fs_format, "output format")->capture_default_str();

    // ramsey
    auto* ramsey_cmd = app.add_subcommand("ramsey", "Ramsey bounds and exhaustive checks");
    ramsey_cmd->require_subcommand(1);
    uint64_t ram_r = 0, ram_s = 0;
    unsigned ram_n = 0;
    std::string ram_format = "human";
    auto* ram_verify = ramsey_cmd->add_subcommand(
        "verify", "exhaustively check that K_n forces a blue K_r or red K_s");
    ram_verify->add_option("r", ram_r)->required();
    ram_verify->add_option("s", ram_s)->required();
    ram_verify->add_option("n", ram_n)->required();
    ram_verify->add_option("--format", ram_format, "output format")->capture_default_str();
    auto* ram_bound = ramsey_cmd->add_subcommand("bound", "table / binomial Ramsey bound");
    ram_bound->add_option("r", ram_r)->required();
    ram_bound->add_option("s", ram_s)->required();
    ram_bound->add_option("--format", ram_format, "output format")->capture_default_str();

    // pipeline
    auto* pipe_cmd = app.add_subcommand("pipeline", "witness pipeline (faithful or search)");
    std::string pipe_set = "geom:2,2", pipe_mode = "search", pipe_format = "json";
    uint64_t pipe_k = 1, pipe_limit = 1000000, pipe_threshold = 100;
    uint64_t pipe_window = 100, pipe_budget = kDefaultPullBudget, pipe_search_bound = 0;
    uint64_t pipe_segment = kDefaultSegmentSize;
    unsigned pipe_threads = 1;
    double pipe_ratio = 10.0;
    std::optional<uint64_t> pipe_k2;
    pipe_cmd->add_option("--set", pipe_set, "generator spec")->capture_default_str();
    pipe_cmd->add_option("--k", pipe_k, "witness length")->capture_default_str();
    pipe_cmd->add_option("--limit", pipe_limit, "sieve limit")->capture_default_str();
    pipe_cmd->add_option("--threshold", pipe_threshold, "pol multiplicity threshold")
        ->capture_default_str();
    pipe_cmd->add_option("--mode", pipe_mode, "faithful|search")->capture_default_str();
    pipe_cmd->add_option("--ratio", pipe_ratio, "lacunary ratio")->capture_default_str();
    pipe_cmd->add_option("--window", pipe_window, "admissible tally window")
        ->capture_default_str();
    pipe_cmd->add_option("--budget", pipe_budget, "max stream pulls")->capture_default_str();
    pipe_cmd->add_option("--k2", pipe_k2, "red clique target (faithful mode)");
    pipe_cmd->add_option("--search-bound", pipe_search_bound,
                         "max candidate value (0 = largest pol member)")
        ->capture_default_str();
    pipe_cmd->add_option("--segment-size", pipe_segment, "sieve segment size")
        ->capture_default_str();
    pipe_cmd->add_option("--threads", pipe_threads, "sieve worker threads")
        ->capture_default_str();
    pipe_cmd->add_option("--format", pipe_format, "output format: human|json")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (census_cmd->parsed()) return cmd_census(census_opts);
        if (pol_cmd->parsed()) return cmd_pol(pol_opts, pol_threshold);
        if (adm_check->parsed()) return cmd_admissible_check(adm_tuple, adm_format);
        if (adm_construct->parsed())
            return cmd_admissible_construct(con_set, con_count, con_window, con_budget,
                                            con_format);
        if (fs_enum->parsed()) {
            auto values = fs_enumerate(GeneratorSpec::parse(fs_set), fs_bound);
            return print_values("fs-enumerate", fs_set, "bound", fs_bound, values, fs_format);
        }
        if (fs_cont->parsed()) {
            auto spec = GeneratorSpec::parse(fs_set);
            auto cert = fs_contains(fs_value, spec);
            if (parse_output_format(fs_format) == OutputFormat::Csv)
                throw ConfigError("fs contains supports --format human|json");
            if (parse_output_format(fs_format) == OutputFormat::Json) {
                Json j;
                j["command"] = "fs-contains";
                j["set"] = fs_set;
                j["value"] = fs_value;
                j["contained"] = cert.has_value();
                j["subset"] = cert ? Json(*cert) : Json(nullptr);
                std::cout << dump_json(j);
            } else if (cert) {
                std::cout << "true, subset:";
                for (uint64_t e : *cert) std::cout << ' ' << e;
                std::cout << "\n";
            } else {
                std::cout << "false\n";
            }
            return kExitOk;
        }
        if (fs_partial->parsed()) {
            auto stream = partial_sums(GeneratorStream(GeneratorSpec::parse(fs_set)));
            std::vector<uint64_t> values;
            for (uint64_t i = 0; i < fs_count; ++i) {
                auto v = stream.next();
                if (!v) break;
                values.push_back(*v);
            }
            return print_values("fs-partial-sums", fs_set, "count", fs_count, values,
                                fs_format);
        }
        if (fs_block->parsed()) {
            auto spec = GeneratorSpec::parse(fs_set);
            auto witness = block_witness(spec, fs_target);
            if (parse_output_format(fs_format) == OutputFormat::Csv)
                throw ConfigError("fs block-witness supports --format human|json");
            if (parse_output_format(fs_format) == OutputFormat::Json) {
                Json j;
                j["command"] = "fs-block-witness";
                j["set"] = fs_set;
                j["target"] = fs_target;
                j["found"] = witness.has_value();
                j["lo"] = witness ? Json(witness->lo) : Json(nullptr);
                j["hi"] = witness ? Json(witness->hi) : Json(nullptr);
                std::cout << dump_json(j);
            } else if (witness) {
                std::cout << "block (lo=" << witness->lo << ", hi=" << witness->hi
                          << ") sums to " << witness->value << "\n";
            } else {
                std::cout << "no consecutive block sums to " << fs_target << "\n";
            }
            return kExitOk;
        }
        if (ram_verify->parsed()) return cmd_ramsey_verify(ram_r, ram_s, ram_n, ram_format);
        if (ram_bound->parsed()) return cmd_ramsey_bound(ram_r, ram_s, ram_format);
        if (pipe_cmd->parsed()) {
            PipelineConfig cfg;
            cfg.spec = GeneratorSpec::parse(pipe_set);
            cfg.k = pipe_k;
            cfg.limit = SieveLimit(pipe_limit);
            cfg.threshold = pipe_threshold;
            if (pipe_mode == "faithful")
                cfg.mode = PipelineMode::Faithful;
            else if (pipe_mode == "search")
                cfg.mode = PipelineMode::Search;
            else
                throw ConfigError("unknown pipeline mode '" + pipe_mode + "'");
            cfg.ratio = pipe_ratio;
            cfg.window = pipe_window;
            cfg.budget = pipe_budget;
            cfg.k2 = pipe_k2;
            cfg.search_bound = pipe_search_bound;
            cfg.segment_size = pipe_segment;
            cfg.threads = pipe_threads;
            auto report = run_pipeline(cfg);
            auto fmt = parse_output_format(pipe_format);
            if (fmt == OutputFormat::Json)
                std::cout << dump_json(report_to_json(report));
            else if (fmt == OutputFormat::Human)
                std::cout << report_human(report);
            else
                throw ConfigError("pipeline supports --format human|json");
            return report.success ? kExitOk : kExitFailure;
        }
    } catch (const CacheError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCache;
    } catch (const SourceExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitExhausted;
    } catch (const OverflowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
