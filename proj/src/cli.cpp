#include "scientrank/cli.hpp"

#include "scientrank/compare.hpp"
#include "scientrank/corpusgen.hpp"
#include "scientrank/error.hpp"
#include "scientrank/indicators.hpp"
#include "scientrank/ingest.hpp"
#include "scientrank/percentile.hpp"
#include "scientrank/ranking.hpp"
#include "scientrank/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace scientrank::cli {

namespace {

namespace fs = std::filesystem;

std::ifstream open_input(const std::string& path, const char* what) {
    if (!fs::is_regular_file(path)) throw ConfigError(std::string(what) + " file not found: " + path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(std::string("cannot open ") + what + " file: " + path);
    return in;
}

ParseResult read_records(const std::string& path, const char* what, std::ostream& err) {
    auto in = open_input(path, what);
    auto parsed = parse_records(in, record_format_for_path(path));
    for (const auto& d : parsed.diagnostics) err << path << ": " << to_string(d) << '\n';
    return parsed;
}

std::vector<InstitutionProfile> read_aliases(const std::string& path) {
    auto in = open_input(path, "alias");
    return load_alias_map(in);
}

void print_unresolved(const ResolvedCorpus& resolved, std::ostream& out) {
    std::size_t occurrences = 0;
    std::vector<std::pair<std::string, std::size_t>> items(resolved.unresolved.begin(), resolved.unresolved.end());
    for (const auto& [_, n] : items) occurrences += n;
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    out << "unresolved affiliations: " << items.size() << " distinct, " << occurrences << " occurrences\n";
    for (const auto& [raw, n] : items) out << "  " << n << '\t' << raw << '\n';
}

struct RankConfig {
    std::string records;
    std::string aliases;
    std::string reference;
    std::string indicators;
    std::string window = "2011:2015";
    std::int64_t min_docs = 20;
    std::string p = "0.10";
    std::string doc_types = "article,review";
    std::string key = "top10";
    std::int64_t top = 10;
    std::vector<std::string> union_with;
    std::string format = "text";
    bool decimal_comma = false;
    int decimals = 2;
    bool h_all_time = false;
    bool eligibility_all_docs = false;
    std::string missing_threshold = "fatal";
};

int cmd_validate(const std::string& records_path, const std::string& aliases_path, std::ostream& out,
                 std::ostream& err) {
    // Check both paths up front so a missing alias file is a usage error.
    open_input(records_path, "records");
    open_input(aliases_path, "alias");
    auto parsed = read_records(records_path, "records", out);
    out << parsed.diagnostics.size() << " diagnostics\n";
    out << parsed.records.size() << " records\n";
    std::vector<InstitutionProfile> profiles;
    try {
        profiles = read_aliases(aliases_path);
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    out << profiles.size() << " institutions\n";
    auto resolved = resolve_affiliations(make_corpus(parsed.records, records_path), profiles);
    print_unresolved(resolved, out);
    return kOk;
}

int cmd_thresholds(const std::string& reference_path, const std::string& p, const std::string& doc_types,
                   bool decimal_weights, int decimals, std::ostream& out, std::ostream& err) {
    auto parsed = read_records(reference_path, "reference", err);
    TopShareParams params{parse_rational(p)};
    validate(params);
    auto reference = filter_doc_types(make_corpus(parsed.records, reference_path), parse_doc_types(doc_types));
    if (reference.records.empty()) {
        err << "error: reference corpus is empty\n";
        return kDataError;
    }
    auto thresholds = build_thresholds(reference, params.share);
    out << thresholds_csv(thresholds, decimal_weights ? WeightFormat::decimal : WeightFormat::rational, decimals);
    return kOk;
}

int cmd_rank(const RankConfig& cfg, std::ostream& out, std::ostream& err, Terminal term) {
    const bool record_mode = !cfg.records.empty() || !cfg.aliases.empty() || !cfg.reference.empty();
    const bool indicator_mode = !cfg.indicators.empty();
    if (record_mode && indicator_mode) {
        throw ConfigError("give either --records/--aliases/--reference or --indicators, not both");
    }
    if (!record_mode && !indicator_mode) {
        throw ConfigError("no input: give --records, --aliases and --reference, or --indicators");
    }
    if (record_mode && (cfg.records.empty() || cfg.aliases.empty() || cfg.reference.empty())) {
        throw ConfigError("record mode needs all of --records, --aliases and --reference");
    }
    if (cfg.top < 0) throw ConfigError("--top must be >= 0");
    if (cfg.decimals < 0) throw ConfigError("--decimals must be >= 0");

    const Window window = Window::parse(cfg.window);
    RankingOptions ranking;
    ranking.key = parse_indicator(cfg.key);
    ranking.min_docs = cfg.min_docs;
    ranking.top_n = cfg.top > 0 ? std::optional<std::int64_t>(cfg.top) : std::nullopt;
    for (const auto& u : cfg.union_with) ranking.union_with.push_back(parse_indicator(u));

    DisplayPolicy policy;
    policy.decimals = cfg.decimals;
    policy.decimal_separator = cfg.decimal_comma ? ',' : '.';
    const auto format = parse_output_format(cfg.format);
    policy.styled = format == OutputFormat::text && term.is_tty && std::getenv("SCIENTRANK_NO_COLOR") == nullptr;

    std::vector<IndicatorSet> sets;
    if (indicator_mode) {
        auto in = open_input(cfg.indicators, "indicator");
        for (const auto& row : load_indicator_rows(in)) sets.push_back(indicator_set_from_row(row, window));
    } else {
        IndicatorOptions options;
        options.window = window;
        options.doc_types = parse_doc_types(cfg.doc_types);
        options.top_share.share = parse_rational(cfg.p);
        validate(options.top_share);
        if (cfg.missing_threshold == "skip") {
            options.top_share.missing_threshold = MissingThresholdPolicy::skip_with_diagnostic;
        } else if (cfg.missing_threshold != "fatal") {
            throw ConfigError("--missing-threshold must be fatal or skip");
        }
        options.h_all_time = cfg.h_all_time;
        options.eligibility_all_docs = cfg.eligibility_all_docs;

        open_input(cfg.records, "records");
        open_input(cfg.aliases, "alias");
        open_input(cfg.reference, "reference");
        auto records = read_records(cfg.records, "records", err);
        auto profiles = read_aliases(cfg.aliases);
        auto reference = read_records(cfg.reference, "reference", err);

        auto resolved = resolve_affiliations(make_corpus(std::move(records.records), cfg.records), profiles);
        std::size_t unresolved = 0;
        for (const auto& [_, n] : resolved.unresolved) unresolved += n;
        if (unresolved > 0) {
            err << "note: " << unresolved << " affiliation strings matched no institution"
                << " (run validate for the list)\n";
        }
        auto ref = filter_doc_types(make_corpus(std::move(reference.records), cfg.reference), options.doc_types);
        auto thresholds = build_thresholds(ref, options.top_share.share);
        std::vector<std::string> diagnostics;
        sets = indicator_sets(resolved, thresholds, options, &diagnostics);
        for (const auto& d : diagnostics) err << "warning: " << d << '\n';
    }

    auto table = build_ranking(sets, ranking);
    table.window = window;
    for (const auto& d : table.diagnostics) err << "warning: " << d << '\n';
    out << render_table(table, format, policy);
    return kOk;
}

int cmd_compare(const std::string& a_path, const std::string& b_path, std::int64_t n, const std::string& format,
                std::ostream& out) {
    if (n < 1) throw ConfigError("--top must be >= 1");
    if (format != "text" && format != "json") throw ConfigError("compare supports --format text or json");
    auto a_in = open_input(a_path, "table");
    auto b_in = open_input(b_path, "table");
    auto a = ranking_from_csv(parse_table_csv(a_in));
    auto b = ranking_from_csv(parse_table_csv(b_in));
    auto report = compare_rankings(a, b, n);
    out << (format == "json" ? to_json(report) : to_text(report));
    return kOk;
}

int cmd_gen(const std::string& spec_path, std::optional<std::uint64_t> seed_flag, const std::string& out_dir,
            std::ostream& out) {
    auto in = open_input(spec_path, "spec");
    auto spec = parse_generator_spec(in);
    const std::uint64_t seed = seed_flag ? *seed_flag : spec.seed.value_or(0);
    auto generated = generate(spec.fields, spec.profiles, seed);

    fs::create_directories(out_dir);
    const auto dir = fs::path(out_dir);
    {
        std::ofstream f(dir / "records.jsonl", std::ios::binary);
        write_records_jsonl(generated.corpus, f);
        if (!f) throw DataError("cannot write " + (dir / "records.jsonl").string());
    }
    {
        std::ofstream f(dir / "aliases.json", std::ios::binary);
        write_alias_map(generated.aliases, f);
        if (!f) throw DataError("cannot write " + (dir / "aliases.json").string());
    }
    {
        nlohmann::ordered_json manifest;
        manifest["generator"] = "scientrank corpusgen";
        manifest["prng"] = "splitmix64";
        manifest["seed"] = seed;
        manifest["records"] = generated.corpus.records.size();
        manifest["institutions"] = generated.aliases.size();
        std::ofstream f(dir / "manifest.json", std::ios::binary);
        f << manifest.dump(2) << '\n';
        if (!f) throw DataError("cannot write " + (dir / "manifest.json").string());
    }
    out << "seed " << seed << '\n';
    out << "records " << generated.corpus.records.size() << '\n';
    out << "institutions " << generated.aliases.size() << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Terminal term) {
    CLI::App app{"Bibliometric indicator and institution ranking toolkit", "scientrank"};
    app.require_subcommand(1);

    std::string records, aliases, reference;

    auto* validate_cmd = app.add_subcommand("validate", "Check record and alias files, list unresolved affiliations");
    validate_cmd->add_option("--records", records, "Records file (.jsonl or .csv)")->required();
    validate_cmd->add_option("--aliases", aliases, "Alias map JSON")->required();

    std::string p = "0.10";
    std::string doc_types = "article,review";
    bool decimal_weights = false;
    int weight_decimals = 6;
    auto* thresholds_cmd = app.add_subcommand("thresholds", "Emit field-year top-share thresholds as CSV");
    thresholds_cmd->add_option("--reference", reference, "Reference corpus")->required();
    thresholds_cmd->add_option("--p", p, "Top share, e.g. 0.10 or 1/10");
    thresholds_cmd->add_option("--doc-types", doc_types, "Document types in the reference");
    thresholds_cmd->add_flag("--decimal-weights", decimal_weights, "Print boundary weights as decimals");
    thresholds_cmd->add_option("--weight-decimals", weight_decimals, "Digits for --decimal-weights");

    RankConfig cfg;
    auto* rank_cmd = app.add_subcommand("rank", "Build a ranking table");
    rank_cmd->add_option("--records", cfg.records, "Records file");
    rank_cmd->add_option("--aliases", cfg.aliases, "Alias map JSON");
    rank_cmd->add_option("--reference", cfg.reference, "Reference corpus for thresholds");
    rank_cmd->add_option("--indicators", cfg.indicators, "Precomputed indicator CSV");
    rank_cmd->add_option("--window", cfg.window, "Publication window START:END");
    rank_cmd->add_option("--min-docs", cfg.min_docs, "Eligibility threshold");
    rank_cmd->add_option("--p", cfg.p, "Top share");
    rank_cmd->add_option("--doc-types", cfg.doc_types, "Counted document types");
    rank_cmd->add_option("--key", cfg.key, "Ordering indicator");
    rank_cmd->add_option("--top", cfg.top, "Keep rows ranked <= N (0 keeps all)");
    rank_cmd->add_option("--union", cfg.union_with, "Also keep the top N on this indicator")->delimiter(',');
    rank_cmd->add_option("--format", cfg.format, "csv, json, markdown or text");
    rank_cmd->add_flag("--decimal-comma", cfg.decimal_comma, "Use ',' as decimal separator in text output");
    rank_cmd->add_option("--decimals", cfg.decimals, "Display decimals");
    rank_cmd->add_flag("--h-all-time", cfg.h_all_time, "Compute H over all years");
    rank_cmd->add_flag("--eligibility-all-docs", cfg.eligibility_all_docs, "Count all document types for eligibility");
    rank_cmd->add_option("--missing-threshold", cfg.missing_threshold, "fatal or skip");

    std::string table_a, table_b, compare_format = "text";
    std::int64_t compare_top = 10;
    auto* compare_cmd = app.add_subcommand("compare", "Compare two rendered CSV ranking tables");
    compare_cmd->add_option("table_a", table_a, "Baseline table")->required();
    compare_cmd->add_option("table_b", table_b, "Proposed table")->required();
    compare_cmd->add_option("--top", compare_top, "Top-n for entered/exited");
    compare_cmd->add_option("--format", compare_format, "text or json");

    std::string spec_path, out_dir;
    std::optional<std::uint64_t> seed;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic corpus");
    gen_cmd->add_option("--spec", spec_path, "Generator spec JSON")->required();
    gen_cmd->add_option("--seed", seed, "64-bit seed (overrides the spec)");
    gen_cmd->add_option("--out", out_dir, "Output directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (*validate_cmd) return cmd_validate(records, aliases, out, err);
        if (*thresholds_cmd) {
            return cmd_thresholds(reference, p, doc_types, decimal_weights, weight_decimals, out, err);
        }
        if (*rank_cmd) return cmd_rank(cfg, out, err, term);
        if (*compare_cmd) return cmd_compare(table_a, table_b, compare_top, compare_format, out);
        if (*gen_cmd) return cmd_gen(spec_path, seed, out_dir, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsageError;
}

}  // namespace scientrank::cli
