#include "scientrank/ranking.hpp"

#include "scientrank/error.hpp"

#include <algorithm>
#include <numeric>

namespace scientrank {

std::string_view to_string(Indicator indicator) {
    switch (indicator) {
        case Indicator::top10: return "top10";
        case Indicator::mean_citedness: return "mean_citedness";
        case Indicator::citations: return "citations";
        case Indicator::pubs: return "pubs";
        case Indicator::h_index: return "h_index";
    }
    return "top10";
}

Indicator parse_indicator(std::string_view text) {
    if (text == "top10") return Indicator::top10;
    if (text == "mean_citedness" || text == "mc") return Indicator::mean_citedness;
    if (text == "citations") return Indicator::citations;
    if (text == "pubs") return Indicator::pubs;
    if (text == "h_index" || text == "h") return Indicator::h_index;
    throw ConfigError("unknown indicator '" + std::string(text) + "'");
}

std::optional<Rational> indicator_value(const IndicatorSet& set, Indicator indicator) {
    switch (indicator) {
        case Indicator::top10: return set.top10;
        case Indicator::mean_citedness: return set.mean_citedness;
        case Indicator::citations: return Rational(set.citations);
        case Indicator::pubs: return Rational(set.pubs);
        case Indicator::h_index:
            if (set.h_index) return Rational(*set.h_index);
            return std::nullopt;
    }
    return std::nullopt;
}

bool eligible(std::int64_t doc_count, std::int64_t min_docs) { return doc_count >= min_docs; }

std::vector<std::optional<std::int64_t>> competition_ranks(std::span<const std::optional<Rational>> values) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i]) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return *values[a] > *values[b]; });

    std::vector<std::optional<std::int64_t>> ranks(values.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        bool tied = pos > 0 && *values[order[pos]] == *values[order[pos - 1]];
        ranks[order[pos]] = tied ? ranks[order[pos - 1]] : static_cast<std::int64_t>(pos + 1);
    }
    return ranks;
}

std::vector<std::int64_t> competition_ranks(std::span<const Rational> values) {
    std::vector<std::optional<Rational>> wrapped(values.begin(), values.end());
    auto ranks = competition_ranks(std::span<const std::optional<Rational>>(wrapped));
    std::vector<std::int64_t> out;
    out.reserve(ranks.size());
    for (const auto& r : ranks) out.push_back(*r);
    return out;
}

namespace {

std::vector<std::optional<std::int64_t>> ranks_on(std::span<const IndicatorSet> sets, Indicator indicator) {
    std::vector<std::optional<Rational>> values;
    values.reserve(sets.size());
    for (const auto& s : sets) values.push_back(indicator_value(s, indicator));
    return competition_ranks(std::span<const std::optional<Rational>>(values));
}

// Present values before absent ones, larger first.
int compare_desc(const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (a && b) return *a > *b ? -1 : (*a < *b ? 1 : 0);
    if (a) return -1;
    if (b) return 1;
    return 0;
}

}  // namespace

std::set<std::string> top_n_union(std::span<const IndicatorSet> sets, std::span<const Indicator> keys,
                                  std::int64_t n) {
    if (keys.empty()) throw ConfigError("top_n_union needs at least one key");
    std::set<std::string> out;
    for (auto key : keys) {
        auto ranks = ranks_on(sets, key);
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (ranks[i] && *ranks[i] <= n) out.insert(sets[i].inst_id);
        }
    }
    return out;
}

RankingTable build_ranking(std::span<const IndicatorSet> sets, const RankingOptions& options) {
    if (options.top_n && *options.top_n < 1) throw ConfigError("top_n must be >= 1");

    RankingTable table;
    table.key = options.key;
    table.min_docs = options.min_docs;
    table.top_n = options.top_n;
    if (!sets.empty()) table.window = sets.front().window;

    std::vector<IndicatorSet> pool;
    for (const auto& s : sets) {
        if (eligible(s.eligibility_docs, options.min_docs)) pool.push_back(s);
    }
    for (const auto& s : pool) {
        if (!s.mean_citedness) {
            table.diagnostics.push_back("undefined mean citedness for " + s.inst_id + " (no publications)");
        }
        if (options.key == Indicator::h_index && !s.h_index) {
            table.diagnostics.push_back("no h_index for " + s.inst_id);
        }
    }

    const auto key_ranks = ranks_on(pool, options.key);
    const auto top10_ranks = ranks_on(pool, Indicator::top10);
    const auto mc_ranks = ranks_on(pool, Indicator::mean_citedness);

    std::vector<std::size_t> members;
    if (options.top_n) {
        std::vector<Indicator> keys{options.key};
        keys.insert(keys.end(), options.union_with.begin(), options.union_with.end());
        auto keep = top_n_union(pool, keys, *options.top_n);
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (keep.count(pool[i].inst_id)) members.push_back(i);
        }
    } else {
        members.resize(pool.size());
        std::iota(members.begin(), members.end(), std::size_t{0});
    }

    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = pool[a];
        const auto& y = pool[b];
        if (int c = compare_desc(indicator_value(x, options.key), indicator_value(y, options.key))) return c < 0;
        if (x.tie_order != y.tie_order) return x.tie_order < y.tie_order;
        if (int c = compare_desc(x.mean_citedness, y.mean_citedness)) return c < 0;
        if (x.name != y.name) return x.name < y.name;
        return x.inst_id < y.inst_id;
    });

    auto shown = [&](const std::optional<std::int64_t>& rank) -> std::optional<std::int64_t> {
        if (rank && options.top_n && *rank > *options.top_n) return std::nullopt;
        return rank;
    };
    for (auto i : members) {
        RankingRow row;
        row.values = pool[i];
        row.top10_rank = shown(top10_ranks[i]);
        row.mc_rank = shown(mc_ranks[i]);
        row.key_rank = key_ranks[i];
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace scientrank
