#pragma once

#include "scientrank/indicators.hpp"
#include "scientrank/rational.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scientrank {

enum class Indicator { top10, mean_citedness, citations, pubs, h_index };

std::string_view to_string(Indicator indicator);
/// Accepts the canonical names plus "mc" and "h". ConfigError otherwise.
Indicator parse_indicator(std::string_view text);

std::optional<Rational> indicator_value(const IndicatorSet& set, Indicator indicator);

bool eligible(std::int64_t doc_count, std::int64_t min_docs);

/// Standard competition ("1224") ranks, larger values ranking first.
/// Input order is arbitrary; rank[i] = 1 + #{j : values[j] > values[i]}.
std::vector<std::int64_t> competition_ranks(std::span<const Rational> values);

/// Absent values get no rank and do not affect the others.
std::vector<std::optional<std::int64_t>> competition_ranks(std::span<const std::optional<Rational>> values);

struct RankingRow {
    IndicatorSet values;
    /// Display ranks: omitted when beyond top_n.
    std::optional<std::int64_t> top10_rank;
    std::optional<std::int64_t> mc_rank;
    /// Unmasked rank on the key indicator among all eligible institutions.
    std::optional<std::int64_t> key_rank;
};

struct RankingOptions {
    Indicator key = Indicator::top10;
    std::int64_t min_docs = 20;
    std::optional<std::int64_t> top_n = 10;
    /// Extra indicators whose top-n also earn a row.
    std::vector<Indicator> union_with;
};

struct RankingTable {
    Window window{2011, 2015};
    Indicator key = Indicator::top10;
    std::int64_t min_docs = 20;
    std::optional<std::int64_t> top_n;
    std::vector<RankingRow> rows;
    std::vector<std::string> diagnostics;
};

/// Drops ineligible institutions, ranks the rest on every displayed
/// indicator, keeps rows ranked <= top_n on the key or any union indicator,
/// and orders them by key descending. Ties on the key are ordered by
/// tie_order, then mean citedness descending, then name, then inst_id.
RankingTable build_ranking(std::span<const IndicatorSet> sets, const RankingOptions& options);

/// Union over `keys` of the institutions ranked <= n (ties may exceed n).
std::set<std::string> top_n_union(std::span<const IndicatorSet> sets, std::span<const Indicator> keys,
                                  std::int64_t n);

}  // namespace scientrank
