#pragma once

#include "scientrank/compare.hpp"
#include "scientrank/ranking.hpp"
#include "scientrank/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scientrank {

struct DisplayPolicy {
    int decimals = 2;
    char decimal_separator = '.';
    bool trim_trailing_zeros = false;
    /// Bold header in text output (terminal only).
    bool styled = false;
};

/// Half-up rounding to policy.decimals digits, e.g. 4.4783 -> "4.48".
std::string round_display(const Rational& value, const DisplayPolicy& policy = {});

enum class OutputFormat { csv, json, markdown, text };

OutputFormat parse_output_format(std::string_view text);

/// Column order: name, top10 value/rank, mean citedness value/rank,
/// citations, pubs. An omitted rank renders as the bare value. CSV and JSON
/// always use '.' and add inst_id, h_index and the unmasked key_rank after
/// the display columns.
std::string render_table(const RankingTable& table, OutputFormat format, const DisplayPolicy& policy = {});

/// One row read back from a rendered CSV table.
struct TableCsvRow {
    std::string inst_id;
    std::string name;
    Rational top10;
    std::optional<std::int64_t> top10_rank;
    std::optional<Rational> mean_citedness;
    std::string mc_display;
    std::optional<std::int64_t> mc_rank;
    std::int64_t citations = 0;
    std::int64_t pubs = 0;
    std::optional<std::int64_t> h_index;
    std::optional<std::int64_t> key_rank;
};

/// Reads render_table(..., csv) output. inst_id falls back to name when the
/// column is absent. DataError on malformed input.
std::vector<TableCsvRow> parse_table_csv(std::istream& in);

/// Ranks from key_rank, or top10_rank when key_rank is absent.
Ranking ranking_from_csv(const std::vector<TableCsvRow>& rows);

}  // namespace scientrank
