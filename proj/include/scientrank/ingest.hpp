#pragma once

#include "scientrank/corpus.hpp"
#include "scientrank/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace scientrank {

enum class RecordFormat { jsonl, csv };

/// csv for a ".csv" suffix, jsonl otherwise.
RecordFormat record_format_for_path(const std::string& path);

struct Diagnostic {
    std::size_t line = 0;
    std::string field;
    std::string message;
};

std::string to_string(const Diagnostic& d);

struct ParseResult {
    std::vector<PublicationRecord> records;
    std::vector<Diagnostic> diagnostics;
};

/// Per-line problems (bad JSON, type errors, invariant violations, repeated
/// ids) become diagnostics and the line is dropped. A stream that cannot be
/// read at all raises DataError.
ParseResult parse_records(std::istream& in, RecordFormat format);

void write_records_jsonl(const Corpus& corpus, std::ostream& out);

struct InstitutionProfile {
    std::string inst_id;
    std::string name;
    std::vector<std::string> aliases;
};

struct NormalizationPolicy {
    bool case_fold = true;
    bool collapse_whitespace = true;
    bool strip_punctuation = true;
};

/// Case-folds (ASCII, Latin-1 and Cyrillic letters), collapses runs of
/// whitespace to one space and trims punctuation/whitespace at both ends.
std::string normalize_affiliation(std::string_view raw, const NormalizationPolicy& policy = {});

/// Reads the alias-map JSON. The display name always matches as an alias.
/// Throws DataError on alias collisions, empty alias sets, repeated ids.
std::vector<InstitutionProfile> load_alias_map(std::istream& in,
                                               const NormalizationPolicy& policy = {});

void write_alias_map(const std::vector<InstitutionProfile>& profiles, std::ostream& out);

struct ResolvedCorpus {
    Corpus corpus;
    /// inst_id -> display name for every known profile.
    std::map<std::string, std::string> institutions;
    /// record id -> matched inst_ids (possibly empty).
    std::map<std::string, std::set<std::string>> assignment;
    /// raw affiliation string -> occurrences that matched no profile.
    std::map<std::string, std::size_t> unresolved;
    std::size_t matched_strings = 0;

    bool operator==(const ResolvedCorpus& other) const {
        return corpus.records == other.corpus.records && institutions == other.institutions &&
               assignment == other.assignment && unresolved == other.unresolved &&
               matched_strings == other.matched_strings;
    }
};

ResolvedCorpus resolve_affiliations(const Corpus& corpus,
                                    const std::vector<InstitutionProfile>& profiles,
                                    const NormalizationPolicy& policy = {});

/// One line of precomputed indicators, used to rebuild published tables.
struct IndicatorRow {
    std::string inst_id;
    std::string name;
    Rational top10;
    std::int64_t citations = 0;
    std::int64_t pubs = 0;
    std::optional<Rational> mean_citedness_override;
    /// Orders rows that tie on the key indicator, before any other tie-break.
    std::int64_t tie_order = 0;
};

/// Header must contain inst_id,top10,citations,pubs. Optional columns:
/// name, mean_citedness, tie_order. Malformed cells raise DataError naming
/// the row.
std::vector<IndicatorRow> load_indicator_rows(std::istream& in);

}  // namespace scientrank
