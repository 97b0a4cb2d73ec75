#pragma once

#include "scientrank/corpus.hpp"
#include "scientrank/ingest.hpp"
#include "scientrank/percentile.hpp"
#include "scientrank/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scientrank {

/// Per-institution indicators for one publication window.
struct IndicatorSet {
    std::string inst_id;
    std::string name;
    Window window{2011, 2015};
    std::int64_t pubs = 0;
    std::int64_t citations = 0;
    /// Absent when pubs == 0.
    std::optional<Rational> mean_citedness;
    Rational top10 = 0;
    /// Absent when built from precomputed rows, which carry no H.
    std::optional<std::int64_t> h_index;
    /// Document count tested against the eligibility threshold.
    std::int64_t eligibility_docs = 0;
    std::int64_t tie_order = 0;
};

struct IndicatorOptions {
    Window window{2011, 2015};
    DocTypeSet doc_types = default_doc_types();
    TopShareParams top_share;
    /// Compute H over every year of the institution's output instead of the window.
    bool h_all_time = false;
    /// Test eligibility on all windowed documents, not only `doc_types`.
    bool eligibility_all_docs = false;
};

/// Records assigned to `inst_id`, inside `window`, of an allowed type, in
/// corpus order. DataError for an unknown institution.
std::vector<PublicationRecord> institution_records(const ResolvedCorpus& resolved, const std::string& inst_id,
                                                   const Window& window, const DocTypeSet& allowed);

std::int64_t publication_count(const ResolvedCorpus& resolved, const std::string& inst_id,
                               const Window& window, const DocTypeSet& allowed);

std::int64_t citation_total(const ResolvedCorpus& resolved, const std::string& inst_id,
                            const Window& window, const DocTypeSet& allowed);

/// Exact C/P. DataError("undefined mean ...") when pubs == 0.
Rational mean_citedness(std::int64_t citations, std::int64_t pubs);

/// Largest h with at least h counts >= h.
std::int64_t h_index(std::span<const std::int64_t> citations);

IndicatorSet indicator_set(const ResolvedCorpus& resolved, const std::string& inst_id,
                           const ThresholdMap& thresholds, const IndicatorOptions& options,
                           std::vector<std::string>* diagnostics = nullptr);

/// Every known institution, in inst_id order.
std::vector<IndicatorSet> indicator_sets(const ResolvedCorpus& resolved, const ThresholdMap& thresholds,
                                         const IndicatorOptions& options,
                                         std::vector<std::string>* diagnostics = nullptr);

IndicatorSet indicator_set_from_row(const IndicatorRow& row, const Window& window);

}  // namespace scientrank
