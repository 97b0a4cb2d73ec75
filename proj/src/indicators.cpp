#include "scientrank/indicators.hpp"

#include "scientrank/error.hpp"

#include <algorithm>
#include <functional>

namespace scientrank {

namespace {

void require_known(const ResolvedCorpus& resolved, const std::string& inst_id) {
    if (!resolved.institutions.count(inst_id)) throw DataError("unknown institution '" + inst_id + "'");
}

template <typename Pred>
std::vector<PublicationRecord> select(const ResolvedCorpus& resolved, const std::string& inst_id, Pred keep) {
    require_known(resolved, inst_id);
    std::vector<PublicationRecord> out;
    for (const auto& r : resolved.corpus.records) {
        auto it = resolved.assignment.find(r.id);
        if (it == resolved.assignment.end() || !it->second.count(inst_id)) continue;
        if (keep(r)) out.push_back(r);
    }
    return out;
}

std::vector<std::int64_t> citations_of(std::span<const PublicationRecord> records) {
    std::vector<std::int64_t> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.citations);
    return out;
}

}  // namespace

std::vector<PublicationRecord> institution_records(const ResolvedCorpus& resolved, const std::string& inst_id,
                                                   const Window& window, const DocTypeSet& allowed) {
    return select(resolved, inst_id, [&](const PublicationRecord& r) {
        return window.contains(r.year) && allowed.count(r.doc_type);
    });
}

std::int64_t publication_count(const ResolvedCorpus& resolved, const std::string& inst_id,
                               const Window& window, const DocTypeSet& allowed) {
    return static_cast<std::int64_t>(institution_records(resolved, inst_id, window, allowed).size());
}

std::int64_t citation_total(const ResolvedCorpus& resolved, const std::string& inst_id,
                            const Window& window, const DocTypeSet& allowed) {
    std::int64_t total = 0;
    for (const auto& r : institution_records(resolved, inst_id, window, allowed)) total += r.citations;
    return total;
}

Rational mean_citedness(std::int64_t citations, std::int64_t pubs) {
    if (pubs == 0) throw DataError("undefined mean: publication count is zero");
    return Rational(citations, pubs);
}

std::int64_t h_index(std::span<const std::int64_t> citations) {
    std::vector<std::int64_t> sorted(citations.begin(), citations.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    std::int64_t h = 0;
    while (h < static_cast<std::int64_t>(sorted.size()) && sorted[static_cast<std::size_t>(h)] >= h + 1) ++h;
    return h;
}

IndicatorSet indicator_set(const ResolvedCorpus& resolved, const std::string& inst_id,
                           const ThresholdMap& thresholds, const IndicatorOptions& options,
                           std::vector<std::string>* diagnostics) {
    auto records = institution_records(resolved, inst_id, options.window, options.doc_types);

    IndicatorSet s;
    s.inst_id = inst_id;
    s.name = resolved.institutions.at(inst_id);
    s.window = options.window;
    s.pubs = static_cast<std::int64_t>(records.size());
    for (const auto& r : records) s.citations += r.citations;
    if (s.pubs > 0) s.mean_citedness = mean_citedness(s.citations, s.pubs);
    s.top10 = top_share_count(records, thresholds, options.top_share, diagnostics);

    if (options.h_all_time) {
        auto all = select(resolved, inst_id, [&](const PublicationRecord& r) {
            return options.doc_types.count(r.doc_type) > 0;
        });
        s.h_index = h_index(citations_of(all));
    } else {
        s.h_index = h_index(citations_of(records));
    }

    s.eligibility_docs = options.eligibility_all_docs
                             ? publication_count(resolved, inst_id, options.window, all_doc_types())
                             : s.pubs;
    return s;
}

std::vector<IndicatorSet> indicator_sets(const ResolvedCorpus& resolved, const ThresholdMap& thresholds,
                                         const IndicatorOptions& options, std::vector<std::string>* diagnostics) {
    std::vector<IndicatorSet> out;
    out.reserve(resolved.institutions.size());
    for (const auto& [inst_id, name] : resolved.institutions) {
        out.push_back(indicator_set(resolved, inst_id, thresholds, options, diagnostics));
    }
    return out;
}

IndicatorSet indicator_set_from_row(const IndicatorRow& row, const Window& window) {
    IndicatorSet s;
    s.inst_id = row.inst_id;
    s.name = row.name.empty() ? row.inst_id : row.name;
    s.window = window;
    s.pubs = row.pubs;
    s.citations = row.citations;
    if (row.mean_citedness_override) {
        s.mean_citedness = row.mean_citedness_override;
    } else if (row.pubs > 0) {
        s.mean_citedness = mean_citedness(row.citations, row.pubs);
    }
    s.top10 = row.top10;
    s.eligibility_docs = row.pubs;
    s.tie_order = row.tie_order;
    return s;
}

}  // namespace scientrank
