#include "scientrank/percentile.hpp"

#include "scientrank/csv.hpp"
#include "scientrank/error.hpp"

#include <algorithm>
#include <functional>

namespace scientrank {

void validate(const TopShareParams& params) {
    if (params.share <= 0 || params.share >= 1) {
        throw ConfigError("percentile share must lie strictly between 0 and 1, got " +
                          to_exact_string(params.share));
    }
}

FieldYearThreshold build_cell_threshold(std::string field, int year, std::span<const std::int64_t> citations,
                                        const Rational& share) {
    if (citations.empty()) throw DataError("empty field-year cell " + field + "/" + std::to_string(year));
    std::vector<std::int64_t> sorted(citations.begin(), citations.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    const auto n = static_cast<std::int64_t>(sorted.size());
    const Rational target = share * n;

    // Walk blocks of equal values from the top until the block straddles p*N.
    std::int64_t above = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const auto at = static_cast<std::int64_t>(j - i);
        if (target <= above + at) {
            FieldYearThreshold t;
            t.field = std::move(field);
            t.year = year;
            t.n = n;
            t.c_star = sorted[i];
            t.n_above = above;
            t.n_at = at;
            t.boundary_weight = (target - above) / at;
            return t;
        }
        above += at;
        i = j;
    }
    // Unreachable for 0 < share < 1.
    throw ConfigError("percentile share out of range");
}

ThresholdMap build_thresholds(const Corpus& reference, const Rational& share) {
    validate(TopShareParams{share});
    std::map<FieldYear, std::vector<std::int64_t>> cells;
    for (const auto& r : reference.records) {
        for (const auto& f : r.fields) cells[{f, r.year}].push_back(r.citations);
    }
    ThresholdMap out;
    for (const auto& [key, values] : cells) {
        out.emplace(key, build_cell_threshold(key.field, key.year, values, share));
    }
    return out;
}

Rational cell_weight(const FieldYearThreshold& threshold, std::int64_t citations) {
    if (citations > threshold.c_star) return 1;
    if (citations == threshold.c_star) return threshold.boundary_weight;
    return 0;
}

Rational top_share_weight(const PublicationRecord& record, const ThresholdMap& thresholds,
                          const TopShareParams& params, std::vector<std::string>* diagnostics) {
    Rational sum = 0;
    std::int64_t used = 0;
    for (const auto& f : record.fields) {
        auto it = thresholds.find({f, record.year});
        if (it == thresholds.end()) {
            auto msg = "no threshold for field " + f + " year " + std::to_string(record.year) +
                       " (record " + record.id + ")";
            if (params.missing_threshold == MissingThresholdPolicy::fatal) throw DataError(msg);
            if (diagnostics) diagnostics->push_back(std::move(msg));
            continue;
        }
        sum += cell_weight(it->second, record.citations);
        ++used;
    }
    if (used == 0) return 0;
    return sum / used;
}

Rational top_share_count(std::span<const PublicationRecord> records, const ThresholdMap& thresholds,
                         const TopShareParams& params, std::vector<std::string>* diagnostics) {
    Rational total = 0;
    for (const auto& r : records) total += top_share_weight(r, thresholds, params, diagnostics);
    return total;
}

std::string thresholds_csv(const ThresholdMap& thresholds, WeightFormat format, int decimals) {
    std::string out = "field,year,N,c_star,n_above,n_at,boundary_weight\n";
    for (const auto& [key, t] : thresholds) {
        out += csv::join({t.field, std::to_string(t.year), std::to_string(t.n), std::to_string(t.c_star),
                          std::to_string(t.n_above), std::to_string(t.n_at),
                          format == WeightFormat::rational ? to_exact_string(t.boundary_weight)
                                                           : to_fixed(t.boundary_weight, decimals)});
        out += '\n';
    }
    return out;
}

}  // namespace scientrank
