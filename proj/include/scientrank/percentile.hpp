#pragma once

#include "scientrank/corpus.hpp"
#include "scientrank/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace scientrank {

/// One field-year cell of the reference corpus.
struct FieldYear {
    std::string field;
    int year = 0;

    auto operator<=>(const FieldYear&) const = default;
};

/// Citation cutoff for top-share membership in one field-year cell.
///
/// c_star is the unique citation value with
///     n_above < p*N <= n_above + n_at
/// and papers sitting exactly on it share the remainder through
/// boundary_weight, so that n_above + boundary_weight * n_at == p*N.
struct FieldYearThreshold {
    std::string field;
    int year = 0;
    std::int64_t n = 0;
    std::int64_t c_star = 0;
    std::int64_t n_above = 0;
    std::int64_t n_at = 0;
    Rational boundary_weight;

    bool operator==(const FieldYearThreshold&) const = default;
};

using ThresholdMap = std::map<FieldYear, FieldYearThreshold>;

enum class MissingThresholdPolicy { fatal, skip_with_diagnostic };
enum class MultiFieldPolicy { average_over_fields };

struct TopShareParams {
    Rational share{1, 10};
    MultiFieldPolicy multi_field = MultiFieldPolicy::average_over_fields;
    MissingThresholdPolicy missing_threshold = MissingThresholdPolicy::fatal;
};

/// ConfigError unless 0 < share < 1.
void validate(const TopShareParams& params);

/// Threshold for a single cell. `citations` must be non-empty.
FieldYearThreshold build_cell_threshold(std::string field, int year,
                                        std::span<const std::int64_t> citations,
                                        const Rational& share);

/// A record with k fields contributes one observation to each of its k cells.
ThresholdMap build_thresholds(const Corpus& reference, const Rational& share);

/// Membership weight of a paper with `citations` in a cell: 1 above the
/// cutoff, boundary_weight on it, 0 below.
Rational cell_weight(const FieldYearThreshold& threshold, std::int64_t citations);

/// Mean of per-field weights. With skip_with_diagnostic, fields lacking a
/// threshold are dropped from the mean (all missing: weight 0) and a message
/// is appended to `diagnostics`; with fatal a DataError is raised.
Rational top_share_weight(const PublicationRecord& record, const ThresholdMap& thresholds,
                          const TopShareParams& params, std::vector<std::string>* diagnostics = nullptr);

Rational top_share_count(std::span<const PublicationRecord> records, const ThresholdMap& thresholds,
                         const TopShareParams& params, std::vector<std::string>* diagnostics = nullptr);

enum class WeightFormat { rational, decimal };

/// Audit CSV: field,year,N,c_star,n_above,n_at,boundary_weight
std::string thresholds_csv(const ThresholdMap& thresholds, WeightFormat format = WeightFormat::rational,
                           int decimals = 6);

}  // namespace scientrank
