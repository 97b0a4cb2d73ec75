#pragma once

#include "scientrank/error.hpp"
#include "scientrank/ranking.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace scientrank {

struct RankedItem {
    std::string inst_id;
    std::string name;
    std::int64_t rank = 0;
};

/// Institutions with their rank (1 = best) under one scheme. Order irrelevant.
using Ranking = std::vector<RankedItem>;

/// Raised when two rankings do not cover the same institutions.
class MismatchedSets : public DataError {
public:
    MismatchedSets(std::vector<std::string> only_a, std::vector<std::string> only_b);

    const std::vector<std::string>& only_a() const { return only_a_; }
    const std::vector<std::string>& only_b() const { return only_b_; }

private:
    std::vector<std::string> only_a_;
    std::vector<std::string> only_b_;
};

/// Kendall tau-b: (C - D) / sqrt((n0 - n1)(n0 - n2)), with n1, n2 the pairs
/// tied in A and in B. DataError when either ranking is constant.
double kendall_tau_b(const Ranking& a, const Ranking& b);

/// Pearson correlation of mid-rank vectors.
double spearman_rho(const Ranking& a, const Ranking& b);

struct RankMove {
    std::string inst_id;
    std::string name;
    std::int64_t rank_a = 0;
    std::int64_t rank_b = 0;
    /// rank_b - rank_a; positive means the institution fell.
    std::int64_t delta = 0;
};

struct RankShiftReport {
    std::set<std::string> entered;  // in B's top-n, not in A's
    std::set<std::string> exited;   // in A's top-n, not in B's
    std::vector<RankMove> moved;    // every common institution, |delta| descending
};

RankShiftReport rank_shift(const Ranking& a, const Ranking& b, std::int64_t n);

/// Key ranks of a built table; rows without a key rank are skipped.
Ranking ranking_from_table(const RankingTable& table);

struct ComparisonReport {
    std::int64_t n = 10;
    std::size_t common = 0;
    /// Computed over the common institutions; absent when undefined.
    std::optional<double> kendall_tau_b;
    std::optional<double> spearman_rho;
    std::vector<std::string> only_a;
    std::vector<std::string> only_b;
    RankShiftReport shift;
    std::map<std::string, std::string> names;
};

/// DataError when the rankings share no institution at all.
ComparisonReport compare_rankings(const Ranking& a, const Ranking& b, std::int64_t n);

std::string to_json(const ComparisonReport& report);
std::string to_text(const ComparisonReport& report);

}  // namespace scientrank
