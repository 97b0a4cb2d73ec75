#include "scientrank/compare.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace scientrank {

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) out += (out.empty() ? "" : ", ") + id;
    return out;
}

std::map<std::string, const RankedItem*> index_of(const Ranking& r) {
    std::map<std::string, const RankedItem*> out;
    for (const auto& item : r) out[item.inst_id] = &item;
    return out;
}

// Rank vectors of a and b aligned on inst_id; throws when the id sets differ.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> aligned(const Ranking& a, const Ranking& b) {
    auto ia = index_of(a);
    auto ib = index_of(b);
    std::vector<std::string> only_a, only_b;
    for (const auto& [id, _] : ia) {
        if (!ib.count(id)) only_a.push_back(id);
    }
    for (const auto& [id, _] : ib) {
        if (!ia.count(id)) only_b.push_back(id);
    }
    if (!only_a.empty() || !only_b.empty()) throw MismatchedSets(only_a, only_b);
    if (ia.empty()) throw DataError("cannot correlate empty rankings");

    std::vector<std::int64_t> ra, rb;
    for (const auto& [id, item] : ia) {
        ra.push_back(item->rank);
        rb.push_back(ib.at(id)->rank);
    }
    return {ra, rb};
}

std::vector<double> mid_ranks(const std::vector<std::int64_t>& ranks) {
    std::vector<std::size_t> order(ranks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ranks[x] < ranks[y]; });
    std::vector<double> out(ranks.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && ranks[order[j]] == ranks[order[i]]) ++j;
        double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) out[order[k]] = mid;
        i = j;
    }
    return out;
}

int sign(std::int64_t v) { return (v > 0) - (v < 0); }

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000") s = "0.000000";
    return s;
}

}  // namespace

MismatchedSets::MismatchedSets(std::vector<std::string> only_a, std::vector<std::string> only_b)
    : DataError("rankings cover different institutions; only in A: [" + join_ids(only_a) + "], only in B: [" +
                join_ids(only_b) + "]"),
      only_a_(std::move(only_a)),
      only_b_(std::move(only_b)) {}

double kendall_tau_b(const Ranking& a, const Ranking& b) {
    auto [ra, rb] = aligned(a, b);
    const std::size_t n = ra.size();
    std::int64_t concordant = 0, discordant = 0, tied_a = 0, tied_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            int sa = sign(ra[i] - ra[j]);
            int sb = sign(rb[i] - rb[j]);
            if (sa == 0) ++tied_a;
            if (sb == 0) ++tied_b;
            if (sa != 0 && sb != 0) (sa == sb ? concordant : discordant)++;
        }
    }
    const auto pairs = static_cast<std::int64_t>(n * (n - 1) / 2);
    const double denom = std::sqrt(static_cast<double>(pairs - tied_a) * static_cast<double>(pairs - tied_b));
    if (denom == 0) throw DataError("tau-b undefined: a ranking has no untied pair");
    return static_cast<double>(concordant - discordant) / denom;
}

double spearman_rho(const Ranking& a, const Ranking& b) {
    auto [ra, rb] = aligned(a, b);
    auto x = mid_ranks(ra);
    auto y = mid_ranks(rb);
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0) throw DataError("Spearman rho undefined: a ranking is constant");
    return sxy / std::sqrt(sxx * syy);
}

RankShiftReport rank_shift(const Ranking& a, const Ranking& b, std::int64_t n) {
    auto ia = index_of(a);
    auto ib = index_of(b);
    auto in_top = [n](const std::map<std::string, const RankedItem*>& idx, const std::string& id) {
        auto it = idx.find(id);
        return it != idx.end() && it->second->rank <= n;
    };

    RankShiftReport out;
    for (const auto& [id, item] : ib) {
        if (item->rank <= n && !in_top(ia, id)) out.entered.insert(id);
    }
    for (const auto& [id, item] : ia) {
        if (item->rank <= n && !in_top(ib, id)) out.exited.insert(id);
    }
    for (const auto& [id, item] : ia) {
        auto it = ib.find(id);
        if (it == ib.end()) continue;
        out.moved.push_back({id, item->name.empty() ? it->second->name : item->name, item->rank,
                             it->second->rank, it->second->rank - item->rank});
    }
    std::sort(out.moved.begin(), out.moved.end(), [](const RankMove& x, const RankMove& y) {
        auto dx = std::llabs(x.delta), dy = std::llabs(y.delta);
        if (dx != dy) return dx > dy;
        if (x.name != y.name) return x.name < y.name;
        return x.inst_id < y.inst_id;
    });
    return out;
}

Ranking ranking_from_table(const RankingTable& table) {
    Ranking out;
    for (const auto& row : table.rows) {
        if (row.key_rank) out.push_back({row.values.inst_id, row.values.name, *row.key_rank});
    }
    return out;
}

ComparisonReport compare_rankings(const Ranking& a, const Ranking& b, std::int64_t n) {
    ComparisonReport report;
    report.n = n;
    for (const auto& item : b) report.names[item.inst_id] = item.name;
    for (const auto& item : a) report.names[item.inst_id] = item.name;

    auto ib = index_of(b);
    auto ia = index_of(a);
    Ranking ca, cb;
    for (const auto& item : a) {
        if (ib.count(item.inst_id)) {
            ca.push_back(item);
        } else {
            report.only_a.push_back(item.inst_id);
        }
    }
    for (const auto& item : b) {
        if (ia.count(item.inst_id)) {
            cb.push_back(item);
        } else {
            report.only_b.push_back(item.inst_id);
        }
    }
    std::sort(report.only_a.begin(), report.only_a.end());
    std::sort(report.only_b.begin(), report.only_b.end());
    if (ca.empty()) throw MismatchedSets(report.only_a, report.only_b);
    report.common = ca.size();

    try {
        report.kendall_tau_b = kendall_tau_b(ca, cb);
    } catch (const DataError&) {
    }
    try {
        report.spearman_rho = spearman_rho(ca, cb);
    } catch (const DataError&) {
    }
    report.shift = rank_shift(a, b, n);
    return report;
}

std::string to_json(const ComparisonReport& r) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["n"] = r.n;
    doc["common"] = r.common;
    doc["kendall_tau_b"] = r.kendall_tau_b ? ordered_json(*r.kendall_tau_b) : ordered_json(nullptr);
    doc["spearman_rho"] = r.spearman_rho ? ordered_json(*r.spearman_rho) : ordered_json(nullptr);
    doc["only_a"] = r.only_a;
    doc["only_b"] = r.only_b;
    doc["entered"] = r.shift.entered;
    doc["exited"] = r.shift.exited;
    auto moved = ordered_json::array();
    for (const auto& m : r.shift.moved) {
        moved.push_back({{"inst_id", m.inst_id},
                         {"name", m.name},
                         {"rank_a", m.rank_a},
                         {"rank_b", m.rank_b},
                         {"delta", m.delta}});
    }
    doc["moved"] = moved;
    return doc.dump(2) + "\n";
}

std::string to_text(const ComparisonReport& r) {
    auto label = [&](const std::string& id) {
        auto it = r.names.find(id);
        return (it == r.names.end() || it->second == id) ? id : id + " (" + it->second + ")";
    };
    auto list = [&](const auto& ids) {
        std::string out;
        for (const auto& id : ids) out += "  " + label(id) + "\n";
        return out.empty() ? std::string("  (none)\n") : out;
    };
    std::string out;
    out += "common institutions: " + std::to_string(r.common) + "\n";
    out += "kendall tau-b: " + (r.kendall_tau_b ? fixed6(*r.kendall_tau_b) : std::string("undefined")) + "\n";
    out += "spearman rho: " + (r.spearman_rho ? fixed6(*r.spearman_rho) : std::string("undefined")) + "\n";
    if (!r.only_a.empty() || !r.only_b.empty()) {
        out += "only in A:\n" + list(r.only_a);
        out += "only in B:\n" + list(r.only_b);
    }
    out += "entered top " + std::to_string(r.n) + ":\n" + list(r.shift.entered);
    out += "exited top " + std::to_string(r.n) + ":\n" + list(r.shift.exited);
    out += "moved:\n";
    if (r.shift.moved.empty()) out += "  (none)\n";
    for (const auto& m : r.shift.moved) {
        std::string d = m.delta > 0 ? "+" + std::to_string(m.delta) : std::to_string(m.delta);
        out += "  " + label(m.inst_id) + ": " + std::to_string(m.rank_a) + " -> " + std::to_string(m.rank_b) +
               " (" + d + ")\n";
    }
    return out;
}

}  // namespace scientrank
