#include "scientrank/error.hpp"
#include "scientrank/ranking.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>

using namespace scientrank;

namespace {

std::vector<IndicatorSet> fixture(const std::string& file) {
    std::ifstream in(std::string(SCIENTRANK_DATA_DIR) + "/" + file);
    std::vector<IndicatorSet> out;
    for (const auto& row : load_indicator_rows(in)) out.push_back(indicator_set_from_row(row, Window(2011, 2015)));
    return out;
}

IndicatorSet make_set(std::string id, Rational top10, std::int64_t citations, std::int64_t pubs) {
    IndicatorSet s;
    s.inst_id = id;
    s.name = id;
    s.top10 = top10;
    s.citations = citations;
    s.pubs = pubs;
    if (pubs > 0) s.mean_citedness = Rational(citations, pubs);
    s.eligibility_docs = pubs;
    return s;
}

std::vector<std::string> ids(const RankingTable& t) {
    std::vector<std::string> out;
    for (const auto& r : t.rows) out.push_back(r.values.inst_id);
    return out;
}

template <typename F>
std::vector<std::optional<std::int64_t>> column(const RankingTable& t, F f) {
    std::vector<std::optional<std::int64_t>> out;
    for (const auto& r : t.rows) out.push_back(f(r));
    return out;
}

std::vector<std::optional<std::int64_t>> ranks(std::initializer_list<std::int64_t> v) {
    return {v.begin(), v.end()};
}

std::vector<IndicatorSet> random_sets(std::mt19937_64& rng, int n) {
    std::vector<IndicatorSet> out;
    for (int i = 0; i < n; ++i) {
        auto pubs = std::uniform_int_distribution<std::int64_t>(0, 60)(rng);
        auto cites = std::uniform_int_distribution<std::int64_t>(0, 200)(rng);
        auto top = std::uniform_int_distribution<std::int64_t>(0, 8)(rng);
        out.push_back(make_set("i" + std::to_string(i), std::min<std::int64_t>(top, pubs), cites, pubs));
    }
    return out;
}

}  // namespace

TEST_CASE("eligible") {
    CHECK(eligible(20, 20));
    CHECK_FALSE(eligible(19, 20));
    CHECK(eligible(0, 0));
}

TEST_CASE("competition_ranks examples") {
    auto to_r = [](std::initializer_list<int> v) {
        std::vector<Rational> out;
        for (int x : v) out.emplace_back(x);
        return out;
    };
    using V = std::vector<std::int64_t>;
    CHECK(competition_ranks(to_r({297, 99, 85, 54, 44, 40, 35, 35, 32, 19})) == V{1, 2, 3, 4, 5, 6, 7, 7, 9, 10});
    CHECK(competition_ranks(to_r({128, 26, 11, 7, 7, 7, 6, 6, 4, 3})) == V{1, 2, 3, 4, 4, 4, 7, 7, 9, 10});
    CHECK(competition_ranks(to_r({5, 5, 5})) == V{1, 1, 1});
    CHECK(competition_ranks(std::vector<Rational>{}).empty());

    std::vector<std::optional<Rational>> gaps = {Rational(3), std::nullopt, Rational(3), Rational(1)};
    auto r = competition_ranks(std::span<const std::optional<Rational>>(gaps));
    CHECK(r[0] == 1);
    CHECK_FALSE(r[1].has_value());
    CHECK(r[2] == 1);
    CHECK(r[3] == 3);
}

TEST_CASE("competition_ranks properties") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Rational> v(std::uniform_int_distribution<std::size_t>(1, 40)(rng));
        for (auto& x : v) x = Rational(std::uniform_int_distribution<int>(0, 15)(rng), 3);
        auto r = competition_ranks(v);
        CHECK(r == oracle::competition_ranks(v));

        auto sorted = v;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        auto rs = competition_ranks(sorted);
        CHECK(rs.front() == 1);
        CHECK(std::is_sorted(rs.begin(), rs.end()));

        std::vector<Rational> distinct;
        for (std::size_t i = 0; i < v.size(); ++i) distinct.emplace_back(static_cast<int>(i) * 7 % 41);
        auto rd = competition_ranks(distinct);
        std::sort(rd.begin(), rd.end());
        for (std::size_t i = 0; i < rd.size(); ++i) CHECK(rd[i] == static_cast<std::int64_t>(i + 1));
    }
}

TEST_CASE("build_ranking reproduces the Ukrainian table") {
    auto sets = fixture("table1.csv");
    RankingOptions opts;
    auto t = build_ranking(sets, opts);
    CHECK(ids(t) == std::vector<std::string>{"kyiv", "karazin", "lviv-franko", "odessa", "lviv-poly", "sumy", "kpi",
                                             "khpi", "chernivtsi", "tavrida"});
    CHECK(column(t, [](const RankingRow& r) { return r.top10_rank; }) == ranks({1, 2, 3, 4, 5, 6, 7, 7, 9, 10}));
    CHECK(column(t, [](const RankingRow& r) { return r.mc_rank; }) == ranks({3, 4, 6, 1, 10, 5, 9, 8, 2, 7}));
    CHECK(t.diagnostics.empty());
}

TEST_CASE("build_ranking reproduces the Belarusian table") {
    auto sets = fixture("table2.csv");
    RankingOptions opts;
    opts.union_with = {Indicator::mean_citedness};
    auto t = build_ranking(sets, opts);
    REQUIRE(t.rows.size() == 11);
    CHECK(t.rows.back().values.inst_id == "grodno-kupala");
    CHECK_FALSE(t.rows.back().top10_rank.has_value());
    CHECK(t.rows.back().key_rank == 11);
    CHECK(column(t, [](const RankingRow& r) { return r.mc_rank; }) ==
          std::vector<std::optional<std::int64_t>>{6, 3, 9, 1, 8, std::nullopt, 4, 10, 2, 7, 5});

    opts.union_with.clear();
    auto key_only = build_ranking(sets, opts);
    CHECK(key_only.rows.size() == 10);
}

TEST_CASE("build_ranking edge cases") {
    SUBCASE("single eligible institution") {
        std::vector<IndicatorSet> sets = {make_set("a", 3, 50, 25), make_set("b", 9, 10, 5)};
        auto t = build_ranking(sets, RankingOptions{});
        REQUIRE(t.rows.size() == 1);
        CHECK(t.rows[0].top10_rank == 1);
        CHECK(t.rows[0].mc_rank == 1);
        CHECK(t.rows[0].key_rank == 1);
    }
    SUBCASE("eligibility boundary") {
        std::vector<IndicatorSet> sets = {make_set("a", 1, 10, 19), make_set("b", 1, 10, 20)};
        auto t = build_ranking(sets, RankingOptions{});
        CHECK(ids(t) == std::vector<std::string>{"b"});
    }
    SUBCASE("undefined mean citedness is diagnosed and unranked") {
        std::vector<IndicatorSet> sets = {make_set("a", 0, 0, 0), make_set("b", 1, 10, 5)};
        RankingOptions opts;
        opts.min_docs = 0;
        auto t = build_ranking(sets, opts);
        REQUIRE(t.rows.size() == 2);
        CHECK(t.rows[1].values.inst_id == "a");
        CHECK_FALSE(t.rows[1].mc_rank.has_value());
        CHECK(t.diagnostics.size() == 1);
    }
    SUBCASE("no truncation") {
        auto sets = fixture("table2.csv");
        RankingOptions opts;
        opts.top_n.reset();
        auto t = build_ranking(sets, opts);
        CHECK(t.rows.size() == 11);
        CHECK(t.rows.back().top10_rank == 11);
    }
    SUBCASE("ties expand top_n") {
        std::vector<IndicatorSet> sets = {make_set("a", 5, 10, 30), make_set("b", 3, 10, 30), make_set("c", 3, 10, 30)};
        RankingOptions opts;
        opts.top_n = 2;
        CHECK(build_ranking(sets, opts).rows.size() == 3);
    }
    SUBCASE("bad options") {
        RankingOptions opts;
        opts.top_n = 0;
        CHECK_THROWS_AS(build_ranking(std::vector<IndicatorSet>{}, opts), ConfigError);
        CHECK_THROWS_AS(parse_indicator("impact"), ConfigError);
    }
}

TEST_CASE("top_n_union") {
    auto sets = fixture("table2.csv");
    std::vector<Indicator> both = {Indicator::top10, Indicator::mean_citedness};
    auto u = top_n_union(sets, both, 10);
    CHECK(u.size() == 11);
    CHECK(u.count("grodno-kupala"));
    CHECK(u.count("bstu"));

    std::vector<Indicator> twice = {Indicator::citations, Indicator::citations};
    CHECK(top_n_union(sets, twice, 5).size() == 5);

    // Top-10 count falls while mean citedness rises: the two top-3 sets are disjoint.
    std::vector<IndicatorSet> anti;
    for (int i = 0; i < 6; ++i) anti.push_back(make_set("i" + std::to_string(i), 6 - i, 10 * (i + 1), 10));
    CHECK(top_n_union(anti, both, 3).size() == 6);

    CHECK_THROWS_AS(top_n_union(sets, std::vector<Indicator>{}, 3), ConfigError);
}

TEST_CASE("ranking properties") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        auto sets = random_sets(rng, 25);
        RankingOptions opts;
        opts.min_docs = std::uniform_int_distribution<std::int64_t>(0, 20)(rng);
        opts.top_n = std::uniform_int_distribution<std::int64_t>(1, 12)(rng);
        auto base = build_ranking(sets, opts);

        auto shuffled = sets;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto again = build_ranking(shuffled, opts);
        CHECK(ids(again) == ids(base));
        CHECK(column(again, [](const RankingRow& r) { return r.key_rank; }) ==
              column(base, [](const RankingRow& r) { return r.key_rank; }));

        // Strictly increasing transform of the key.
        auto squashed = sets;
        for (auto& s : squashed) s.top10 = s.top10 * s.top10 * 3 + 1;
        auto transformed = build_ranking(squashed, opts);
        CHECK(ids(transformed) == ids(base));
        CHECK(column(transformed, [](const RankingRow& r) { return r.top10_rank; }) ==
              column(base, [](const RankingRow& r) { return r.top10_rank; }));

        // Removing one institution never worsens anyone's rank.
        RankingOptions full = opts;
        full.top_n.reset();
        auto all = build_ranking(sets, full);
        if (all.rows.empty()) continue;
        auto drop = std::uniform_int_distribution<std::size_t>(0, sets.size() - 1)(rng);
        auto fewer = sets;
        fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(drop));
        auto reduced = build_ranking(fewer, full);
        for (const auto& row : reduced.rows) {
            auto it = std::find_if(all.rows.begin(), all.rows.end(),
                                   [&](const RankingRow& r) { return r.values.inst_id == row.values.inst_id; });
            REQUIRE(it != all.rows.end());
            CHECK(*row.key_rank <= *it->key_rank);
            if (row.mc_rank) CHECK(*row.mc_rank <= *it->mc_rank);
        }
    }
}
