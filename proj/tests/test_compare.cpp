#include "scientrank/compare.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <json.hpp>

#include <random>

using namespace scientrank;

namespace {

Ranking ranking(const std::vector<std::int64_t>& ranks, const std::string& prefix = "i") {
    Ranking out;
    for (std::size_t i = 0; i < ranks.size(); ++i) out.push_back({prefix + std::to_string(i), prefix + std::to_string(i), ranks[i]});
    return out;
}

Ranking named(std::initializer_list<std::pair<const char*, std::int64_t>> items) {
    Ranking out;
    for (const auto& [id, rank] : items) out.push_back({id, id, rank});
    return out;
}

}  // namespace

TEST_CASE("kendall_tau_b examples") {
    CHECK(kendall_tau_b(ranking({1, 2, 3, 4, 5}), ranking({1, 2, 3, 4, 5})) == doctest::Approx(1.0));
    CHECK(kendall_tau_b(ranking({1, 2, 3, 4}), ranking({4, 3, 2, 1})) == doctest::Approx(-1.0));

    std::vector<std::int64_t> a = {1, 2, 3, 4}, b = {1, 3, 2, 4};
    CHECK(oracle::tau_b(a, b) == doctest::Approx(2.0 / 3.0));
    CHECK(kendall_tau_b(ranking(a), ranking(b)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("spearman_rho examples") {
    CHECK(spearman_rho(ranking({1, 2, 3, 4}), ranking({1, 2, 3, 4})) == doctest::Approx(1.0));
    CHECK(spearman_rho(ranking({1, 2, 3, 4}), ranking({4, 3, 2, 1})) == doctest::Approx(-1.0));

    std::vector<std::int64_t> a = {1, 2, 3, 4}, b = {2, 1, 4, 3};
    double expected = oracle::pearson(oracle::mid_ranks(a), oracle::mid_ranks(b));
    CHECK(expected == doctest::Approx(0.6));
    CHECK(spearman_rho(ranking(a), ranking(b)) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("correlations reject mismatched or degenerate inputs") {
    try {
        kendall_tau_b(named({{"a", 1}, {"b", 2}}), named({{"a", 1}, {"c", 2}}));
        FAIL("expected mismatch");
    } catch (const MismatchedSets& e) {
        CHECK(e.only_a() == std::vector<std::string>{"b"});
        CHECK(e.only_b() == std::vector<std::string>{"c"});
    }
    CHECK_THROWS_AS(spearman_rho(named({{"a", 1}}), named({{"b", 1}})), MismatchedSets);
    CHECK_THROWS_AS(kendall_tau_b(ranking({1, 1, 1}), ranking({1, 2, 3})), DataError);
    CHECK_THROWS_AS(spearman_rho(ranking({1, 1, 1}), ranking({1, 2, 3})), DataError);
    CHECK_THROWS_AS(kendall_tau_b(Ranking{}, Ranking{}), DataError);
}

TEST_CASE("correlation properties against oracles") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        auto n = std::uniform_int_distribution<std::size_t>(2, 30)(rng);
        std::vector<std::int64_t> a(n), b(n);
        for (auto& v : a) v = std::uniform_int_distribution<std::int64_t>(1, 8)(rng);
        for (auto& v : b) v = std::uniform_int_distribution<std::int64_t>(1, 8)(rng);
        auto ra = ranking(a), rb = ranking(b);
        bool a_const = std::all_of(a.begin(), a.end(), [&](auto v) { return v == a[0]; });
        bool b_const = std::all_of(b.begin(), b.end(), [&](auto v) { return v == b[0]; });
        if (a_const || b_const) continue;

        double tau = kendall_tau_b(ra, rb);
        CHECK(tau == doctest::Approx(oracle::tau_b(a, b)).epsilon(1e-12));
        CHECK(tau == doctest::Approx(kendall_tau_b(rb, ra)).epsilon(1e-12));
        double rho = spearman_rho(ra, rb);
        CHECK(rho == doctest::Approx(oracle::pearson(oracle::mid_ranks(a), oracle::mid_ranks(b))).epsilon(1e-9));
        CHECK(rho == doctest::Approx(spearman_rho(rb, ra)).epsilon(1e-12));
        CHECK(kendall_tau_b(ra, ra) == doctest::Approx(1.0));
        CHECK(spearman_rho(ra, ra) == doctest::Approx(1.0));

        // Without ties tau-b is the classic (C - D) / (n(n-1)/2).
        std::vector<std::int64_t> p(n), q(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = q[i] = static_cast<std::int64_t>(i + 1);
        std::shuffle(q.begin(), q.end(), rng);
        double c = 0, d = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) ((p[i] - p[j]) * (q[i] - q[j]) > 0 ? c : d) += 1;
        }
        CHECK(kendall_tau_b(ranking(p), ranking(q)) ==
              doctest::Approx((c - d) / (static_cast<double>(n * (n - 1)) / 2)).epsilon(1e-12));
    }
}

TEST_CASE("rank_shift") {
    SUBCASE("newcomer enters the top ten") {
        Ranking a, b;
        for (int i = 1; i <= 16; ++i) a.push_back({"u" + std::to_string(i), "", i});
        a.push_back({"gomel-med", "Gomel State Medical University", 16});
        a.erase(a.begin() + 15);
        b = a;
        for (auto& item : b) {
            if (item.inst_id == "gomel-med") {
                item.rank = 1;
            } else if (item.rank <= 10) {
                item.rank += 1;
            }
        }
        auto r = rank_shift(a, b, 10);
        CHECK(r.entered == std::set<std::string>{"gomel-med"});
        CHECK(r.exited == std::set<std::string>{"u10"});
        CHECK(r.moved.front().inst_id == "gomel-med");
        CHECK(r.moved.front().delta == -15);
    }
    SUBCASE("identical tables") {
        auto a = ranking({1, 2, 3, 4});
        auto r = rank_shift(a, a, 3);
        CHECK(r.entered.empty());
        CHECK(r.exited.empty());
        REQUIRE(r.moved.size() == 4);
        for (const auto& m : r.moved) CHECK(m.delta == 0);
    }
    SUBCASE("swap") {
        auto r = rank_shift(named({{"x", 1}, {"y", 2}}), named({{"y", 1}, {"x", 2}}), 2);
        REQUIRE(r.moved.size() == 2);
        CHECK(r.moved[0].inst_id == "x");
        CHECK(r.moved[0].delta == 1);
        CHECK(r.moved[1].inst_id == "y");
        CHECK(r.moved[1].delta == -1);
        CHECK(r.entered.empty());
    }
    SUBCASE("institutions present in one table only") {
        auto r = rank_shift(named({{"x", 1}, {"gone", 2}}), named({{"x", 1}, {"new", 2}}), 2);
        CHECK(r.entered == std::set<std::string>{"new"});
        CHECK(r.exited == std::set<std::string>{"gone"});
        CHECK(r.moved.size() == 1);
    }
}

TEST_CASE("compare_rankings report") {
    auto a = named({{"x", 1}, {"y", 2}, {"z", 3}, {"only-a", 4}});
    auto b = named({{"x", 1}, {"z", 2}, {"y", 3}, {"only-b", 4}});
    auto report = compare_rankings(a, b, 2);
    CHECK(report.common == 3);
    CHECK(report.only_a == std::vector<std::string>{"only-a"});
    CHECK(report.only_b == std::vector<std::string>{"only-b"});
    REQUIRE(report.kendall_tau_b);
    CHECK(*report.kendall_tau_b == doctest::Approx(1.0 / 3.0));
    CHECK(report.shift.entered == std::set<std::string>{"z"});
    CHECK(report.shift.exited == std::set<std::string>{"y"});

    auto doc = nlohmann::json::parse(to_json(report));
    CHECK(doc["common"] == 3);
    CHECK(doc["entered"] == nlohmann::json::array({"z"}));
    CHECK(to_text(report).find("kendall tau-b: 0.333333") != std::string::npos);

    CHECK_THROWS_AS(compare_rankings(named({{"a", 1}}), named({{"b", 1}}), 1), MismatchedSets);
}
