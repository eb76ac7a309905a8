#include <doctest.h>

#include <map>

#include "support/fixtures.hpp"
#include "uhuopm/error.hpp"
#include "uhuopm/measures.hpp"

using namespace uhuopm;
using doctest::Approx;

namespace
{

TotalOrder example_order()
{
    return total_order(fixtures::running_example());
}

} // namespace

TEST_CASE("support_count")
{
    const auto& db = fixtures::running_example();
    CHECK(support_count({"b"}, db) == 5);
    CHECK(support_count({"b", "c"}, db) == 3);
    CHECK(support_count({"a"}, UncertainDatabase{}) == 0);
    CHECK(support_count({"zzz"}, db) == 0);
    CHECK_THROWS_AS(support_count(Pattern{}, db), InvalidArgument);

    const auto sc = item_supports(db);
    const std::map<std::string, std::uint32_t> expected{{"a", 5}, {"b", 5}, {"c", 8}, {"d", 7}, {"e", 4}};
    for (const auto& [label, count] : expected)
        CHECK(sc[*db.find_item(label)] == count);
}

TEST_CASE("utility")
{
    const auto& db = fixtures::running_example();
    CHECK(utility({"b"}, db) == 24);
    CHECK(utility({"b", "c"}, db) == 80);

    const auto t5 = UncertainDatabase::assemble(
        {{{{"a", 1, 0.9}, {"b", 3, 0.7}, {"c", 2, 0.9}, {"d", 5, 0.6}, {"e", 1, 0.8}}, {}}}, db.utility_table());
    CHECK(utility({"e"}, t5) == 9);

    CHECK_THROWS_AS(utility({"q"}, db), MissingUtility);
    CHECK_THROWS_AS(utility(Pattern{}, db), InvalidArgument);
}

TEST_CASE("utility_occupancy")
{
    const auto& db = fixtures::running_example();
    CHECK(std::abs(utility_occupancy({"b"}, db) - 0.2192) <= 1e-4);
    CHECK(std::abs(utility_occupancy({"c"}, db) - 0.6468) <= 1e-4);
    CHECK(std::abs(utility_occupancy({"b", "c"}, db) - 0.6554) <= 1e-4);
    CHECK(utility_occupancy({"b", "c"}, db) == Approx((37.0 / 37 + 15.0 / 38 + 28.0 / 49) / 3));
    CHECK(std::abs(utility_occupancy({"a"}, db) - 0.2985) <= 1e-4);
    CHECK(std::abs(utility_occupancy({"a", "b"}, db) - 0.4334) <= 1e-4);

    const auto apart = UncertainDatabase::assemble({{{{"x", 1, 0.5}}, {}}, {{{"y", 1, 0.5}}, {}}},
                                                   UtilityTable{{"x", 1}, {"y", 1}});
    CHECK_THROWS_AS(utility_occupancy({"x", "y"}, apart), UndefinedMeasure);
    CHECK_THROWS_AS(utility_occupancy({"zzz"}, db), UndefinedMeasure);
    CHECK_THROWS_AS(utility_occupancy(Pattern{}, db), InvalidArgument);
}

TEST_CASE("probability")
{
    const auto& db = fixtures::running_example();
    CHECK(std::abs(probability({"b"}, db) - 3.3) <= 1e-9);
    CHECK(std::abs(probability({"b", "c"}, db) - 1.45) <= 1e-9);
    CHECK(std::abs(probability({"c", "a"}, db) - 2.13) <= 1e-9);
    CHECK(std::abs(probability({"c"}, db) - 5.4) <= 1e-9);
    CHECK_THROWS_AS(probability(Pattern{}, db), InvalidArgument);
}

TEST_CASE("remaining_utility_occupancy")
{
    const auto& db = fixtures::running_example();
    const auto order = example_order();
    CHECK(std::abs(remaining_utility_occupancy({"e"}, 5, db, order) - 0.8163) <= 1e-4);
    CHECK(remaining_utility_occupancy({"c"}, 1, db, order) == 0.0);
    CHECK(std::abs(remaining_utility_occupancy({"b"}, 3, db, order) - 0.3421) <= 1e-4);
    CHECK(remaining_utility_occupancy({"b"}, 3, db, order) == Approx(13.0 / 38));
    CHECK_THROWS_AS(remaining_utility_occupancy({"e"}, 1, db, order), InvalidArgument);
    CHECK_THROWS_AS(remaining_utility_occupancy({"a"}, 11, db, order), InvalidArgument);

    // Unranked successors are ignored, unranked members are an error.
    const auto partial = total_order(db, std::vector<ItemId>{*db.find_item("b"), *db.find_item("c")});
    CHECK(remaining_utility_occupancy({"b"}, 3, db, partial) == Approx(11.0 / 38));
    CHECK_THROWS_AS(remaining_utility_occupancy({"a"}, 3, db, partial), InvalidArgument);
}

TEST_CASE("total_order")
{
    const auto& db = fixtures::running_example();
    CHECK(example_order().labels(db) == std::vector<std::string>{"e", "a", "b", "d", "c"});

    const auto ab = total_order(db, std::vector<ItemId>{*db.find_item("b"), *db.find_item("a")});
    CHECK(ab.labels(db) == std::vector<std::string>{"a", "b"});

    const auto single = total_order(db, std::vector<ItemId>{*db.find_item("d")});
    CHECK(single.rank(*db.find_item("d")) == 0);
    CHECK_FALSE(single.ranked(*db.find_item("a")));
}

TEST_CASE("oracle_mine on the running example")
{
    const auto& db = fixtures::running_example();
    OracleOptions opts;
    opts.max_len = 5;

    SUBCASE("alpha 0.8 leaves only c")
    {
        const auto r = oracle_mine(db, {0.8, 0.6, 0.3}, opts);
        REQUIRE(r.size() == 1);
        CHECK(r[0].pattern == Pattern{"c"});
        CHECK(r[0].support == 8);
        CHECK(std::abs(r[0].probability - 5.4) <= 1e-9);
        CHECK(std::abs(r[0].utility_occupancy - 0.6468) <= 1e-4);
    }
    SUBCASE("alpha 1 finds nothing")
    {
        CHECK(oracle_mine(db, {1.0, 0.01, 0.0}, opts).empty());
    }
    SUBCASE("b is not a PHUOP at 0.3/0.3/0.05")
    {
        const auto r = oracle_mine(db, {0.3, 0.3, 0.05}, opts);
        CHECK(std::none_of(r.begin(), r.end(), [](const PhuopRecord& x) { return x.pattern == Pattern{"b"}; }));
        CHECK(std::any_of(r.begin(), r.end(), [](const PhuopRecord& x) { return x.pattern == Pattern{"b", "c"}; }));
    }
    SUBCASE("budget")
    {
        OracleOptions tight;
        tight.max_len = 5;
        tight.budget = 10;
        CHECK_THROWS_AS(oracle_mine(db, {0.3, 0.3, 0.05}, tight), ResourceError);
        tight.budget = 31;
        CHECK_NOTHROW(oracle_mine(db, {0.3, 0.3, 0.05}, tight));
    }
}

TEST_CASE("oracle_mine is independent of enumeration order")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto db = fixtures::random_db(seed, {8, 20});
        OracleOptions plain;
        plain.max_len = db.item_count();
        OracleOptions shuffled = plain;
        shuffled.permute_seed = seed * 7919;
        const Thresholds th{0.1, 0.2, 0.05};
        const auto a = oracle_mine(db, th, plain);
        const auto b = oracle_mine(db, th, shuffled);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].pattern == b[i].pattern);
            CHECK(a[i].support == b[i].support);
            CHECK(a[i].probability == b[i].probability);
            CHECK(a[i].utility_occupancy == b[i].utility_occupancy);
        }
    }
}

TEST_CASE("measure properties on random databases")
{
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        const auto db = fixtures::random_db(seed, {7, 15});
        OracleOptions opts;
        opts.max_len = db.item_count();
        const auto all = oracle_enumerate(db, opts);
        std::map<Pattern, const PhuopRecord*> by_pattern;
        for (const auto& r : all)
            by_pattern[r.pattern] = &r;

        const auto order = total_order(db);
        for (const auto& r : all) {
            // uo in (0, 1]
            CHECK(r.utility_occupancy > 0.0);
            CHECK(r.utility_occupancy <= 1.0 + 1e-12);

            // anti-monotone support and probability against every one-item extension
            for (const auto& label : db.item_labels()) {
                if (r.pattern.contains(label))
                    continue;
                auto items = r.pattern.items();
                items.push_back(label);
                const Pattern super(items);
                const auto it = by_pattern.find(super);
                const std::uint32_t sup = it == by_pattern.end() ? 0 : it->second->support;
                const double pro = it == by_pattern.end() ? 0.0 : it->second->probability;
                CHECK(sup <= r.support);
                CHECK(pro <= r.probability + 1e-9);
            }

            // uo(X,T) + ruo(X,T) <= 1 per supporting transaction
            for (const auto& t : db.transactions()) {
                bool contained = true;
                double u = 0.0;
                for (const auto& label : r.pattern.items()) {
                    const auto* occ = t.find(*db.find_item(label));
                    if (!occ) {
                        contained = false;
                        break;
                    }
                    u += occ->quantity * db.unit_utility(occ->item);
                }
                if (!contained)
                    continue;
                const double uo = u / t.tu;
                CHECK(uo > 0.0);
                CHECK(uo <= 1.0 + 1e-12);
                CHECK(uo + remaining_utility_occupancy(r.pattern, t.tid, db, order) <= 1.0 + 1e-9);
            }
        }
    }
}
