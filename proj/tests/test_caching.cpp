#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "uavcache/caching.hpp"
#include "uavcache/errors.hpp"

using uavcache::CachingPolicy;
using uavcache::ContractError;

TEST_CASE("policy bookkeeping") {
    CachingPolicy p(3, 4, 2);
    CHECK(p.K() == 3);
    CHECK(p.N() == 4);
    CHECK(p.total_pairs() == 0);
    CHECK_FALSE(p.covers_all_files());

    p.add(0, 1);
    p.add(0, 2);
    CHECK(p.cached(0, 1));
    CHECK(p.fill(0) == 2);
    CHECK(p.copies(1) == 1);
    CHECK(p.caching_gns() == std::vector<int>{0});

    SUBCASE("capacity is enforced on insertion") {
        CHECK_FALSE(p.can_add(0, 3));
        CHECK_THROWS_AS(p.add(0, 3), ContractError);
    }
    SUBCASE("double insertion is rejected") {
        CHECK_FALSE(p.can_add(0, 1));
        CHECK_THROWS_AS(p.add(0, 1), ContractError);
    }
    SUBCASE("coverage flips once every file has a copy") {
        p.add(1, 0);
        p.add(1, 3);
        CHECK(p.covers_all_files());
        CHECK(p.caching_gns() == std::vector<int>{0, 1});
    }
}

TEST_CASE("weighted cost") {
    CHECK(uavcache::weighted_cost(100, 50, 0.0) == 100.0);
    CHECK(uavcache::weighted_cost(100, 50, 1.0) == 50.0);
    CHECK(uavcache::weighted_cost(100, 50, 0.6) == doctest::Approx(70.0));
    CHECK_THROWS_AS(uavcache::weighted_cost(1, 1, -0.1), ContractError);
    CHECK_THROWS_AS(uavcache::weighted_cost(1, 1, 1.1), ContractError);
}

TEST_CASE("repetition stats") {
    SUBCASE("all files everywhere counts K per file") {
        CachingPolicy p(3, 2, 2);
        for (int k = 0; k < 3; ++k)
            for (int n = 0; n < 2; ++n) p.add(k, n);
        Eigen::VectorXi r = uavcache::repetition_stats(p);
        CHECK(r(0) == 3);
        CHECK(r(1) == 3);
    }
    SUBCASE("single-GN policy counts one per cached file") {
        CachingPolicy p(3, 2, 2);
        p.add(1, 0);
        p.add(1, 1);
        Eigen::VectorXi r = uavcache::repetition_stats(p);
        CHECK(r(0) == 1);
        CHECK(r(1) == 1);
    }
}

TEST_CASE("policy csv round trip") {
    CachingPolicy p(3, 4, 2);
    p.add(0, 1);
    p.add(2, 0);
    p.add(2, 3);
    const std::string path = "/tmp/uavcache_test_policy.csv";
    uavcache::save_policy_csv(p, path);
    CachingPolicy q = uavcache::load_policy_csv(path, 2);
    CHECK(q.placement() == p.placement());
    CHECK(q.Q() == 2);
}
