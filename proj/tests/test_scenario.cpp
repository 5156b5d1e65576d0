#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include <json.hpp>

#include "uavcache/errors.hpp"
#include "uavcache/scenario.hpp"

using uavcache::ConfigError;
using uavcache::Scenario;
using uavcache::SystemParams;

namespace {

std::string tmp_path(const char* name) {
    return std::string("/tmp/uavcache_test_") + name;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

// Default config with every required key, for mutation in parse tests.
std::string full_config_text() {
    SystemParams p;
    const std::string path = tmp_path("full.cfg");
    uavcache::save_config(p, path);
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in),
            std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("zipf popularity") {
    SUBCASE("kappa 0 is uniform") {
        auto p = uavcache::zipf_popularity(4, 0.0);
        for (int n = 0; n < 4; ++n) CHECK(p(n) == doctest::Approx(0.25));
    }
    SUBCASE("single file") {
        auto p = uavcache::zipf_popularity(1, 2.3);
        CHECK(p(0) == doctest::Approx(1.0));
    }
    SUBCASE("N=3, kappa=1 by hand summation") {
        auto p = uavcache::zipf_popularity(3, 1.0);
        CHECK(p(0) == doctest::Approx(6.0 / 11.0).epsilon(1e-12));
        CHECK(p(1) == doctest::Approx(3.0 / 11.0).epsilon(1e-12));
        CHECK(p(2) == doctest::Approx(2.0 / 11.0).epsilon(1e-12));
    }
    SUBCASE("simplex point, nonincreasing, across N and kappa") {
        for (int N : {1, 2, 7, 100, 10000}) {
            for (double kappa : {0.0, 0.5, 1.0, 3.0}) {
                auto p = uavcache::zipf_popularity(N, kappa);
                CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-9));
                for (int n = 0; n + 1 < N; ++n) CHECK(p(n) >= p(n + 1));
                CHECK((p.array() >= 0).all());
            }
        }
    }
}

TEST_CASE("scenario generation") {
    SystemParams p;  // Table-I defaults
    SUBCASE("same seed, identical scenarios bit for bit") {
        Scenario a = uavcache::generate_scenario(p);
        Scenario b = uavcache::generate_scenario(p);
        REQUIRE(a.positions.size() == b.positions.size());
        CHECK(std::memcmp(a.positions.data(), b.positions.data(),
                          a.positions.size() * sizeof(a.positions[0])) == 0);
        CHECK(a.popularity == b.popularity);
    }
    SUBCASE("different seeds differ") {
        Scenario a = uavcache::generate_scenario(p);
        SystemParams q = p;
        q.rng_seed = p.rng_seed + 1;
        Scenario b = uavcache::generate_scenario(q);
        CHECK(a.positions[0] != b.positions[0]);
    }
    SUBCASE("coordinates stay inside the square") {
        Scenario s = uavcache::generate_scenario(p);
        REQUIRE(static_cast<int>(s.positions.size()) == p.K);
        for (const auto& w : s.positions) {
            CHECK(w.x() >= 0.0);
            CHECK(w.x() <= p.area_side);
            CHECK(w.y() >= 0.0);
            CHECK(w.y() <= p.area_side);
        }
    }
    SUBCASE("two points in a unit square are at most sqrt(2) apart") {
        SystemParams q = p;
        q.K = 2;
        q.N = 2;
        q.area_side = 1.0;
        Scenario s = uavcache::generate_scenario(q);
        CHECK((s.positions[0] - s.positions[1]).norm() <= std::sqrt(2.0));
    }
    SUBCASE("popularity replicated per GN") {
        Scenario s = uavcache::generate_scenario(p);
        REQUIRE(s.popularity.rows() == p.K);
        REQUIRE(s.popularity.cols() == p.N);
        for (int k = 0; k < p.K; ++k)
            CHECK(s.popularity.row(k).sum() == doctest::Approx(1.0));
        CHECK(s.popularity.row(0) == s.popularity.row(p.K - 1));
    }
    SUBCASE("caller-supplied per-GN popularity") {
        SystemParams q = p;
        q.K = 2;
        q.N = 2;
        Eigen::MatrixXd pop(2, 2);
        pop << 0.9, 0.1, 0.3, 0.7;
        Scenario s = uavcache::generate_scenario(q, pop);
        CHECK(s.popularity(1, 1) == doctest::Approx(0.7));
        pop(0, 0) = 0.5;  // row no longer sums to 1
        CHECK_THROWS_AS(uavcache::generate_scenario(q, pop), ConfigError);
    }
}

TEST_CASE("parameter validation") {
    SystemParams p;
    SUBCASE("defaults are valid") { CHECK_NOTHROW(uavcache::validate(p)); }
    SUBCASE("library larger than total capacity") {
        p.K = 2;
        p.Q = 1;
        p.N = 3;
        CHECK_THROWS_AS(uavcache::validate(p), uavcache::InfeasibleError);
    }
    SUBCASE("slot displacement at or above H") {
        p.delta_t = 4.0;  // 4*30 = 120 >= H = 100; L stays integral (400)
        CHECK_THROWS_AS(uavcache::validate(p), ConfigError);
    }
    SUBCASE("non-integer packets per slot") {
        p.delta_t = 0.4441;
        CHECK_THROWS_AS(uavcache::validate(p), ConfigError);
    }
    SUBCASE("coverage radius radicand must be nonnegative") {
        p.P_U = -40;  // gamma0_U = 100, far below gamma_th_U * H^2
        CHECK_THROWS_AS(uavcache::validate(p), ConfigError);
    }
    SUBCASE("slot-rule advisory fires at defaults") {
        // delta_t*V_max = 15 m > H/10 = 10 m: legal but worth a warning.
        auto w = uavcache::param_warnings(p);
        REQUIRE(w.size() == 1);
        CHECK(w[0].find("H/10") != std::string::npos);
        p.delta_t = 0.1;  // 3 m < 10 m, and L = 10 still integral
        CHECK(uavcache::param_warnings(p).empty());
    }
}

TEST_CASE("config file io") {
    SUBCASE("save then load is the identity") {
        SystemParams p;
        p.K = 13;
        p.kappa = 0.77;
        p.rng_seed = 4242;
        p.closed_tour = true;
        p.delta_t = 0.25;  // keep L integral after the edit
        const std::string path = tmp_path("roundtrip.cfg");
        uavcache::save_config(p, path);
        CHECK(uavcache::load_config(path) == p);
    }
    SUBCASE("defaults file reproduces the reference setup") {
        const std::string path = tmp_path("table.cfg");
        uavcache::save_config(SystemParams{}, path);
        SystemParams p = uavcache::load_config(path);
        CHECK(p.K == 100);
        CHECK(p.N == 30);
        CHECK(p.Q == 3);
        CHECK(p.Y == 300);
        CHECK(p.kappa == 1.0);
    }
    SUBCASE("missing field is named in the error") {
        std::string text = full_config_text();
        auto pos = text.find("H = ");
        REQUIRE(pos != std::string::npos);
        text.erase(pos, text.find('\n', pos) - pos + 1);
        const std::string path = tmp_path("missing.cfg");
        write_file(path, text);
        try {
            uavcache::load_config(path);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("missing field H") !=
                  std::string::npos);
        }
    }
    SUBCASE("unknown key is rejected with its line") {
        const std::string path = tmp_path("unknown.cfg");
        write_file(path, full_config_text() + "bogus_key = 3\n");
        try {
            uavcache::load_config(path);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            std::string msg = e.what();
            CHECK(msg.find("bogus_key") != std::string::npos);
            CHECK(msg.find(":25") != std::string::npos);
        }
    }
    SUBCASE("duplicate key is rejected") {
        const std::string path = tmp_path("dup.cfg");
        write_file(path, full_config_text() + "K = 5\n");
        CHECK_THROWS_AS(uavcache::load_config(path), ConfigError);
    }
    SUBCASE("comments and blank lines are ignored") {
        const std::string path = tmp_path("comments.cfg");
        write_file(path, "# leading comment\n\n" + full_config_text() +
                             "\n  # trailing\n");
        CHECK_NOTHROW(uavcache::load_config(path));
    }
    SUBCASE("malformed value is rejected") {
        std::string text = full_config_text();
        auto pos = text.find("kappa = ");
        text.replace(pos, text.find('\n', pos) - pos, "kappa = fast");
        const std::string path = tmp_path("badval.cfg");
        write_file(path, text);
        CHECK_THROWS_AS(uavcache::load_config(path), ConfigError);
    }
    SUBCASE("closed_tour is optional and defaults to false") {
        std::string text = full_config_text();
        auto pos = text.find("closed_tour");
        text.erase(pos, text.find('\n', pos) - pos + 1);
        const std::string path = tmp_path("noct.cfg");
        write_file(path, text);
        CHECK(uavcache::load_config(path).closed_tour == false);
    }
}

TEST_CASE("scenario json export") {
    SystemParams p;
    p.K = 3;
    p.N = 2;
    p.Q = 1;
    Scenario s = uavcache::generate_scenario(p);
    const std::string path = tmp_path("scenario.json");
    uavcache::export_scenario_json(s, path);
    std::ifstream in(path);
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j["params"]["K"] == "3");
    REQUIRE(j["positions"].size() == 3);
    CHECK(j["positions"][0][0].get<double>() ==
          doctest::Approx(s.positions[0].x()));
    REQUIRE(j["popularity"].size() == 3);
    CHECK(j["popularity"][0].size() == 2);
}
