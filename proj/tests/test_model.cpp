#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>

#include "corrbern/model.hpp"
#include "corrbern/stats.hpp"
#include "helpers.hpp"

using namespace corrbern;
using testutil::pair;

TEST_CASE("cell probabilities") {
    SUBCASE("independent fair coin") {
        const auto c = cell_probs(0.5, 0.0);
        CHECK(c.q1 == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(c.q0 == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(c.qstar == doctest::Approx(0.25).epsilon(1e-15));
    }
    SUBCASE("perfect correlation") {
        for (double p : {0.0, 0.3, 0.81, 1.0}) {
            const auto c = cell_probs(p, 1.0);
            CHECK(c.q1 == doctest::Approx(p));
            CHECK(c.q0 == doctest::Approx(1 - p));
            CHECK(c.qstar == 0.0);
        }
    }
    SUBCASE("reference values") {
        const auto c = cell_probs(0.6892, 0.8429);
        CHECK(std::abs(c.q1 - 0.655548652144) < 1e-12);
        CHECK(std::abs(c.q0 - 0.277148652144) < 1e-12);
        CHECK(std::abs(c.qstar - 0.033651347856) < 1e-12);
        CHECK(std::abs(c.q1 + c.q0 + 2 * c.qstar - 1.0) < 1e-12);
    }
    SUBCASE("out of range") {
        CHECK_THROWS_AS(cell_probs(-0.1, 0.5), std::domain_error);
        CHECK_THROWS_AS(cell_probs(0.5, 1.01), std::domain_error);
        CHECK_THROWS_AS(cell_probs(std::nan(""), 0.5), std::domain_error);
    }
}

TEST_CASE("model params validation and json") {
    CHECK_THROWS(ModelParams({}, {}));
    CHECK_THROWS(ModelParams({0.5, 0.5}, {0.5}));
    CHECK_THROWS(ModelParams({1.5}, {0.5}));
    CHECK_THROWS(ModelParams({0.5}, {-0.5}));

    const ModelParams p({0.1, 0.7}, {0.0, 1.0});
    CHECK(ModelParams::from_json(p.to_json()) == p);
    CHECK_THROWS(ModelParams::from_json(nlohmann::json{{"p", {0.5}}}));
    CHECK_THROWS(ModelParams::from_json(nlohmann::json{{"p", {0.5}}, {"rho", {2.0}}}));
}

TEST_CASE("graph pair indexing and strings") {
    const auto g = pair("110", "100");
    CHECK(g.x_string() == "110");
    CHECK(g.y_string() == "100");
    CHECK(GraphPair::from_index(g.index(), 3) == g);
    // bit i = x_i, bit N+i = y_i
    CHECK(g.index() == (0b011u | (0b001u << 3)));
    for (std::uint64_t k = 0; k < 256; ++k) CHECK(GraphPair::from_index(k, 4).index() == k);
    CHECK_THROWS(GraphPair::from_strings("10", "1"));
    CHECK_THROWS(GraphPair::from_strings("1a", "10"));
    CHECK_THROWS(GraphPair({1, 2}, {0, 0}));
}

TEST_CASE("splitmix64 reference stream") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(rng.next() == 0x06c45d188009454fULL);
    CHECK(SplitMix64::child(0, 0).next() == SplitMix64(0xa706dd2f4d197e6fULL).next());
    CHECK(SplitMix64::child(42, 7).next() == SplitMix64(0x0d4471d7a7c7c61cULL).next());

    SplitMix64 u(99);
    for (int i = 0; i < 10000; ++i) {
        const double v = u.uniform();
        REQUIRE(v >= 0.0);
        REQUIRE(v < 1.0);
    }
}

TEST_CASE("sampling edge cases") {
    SplitMix64 rng(5);
    const ModelParams ones({1.0, 1.0, 1.0}, {0.2, 0.0, 0.9});
    const ModelParams tied({0.3, 0.6, 0.5, 0.9}, {1.0, 1.0, 1.0, 1.0});
    for (int i = 0; i < 500; ++i) {
        const auto a = sample_pair(ones, rng);
        CHECK(a.x_string() == "111");
        CHECK(a.y_string() == "111");
        const auto b = sample_pair(tied, rng);
        CHECK(b.x == b.y);
    }
}

TEST_CASE("sampler matches cell probabilities within 3 sigma") {
    const std::array<std::pair<double, double>, 3> cases{{{0.5, 0.0}, {0.3, 0.6}, {0.8, 0.25}}};
    for (const auto& [p, rho] : cases) {
        const ModelParams params({p}, {rho});
        SplitMix64 rng(12345);
        const int draws = 100000;
        std::array<int, 4> counts{};
        for (int i = 0; i < draws; ++i) ++counts[sample_pair(params, rng).index()];
        const auto c = cell_probs(p, rho);
        // index: bit0 = x, bit1 = y
        const std::array<double, 4> expected{c.q0, c.qstar, c.qstar, c.q1};
        for (int k = 0; k < 4; ++k) {
            const double se = std::sqrt(expected[k] * (1 - expected[k]) / draws);
            CHECK(std::abs(counts[k] / double(draws) - expected[k]) < 3 * se + 1e-12);
        }
    }
}

TEST_CASE("point probabilities") {
    SUBCASE("fair independent coin") {
        for (double v : point_probabilities(ModelParams({0.5}, {0.0}))) CHECK(v == doctest::Approx(0.25));
    }
    SUBCASE("perfect correlation") {
        const ModelParams params({0.5, 0.5}, {1.0, 1.0});
        CHECK(point_probability(params, pair("10", "10")) == doctest::Approx(0.25));
        CHECK(point_probability(params, pair("10", "01")) == 0.0);
    }
    SUBCASE("normalization and marginals") {
        SplitMix64 rng(77);
        for (std::size_t n = 1; n <= 6; ++n) {
            const auto params = testutil::random_params(rng, n);
            const auto probs = point_probabilities(params);
            double total = 0.0;
            std::vector<double> marg(n, 0.0);
            for (std::uint64_t k = 0; k < probs.size(); ++k) {
                total += probs[k];
                for (std::size_t i = 0; i < n; ++i)
                    if ((k >> i) & 1u) marg[i] += probs[k];
            }
            CHECK(std::abs(total - 1.0) < 1e-10);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(marg[i] - params.p(i)) < 1e-12);
        }
    }
    SUBCASE("equiprobable within a class") {
        SplitMix64 rng(3);
        const auto params = testutil::random_params(rng, 4);
        const auto a = point_probability(params, pair("1010", "0110"));
        const auto b = point_probability(params, pair("0110", "1010"));
        const auto c = point_probability(params, pair("1110", "0010"));
        CHECK(std::abs(a - b) < 1e-15);
        CHECK(std::abs(a - c) < 1e-15);
    }
    SUBCASE("capacity") { CHECK_THROWS_AS(point_probabilities(ModelParams(std::vector<double>(11, 0.5), std::vector<double>(11, 0.0))), capacity_error); }
}
