#include <doctest.h>

#include <cmath>
#include <string>

#include "corrbern/balance.hpp"
#include "helpers.hpp"

using namespace corrbern;
using testutil::pair;

namespace {

double max_gap_all_points(std::size_t n, double (*f)(const GraphPair&), const Statistic& brute_of) {
    double worst = 0.0;
    for (std::uint64_t k = 0; k < pow_u64(4, n); ++k) {
        const auto g = GraphPair::from_index(k, n);
        worst = std::max(worst, std::abs(f(g) - balance_brute(brute_of, g)));
    }
    return worst;
}

double strbar_default(const GraphPair& g) { return balanced_alignment_strength(g); }
double strprime_default(const GraphPair& g) { return modified_alignment_strength(g); }
double strprime_expanded(const GraphPair& g) { return modified_alignment_strength_expanded(g); }

} // namespace

TEST_CASE("brute-force balancing") {
    const auto delta = statistics::delta();
    const auto prod = statistics::dx_times_dy();
    const auto rate = statistics::random_alignment_rate();

    CHECK(balance_brute(delta, pair("1100", "1010")) == 2.0);
    CHECK(balance_brute(prod, pair("10", "11")) == doctest::Approx(0.5));

    // All-STAR class: raw values differ, balanced values agree.
    const auto a = pair("0000", "1111");
    const auto b = pair("1100", "0011");
    CHECK(rate(a) == doctest::Approx(1.0));
    CHECK(rate(b) == doctest::Approx(0.5));
    CHECK(balance_brute(rate, a) == doctest::Approx(balance_brute(rate, b)).epsilon(1e-15));

    // Idempotence
    const auto bar = balanced_variant(statistics::alignment_strength());
    for (std::uint64_t k = 0; k < 256; ++k) {
        const auto g = GraphPair::from_index(k, 4);
        REQUIRE(std::abs(balance_brute(bar, g) - bar(g)) < 1e-14);
    }

    const std::string x(26, '1'), y(26, '0');
    CHECK_THROWS_AS(balance_brute(delta, GraphPair::from_strings(x, y)), capacity_error);
}

TEST_CASE("balance detection") {
    CHECK(is_balanced(statistics::delta(), 4));
    CHECK_FALSE(is_balanced(statistics::alignment_strength(), 2));
    CHECK_FALSE(is_balanced(statistics::dx(), 2));
    CHECK_FALSE(is_balanced(statistics::dx_times_dy(), 3));
    for (std::size_t n = 1; n <= 5; ++n) {
        CHECK(is_balanced(statistics::modified_alignment_strength(), n));
        CHECK(is_balanced(statistics::balanced_alignment_strength(), n));
    }
    CHECK_THROWS_AS(is_balanced(statistics::delta(), 9), capacity_error);
}

TEST_CASE("closed-form balanced statistics") {
    CHECK(balanced_dxdy(pair("10", "11")) == doctest::Approx(0.5));
    CHECK(balanced_dxdy(pair("0110", "0110")) == doctest::Approx(0.25));
    CHECK(modified_alignment_strength(pair("10", "11")) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(modified_alignment_strength(pair("011", "011")) == doctest::Approx(1.0));
    CHECK(balanced_alignment_strength(pair("10", "11")) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(balanced_alignment_strength(pair("011", "011")) == doctest::Approx(1.0));
    CHECK(sigma2_umvue(pair("01", "10")) == doctest::Approx(-0.125));
    CHECK(sigma2_umvue(pair("0111", "0111")) == doctest::Approx(0.75 * 0.25));

    for (const char* z : {"0000", "1111"}) {
        CHECK(balanced_alignment_strength(pair(z, z)) == kDegenerateConvention);
        CHECK(modified_alignment_strength(pair(z, z)) == kDegenerateConvention);
        CHECK(modified_alignment_strength_expanded(pair(z, z), 0.3) == 0.3);
    }
}

TEST_CASE("closed forms against brute-force balancing") {
    const auto str = statistics::alignment_strength();
    const auto prod = statistics::dx_times_dy();
    const auto num = statistics::str_numerator();
    const auto den = statistics::str_denominator();
    for (std::size_t n = 1; n <= 6; ++n) {
        CHECK(max_gap_all_points(n, strbar_default, str) < 1e-10);
        CHECK(max_gap_all_points(n, balanced_dxdy, prod) < 1e-12);
        double worst = 0.0;
        for (std::uint64_t k = 0; k < pow_u64(4, n); ++k) {
            const auto g = GraphPair::from_index(k, n);
            const double d = densities(g).dxy;
            const double delta = static_cast<double>(delta_stat(g));
            const double nn = static_cast<double>(n);
            const double bnum = balance_brute(num, g);
            const double bden = balance_brute(den, g);
            worst = std::max(worst, std::abs(bnum - (densities(g).dcap - d * d + delta / (4 * nn * nn))));
            worst = std::max(worst, std::abs(bden - (d * (1 - d) + delta / (4 * nn * nn))));
            if (!is_degenerate_point(g)) {
                worst = std::max(worst, std::abs(strprime_default(g) - bnum / bden));
                worst = std::max(worst, std::abs(strprime_expanded(g) - strprime_default(g)));
            }
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("linear-time str_bar beyond brute-force range") {
    // 4 shared ones, 30 disagreements, 6 shared zeros; exact rational reference.
    const std::string x = std::string(4, '1') + std::string(30, '1') + std::string(6, '0');
    const std::string y = std::string(4, '1') + std::string(30, '0') + std::string(6, '0');
    CHECK(std::abs(balanced_alignment_strength(GraphPair::from_strings(x, y)) - (-0.476926734632764)) < 1e-12);

    // Large Delta stays finite.
    const std::string big_x = std::string(1500, '1') + std::string(500, '0');
    const std::string big_y = std::string(1500, '0') + std::string(500, '0');
    const double v = balanced_alignment_strength(GraphPair::from_strings(big_x, big_y));
    CHECK(std::isfinite(v));
    CHECK(v < 0.0);
}

TEST_CASE("balanced combinators") {
    const auto delta = statistics::delta();
    const auto bdd = statistics::balanced_dxdy();

    const auto same = balanced_sum(delta, bdd, 1.0, 0.0);
    for (std::uint64_t k = 0; k < 64; ++k) {
        const auto g = GraphPair::from_index(k, 3);
        REQUIRE(same(g) == delta(g));
    }
    CHECK(is_balanced(balanced_sum(delta, bdd, 2.0, -3.0), 5));
    CHECK(is_balanced(balanced_product(delta, statistics::dcap()), 5));
    CHECK(is_balanced(balanced_quotient(statistics::dcap(), statistics::constant(2.0)), 4));

    CHECK_THROWS_AS(balanced_sum(delta, statistics::dx(), 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(balanced_product(statistics::alignment_strength(), delta), std::invalid_argument);

    const auto q = balanced_quotient(statistics::constant(1.0), delta);
    CHECK(q(pair("10", "00")) == 1.0);
    try {
        q(pair("10", "10"));
        FAIL("expected domain_error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("[1,0]") != std::string::npos);
    }
}
