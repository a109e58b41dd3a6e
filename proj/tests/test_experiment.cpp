#include <doctest.h>

#include <cmath>
#include <sstream>

#include "corrbern/experiment.hpp"
#include "corrbern/io.hpp"
#include "helpers.hpp"

using namespace corrbern;

TEST_CASE("mode names") {
    for (auto m : {ExperimentMode::uniform_both, ExperimentMode::rho_zero, ExperimentMode::p_half})
        CHECK(parse_mode(to_string(m)) == m);
    CHECK_THROWS_AS(parse_mode("both"), std::invalid_argument);
}

TEST_CASE("parameter draws per mode") {
    SplitMix64 a(1), b(1), c(1);
    const auto u = draw_params(ExperimentMode::uniform_both, 6, a);
    const auto z = draw_params(ExperimentMode::rho_zero, 6, b);
    const auto h = draw_params(ExperimentMode::p_half, 6, c);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(z.rho(i) == 0.0);
        CHECK(z.p(i) == u.p(i));
        CHECK(h.p(i) == 0.5);
        CHECK(h.rho(i) == u.rho(i));
    }
}

TEST_CASE("experiment rows") {
    ExperimentConfig cfg;
    cfg.replicates = 12;
    cfg.base_seed = 77;
    const auto rows = run_experiment(cfg);
    REQUIRE(rows.size() == 12);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        CHECK(row.replicate_index == r);
        CHECK(row.var_str >= row.var_strbar);
        CHECK(row.var_strbar >= 0.0);
        auto rng = SplitMix64::child(77, r);
        CHECK(row.params == draw_params(ExperimentMode::uniform_both, 6, rng));
        CHECK(std::abs(row.rho_t - total_correlation(row.params)) < 1e-15);
    }
    // A replicate does not depend on how many others run.
    cfg.replicates = 3;
    const auto fewer = run_experiment(cfg);
    CHECK(fewer[2].e_str == rows[2].e_str);

    cfg.n_components = 11;
    CHECK_THROWS_AS(run_experiment(cfg), capacity_error);
    cfg.n_components = 6;
    cfg.replicates = 0;
    CHECK_THROWS(run_experiment(cfg));
}

TEST_CASE("summary counters") {
    ExperimentConfig cfg;
    cfg.mode = ExperimentMode::p_half;
    cfg.replicates = 200;
    cfg.base_seed = 2;
    const auto s = summarize(run_experiment(cfg));
    CHECK(s.replicates == 200);
    CHECK(s.bias_ordering == 200);
    CHECK(s.variance_ordering == 200);
    const auto j = s.to_json();
    CHECK(j.at("replicates") == 200);
}

TEST_CASE("byte-identical output across thread counts") {
    ExperimentConfig cfg;
    cfg.replicates = 40;
    cfg.base_seed = 5;
    cfg.mode = ExperimentMode::rho_zero;
    setenv("CORRBERN_THREADS", "1", 1);
    std::ostringstream a;
    write_experiment_csv(a, run_experiment(cfg));
    setenv("CORRBERN_THREADS", "5", 1);
    std::ostringstream b;
    write_experiment_csv(b, run_experiment(cfg));
    unsetenv("CORRBERN_THREADS");
    CHECK(a.str() == b.str());
}

TEST_CASE("exact report") {
    SUBCASE("homogeneous independent") {
        const auto j = exact_report(ModelParams({0.4, 0.4, 0.4}, {0, 0, 0}));
        CHECK(j.at("spec_version") == kReportFormatVersion);
        CHECK(std::abs(j.at("rho_H").get<double>()) < 1e-15);
        CHECK(std::abs(j.at("rho_T").get<double>()) < 1e-15);
    }
    SUBCASE("perfect correlation") {
        const ModelParams params({0.3, 0.6, 0.8}, {1, 1, 1});
        const auto j = exact_report(params);
        CHECK(j.at("E_delta").get<double>() == 0.0);
        // Every point has x = y; only the two convention points are not 1.
        const double p_deg = j.at("degenerate_point_probability").get<double>();
        CHECK(std::abs(p_deg - (0.7 * 0.4 * 0.2 + 0.3 * 0.6 * 0.8)) < 1e-15);
        CHECK(std::abs(j.at("E_str").get<double>() - (1.0 - p_deg)) < 1e-12);
        CHECK(j.at("E_str_convention_contribution").get<double>() == 0.0);
        const auto j2 = exact_report(params, 1.0);
        CHECK(std::abs(j2.at("E_str").get<double>() - 1.0) < 1e-12);
        CHECK(std::abs(j2.at("E_str_convention_contribution").get<double>() - p_deg) < 1e-15);
    }
    SUBCASE("fields") {
        const auto j = exact_report(ModelParams({0.2, 0.55, 0.9}, {0.3, 0.0, 0.75}));
        for (const char* k : {"mu", "sigma2", "rho_H", "rho_T", "E_delta", "E_str", "E_strprime", "Var_str",
                              "Var_strbar", "Var_strprime", "MSE_strbar_vs_rhoT", "MSE_strprime_vs_rhoT"})
            CHECK(j.contains(k));
        CHECK(std::abs(j.at("E_delta").get<double>() - j.at("E_delta_closed_form").get<double>()) < 1e-12);
    }
}

TEST_CASE("degenerate report") {
    const auto one = degenerate_report(0.25, {0.15});
    CHECK(one.at("solutions").size() == 1);
    CHECK(one.at("pairwise").empty());
    CHECK(one.at("max_abs_diff").is_null());

    const auto two = degenerate_report(0.25, {0.15, 0.35});
    CHECK(std::abs(two.at("max_abs_diff").get<double>() - 0.5786864090199304) < 1e-8);
    for (const auto& r : two.at("residuals")) CHECK(r.get<double>() < 1e-9);
    CHECK_THROWS_AS(degenerate_report(0.25, {0.6}), std::domain_error);
}
