#include "corrbern/experiment.hpp"

#include <cmath>
#include <stdexcept>

#include "corrbern/balance.hpp"
#include "corrbern/linsys.hpp"
#include "corrbern/oracle.hpp"
#include "parallel.hpp"

namespace corrbern {

std::string to_string(ExperimentMode mode) {
    switch (mode) {
    case ExperimentMode::uniform_both: return "uniform-both";
    case ExperimentMode::rho_zero: return "rho-zero";
    case ExperimentMode::p_half: return "p-half";
    }
    return "unknown";
}

ExperimentMode parse_mode(const std::string& name) {
    if (name == "uniform-both") return ExperimentMode::uniform_both;
    if (name == "rho-zero") return ExperimentMode::rho_zero;
    if (name == "p-half") return ExperimentMode::p_half;
    throw std::invalid_argument("unknown experiment mode '" + name + "' (expected uniform-both, rho-zero or p-half)");
}

nlohmann::json ExperimentSummary::to_json() const {
    return {{"replicates", replicates},
            {"var_str_gt_var_strbar_gt_var_strprime", variance_ordering},
            {"e_str_lt_e_strprime_lt_rho_t", bias_ordering},
            {"strprime_bias_smaller", smaller_bias},
            {"mse_strprime_le_mse_strbar", mse_prime_not_worse}};
}

EstimatorTables::EstimatorTables(std::size_t n, double convention) : n_(n) {
    if (n == 0 || n > kMaxPointEnumeration)
        throw capacity_error("experiments enumerate 4^N points exactly and support 1 <= N <= 10");
    str_ = tabulate(statistics::alignment_strength(convention), n);
    str_bar_ = tabulate(statistics::balanced_alignment_strength(convention), n);
    str_prime_ = tabulate(statistics::modified_alignment_strength(convention), n);
}

ExperimentRow EstimatorTables::evaluate(std::size_t replicate_index, const ModelParams& params) const {
    if (params.size() != n_) throw std::invalid_argument("parameter length does not match the tabulated N");
    const auto probs = point_probabilities(params);
    const auto str = moments_from_values(str_, probs);
    const auto bar = moments_from_values(str_bar_, probs);
    const auto prime = moments_from_values(str_prime_, probs);

    ExperimentRow row;
    row.replicate_index = replicate_index;
    row.params = params;
    row.rho_t = total_correlation(params);
    row.e_str = str.mean;
    row.e_strprime = prime.mean;
    row.var_str = str.variance;
    row.var_strbar = bar.variance;
    row.var_strprime = prime.variance;
    row.mse_strbar = bar.variance + (bar.mean - row.rho_t) * (bar.mean - row.rho_t);
    row.mse_strprime = prime.variance + (prime.mean - row.rho_t) * (prime.mean - row.rho_t);
    return row;
}

ModelParams draw_params(ExperimentMode mode, std::size_t n, SplitMix64& rng) {
    std::vector<double> p(n), rho(n);
    // p before rho, component order, in every mode.
    for (auto& v : p) v = rng.uniform();
    for (auto& v : rho) v = rng.uniform();
    if (mode == ExperimentMode::rho_zero) std::fill(rho.begin(), rho.end(), 0.0);
    if (mode == ExperimentMode::p_half) std::fill(p.begin(), p.end(), 0.5);
    return ModelParams(std::move(p), std::move(rho));
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
    if (config.replicates == 0) throw std::invalid_argument("replicates must be >= 1");
    const EstimatorTables tables(config.n_components, config.convention);
    std::vector<ExperimentRow> rows(config.replicates);
    detail::parallel_for(config.replicates, [&](std::size_t r) {
        auto rng = SplitMix64::child(config.base_seed, r);
        rows[r] = tables.evaluate(r, draw_params(config.mode, config.n_components, rng));
    });
    return rows;
}

std::vector<ExperimentRow> evaluate_params(const std::vector<ModelParams>& params, double convention) {
    if (params.empty()) return {};
    const EstimatorTables tables(params.front().size(), convention);
    std::vector<ExperimentRow> rows(params.size());
    detail::parallel_for(params.size(), [&](std::size_t r) { rows[r] = tables.evaluate(r, params[r]); });
    return rows;
}

ExperimentSummary summarize(const std::vector<ExperimentRow>& rows) {
    ExperimentSummary s;
    s.replicates = rows.size();
    for (const auto& r : rows) {
        if (r.var_str > r.var_strbar && r.var_strbar > r.var_strprime) ++s.variance_ordering;
        if (r.e_str < r.e_strprime && r.e_strprime < r.rho_t) ++s.bias_ordering;
        if (std::abs(r.e_strprime - r.rho_t) < std::abs(r.e_str - r.rho_t)) ++s.smaller_bias;
        if (r.mse_strprime <= r.mse_strbar) ++s.mse_prime_not_worse;
    }
    return s;
}

nlohmann::json exact_report(const ModelParams& params, double convention) {
    const std::size_t n = params.size();
    const auto f = param_functionals(params);
    const auto str = exact_moments(statistics::alignment_strength(convention), params);
    const auto bar = exact_moments(statistics::balanced_alignment_strength(convention), params);
    const auto prime = exact_moments(statistics::modified_alignment_strength(convention), params);
    const auto delta = exact_moments(statistics::delta(), params);

    // The two degenerate points are the singleton classes all-ZERO and all-ONE.
    const auto table = class_probabilities(params);
    const double degenerate_probability = table[0] + table[table.size() - 1];

    auto mse = [&](const ExactMoments& m) { return m.variance + (m.mean - f.rho_t) * (m.mean - f.rho_t); };

    return {{"spec_version", kReportFormatVersion},
            {"n", n},
            {"params", params.to_json()},
            {"mu", f.mu},
            {"sigma2", f.sigma2},
            {"rho_H", f.rho_h},
            {"rho_T", f.rho_t},
            {"E_delta", delta.mean},
            {"E_delta_closed_form", f.expected_delta},
            {"E_str", str.mean},
            {"E_strbar", bar.mean},
            {"E_strprime", prime.mean},
            {"Var_str", str.variance},
            {"Var_strbar", bar.variance},
            {"Var_strprime", prime.variance},
            {"MSE_strbar_vs_rhoT", mse(bar)},
            {"MSE_strprime_vs_rhoT", mse(prime)},
            {"convention_value", convention},
            {"degenerate_point_probability", degenerate_probability},
            {"E_str_convention_contribution", degenerate_probability * convention},
            {"enumeration", {{"points", pow_u64(4, n)}, {"partitions", kEnumerationPartitions}}}};
}

nlohmann::json degenerate_report(double mu, const std::vector<double>& p_values) {
    const DegenerateSystem system(mu);
    const Vector delta_values = DegenerateSystem::tabulate(statistics::delta());
    const Vector g = system.expectation(delta_values);

    nlohmann::json solutions = nlohmann::json::array();
    nlohmann::json residuals = nlohmann::json::array();
    nlohmann::json variances = nlohmann::json::array();
    nlohmann::json delta_variances = nlohmann::json::array();
    std::vector<Vector> found;
    for (double p : p_values) {
        const Vector s = degenerate_min_variance(system, g, p);
        found.push_back(s);
        solutions.push_back(std::vector<double>(s.data(), s.data() + s.size()));
        residuals.push_back((system.coefficients() * s - g).cwiseAbs().maxCoeff());
        variances.push_back(degenerate_variance(system, s, p));
        delta_variances.push_back(degenerate_variance(system, delta_values, p));
    }

    nlohmann::json pairs = nlohmann::json::array();
    double max_diff = 0.0;
    for (std::size_t i = 0; i < found.size(); ++i)
        for (std::size_t j = i + 1; j < found.size(); ++j) {
            const double d = (found[i] - found[j]).cwiseAbs().maxCoeff();
            max_diff = std::max(max_diff, d);
            pairs.push_back({{"i", i}, {"j", j}, {"max_abs_diff", d}});
        }

    return {{"spec_version", kReportFormatVersion},
            {"mu", mu},
            {"delta_radius", system.delta_radius()},
            {"p_values", p_values},
            {"target_coefficients", std::vector<double>(g.data(), g.data() + g.size())},
            {"solutions", solutions},
            {"residuals", residuals},
            {"variances", variances},
            {"variance_of_delta", delta_variances},
            {"pairwise", pairs},
            {"max_abs_diff", found.size() > 1 ? nlohmann::json(max_diff) : nlohmann::json(nullptr)}};
}

} // namespace corrbern
