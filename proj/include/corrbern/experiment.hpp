#ifndef CORRBERN_EXPERIMENT_HPP
#define CORRBERN_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrbern/model.hpp"
#include "corrbern/stats.hpp"

namespace corrbern {

/// Format tag written into every JSON report.
inline constexpr const char* kReportFormatVersion = "1.0";

enum class ExperimentMode {
    uniform_both, ///< every p_i and rho_i iid Uniform[0,1)
    rho_zero,     ///< p_i uniform, rho_i = 0
    p_half,       ///< p_i = 1/2, rho_i uniform
};

std::string to_string(ExperimentMode mode);
ExperimentMode parse_mode(const std::string& name);

struct ExperimentConfig {
    ExperimentMode mode = ExperimentMode::uniform_both;
    std::size_t replicates = 200;
    /// Six components correspond to the vertex pairs of a 4-vertex graph.
    std::size_t n_components = 6;
    std::uint64_t base_seed = 0;
    double convention = kDegenerateConvention;
};

struct ExperimentRow {
    std::size_t replicate_index = 0;
    ModelParams params{{0.5}, {0.0}};
    double e_str = 0.0;
    double e_strprime = 0.0;
    double rho_t = 0.0;
    double var_str = 0.0;
    double var_strbar = 0.0;
    double var_strprime = 0.0;
    double mse_strbar = 0.0;
    double mse_strprime = 0.0;
};

struct ExperimentSummary {
    std::size_t replicates = 0;
    /// Var(str) > Var(str_bar) > Var(str_prime)
    std::size_t variance_ordering = 0;
    /// E(str) < E(str_prime) < rho_T
    std::size_t bias_ordering = 0;
    /// |E(str_prime) - rho_T| < |E(str) - rho_T|
    std::size_t smaller_bias = 0;
    /// MSE(str_prime, rho_T) <= MSE(str_bar, rho_T)
    std::size_t mse_prime_not_worse = 0;

    nlohmann::json to_json() const;
};

/// Values of str, str_bar and str_prime at every point for a fixed N; reused
/// across parameter draws since only the probabilities change.
class EstimatorTables {
public:
    explicit EstimatorTables(std::size_t n, double convention = kDegenerateConvention);

    std::size_t components() const noexcept { return n_; }
    const std::vector<double>& str() const noexcept { return str_; }
    const std::vector<double>& str_bar() const noexcept { return str_bar_; }
    const std::vector<double>& str_prime() const noexcept { return str_prime_; }

    ExperimentRow evaluate(std::size_t replicate_index, const ModelParams& params) const;

private:
    std::size_t n_;
    std::vector<double> str_;
    std::vector<double> str_bar_;
    std::vector<double> str_prime_;
};

ModelParams draw_params(ExperimentMode mode, std::size_t n, SplitMix64& rng);

/// Draws replicate r from SplitMix64::child(base_seed, r) and evaluates it
/// exactly. Replicates run concurrently; rows come back in replicate order.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

/// Evaluates given parameter rows (all of one size) instead of drawing them.
std::vector<ExperimentRow> evaluate_params(const std::vector<ModelParams>& params,
                                           double convention = kDegenerateConvention);

ExperimentSummary summarize(const std::vector<ExperimentRow>& rows);

/// Exact functionals and estimator moments for one parameter tuple.
nlohmann::json exact_report(const ModelParams& params, double convention = kDegenerateConvention);

/// Minimum-variance unbiased solutions for E(Delta) at each p with mu fixed.
nlohmann::json degenerate_report(double mu, const std::vector<double>& p_values);

} // namespace corrbern

#endif
