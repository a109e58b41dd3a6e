#ifndef CORRBERN_MODEL_HPP
#define CORRBERN_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace corrbern {

/// Raised when a request exceeds what exact enumeration can handle.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Joint probabilities of one component (X_i, Y_i).
///
/// `qstar` is the probability of a single ordered disagreement, so
/// q1 + q0 + 2 * qstar == 1.
struct EdgeCellProbs {
    double q1 = 0.0;
    double q0 = 0.0;
    double qstar = 0.0;
};

EdgeCellProbs cell_probs(double p, double rho);

/// Parameter tuple (p_1..p_N, rho_1..rho_N) of the correlated Bernoulli model.
class ModelParams {
public:
    ModelParams(std::vector<double> p, std::vector<double> rho);

    std::size_t size() const noexcept { return p_.size(); }
    double p(std::size_t i) const { return p_.at(i); }
    double rho(std::size_t i) const { return rho_.at(i); }
    std::span<const double> p() const noexcept { return p_; }
    std::span<const double> rho() const noexcept { return rho_; }

    EdgeCellProbs cell(std::size_t i) const { return cell_probs(p_.at(i), rho_.at(i)); }

    nlohmann::json to_json() const;
    static ModelParams from_json(const nlohmann::json& j);

    bool operator==(const ModelParams&) const = default;

private:
    std::vector<double> p_;
    std::vector<double> rho_;
};

/// One sample point (x, y); component i of each vector is 0 or 1.
struct GraphPair {
    std::vector<std::uint8_t> x;
    std::vector<std::uint8_t> y;

    GraphPair() = default;
    GraphPair(std::vector<std::uint8_t> x_bits, std::vector<std::uint8_t> y_bits);

    std::size_t size() const noexcept { return x.size(); }

    /// Points are numbered 0..4^N-1: bit i holds x_i, bit N+i holds y_i.
    std::uint64_t index() const;
    static GraphPair from_index(std::uint64_t index, std::size_t n);
    void assign_index(std::uint64_t index);

    /// "0110"-style bit strings, component 0 first.
    static GraphPair from_strings(const std::string& x_bits, const std::string& y_bits);
    std::string x_string() const;
    std::string y_string() const;

    bool operator==(const GraphPair&) const = default;
};

/// SplitMix64 generator; small state, cheap to split into per-replicate streams.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;
    std::uint64_t operator()() noexcept { return next(); }
    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

    /// Uniform double on [0, 1) with 53 random bits.
    double uniform() noexcept;
    bool bernoulli(double prob) noexcept { return uniform() < prob; }

    /// Child stream for replicate `index`; depends only on (seed, index).
    static SplitMix64 child(std::uint64_t seed, std::uint64_t index) noexcept;

private:
    std::uint64_t state_;
};

GraphPair sample_pair(const ModelParams& params, SplitMix64& rng);

double point_probability(const ModelParams& params, const GraphPair& point);

/// Probabilities of all 4^N points, indexed as in GraphPair::index().
std::vector<double> point_probabilities(const ModelParams& params);

inline constexpr std::size_t kMaxPointEnumeration = 10;

std::uint64_t pow_u64(std::uint64_t base, std::size_t exp);

} // namespace corrbern

#endif
