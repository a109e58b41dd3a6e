#ifndef CORRBERN_ORACLE_HPP
#define CORRBERN_ORACLE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "corrbern/balance.hpp"
#include "corrbern/model.hpp"

namespace corrbern {

struct ExactMoments {
    double mean = 0.0;
    double variance = 0.0;
    double second_moment = 0.0;
};

/// Enumeration sums are split into this many contiguous index blocks and the
/// block totals are combined in order, independent of the worker count.
inline constexpr std::size_t kEnumerationPartitions = 16;

inline constexpr std::size_t kMaxClassTableComponents = 16;
inline constexpr std::size_t kMaxClassSumComponents = 8;

/// Exact mean/variance over the 4^N sample space. Balanced statistics are
/// evaluated once per disagreement class; others once per point.
ExactMoments exact_moments(const Statistic& stat, const ModelParams& params);

/// Always enumerates all 4^N points.
ExactMoments exact_moments_pointwise(const Statistic& stat, const ModelParams& params);

/// Enumerates the 3^N classes using one representative each. Only valid for
/// balanced statistics.
ExactMoments exact_moments_by_class(const Statistic& stat, const ModelParams& params);

/// Moments from per-point values and probabilities (two-pass, compensated).
ExactMoments moments_from_values(std::span<const double> values, std::span<const double> probs);

/// Values of `stat` at all 4^n points, indexed as in GraphPair::index().
std::vector<double> tabulate(const Statistic& stat, std::size_t n);

/// Probability of each disagreement class, indexed lexicographically.
class ClassProbabilityTable {
public:
    ClassProbabilityTable(std::size_t n, std::vector<double> probs) : n_(n), probs_(std::move(probs)) {}

    std::size_t components() const noexcept { return n_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t class_index) const { return probs_[class_index]; }
    std::span<const double> values() const noexcept { return probs_; }
    double total() const;

private:
    std::size_t n_;
    std::vector<double> probs_;
};

ClassProbabilityTable class_probabilities(const ModelParams& params);

/// Sum of `stat` over each class, classes in lexicographic order.
std::vector<double> class_sum_vector(const Statistic& stat, std::size_t n);

/// E[(stat - target)^2] = variance + bias^2.
double mse_against(const Statistic& stat, double target, const ModelParams& params);

} // namespace corrbern

#endif
