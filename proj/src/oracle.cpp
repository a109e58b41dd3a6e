#include "corrbern/oracle.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "compensated_sum.hpp"
#include "parallel.hpp"

namespace corrbern {

namespace {

constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 14;

struct Block {
    std::uint64_t begin;
    std::uint64_t end;
};

Block partition_block(std::uint64_t total, std::size_t part) {
    return {total * part / kEnumerationPartitions, total * (part + 1) / kEnumerationPartitions};
}

// Sums fn(k) over [0, total) in fixed blocks; block totals merge in order.
template <typename Fn>
double partitioned_sum(std::uint64_t total, Fn&& fn) {
    std::array<detail::CompensatedSum, kEnumerationPartitions> parts{};
    auto run = [&](std::size_t part) {
        const auto [b, e] = partition_block(total, part);
        for (std::uint64_t k = b; k < e; ++k) parts[part].add(fn(k));
    };
    detail::parallel_for(kEnumerationPartitions, run, total >= kParallelThreshold ? detail::worker_count() : 1);
    detail::CompensatedSum all;
    for (const auto& p : parts) all.merge(p);
    return all.value();
}

void require_enumerable(std::size_t n) {
    if (n == 0 || n > kMaxPointEnumeration)
        throw capacity_error("exact enumeration supports 1 <= N <= 10 (4^N points); use Monte Carlo sampling for N = " +
                             std::to_string(n));
}

} // namespace

ExactMoments moments_from_values(std::span<const double> values, std::span<const double> probs) {
    if (values.size() != probs.size()) throw std::invalid_argument("values and probabilities differ in length");
    const std::uint64_t total = values.size();
    ExactMoments m;
    m.mean = partitioned_sum(total, [&](std::uint64_t k) { return probs[k] * values[k]; });
    m.second_moment = partitioned_sum(total, [&](std::uint64_t k) { return probs[k] * values[k] * values[k]; });
    const double mean = m.mean;
    m.variance = partitioned_sum(total, [&](std::uint64_t k) {
        const double d = values[k] - mean;
        return probs[k] * d * d;
    });
    m.variance = std::max(m.variance, 0.0);
    return m;
}

std::vector<double> tabulate(const Statistic& stat, std::size_t n) {
    require_enumerable(n);
    const std::uint64_t total = pow_u64(4, n);
    std::vector<double> values(total);
    auto run = [&](std::size_t part) {
        const auto [b, e] = partition_block(total, part);
        GraphPair point = GraphPair::from_index(0, n);
        for (std::uint64_t k = b; k < e; ++k) {
            point.assign_index(k);
            values[k] = stat(point);
        }
    };
    detail::parallel_for(kEnumerationPartitions, run, total >= kParallelThreshold ? detail::worker_count() : 1);
    return values;
}

ExactMoments exact_moments_pointwise(const Statistic& stat, const ModelParams& params) {
    require_enumerable(params.size());
    const auto values = tabulate(stat, params.size());
    const auto probs = point_probabilities(params);
    return moments_from_values(values, probs);
}

ExactMoments exact_moments_by_class(const Statistic& stat, const ModelParams& params) {
    require_enumerable(params.size());
    const std::size_t n = params.size();
    const auto table = class_probabilities(params);
    std::vector<double> values(table.size());
    for (std::uint64_t c = 0; c < table.size(); ++c)
        values[c] = stat(DisagreementVector::from_index(c, n).representative());
    return moments_from_values(values, table.values());
}

ExactMoments exact_moments(const Statistic& stat, const ModelParams& params) {
    return stat.balanced ? exact_moments_by_class(stat, params) : exact_moments_pointwise(stat, params);
}

double ClassProbabilityTable::total() const {
    detail::CompensatedSum s;
    for (double v : probs_) s.add(v);
    return s.value();
}

ClassProbabilityTable class_probabilities(const ModelParams& params) {
    const std::size_t n = params.size();
    if (n > kMaxClassTableComponents) throw capacity_error("class probability table supports N <= 16");
    // Component 0 is the most significant base-3 digit, so it is expanded first.
    std::vector<double> probs{1.0};
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = params.cell(i);
        std::vector<double> next(probs.size() * 3);
        for (std::size_t k = 0; k < probs.size(); ++k) {
            next[3 * k + 0] = probs[k] * c.q0;
            next[3 * k + 1] = probs[k] * 2.0 * c.qstar;
            next[3 * k + 2] = probs[k] * c.q1;
        }
        probs = std::move(next);
    }
    return ClassProbabilityTable(n, std::move(probs));
}

std::vector<double> class_sum_vector(const Statistic& stat, std::size_t n) {
    if (n == 0 || n > kMaxClassSumComponents) throw capacity_error("class_sum_vector supports 1 <= N <= 8");
    const std::uint64_t total = pow_u64(4, n);
    std::vector<detail::CompensatedSum> sums(pow_u64(3, n));
    GraphPair point = GraphPair::from_index(0, n);
    for (std::uint64_t k = 0; k < total; ++k) {
        point.assign_index(k);
        sums[disagreement_vector(point).index()].add(stat(point));
    }
    std::vector<double> out(sums.size());
    std::transform(sums.begin(), sums.end(), out.begin(), [](const auto& s) { return s.value(); });
    return out;
}

double mse_against(const Statistic& stat, double target, const ModelParams& params) {
    const auto m = exact_moments(stat, params);
    const double bias = m.mean - target;
    return m.variance + bias * bias;
}

} // namespace corrbern
