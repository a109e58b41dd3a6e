#ifndef CORRBERN_STATS_HPP
#define CORRBERN_STATS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "corrbern/model.hpp"

namespace corrbern {

/// Value used for the alignment-strength family at the two points where
/// x and y are both all-zeros or both all-ones.
inline constexpr double kDegenerateConvention = 0.0;

/// Per-component agreement pattern. Ordering ZERO < STAR < ONE is the
/// lexicographic ordering of disagreement classes (STAR sits at 1/2).
enum class Agreement : std::uint8_t { zero = 0, star = 1, one = 2 };

class DisagreementVector {
public:
    DisagreementVector() = default;
    explicit DisagreementVector(std::vector<Agreement> h);

    std::size_t size() const noexcept { return h_.size(); }
    Agreement operator[](std::size_t i) const { return h_[i]; }
    const std::vector<Agreement>& entries() const noexcept { return h_; }

    /// Number of STAR entries.
    std::size_t delta() const noexcept { return delta_; }
    /// |X_h| = 2^delta.
    std::uint64_t class_size() const noexcept { return std::uint64_t{1} << delta_; }

    /// Base-3 index, leftmost component most significant.
    std::uint64_t index() const;
    static DisagreementVector from_index(std::uint64_t index, std::size_t n);

    /// First member of the class: STAR positions take (x, y) = (1, 0).
    GraphPair representative() const;

    std::string to_string() const;

    bool operator==(const DisagreementVector& o) const { return h_ == o.h_; }

private:
    std::vector<Agreement> h_;
    std::size_t delta_ = 0;
};

DisagreementVector disagreement_vector(const GraphPair& point);

struct Densities {
    double dx = 0.0;
    double dy = 0.0;
    double dxy = 0.0;
    double dcap = 0.0;
    double dcup = 0.0;
};

Densities densities(const GraphPair& point);

std::size_t delta_stat(const GraphPair& point);

/// True when x and y are both all-zeros or both all-ones.
bool is_degenerate_point(const GraphPair& point);

/// 1 - (Delta/N) / (dX(1-dY) + (1-dX)dY).
double alignment_strength(const GraphPair& point, double convention = kDegenerateConvention);

/// (dCap - dX dY) / (dXY - dX dY); the same statistic written as a correlation ratio.
double alignment_strength_ratio_form(const GraphPair& point, double convention = kDegenerateConvention);

struct ParamFunctionals {
    double mu = 0.0;
    double sigma2 = 0.0;
    double rho_h = 0.0;
    double rho_t = 0.0;
    double expected_delta = 0.0;
};

/// Value returned for rho_H and rho_T when mu is 0 or 1.
inline constexpr double kBoundaryMuConvention = 0.0;

ParamFunctionals param_functionals(const ModelParams& params);

double total_correlation(const ModelParams& params);

} // namespace corrbern

#endif
