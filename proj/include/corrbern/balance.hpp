#ifndef CORRBERN_BALANCE_HPP
#define CORRBERN_BALANCE_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include "corrbern/model.hpp"
#include "corrbern/stats.hpp"

namespace corrbern {

/// A real-valued statistic on the sample space.
///
/// `balanced` marks statistics known to be constant on every disagreement
/// class; exact enumeration may then work class by class instead of point by
/// point. Leaving it false is always safe.
struct Statistic {
    std::string name;
    std::function<double(const GraphPair&)> eval;
    bool balanced = false;

    double operator()(const GraphPair& point) const { return eval(point); }
};

/// Largest Delta for which balance_brute will enumerate a class (2^25 points).
inline constexpr std::size_t kMaxBruteForceDelta = 25;

/// Largest N accepted by is_balanced.
inline constexpr std::size_t kMaxBalanceCheckComponents = 8;

/// Mean of `stat` over the disagreement class containing `point`.
double balance_brute(const Statistic& stat, const GraphPair& point);

/// Statistic whose value at a point is balance_brute(stat, point).
Statistic balanced_variant(const Statistic& stat);

/// Exhaustive class-constancy check over all 3^n classes (absolute tolerance 1e-12).
bool is_balanced(const Statistic& stat, std::size_t n);

/// Closed-form balanced dX*dY: dXY^2 - Delta/(4N^2).
double balanced_dxdy(const GraphPair& point);

/// Balanced numerator over balanced denominator of the alignment strength:
/// (dCap - dXY^2 + Delta/(4N^2)) / (dXY(1 - dXY) + Delta/(4N^2)).
double modified_alignment_strength(const GraphPair& point, double convention = kDegenerateConvention);

/// Same statistic in the form
/// (dCap - dXdY + c) / (dXY - dXdY + c) with c = (Delta/N^2 - (dX - dY)^2) / 4.
double modified_alignment_strength_expanded(const GraphPair& point, double convention = kDegenerateConvention);

/// Balanced alignment strength in O(Delta) operations.
///
/// Members of the class differ only in how many STAR positions carry x = 1;
/// with i such positions, dX = dCap + i/N and dY = dCap + (Delta - i)/N.
/// The class mean is the C(Delta, i)-weighted mean over i. Weights are built
/// outward from the central term by ratio updates and normalized at the end,
/// so nothing overflows or underflows for large Delta.
double balanced_alignment_strength(const GraphPair& point, double convention = kDegenerateConvention);

/// dXY(1 - dXY) - (1/(2N))(1 - 1/(2N)) Delta; unbiased for sigma^2 when every rho_i = 0.
double sigma2_umvue(const GraphPair& point);

/// a*A + b*B for balanced A, B.
Statistic balanced_sum(const Statistic& stat_a, const Statistic& stat_b, double a, double b);

/// A*B for balanced A, B.
Statistic balanced_product(const Statistic& stat_a, const Statistic& stat_b);

/// A/B for balanced A, B. Evaluating on a class where B is zero throws
/// std::domain_error naming the class.
Statistic balanced_quotient(const Statistic& numerator, const Statistic& denominator);

namespace statistics {

Statistic constant(double c);
Statistic delta();
Statistic dx();
Statistic dy();
Statistic dxy();
Statistic dcap();
Statistic dx_times_dy();
/// dX(1 - dY) + (1 - dX)dY, the expected disagreement rate under a random alignment.
Statistic random_alignment_rate();
/// dCap - dX dY.
Statistic str_numerator();
/// dXY - dX dY.
Statistic str_denominator();
Statistic alignment_strength(double convention = kDegenerateConvention);
Statistic balanced_alignment_strength(double convention = kDegenerateConvention);
Statistic modified_alignment_strength(double convention = kDegenerateConvention);
Statistic balanced_dxdy();
Statistic sigma2_umvue();

} // namespace statistics

} // namespace corrbern

#endif
