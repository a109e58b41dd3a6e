#ifndef CORRBERN_VERIFY_HPP
#define CORRBERN_VERIFY_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "corrbern/model.hpp"

namespace corrbern {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

enum class VerifyLevel { fast, full };

VerifyLevel parse_level(const std::string& name);

using PointFunction = std::function<double(const GraphPair&)>;

// Each check enumerates every point for N = 1..max_n unless noted.

CheckResult check_density_identities(std::size_t max_n);
/// Difference form and correlation-ratio form of the alignment strength agree.
CheckResult check_alignment_forms(std::size_t max_n);
/// `impl` against the brute-force class mean of the alignment strength (tol 1e-10).
CheckResult check_strbar_oracle(const PointFunction& impl, std::size_t max_n);
/// Closed-form str' (both forms) against brute-force balanced numerator / denominator.
CheckResult check_strprime_oracle(std::size_t max_n);
CheckResult check_balanced_dxdy_oracle(std::size_t max_n);
/// Exhaustive class-constancy of the statistics flagged balanced.
CheckResult check_balanced_flags(std::size_t n);
/// Coefficient expansion through A against the direct product at random (h, p).
CheckResult check_kronecker_identity(std::size_t max_n, std::size_t pairs, std::uint64_t seed);
CheckResult check_completeness(std::size_t max_n);
CheckResult check_rho_h_nonexistence();
CheckResult check_rho_e_nonexistence(std::size_t max_n);
/// E of the sigma^2 statistic equals sigma^2 at random p with rho = 0.
CheckResult check_sigma2_unbiased(std::size_t max_n, std::size_t points, std::uint64_t seed);

/// Residual above which rho_H counts as provably non-polynomial at N = 2 on
/// the (0.3, 0.5, 0.7) grid.
inline constexpr double kRhoHResidualThreshold = 1e-3;

std::vector<CheckResult> run_verification(VerifyLevel level);

} // namespace corrbern

#endif
