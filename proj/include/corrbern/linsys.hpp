#ifndef CORRBERN_LINSYS_HPP
#define CORRBERN_LINSYS_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "corrbern/balance.hpp"
#include "corrbern/stats.hpp"

namespace corrbern {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Exponent tuples (k_1..k_N) in {0,1,2}^N and disagreement classes share one
// ordering: base-3 digits, component 1 most significant, STAR as digit 1.

/// A = [[1,0,0],[-2,1,0],[1,-1,1]]; column h holds the monomial coefficients of
/// the per-point probability (1-p)^2, p(1-p), p^2 when rho = 0.
Eigen::Matrix3d base_matrix_a();

inline constexpr std::size_t kMaxKroneckerComponents = 8;

/// Dense N-fold Kronecker power of A (3^N x 3^N).
Matrix kron_power_a(std::size_t n);

/// (B ⊗ B ⊗ ... ⊗ B) v without forming the Kronecker product.
Vector apply_kron_power(const Eigen::Matrix3d& base, std::size_t n, const Vector& v);

/// Solves L x = b for lower-triangular L by forward substitution. Throws
/// std::domain_error on a zero pivot.
Vector forward_substitute(const Matrix& lower, const Vector& rhs);

/// Monomial coefficients of E(stat) on the independence slice (all rho = 0),
/// i.e. [⊗^N A] times the class-sum vector.
Vector expectation_polynomial(const Statistic& stat, std::size_t n);

/// Evaluates a coefficient vector at p.
double evaluate_polynomial(const Vector& coeffs, std::span<const double> p);

/// Per-point probability of class h at (p, rho = 0): product of (1-p)^2, p(1-p), p^2.
double independent_point_probability(const DisagreementVector& h, std::span<const double> p);

/// The same probability expanded through the entries of A:
/// sum over k of prod_j A[k_j, h_j] * prod_j p_j^k_j.
double kronecker_expansion(const DisagreementVector& h, std::span<const double> p);

/// True iff S and T have identical class sums. Cross-checks at random points
/// of the independence slice that the expectations agree exactly when the
/// class sums do; throws std::logic_error if that ever fails.
bool verify_unbiasedness_characterization(const Statistic& stat_s, const Statistic& stat_t, std::size_t n);

/// True iff the matrix has a trivial nullspace, confirmed by a rank-revealing
/// factorization plus forward-substitution spot checks on random right-hand
/// sides.
bool verify_completeness(const Matrix& system);
bool verify_completeness(std::size_t n);

struct NonPolynomialityReport {
    double max_residual = 0.0;
    /// False when N = 1, where the argument does not apply.
    bool conclusive = false;
};

/// Interpolates `target` on the 3^N tensor grid axis^N by the unique
/// polynomial of per-variable degree <= 2 and returns the largest deviation at
/// the probe points.
double polynomial_fit_residual(const std::function<double(std::span<const double>)>& target, std::size_t n,
                               const std::array<double, 3>& axis, std::span<const std::vector<double>> probes);

/// Residual of the best per-variable-quadratic match to rho_H (rho = 0). A
/// positive residual means rho_H is not such a polynomial, so no statistic is
/// unbiased for it.
NonPolynomialityReport check_no_unbiased_estimator_rho_h(std::size_t n, const std::array<double, 3>& axis,
                                                          std::span<const std::vector<double>> probes);

/// A statistic unbiased for rho_E vanishes on the independence slice, so its
/// class sums solve [⊗^N A] v = 0. Returns true when that forces v = 0 while a
/// parameter point with rho_E != 0 exists.
bool check_no_unbiased_estimator_rho_e(const Matrix& system);
bool check_no_unbiased_estimator_rho_e(std::size_t n);

/// Raised when a target polynomial is outside the span of the point
/// probabilities, i.e. nothing is unbiased for it.
class no_unbiased_estimator_error : public std::domain_error {
public:
    no_unbiased_estimator_error(const std::string& what, double residual)
        : std::domain_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

using Quartic = std::array<double, 5>;

/// N = 2, rho = 0, known mean mu: p_1 = p and p_2 = 2 mu - p with p in
/// (mu - delta, mu + delta), delta = min(mu, 1 - mu). Points z_0..z_15 use the
/// GraphPair numbering (bit 0 = x_1, bit 1 = x_2, bit 2 = y_1, bit 3 = y_2).
class DegenerateSystem {
public:
    explicit DegenerateSystem(double mu);

    double mu() const noexcept { return mu_; }
    double delta_radius() const noexcept { return delta_; }
    /// 5 x 16; column j holds the coefficients of p^0..p^4 in phi_{z_j}.
    const Matrix& coefficients() const noexcept { return m_; }
    const std::array<Quartic, 16>& phi() const noexcept { return phi_; }

    /// phi_{z_j}(p) for all j.
    Vector point_probabilities(double p) const;
    bool contains(double p) const noexcept;
    /// Coefficients M * S for a statistic given as its 16 point values.
    Vector expectation(const Vector& values) const;
    /// 16 point values of a statistic.
    static Vector tabulate(const Statistic& stat);
    static DisagreementVector point_class(std::size_t j);

private:
    double mu_;
    double delta_;
    std::array<Quartic, 16> phi_{};
    Matrix m_;
};

/// Minimum-variance (at p) statistic among all S with M S = g, via the
/// pseudoinverse of the column-reweighted system M' = M diag(1/sqrt(w)).
/// Throws std::domain_error when p is outside the open interval and
/// no_unbiased_estimator_error when g is not in the column space of M.
Vector degenerate_min_variance(const DegenerateSystem& system, const Vector& g, double p);

/// Sum over points of w_j * S_j^2 minus (sum w_j S_j)^2.
double degenerate_variance(const DegenerateSystem& system, const Vector& values, double p);

} // namespace corrbern

#endif
