#include "corrbern/linsys.hpp"

#include <cmath>
#include <sstream>

#include "corrbern/model.hpp"
#include "corrbern/oracle.hpp"

namespace corrbern {

namespace {

constexpr double kClassSumTol = 1e-12;

void require_kron_size(std::size_t n, std::size_t max_n, const char* op) {
    if (n == 0 || n > max_n)
        throw capacity_error(std::string(op) + " supports 1 <= N <= " + std::to_string(max_n));
}

std::vector<std::size_t> base3_digits(std::uint64_t index, std::size_t n) {
    std::vector<std::size_t> d(n);
    for (std::size_t i = n; i-- > 0;) {
        d[i] = static_cast<std::size_t>(index % 3);
        index /= 3;
    }
    return d;
}

bool is_lower_triangular(const Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = r + 1; c < m.cols(); ++c)
            if (m(r, c) != 0.0) return false;
    return true;
}

Quartic multiply_linear(const Quartic& poly, double c0, double c1) {
    Quartic out{};
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] += c0 * poly[k];
        if (k + 1 < out.size()) out[k + 1] += c1 * poly[k];
    }
    return out;
}

} // namespace

Eigen::Matrix3d base_matrix_a() {
    Eigen::Matrix3d a;
    a << 1, 0, 0,
        -2, 1, 0,
         1, -1, 1;
    return a;
}

Matrix kron_power_a(std::size_t n) {
    require_kron_size(n, kMaxKroneckerComponents, "kron_power_a");
    const Eigen::Matrix3d a = base_matrix_a();
    Matrix result = Matrix::Ones(1, 1);
    for (std::size_t step = 0; step < n; ++step) {
        const Eigen::Index s = result.rows();
        Matrix next(s * 3, s * 3);
        for (Eigen::Index r = 0; r < s; ++r)
            for (Eigen::Index c = 0; c < s; ++c) next.block(r * 3, c * 3, 3, 3) = result(r, c) * a;
        result = std::move(next);
    }
    return result;
}

Vector apply_kron_power(const Eigen::Matrix3d& base, std::size_t n, const Vector& v) {
    const auto total = static_cast<Eigen::Index>(pow_u64(3, n));
    if (v.size() != total) throw std::invalid_argument("vector length must be 3^N");
    Vector out = v;
    Eigen::Index stride = total;
    for (std::size_t axis = 0; axis < n; ++axis) {
        stride /= 3;
        const Eigen::Index block = stride * 3;
        for (Eigen::Index start = 0; start < total; start += block) {
            for (Eigen::Index off = 0; off < stride; ++off) {
                const Eigen::Index i0 = start + off;
                const Eigen::Vector3d in(out(i0), out(i0 + stride), out(i0 + 2 * stride));
                const Eigen::Vector3d res = base * in;
                out(i0) = res(0);
                out(i0 + stride) = res(1);
                out(i0 + 2 * stride) = res(2);
            }
        }
    }
    return out;
}

Vector forward_substitute(const Matrix& lower, const Vector& rhs) {
    if (lower.rows() != lower.cols() || lower.rows() != rhs.size())
        throw std::invalid_argument("forward_substitute needs a square system matching the right-hand side");
    Vector x(rhs.size());
    for (Eigen::Index r = 0; r < lower.rows(); ++r) {
        const double pivot = lower(r, r);
        if (pivot == 0.0) throw std::domain_error("zero pivot at row " + std::to_string(r));
        double acc = rhs(r);
        for (Eigen::Index c = 0; c < r; ++c) acc -= lower(r, c) * x(c);
        x(r) = acc / pivot;
    }
    return x;
}

Vector expectation_polynomial(const Statistic& stat, std::size_t n) {
    const auto sums = class_sum_vector(stat, n);
    return apply_kron_power(base_matrix_a(), n, Eigen::Map<const Vector>(sums.data(), static_cast<Eigen::Index>(sums.size())));
}

double evaluate_polynomial(const Vector& coeffs, std::span<const double> p) {
    const std::size_t n = p.size();
    if (static_cast<std::uint64_t>(coeffs.size()) != pow_u64(3, n))
        throw std::invalid_argument("coefficient vector length must be 3^N");
    double total = 0.0;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        if (coeffs(k) == 0.0) continue;
        const auto digits = base3_digits(static_cast<std::uint64_t>(k), n);
        double mono = coeffs(k);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t e = 0; e < digits[j]; ++e) mono *= p[j];
        total += mono;
    }
    return total;
}

double independent_point_probability(const DisagreementVector& h, std::span<const double> p) {
    if (h.size() != p.size()) throw std::invalid_argument("class and parameter lengths differ");
    double prob = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        switch (h[i]) {
        case Agreement::zero: prob *= (1.0 - p[i]) * (1.0 - p[i]); break;
        case Agreement::star: prob *= p[i] * (1.0 - p[i]); break;
        case Agreement::one: prob *= p[i] * p[i]; break;
        }
    }
    return prob;
}

double kronecker_expansion(const DisagreementVector& h, std::span<const double> p) {
    const std::size_t n = h.size();
    if (n != p.size()) throw std::invalid_argument("class and parameter lengths differ");
    const Eigen::Matrix3d a = base_matrix_a();
    const std::uint64_t total = pow_u64(3, n);
    double sum = 0.0;
    for (std::uint64_t k = 0; k < total; ++k) {
        const auto digits = base3_digits(k, n);
        double term = 1.0;
        for (std::size_t j = 0; j < n && term != 0.0; ++j) {
            term *= a(static_cast<Eigen::Index>(digits[j]), static_cast<Eigen::Index>(h[j]));
            term *= std::pow(p[j], static_cast<double>(digits[j]));
        }
        sum += term;
    }
    return sum;
}

bool verify_unbiasedness_characterization(const Statistic& stat_s, const Statistic& stat_t, std::size_t n) {
    const auto sums_s = class_sum_vector(stat_s, n);
    const auto sums_t = class_sum_vector(stat_t, n);
    bool equal = true;
    for (std::size_t c = 0; c < sums_s.size(); ++c)
        if (std::abs(sums_s[c] - sums_t[c]) > kClassSumTol * std::max(1.0, std::abs(sums_s[c]))) equal = false;

    if (equal) {
        SplitMix64 rng(0x5eed5eedULL + n);
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<double> p(n);
            for (auto& v : p) v = 0.05 + 0.9 * rng.uniform();
            const ModelParams params(p, std::vector<double>(n, 0.0));
            const double es = exact_moments_pointwise(stat_s, params).mean;
            const double et = exact_moments_pointwise(stat_t, params).mean;
            if (std::abs(es - et) > 1e-10)
                throw std::logic_error("equal class sums but different expectations for " + stat_s.name + " and " +
                                       stat_t.name);
        }
    } else {
        const Vector poly_s = expectation_polynomial(stat_s, n);
        const Vector poly_t = expectation_polynomial(stat_t, n);
        if ((poly_s - poly_t).cwiseAbs().maxCoeff() <= kClassSumTol)
            throw std::logic_error("different class sums mapped to one expectation polynomial");
    }
    return equal;
}

bool verify_completeness(const Matrix& system) {
    if (system.rows() != system.cols() || system.rows() == 0) return false;
    Eigen::FullPivLU<Matrix> lu(system);
    if (lu.rank() != system.rows()) return false;

    const bool triangular = is_lower_triangular(system);
    auto solve = [&](const Vector& b) -> Vector { return triangular ? forward_substitute(system, b) : lu.solve(b); };

    const Vector zero = Vector::Zero(system.rows());
    if (solve(zero).cwiseAbs().maxCoeff() != 0.0) return false;

    SplitMix64 rng(0xc0ffeeULL);
    for (int trial = 0; trial < 3; ++trial) {
        Vector b(system.rows());
        for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = 2.0 * rng.uniform() - 1.0;
        const Vector x = solve(b);
        if (!x.allFinite()) return false;
        if ((system * x - b).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, b.cwiseAbs().maxCoeff())) return false;
    }
    return true;
}

bool verify_completeness(std::size_t n) {
    require_kron_size(n, 6, "verify_completeness");
    return verify_completeness(kron_power_a(n));
}

double polynomial_fit_residual(const std::function<double(std::span<const double>)>& target, std::size_t n,
                               const std::array<double, 3>& axis, std::span<const std::vector<double>> probes) {
    require_kron_size(n, kMaxKroneckerComponents, "polynomial_fit_residual");
    if (axis[0] == axis[1] || axis[0] == axis[2] || axis[1] == axis[2])
        throw std::domain_error("interpolation grid needs three distinct axis values");

    Eigen::Matrix3d vandermonde;
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k) vandermonde(r, k) = std::pow(axis[static_cast<std::size_t>(r)], k);

    const std::uint64_t total = pow_u64(3, n);
    Vector grid_values(static_cast<Eigen::Index>(total));
    std::vector<double> point(n);
    for (std::uint64_t g = 0; g < total; ++g) {
        const auto digits = base3_digits(g, n);
        for (std::size_t j = 0; j < n; ++j) point[j] = axis[digits[j]];
        grid_values(static_cast<Eigen::Index>(g)) = target(point);
    }
    const Vector coeffs = apply_kron_power(vandermonde.inverse(), n, grid_values);

    double worst = 0.0;
    for (const auto& probe : probes) {
        if (probe.size() != n) throw std::invalid_argument("probe dimension must equal N");
        worst = std::max(worst, std::abs(evaluate_polynomial(coeffs, probe) - target(probe)));
    }
    return worst;
}

NonPolynomialityReport check_no_unbiased_estimator_rho_h(std::size_t n, const std::array<double, 3>& axis,
                                                          std::span<const std::vector<double>> probes) {
    auto rho_h = [n](std::span<const double> p) {
        return param_functionals(ModelParams(std::vector<double>(p.begin(), p.end()), std::vector<double>(n, 0.0))).rho_h;
    };
    return {polynomial_fit_residual(rho_h, n, axis, probes), n >= 2};
}

bool check_no_unbiased_estimator_rho_e(const Matrix& system) {
    if (!verify_completeness(system)) return false;
    const auto rows = static_cast<std::uint64_t>(system.rows());
    std::size_t n = 0;
    while (pow_u64(3, n) < rows) ++n;
    if (pow_u64(3, n) != rows) return false;

    // Unbiasedness on the independence slice, where rho_E = 0.
    const Vector class_sums = Eigen::FullPivLU<Matrix>(system).solve(Vector::Zero(system.rows()));
    if (class_sums.cwiseAbs().maxCoeff() != 0.0) return false;

    // With zero class sums the expectation is 0 everywhere, but rho_E = 1/2 here.
    const ModelParams witness(std::vector<double>(n, 0.5), std::vector<double>(n, 0.5));
    const auto table = class_probabilities(witness);
    double expectation = 0.0;
    for (std::uint64_t c = 0; c < rows; ++c) {
        const auto h = DisagreementVector::from_index(c, n);
        expectation += table[c] / static_cast<double>(h.class_size()) * class_sums(static_cast<Eigen::Index>(c));
    }
    return expectation != witness.rho(0);
}

bool check_no_unbiased_estimator_rho_e(std::size_t n) {
    require_kron_size(n, 5, "check_no_unbiased_estimator_rho_e");
    return check_no_unbiased_estimator_rho_e(kron_power_a(n));
}

DegenerateSystem::DegenerateSystem(double mu) : mu_(mu), delta_(std::min(mu, 1.0 - mu)), m_(5, 16) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("mu must lie in (0,1)");
    for (std::size_t j = 0; j < 16; ++j) {
        const bool x1 = j & 1U, x2 = j & 2U, y1 = j & 4U, y2 = j & 8U;
        Quartic poly{1.0, 0.0, 0.0, 0.0, 0.0};
        // Component 1 has p_1 = p; component 2 has p_2 = 2mu - p.
        poly = x1 ? multiply_linear(poly, 0.0, 1.0) : multiply_linear(poly, 1.0, -1.0);
        poly = y1 ? multiply_linear(poly, 0.0, 1.0) : multiply_linear(poly, 1.0, -1.0);
        poly = x2 ? multiply_linear(poly, 2.0 * mu, -1.0) : multiply_linear(poly, 1.0 - 2.0 * mu, 1.0);
        poly = y2 ? multiply_linear(poly, 2.0 * mu, -1.0) : multiply_linear(poly, 1.0 - 2.0 * mu, 1.0);
        phi_[j] = poly;
        for (std::size_t k = 0; k < 5; ++k) m_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = poly[k];
    }
}

Vector DegenerateSystem::point_probabilities(double p) const {
    Vector powers(5);
    powers << 1.0, p, p * p, p * p * p, p * p * p * p;
    return m_.transpose() * powers;
}

bool DegenerateSystem::contains(double p) const noexcept { return p > mu_ - delta_ && p < mu_ + delta_; }

Vector DegenerateSystem::expectation(const Vector& values) const { return m_ * values; }

Vector DegenerateSystem::tabulate(const Statistic& stat) {
    Vector v(16);
    for (std::size_t j = 0; j < 16; ++j) v(static_cast<Eigen::Index>(j)) = stat(GraphPair::from_index(j, 2));
    return v;
}

DisagreementVector DegenerateSystem::point_class(std::size_t j) { return disagreement_vector(GraphPair::from_index(j, 2)); }

Vector degenerate_min_variance(const DegenerateSystem& system, const Vector& g, double p) {
    if (g.size() != 5) throw std::invalid_argument("target polynomial must have 5 coefficients (degree <= 4)");
    if (!system.contains(p)) {
        std::ostringstream os;
        os << "p = " << p << " is outside (" << system.mu() - system.delta_radius() << ", "
           << system.mu() + system.delta_radius() << ")";
        throw std::domain_error(os.str());
    }
    const Vector weights = system.point_probabilities(p);
    const Vector root = weights.cwiseSqrt();
    const Matrix reweighted = system.coefficients() * root.cwiseInverse().asDiagonal();

    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(reweighted);
    cod.setThreshold(1e-10);
    const Vector scaled = cod.pseudoInverse() * g;
    const Vector solution = scaled.cwiseQuotient(root);

    const double residual = (system.coefficients() * solution - g).cwiseAbs().maxCoeff();
    if (residual > 1e-9) {
        std::ostringstream os;
        os << "target is not in the span of the point probabilities (least-squares residual " << residual << ")";
        throw no_unbiased_estimator_error(os.str(), residual);
    }
    return solution;
}

double degenerate_variance(const DegenerateSystem& system, const Vector& values, double p) {
    const Vector w = system.point_probabilities(p);
    const double mean = w.dot(values);
    return w.dot(values.cwiseProduct(values)) - mean * mean;
}

} // namespace corrbern
