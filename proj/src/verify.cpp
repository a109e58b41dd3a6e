#include "corrbern/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "corrbern/balance.hpp"
#include "corrbern/linsys.hpp"
#include "corrbern/oracle.hpp"
#include "corrbern/stats.hpp"

namespace corrbern {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

// Largest |f(point) - g(point)| over all points for N = 1..max_n.
double max_gap(const PointFunction& f, const PointFunction& g, std::size_t max_n) {
    double worst = 0.0;
    for (std::size_t n = 1; n <= max_n; ++n) {
        const std::uint64_t total = pow_u64(4, n);
        GraphPair point = GraphPair::from_index(0, n);
        for (std::uint64_t k = 0; k < total; ++k) {
            point.assign_index(k);
            worst = std::max(worst, std::abs(f(point) - g(point)));
        }
    }
    return worst;
}

CheckResult gap_result(std::string name, double gap, double tol) {
    return {std::move(name), gap <= tol, "max |diff| = " + fmt(gap) + " (tol " + fmt(tol) + ")"};
}

std::vector<double> random_interior(SplitMix64& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = 0.05 + 0.9 * rng.uniform();
    return v;
}

} // namespace

VerifyLevel parse_level(const std::string& name) {
    if (name == "fast") return VerifyLevel::fast;
    if (name == "full") return VerifyLevel::full;
    throw std::invalid_argument("unknown verify level '" + name + "' (expected fast or full)");
}

CheckResult check_density_identities(std::size_t max_n) {
    double worst = 0.0;
    for (std::size_t n = 1; n <= max_n; ++n) {
        const auto nn = static_cast<double>(n);
        const std::uint64_t total = pow_u64(4, n);
        GraphPair point = GraphPair::from_index(0, n);
        for (std::uint64_t k = 0; k < total; ++k) {
            point.assign_index(k);
            const auto d = densities(point);
            const auto delta = static_cast<double>(delta_stat(point));
            worst = std::max({worst, std::abs(d.dx + d.dy - d.dcap - d.dcup),
                              std::abs(nn * d.dcap + delta - nn * d.dcup),
                              std::abs(d.dcap - (d.dxy - delta / (2 * nn))),
                              std::abs(d.dcup - (d.dxy + delta / (2 * nn))),
                              std::abs(d.dxy - (d.dx + d.dy) / 2)});
        }
    }
    return gap_result("density identities", worst, 1e-12);
}

CheckResult check_alignment_forms(std::size_t max_n) {
    return gap_result("alignment strength: difference form == ratio form",
                      max_gap([](const GraphPair& g) { return alignment_strength(g); },
                              [](const GraphPair& g) { return alignment_strength_ratio_form(g); }, max_n),
                      1e-12);
}

CheckResult check_strbar_oracle(const PointFunction& impl, std::size_t max_n) {
    const auto str = statistics::alignment_strength();
    return gap_result("linear-time str_bar == brute-force class mean (N <= " + std::to_string(max_n) + ")",
                      max_gap(impl, [&](const GraphPair& g) { return balance_brute(str, g); }, max_n), 1e-10);
}

CheckResult check_strprime_oracle(std::size_t max_n) {
    const auto num = statistics::str_numerator();
    const auto den = statistics::str_denominator();
    auto brute = [&](const GraphPair& g) {
        if (is_degenerate_point(g)) return kDegenerateConvention;
        return balance_brute(num, g) / balance_brute(den, g);
    };
    const double a = max_gap([](const GraphPair& g) { return modified_alignment_strength(g); }, brute, max_n);
    const double b =
        max_gap([](const GraphPair& g) { return modified_alignment_strength_expanded(g); }, brute, max_n);
    return gap_result("closed-form str' == balanced numerator / balanced denominator (N <= " +
                          std::to_string(max_n) + ")",
                      std::max(a, b), 1e-10);
}

CheckResult check_balanced_dxdy_oracle(std::size_t max_n) {
    const auto prod = statistics::dx_times_dy();
    return gap_result("closed-form balanced dX*dY == brute-force class mean",
                      max_gap([](const GraphPair& g) { return balanced_dxdy(g); },
                              [&](const GraphPair& g) { return balance_brute(prod, g); }, max_n),
                      1e-12);
}

CheckResult check_balanced_flags(std::size_t n) {
    const std::vector<Statistic> stats = {statistics::constant(1.5),
                                          statistics::delta(),
                                          statistics::dxy(),
                                          statistics::dcap(),
                                          statistics::balanced_alignment_strength(),
                                          statistics::modified_alignment_strength(),
                                          statistics::balanced_dxdy(),
                                          statistics::sigma2_umvue()};
    std::string failed;
    for (const auto& s : stats)
        if (!is_balanced(s, n)) failed += (failed.empty() ? "" : ", ") + s.name;
    return {"balanced statistics constant on every class (N = " + std::to_string(n) + ")", failed.empty(),
            failed.empty() ? std::to_string(stats.size()) + " statistics checked" : "not balanced: " + failed};
}

CheckResult check_kronecker_identity(std::size_t max_n, std::size_t pairs, std::uint64_t seed) {
    SplitMix64 rng(seed);
    double worst = 0.0;
    for (std::size_t t = 0; t < pairs; ++t) {
        const std::size_t n = 1 + t % max_n;
        const auto h = DisagreementVector::from_index(rng.next() % pow_u64(3, n), n);
        const auto p = random_interior(rng, n);
        worst = std::max(worst, std::abs(kronecker_expansion(h, p) - independent_point_probability(h, p)));
    }
    return gap_result("coefficient expansion through A == direct class probability", worst, 1e-12);
}

CheckResult check_completeness(std::size_t max_n) {
    std::string bad;
    for (std::size_t n = 1; n <= max_n; ++n) {
        const Matrix k = kron_power_a(n);
        const double det = k.determinant();
        if (!verify_completeness(k) || std::abs(det - 1.0) > 1e-9) bad += " N=" + std::to_string(n);
    }
    return {"Kronecker power of A nonsingular with determinant 1 (N <= " + std::to_string(max_n) + ")", bad.empty(),
            bad.empty() ? "trivial nullspace" : "failed at" + bad};
}

CheckResult check_rho_h_nonexistence() {
    SplitMix64 rng(0x5eed);
    std::vector<std::vector<double>> probes;
    for (int i = 0; i < 50; ++i) probes.push_back(random_interior(rng, 2));
    const std::array<double, 3> axis{0.3, 0.5, 0.7};
    const auto report = check_no_unbiased_estimator_rho_h(2, axis, probes);
    const double control = polynomial_fit_residual(
        [](std::span<const double> p) {
            return param_functionals(ModelParams({p[0], p[1]}, {0.0, 0.0})).sigma2;
        },
        2, axis, probes);
    const bool ok = report.conclusive && report.max_residual > kRhoHResidualThreshold && control <= 1e-12;
    return {"rho_H has no unbiased estimator (N = 2)", ok,
            "rho_H residual " + fmt(report.max_residual) + " > " + fmt(kRhoHResidualThreshold) +
                "; sigma^2 control residual " + fmt(control)};
}

CheckResult check_rho_e_nonexistence(std::size_t max_n) {
    std::string bad;
    for (std::size_t n = 1; n <= max_n; ++n)
        if (!check_no_unbiased_estimator_rho_e(n)) bad += " N=" + std::to_string(n);
    return {"rho_E has no unbiased estimator (N <= " + std::to_string(max_n) + ")", bad.empty(),
            bad.empty() ? "argument holds" : "failed at" + bad};
}

CheckResult check_sigma2_unbiased(std::size_t max_n, std::size_t points, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const auto stat = statistics::sigma2_umvue();
    double worst = 0.0;
    for (std::size_t t = 0; t < points; ++t) {
        const std::size_t n = 1 + t % max_n;
        const ModelParams params(random_interior(rng, n), std::vector<double>(n, 0.0));
        worst = std::max(worst, std::abs(exact_moments(stat, params).mean - param_functionals(params).sigma2));
    }
    return gap_result("sigma^2 statistic unbiased on the independence slice", worst, 1e-12);
}

std::vector<CheckResult> run_verification(VerifyLevel level) {
    const bool full = level == VerifyLevel::full;
    const std::size_t sweep = full ? 8 : 6;
    std::vector<CheckResult> out;
    out.push_back(check_density_identities(sweep));
    out.push_back(check_alignment_forms(sweep));
    out.push_back(check_strbar_oracle([](const GraphPair& g) { return balanced_alignment_strength(g); }, sweep));
    out.push_back(check_strprime_oracle(sweep));
    out.push_back(check_balanced_dxdy_oracle(sweep));
    out.push_back(check_balanced_flags(full ? 8 : 5));
    out.push_back(check_kronecker_identity(4, full ? 500 : 50, 2024));
    out.push_back(check_completeness(6));
    out.push_back(check_rho_h_nonexistence());
    out.push_back(check_rho_e_nonexistence(5));
    out.push_back(check_sigma2_unbiased(5, full ? 100 : 20, 7));
    return out;
}

} // namespace corrbern
