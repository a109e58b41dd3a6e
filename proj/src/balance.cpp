#include "corrbern/balance.hpp"

#include <cmath>
#include <vector>

#include "compensated_sum.hpp"

namespace corrbern {

namespace {

std::vector<std::size_t> star_positions(const GraphPair& point) {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < point.size(); ++i)
        if (point.x[i] != point.y[i]) pos.push_back(i);
    return pos;
}

void set_member(GraphPair& member, const std::vector<std::size_t>& stars, std::uint64_t mask) {
    for (std::size_t b = 0; b < stars.size(); ++b) {
        const bool x_one = (mask >> b) & 1U;
        member.x[stars[b]] = x_one ? 1 : 0;
        member.y[stars[b]] = x_one ? 0 : 1;
    }
}

double delta_over_4n2(const GraphPair& point) {
    const double n = static_cast<double>(point.size());
    return static_cast<double>(delta_stat(point)) / (4.0 * n * n);
}

void require_balanced(const Statistic& s, const char* op) {
    if (!s.balanced)
        throw std::invalid_argument(std::string(op) + " requires balanced inputs; '" + s.name + "' is not marked balanced");
}

} // namespace

double balance_brute(const Statistic& stat, const GraphPair& point) {
    const auto stars = star_positions(point);
    if (stars.size() > kMaxBruteForceDelta)
        throw capacity_error("disagreement class has 2^" + std::to_string(stars.size()) +
                             " members; brute-force balancing supports Delta <= 25");
    GraphPair member = point;
    const std::uint64_t count = std::uint64_t{1} << stars.size();
    detail::CompensatedSum sum;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        set_member(member, stars, mask);
        sum.add(stat(member));
    }
    return sum.value() / static_cast<double>(count);
}

Statistic balanced_variant(const Statistic& stat) {
    return {"balanced(" + stat.name + ")", [stat](const GraphPair& g) { return balance_brute(stat, g); }, true};
}

bool is_balanced(const Statistic& stat, std::size_t n) {
    if (n == 0 || n > kMaxBalanceCheckComponents)
        throw capacity_error("is_balanced enumerates exhaustively and supports 1 <= N <= 8");
    constexpr double tol = 1e-12;
    const std::uint64_t classes = pow_u64(3, n);
    for (std::uint64_t c = 0; c < classes; ++c) {
        const auto h = DisagreementVector::from_index(c, n);
        GraphPair member = h.representative();
        const auto stars = star_positions(member);
        const double first = stat(member);
        for (std::uint64_t mask = 1; mask < h.class_size(); ++mask) {
            set_member(member, stars, mask);
            if (std::abs(stat(member) - first) > tol) return false;
        }
    }
    return true;
}

double balanced_dxdy(const GraphPair& point) {
    const auto d = densities(point);
    return d.dxy * d.dxy - delta_over_4n2(point);
}

double modified_alignment_strength(const GraphPair& point, double convention) {
    if (is_degenerate_point(point)) return convention;
    const auto d = densities(point);
    const double c = delta_over_4n2(point);
    return (d.dcap - d.dxy * d.dxy + c) / (d.dxy * (1.0 - d.dxy) + c);
}

double modified_alignment_strength_expanded(const GraphPair& point, double convention) {
    if (is_degenerate_point(point)) return convention;
    const auto d = densities(point);
    const double n = static_cast<double>(point.size());
    const double gap = d.dx - d.dy;
    const double c = (static_cast<double>(delta_stat(point)) / (n * n) - gap * gap) / 4.0;
    const double prod = d.dx * d.dy;
    return (d.dcap - prod + c) / (d.dxy - prod + c);
}

double balanced_alignment_strength(const GraphPair& point, double convention) {
    if (is_degenerate_point(point)) return convention;
    const auto d = densities(point);
    const std::size_t delta = delta_stat(point);
    const double n = static_cast<double>(point.size());
    const double span = static_cast<double>(delta) / n;

    auto term = [&](std::size_t i) {
        const double dx = d.dcap + static_cast<double>(i) / n;
        const double dy = d.dcap + span - static_cast<double>(i) / n;
        const double prod = dx * dy;
        return (d.dcap - prod) / (d.dxy - prod);
    };

    // C(delta, i) relative to C(delta, mid), walking outward from the centre.
    const std::size_t mid = delta / 2;
    double weighted = term(mid);
    double total = 1.0;
    double w = 1.0;
    for (std::size_t i = mid + 1; i <= delta; ++i) {
        w *= static_cast<double>(delta - i + 1) / static_cast<double>(i);
        weighted += w * term(i);
        total += w;
    }
    w = 1.0;
    for (std::size_t i = mid; i-- > 0;) {
        w *= static_cast<double>(i + 1) / static_cast<double>(delta - i);
        weighted += w * term(i);
        total += w;
    }
    return weighted / total;
}

double sigma2_umvue(const GraphPair& point) {
    const auto d = densities(point);
    const double two_n = 2.0 * static_cast<double>(point.size());
    return d.dxy * (1.0 - d.dxy) - (1.0 / two_n) * (1.0 - 1.0 / two_n) * static_cast<double>(delta_stat(point));
}

Statistic balanced_sum(const Statistic& stat_a, const Statistic& stat_b, double a, double b) {
    require_balanced(stat_a, "balanced_sum");
    require_balanced(stat_b, "balanced_sum");
    return {std::to_string(a) + "*" + stat_a.name + " + " + std::to_string(b) + "*" + stat_b.name,
            [stat_a, stat_b, a, b](const GraphPair& g) { return a * stat_a(g) + b * stat_b(g); }, true};
}

Statistic balanced_product(const Statistic& stat_a, const Statistic& stat_b) {
    require_balanced(stat_a, "balanced_product");
    require_balanced(stat_b, "balanced_product");
    return {stat_a.name + " * " + stat_b.name, [stat_a, stat_b](const GraphPair& g) { return stat_a(g) * stat_b(g); },
            true};
}

Statistic balanced_quotient(const Statistic& numerator, const Statistic& denominator) {
    require_balanced(numerator, "balanced_quotient");
    require_balanced(denominator, "balanced_quotient");
    return {numerator.name + " / " + denominator.name,
            [numerator, denominator](const GraphPair& g) {
                const double den = denominator(g);
                if (den == 0.0)
                    throw std::domain_error("denominator '" + denominator.name + "' vanishes on class " +
                                            disagreement_vector(g).to_string());
                return numerator(g) / den;
            },
            true};
}

namespace statistics {

Statistic constant(double c) {
    return {"const(" + std::to_string(c) + ")", [c](const GraphPair&) { return c; }, true};
}

Statistic delta() {
    return {"delta", [](const GraphPair& g) { return static_cast<double>(delta_stat(g)); }, true};
}

Statistic dx() {
    return {"dX", [](const GraphPair& g) { return densities(g).dx; }, false};
}

Statistic dy() {
    return {"dY", [](const GraphPair& g) { return densities(g).dy; }, false};
}

Statistic dxy() {
    return {"dXY", [](const GraphPair& g) { return densities(g).dxy; }, true};
}

Statistic dcap() {
    return {"dCap", [](const GraphPair& g) { return densities(g).dcap; }, true};
}

Statistic dx_times_dy() {
    return {"dX*dY", [](const GraphPair& g) {
                const auto d = densities(g);
                return d.dx * d.dy;
            },
            false};
}

Statistic random_alignment_rate() {
    return {"dX(1-dY)+(1-dX)dY", [](const GraphPair& g) {
                const auto d = densities(g);
                return d.dx * (1.0 - d.dy) + (1.0 - d.dx) * d.dy;
            },
            false};
}

Statistic str_numerator() {
    return {"dCap-dX*dY", [](const GraphPair& g) {
                const auto d = densities(g);
                return d.dcap - d.dx * d.dy;
            },
            false};
}

Statistic str_denominator() {
    return {"dXY-dX*dY", [](const GraphPair& g) {
                const auto d = densities(g);
                return d.dxy - d.dx * d.dy;
            },
            false};
}

Statistic alignment_strength(double convention) {
    return {"str", [convention](const GraphPair& g) { return corrbern::alignment_strength(g, convention); }, false};
}

Statistic balanced_alignment_strength(double convention) {
    return {"str_bar",
            [convention](const GraphPair& g) { return corrbern::balanced_alignment_strength(g, convention); }, true};
}

Statistic modified_alignment_strength(double convention) {
    return {"str_prime",
            [convention](const GraphPair& g) { return corrbern::modified_alignment_strength(g, convention); }, true};
}

Statistic balanced_dxdy() {
    return {"balanced_dXdY", [](const GraphPair& g) { return corrbern::balanced_dxdy(g); }, true};
}

Statistic sigma2_umvue() {
    return {"sigma2_umvue", [](const GraphPair& g) { return corrbern::sigma2_umvue(g); }, true};
}

} // namespace statistics

} // namespace corrbern
