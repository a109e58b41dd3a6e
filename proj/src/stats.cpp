#include "corrbern/stats.hpp"

#include <stdexcept>

namespace corrbern {

DisagreementVector::DisagreementVector(std::vector<Agreement> h) : h_(std::move(h)) {
    for (auto a : h_)
        if (a == Agreement::star) ++delta_;
}

std::uint64_t DisagreementVector::index() const {
    std::uint64_t idx = 0;
    for (auto a : h_) idx = idx * 3 + static_cast<std::uint64_t>(a);
    return idx;
}

DisagreementVector DisagreementVector::from_index(std::uint64_t index, std::size_t n) {
    std::vector<Agreement> h(n);
    for (std::size_t i = n; i-- > 0;) {
        h[i] = static_cast<Agreement>(index % 3);
        index /= 3;
    }
    if (index != 0) throw std::out_of_range("class index exceeds 3^N");
    return DisagreementVector(std::move(h));
}

GraphPair DisagreementVector::representative() const {
    GraphPair g;
    g.x.resize(size());
    g.y.resize(size());
    for (std::size_t i = 0; i < size(); ++i) {
        switch (h_[i]) {
        case Agreement::zero: g.x[i] = 0; g.y[i] = 0; break;
        case Agreement::star: g.x[i] = 1; g.y[i] = 0; break;
        case Agreement::one: g.x[i] = 1; g.y[i] = 1; break;
        }
    }
    return g;
}

std::string DisagreementVector::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) s += ',';
        s += h_[i] == Agreement::zero ? '0' : h_[i] == Agreement::one ? '1' : '*';
    }
    return s + "]";
}

DisagreementVector disagreement_vector(const GraphPair& point) {
    std::vector<Agreement> h(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (point.x[i] != point.y[i])
            h[i] = Agreement::star;
        else
            h[i] = point.x[i] ? Agreement::one : Agreement::zero;
    }
    return DisagreementVector(std::move(h));
}

Densities densities(const GraphPair& point) {
    const std::size_t n = point.size();
    std::size_t sx = 0, sy = 0, scap = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += point.x[i];
        sy += point.y[i];
        scap += point.x[i] & point.y[i];
    }
    const double nn = static_cast<double>(n);
    Densities d;
    d.dx = sx / nn;
    d.dy = sy / nn;
    d.dxy = (d.dx + d.dy) / 2.0;
    d.dcap = scap / nn;
    d.dcup = d.dx + d.dy - d.dcap;
    return d;
}

std::size_t delta_stat(const GraphPair& point) {
    std::size_t delta = 0;
    for (std::size_t i = 0; i < point.size(); ++i) delta += point.x[i] != point.y[i];
    return delta;
}

bool is_degenerate_point(const GraphPair& point) {
    const std::size_t n = point.size();
    std::size_t sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += point.x[i];
        sy += point.y[i];
    }
    return (sx == 0 && sy == 0) || (sx == n && sy == n);
}

double alignment_strength(const GraphPair& point, double convention) {
    if (is_degenerate_point(point)) return convention;
    const auto d = densities(point);
    const double n = static_cast<double>(point.size());
    const double expected = d.dx * (1.0 - d.dy) + (1.0 - d.dx) * d.dy;
    return 1.0 - (static_cast<double>(delta_stat(point)) / n) / expected;
}

double alignment_strength_ratio_form(const GraphPair& point, double convention) {
    if (is_degenerate_point(point)) return convention;
    const auto d = densities(point);
    const double prod = d.dx * d.dy;
    return (d.dcap - prod) / (d.dxy - prod);
}

ParamFunctionals param_functionals(const ModelParams& params) {
    const std::size_t n = params.size();
    const double nn = static_cast<double>(n);
    ParamFunctionals f;
    for (double p : params.p()) f.mu += p;
    f.mu /= nn;
    double disagreement = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = params.p(i);
        f.sigma2 += (p - f.mu) * (p - f.mu);
        disagreement += (1.0 - params.rho(i)) * p * (1.0 - p);
    }
    f.sigma2 /= nn;
    f.expected_delta = 2.0 * disagreement;
    const double spread = f.mu * (1.0 - f.mu);
    if (spread > 0.0) {
        f.rho_h = f.sigma2 / spread;
        f.rho_t = 1.0 - disagreement / (nn * spread);
    } else {
        f.rho_h = kBoundaryMuConvention;
        f.rho_t = kBoundaryMuConvention;
    }
    return f;
}

double total_correlation(const ModelParams& params) { return param_functionals(params).rho_t; }

} // namespace corrbern
