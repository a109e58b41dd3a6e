#include "corrbern/model.hpp"

#include <cmath>
#include <sstream>

namespace corrbern {

namespace {

void check_probability(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << what << " must lie in [0,1], got " << v;
        throw std::domain_error(os.str());
    }
}

std::uint8_t checked_bit(char c) {
    if (c == '0') return 0;
    if (c == '1') return 1;
    throw std::invalid_argument(std::string("bit strings may only contain 0/1, got '") + c + "'");
}

} // namespace

EdgeCellProbs cell_probs(double p, double rho) {
    check_probability(p, "p");
    check_probability(rho, "rho");
    const double spread = p * (1.0 - p);
    return {p * p + rho * spread, (1.0 - p) * (1.0 - p) + rho * spread, (1.0 - rho) * spread};
}

ModelParams::ModelParams(std::vector<double> p, std::vector<double> rho) : p_(std::move(p)), rho_(std::move(rho)) {
    if (p_.empty()) throw std::invalid_argument("model needs at least one component");
    if (p_.size() != rho_.size()) throw std::invalid_argument("p and rho must have equal length");
    for (double v : p_) check_probability(v, "p");
    for (double v : rho_) check_probability(v, "rho");
}

nlohmann::json ModelParams::to_json() const { return {{"p", p_}, {"rho", rho_}}; }

ModelParams ModelParams::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("rho"))
        throw std::invalid_argument("params JSON must be an object with \"p\" and \"rho\" arrays");
    return ModelParams(j.at("p").get<std::vector<double>>(), j.at("rho").get<std::vector<double>>());
}

GraphPair::GraphPair(std::vector<std::uint8_t> x_bits, std::vector<std::uint8_t> y_bits)
    : x(std::move(x_bits)), y(std::move(y_bits)) {
    if (x.size() != y.size()) throw std::invalid_argument("x and y must have equal length");
    for (auto b : x)
        if (b > 1) throw std::invalid_argument("x entries must be 0 or 1");
    for (auto b : y)
        if (b > 1) throw std::invalid_argument("y entries must be 0 or 1");
}

std::uint64_t GraphPair::index() const {
    const std::size_t n = size();
    if (2 * n > 64) throw capacity_error("point index needs 2N <= 64");
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        k |= std::uint64_t{x[i]} << i;
        k |= std::uint64_t{y[i]} << (n + i);
    }
    return k;
}

GraphPair GraphPair::from_index(std::uint64_t index, std::size_t n) {
    GraphPair g;
    g.x.assign(n, 0);
    g.y.assign(n, 0);
    g.assign_index(index);
    return g;
}

void GraphPair::assign_index(std::uint64_t index) {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<std::uint8_t>((index >> i) & 1U);
        y[i] = static_cast<std::uint8_t>((index >> (n + i)) & 1U);
    }
}

GraphPair GraphPair::from_strings(const std::string& x_bits, const std::string& y_bits) {
    std::vector<std::uint8_t> xs, ys;
    xs.reserve(x_bits.size());
    ys.reserve(y_bits.size());
    for (char c : x_bits) xs.push_back(checked_bit(c));
    for (char c : y_bits) ys.push_back(checked_bit(c));
    if (xs.empty()) throw std::invalid_argument("empty bit string");
    return GraphPair(std::move(xs), std::move(ys));
}

std::string GraphPair::x_string() const {
    std::string s;
    for (auto b : x) s.push_back(b ? '1' : '0');
    return s;
}

std::string GraphPair::y_string() const {
    std::string s;
    for (auto b : y) s.push_back(b ? '1' : '0');
    return s;
}

std::uint64_t SplitMix64::next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

SplitMix64 SplitMix64::child(std::uint64_t seed, std::uint64_t index) noexcept {
    SplitMix64 mixer(seed);
    const std::uint64_t a = mixer.next();
    SplitMix64 second(a ^ (index * 0xd1b54a32d192ed03ULL));
    return SplitMix64(second.next());
}

GraphPair sample_pair(const ModelParams& params, SplitMix64& rng) {
    const std::size_t n = params.size();
    GraphPair g;
    g.x.resize(n);
    g.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = params.p(i);
        const double rho = params.rho(i);
        const bool xi = rng.bernoulli(p);
        // For p in {0,1} this is p regardless of rho.
        const double cond = rho * (xi ? 1.0 : 0.0) + (1.0 - rho) * p;
        g.x[i] = xi ? 1 : 0;
        g.y[i] = rng.bernoulli(cond) ? 1 : 0;
    }
    return g;
}

double point_probability(const ModelParams& params, const GraphPair& point) {
    if (point.size() != params.size()) throw std::invalid_argument("point length does not match params");
    double prob = 1.0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        const auto c = params.cell(i);
        if (point.x[i] != point.y[i])
            prob *= c.qstar;
        else
            prob *= point.x[i] ? c.q1 : c.q0;
    }
    return prob;
}

std::vector<double> point_probabilities(const ModelParams& params) {
    const std::size_t n = params.size();
    if (n > kMaxPointEnumeration)
        throw capacity_error("exact enumeration of 4^N points supports N <= 10; use Monte Carlo sampling");
    const std::uint64_t total = pow_u64(4, n);
    std::vector<double> probs(total, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = params.cell(i);
        const std::uint64_t xbit = std::uint64_t{1} << i;
        const std::uint64_t ybit = std::uint64_t{1} << (n + i);
        for (std::uint64_t k = 0; k < total; ++k) {
            const bool xi = k & xbit;
            const bool yi = k & ybit;
            probs[k] *= xi != yi ? c.qstar : (xi ? c.q1 : c.q0);
        }
    }
    return probs;
}

std::uint64_t pow_u64(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace corrbern
