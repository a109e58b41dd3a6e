#ifndef CORRBERN_TEST_HELPERS_HPP
#define CORRBERN_TEST_HELPERS_HPP

#include <vector>

#include "corrbern/model.hpp"

namespace testutil {

inline std::vector<double> interior(corrbern::SplitMix64& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = 0.05 + 0.9 * rng.uniform();
    return v;
}

inline corrbern::ModelParams random_params(corrbern::SplitMix64& rng, std::size_t n) {
    auto p = interior(rng, n);
    auto r = interior(rng, n);
    return {std::move(p), std::move(r)};
}

inline corrbern::GraphPair pair(const char* x, const char* y) { return corrbern::GraphPair::from_strings(x, y); }

} // namespace testutil

#endif
