#pragma once

#include "depclust/random.hpp"
#include "depclust/sample_matrix.hpp"
#include "depclust/scenario.hpp"

#include <string>
#include <vector>

namespace depclust::testing {

inline SampleMatrix uniform_matrix(std::size_t n, std::size_t m, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::string> labels;
    std::vector<std::vector<double>> cols(m, std::vector<double>(n));
    for (std::size_t j = 0; j < m; ++j) {
        labels.push_back("V" + std::to_string(j + 1));
        for (auto& v : cols[j]) v = rng.uniform();
    }
    return SampleMatrix(labels, cols);
}

inline Scenario builtin(const std::string& name, std::size_t n, std::uint64_t seed, double sigma = 1.0,
                        double alpha = 1.0, unsigned k = 3) {
    BuiltinParams p;
    p.n = n;
    p.seed = seed;
    p.sigma = sigma;
    p.alpha = alpha;
    p.k = k;
    return generate_scenario(builtin_scenario(name, p));
}

}  // namespace depclust::testing
