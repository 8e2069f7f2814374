#pragma once

// Seeded copula samplers.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace depclust {

enum class SamplerFamily {
    independence,
    gaussian,
    student_t,
    clayton,
    gumbel,
    frank,
    joe,
    marshall_olkin,
    lower,        ///< W: (U, 1 - U)
    upper,        ///< M: (U, ..., U)
    frechet_mix,  ///< (M + W) / 2
    ordinal_sum,  ///< ordinal sum of the independence copula
};

std::string sampler_name(SamplerFamily family);
/// Accepts the names returned by sampler_name plus W, M and pi.
SamplerFamily parse_sampler(std::string_view name);

struct CopulaSampler {
    SamplerFamily family = SamplerFamily::independence;
    std::size_t dim = 2;
    /// gaussian/student_t: common pairwise correlation; Archimedean: theta.
    double parameter = 0.0;
    double nu = 4.0;  ///< student_t degrees of freedom
    /// marshall_olkin: C(u, v) = min(u^(1-alpha) v, u v^(1-beta)).
    double alpha = 0.0;
    double beta = 0.0;
    /// ordinal_sum: disjoint increasing subintervals of [0, 1].
    std::vector<std::pair<double, double>> intervals;

    /// Throws SpecError for invalid parameters or dimensions.
    void validate() const;
};

/// n i.i.d. draws, returned column by column (dim columns of length n).
/// Deterministic in (sampler, n, seed).
std::vector<std::vector<double>> sample_copula(const CopulaSampler& sampler, std::size_t n, std::uint64_t seed);

/// Kendall's tau-b of two equally long samples in O(n log n).
double kendall_tau(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace depclust
