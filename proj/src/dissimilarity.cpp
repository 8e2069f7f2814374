#include "depclust/dissimilarity.hpp"

#include "depclust/error.hpp"
#include "depclust/parallel.hpp"

#include <algorithm>
#include <limits>

namespace depclust {

double dissimilarity(const AggregatorSpec& spec, double kappa_xy, double kappa_yx) {
    if (!(kappa_xy >= 0.0 && kappa_xy <= 1.0 && kappa_yx >= 0.0 && kappa_yx <= 1.0))
        throw InputError("predictability values must lie in [0, 1]");
    switch (spec.kind) {
        case AggregatorKind::average:
            return 1.0 - (kappa_xy + kappa_yx) / 2.0;
        case AggregatorKind::copula:
            return copula_cdf(spec, 1.0 - kappa_xy, 1.0 - kappa_yx);
        case AggregatorKind::copula_dual:
            return 1.0 - copula_cdf(spec, kappa_xy, kappa_yx);
    }
    return 1.0;
}

namespace {

std::vector<std::string> sorted_labels(const VariableSet& set, const SampleMatrix& data) {
    std::vector<std::string> names;
    names.reserve(set.size());
    for (std::size_t i : set) names.push_back(data.label(i));
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace

PairDissimilarity pair_dissimilarity_detail(const VariableSet& x, const VariableSet& y, const SampleMatrix& data,
                                            const AggregatorSpec& spec, std::uint64_t seed, std::size_t perm_budget,
                                            TermCache* cache) {
    spec.validate();
    const bool swapped = sorted_labels(y, data) < sorted_labels(x, data);
    const VariableSet& first = swapped ? y : x;
    const VariableSet& second = swapped ? x : y;

    std::unique_ptr<TermCache> local;
    if (cache == nullptr) {
        local = std::make_unique<TermCache>(data, seed);
        cache = local.get();
    }
    PredictabilityEstimate first_given_second = kappa(first, second, data, seed, perm_budget, cache);
    PredictabilityEstimate second_given_first = kappa(second, first, data, seed, perm_budget, cache);

    PairDissimilarity out;
    out.value = dissimilarity(spec, first_given_second.value, second_given_first.value);
    out.x_given_y = swapped ? std::move(second_given_first) : std::move(first_given_second);
    out.y_given_x = swapped ? std::move(first_given_second) : std::move(second_given_first);
    return out;
}

double pair_dissimilarity(const VariableSet& x, const VariableSet& y, const SampleMatrix& data,
                          const AggregatorSpec& spec, std::uint64_t seed, std::size_t perm_budget, TermCache* cache) {
    return pair_dissimilarity_detail(x, y, data, spec, seed, perm_budget, cache).value;
}

DissimilarityMatrix::DissimilarityMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), values_(labels_.size() * labels_.size(), 0.0) {}

void DissimilarityMatrix::set(std::size_t i, std::size_t j, double value) {
    values_[i * size() + j] = value;
    values_[j * size() + i] = value;
}

DissimilarityMatrix pairwise_matrix(const SampleMatrix& data, const AggregatorSpec& spec, std::uint64_t seed,
                                    TermCache* cache) {
    spec.validate();
    const std::size_t m = data.cols();
    std::unique_ptr<TermCache> local;
    if (cache == nullptr) {
        local = std::make_unique<TermCache>(data, seed);
        cache = local.get();
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);

    std::vector<double> values(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        values[p] = pair_dissimilarity(VariableSet{i}, VariableSet{j}, data, spec, seed, 1, cache);
    });

    DissimilarityMatrix matrix(data.labels());
    for (std::size_t p = 0; p < pairs.size(); ++p) matrix.set(pairs[p].first, pairs[p].second, values[p]);
    return matrix;
}

std::string linkage_name(LinkageMethod method) {
    switch (method) {
        case LinkageMethod::single: return "single";
        case LinkageMethod::average: return "average";
        case LinkageMethod::complete: return "complete";
    }
    return "?";
}

LinkageMethod parse_linkage(std::string_view name) {
    if (name == "single") return LinkageMethod::single;
    if (name == "average") return LinkageMethod::average;
    if (name == "complete") return LinkageMethod::complete;
    throw SpecError("unknown linkage method '" + std::string(name) + "' (expected single, average or complete)");
}

double linkage_dissimilarity(LinkageMethod method, const DissimilarityMatrix& pairwise, const VariableSet& x,
                             const VariableSet& y) {
    if (x.empty() || y.empty()) throw InputError("linkage between empty sets");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t i : x) {
        for (std::size_t j : y) {
            if (i >= pairwise.size() || j >= pairwise.size()) throw InputError("linkage index out of range");
            const double d = pairwise(i, j);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
            sum += d;
        }
    }
    switch (method) {
        case LinkageMethod::single: return lo;
        case LinkageMethod::average: return sum / static_cast<double>(x.size() * y.size());
        case LinkageMethod::complete: return hi;
    }
    return hi;
}

}  // namespace depclust
