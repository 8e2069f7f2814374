#include "depclust/validation.hpp"

#include "depclust/error.hpp"
#include "depclust/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace depclust {

namespace {

void require_blocks(const Partition& partition, std::size_t m, std::size_t minimum, const char* what) {
    partition.validate(m);
    if (partition.blocks.size() < minimum)
        throw InputError(std::string(what) + " needs a partition with at least two blocks");
}

}  // namespace

double adiam(const Partition& partition, const DissimilarityMatrix& pairwise) {
    require_blocks(partition, pairwise.size(), 1, "adiam");
    double sum = 0.0;
    for (const auto& block : partition.blocks) {
        double diam = 1.0;
        for (std::size_t a = 0; a < block.size(); ++a)
            for (std::size_t b = a + 1; b < block.size(); ++b) diam = std::min(diam, 1.0 - pairwise(block[a], block[b]));
        sum += diam;
    }
    return sum / static_cast<double>(partition.blocks.size());
}

double msplit(const Partition& partition, const DissimilarityMatrix& pairwise) {
    const std::size_t m = pairwise.size();
    require_blocks(partition, m, 2, "msplit");
    const auto assignment = partition.assignment(m);
    double split = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (assignment[i] != assignment[j]) split = std::max(split, 1.0 - pairwise(i, j));
    return split;
}

namespace {

struct SubsetPair {
    VariableSet s;
    VariableSet t;
};

TermCache& ensure_cache(TermCache* given, std::unique_ptr<TermCache>& local, const SampleMatrix& data,
                        std::uint64_t seed) {
    if (given != nullptr) return *given;
    local = std::make_unique<TermCache>(data, seed);
    return *local;
}

std::vector<double> evaluate(const std::vector<SubsetPair>& pairs, const SampleMatrix& data,
                             const AggregatorSpec& spec, const MultiCriterionOptions& options, TermCache& cache) {
    std::vector<double> values(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t p) {
        values[p] = pair_dissimilarity(pairs[p].s, pairs[p].t, data, spec, options.seed, options.perm_budget, &cache);
    });
    return values;
}

// Unordered pairs of disjoint non-empty subsets of `items`, via base-3 codes
// (0 = unused, 1 = in S, 2 = in T); S holds the first used element so each
// unordered pair appears once.
std::vector<SubsetPair> disjoint_subset_pairs(const VariableSet& items) {
    const std::size_t b = items.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < b; ++i) total *= 3;
    std::vector<SubsetPair> out;
    std::vector<std::size_t> s;
    std::vector<std::size_t> t;
    for (std::size_t code = 0; code < total; ++code) {
        s.clear();
        t.clear();
        std::size_t c = code;
        for (std::size_t i = 0; i < b; ++i, c /= 3) {
            if (c % 3 == 1) s.push_back(items[i]);
            if (c % 3 == 2) {
                if (s.empty()) break;
                t.push_back(items[i]);
            }
        }
        if (c == 0 && !s.empty() && !t.empty()) out.push_back({VariableSet(s), VariableSet(t)});
    }
    return out;
}

std::vector<VariableSet> nonempty_subsets(const VariableSet& items) {
    std::vector<VariableSet> out;
    const std::size_t b = items.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << b); ++mask) {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < b; ++i)
            if (mask >> i & 1U) subset.push_back(items[i]);
        out.emplace_back(std::move(subset));
    }
    return out;
}

void check_block_size(std::size_t size, std::size_t max_block, const char* what) {
    if (size > max_block)
        throw ResourceError(std::string(what) + " of size " + std::to_string(size) + " exceeds max_block = " +
                            std::to_string(max_block));
}

}  // namespace

double adiam_multi(const Partition& partition, const SampleMatrix& data, const AggregatorSpec& spec,
                   const MultiCriterionOptions& options, TermCache* cache) {
    require_blocks(partition, data.cols(), 1, "adiam");
    for (const auto& block : partition.blocks) check_block_size(block.size(), options.max_block, "block");
    std::unique_ptr<TermCache> local;
    TermCache& terms = ensure_cache(cache, local, data, options.seed);

    double sum = 0.0;
    for (const auto& block : partition.blocks) {
        if (block.size() == 1) {
            sum += 1.0;
            continue;
        }
        const auto pairs = disjoint_subset_pairs(block.sorted());
        const auto values = evaluate(pairs, data, spec, options, terms);
        sum += 1.0 - *std::max_element(values.begin(), values.end());
    }
    return sum / static_cast<double>(partition.blocks.size());
}

double msplit_multi(const Partition& partition, const SampleMatrix& data, const AggregatorSpec& spec,
                    const MultiCriterionOptions& options, TermCache* cache) {
    const std::size_t m = data.cols();
    require_blocks(partition, m, 2, "msplit");
    for (const auto& block : partition.blocks) {
        check_block_size(block.size(), options.max_block, "block");
        check_block_size(m - block.size(), options.max_block, "complement of a block");
    }
    std::unique_ptr<TermCache> local;
    TermCache& terms = ensure_cache(cache, local, data, options.seed);
    const auto assignment = partition.assignment(m);

    double result = 0.0;
    for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < m; ++i)
            if (assignment[i] != b) rest.push_back(i);
        const auto inside = nonempty_subsets(partition.blocks[b].sorted());
        const auto outside = nonempty_subsets(VariableSet(rest));
        std::vector<SubsetPair> pairs;
        pairs.reserve(inside.size() * outside.size());
        for (const auto& s : inside)
            for (const auto& t : outside) pairs.push_back({s, t});
        const auto values = evaluate(pairs, data, spec, options, terms);
        result = std::max(result, 1.0 - *std::min_element(values.begin(), values.end()));
    }
    return result;
}

double silhouette(const Partition& partition, const DissimilarityMatrix& pairwise) {
    const std::size_t m = pairwise.size();
    require_blocks(partition, m, 2, "silhouette");
    const auto assignment = partition.assignment(m);
    const std::size_t nblocks = partition.blocks.size();

    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t own = assignment[i];
        if (partition.blocks[own].size() == 1) continue;
        std::vector<double> sums(nblocks, 0.0);
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) sums[assignment[j]] += pairwise(i, j);
        const double a = sums[own] / static_cast<double>(partition.blocks[own].size() - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < nblocks; ++c)
            if (c != own) b = std::min(b, sums[c] / static_cast<double>(partition.blocks[c].size()));
        const double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }
    return total / static_cast<double>(m);
}

ValidityCurve validity_curve(const Dendrogram& dendrogram, const DissimilarityMatrix& pairwise) {
    const std::size_t m = dendrogram.labels.size();
    if (pairwise.size() != m) throw InputError("dissimilarity matrix does not match the dendrogram");
    ValidityCurve curve;
    if (m < 3) return curve;
    curve.points.resize(m - 2);
    parallel_for(m - 2, [&](std::size_t idx) {
        const std::size_t k = idx + 2;
        const Partition p = cut(dendrogram, k);
        curve.points[idx] = {k, adiam(p, pairwise), msplit(p, pairwise), silhouette(p, pairwise)};
    });
    return curve;
}

SelectionRule parse_selection_rule(std::string_view name) {
    if (name == "tradeoff") return SelectionRule::tradeoff;
    if (name == "silhouette") return SelectionRule::silhouette;
    throw SpecError("unknown selection rule '" + std::string(name) + "'");
}

std::size_t choose_k(const ValidityCurve& curve, SelectionRule rule) {
    if (curve.points.empty()) throw InputError("validity curve is empty (fewer than three variables)");
    auto score = [&](const ValidityPoint& p) {
        return rule == SelectionRule::tradeoff ? p.adiam - p.msplit : p.silhouette;
    };
    const ValidityPoint* best = nullptr;
    for (const auto& p : curve.points) {
        if (best == nullptr || score(p) > score(*best) || (score(p) == score(*best) && p.k < best->k)) best = &p;
    }
    return best->k;
}

PairCounts pair_counts(const Partition& a, const Partition& b, std::size_t m) {
    const auto la = a.assignment(m);
    const auto lb = b.assignment(m);
    PairCounts counts;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const bool in_a = la[i] == la[j];
            const bool in_b = lb[i] == lb[j];
            if (in_a && in_b) ++counts.tp;
            else if (in_a) ++counts.fp;
            else if (in_b) ++counts.fn;
            else ++counts.tn;
        }
    }
    return counts;
}

double rand_index(const Partition& a, const Partition& b, std::size_t m) {
    const auto c = pair_counts(a, b, m);
    const std::size_t total = c.tp + c.fp + c.fn + c.tn;
    if (total == 0) return 1.0;
    return static_cast<double>(c.tp + c.tn) / static_cast<double>(total);
}

double fowlkes_mallows(const Partition& a, const Partition& b, std::size_t m) {
    const auto c = pair_counts(a, b, m);
    if (c.tp + c.fp == 0 || c.tp + c.fn == 0) return 0.0;
    const double precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    const double recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    return std::sqrt(precision * recall);
}

}  // namespace depclust
