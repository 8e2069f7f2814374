#pragma once

// Cluster validity criteria, choice of the number of clusters, and
// pair-counting agreement between partitions.

#include "depclust/clustering.hpp"
#include "depclust/copula.hpp"
#include "depclust/dissimilarity.hpp"
#include "depclust/predictability.hpp"
#include "depclust/sample_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace depclust {

// The pairwise criteria take the (1,1)-dissimilarity matrix d and work with
// similarities 1 - d internally.

/// Mean over blocks of the smallest within-block similarity (1 for singletons).
double adiam(const Partition& partition, const DissimilarityMatrix& pairwise);

/// Largest similarity between two variables in different blocks. Needs at
/// least two blocks.
double msplit(const Partition& partition, const DissimilarityMatrix& pairwise);

inline constexpr std::size_t kDefaultMaxBlock = 8;

struct MultiCriterionOptions {
    std::uint64_t seed = 0;
    std::size_t perm_budget = kDefaultPermBudget;
    std::size_t max_block = kDefaultMaxBlock;
};

/// adiam with diam(B) = 1 - max d(S, T) over disjoint non-empty S, T within B.
/// Blocks larger than max_block raise ResourceError.
double adiam_multi(const Partition& partition, const SampleMatrix& data, const AggregatorSpec& spec,
                   const MultiCriterionOptions& options = {}, TermCache* cache = nullptr);

/// msplit with split(B) = 1 - min d(S, T) over non-empty S within B and T in
/// its complement. Both B and its complement must fit in max_block.
double msplit_multi(const Partition& partition, const SampleMatrix& data, const AggregatorSpec& spec,
                    const MultiCriterionOptions& options = {}, TermCache* cache = nullptr);

/// Mean silhouette width; variables in singleton blocks score 0. Needs at
/// least two blocks.
double silhouette(const Partition& partition, const DissimilarityMatrix& pairwise);

struct ValidityPoint {
    std::size_t k = 0;
    double adiam = 0.0;
    double msplit = 0.0;
    double silhouette = 0.0;
};

struct ValidityCurve {
    std::vector<ValidityPoint> points;  ///< k = 2, ..., m - 1
};

/// Pairwise criteria of cut(dendrogram, k) for k = 2, ..., m - 1.
ValidityCurve validity_curve(const Dendrogram& dendrogram, const DissimilarityMatrix& pairwise);

enum class SelectionRule { tradeoff, silhouette };

SelectionRule parse_selection_rule(std::string_view name);

/// tradeoff: argmax of adiam - msplit; silhouette: argmax of silhouette.
/// The smallest k wins ties. Throws InputError for an empty curve.
std::size_t choose_k(const ValidityCurve& curve, SelectionRule rule);

/// Pair counts over all unordered pairs of variables, with `a` the
/// clustering under test and `b` the reference.
struct PairCounts {
    std::size_t tp = 0;  ///< together in both
    std::size_t fp = 0;  ///< together in a only
    std::size_t fn = 0;  ///< together in b only
    std::size_t tn = 0;  ///< apart in both
};

/// Both partitions must cover exactly {0, ..., m - 1}.
PairCounts pair_counts(const Partition& a, const Partition& b, std::size_t m);

double rand_index(const Partition& a, const Partition& b, std::size_t m);

/// sqrt(TP / (TP + FP) * TP / (TP + FN)); 0 when either denominator is 0.
double fowlkes_mallows(const Partition& a, const Partition& b, std::size_t m);

}  // namespace depclust
