#pragma once

// Agglomerative clustering of variables under a multivariate or linkage
// dissimilarity, and cuts of the resulting dendrogram.

#include "depclust/copula.hpp"
#include "depclust/dissimilarity.hpp"
#include "depclust/predictability.hpp"
#include "depclust/sample_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace depclust {

/// How the dissimilarity between two clusters is obtained.
struct Backend {
    enum class Type { multivariate, linkage };
    Type type = Type::multivariate;
    LinkageMethod method = LinkageMethod::average;  ///< linkage backend only

    static Backend multivariate() { return {}; }
    static Backend linkage(LinkageMethod method) { return {Type::linkage, method}; }

    /// `multivariate` or `linkage:single|average|complete`.
    static Backend parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const Backend&, const Backend&) = default;
};

/// One agglomeration step. Keys are ascending column-index lists; `left`
/// is the lexicographically smaller of the two merged keys.
struct Merge {
    VariableSet left;
    VariableSet right;
    double height = 0.0;
    VariableSet key;
};

struct Dendrogram {
    std::vector<std::string> labels;
    std::vector<Merge> merges;

    /// True when some merge is lower than an earlier one.
    bool has_inversions() const;
};

/// Disjoint, non-empty blocks covering every column.
struct Partition {
    std::vector<VariableSet> blocks;

    /// Copy with ascending blocks ordered by their smallest index.
    Partition canonical() const;
    /// Throws InputError unless the blocks partition {0, ..., m - 1}.
    void validate(std::size_t m) const;
    /// Block number of every column.
    std::vector<std::size_t> assignment(std::size_t m) const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

struct AgglomerateOptions {
    std::uint64_t seed = 0;
    std::size_t perm_budget = kDefaultPermBudget;
    /// Stop once this many clusters remain. 1 builds the full dendrogram;
    /// larger values return only the first m - stop_at merges.
    std::size_t stop_at = 1;
};

/// Starts from singletons and repeatedly merges the closest pair of
/// clusters; ties go to the lexicographically smallest pair of keys. The
/// multivariate backend re-estimates d_A between the new cluster and every
/// survivor from the data. The linkage backend computes the (1,1) matrix
/// once and aggregates it. Pass a TermCache built for (data, options.seed)
/// to share statistics with other calls.
Dendrogram agglomerate(const SampleMatrix& data, const AggregatorSpec& spec, const Backend& backend,
                       const AgglomerateOptions& options = {}, TermCache* cache = nullptr);

/// Partition with k blocks reached after the first m - k merges. Requires
/// 1 <= k <= m and enough recorded merges.
Partition cut(const Dendrogram& dendrogram, std::size_t k);

}  // namespace depclust
