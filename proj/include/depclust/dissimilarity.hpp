#pragma once

// Dissimilarity functions d_A(X, Y) = A(1 - kappa(X|Y), 1 - kappa(Y|X)),
// linkage variants built from pairwise values, and matrix assembly.

#include "depclust/copula.hpp"
#include "depclust/predictability.hpp"
#include "depclust/sample_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace depclust {

/// Combines two predictability values into a dissimilarity:
/// copula kind C(1 - k1, 1 - k2), copula_dual kind 1 - C(k1, k2),
/// average 1 - (k1 + k2) / 2. Both values must lie in [0, 1].
double dissimilarity(const AggregatorSpec& spec, double kappa_xy, double kappa_yx);

struct PairDissimilarity {
    double value = 0.0;
    PredictabilityEstimate x_given_y;  ///< kappa(X | Y)
    PredictabilityEstimate y_given_x;  ///< kappa(Y | X)
};

/// Estimates d_A(X, Y) from data. The two sets are put in a canonical order
/// first, so swapping them returns the same value bit for bit; the estimate
/// fields follow the argument order.
PairDissimilarity pair_dissimilarity_detail(const VariableSet& x, const VariableSet& y, const SampleMatrix& data,
                                            const AggregatorSpec& spec, std::uint64_t seed,
                                            std::size_t perm_budget = kDefaultPermBudget,
                                            TermCache* cache = nullptr);

double pair_dissimilarity(const VariableSet& x, const VariableSet& y, const SampleMatrix& data,
                          const AggregatorSpec& spec, std::uint64_t seed,
                          std::size_t perm_budget = kDefaultPermBudget, TermCache* cache = nullptr);

/// Dense symmetric matrix over the columns of a SampleMatrix.
class DissimilarityMatrix {
public:
    DissimilarityMatrix() = default;
    explicit DissimilarityMatrix(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
    /// Writes both (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, double value);

private:
    std::vector<std::string> labels_;
    std::vector<double> values_;
};

/// All (1,1)-dissimilarities between single columns, computed in parallel.
/// The diagonal is 0.
DissimilarityMatrix pairwise_matrix(const SampleMatrix& data, const AggregatorSpec& spec, std::uint64_t seed,
                                    TermCache* cache = nullptr);

enum class LinkageMethod { single, average, complete };

std::string linkage_name(LinkageMethod method);
/// Accepts single, average and complete; throws SpecError otherwise.
LinkageMethod parse_linkage(std::string_view name);

/// Minimum, mean or maximum of the pairwise entries between the two sets.
double linkage_dissimilarity(LinkageMethod method, const DissimilarityMatrix& pairwise, const VariableSet& x,
                             const VariableSet& y);

}  // namespace depclust
