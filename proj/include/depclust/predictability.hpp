#pragma once

// Multi-outcome predictability: the chained statistic T^q_n and its
// permutation average kappa^{q|p}_n.

#include "depclust/sample_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace depclust {

/// Ordered list of distinct column indices into a SampleMatrix.
class VariableSet {
public:
    VariableSet() = default;
    VariableSet(std::initializer_list<std::size_t> indices);
    explicit VariableSet(std::vector<std::size_t> indices);

    const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    std::size_t operator[](std::size_t i) const { return indices_[i]; }
    auto begin() const noexcept { return indices_.begin(); }
    auto end() const noexcept { return indices_.end(); }

    bool contains(std::size_t index) const;
    bool disjoint_with(const VariableSet& other) const;
    /// Copy with indices in ascending order.
    VariableSet sorted() const;

    /// Throws InputError when empty, duplicated or out of range for `data`.
    void validate(const SampleMatrix& data) const;

    friend bool operator==(const VariableSet&, const VariableSet&) = default;
    friend auto operator<=>(const VariableSet&, const VariableSet&) = default;

private:
    std::vector<std::size_t> indices_;
};

/// Thread-safe memo of single-response statistics T_n(Y_i | Z) for one
/// (data, seed) pair. Each value is a pure function of the response column,
/// the conditioning set and the master seed, so sharing it across calls
/// cannot change any result.
class TermCache {
public:
    TermCache(const SampleMatrix& data, std::uint64_t seed) : data_(&data), seed_(seed) {}

    const SampleMatrix& data() const noexcept { return *data_; }
    std::uint64_t seed() const noexcept { return seed_; }

    /// T_n(column `response` | columns in `conditioners`); conditioners may
    /// be given in any order. An empty conditioning set yields 0.
    double term(std::size_t response, const std::vector<std::size_t>& conditioners);

    std::size_t size() const;

private:
    struct Key {
        std::size_t response;
        std::vector<std::size_t> conditioners;  // ascending
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };

    const SampleMatrix* data_;
    std::uint64_t seed_;
    mutable std::mutex mutex_;
    std::unordered_map<Key, double, KeyHash> values_;
};

/// Seed of the tie-break stream used by T_n(response | conditioners). It is
/// keyed on variable labels, so it does not depend on column positions or
/// on the order in which the conditioners are listed.
std::uint64_t term_seed(const SampleMatrix& data, std::uint64_t master_seed, std::size_t response,
                        const std::vector<std::size_t>& conditioners);

/// Chained statistic T^q_n(Y | X) for the responses in the given order.
/// Responses and predictors must be disjoint. When the denominator
/// q - sum T_n(Y_i | Y_1..Y_{i-1}) drops below 1e-12 the result is 1.
double t_q(const VariableSet& responses, const VariableSet& predictors, const SampleMatrix& data,
           std::uint64_t seed, TermCache* cache = nullptr);

struct PredictabilityEstimate {
    double value = 0.0;  ///< raw clamped to [0, 1]
    double raw = 0.0;
    VariableSet predictors;
    VariableSet responses;
    std::size_t perm_count = 0;
    bool exact = false;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultPermBudget = 120;

/// kappa^{q|p}_n(Y | X): mean of T^q_n over all q! response orderings when
/// q! <= perm_budget, otherwise over perm_budget distinct orderings sampled
/// uniformly without replacement. Invariant to the order in which both sets
/// are listed.
PredictabilityEstimate kappa(const VariableSet& responses, const VariableSet& predictors, const SampleMatrix& data,
                             std::uint64_t seed, std::size_t perm_budget = kDefaultPermBudget,
                             TermCache* cache = nullptr);

}  // namespace depclust
