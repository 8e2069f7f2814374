#include "depclust/predictability.hpp"

#include "depclust/core_estimators.hpp"
#include "depclust/error.hpp"
#include "depclust/log.hpp"
#include "depclust/random.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <string>

namespace depclust {

VariableSet::VariableSet(std::initializer_list<std::size_t> indices) : indices_(indices) {}

VariableSet::VariableSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {}

bool VariableSet::contains(std::size_t index) const {
    return std::find(indices_.begin(), indices_.end(), index) != indices_.end();
}

bool VariableSet::disjoint_with(const VariableSet& other) const {
    return std::none_of(indices_.begin(), indices_.end(), [&](std::size_t i) { return other.contains(i); });
}

VariableSet VariableSet::sorted() const {
    auto copy = indices_;
    std::sort(copy.begin(), copy.end());
    return VariableSet(std::move(copy));
}

void VariableSet::validate(const SampleMatrix& data) const {
    if (indices_.empty()) throw InputError("variable set is empty");
    std::set<std::size_t> seen;
    for (std::size_t i : indices_) {
        if (i >= data.cols())
            throw InputError("column index " + std::to_string(i) + " out of range for " +
                             std::to_string(data.cols()) + " columns");
        if (!seen.insert(i).second) throw InputError("variable set lists column '" + data.label(i) + "' twice");
    }
}

namespace {

std::uint64_t hash_label_set(const SampleMatrix& data, const std::vector<std::size_t>& indices) {
    std::vector<const std::string*> names;
    names.reserve(indices.size());
    for (std::size_t i : indices) names.push_back(&data.label(i));
    std::sort(names.begin(), names.end(), [](const auto* a, const auto* b) { return *a < *b; });
    std::uint64_t h = mix64(indices.size());
    for (const auto* name : names) h = derive_seed(h, hash_label(*name));
    return h;
}

}  // namespace

std::uint64_t term_seed(const SampleMatrix& data, std::uint64_t master_seed, std::size_t response,
                        const std::vector<std::size_t>& conditioners) {
    const std::uint64_t s = derive_seed(master_seed, hash_label(data.label(response)));
    return derive_seed(s, hash_label_set(data, conditioners));
}

std::size_t TermCache::KeyHash::operator()(const Key& k) const noexcept {
    std::uint64_t h = mix64(k.response);
    for (std::size_t c : k.conditioners) h = derive_seed(h, c);
    return static_cast<std::size_t>(h);
}

double TermCache::term(std::size_t response, const std::vector<std::size_t>& conditioners) {
    if (conditioners.empty()) return 0.0;
    Key key{response, conditioners};
    std::sort(key.conditioners.begin(), key.conditioners.end());
    {
        std::lock_guard lock(mutex_);
        if (const auto it = values_.find(key); it != values_.end()) return it->second;
    }

    const SampleMatrix& data = *data_;
    std::vector<std::span<const double>> columns;
    columns.reserve(key.conditioners.size());
    for (std::size_t c : key.conditioners) columns.push_back(data.column(c));
    const PointMatrix points = PointMatrix::from_columns(columns);
    const double value = t_statistic(data.column(response), points, term_seed(data, seed_, response, key.conditioners));

    std::lock_guard lock(mutex_);
    values_.emplace(std::move(key), value);
    return value;
}

std::size_t TermCache::size() const {
    std::lock_guard lock(mutex_);
    return values_.size();
}

namespace {

void check_sets(const VariableSet& responses, const VariableSet& predictors, const SampleMatrix& data) {
    responses.validate(data);
    predictors.validate(data);
    if (!responses.disjoint_with(predictors)) throw InputError("response and predictor sets overlap");
    if (data.rows() < 3) throw InputError("predictability estimates need at least three observations");
}

TermCache& resolve_cache(TermCache* given, std::unique_ptr<TermCache>& local, const SampleMatrix& data,
                         std::uint64_t seed) {
    if (given == nullptr) {
        local = std::make_unique<TermCache>(data, seed);
        return *local;
    }
    if (&given->data() != &data || given->seed() != seed)
        throw InputError("term cache belongs to a different data set or seed");
    return *given;
}

constexpr double kDegenerateDenominator = 1e-12;

double chained_statistic(const std::vector<std::size_t>& ordered_responses, const VariableSet& predictors,
                         TermCache& cache) {
    const std::size_t q = ordered_responses.size();
    double with_predictors = 0.0;
    double without_predictors = 0.0;
    std::vector<std::size_t> previous;
    std::vector<std::size_t> conditioning;
    for (std::size_t i = 0; i < q; ++i) {
        const std::size_t y = ordered_responses[i];
        conditioning.assign(predictors.begin(), predictors.end());
        conditioning.insert(conditioning.end(), previous.begin(), previous.end());
        with_predictors += cache.term(y, conditioning);
        without_predictors += cache.term(y, previous);
        previous.push_back(y);
    }
    const double denominator = static_cast<double>(q) - without_predictors;
    if (denominator < kDegenerateDenominator) {
        log_warning("T^q denominator vanished (responses determined by their own leading components); using 1");
        return 1.0;
    }
    return 1.0 - (static_cast<double>(q) - with_predictors) / denominator;
}

// q! saturating at max() for large q.
std::size_t factorial_saturating(std::size_t q) {
    std::size_t f = 1;
    for (std::size_t i = 2; i <= q; ++i) {
        if (f > std::numeric_limits<std::size_t>::max() / i) return std::numeric_limits<std::size_t>::max();
        f *= i;
    }
    return f;
}

}  // namespace

double t_q(const VariableSet& responses, const VariableSet& predictors, const SampleMatrix& data,
           std::uint64_t seed, TermCache* cache) {
    check_sets(responses, predictors, data);
    std::unique_ptr<TermCache> local;
    TermCache& terms = resolve_cache(cache, local, data, seed);
    return chained_statistic(responses.indices(), predictors, terms);
}

PredictabilityEstimate kappa(const VariableSet& responses, const VariableSet& predictors, const SampleMatrix& data,
                             std::uint64_t seed, std::size_t perm_budget, TermCache* cache) {
    check_sets(responses, predictors, data);
    if (perm_budget == 0) throw InputError("permutation budget must be positive");
    std::unique_ptr<TermCache> local;
    TermCache& terms = resolve_cache(cache, local, data, seed);

    // Canonical response order (by label) makes the average independent of
    // how the caller listed the responses or where the columns sit.
    std::vector<std::size_t> canonical = responses.indices();
    std::sort(canonical.begin(), canonical.end(),
              [&](std::size_t a, std::size_t b) { return data.label(a) < data.label(b); });
    const std::size_t q = canonical.size();

    PredictabilityEstimate est;
    est.predictors = predictors;
    est.responses = responses;
    est.seed = seed;

    std::vector<std::size_t> perm(q);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::size_t> ordered(q);
    auto apply = [&](const std::vector<std::size_t>& p) {
        for (std::size_t i = 0; i < q; ++i) ordered[i] = canonical[p[i]];
        return chained_statistic(ordered, predictors, terms);
    };

    double sum = 0.0;
    const std::size_t total = factorial_saturating(q);
    if (total <= perm_budget) {
        do {
            sum += apply(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
        est.perm_count = total;
        est.exact = true;
    } else {
        std::uint64_t stream = derive_seed(seed, 0x7065726dULL);  // "perm"
        stream = derive_seed(stream, hash_label_set(data, canonical));
        stream = derive_seed(stream, hash_label_set(data, predictors.indices()));
        SplitMix64 rng(stream);
        std::set<std::vector<std::size_t>> drawn;
        while (drawn.size() < perm_budget) {
            for (std::size_t i = q - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
            if (drawn.insert(perm).second) sum += apply(perm);
        }
        est.perm_count = perm_budget;
        est.exact = false;
    }

    est.raw = sum / static_cast<double>(est.perm_count);
    est.value = std::clamp(est.raw, 0.0, 1.0);
    return est;
}

}  // namespace depclust
