#include "depclust/clustering.hpp"

#include "depclust/error.hpp"
#include "depclust/parallel.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>

namespace depclust {

Backend Backend::parse(std::string_view text) {
    if (text == "multivariate") return multivariate();
    constexpr std::string_view prefix = "linkage:";
    if (text.starts_with(prefix)) return linkage(parse_linkage(text.substr(prefix.size())));
    throw SpecError("unknown backend '" + std::string(text) + "' (expected multivariate or linkage:<method>)");
}

std::string Backend::to_string() const {
    return type == Type::multivariate ? "multivariate" : "linkage:" + linkage_name(method);
}

bool Dendrogram::has_inversions() const {
    for (std::size_t i = 1; i < merges.size(); ++i)
        if (merges[i].height < merges[i - 1].height) return true;
    return false;
}

Partition Partition::canonical() const {
    Partition out;
    for (const auto& b : blocks) out.blocks.push_back(b.sorted());
    std::sort(out.blocks.begin(), out.blocks.end());
    return out;
}

void Partition::validate(std::size_t m) const {
    std::vector<bool> seen(m, false);
    std::size_t covered = 0;
    for (const auto& block : blocks) {
        if (block.empty()) throw InputError("partition has an empty block");
        for (std::size_t i : block) {
            if (i >= m) throw InputError("partition refers to column " + std::to_string(i) + " of " + std::to_string(m));
            if (seen[i]) throw InputError("partition blocks overlap");
            seen[i] = true;
            ++covered;
        }
    }
    if (covered != m) throw InputError("partition does not cover every variable");
}

std::vector<std::size_t> Partition::assignment(std::size_t m) const {
    validate(m);
    std::vector<std::size_t> out(m);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t i : blocks[b]) out[i] = b;
    return out;
}

namespace {

VariableSet merged_key(const VariableSet& a, const VariableSet& b) {
    std::vector<std::size_t> joined(a.begin(), a.end());
    joined.insert(joined.end(), b.begin(), b.end());
    std::sort(joined.begin(), joined.end());
    return VariableSet(std::move(joined));
}

}  // namespace

Dendrogram agglomerate(const SampleMatrix& data, const AggregatorSpec& spec, const Backend& backend,
                       const AgglomerateOptions& options, TermCache* cache) {
    spec.validate();
    const std::size_t m = data.cols();
    if (m < 2) throw InputError("clustering needs at least two variables");
    if (options.stop_at < 1 || options.stop_at > m) throw InputError("stop_at must lie in [1, m]");
    if (options.perm_budget == 0) throw InputError("permutation budget must be positive");

    std::unique_ptr<TermCache> local;
    if (cache == nullptr) {
        local = std::make_unique<TermCache>(data, options.seed);
        cache = local.get();
    } else if (&cache->data() != &data || cache->seed() != options.seed) {
        throw InputError("term cache belongs to a different data set or seed");
    }

    DissimilarityMatrix pairwise;
    if (backend.type == Backend::Type::linkage) pairwise = pairwise_matrix(data, spec, options.seed, cache);

    auto height_of = [&](const VariableSet& a, const VariableSet& b) {
        if (backend.type == Backend::Type::linkage) return linkage_dissimilarity(backend.method, pairwise, a, b);
        return pair_dissimilarity(a, b, data, spec, options.seed, options.perm_budget, cache);
    };

    std::vector<VariableSet> active;
    for (std::size_t i = 0; i < m; ++i) active.push_back(VariableSet{i});

    // Heights keyed by (smaller key, larger key); only pairs involving the
    // newest cluster are computed in each round.
    std::map<std::pair<VariableSet, VariableSet>, double> heights;
    auto fill = [&](const std::vector<std::pair<VariableSet, VariableSet>>& todo) {
        std::vector<double> values(todo.size());
        parallel_for(todo.size(), [&](std::size_t t) { values[t] = height_of(todo[t].first, todo[t].second); });
        for (std::size_t t = 0; t < todo.size(); ++t) heights.emplace(todo[t], values[t]);
    };

    std::vector<std::pair<VariableSet, VariableSet>> todo;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) todo.emplace_back(active[i], active[j]);
    fill(todo);

    Dendrogram dendrogram;
    dendrogram.labels = data.labels();
    while (active.size() > options.stop_at) {
        auto best = heights.end();
        for (auto it = heights.begin(); it != heights.end(); ++it) {
            // map order is lexicographic on the key pair, so strict < keeps the smallest pair on ties
            if (best == heights.end() || it->second < best->second) best = it;
        }
        Merge merge;
        merge.left = best->first.first;
        merge.right = best->first.second;
        merge.height = best->second;
        merge.key = merged_key(merge.left, merge.right);

        std::erase_if(heights, [&](const auto& entry) {
            const auto& [a, b] = entry.first;
            return a == merge.left || a == merge.right || b == merge.left || b == merge.right;
        });
        std::erase_if(active, [&](const VariableSet& c) { return c == merge.left || c == merge.right; });

        todo.clear();
        for (const auto& other : active)
            todo.push_back(other < merge.key ? std::pair{other, merge.key} : std::pair{merge.key, other});
        active.push_back(merge.key);
        std::sort(active.begin(), active.end());
        fill(todo);

        dendrogram.merges.push_back(std::move(merge));
    }
    return dendrogram;
}

Partition cut(const Dendrogram& dendrogram, std::size_t k) {
    const std::size_t m = dendrogram.labels.size();
    if (k < 1 || k > m) throw InputError("cut size k must lie in [1, " + std::to_string(m) + "]");
    if (m - k > dendrogram.merges.size())
        throw InputError("dendrogram records only " + std::to_string(dendrogram.merges.size()) +
                         " merges; cannot cut at k = " + std::to_string(k));

    std::vector<VariableSet> blocks;
    for (std::size_t i = 0; i < m; ++i) blocks.push_back(VariableSet{i});
    for (std::size_t s = 0; s < m - k; ++s) {
        const Merge& merge = dendrogram.merges[s];
        const auto left = std::find(blocks.begin(), blocks.end(), merge.left);
        if (left == blocks.end()) throw InputError("dendrogram merges an unknown cluster");
        blocks.erase(left);
        const auto right = std::find(blocks.begin(), blocks.end(), merge.right);
        if (right == blocks.end()) throw InputError("dendrogram merges an unknown cluster");
        blocks.erase(right);
        blocks.push_back(merge.key);
    }
    return Partition{std::move(blocks)}.canonical();
}

}  // namespace depclust
