#include "depclust/sample_matrix.hpp"

#include "depclust/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace depclust {

SampleMatrix::SampleMatrix(std::vector<std::string> labels, std::vector<std::vector<double>> columns)
    : labels_(std::move(labels)), columns_(std::move(columns)) {
    if (labels_.size() != columns_.size())
        throw InputError("label count " + std::to_string(labels_.size()) + " does not match column count " +
                         std::to_string(columns_.size()));
    if (columns_.empty()) throw InputError("sample matrix needs at least one column");

    rows_ = columns_.front().size();
    if (rows_ < 2) throw InputError("sample matrix needs at least two rows");

    std::unordered_set<std::string> seen;
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        const auto& name = labels_[j];
        if (name.empty()) throw InputError("column " + std::to_string(j + 1) + " has an empty label");
        if (!seen.insert(name).second) throw InputError("duplicate column label '" + name + "'");

        const auto& col = columns_[j];
        if (col.size() != rows_)
            throw InputError("column '" + name + "' has " + std::to_string(col.size()) + " rows, expected " +
                             std::to_string(rows_));
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!std::isfinite(col[i]))
                throw InputError("non-finite value in column '" + name + "' at row " + std::to_string(i + 1));
        }
        if (std::all_of(col.begin(), col.end(), [&](double v) { return v == col.front(); }))
            throw DegenerateColumnError("column '" + name + "' is constant");
    }
}

std::size_t SampleMatrix::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw InputError("unknown column label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

SampleMatrix SampleMatrix::select(std::span<const std::size_t> indices) const {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> columns;
    labels.reserve(indices.size());
    columns.reserve(indices.size());
    for (std::size_t j : indices) {
        labels.push_back(label(j));
        columns.push_back(columns_.at(j));
    }
    return SampleMatrix(std::move(labels), std::move(columns));
}

}  // namespace depclust
