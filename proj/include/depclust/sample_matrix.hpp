#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace depclust {

/// n observations of m labelled real variables, stored column by column.
///
/// Construction validates the data: at least two rows, all entries finite,
/// labels unique and non-empty, and no constant column. Violations raise
/// InputError, except constant columns which raise DegenerateColumnError.
class SampleMatrix {
public:
    SampleMatrix(std::vector<std::string> labels, std::vector<std::vector<double>> columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }

    std::span<const double> column(std::size_t j) const { return columns_.at(j); }
    const std::string& label(std::size_t j) const { return labels_.at(j); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Index of the column carrying `label`; throws InputError when absent.
    std::size_t index_of(const std::string& label) const;

    /// New matrix holding the given columns in the given order.
    SampleMatrix select(std::span<const std::size_t> indices) const;

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<double>> columns_;
    std::size_t rows_ = 0;
};

}  // namespace depclust
