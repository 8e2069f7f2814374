#pragma once

// Rank computations, exact Euclidean nearest neighbours with randomized
// tie-breaking, and the single-response rank statistic T_n(Y | Z).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace depclust {

/// Counting ranks of a sample: r[k] = #{j : y_j <= y_k}, l[k] = #{j : y_j >= y_k}.
/// Ties are resolved by these weak inequalities alone (no midranks).
struct RankData {
    std::vector<std::int64_t> r;
    std::vector<std::int64_t> l;
};

/// O(n log n) via sorting. Throws InputError on non-finite entries or n < 2.
RankData compute_ranks(std::span<const double> column);

/// Dense row-major n x d block of points.
class PointMatrix {
public:
    PointMatrix() = default;
    PointMatrix(std::size_t rows, std::size_t dims, std::vector<double> row_major);

    /// Interleaves equally long columns into rows.
    static PointMatrix from_columns(std::span<const std::span<const double>> columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t dims() const noexcept { return dims_; }
    std::span<const double> row(std::size_t k) const { return {data_.data() + k * dims_, dims_}; }
    double at(std::size_t k, std::size_t axis) const { return data_[k * dims_ + axis]; }

private:
    std::size_t rows_ = 0;
    std::size_t dims_ = 0;
    std::vector<double> data_;
};

/// Squared Euclidean distance whose floating-point value does not depend on
/// the order of the coordinates: the per-axis squares are summed in
/// ascending order.
double squared_distance(std::span<const double> a, std::span<const double> b);

/// Copy with the columns sorted lexicographically by their values. Any
/// permutation of the coordinates maps to the same matrix, so plain
/// left-to-right distance sums over it are permutation invariant.
PointMatrix canonical_columns(const PointMatrix& points);

/// n_of[k] is a nearest neighbour of point k (0-based, never k itself).
struct NeighborIndex {
    std::vector<std::size_t> n_of;
    std::uint64_t seed = 0;
};

/// Exact nearest neighbours through a k-d tree over canonical_columns(points).
/// When several points attain the minimal distance, the winner is drawn
/// uniformly from the sorted argmin set using a stream derived from (seed, k).
/// Throws InputError when n < 2.
NeighborIndex nearest_neighbors(const PointMatrix& points, std::uint64_t seed);

/// O(n^2) exhaustive search with the identical tie-break protocol; the
/// result is bit-identical to nearest_neighbors.
NeighborIndex nearest_neighbors_bruteforce(const PointMatrix& points, std::uint64_t seed);

/// T_n from precomputed ranks of the response and neighbours of the
/// conditioners. Throws DegenerateResponseError when the response is constant.
double t_statistic(const RankData& ranks, const NeighborIndex& neighbors);

/// T_n(Y | Z): the raw ratio, not clamped, may fall outside [0, 1].
double t_statistic(std::span<const double> response, const PointMatrix& conditioners, std::uint64_t seed);

/// Same contract as t_statistic, using the exhaustive neighbour search.
double t_statistic_bruteforce(std::span<const double> response, const PointMatrix& conditioners,
                              std::uint64_t seed);

}  // namespace depclust
